//! Vertices, faces and signed permutations of the hyperoctahedron complex.
//!
//! A face is a set of signed coordinate indices with pairwise distinct
//! absolute values: `+i` is the base vertex of coordinate `i`, `-i` its
//! opposite. Faces are stored sorted by absolute value, which fixes a
//! canonical form, an unambiguous text serialization and a deterministic
//! enumeration order for every module basis.

use std::fmt;
use std::str::FromStr;

use crate::combinat::{binomial, subset_rank, subsets_lex};
use crate::error::{Error, Result};

/// One of the `2n` vertices: a nonzero signed coordinate index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(i32);

impl Vertex {
    pub fn new(s: i32) -> Result<Self> {
        if s == 0 {
            return Err(Error::NotAFace("vertex index must be nonzero".into()));
        }
        Ok(Vertex(s))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    /// The coordinate this vertex lives on, as a positive index.
    pub fn coordinate(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// The opposite vertex on the same coordinate; an involution.
    pub fn bar(self) -> Vertex {
        Vertex(-self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A face of the complex: signed indices with pairwise distinct absolute
/// values, kept sorted by absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    elems: Vec<i32>,
}

impl Face {
    /// Canonicalizes (sorts by coordinate) and validates the element list.
    pub fn new(elems: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut v: Vec<i32> = elems.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::NotAFace("zero is not a vertex".into()));
        }
        v.sort_by_key(|e| e.unsigned_abs());
        for w in v.windows(2) {
            if w[0].unsigned_abs() == w[1].unsigned_abs() {
                return Err(Error::NotAFace(format!(
                    "coordinate {} appears twice",
                    w[0].unsigned_abs()
                )));
            }
        }
        Ok(Face { elems: v })
    }

    pub fn empty() -> Self {
        Face { elems: Vec::new() }
    }

    /// Number of vertices. (The geometric dimension is one less.)
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The signed indices, sorted by absolute value.
    pub fn elements(&self) -> &[i32] {
        &self.elems
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.elems.iter().map(|&e| Vertex(e))
    }

    /// Largest coordinate used, 0 for the empty face.
    pub fn max_coordinate(&self) -> usize {
        self.elems.last().map_or(0, |e| e.unsigned_abs() as usize)
    }

    /// The face with every vertex replaced by its opposite; an involution.
    pub fn opposite(&self) -> Face {
        Face {
            elems: self.elems.iter().map(|&e| -e).collect(),
        }
    }

    /// Membership of a signed vertex.
    pub fn contains(&self, v: i32) -> bool {
        self.elems.binary_search_by_key(&v.unsigned_abs(), |e| e.unsigned_abs())
            .is_ok_and(|pos| self.elems[pos] == v)
    }

    /// Whether the coordinate (regardless of sign) is used by this face.
    pub fn uses_coordinate(&self, c: usize) -> bool {
        self.elems
            .binary_search_by_key(&(c as u32), |e| e.unsigned_abs())
            .is_ok()
    }

    /// Sign of this face on coordinate `c`, if the coordinate is used.
    pub fn sign_on(&self, c: usize) -> Option<i32> {
        self.elems
            .binary_search_by_key(&(c as u32), |e| e.unsigned_abs())
            .ok()
            .map(|pos| self.elems[pos].signum())
    }

    /// Is `self` a subface of `other` (as vertex sets)?
    pub fn is_subface_of(&self, other: &Face) -> bool {
        let mut it = other.elems.iter();
        'outer: for &e in &self.elems {
            for &o in it.by_ref() {
                if o == e {
                    continue 'outer;
                }
                if o.unsigned_abs() >= e.unsigned_abs() {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Number of common vertices.
    pub fn intersection_size(&self, other: &Face) -> usize {
        let (mut i, mut j, mut cnt) = (0, 0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            let a = self.elems[i].unsigned_abs();
            let b = other.elems[j].unsigned_abs();
            if a == b {
                if self.elems[i] == other.elems[j] {
                    cnt += 1;
                }
                i += 1;
                j += 1;
            } else if a < b {
                i += 1;
            } else {
                j += 1;
            }
        }
        cnt
    }

    /// The face with the element at `pos` removed.
    pub fn without(&self, pos: usize) -> Face {
        let mut elems = self.elems.clone();
        elems.remove(pos);
        Face { elems }
    }

    /// The face extended by one vertex on an unused coordinate.
    pub fn with_vertex(&self, v: i32) -> Result<Face> {
        Face::new(self.elems.iter().copied().chain(std::iter::once(v)))
    }

    /// The face with the element at `pos` replaced by its opposite vertex.
    pub fn with_flip(&self, pos: usize) -> Face {
        let mut elems = self.elems.clone();
        elems[pos] = -elems[pos];
        Face { elems }
    }

    pub fn all_positive(&self) -> bool {
        self.elems.iter().all(|&e| e > 0)
    }

    /// Coordinates used by this face, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.elems.iter().map(|e| e.unsigned_abs() as usize).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.elems {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Face {
    type Err = Error;

    /// Parses the `"1,-3,4"` text form; `""` and `"0-length"` denote the empty face.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0-length" {
            return Ok(Face::empty());
        }
        let elems: Vec<i32> = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::NotAFace(format!("bad vertex token {tok:?}")))
            })
            .collect::<Result<_>>()?;
        Face::new(elems)
    }
}

/// All k-faces on `n` coordinates, enumerated in the canonical order:
/// supports in lexicographic order, then sign patterns in binary order with
/// `+` before `-` (the lowest coordinate is the most significant bit).
///
/// `k` outside `[0, n]` yields the empty list, matching the convention that
/// the corresponding module is zero.
pub fn enumerate_faces(n: usize, k: i64) -> Vec<Face> {
    if k < 0 || k > n as i64 {
        return Vec::new();
    }
    let k = k as usize;
    let mut out = Vec::with_capacity(binomial(n, k) << k);
    for support in subsets_lex(n, k) {
        for pattern in 0..1usize << k {
            let elems = support
                .iter()
                .enumerate()
                .map(|(idx, &c)| {
                    if pattern >> (k - 1 - idx) & 1 == 1 {
                        -(c as i32)
                    } else {
                        c as i32
                    }
                })
                .collect();
            out.push(Face { elems });
        }
    }
    out
}

/// Position of a k-face in [`enumerate_faces`]`(n, k)`, computed without
/// materializing the list.
pub fn face_index(x: &Face, n: usize, k: i64) -> Result<usize> {
    if k < 0 || k > n as i64 || x.dim() as i64 != k {
        return Err(Error::NotAFace(format!(
            "{x} is not a {k}-face on {n} coordinates"
        )));
    }
    if x.max_coordinate() > n {
        return Err(Error::NotAFace(format!(
            "{x} uses a coordinate beyond {n}"
        )));
    }
    let k = k as usize;
    let support = x.support();
    let mut pattern = 0usize;
    for (idx, &e) in x.elements().iter().enumerate() {
        if e < 0 {
            pattern |= 1 << (k - 1 - idx);
        }
    }
    Ok((subset_rank(n, &support) << k) + pattern)
}

/// An element of the hyperoctahedral group: a coordinate permutation combined
/// with sign changes. `images[i]` is the signed image of coordinate `i + 1`;
/// opposite vertices map to opposite vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let a = im.unsigned_abs() as usize;
            if im == 0 || a > n || seen[a - 1] {
                return Err(Error::NotAPermutation(format!(
                    "images {images:?} are not a signed permutation of 1..={n}"
                )));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            images: (1..=n as i32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Signed image of a vertex; `image(-v) = -image(v)`.
    pub fn image(&self, v: i32) -> i32 {
        let im = self.images[(v.unsigned_abs() as usize) - 1];
        if v < 0 {
            -im
        } else {
            im
        }
    }

    /// Image of a face, re-canonicalized; the dimension is preserved.
    pub fn act(&self, x: &Face) -> Face {
        Face::new(x.elements().iter().map(|&e| self.image(e)))
            .expect("group action preserves the face property")
    }

    /// Left-to-right composition: acting with `self.then(g)` equals acting
    /// with `self` first and `g` second.
    pub fn then(&self, g: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n(), g.n(), "composition requires equal degrees");
        SignedPermutation {
            images: self.images.iter().map(|&im| g.image(im)).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            let a = im.unsigned_abs() as usize;
            images[a - 1] = if im < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
        }
        SignedPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &im)| im == i as i32 + 1)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|im| im.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Parses the `"2,-1,3"` text form: signed images of `1..=n`.
    fn from_str(s: &str) -> Result<Self> {
        let images: Vec<i32> = s
            .trim()
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::NotAPermutation(format!("bad image token {tok:?}")))
            })
            .collect::<Result<_>>()?;
        SignedPermutation::new(images)
    }
}

/// Generators of the full hyperoctahedral group on `n` coordinates: adjacent
/// coordinate swaps plus one sign flip.
pub fn hyperoctahedral_generators(n: usize) -> Vec<SignedPermutation> {
    let mut gens = Vec::new();
    for i in 1..n {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images.swap(i - 1, i);
        gens.push(SignedPermutation { images });
    }
    if n > 0 {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images[n - 1] = -(n as i32);
        gens.push(SignedPermutation { images });
    }
    gens
}
