//! Exact linear algebra over face bases: vectors, dense operator matrices,
//! fraction-free rank.
//!
//! Scalars are arbitrary-precision rationals, normalized by sign and gcd.
//! Rank is computed by Bareiss-style fraction-free elimination on integer
//! rows (each row scaled by the lcm of its denominators), with deterministic
//! first-nonzero pivoting; no floating point appears anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::{binomial, subset_rank, subset_unrank};
use crate::error::{Error, Result};
use crate::face::{enumerate_faces, face_index, Face};
use crate::field::{reduce_mod, FieldSpec};

/// Exact scalar type used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer scalar.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Which family of faces indexes a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// All k-faces.
    Faces,
    /// Only the faces with all-positive signs (the Boolean subcomplex).
    PositiveFaces,
}

/// An ordered basis of one graded module. Grades outside `[0, n]` denote the
/// zero module and have size 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisId {
    pub n: usize,
    pub k: i64,
    pub kind: BasisKind,
}

impl BasisId {
    pub fn faces(n: usize, k: i64) -> Self {
        BasisId { n, k, kind: BasisKind::Faces }
    }

    pub fn positive(n: usize, k: i64) -> Self {
        BasisId { n, k, kind: BasisKind::PositiveFaces }
    }

    /// Basis on the same coordinates and family, shifted to grade `k`.
    pub fn at_grade(&self, k: i64) -> Self {
        BasisId { k, ..*self }
    }

    pub fn size(&self) -> usize {
        if self.k < 0 || self.k > self.n as i64 {
            return 0;
        }
        let k = self.k as usize;
        match self.kind {
            BasisKind::Faces => binomial(self.n, k) << k,
            BasisKind::PositiveFaces => binomial(self.n, k),
        }
    }

    pub fn enumerate(&self) -> Vec<Face> {
        match self.kind {
            BasisKind::Faces => enumerate_faces(self.n, self.k),
            BasisKind::PositiveFaces => {
                if self.k < 0 || self.k > self.n as i64 {
                    return Vec::new();
                }
                crate::combinat::subsets_lex(self.n, self.k as usize)
                    .into_iter()
                    .map(|s| {
                        Face::new(s.into_iter().map(|c| c as i32)).expect("subset is a face")
                    })
                    .collect()
            }
        }
    }

    pub fn index_of(&self, x: &Face) -> Result<usize> {
        match self.kind {
            BasisKind::Faces => face_index(x, self.n, self.k),
            BasisKind::PositiveFaces => {
                if !x.all_positive()
                    || x.dim() as i64 != self.k
                    || x.max_coordinate() > self.n
                {
                    return Err(Error::NotAFace(format!("{x} is not in {self}")));
                }
                Ok(subset_rank(self.n, &x.support()))
            }
        }
    }

    pub fn face_at(&self, idx: usize) -> Face {
        debug_assert!(idx < self.size());
        let k = self.k as usize;
        match self.kind {
            BasisKind::Faces => {
                let support = subset_unrank(self.n, k, idx >> k);
                let pattern = idx & ((1 << k) - 1);
                Face::new(support.iter().enumerate().map(|(pos, &c)| {
                    if pattern >> (k - 1 - pos) & 1 == 1 {
                        -(c as i32)
                    } else {
                        c as i32
                    }
                }))
                .expect("unranked support is a face")
            }
            BasisKind::PositiveFaces => {
                Face::new(subset_unrank(self.n, k, idx).into_iter().map(|c| c as i32))
                    .expect("unranked subset is a face")
            }
        }
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BasisKind::Faces => write!(f, "faces(n={}, k={})", self.n, self.k),
            BasisKind::PositiveFaces => write!(f, "positive-faces(n={}, k={})", self.n, self.k),
        }
    }
}

/// An element of a graded module: exact coefficients over an ordered face basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVector {
    basis: BasisId,
    coeffs: Vec<Rat>,
}

impl FaceVector {
    pub fn zero(basis: BasisId) -> Self {
        FaceVector {
            basis,
            coeffs: vec![Rat::zero(); basis.size()],
        }
    }

    /// The indicator vector of a single face.
    pub fn unit(basis: BasisId, x: &Face) -> Result<Self> {
        let mut v = FaceVector::zero(basis);
        let idx = basis.index_of(x)?;
        v.coeffs[idx] = Rat::one();
        Ok(v)
    }

    /// The all-ones vector (the sum of every basis face).
    pub fn all_ones(basis: BasisId) -> Self {
        FaceVector {
            basis,
            coeffs: vec![Rat::one(); basis.size()],
        }
    }

    pub fn from_entries(
        basis: BasisId,
        entries: impl IntoIterator<Item = (Face, Rat)>,
    ) -> Result<Self> {
        let mut v = FaceVector::zero(basis);
        for (x, c) in entries {
            let idx = basis.index_of(&x)?;
            v.coeffs[idx] += c;
        }
        Ok(v)
    }

    /// Wraps a raw coefficient vector over the given basis.
    pub fn from_coeffs(basis: BasisId, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != basis.size() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients for {basis}, found {}",
                basis.size(),
                coeffs.len()
            )));
        }
        Ok(FaceVector { basis, coeffs })
    }

    pub fn basis(&self) -> BasisId {
        self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn k(&self) -> i64 {
        self.basis.k
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff_at(&self, idx: usize) -> &Rat {
        &self.coeffs[idx]
    }

    pub fn coeff(&self, x: &Face) -> Result<&Rat> {
        Ok(&self.coeffs[self.basis.index_of(x)?])
    }

    pub(crate) fn add_at(&mut self, idx: usize, c: &Rat) {
        self.coeffs[idx] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Indices and values of the nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn check_same_basis(&self, other: &FaceVector) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.to_string(),
                found: other.basis.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FaceVector) -> Result<FaceVector> {
        self.check_same_basis(other)?;
        Ok(FaceVector {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &FaceVector) -> Result<FaceVector> {
        self.check_same_basis(other)?;
        Ok(FaceVector {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> FaceVector {
        FaceVector {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The standard inner product: faces form an orthonormal basis.
    pub fn inner_product(&self, other: &FaceVector) -> Result<Rat> {
        self.check_same_basis(other)?;
        let mut acc = Rat::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        Ok(acc)
    }

    pub fn norm2(&self) -> Rat {
        self.inner_product(self).expect("same basis")
    }
}

impl Serialize for FaceVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let positive = self.basis.kind == BasisKind::PositiveFaces;
        let mut st = serializer.serialize_struct("FaceVector", if positive { 4 } else { 3 })?;
        st.serialize_field("n", &self.basis.n)?;
        st.serialize_field("k", &self.basis.k)?;
        if positive {
            st.serialize_field("basis", "positive")?;
        }
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FaceVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            k: i64,
            #[serde(default)]
            basis: Option<String>,
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let kind = match repr.basis.as_deref() {
            None | Some("faces") => BasisKind::Faces,
            Some("positive") => BasisKind::PositiveFaces,
            Some(other) => return Err(D::Error::custom(format!("unknown basis {other:?}"))),
        };
        let basis = BasisId { n: repr.n, k: repr.k, kind };
        if repr.coeffs.len() != basis.size() {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for {basis}, found {}",
                basis.size(),
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<Rat>().map_err(|e| D::Error::custom(format!("{s:?}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(FaceVector { basis, coeffs })
    }
}

/// A dense exact matrix with explicit row and column bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    rows: BasisId,
    cols: BasisId,
    entries: Vec<Rat>,
}

impl OperatorMatrix {
    pub fn zeros(rows: BasisId, cols: BasisId) -> Self {
        OperatorMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows.size() * cols.size()],
        }
    }

    pub fn identity(basis: BasisId) -> Self {
        let mut m = OperatorMatrix::zeros(basis, basis);
        for i in 0..basis.size() {
            let ncols = basis.size();
            m.entries[i * ncols + i] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: BasisId, cols: BasisId, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let (nr, nc) = (rows.size(), cols.size());
        let mut entries = Vec::with_capacity(nr * nc);
        for r in 0..nr {
            for c in 0..nc {
                entries.push(f(r, c));
            }
        }
        OperatorMatrix { rows, cols, entries }
    }

    /// Assembles a matrix whose columns are the given vectors (in the row basis).
    pub fn from_columns(rows: BasisId, cols: BasisId, columns: &[FaceVector]) -> Result<Self> {
        if columns.len() != cols.size() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} columns, found {}",
                cols.size(),
                columns.len()
            )));
        }
        let mut m = OperatorMatrix::zeros(rows, cols);
        let nc = cols.size();
        for (c, v) in columns.iter().enumerate() {
            if v.basis() != rows {
                return Err(Error::BasisMismatch {
                    expected: rows.to_string(),
                    found: v.basis().to_string(),
                });
            }
            for (r, val) in v.support() {
                m.entries[r * nc + c] = val.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> BasisId {
        self.rows
    }

    pub fn cols(&self) -> BasisId {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.size()
    }

    pub fn ncols(&self) -> usize {
        self.cols.size()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.ncols() + c]
    }

    pub fn entries_iter(&self) -> impl Iterator<Item = &Rat> {
        self.entries.iter()
    }

    pub(crate) fn set_entry(&mut self, r: usize, c: usize, v: Rat) {
        let nc = self.ncols();
        self.entries[r * nc + c] = v;
    }

    pub fn transpose(&self) -> OperatorMatrix {
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut m = OperatorMatrix::zeros(self.cols, self.rows);
        for r in 0..nr {
            for c in 0..nc {
                m.entries[c * nr + r] = self.entries[r * nc + c].clone();
            }
        }
        m
    }

    /// Matrix product `self * rhs`; `rhs` is applied first.
    pub fn matmul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::BasisMismatch {
                expected: self.cols.to_string(),
                found: rhs.rows.to_string(),
            });
        }
        let (nr, nm, nc) = (self.nrows(), self.ncols(), rhs.ncols());
        let mut out = OperatorMatrix::zeros(self.rows, rhs.cols);
        for r in 0..nr {
            for m in 0..nm {
                let a = &self.entries[r * nm + m];
                if a.is_zero() {
                    continue;
                }
                for c in 0..nc {
                    let b = &rhs.entries[m * nc + c];
                    if !b.is_zero() {
                        out.entries[r * nc + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(OperatorMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(OperatorMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> OperatorMatrix {
        OperatorMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    /// Exact matrix-vector product.
    pub fn apply(&self, v: &FaceVector) -> Result<FaceVector> {
        if v.basis() != self.cols {
            return Err(Error::BasisMismatch {
                expected: self.cols.to_string(),
                found: v.basis().to_string(),
            });
        }
        let nc = self.ncols();
        let mut out = FaceVector::zero(self.rows);
        for (c, val) in v.support() {
            for r in 0..self.nrows() {
                let a = &self.entries[r * nc + c];
                if !a.is_zero() {
                    out.coeffs[r] += a * val;
                }
            }
        }
        Ok(out)
    }

    /// Column `c` as a vector in the row basis.
    pub fn column(&self, c: usize) -> FaceVector {
        let nc = self.ncols();
        FaceVector {
            basis: self.rows,
            coeffs: (0..self.nrows()).map(|r| self.entries[r * nc + c].clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<FaceVector> {
        (0..self.ncols()).map(|c| self.column(c)).collect()
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        bareiss_rank(rows_to_integers(&self.entries, self.nrows(), self.ncols()))
    }

    /// Exact rank over the configured field.
    pub fn rank_over(&self, field: &FieldSpec) -> Result<usize> {
        match field {
            FieldSpec::Rationals => Ok(self.rank()),
            FieldSpec::PrimeField(p) => {
                let (nr, nc) = (self.nrows(), self.ncols());
                let mut rows = Vec::with_capacity(nr);
                for r in 0..nr {
                    let mut row = Vec::with_capacity(nc);
                    for c in 0..nc {
                        row.push(reduce_mod(&self.entries[r * nc + c], *p)?);
                    }
                    rows.push(row);
                }
                Ok(gauss_rank_mod(rows, *p))
            }
        }
    }

    /// Entries rendered in the given field, row-major.
    pub fn entry_strings(&self, field: &FieldSpec) -> Result<Vec<Vec<String>>> {
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut out = Vec::with_capacity(nr);
        for r in 0..nr {
            let mut row = Vec::with_capacity(nc);
            for c in 0..nc {
                row.push(field.scalar_string(&self.entries[r * nc + c])?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Dimension of the span of a family of vectors over the rationals.
pub fn span_rank(vs: &[FaceVector]) -> Result<usize> {
    let Some(first) = vs.first() else {
        return Ok(0);
    };
    for v in vs {
        first.check_same_basis(v)?;
    }
    let width = first.basis.size();
    let flat: Vec<Rat> = vs.iter().flat_map(|v| v.coeffs.iter().cloned()).collect();
    Ok(bareiss_rank(rows_to_integers(&flat, vs.len(), width)))
}

/// A maximal linearly independent subfamily, in input order; the returned
/// vectors span the same subspace as the input.
pub fn prune_to_basis(vs: &[FaceVector]) -> Result<Vec<FaceVector>> {
    let Some(first) = vs.first() else {
        return Ok(Vec::new());
    };
    for v in vs {
        first.check_same_basis(v)?;
    }
    let mut pivots: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut out = Vec::new();
    for v in vs {
        let mut work = v.coeffs.clone();
        for (pcol, pvec) in &pivots {
            if !work[*pcol].is_zero() {
                let factor = work[*pcol].clone();
                for (w, p) in work.iter_mut().zip(pvec) {
                    if !p.is_zero() {
                        *w -= &factor * p;
                    }
                }
            }
        }
        if let Some(pcol) = work.iter().position(|c| !c.is_zero()) {
            let lead = work[pcol].clone();
            for w in work.iter_mut() {
                if !w.is_zero() {
                    *w /= &lead;
                }
            }
            pivots.push((pcol, work));
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// Scales each row by the lcm of its denominators, yielding integer rows
/// with the same row space.
fn rows_to_integers(entries: &[Rat], nrows: usize, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::with_capacity(nrows);
    for r in 0..nrows {
        let row = &entries[r * ncols..(r + 1) * ncols];
        let mut lcm = BigInt::one();
        for e in row {
            if !e.is_zero() {
                lcm = lcm.lcm(e.denom());
            }
        }
        rows.push(
            row.iter()
                .map(|e| e.numer() * (&lcm / e.denom()))
                .collect::<Vec<BigInt>>(),
        );
    }
    rows
}

/// Fraction-free (Bareiss) elimination; divisions are exact by the minor
/// identity, which `debug_assert`s guard.
pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    let mut row = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..nrows {
            for j in col + 1..ncols {
                let num = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free division must be exact");
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Gaussian elimination over `F_p`.
#[allow(clippy::needless_range_loop)]
fn gauss_rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(piv) = (row..nrows).find(|&i| !a[i][col].is_multiple_of(p)) else {
            continue;
        };
        a.swap(row, piv);
        let inv = mod_inverse(a[row][col], p);
        for i in row + 1..nrows {
            if !a[i][col].is_multiple_of(p) {
                let factor = crate::field::mulmod(a[i][col], inv, p);
                for j in col..ncols {
                    let sub = crate::field::mulmod(factor, a[row][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, a not divisible by p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = crate::field::mulmod(result, base, p);
        }
        base = crate::field::mulmod(base, base, p);
        e >>= 1;
    }
    result
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.support() {
            let x = self.basis.face_at(idx);
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*[{x}]")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
