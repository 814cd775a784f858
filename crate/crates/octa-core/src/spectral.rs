//! The split basis diagonalizing the sign-flip operator, the simultaneous
//! eigenspace decomposition of every face module, exact projection operators
//! and spectral components of arbitrary vectors.
//!
//! For a grade-k module on n coordinates the decomposition is indexed by
//! pairs `(j, i)` with `0 <= j <= k` and `0 <= i <= min(k - j, n - k)`. The
//! sign-flip operator acts on the j-th slice as `k - 2j`; the down-up
//! composition acts on the `(j, i)` component as `2(k - j + 1 - i)(n - k - i)`.
//! Projectors are built from the generic Lagrange form
//! `pi_i = prod_{t != i} (psi - lambda_t) / (lambda_i - lambda_t)`
//! over the closed-form eigenvalue list, so every denominator is an explicit
//! product of eigenvalue differences.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::incidence::{nu_plus, sigma};
use crate::linalg::{prune_to_basis, rat, BasisId, BasisKind, FaceVector, OperatorMatrix};

/// Eigenvalue of the sign-flip operator on the j-th slice of grade k.
pub fn sigma_eigenvalue(k: usize, j: usize) -> i64 {
    k as i64 - 2 * j as i64
}

/// Eigenvalue of the down-up composition on component `(j, i)` of grade k.
pub fn nu_eigenvalue(n: usize, k: usize, j: usize, i: usize) -> i64 {
    2 * (k as i64 - j as i64 + 1 - i as i64) * (n as i64 - k as i64 - i as i64)
}

/// Largest eigenvalue index on slice j of grade k.
pub fn max_nu_index(n: usize, k: usize, j: usize) -> usize {
    (k - j).min(n - k)
}

fn graded_dim(n: usize, s: i64, j: usize) -> usize {
    if s < j as i64 || s < 0 || s > n as i64 {
        0
    } else {
        binomial(n, s as usize) * binomial(s as usize, j)
    }
}

/// Index of one simultaneous eigenspace, with its eigenvalue data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectralComponentKey {
    pub k: usize,
    pub j: usize,
    pub i: usize,
}

impl SpectralComponentKey {
    pub fn sigma_eigenvalue(&self) -> i64 {
        sigma_eigenvalue(self.k, self.j)
    }

    pub fn nu_eigenvalue(&self, n: usize) -> i64 {
        nu_eigenvalue(n, self.k, self.j, self.i)
    }

    /// Dimension of the component: a difference of consecutive slice sizes.
    pub fn dimension(&self, n: usize) -> usize {
        let s = (self.j + self.i) as i64;
        let hi = graded_dim(n, s, self.j);
        let lo = graded_dim(n, s - 1, self.j);
        debug_assert!(hi >= lo);
        hi - lo
    }

    pub fn is_valid(&self, n: usize) -> bool {
        self.k <= n && self.j <= self.k && self.i <= max_nu_index(n, self.k, self.j)
    }
}

/// All component keys of grade k on n coordinates, ordered by `(j, i)`.
pub fn component_keys(n: usize, k: usize) -> Vec<SpectralComponentKey> {
    let mut keys = Vec::new();
    if k > n {
        return keys;
    }
    for j in 0..=k {
        for i in 0..=max_nu_index(n, k, j) {
            keys.push(SpectralComponentKey { k, j, i });
        }
    }
    keys
}

/// One element of the split basis: a product of per-coordinate sums over the
/// `plus` set and per-coordinate differences over the `minus` set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitBasisElement {
    plus: Vec<usize>,
    minus: Vec<usize>,
}

impl SplitBasisElement {
    pub fn new(
        plus: impl IntoIterator<Item = usize>,
        minus: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut plus: Vec<usize> = plus.into_iter().collect();
        let mut minus: Vec<usize> = minus.into_iter().collect();
        plus.sort_unstable();
        minus.sort_unstable();
        for part in [&plus, &minus] {
            if part.first().is_some_and(|&c| c == 0) {
                return Err(Error::OutOfRange("coordinates are 1-based".into()));
            }
            if part.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::OutOfRange("repeated coordinate".into()));
            }
        }
        if plus.iter().any(|c| minus.binary_search(c).is_ok()) {
            return Err(Error::OutOfRange(
                "plus and minus parts must be disjoint".into(),
            ));
        }
        Ok(SplitBasisElement { plus, minus })
    }

    pub fn plus_part(&self) -> &[usize] {
        &self.plus
    }

    pub fn minus_part(&self) -> &[usize] {
        &self.minus
    }

    pub fn grade(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    /// The slice index: the number of difference factors.
    pub fn minus_count(&self) -> usize {
        self.minus.len()
    }

    /// Expands the product into the face basis: `2^k` faces with coefficients
    /// `+-1`, the sign being the parity of negated difference factors.
    pub fn expand(&self, n: usize) -> Result<FaceVector> {
        let k = self.grade();
        let basis = BasisId::faces(n, k as i64);
        let mut items: Vec<(usize, bool)> = self
            .plus
            .iter()
            .map(|&c| (c, false))
            .chain(self.minus.iter().map(|&c| (c, true)))
            .collect();
        items.sort_unstable();
        let mut out = FaceVector::zero(basis);
        for mask in 0..1usize << k {
            let mut sign = 1i64;
            let elems = items.iter().enumerate().map(|(pos, &(c, in_minus))| {
                if mask >> pos & 1 == 1 {
                    if in_minus {
                        sign = -sign;
                    }
                    -(c as i32)
                } else {
                    c as i32
                }
            });
            let x = Face::new(elems)?;
            let idx = basis.index_of(&x)?;
            out.add_at(idx, &rat(sign));
        }
        Ok(out)
    }
}

/// The full split basis of grade k on n coordinates, grouped by slice index:
/// entry `j` of the result holds the `C(n, k) * C(k, j)` elements with `j`
/// difference factors.
pub fn split_basis(n: usize, k: usize) -> Vec<Vec<SplitBasisElement>> {
    let mut groups = vec![Vec::new(); k + 1];
    if k > n {
        return groups;
    }
    for support in crate::combinat::subsets_lex(n, k) {
        for (j, group) in groups.iter_mut().enumerate() {
            for minus_positions in crate::combinat::subsets_lex(k, j) {
                let minus: Vec<usize> =
                    minus_positions.iter().map(|&p| support[p - 1]).collect();
                let plus: Vec<usize> = support
                    .iter()
                    .copied()
                    .filter(|c| !minus.contains(c))
                    .collect();
                group.push(SplitBasisElement { plus, minus });
            }
        }
    }
    groups
}

fn require_face_basis(f: &FaceVector) -> Result<(usize, usize)> {
    let b = f.basis();
    if b.kind != BasisKind::Faces {
        return Err(Error::BasisMismatch {
            expected: BasisId::faces(b.n, b.k).to_string(),
            found: b.to_string(),
        });
    }
    if b.k < 0 || b.k > b.n as i64 {
        return Err(Error::OutOfRange(format!(
            "grade {} outside 0..={}",
            b.k, b.n
        )));
    }
    Ok((b.n, b.k as usize))
}

/// Component of `f` in the j-th slice (the `k - 2j` eigenspace of the
/// sign-flip operator), computed matrix-free by the Lagrange product.
pub fn project_sigma(f: &FaceVector, j: usize) -> Result<FaceVector> {
    let (_, k) = require_face_basis(f)?;
    if j > k {
        return Err(Error::OutOfRange(format!("slice {j} exceeds grade {k}")));
    }
    let mut v = f.clone();
    for s in 0..=k {
        if s == j {
            continue;
        }
        let shifted = sigma(&v)?.sub(&v.scale(&rat(sigma_eigenvalue(k, s))))?;
        v = shifted.scale(&rat(2 * (s as i64 - j as i64)).recip());
    }
    Ok(v)
}

/// Lagrange product for the down-up composition on slice j, applied to a
/// vector already inside the slice.
fn nu_poly(fj: &FaceVector, j: usize, i: usize) -> Result<FaceVector> {
    let (n, k) = require_face_basis(fj)?;
    let m = max_nu_index(n, k, j);
    let mut v = fj.clone();
    for t in 0..=m {
        if t == i {
            continue;
        }
        let lam_t = rat(nu_eigenvalue(n, k, j, t));
        let lam_i = rat(nu_eigenvalue(n, k, j, i));
        let shifted = nu_plus(&v)?.sub(&v.scale(&lam_t))?;
        v = shifted.scale(&(lam_i - lam_t).recip());
    }
    Ok(v)
}

/// Component of `f` in the `(j, i)` eigenspace: the slice projection followed
/// by the eigenvalue-list Lagrange product. Matrix-free.
pub fn project_nu(f: &FaceVector, j: usize, i: usize) -> Result<FaceVector> {
    let (n, k) = require_face_basis(f)?;
    if j > k {
        return Err(Error::OutOfRange(format!("slice {j} exceeds grade {k}")));
    }
    if i > max_nu_index(n, k, j) {
        return Err(Error::OutOfRange(format!(
            "eigenvalue index {i} exceeds {}",
            max_nu_index(n, k, j)
        )));
    }
    nu_poly(&project_sigma(f, j)?, j, i)
}

/// All spectral components of `f`, keyed by `(j, i)`. The components sum to
/// `f` and are pairwise orthogonal.
pub fn decompose(f: &FaceVector) -> Result<BTreeMap<(usize, usize), FaceVector>> {
    let (n, k) = require_face_basis(f)?;
    let mut out = BTreeMap::new();
    for j in 0..=k {
        let fj = project_sigma(f, j)?;
        for i in 0..=max_nu_index(n, k, j) {
            out.insert((j, i), nu_poly(&fj, j, i)?);
        }
    }
    Ok(out)
}

/// The decomposition of one face module realized as explicit projector
/// matrices plus an exact basis of every component (projector columns pruned
/// to independence by exact elimination).
pub struct SpectralBasis {
    basis: BasisId,
    keys: Vec<SpectralComponentKey>,
    sigma_projectors: Vec<OperatorMatrix>,
    component_projectors: BTreeMap<(usize, usize), OperatorMatrix>,
    component_bases: BTreeMap<(usize, usize), Vec<FaceVector>>,
}

impl SpectralBasis {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k <= n, "grade {k} exceeds {n}");
        let basis = BasisId::faces(n, k as i64);
        let d = basis.size();
        let keys = component_keys(n, k);
        let mut sigma_projectors = Vec::with_capacity(k + 1);
        let mut component_projectors = BTreeMap::new();
        let mut component_bases = BTreeMap::new();
        for j in 0..=k {
            let m = max_nu_index(n, k, j);
            let mut slice_cols = Vec::with_capacity(d);
            let mut comp_cols: Vec<Vec<FaceVector>> = vec![Vec::with_capacity(d); m + 1];
            for c in 0..d {
                let unit = FaceVector::unit(basis, &basis.face_at(c)).expect("basis face");
                let fj = project_sigma(&unit, j).expect("projection in range");
                for (i, cols) in comp_cols.iter_mut().enumerate() {
                    cols.push(nu_poly(&fj, j, i).expect("projection in range"));
                }
                slice_cols.push(fj);
            }
            sigma_projectors.push(
                OperatorMatrix::from_columns(basis, basis, &slice_cols).expect("square"),
            );
            for (i, cols) in comp_cols.into_iter().enumerate() {
                let pruned = prune_to_basis(&cols).expect("same basis");
                component_projectors.insert(
                    (j, i),
                    OperatorMatrix::from_columns(basis, basis, &cols).expect("square"),
                );
                component_bases.insert((j, i), pruned);
            }
        }
        SpectralBasis {
            basis,
            keys,
            sigma_projectors,
            component_projectors,
            component_bases,
        }
    }

    /// Builds the decomposition and checks it is usable over the given field:
    /// the modulus must exceed `n` and every projector denominator must stay
    /// invertible after reduction.
    pub fn with_field(n: usize, k: usize, field: &crate::field::FieldSpec) -> Result<Self> {
        field.validate_ambient(n)?;
        let me = SpectralBasis::new(n, k);
        if let crate::field::FieldSpec::PrimeField(p) = field {
            for m in me
                .sigma_projectors
                .iter()
                .chain(me.component_projectors.values())
            {
                for e in m.entries_iter() {
                    crate::field::reduce_mod(e, *p)?;
                }
            }
        }
        Ok(me)
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn k(&self) -> usize {
        self.basis.k as usize
    }

    pub fn module_basis(&self) -> BasisId {
        self.basis
    }

    pub fn keys(&self) -> &[SpectralComponentKey] {
        &self.keys
    }

    /// Projector onto the j-th slice, as a matrix on the whole module.
    pub fn sigma_projector(&self, j: usize) -> Result<&OperatorMatrix> {
        self.sigma_projectors
            .get(j)
            .ok_or_else(|| Error::OutOfRange(format!("slice {j} exceeds grade {}", self.k())))
    }

    /// Projector onto component `(j, i)`, as a matrix on the whole module.
    pub fn component_projector(&self, j: usize, i: usize) -> Result<&OperatorMatrix> {
        self.component_projectors
            .get(&(j, i))
            .ok_or_else(|| Error::OutOfRange(format!("no component ({j}, {i})")))
    }

    /// An exact basis of component `(j, i)`.
    pub fn component_basis(&self, j: usize, i: usize) -> Result<&[FaceVector]> {
        self.component_bases
            .get(&(j, i))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::OutOfRange(format!("no component ({j}, {i})")))
    }

    pub fn component_dimension(&self, j: usize, i: usize) -> Result<usize> {
        Ok(self.component_basis(j, i)?.len())
    }

    /// Spectral components via the cached projector matrices.
    pub fn decompose(&self, f: &FaceVector) -> Result<BTreeMap<(usize, usize), FaceVector>> {
        let mut out = BTreeMap::new();
        for (key, p) in &self.component_projectors {
            out.insert(*key, p.apply(f)?);
        }
        Ok(out)
    }
}

/// The decompositions of every grade `0..=n`, built in parallel.
pub struct SpectralTower {
    n: usize,
    levels: Vec<SpectralBasis>,
}

impl SpectralTower {
    pub fn new(n: usize) -> Self {
        let levels: Vec<SpectralBasis> = (0..=n)
            .into_par_iter()
            .map(|k| SpectralBasis::new(n, k))
            .collect();
        SpectralTower { n, levels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self, k: usize) -> &SpectralBasis {
        &self.levels[k]
    }
}

/// Outcome of walking one `(j, i)` chain of components across the grades.
#[derive(Debug, Clone)]
pub struct ChainCheckReport {
    pub j: usize,
    pub i: usize,
    /// `(k, dim)` for every grade in the chain.
    pub dims: Vec<(usize, usize)>,
    pub dims_equal: bool,
    /// The coboundary is injective on every level below the top.
    pub coboundary_injective: bool,
    /// Coboundary images land in the same component one grade up.
    pub images_in_next_component: bool,
    pub boundary_kills_bottom: bool,
    pub coboundary_kills_top: bool,
}

impl ChainCheckReport {
    pub fn ok(&self) -> bool {
        self.dims_equal
            && self.coboundary_injective
            && self.images_in_next_component
            && self.boundary_kills_bottom
            && self.coboundary_kills_top
    }
}

/// Verifies that the coboundary and boundary restrict to isomorphisms along
/// the `(j, i)` chain, that the boundary kills the bottom level and the
/// coboundary the top level.
pub fn isomorphism_chain_check(n: usize, j: usize, i: usize) -> Result<ChainCheckReport> {
    let tower = SpectralTower::new(n);
    chain_check_on(&tower, j, i)
}

/// Same as [`isomorphism_chain_check`] against a prebuilt tower.
pub fn chain_check_on(tower: &SpectralTower, j: usize, i: usize) -> Result<ChainCheckReport> {
    let n = tower.n();
    if j > n || i > n - j {
        return Err(Error::OutOfRange(format!(
            "chain ({j}, {i}) does not exist on {n} coordinates"
        )));
    }
    let bottom = j + i;
    let top = n - i;
    let mut report = ChainCheckReport {
        j,
        i,
        dims: Vec::new(),
        dims_equal: true,
        coboundary_injective: true,
        images_in_next_component: true,
        boundary_kills_bottom: true,
        coboundary_kills_top: true,
    };
    if bottom > top {
        return Ok(report);
    }
    for k in bottom..=top {
        let vectors = tower.level(k).component_basis(j, i)?;
        report.dims.push((k, vectors.len()));
        if k == bottom {
            for v in vectors {
                if !crate::incidence::boundary(v)?.is_zero() {
                    report.boundary_kills_bottom = false;
                }
            }
        }
        if k == top {
            for v in vectors {
                if !crate::incidence::coboundary(v)?.is_zero() {
                    report.coboundary_kills_top = false;
                }
            }
        } else {
            let images: Vec<FaceVector> = vectors
                .iter()
                .map(crate::incidence::coboundary)
                .collect::<Result<_>>()?;
            if crate::linalg::span_rank(&images)? != vectors.len() {
                report.coboundary_injective = false;
            }
            for img in &images {
                if &project_nu(img, j, i)? != img {
                    report.images_in_next_component = false;
                }
            }
        }
    }
    report.dims_equal = report.dims.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::{enumerate_faces, SignedPermutation};
    use crate::linalg::Rat;
    use crate::field::FieldSpec;
    use crate::incidence::{action_matrix, assoc_rho};
    use crate::linalg::span_rank;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};

    fn face(elems: &[i32]) -> Face {
        Face::new(elems.iter().copied()).unwrap()
    }

    #[test]
    fn split_element_expansion_follows_the_definition() {
        // (alpha_1 + bar alpha_1)(alpha_2 - bar alpha_2) on two coordinates.
        let e = SplitBasisElement::new([1], [2]).unwrap();
        let v = e.expand(2).unwrap();
        assert_eq!(*v.coeff(&face(&[1, 2])).unwrap(), rat(1));
        assert_eq!(*v.coeff(&face(&[-1, 2])).unwrap(), rat(1));
        assert_eq!(*v.coeff(&face(&[1, -2])).unwrap(), rat(-1));
        assert_eq!(*v.coeff(&face(&[-1, -2])).unwrap(), rat(-1));

        let empty = SplitBasisElement::new([], []).unwrap();
        let v0 = empty.expand(3).unwrap();
        assert_eq!(*v0.coeff(&Face::empty()).unwrap(), rat(1));
        assert_eq!(v0.support().count(), 1);
    }

    #[test]
    fn split_element_validation() {
        assert!(SplitBasisElement::new([1, 2], [2]).is_err());
        assert!(SplitBasisElement::new([1, 1], []).is_err());
        assert!(SplitBasisElement::new([0], []).is_err());
    }

    #[test]
    fn split_basis_group_sizes_and_span() {
        for n in 0..=4usize {
            for k in 0..=n {
                let groups = split_basis(n, k);
                assert_eq!(groups.len(), k + 1);
                for (j, group) in groups.iter().enumerate() {
                    assert_eq!(group.len(), binomial(n, k) * binomial(k, j), "n={n} k={k} j={j}");
                    for e in group {
                        let v = e.expand(n).unwrap();
                        let nonzero: Vec<_> = v.support().collect();
                        assert_eq!(nonzero.len(), 1 << k);
                        assert!(nonzero.iter().all(|(_, c)| **c == rat(1) || **c == rat(-1)));
                    }
                }
            }
        }
        let all: Vec<FaceVector> = split_basis(4, 2)
            .iter()
            .flatten()
            .map(|e| e.expand(4).unwrap())
            .collect();
        assert_eq!(span_rank(&all).unwrap(), 24);
    }

    #[test]
    fn sign_flip_eigenvalue_on_split_elements() {
        for n in 0..=4usize {
            for k in 0..=n {
                for (j, group) in split_basis(n, k).iter().enumerate() {
                    for e in group {
                        let v = e.expand(n).unwrap();
                        let expect = v.scale(&rat(sigma_eigenvalue(k, j)));
                        assert_eq!(sigma(&v).unwrap(), expect, "n={n} k={k} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_and_coboundary_on_split_elements() {
        // boundary([a,b]) = 2 * sum over one-smaller plus parts;
        // coboundary([a,b]) = sum over one-larger plus parts, skipping minus coordinates.
        let n = 4;
        for k in 0..=n {
            for group in split_basis(n, k) {
                for e in group {
                    let v = e.expand(n).unwrap();

                    let mut down = FaceVector::zero(BasisId::faces(n, k as i64 - 1));
                    for pos in 0..e.plus_part().len() {
                        let mut plus = e.plus_part().to_vec();
                        plus.remove(pos);
                        let smaller = SplitBasisElement::new(plus, e.minus_part().to_vec())
                            .unwrap()
                            .expand(n)
                            .unwrap();
                        down = down.add(&smaller).unwrap();
                    }
                    assert_eq!(
                        crate::incidence::boundary(&v).unwrap(),
                        down.scale(&rat(2))
                    );

                    let mut up = FaceVector::zero(BasisId::faces(n, k as i64 + 1));
                    if k < n {
                        for c in 1..=n {
                            if e.plus_part().contains(&c) || e.minus_part().contains(&c) {
                                continue;
                            }
                            let mut plus = e.plus_part().to_vec();
                            plus.push(c);
                            let larger = SplitBasisElement::new(plus, e.minus_part().to_vec())
                                .unwrap()
                                .expand(n)
                                .unwrap();
                            up = up.add(&larger).unwrap();
                        }
                    }
                    assert_eq!(crate::incidence::coboundary(&v).unwrap(), up);
                }
            }
        }
    }

    #[test]
    fn bottom_of_each_slice_is_an_eigenvector() {
        // On the pure-difference elements the down-up composition is constant 2(n - j).
        let n = 4;
        for j in 0..=n {
            for e in &split_basis(n, j)[j] {
                let v = e.expand(n).unwrap();
                let expect = v.scale(&rat(2 * (n as i64 - j as i64)));
                assert_eq!(nu_plus(&v).unwrap(), expect, "j={j}");
            }
        }
    }

    #[test]
    fn slice_projection_of_distinguished_vectors() {
        for n in 1..=4usize {
            for k in 0..=n {
                let l = FaceVector::all_ones(BasisId::faces(n, k as i64));
                assert_eq!(project_sigma(&l, 0).unwrap(), l);
                for j in 1..=k {
                    assert!(project_sigma(&l, j).unwrap().is_zero());
                }
            }
        }
        // Split elements are reproduced or killed slice by slice.
        let n = 3;
        for k in 0..=n {
            for (j, group) in split_basis(n, k).iter().enumerate() {
                for e in group {
                    let v = e.expand(n).unwrap();
                    for s in 0..=k {
                        let p = project_sigma(&v, s).unwrap();
                        if s == j {
                            assert_eq!(p, v);
                        } else {
                            assert!(p.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn key_enumeration_dimensions_and_distinct_eigenvalues() {
        for n in 0..=12usize {
            for k in 0..=n {
                let keys = component_keys(n, k);
                // Slice dimensions fill the module.
                let total: usize = (0..=k).map(|j| binomial(n, k) * binomial(k, j)).sum();
                assert_eq!(total, binomial(n, k) << k);
                for j in 0..=k {
                    let m = max_nu_index(n, k, j);
                    let slice: usize = (0..=m)
                        .map(|i| SpectralComponentKey { k, j, i }.dimension(n))
                        .sum();
                    assert_eq!(slice, binomial(n, k) * binomial(k, j), "n={n} k={k} j={j}");
                    // Eigenvalues are pairwise distinct, zero only at i = n - k.
                    for a in 0..=m {
                        for b in a + 1..=m {
                            assert_ne!(
                                nu_eigenvalue(n, k, j, a),
                                nu_eigenvalue(n, k, j, b),
                                "n={n} k={k} j={j}"
                            );
                        }
                        let lam = nu_eigenvalue(n, k, j, a);
                        assert_eq!(lam == 0, a == n - k && n - k <= k - j);
                    }
                }
                assert_eq!(
                    keys.len(),
                    (0..=k).map(|j| max_nu_index(n, k, j) + 1).sum::<usize>()
                );
            }
        }
    }

    #[test]
    fn projector_algebra_on_a_small_module() {
        let n = 3;
        for k in 0..=n {
            let sb = SpectralBasis::new(n, k);
            let b = sb.module_basis();
            let identity = OperatorMatrix::identity(b);

            let mut total = OperatorMatrix::zeros(b, b);
            for key in sb.keys() {
                let p = sb.component_projector(key.j, key.i).unwrap();
                assert_eq!(p.matmul(p).unwrap(), *p, "idempotent ({},{})", key.j, key.i);
                total = total.add(p).unwrap();
                for other in sb.keys() {
                    if other != key {
                        let q = sb.component_projector(other.j, other.i).unwrap();
                        assert!(p.matmul(q).unwrap().is_zero());
                    }
                }
                assert_eq!(
                    sb.component_dimension(key.j, key.i).unwrap(),
                    key.dimension(n)
                );
                assert_eq!(p.rank(), key.dimension(n));
            }
            assert_eq!(total, identity, "k={k}");

            // Slice projectors also sum to the identity.
            let mut slice_total = OperatorMatrix::zeros(b, b);
            for j in 0..=k {
                slice_total = slice_total.add(sb.sigma_projector(j).unwrap()).unwrap();
            }
            assert_eq!(slice_total, identity);
        }
    }

    #[test]
    fn eigen_equations_hold_as_matrix_identities() {
        let n = 3;
        for k in 0..=n {
            let sb = SpectralBasis::new(n, k);
            let sigma_m = crate::incidence::sigma_matrix(n, k as i64);
            let nu_m = crate::incidence::nu_plus_matrix(n, k as i64);
            for j in 0..=k {
                let pj = sb.sigma_projector(j).unwrap();
                assert_eq!(
                    sigma_m.matmul(pj).unwrap(),
                    pj.scale(&rat(sigma_eigenvalue(k, j)))
                );
            }
            for key in sb.keys() {
                let p = sb.component_projector(key.j, key.i).unwrap();
                assert_eq!(
                    nu_m.matmul(p).unwrap(),
                    p.scale(&rat(key.nu_eigenvalue(n)))
                );
            }
        }
    }

    #[test]
    fn matrix_free_projection_agrees_with_the_matrices() {
        let n = 3;
        let k = 2;
        let sb = SpectralBasis::new(n, k);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let b = BasisId::faces(n, k as i64);
        for _ in 0..5 {
            let f = FaceVector::from_coeffs(
                b,
                (0..b.size()).map(|_| rat(rng.random_range(-4..=4))).collect(),
            )
            .unwrap();
            for key in sb.keys() {
                let via_matrix = sb.component_projector(key.j, key.i).unwrap().apply(&f).unwrap();
                let matrix_free = project_nu(&f, key.j, key.i).unwrap();
                assert_eq!(via_matrix, matrix_free);
            }
        }
    }

    #[test]
    fn decompose_distinguished_vectors() {
        let n = 3;
        let k = 2;
        let b = BasisId::faces(n, k as i64);

        // The all-ones vector is purely the (0, 0) component.
        let l = FaceVector::all_ones(b);
        let comps = decompose(&l).unwrap();
        for ((j, i), comp) in &comps {
            if (*j, *i) == (0, 0) {
                assert_eq!(comp, &l);
            } else {
                assert!(comp.is_zero());
            }
        }

        // A single face: components sum back, norms sum to 1, pairwise orthogonal.
        let x = FaceVector::unit(b, &face(&[1, -2])).unwrap();
        let comps = decompose(&x).unwrap();
        let mut sum = FaceVector::zero(b);
        let mut norm_total = Rat::zero();
        let parts: Vec<&FaceVector> = comps.values().collect();
        for (a, pa) in parts.iter().enumerate() {
            sum = sum.add(pa).unwrap();
            norm_total += pa.norm2();
            for pb in parts.iter().skip(a + 1) {
                assert!(pa.inner_product(pb).unwrap().is_zero());
            }
        }
        assert_eq!(sum, x);
        assert_eq!(norm_total, rat(1));
    }

    #[test]
    fn leading_component_of_a_block_sum_is_a_multiple_of_all_ones() {
        let n = 4;
        let k = 2;
        let b = BasisId::faces(n, k as i64);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let faces = enumerate_faces(n, k as i64);
        for _ in 0..10 {
            let size = rng.random_range(0..=8usize);
            let picks = rand::seq::index::sample(&mut rng, faces.len(), size);
            let f = FaceVector::from_entries(
                b,
                picks.iter().map(|i| (faces[i].clone(), rat(1))),
            )
            .unwrap();
            let comp = project_nu(&f, 0, 0).unwrap();
            let expect =
                FaceVector::all_ones(b).scale(&(rat(size as i64) / rat(b.size() as i64)));
            assert_eq!(comp, expect);
        }
    }

    #[test]
    fn projectors_commute_with_the_group_action() {
        let n = 3;
        let k = 2;
        let sb = SpectralBasis::new(n, k);
        for g in ["2,-1,3", "3,1,2", "-1,-2,-3"] {
            let g: SignedPermutation = g.parse().unwrap();
            let a = action_matrix(&g, k as i64);
            for key in sb.keys() {
                let p = sb.component_projector(key.j, key.i).unwrap();
                assert_eq!(p.matmul(&a).unwrap(), a.matmul(p).unwrap());
            }
        }
    }

    #[test]
    fn association_maps_act_as_scalars_on_each_component() {
        let n = 4;
        let k = 2i64;
        let sb = SpectralBasis::new(n, k as usize);
        for j_assoc in 0..=k as usize {
            let rho = assoc_rho(n, j_assoc, k).unwrap();
            for key in sb.keys() {
                let basis_vecs = sb.component_basis(key.j, key.i).unwrap();
                let mut scalar: Option<Rat> = None;
                for v in basis_vecs {
                    let w = rho.apply(v).unwrap();
                    let (idx, lead) = v.support().next().expect("basis vector is nonzero");
                    let c = w.coeff_at(idx) / lead;
                    assert_eq!(w, v.scale(&c), "rho_{j_assoc} on ({},{})", key.j, key.i);
                    match &scalar {
                        None => scalar = Some(c),
                        Some(s) => assert_eq!(s, &c),
                    }
                }
            }
        }
    }

    #[test]
    fn chain_of_the_leading_component_in_three_coordinates() {
        let report = isomorphism_chain_check(3, 0, 0).unwrap();
        assert_eq!(report.dims, vec![(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert!(report.ok());
        assert!(isomorphism_chain_check(3, 2, 2).is_err());
    }

    #[test]
    fn field_validation_for_projector_construction() {
        assert!(SpectralBasis::with_field(5, 2, &FieldSpec::PrimeField(7)).is_ok());
        assert!(SpectralBasis::with_field(5, 2, &FieldSpec::PrimeField(5)).is_err());
        assert!(SpectralBasis::with_field(3, 1, &FieldSpec::Rationals).is_ok());
    }
}
