//! Orbits of generator-presented subgroups of the signed permutation group on
//! faces, orbit modules and their fixed-space decomposition, orbit-count
//! monotonicity, and the orbit-count identity behind multiplicity-freeness.
//!
//! Subgroups are never materialized as element lists: every orbit computation
//! is a closure under the generators, breadth-first over face indices.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::face::SignedPermutation;
use crate::linalg::{prune_to_basis, span_rank, BasisId, FaceVector, Rat};
use crate::spectral::{component_keys, project_nu};

/// A subgroup of the signed permutation group, given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    gens: Vec<SignedPermutation>,
}

impl GeneratorSet {
    pub fn new(n: usize, gens: Vec<SignedPermutation>) -> Result<Self> {
        for g in &gens {
            if g.n() != n {
                return Err(Error::NotAPermutation(format!(
                    "generator {g} has degree {}, expected {n}",
                    g.n()
                )));
            }
        }
        Ok(GeneratorSet { n, gens })
    }

    /// The trivial subgroup.
    pub fn trivial(n: usize) -> Self {
        GeneratorSet { n, gens: Vec::new() }
    }

    /// The full signed permutation group.
    pub fn full(n: usize) -> Self {
        GeneratorSet {
            n,
            gens: crate::face::hyperoctahedral_generators(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[SignedPermutation] {
        &self.gens
    }
}

/// The orbits of a subgroup on the k-faces, as sorted face indices; orbits
/// are ordered by their smallest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    basis: BasisId,
    orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn basis(&self) -> BasisId {
        self.basis
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_faces(&self, idx: usize) -> Vec<crate::face::Face> {
        self.orbits[idx]
            .iter()
            .map(|&i| self.basis.face_at(i))
            .collect()
    }

    /// The sum of the faces in one orbit; a fixed vector of the subgroup.
    pub fn orbit_sum(&self, idx: usize) -> FaceVector {
        let mut v = FaceVector::zero(self.basis);
        for &i in &self.orbits[idx] {
            v.add_at(i, &Rat::from_integer(1.into()));
        }
        v
    }

    pub fn orbit_sums(&self) -> Vec<FaceVector> {
        (0..self.num_orbits()).map(|i| self.orbit_sum(i)).collect()
    }
}

/// Orbit partition of the k-faces under the generated subgroup, by
/// generator-closure BFS over face indices.
pub fn orbits(gens: &GeneratorSet, k: i64) -> OrbitPartition {
    let basis = BasisId::faces(gens.n, k);
    let d = basis.size();
    // Each generator as a permutation of basis indices.
    let perms: Vec<Vec<usize>> = gens
        .gens
        .iter()
        .map(|g| {
            (0..d)
                .map(|idx| {
                    basis
                        .index_of(&g.act(&basis.face_at(idx)))
                        .expect("action stays in the basis")
                })
                .collect()
        })
        .collect();
    let mut seen = vec![false; d];
    let mut orbits = Vec::new();
    for seed in 0..d {
        if seen[seed] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut queue = VecDeque::from([seed]);
        seen[seed] = true;
        while let Some(idx) = queue.pop_front() {
            orbit.push(idx);
            for p in &perms {
                let next = p[idx];
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitPartition { basis, orbits }
}

/// Dimension of every fixed-space component: the span of the projected orbit
/// sums, keyed by `(j, i)`. The dimensions sum to the orbit count.
pub fn orbit_module_decomposition(
    gens: &GeneratorSet,
    k: usize,
) -> Result<BTreeMap<(usize, usize), usize>> {
    let n = gens.n;
    if k > n {
        return Err(Error::OutOfRange(format!("grade {k} exceeds {n}")));
    }
    let part = orbits(gens, k as i64);
    let sums = part.orbit_sums();
    let mut out = BTreeMap::new();
    for key in component_keys(n, k) {
        let projected: Vec<FaceVector> = sums
            .iter()
            .map(|f| project_nu(f, key.j, key.i))
            .collect::<Result<_>>()?;
        out.insert((key.j, key.i), span_rank(&projected)?);
    }
    Ok(out)
}

/// Outcome of walking one `(j, i)` chain of fixed-space components.
#[derive(Debug, Clone)]
pub struct OrbitChainReport {
    pub j: usize,
    pub i: usize,
    pub dims: Vec<(usize, usize)>,
    pub dims_equal: bool,
    pub coboundary_injective: bool,
    pub images_in_next_component: bool,
    pub boundary_kills_bottom: bool,
    pub coboundary_kills_top: bool,
}

impl OrbitChainReport {
    pub fn ok(&self) -> bool {
        self.dims_equal
            && self.coboundary_injective
            && self.images_in_next_component
            && self.boundary_kills_bottom
            && self.coboundary_kills_top
    }
}

/// Verifies that the coboundary and boundary restrict to isomorphisms along
/// the `(j, i)` chain of fixed spaces, with the boundary killing the bottom
/// level and the coboundary the top level.
pub fn orbit_chain_check(gens: &GeneratorSet, j: usize, i: usize) -> Result<OrbitChainReport> {
    let n = gens.n;
    if j > n || i > n - j {
        return Err(Error::OutOfRange(format!(
            "chain ({j}, {i}) does not exist on {n} coordinates"
        )));
    }
    let bottom = j + i;
    let top = n - i;
    let mut report = OrbitChainReport {
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
        let part = orbits(gens, k as i64);
        let projected: Vec<FaceVector> = part
            .orbit_sums()
            .iter()
            .map(|f| project_nu(f, j, i))
            .collect::<Result<_>>()?;
        let basis_vecs = prune_to_basis(&projected)?;
        report.dims.push((k, basis_vecs.len()));
        if k == bottom {
            for v in &basis_vecs {
                if !crate::incidence::boundary(v)?.is_zero() {
                    report.boundary_kills_bottom = false;
                }
            }
        }
        if k == top {
            for v in &basis_vecs {
                if !crate::incidence::coboundary(v)?.is_zero() {
                    report.coboundary_kills_top = false;
                }
            }
        } else {
            let images: Vec<FaceVector> = basis_vecs
                .iter()
                .map(crate::incidence::coboundary)
                .collect::<Result<_>>()?;
            if span_rank(&images)? != basis_vecs.len() {
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

/// Both sides of the orbit-count monotonicity statement for `2k <= n + 1`.
///
/// The grade-k module contains one component chain starting at every key with
/// `j + i = k`; the orbit counts of consecutive grades differ by the total
/// fixed-space dimension of those starting components. Equality of the counts
/// is therefore equivalent to all of them vanishing on the orbit sums; the
/// top-slice component `(k, 0)` alone gives a necessary condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub k: usize,
    pub d_prev: usize,
    pub d_k: usize,
    pub inequality_holds: bool,
    pub equality: bool,
    /// Every orbit sum projects to zero in the top-slice component `(k, 0)`.
    pub top_slice_criterion_zero: bool,
    /// Every orbit sum projects to zero in every component with `j + i = k`.
    pub new_component_criterion_zero: bool,
    /// Equality of the orbit counts matches the full starting-component
    /// criterion.
    pub criterion_matches: bool,
}

impl MonotonicityReport {
    /// The necessary direction of the single-component test: equal counts
    /// force the top-slice projections to vanish.
    pub fn equality_implies_top_slice(&self) -> bool {
        !self.equality || self.top_slice_criterion_zero
    }
}

/// Compares consecutive orbit counts in the range `2k <= n + 1` and evaluates
/// the projection criteria for equality.
pub fn monotonicity_check(gens: &GeneratorSet, k: usize) -> Result<MonotonicityReport> {
    let n = gens.n;
    if 2 * k > n + 1 {
        return Err(Error::OutOfRange(format!(
            "outside theorem range: needs 2k <= n + 1, got k={k}, n={n}"
        )));
    }
    let d_prev = orbits(gens, k as i64 - 1).num_orbits();
    let part = orbits(gens, k as i64);
    let d_k = part.num_orbits();
    let mut top_slice_zero = true;
    let mut new_components_zero = true;
    for f in part.orbit_sums() {
        for j in 0..=k {
            let i = k - j;
            if i > n - k {
                continue;
            }
            if !project_nu(&f, j, i)?.is_zero() {
                new_components_zero = false;
                if j == k {
                    top_slice_zero = false;
                }
            }
        }
    }
    let equality = d_prev == d_k;
    Ok(MonotonicityReport {
        k,
        d_prev,
        d_k,
        inequality_holds: d_prev <= d_k,
        equality,
        top_slice_criterion_zero: top_slice_zero,
        new_component_criterion_zero: new_components_zero,
        criterion_matches: equality == new_components_zero,
    })
}

/// Orbit-count identity behind multiplicity-freeness: the number of orbits of
/// the stabilizer of a fixed k-face equals the number of spectral components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRankReport {
    pub n: usize,
    pub k: usize,
    pub stabilizer_orbits: usize,
    pub component_count: usize,
    pub matches: bool,
}

/// Generators of the stabilizer of the standard face `{+1, .., +k}`: the
/// symmetric group acting diagonally on the first k coordinates and the full
/// signed group on the rest.
fn stabilizer_generators(n: usize, k: usize) -> GeneratorSet {
    let mut gens = Vec::new();
    for i in 1..k {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images.swap(i - 1, i);
        gens.push(SignedPermutation::new(images).expect("swap"));
    }
    for i in k + 1..n {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images.swap(i - 1, i);
        gens.push(SignedPermutation::new(images).expect("swap"));
    }
    if k < n {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images[n - 1] = -(n as i32);
        gens.push(SignedPermutation::new(images).expect("flip"));
    }
    GeneratorSet { n, gens }
}

pub fn permutation_rank_check(n: usize, k: usize) -> Result<PermutationRankReport> {
    if k > n {
        return Err(Error::OutOfRange(format!("grade {k} exceeds {n}")));
    }
    let stab = stabilizer_generators(n, k);
    let stabilizer_orbits = orbits(&stab, k as i64).num_orbits();
    let component_count = component_keys(n, k).len();
    Ok(PermutationRankReport {
        n,
        k,
        stabilizer_orbits,
        component_count,
        matches: stabilizer_orbits == component_count,
    })
}
