//! The self-verification suite: every identity the crate is built on,
//! replayed as an exact check on explicit matrices and vectors.
//!
//! Checks are grouped into small named functions so that the command-line
//! `verify` run and the acceptance tests share one implementation. Heavy
//! checks take a prebuilt [`SpectralBasis`] or [`SpectralTower`] so towers
//! are constructed once per dimension; randomized checks are seeded and
//! deterministic. `run_suite` fans the independent checks out to a worker
//! pool and merges the results in key order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinat::{binomial, subsets_lex};
use crate::designs::{design_index_counting, design_index_spectral, BlockFamily};
use crate::face::{enumerate_faces, Face, SignedPermutation};
use crate::incidence::{
    boolean_operators, boundary_matrix, coboundary_matrix, eps_power, incidence_matrix,
    incidence_rank_formula, nu_minus_matrix, nu_plus_matrix, sigma_matrix,
};
use crate::linalg::{rat, span_rank, BasisId, OperatorMatrix};
use crate::orbits::{
    monotonicity_check, orbit_module_decomposition, orbits, permutation_rank_check, GeneratorSet,
};
use crate::spectral::{
    chain_check_on, nu_eigenvalue, sigma_eigenvalue, split_basis, SpectralBasis,
    SpectralTower,
};

/// Outcome of one named check at one parameter point.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub params: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn ok(name: &'static str, params: String) -> Self {
        CheckResult { name, params, pass: true, detail: String::new() }
    }

    fn fail(name: &'static str, params: String, detail: impl Into<String>) -> Self {
        CheckResult { name, params, pass: false, detail: detail.into() }
    }

    fn from_flag(name: &'static str, params: String, pass: bool, detail: &str) -> Self {
        if pass {
            CheckResult::ok(name, params)
        } else {
            CheckResult::fail(name, params, detail)
        }
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} [{}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.params
        )?;
        if !self.pass && !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Grade sizes match the closed form `2^k C(n, k)`.
pub fn check_face_counts(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        let count = enumerate_faces(n, k as i64).len();
        let expect = binomial(n, k) << k;
        out.push(CheckResult::from_flag(
            "face-count",
            format!("n={n} k={k}"),
            count == expect,
            &format!("enumerated {count}, expected {expect}"),
        ));
    }
    out
}

/// The coboundary matrix is the transpose of the boundary matrix one grade
/// up, and the sign-flip matrix is symmetric.
pub fn check_adjointness(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n as i64 {
        let adj = coboundary_matrix(n, k) == boundary_matrix(n, k + 1).transpose();
        let sym = sigma_matrix(n, k) == sigma_matrix(n, k).transpose();
        let nu_up = nu_plus_matrix(n, k);
        let nu_down = nu_minus_matrix(n, k);
        let self_adjoint = nu_up == nu_up.transpose() && nu_down == nu_down.transpose();
        out.push(CheckResult::from_flag(
            "adjointness",
            format!("n={n} k={k}"),
            adj && sym && self_adjoint,
            "transpose identity failed",
        ));
    }
    out
}

/// Boolean-subcomplex identity: dotted nu+ minus dotted nu- is `(n - 2k) I`.
pub fn check_a_type(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n as i64 {
        let ops = boolean_operators(n, k);
        let lhs = ops.nu_plus.sub(&ops.nu_minus).expect("same shape");
        let rhs =
            OperatorMatrix::identity(BasisId::positive(n, k)).scale(&rat(n as i64 - 2 * k));
        out.push(CheckResult::from_flag(
            "a-type",
            format!("n={n} k={k}"),
            lhs == rhs,
            "dotted composition difference is not (n-2k) I",
        ));
    }
    out
}

/// Full-complex identity: nu+ minus nu- is `(2n - 3k) I - sigma`.
pub fn check_b_type(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n as i64 {
        let lhs = nu_plus_matrix(n, k).sub(&nu_minus_matrix(n, k)).expect("same shape");
        let rhs = OperatorMatrix::identity(BasisId::faces(n, k))
            .scale(&rat(2 * n as i64 - 3 * k))
            .sub(&sigma_matrix(n, k))
            .expect("same shape");
        out.push(CheckResult::from_flag(
            "b-type",
            format!("n={n} k={k}"),
            lhs == rhs,
            "composition difference is not (2n-3k) I - sigma",
        ));
    }
    out
}

/// The sign-flip operator commutes with both compositions.
pub fn check_commutation(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n as i64 {
        let s = sigma_matrix(n, k);
        let pass = [nu_plus_matrix(n, k), nu_minus_matrix(n, k)].iter().all(|m| {
            s.matmul(m).expect("square") == m.matmul(&s).expect("square")
        });
        out.push(CheckResult::from_flag(
            "sigma-commutes",
            format!("n={n} k={k}"),
            pass,
            "commutator is nonzero",
        ));
    }
    out
}

/// Exact rank of every containment matrix equals the closed form, and the
/// normalized iterated coboundary is its transpose.
pub fn check_rank_formula(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for t in 0..=n {
        for k in t..=n {
            let s = incidence_matrix(n, t as i64, k as i64).expect("grades in range");
            let computed = s.rank();
            let formula = incidence_rank_formula(n, t, k);
            let transposed = s.transpose().rank();
            let eps = eps_power(n, t as i64, k as i64).expect("grades in range");
            let consistent = eps == s.transpose();
            out.push(CheckResult::from_flag(
                "rank-formula",
                format!("n={n} t={t} k={k}"),
                computed == formula && transposed == formula && consistent,
                &format!(
                    "computed {computed}, transposed {transposed}, formula {formula}, \
                     iterated-coboundary consistent: {consistent}"
                ),
            ));
        }
    }
    out
}

/// The split basis spans each grade and diagonalizes the sign-flip operator.
pub fn check_split_basis(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        let groups = split_basis(n, k);
        let mut pass = true;
        let mut detail = String::new();
        let mut all = Vec::new();
        for (j, group) in groups.iter().enumerate() {
            if group.len() != binomial(n, k) * binomial(k, j) {
                pass = false;
                detail = format!("group {j} has size {}", group.len());
            }
            for e in group {
                let v = e.expand(n).expect("valid element");
                let eig = v.scale(&rat(sigma_eigenvalue(k, j)));
                if crate::incidence::sigma(&v).expect("face basis") != eig {
                    pass = false;
                    detail = format!("sign-flip eigenvalue failed on group {j}");
                }
                all.push(v);
            }
        }
        let dim = BasisId::faces(n, k as i64).size();
        if span_rank(&all).expect("same basis") != dim {
            pass = false;
            detail = format!("span is not the whole {dim}-dimensional module");
        }
        out.push(CheckResult::from_flag(
            "split-basis",
            format!("n={n} k={k}"),
            pass,
            &detail,
        ));
    }
    out
}

/// Full projector algebra on one module: idempotency, mutual annihilation,
/// partition of the identity, both eigen-equations, and the dimension count.
///
/// Idempotency and annihilation are checked column-by-column with the
/// matrix-free projections; annihilation is evaluated on the cached component
/// bases, which span the projector images exactly.
pub fn check_projector_algebra(sb: &SpectralBasis) -> Vec<CheckResult> {
    let n = sb.n();
    let k = sb.k();
    let b = sb.module_basis();
    let mut out = Vec::new();

    let mut slice_sum = OperatorMatrix::zeros(b, b);
    for j in 0..=k {
        let pj = sb.sigma_projector(j).expect("slice in range");
        slice_sum = slice_sum.add(pj).expect("same shape");
        // sigma . pi_j = (k - 2j) pi_j, computed matrix-free on columns.
        let lam = rat(sigma_eigenvalue(k, j));
        let eigen_ok = pj.columns().iter().all(|col| {
            crate::incidence::sigma(col).expect("face basis") == col.scale(&lam)
        });
        out.push(CheckResult::from_flag(
            "slice-eigen",
            format!("n={n} k={k} j={j}"),
            eigen_ok,
            "sigma eigen-equation failed on the slice projector",
        ));
    }
    out.push(CheckResult::from_flag(
        "slice-partition",
        format!("n={n} k={k}"),
        slice_sum == OperatorMatrix::identity(b),
        "slice projectors do not sum to the identity",
    ));

    // Each slice projector is refined exactly by its components.
    for j in 0..=k {
        let mut refined = OperatorMatrix::zeros(b, b);
        for i in 0..=crate::spectral::max_nu_index(n, k, j) {
            refined = refined
                .add(sb.component_projector(j, i).expect("key in range"))
                .expect("same shape");
        }
        out.push(CheckResult::from_flag(
            "slice-refinement",
            format!("n={n} k={k} j={j}"),
            &refined == sb.sigma_projector(j).expect("slice in range"),
            "components do not sum to the slice projector",
        ));
    }

    let mut total = OperatorMatrix::zeros(b, b);
    let mut dim_total = 0usize;
    for key in sb.keys() {
        let (j, i) = (key.j, key.i);
        let p = sb.component_projector(j, i).expect("key in range");
        total = total.add(p).expect("same shape");

        let lam = rat(key.nu_eigenvalue(n));
        let mut idempotent = true;
        let mut eigen = true;
        for col in p.columns() {
            if crate::spectral::project_nu(&col, j, i).expect("in range") != col {
                idempotent = false;
            }
            if crate::incidence::nu_plus(&col).expect("face basis") != col.scale(&lam) {
                eigen = false;
            }
        }
        let mut annihilates = true;
        for other in sb.keys() {
            if other == key {
                continue;
            }
            for v in sb.component_basis(other.j, other.i).expect("key in range") {
                if !crate::spectral::project_nu(v, j, i).expect("in range").is_zero() {
                    annihilates = false;
                }
            }
        }
        let dim = sb.component_dimension(j, i).expect("key in range");
        dim_total += dim;
        let dim_ok = dim == key.dimension(n);
        out.push(CheckResult::from_flag(
            "projector-algebra",
            format!("n={n} k={k} j={j} i={i}"),
            idempotent && eigen && annihilates && dim_ok,
            &format!(
                "idempotent: {idempotent}, eigen: {eigen}, annihilating: {annihilates}, dim {dim} vs {}",
                key.dimension(n)
            ),
        ));
    }
    out.push(CheckResult::from_flag(
        "projector-partition",
        format!("n={n} k={k}"),
        total == OperatorMatrix::identity(b) && dim_total == b.size(),
        &format!("component dims sum to {dim_total}, module dim {}", b.size()),
    ));
    out
}

/// The eigenvalue-list product annihilates each slice exactly.
pub fn check_semisimplicity(sb: &SpectralBasis) -> Vec<CheckResult> {
    let n = sb.n();
    let k = sb.k();
    let mut out = Vec::new();
    for j in 0..=k {
        let m = crate::spectral::max_nu_index(n, k, j);
        let pj = sb.sigma_projector(j).expect("slice in range");
        let mut pass = true;
        for col in pj.columns() {
            let mut v = col;
            for i in 0..=m {
                let lam = rat(nu_eigenvalue(n, k, j, i));
                v = crate::incidence::nu_plus(&v)
                    .expect("face basis")
                    .sub(&v.scale(&lam))
                    .expect("same basis");
            }
            if !v.is_zero() {
                pass = false;
            }
        }
        out.push(CheckResult::from_flag(
            "semisimple",
            format!("n={n} k={k} j={j}"),
            pass,
            "minimal polynomial does not annihilate the slice",
        ));
    }
    out
}

/// Every `(j, i)` chain: constant dimensions, injective coboundary landing in
/// the next component, boundary killing the bottom, coboundary the top.
pub fn check_chains(tower: &SpectralTower) -> Vec<CheckResult> {
    let n = tower.n();
    let mut out = Vec::new();
    for j in 0..=n {
        for i in 0..=n - j {
            let report = chain_check_on(tower, j, i).expect("range checked");
            out.push(CheckResult::from_flag(
                "chain",
                format!("n={n} j={j} i={i}"),
                report.ok(),
                &format!("{report:?}"),
            ));
        }
    }
    out
}

/// Boolean spectrum: exact nullities confirm the eigenvalue list and the
/// eigenspace dimensions; the full-complex eigenvalues at slice 0 are exactly
/// twice the Boolean ones.
pub fn check_boolean_spectral(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        let ops = boolean_operators(n, k as i64);
        let b = BasisId::positive(n, k as i64);
        let m = k.min(n - k);
        let mut pass = true;
        let mut detail = String::new();
        let mut total = 0usize;
        for i in 0..=m {
            let lam = ((k + 1 - i) as i64) * ((n - k - i) as i64);
            let shifted = ops
                .nu_plus
                .sub(&OperatorMatrix::identity(b).scale(&rat(lam)))
                .expect("same shape");
            let nullity = b.size() - shifted.rank();
            let expect = binomial(n, i) - if i == 0 { 0 } else { binomial(n, i - 1) };
            if nullity != expect {
                pass = false;
                detail = format!("eigenvalue {lam}: nullity {nullity}, expected {expect}");
            }
            total += nullity;
            if nu_eigenvalue(n, k, 0, i) != 2 * lam {
                pass = false;
                detail = format!("slice-0 eigenvalue is not twice the Boolean one at i={i}");
            }
        }
        if total != b.size() {
            pass = false;
            detail = format!("nullities sum to {total}, dimension is {}", b.size());
        }
        out.push(CheckResult::from_flag(
            "boolean-spectrum",
            format!("n={n} k={k}"),
            pass,
            &detail,
        ));
    }
    out
}

/// The counting recognizer and the spectral recognizer agree on seeded random
/// block families, for every admissible t.
pub fn check_design_equivalence(n: usize, families: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let mut pass = true;
    let mut detail = String::new();
    for _ in 0..families {
        let k = rng.random_range(1..=n);
        let faces = enumerate_faces(n, k as i64);
        let size = rng.random_range(0..=faces.len().min(10));
        let picks = rand::seq::index::sample(&mut rng, faces.len(), size);
        let blocks: Vec<Face> = picks.iter().map(|i| faces[i].clone()).collect();
        let family = BlockFamily::new(n, k, blocks).expect("sampled blocks are distinct");
        for t in 1..=k {
            let counted = design_index_counting(&family, t).expect("t in range");
            let spectral = design_index_spectral(&family, t).expect("t in range");
            if counted != spectral.ell || counted.is_some() != spectral.is_design {
                pass = false;
                detail = format!(
                    "k={k} t={t} blocks={:?}: counted {counted:?}, spectral {:?}",
                    family.blocks(),
                    spectral.ell
                );
            }
        }
    }
    vec![CheckResult::from_flag(
        "design-equivalence",
        format!("n={n} families={families}"),
        pass,
        &detail,
    )]
}

/// Exhaustive recognizer agreement over every block family of bounded size on
/// one grade.
pub fn check_design_exhaustive(n: usize, k: usize, max_size: usize) -> Vec<CheckResult> {
    let faces = enumerate_faces(n, k as i64);
    let mut pass = true;
    let mut detail = String::new();
    let mut tested = 0usize;
    for size in 0..=max_size.min(faces.len()) {
        for picks in subsets_lex(faces.len(), size) {
            let blocks: Vec<Face> = picks.iter().map(|&i| faces[i - 1].clone()).collect();
            let family = BlockFamily::new(n, k, blocks).expect("distinct blocks");
            for t in 1..=k {
                let counted = design_index_counting(&family, t).expect("t in range");
                let spectral = design_index_spectral(&family, t).expect("t in range");
                if counted != spectral.ell || counted.is_some() != spectral.is_design {
                    pass = false;
                    detail = format!("size={size} t={t} blocks={:?}", family.blocks());
                }
            }
            tested += 1;
        }
    }
    vec![CheckResult::from_flag(
        "design-exhaustive",
        format!("n={n} k={k} max-size={max_size} families={tested}"),
        pass,
        &detail,
    )]
}

/// The two named design fixtures: a perfect matching of edges in three
/// coordinates, and an antipodal facet pair in any dimension.
pub fn check_design_fixtures(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if n == 3 {
        let blocks = vec![
            Face::new([1, 2]).unwrap(),
            Face::new([-1, 3]).unwrap(),
            Face::new([-2, -3]).unwrap(),
        ];
        let family = BlockFamily::new(3, 2, blocks).expect("distinct");
        let report = design_index_spectral(&family, 1).expect("t in range");
        let counted = design_index_counting(&family, 1).expect("t in range");
        out.push(CheckResult::from_flag(
            "design-fixture-matching",
            "n=3 t=1 k=2".into(),
            report.is_design && report.ell == Some(1) && counted == Some(1),
            &format!("spectral {:?}, counted {counted:?}", report.ell),
        ));
    }
    if n >= 2 {
        let top = Face::new((1..=n as i32).collect::<Vec<_>>()).unwrap();
        let family = BlockFamily::new(n, n, vec![top.clone(), top.opposite()]).expect("distinct");
        let report = design_index_spectral(&family, 1).expect("t in range");
        let counted = design_index_counting(&family, 1).expect("t in range");
        out.push(CheckResult::from_flag(
            "design-fixture-antipodal",
            format!("n={n} t=1 k={n}"),
            report.is_design && report.ell == Some(1) && counted == Some(1),
            &format!("spectral {:?}, counted {counted:?}", report.ell),
        ));
    }
    out
}

/// A uniformly random signed permutation.
pub fn random_signed_permutation(rng: &mut impl Rng, n: usize) -> SignedPermutation {
    let mut images: Vec<i32> = (1..=n as i32).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.random_range(0..=i));
    }
    for im in &mut images {
        if rng.random_bool(0.5) {
            *im = -*im;
        }
    }
    SignedPermutation::new(images).expect("shuffled images form a permutation")
}

/// A random subgroup presented by one to three generators.
pub fn random_generator_set(rng: &mut impl Rng, n: usize) -> GeneratorSet {
    let count = rng.random_range(1..=3);
    let gens = (0..count).map(|_| random_signed_permutation(rng, n)).collect();
    GeneratorSet::new(n, gens).expect("matching degrees")
}

fn fixture_subgroups(n: usize) -> Vec<(&'static str, GeneratorSet)> {
    let mut out = vec![
        ("trivial", GeneratorSet::trivial(n)),
        ("full", GeneratorSet::full(n)),
    ];
    if n >= 2 {
        let mut images: Vec<i32> = (2..=n as i32).collect();
        images.push(1);
        let cycle = SignedPermutation::new(images).expect("cycle");
        out.push(("cyclic", GeneratorSet::new(n, vec![cycle]).expect("degree")));
    }
    out
}

/// Fixed-space dimensions sum to the orbit count, for the fixture subgroups
/// and a batch of seeded random ones.
pub fn check_orbit_dimension_sums(n: usize, random_subgroups: usize, seed: u64) -> Vec<CheckResult> {
    let mut subgroups: Vec<(String, GeneratorSet)> = fixture_subgroups(n)
        .into_iter()
        .map(|(name, g)| (name.to_string(), g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0db1);
    for idx in 0..random_subgroups {
        subgroups.push((format!("random-{idx}"), random_generator_set(&mut rng, n)));
    }
    let mut out = Vec::new();
    for (name, g) in subgroups {
        let mut pass = true;
        let mut detail = String::new();
        for k in 0..=n {
            let d = orbits(&g, k as i64).num_orbits();
            let dims = orbit_module_decomposition(&g, k).expect("k in range");
            let total: usize = dims.values().sum();
            if total != d {
                pass = false;
                detail = format!("k={k}: dims sum to {total}, orbit count {d}");
            }
        }
        out.push(CheckResult::from_flag(
            "orbit-dimension-sum",
            format!("n={n} subgroup={name}"),
            pass,
            &detail,
        ));
    }
    out
}

/// Orbit-count monotonicity and its projection criterion, for fixtures and
/// seeded random subgroups, at every grade in the theorem range.
pub fn check_monotonicity(n: usize, random_subgroups: usize, seed: u64) -> Vec<CheckResult> {
    let mut subgroups: Vec<(String, GeneratorSet)> = fixture_subgroups(n)
        .into_iter()
        .map(|(name, g)| (name.to_string(), g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3070);
    for idx in 0..random_subgroups {
        subgroups.push((format!("random-{idx}"), random_generator_set(&mut rng, n)));
    }
    let mut out = Vec::new();
    for (name, g) in subgroups {
        let mut pass = true;
        let mut detail = String::new();
        let mut k = 0usize;
        while 2 * k <= n + 1 {
            if k <= n {
                let report = monotonicity_check(&g, k).expect("range checked");
                if !report.inequality_holds
                    || !report.criterion_matches
                    || !report.equality_implies_top_slice()
                {
                    pass = false;
                    detail = format!("k={k}: {report:?}");
                }
            }
            k += 1;
        }
        out.push(CheckResult::from_flag(
            "orbit-monotonicity",
            format!("n={n} subgroup={name}"),
            pass,
            &detail,
        ));
    }
    out
}

/// The stabilizer orbit count equals the spectral component count.
pub fn check_permutation_rank(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 0..=n {
        let report = permutation_rank_check(n, k).expect("k in range");
        out.push(CheckResult::from_flag(
            "permutation-rank",
            format!("n={n} k={k}"),
            report.matches,
            &format!(
                "stabilizer orbits {}, components {}",
                report.stabilizer_orbits, report.component_count
            ),
        ));
    }
    out
}

/// Fixed-space chains for the fixture subgroups.
pub fn check_orbit_chains(n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, g) in fixture_subgroups(n) {
        let mut pass = true;
        let mut detail = String::new();
        for j in 0..=n {
            for i in 0..=n - j {
                let report = crate::orbits::orbit_chain_check(&g, j, i).expect("range checked");
                if !report.ok() {
                    pass = false;
                    detail = format!("j={j} i={i}: {report:?}");
                }
            }
        }
        out.push(CheckResult::from_flag(
            "orbit-chain",
            format!("n={n} subgroup={name}"),
            pass,
            &detail,
        ));
    }
    out
}

/// Runs the whole suite for every dimension up to `max_n`, fanning the
/// independent checks out to a worker pool; deterministic under a fixed seed.
pub fn run_suite(max_n: usize, seed: u64) -> VerifyReport {
    let mut tasks: Vec<Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>> = Vec::new();
    for n in 0..=max_n {
        tasks.push(Box::new(move || check_face_counts(n)));
        tasks.push(Box::new(move || check_adjointness(n)));
        tasks.push(Box::new(move || check_a_type(n)));
        tasks.push(Box::new(move || check_b_type(n)));
        tasks.push(Box::new(move || check_commutation(n)));
        tasks.push(Box::new(move || check_rank_formula(n)));
        tasks.push(Box::new(move || check_split_basis(n)));
        tasks.push(Box::new(move || check_boolean_spectral(n)));
        tasks.push(Box::new(move || {
            let tower = SpectralTower::new(n);
            let mut out = Vec::new();
            for k in 0..=n {
                out.extend(check_projector_algebra(tower.level(k)));
                out.extend(check_semisimplicity(tower.level(k)));
            }
            out.extend(check_chains(&tower));
            out
        }));
        if n >= 1 {
            tasks.push(Box::new(move || check_design_equivalence(n, 25, seed)));
            tasks.push(Box::new(move || check_design_fixtures(n)));
            tasks.push(Box::new(move || check_orbit_dimension_sums(n, 10, seed)));
            tasks.push(Box::new(move || check_monotonicity(n, 10, seed)));
            tasks.push(Box::new(move || check_permutation_rank(n)));
        }
        if (1..=3).contains(&n) {
            tasks.push(Box::new(move || check_orbit_chains(n)));
        }
    }
    if max_n >= 3 {
        tasks.push(Box::new(|| check_design_exhaustive(3, 2, 3)));
    }
    let mut checks: Vec<CheckResult> = tasks
        .par_iter()
        .flat_map_iter(|t| t())
        .collect();
    checks.sort_by(|a, b| (a.name, &a.params).cmp(&(b.name, &b.params)));
    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_suite_passes_at_small_scale() {
        let report = run_suite(2, 42);
        for c in &report.checks {
            assert!(c.pass, "{c}");
        }
        assert!(report.all_pass());
        assert!(report.failures().is_empty());
    }

    #[test]
    fn the_suite_is_deterministic_under_a_seed() {
        let a = run_suite(1, 7);
        let b = run_suite(1, 7);
        let names: Vec<String> = a.checks.iter().map(|c| c.to_string()).collect();
        let names_b: Vec<String> = b.checks.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, names_b);
    }

    #[test]
    fn random_permutations_are_valid_and_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_signed_permutation(&mut rng, 5);
            assert_eq!(g.n(), 5);
        }
        let mut rng_a = ChaCha8Rng::seed_from_u64(3);
        let mut rng_b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            random_signed_permutation(&mut rng_a, 4),
            random_signed_permutation(&mut rng_b, 4)
        );
    }
}
