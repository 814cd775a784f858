//! Incidence operators of the face complex: boundary, coboundary, the
//! sign-flip operator, their compositions, containment matrices and the
//! association maps, plus the Boolean-subcomplex counterparts.
//!
//! Every operator exists in two forms: a matrix-free vector transform
//! (per-face neighbor generation, usable for larger `n`) and an explicit
//! matrix built directly from the containment relation. The matrix form is
//! the oracle for the transform in the test suite.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{binomial, factorial};
use crate::error::{Error, Result};
use crate::face::SignedPermutation;
use crate::linalg::{BasisId, BasisKind, FaceVector, OperatorMatrix, Rat};

/// Sum of all codimension-one subfaces; the result lives one grade down.
pub fn boundary(v: &FaceVector) -> Result<FaceVector> {
    let b = v.basis();
    let out_b = b.at_grade(b.k - 1);
    let mut out = FaceVector::zero(out_b);
    for (idx, c) in v.support() {
        let x = b.face_at(idx);
        for pos in 0..x.dim() {
            let z = x.without(pos);
            let zi = out_b.index_of(&z)?;
            out.add_at(zi, c);
        }
    }
    Ok(out)
}

/// Sum of all faces one grade up; on the positive-face basis only positive
/// extensions are taken.
pub fn coboundary(v: &FaceVector) -> Result<FaceVector> {
    let b = v.basis();
    let out_b = b.at_grade(b.k + 1);
    let mut out = FaceVector::zero(out_b);
    if out_b.size() == 0 {
        return Ok(out);
    }
    for (idx, c) in v.support() {
        let x = b.face_at(idx);
        for coord in 1..=b.n {
            if x.uses_coordinate(coord) {
                continue;
            }
            let plus = x.with_vertex(coord as i32)?;
            out.add_at(out_b.index_of(&plus)?, c);
            if b.kind == BasisKind::Faces {
                let minus = x.with_vertex(-(coord as i32))?;
                out.add_at(out_b.index_of(&minus)?, c);
            }
        }
    }
    Ok(out)
}

/// Replaces one vertex by its opposite, summed over all choices; grade is
/// preserved. Defined on the full face basis.
pub fn sigma(v: &FaceVector) -> Result<FaceVector> {
    let b = v.basis();
    if b.kind != BasisKind::Faces {
        return Err(Error::BasisMismatch {
            expected: BasisId::faces(b.n, b.k).to_string(),
            found: b.to_string(),
        });
    }
    let mut out = FaceVector::zero(b);
    for (idx, c) in v.support() {
        let x = b.face_at(idx);
        for pos in 0..x.dim() {
            out.add_at(b.index_of(&x.with_flip(pos))?, c);
        }
    }
    Ok(out)
}

/// Down-up composition: boundary of the coboundary.
pub fn nu_plus(v: &FaceVector) -> Result<FaceVector> {
    boundary(&coboundary(v)?)
}

/// Up-down composition: coboundary of the boundary.
pub fn nu_minus(v: &FaceVector) -> Result<FaceVector> {
    coboundary(&boundary(v)?)
}

/// Matrix of a vector transform with respect to the unit-vector basis.
pub fn matrix_of(
    cols: BasisId,
    target_k: i64,
    transform: impl Fn(&FaceVector) -> Result<FaceVector>,
) -> Result<OperatorMatrix> {
    let rows = cols.at_grade(target_k);
    let mut columns = Vec::with_capacity(cols.size());
    for idx in 0..cols.size() {
        let unit = FaceVector::unit(cols, &cols.face_at(idx))?;
        let img = transform(&unit)?;
        if img.basis() != rows {
            return Err(Error::BasisMismatch {
                expected: rows.to_string(),
                found: img.basis().to_string(),
            });
        }
        columns.push(img);
    }
    OperatorMatrix::from_columns(rows, cols, &columns)
}

fn step_matrix(cols: BasisId, down: bool) -> OperatorMatrix {
    let rows = cols.at_grade(if down { cols.k - 1 } else { cols.k + 1 });
    let col_faces = cols.enumerate();
    let row_faces = rows.enumerate();
    OperatorMatrix::from_fn(rows, cols, |r, c| {
        let contained = if down {
            row_faces[r].is_subface_of(&col_faces[c])
        } else {
            col_faces[c].is_subface_of(&row_faces[r])
        };
        if contained {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

pub fn boundary_matrix(n: usize, k: i64) -> OperatorMatrix {
    step_matrix(BasisId::faces(n, k), true)
}

pub fn coboundary_matrix(n: usize, k: i64) -> OperatorMatrix {
    step_matrix(BasisId::faces(n, k), false)
}

pub fn sigma_matrix(n: usize, k: i64) -> OperatorMatrix {
    let b = BasisId::faces(n, k);
    let faces = b.enumerate();
    let supports: Vec<Vec<usize>> = faces.iter().map(|x| x.support()).collect();
    OperatorMatrix::from_fn(b, b, |r, c| {
        if r != c
            && supports[r] == supports[c]
            && k > 0
            && faces[r].intersection_size(&faces[c]) == (k - 1) as usize
        {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

pub fn nu_plus_matrix(n: usize, k: i64) -> OperatorMatrix {
    boundary_matrix(n, k + 1)
        .matmul(&coboundary_matrix(n, k))
        .expect("grades line up")
}

pub fn nu_minus_matrix(n: usize, k: i64) -> OperatorMatrix {
    coboundary_matrix(n, k - 1)
        .matmul(&boundary_matrix(n, k))
        .expect("grades line up")
}

/// The normalized iterated coboundary from grade `t` to grade `k`: the
/// composition of the single steps divided by `(k - t)!`, which counts the
/// saturated chains between two nested faces. Entry `(y, x)` is 1 exactly
/// when `x` is contained in `y`.
pub fn eps_power(n: usize, t: i64, k: i64) -> Result<OperatorMatrix> {
    if t > k {
        return Err(Error::OutOfRange(format!(
            "iterated coboundary needs t <= k, got t={t}, k={k}"
        )));
    }
    if t < 0 || k > n as i64 {
        return Err(Error::OutOfRange(format!(
            "grades t={t}, k={k} outside 0..={n}"
        )));
    }
    let mut m = OperatorMatrix::identity(BasisId::faces(n, t));
    for s in t..k {
        m = coboundary_matrix(n, s).matmul(&m)?;
    }
    let norm = Rat::new(BigInt::one(), BigInt::from(factorial((k - t) as usize)));
    Ok(m.scale(&norm))
}

/// The 0-1 containment matrix: rows indexed by t-faces, columns by k-faces,
/// entry `(x, y)` equal to 1 exactly when `x` is contained in `y`.
pub fn incidence_matrix(n: usize, t: i64, k: i64) -> Result<OperatorMatrix> {
    if !(0 <= t && t <= k && k <= n as i64) {
        return Err(Error::OutOfRange(format!(
            "containment matrix needs 0 <= t <= k <= n, got t={t}, k={k}, n={n}"
        )));
    }
    let rows = BasisId::faces(n, t);
    let cols = BasisId::faces(n, k);
    let row_faces = rows.enumerate();
    let col_faces = cols.enumerate();
    Ok(OperatorMatrix::from_fn(rows, cols, |r, c| {
        if row_faces[r].is_subface_of(&col_faces[c]) {
            Rat::one()
        } else {
            Rat::zero()
        }
    }))
}

/// Closed-form rank of the containment matrix between grades `t` and `k`
/// in characteristic 0 (or greater than `n`).
pub fn incidence_rank_formula(n: usize, t: usize, k: usize) -> usize {
    (0..=t)
        .map(|j| {
            (binomial(n, t) * binomial(t, j)).min(binomial(n, k) * binomial(k, j))
        })
        .sum()
}

/// The j-th association map on grade `k`: entry 1 between faces meeting in
/// exactly `k - j` vertices.
pub fn assoc_rho(n: usize, j: usize, k: i64) -> Result<OperatorMatrix> {
    if k < 0 || k > n as i64 || j as i64 > k {
        return Err(Error::OutOfRange(format!(
            "association map needs 0 <= j <= k <= n, got j={j}, k={k}, n={n}"
        )));
    }
    let b = BasisId::faces(n, k);
    let faces = b.enumerate();
    let want = (k as usize) - j;
    Ok(OperatorMatrix::from_fn(b, b, |r, c| {
        if faces[r].intersection_size(&faces[c]) == want {
            Rat::one()
        } else {
            Rat::zero()
        }
    }))
}

/// The incidence operators of the Boolean subcomplex (all-positive faces).
pub struct BooleanOperators {
    pub boundary: OperatorMatrix,
    pub coboundary: OperatorMatrix,
    pub nu_plus: OperatorMatrix,
    pub nu_minus: OperatorMatrix,
}

pub fn boolean_operators(n: usize, k: i64) -> BooleanOperators {
    let here = BasisId::positive(n, k);
    let below = step_matrix(here, true);
    let above = step_matrix(here, false);
    let down_from_above = step_matrix(here.at_grade(k + 1), true);
    let up_from_below = step_matrix(here.at_grade(k - 1), false);
    BooleanOperators {
        nu_plus: down_from_above.matmul(&above).expect("grades line up"),
        nu_minus: up_from_below.matmul(&below).expect("grades line up"),
        boundary: below,
        coboundary: above,
    }
}

/// Permutation matrix of a group element acting on the k-face basis.
pub fn action_matrix(g: &SignedPermutation, k: i64) -> OperatorMatrix {
    let b = BasisId::faces(g.n(), k);
    let mut m = OperatorMatrix::zeros(b, b);
    for idx in 0..b.size() {
        let img = g.act(&b.face_at(idx));
        let r = b.index_of(&img).expect("action stays in the basis");
        m.set_entry(r, idx, Rat::one());
    }
    m
}

/// Tags for the operator matrices addressable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceOperatorKind {
    Boundary,
    Coboundary,
    Sigma,
    NuPlus,
    NuMinus,
    EpsPower { t: i64 },
    AssocRho { j: usize },
    BooleanBoundary,
    BooleanCoboundary,
    BooleanNuPlus,
}

impl IncidenceOperatorKind {
    /// The operator's matrix at grade `k` (for the iterated coboundary, `k`
    /// is the target grade).
    pub fn matrix(&self, n: usize, k: i64) -> Result<OperatorMatrix> {
        match *self {
            IncidenceOperatorKind::Boundary => Ok(boundary_matrix(n, k)),
            IncidenceOperatorKind::Coboundary => Ok(coboundary_matrix(n, k)),
            IncidenceOperatorKind::Sigma => Ok(sigma_matrix(n, k)),
            IncidenceOperatorKind::NuPlus => Ok(nu_plus_matrix(n, k)),
            IncidenceOperatorKind::NuMinus => Ok(nu_minus_matrix(n, k)),
            IncidenceOperatorKind::EpsPower { t } => eps_power(n, t, k),
            IncidenceOperatorKind::AssocRho { j } => assoc_rho(n, j, k),
            IncidenceOperatorKind::BooleanBoundary => Ok(boolean_operators(n, k).boundary),
            IncidenceOperatorKind::BooleanCoboundary => Ok(boolean_operators(n, k).coboundary),
            IncidenceOperatorKind::BooleanNuPlus => Ok(boolean_operators(n, k).nu_plus),
        }
    }
}

impl FromStr for IncidenceOperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "boundary" => IncidenceOperatorKind::Boundary,
            "coboundary" => IncidenceOperatorKind::Coboundary,
            "sigma" => IncidenceOperatorKind::Sigma,
            "nu+" => IncidenceOperatorKind::NuPlus,
            "nu-" => IncidenceOperatorKind::NuMinus,
            "bool-boundary" => IncidenceOperatorKind::BooleanBoundary,
            "bool-coboundary" => IncidenceOperatorKind::BooleanCoboundary,
            "bool-nu+" => IncidenceOperatorKind::BooleanNuPlus,
            _ => {
                if let Some(t) = s.strip_prefix("eps:") {
                    let t = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad grade in {s:?}")))?;
                    IncidenceOperatorKind::EpsPower { t }
                } else if let Some(j) = s.strip_prefix("rho:") {
                    let j = j
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad class index in {s:?}")))?;
                    IncidenceOperatorKind::AssocRho { j }
                } else {
                    return Err(Error::Parse(format!(
                        "unknown operator kind {s:?}; use boundary|coboundary|sigma|nu+|nu-|eps:T|rho:J|bool-boundary|bool-coboundary|bool-nu+"
                    )));
                }
            }
        })
    }
}
