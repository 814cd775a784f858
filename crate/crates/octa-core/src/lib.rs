//! Exact-arithmetic models of the face complex of the hyperoctahedron.
//!
//! The crate realizes the graded face modules of the n-dimensional
//! cross-polytope over exact scalars, together with:
//!
//! - the incidence operators (boundary, coboundary, the sign-flip operator,
//!   their compositions, containment matrices and association maps),
//! - the full eigenspace decomposition of every face module, with closed-form
//!   eigenvalues, exact projection operators and spectral components,
//! - combinatorial design recognition on the complex, both by brute-force
//!   counting and by the spectral criterion,
//! - orbit computations for generator-presented subgroups of the signed
//!   permutation group, including fixed-space decompositions and orbit-count
//!   monotonicity,
//! - a self-verification suite that replays every identity on explicit
//!   matrices and vectors.
//!
//! Everything is computed over arbitrary-precision rationals (or a prime
//! field `F_p` with `p > n`, `p != 2`); no floating point is involved.

pub mod combinat;
mod error;
pub mod face;
pub mod field;
pub mod designs;
pub mod incidence;
pub mod linalg;
pub mod orbits;
pub mod spectral;
pub mod verify;

pub use designs::{BlockFamily, SpectralDesignReport};
pub use error::{Error, Result};
pub use face::{
    enumerate_faces, face_index, hyperoctahedral_generators, Face, SignedPermutation, Vertex,
};
pub use field::FieldSpec;
pub use incidence::{BooleanOperators, IncidenceOperatorKind};
pub use linalg::{
    prune_to_basis, rat, span_rank, BasisId, BasisKind, FaceVector, OperatorMatrix, Rat,
};
pub use orbits::{
    GeneratorSet, MonotonicityReport, OrbitChainReport, OrbitPartition, PermutationRankReport,
};
pub use spectral::{
    ChainCheckReport, SpectralBasis, SpectralComponentKey, SpectralTower, SplitBasisElement,
};
pub use verify::{CheckResult, VerifyReport};
