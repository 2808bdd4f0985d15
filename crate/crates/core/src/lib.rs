//! Operator algebra of the quantum cylinder.
//!
//! Elements are finite sums `sum U^n a_n(K)` with eventually constant
//! diagonal coefficients, acting on finitely supported lattice functions
//! `f_n(k)`. Algebraic identities are checked in exact rational-complex
//! arithmetic; the Laplacian resolvent and the reflection-positivity
//! certificates use floating point.

pub mod algebra;
pub mod axioms;
pub mod derivation;
pub mod error;
pub mod hilbert;
pub mod implement;
pub mod jacobi;
pub mod literal;
pub mod random;
pub mod reflection;
pub mod rp;
pub mod scalar;
pub mod sequence;

pub use algebra::{
    generators, AlgebraElement, BoundarySymbolPair, Element, ExtendedElement, Graded,
    TrigPolynomial,
};
pub use derivation::{
    apply_derivation, build_t_fg, build_x_fg, decompose_derivation, derivation_symbol,
    extended_commutator, is_approximately_inner, DerivationSpec, DerivationTerm,
};
pub use error::{Error, Result};
pub use hilbert::HilbertElement;
pub use implement::{
    apply_d, apply_d_adjoint, theta_compatibility, ImplementationKind, ImplementationSpec, Sign,
    ThetaCompatibility,
};
pub use jacobi::{
    sector_jacobi, solve_sector, SectorJacobi, SectorSolution, SectorVector, WindowPolicy,
};
pub use reflection::{
    halfspace_membership, halfspace_project, rotate_algebra, rotate_hilbert, theta_algebra,
    theta_hilbert, HalfSpaceTag,
};
pub use rp::{
    covariant_rp, dense_oracle, invariant_rp, sigma_sums, CertifyConfig, InvariantRp,
    RpCertificate, SectorRecord, Verdict,
};
pub use scalar::{Scalar, Tolerance};
pub use sequence::{DiagonalSequence, IncrementSequence, LatticeSequence};
