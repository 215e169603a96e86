//! Differential-operator calculus and algebraic certificates.

pub mod checks;
pub mod closure;
pub mod field;
pub mod fuzz;
pub mod internal;
pub mod jet;
pub mod operator;
pub mod sampling;

pub use checks::{
    check_bracket_identity, check_commuting, check_so3, check_vector_operator, jacobi_residual,
    radial_drift, scalar_so3_triviality, CommutatorReport, TrivialityVerdict,
};
pub use closure::{fit_structure_constants, Closure, ClosureFit, CLOSURE_TOLERANCE, FAILURE_FLOOR};
pub use field::{levi_civita, FiberMat, SmoothMatrixField, SmoothScalarField, C64};
pub use fuzz::{random_operator, Quadratic};
pub use internal::{internal_certificate, InternalCertificate};
pub use jet::{Dual, Jet, Real};
pub use operator::{DiffOperator, Domain, OpCoeffs, POLE_EXCLUSION};
pub use sampling::{sample_points, SampleConfig};
