//! Concrete operator triples: massive Wigner split, massless total angular
//! momentum on helicity bundles, the `J∥/J⊥` splitting and the Lorentz-gauge
//! photon.

pub mod frame;
pub mod gauge;
pub mod massless;
pub mod nogo;
pub mod quadrature;
pub mod spin;

pub use frame::{
    ambient_frame, direct_sum, helicity_frame, line_frame, trivial_frame, ChartId, FiberFrame,
    FrameKind,
};
pub use gauge::{
    coulomb_project, gauge_equivalent, lorentz_gauge_complete, sam_descent_counterexample,
    DescentWitness, GaugePotential,
};
pub use massless::{
    build_massless_J, build_parallel_perp, chart_independence_residual,
    helicity_eigenvalue_residual, rotate_section_phase, verify_nonstandard_relations,
    NonstandardReport,
};
pub use nogo::{rank1_certificate, rank2_certificate, NoGoCertificate};
pub use quadrature::{sample_section, section_inner_product, SampledSection, SphereQuadrature};
pub use spin::{
    build_massive_JSL, cartesian_spin1, spin_matrices, MassiveSplit, OperatorTriple, TripleLabel,
};
