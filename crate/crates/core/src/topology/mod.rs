//! Lattice topology of helicity bundles on the unit momentum sphere.

pub mod chern;
pub mod construction;
pub mod mesh;

pub use chern::{
    berry_holonomy, bundle_chern, chern_number, hemisphere, region_consistency, whitney_sum_chern,
    ChernResult, CHERN_SIGN,
};
pub use construction::{
    external_frame_construction, BundleAction, FrameConstruction, STABILIZER_ANGLES,
};
pub use mesh::{icosphere, triangle_solid_angle, LoopPath, SphericalMesh};
