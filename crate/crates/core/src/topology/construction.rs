//! Global frames built by transporting a basis at `k0` with a bundle action
//! of the rotation group, and the well-definedness test that detects the
//! little-group phase obstruction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::chern::ambient_vectors;
use super::mesh::SphericalMesh;
use crate::algebra::field::C64;
use crate::error::{Error, Result};
use crate::minkowski::{unit, Rotation};
use crate::representations::frame::{inner, FiberFrame};

/// Stabilizer angles sampled by default.
pub const STABILIZER_ANGLES: [f64; 6] =
    [FRAC_PI_4, FRAC_PI_2, 2.0, 3.0 * FRAC_PI_4, PI, -FRAC_PI_2];

/// How a rotation `R` maps the fiber at `k` to the fiber at `Rk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BundleAction {
    /// `v ↦ D(R) v`, the action inherited from the ambient representation.
    Natural,
    /// `v ↦ v`: moves only the base point (external action on a product bundle).
    BaseOnly,
}

impl BundleAction {
    fn apply(self, frame: &FiberFrame, r: &Rotation, v: &[C64]) -> Vec<C64> {
        match self {
            BundleAction::Natural => frame.rotate_vector(&r.rows(), v),
            BundleAction::BaseOnly => v.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameConstruction {
    /// `sections[v][j] = f_j(k_v)`; empty for excluded vertices.
    pub sections: Vec<Vec<Vec<C64>>>,
    /// Vertices antipodal to `k0`, where the minimal rotation is undefined.
    pub excluded: Vec<usize>,
    /// `max ‖action(G_k ∘ R_{k0}(θ)) v_j − f_j(k)‖` over vertices, `j`, angles.
    pub residual: f64,
    /// The same maximum restricted to each sampled angle.
    pub residual_by_angle: Vec<(f64, f64)>,
    /// Smallest Gram determinant of the sections over included vertices.
    pub min_gram_determinant: f64,
    /// Largest distance of a section from the frame's fiber.
    pub fiber_defect: f64,
}

/// Transports the frame basis at `k0` to every mesh vertex with the minimal
/// rotation `G_k` and compares against `G_k` composed with stabilizer
/// rotations of `k0`.
pub fn external_frame_construction(
    frame: &FiberFrame,
    action: BundleAction,
    k0: [f64; 3],
    mesh: &SphericalMesh,
    angles: &[f64],
) -> Result<FrameConstruction> {
    let k0 = unit(k0)?;
    let basis = ambient_vectors(frame, k0);
    let mut out = FrameConstruction {
        sections: Vec::with_capacity(mesh.vertices.len()),
        excluded: Vec::new(),
        residual: 0.0,
        residual_by_angle: angles.iter().map(|&a| (a, 0.0)).collect(),
        min_gram_determinant: f64::INFINITY,
        fiber_defect: 0.0,
    };
    let stabilizers: Vec<Rotation> = angles
        .iter()
        .map(|&a| Rotation::from_axis_angle(k0, a))
        .collect::<Result<_>>()?;
    for (idx, &k) in mesh.vertices.iter().enumerate() {
        let g = match Rotation::minimal(k0, k) {
            Ok(g) => g,
            Err(Error::Domain(_)) => {
                out.excluded.push(idx);
                out.sections.push(Vec::new());
                continue;
            }
            Err(e) => return Err(e),
        };
        let f: Vec<Vec<C64>> = basis.iter().map(|v| action.apply(frame, &g, v)).collect();
        for (a, stab) in stabilizers.iter().enumerate() {
            let g2 = g.compose(stab);
            for (v, fj) in basis.iter().zip(&f) {
                let w = action.apply(frame, &g2, v);
                let d = w
                    .iter()
                    .zip(fj)
                    .map(|(x, y)| (x - y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                out.residual_by_angle[a].1 = out.residual_by_angle[a].1.max(d);
                out.residual = out.residual.max(d);
            }
        }
        let gram = DMatrix::from_fn(f.len(), f.len(), |i, j| inner(&f[i], &f[j]));
        out.min_gram_determinant = out.min_gram_determinant.min(gram.determinant().norm());
        let fiber = ambient_vectors(frame, k);
        for s in &f {
            let mut proj = vec![C64::new(0.0, 0.0); s.len()];
            for e in &fiber {
                let c = inner(e, s);
                for (p, x) in proj.iter_mut().zip(e) {
                    *p += c * x;
                }
            }
            let d = proj
                .iter()
                .zip(s)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            out.fiber_defect = out.fiber_defect.max(d);
        }
        out.sections.push(f);
    }
    Ok(out)
}

impl FrameConstruction {
    pub fn residual_at(&self, angle: f64) -> Option<f64> {
        self.residual_by_angle
            .iter()
            .find(|(a, _)| (*a - angle).abs() < 1e-15)
            .map(|(_, r)| *r)
    }
}
