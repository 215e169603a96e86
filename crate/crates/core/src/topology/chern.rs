//! Lattice Chern numbers from ambient-space frame overlaps, and Berry
//! holonomies along loops.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mesh::{LoopPath, SphericalMesh, MAX_LOOP_STEP};
use crate::algebra::field::C64;
use crate::error::{Error, Result};
use crate::representations::frame::{direct_sum, inner, ChartId, FiberFrame};

/// Largest accepted distance of `flux / 2π` from an integer.
pub const INTEGRALITY_GUARD: f64 = 0.01;

/// Orientation calibration: `chern = CHERN_SIGN · round(Σ flux / 2π)` with
/// `flux = arg(⟨e_i,e_j⟩⟨e_j,e_l⟩⟨e_l,e_i⟩)` on counterclockwise faces, so
/// that the helicity-`h` bundle has `C = −2h` and small counterclockwise
/// loops carry holonomy `e^{−iCΩ/2}`.
pub const CHERN_SIGN: i64 = -1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernResult {
    pub chern: i64,
    /// `Σ flux`, before rounding.
    pub total_flux: f64,
    pub max_plaquette_flux: f64,
    pub mesh_level: u32,
}

impl ChernResult {
    /// `|Σ flux / 2π − round|`.
    pub fn integrality_defect(&self) -> f64 {
        let x = self.total_flux / TAU;
        (x - x.round()).abs()
    }
}

/// Frame vectors at `k`, read from whichever chart is smooth there. Overlap
/// products around closed cycles do not depend on the choice.
pub fn ambient_vectors(frame: &FiberFrame, k: [f64; 3]) -> Vec<Vec<C64>> {
    let chart = if k[2] >= 0.0 {
        ChartId::North
    } else {
        ChartId::South
    };
    if frame.chart() == chart {
        frame.vectors_at(k)
    } else {
        frame.with_chart(chart).vectors_at(k)
    }
}

fn overlap(a: &[Vec<C64>], b: &[Vec<C64>]) -> DMatrix<C64> {
    DMatrix::from_fn(a.len(), b.len(), |i, j| inner(&a[i], &b[j]))
}

/// `arg det(M_ij M_jl M_li)` for the Gram matrices of one oriented triangle.
fn plaquette(a: &[Vec<C64>], b: &[Vec<C64>], c: &[Vec<C64>]) -> Result<f64> {
    let u = overlap(a, b) * overlap(b, c) * overlap(c, a);
    let d = u.determinant();
    if d.norm() < 1e-14 {
        return Err(Error::Refine("frame overlaps vanish on a plaquette".into()));
    }
    Ok(d.arg())
}

fn lattice_chern(frame: &FiberFrame, mesh: &SphericalMesh) -> Result<ChernResult> {
    let vecs: Vec<Vec<Vec<C64>>> = mesh
        .vertices
        .par_iter()
        .map(|k| ambient_vectors(frame, *k))
        .collect();
    let fluxes: Vec<f64> = mesh
        .faces
        .par_iter()
        .map(|f| plaquette(&vecs[f[0]], &vecs[f[1]], &vecs[f[2]]))
        .collect::<Result<_>>()?;
    let total_flux: f64 = fluxes.iter().sum();
    let max_plaquette_flux = fluxes.iter().fold(0.0f64, |m, f| m.max(f.abs()));
    if max_plaquette_flux >= PI - 1e-9 {
        return Err(Error::Refine(format!(
            "plaquette flux {max_plaquette_flux} is not admissible; refine the mesh"
        )));
    }
    let res = ChernResult {
        chern: CHERN_SIGN * (total_flux / TAU).round() as i64,
        total_flux,
        max_plaquette_flux,
        mesh_level: mesh.level,
    };
    if res.integrality_defect() >= INTEGRALITY_GUARD {
        return Err(Error::Refine(format!(
            "total flux / 2π = {} is not near an integer",
            total_flux / TAU
        )));
    }
    Ok(res)
}

pub fn chern_number(frame: &FiberFrame, mesh: &SphericalMesh) -> Result<ChernResult> {
    if frame.rank() != 1 {
        return Err(Error::Usage(format!(
            "chern_number expects a line bundle, got rank {}",
            frame.rank()
        )));
    }
    lattice_chern(frame, mesh)
}

/// Chern number of the direct sum via `arg det` of the overlap Gram matrices.
pub fn whitney_sum_chern(frames: &[FiberFrame], mesh: &SphericalMesh) -> Result<ChernResult> {
    if frames.iter().any(|f| f.rank() != 1) {
        return Err(Error::Usage(
            "whitney_sum_chern expects line-bundle summands".into(),
        ));
    }
    lattice_chern(&direct_sum(frames.to_vec())?, mesh)
}

/// Chern number of a frame of any rank (all summand fluxes combined).
pub fn bundle_chern(frame: &FiberFrame, mesh: &SphericalMesh) -> Result<ChernResult> {
    lattice_chern(frame, mesh)
}

/// `Π ⟨e(k_i), e(k_{i+1})⟩ / |·|` around the loop.
pub fn berry_holonomy(frame: &FiberFrame, path: &LoopPath) -> Result<C64> {
    if frame.rank() != 1 {
        return Err(Error::Usage(
            "holonomy is implemented for line bundles".into(),
        ));
    }
    let step = path.max_step();
    if step > MAX_LOOP_STEP {
        return Err(Error::Refine(format!(
            "loop step {step:.3} rad exceeds {MAX_LOOP_STEP}"
        )));
    }
    let mut acc = C64::new(1.0, 0.0);
    let pts = path.points();
    let mut prev = ambient_vectors(frame, pts[0]);
    for k in &pts[1..] {
        let cur = ambient_vectors(frame, *k);
        let o = inner(&prev[0], &cur[0]);
        if o.norm() < 1e-14 {
            return Err(Error::Refine(
                "consecutive frame vectors are orthogonal".into(),
            ));
        }
        acc *= o / o.norm();
        prev = cur;
    }
    Ok(acc)
}

/// Discrete Stokes check on a face region: `exp(i Σ flux)` against the
/// holonomy of the region's boundary. Returns `(flux sum, holonomy, |difference|)`.
pub fn region_consistency(
    frame: &FiberFrame,
    mesh: &SphericalMesh,
    region: &[usize],
) -> Result<(f64, C64, f64)> {
    let mut flux = 0.0;
    for &f in region {
        let [a, b, c] = mesh.faces[f].map(|i| ambient_vectors(frame, mesh.vertices[i]));
        flux += plaquette(&a, &b, &c)?;
    }
    let cycle = mesh.region_boundary(region)?;
    let path = LoopPath::new(cycle.iter().map(|&i| mesh.vertices[i]).collect())?;
    let hol = berry_holonomy(frame, &path)?;
    Ok((flux, hol, (C64::from_polar(1.0, flux) - hol).norm()))
}

/// Faces whose centroid lies in the open hemisphere around `axis`.
pub fn hemisphere(mesh: &SphericalMesh, axis: [f64; 3]) -> Vec<usize> {
    (0..mesh.faces.len())
        .filter(|&f| {
            let c = mesh.centroid(f);
            c[0] * axis[0] + c[1] * axis[1] + c[2] * axis[2] > 0.0
        })
        .collect()
}
