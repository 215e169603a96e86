//! Lorentz-gauge photon potentials, gauge classes and the failure of the
//! spin-1 SAM action to descend to physical (Coulomb) potentials.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::spin::cartesian_spin1;
use crate::algebra::field::C64;
use crate::error::{Error, Result};
use crate::minkowski::{cross, norm, MomentumPoint, Rotation};

pub type CVec3 = [C64; 3];

/// Tolerance of the gauge-equivalence test.
pub const GAUGE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugePotential {
    pub k: MomentumPoint,
    pub a: CVec3,
    /// Fixed by `A^μ k_μ = 0`: `A0 ω = A·k`.
    pub a0: C64,
}

fn khat(k: [f64; 3]) -> Result<[f64; 3]> {
    let r = norm(k);
    if r == 0.0 || !r.is_finite() {
        return Err(Error::Domain("gauge operations need |k| > 0".into()));
    }
    Ok([k[0] / r, k[1] / r, k[2] / r])
}

fn dot_real(a: &CVec3, k: [f64; 3]) -> C64 {
    a[0] * k[0] + a[1] * k[1] + a[2] * k[2]
}

fn cnorm(a: &CVec3) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn sub(a: &CVec3, b: &CVec3) -> CVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn lorentz_gauge_complete(k: [f64; 3], a: CVec3) -> Result<GaugePotential> {
    let p = MomentumPoint::massless(k)?;
    let a0 = dot_real(&a, k) / p.energy();
    Ok(GaugePotential { k: p, a, a0 })
}

/// `A′ − A ∝ k`, tested through `‖(A′ − A) × k̂‖`.
pub fn gauge_equivalent(k: [f64; 3], a: &CVec3, b: &CVec3) -> Result<bool> {
    let n = khat(k)?;
    let d = sub(b, a);
    let cross_re = cross(d.map(|z| z.re), n);
    let cross_im = cross(d.map(|z| z.im), n);
    Ok((norm(cross_re).powi(2) + norm(cross_im).powi(2)).sqrt()
        < GAUGE_TOLERANCE * (1.0 + cnorm(&d)))
}

/// `A − (k̂·A) k̂`.
pub fn coulomb_project(k: [f64; 3], a: &CVec3) -> Result<CVec3> {
    let n = khat(k)?;
    let c = dot_real(a, n);
    Ok(std::array::from_fn(|i| a[i] - c * n[i]))
}

/// `exp(−iθ n·S)` with the Cartesian spin-1 matrices.
pub fn spin1_exponential(axis: [f64; 3], angle: f64) -> Result<Matrix3<C64>> {
    let n = khat(axis).map_err(|_| Error::Domain("rotation axis must be nonzero".into()))?;
    let s = cartesian_spin1();
    let gen = Matrix3::from_fn(|p, q| (0..3).map(|m| s[m].get(p, q) * n[m]).sum::<C64>());
    Ok((gen * C64::new(0.0, -angle)).exp())
}

/// Internal spin-1 action on the potential at fixed `k`.
pub fn sam_action(r: &Rotation, a: &CVec3) -> Result<CVec3> {
    let (axis, angle) = r.axis_angle();
    let u = spin1_exponential(axis, angle)?;
    Ok(std::array::from_fn(|i| {
        (0..3).map(|j| u[(i, j)] * a[j]).sum()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescentWitness {
    /// `‖P(R·A) − P(R·(A + αk))‖` with `P` the Coulomb projection at `k`.
    pub distance: f64,
    /// `R k ∥ k`: the pair cannot separate gauge classes.
    pub degenerate: bool,
}

/// Applies the spin-1 SAM action to two gauge-equivalent potentials and
/// measures how far apart their physical projections land.
pub fn sam_descent_counterexample(
    k: [f64; 3],
    a: &CVec3,
    alpha: f64,
    r: &Rotation,
) -> Result<DescentWitness> {
    let n = khat(k)?;
    let shifted: CVec3 = std::array::from_fn(|i| a[i] + alpha * k[i]);
    let pa = coulomb_project(k, &sam_action(r, a)?)?;
    let pb = coulomb_project(k, &sam_action(r, &shifted)?)?;
    let degenerate = norm(cross(r.apply(n), n)) < 1e-12;
    Ok(DescentWitness {
        distance: cnorm(&sub(&pa, &pb)),
        degenerate,
    })
}
