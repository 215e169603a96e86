//! Randomized certificates that internal (zero-drift) so(3) triples on
//! rank-one and rank-two helicity fibers are trivial.
//!
//! These are checks at sampled candidates, not proofs.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::frame::{line_frame, ChartId};
use super::massless::{build_massless_J, build_parallel_perp};
use crate::algebra::checks::scalar_so3_triviality;
use crate::algebra::field::{FiberMat, SmoothScalarField, C64};
use crate::algebra::internal::internal_certificate;
use crate::algebra::jet::{Jet, Real};
use crate::algebra::sampling::{rng, sample_points, SampleConfig};
use crate::error::Result;
use num_complex::Complex;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoGoCertificate {
    pub trials: usize,
    /// Candidates satisfying so(3) within the tolerance.
    pub so3_satisfying: usize,
    /// Largest sup-norm (rank 1) or Casimir eigenvalue modulus (rank 2)
    /// among the so(3)-satisfying candidates.
    pub max_witness: f64,
    /// so(3)-satisfying rank-2 candidates rejected for half-integral weights
    /// (projective spin-1/2 representations).
    pub projective_excluded: usize,
    pub tolerance: f64,
    pub bound: f64,
    pub pass: bool,
}

fn log_uniform(r: &mut impl Rng, lo_exp: f64, hi_exp: f64) -> f64 {
    10f64.powf(r.random_range(lo_exp..hi_exp))
}

fn gaussian_c64(r: &mut impl Rng) -> C64 {
    // Box–Muller
    let (u1, u2): (f64, f64) = (r.random_range(f64::EPSILON..1.0), r.random());
    let rad = (-2.0 * u1.ln()).sqrt();
    C64::from_polar(rad, std::f64::consts::TAU * u2) * std::f64::consts::FRAC_1_SQRT_2
}

/// Random scalar triple `F_n(k) = ε (a_n + b_n·k + c_n k̂_n)` of amplitude
/// `ε` spread log-uniformly over many decades around zero.
fn random_scalar_triple(r: &mut impl Rng) -> [SmoothScalarField; 3] {
    let eps = log_uniform(r, -14.0, 0.5);
    std::array::from_fn(|n| {
        let a = gaussian_c64(r) * eps;
        let b: [C64; 3] = std::array::from_fn(|_| gaussian_c64(r) * eps);
        let c = gaussian_c64(r) * eps;
        SmoothScalarField::analytic(move |k| {
            let rr = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            let mut z = Complex::new(Jet::constant(a.re), Jet::constant(a.im));
            for m in 0..3 {
                z = z + Complex::new(k[m] * Jet::constant(b[m].re), k[m] * Jet::constant(b[m].im));
            }
            z + Complex::new(
                k[n] / rr * Jet::constant(c.re),
                k[n] / rr * Jet::constant(c.im),
            )
        })
    })
}

/// Rank one: every randomized internal triple that satisfies so(3) within
/// `cfg.tolerance` at a sample has sup-norm below `bound` there. The
/// `J∥` fiber parts of the helicity bundles are included as fixed cases.
pub fn rank1_certificate(
    trials: usize,
    seed: u64,
    bound: f64,
    cfg: &SampleConfig,
) -> Result<NoGoCertificate> {
    let mut r = rng(seed);
    let mut cert = NoGoCertificate {
        trials: 0,
        so3_satisfying: 0,
        max_witness: 0.0,
        projective_excluded: 0,
        tolerance: cfg.tolerance,
        bound,
        pass: true,
    };
    let mut fixed: Vec<[SmoothScalarField; 3]> = Vec::new();
    for h in [-2, -1, 1, 2] {
        let (par, _) = build_parallel_perp(&build_massless_J(h, ChartId::North)?)?;
        fixed.push(std::array::from_fn(|n| {
            par.get(n).fiber_field().entry(0, 0)
        }));
    }
    fixed.push(std::array::from_fn(|_| SmoothScalarField::zero()));
    let run =
        |f: &[SmoothScalarField; 3], sub_seed: u64, cert: &mut NoGoCertificate| -> Result<()> {
            let v = scalar_so3_triviality(
                f,
                &SampleConfig {
                    seed: sub_seed,
                    ..*cfg
                },
            )?;
            cert.trials += 1;
            if v.so3_samples > 0 {
                cert.so3_satisfying += 1;
                cert.max_witness = cert.max_witness.max(v.max_norm_where_so3);
            }
            Ok(())
        };
    for f in &fixed {
        run(f, seed, &mut cert)?;
    }
    while cert.trials < trials {
        let f = random_scalar_triple(&mut r);
        run(&f, r.random(), &mut cert)?;
    }
    cert.pass = cert.max_witness < bound;
    Ok(cert)
}

fn random_unitary2(r: &mut impl Rng) -> FiberMat<f64> {
    // Gram–Schmidt on a Gaussian matrix
    let a = [gaussian_c64(r), gaussian_c64(r)];
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let u0 = [a[0] / na, a[1] / na];
    let u1 = [-u0[1].conj(), u0[0].conj()];
    FiberMat::from_fn(2, |i, j| if j == 0 { u0[i] } else { u1[i] })
}

fn pauli_halves() -> [FiberMat<f64>; 3] {
    let (o, i) = (C64::new(0.5, 0.0), C64::new(0.0, 0.5));
    let z = C64::new(0.0, 0.0);
    [
        FiberMat::from_fn(2, |p, q| if p != q { o } else { z }),
        FiberMat::from_fn(2, |p, q| match (p, q) {
            (0, 1) => -i,
            (1, 0) => i,
            _ => z,
        }),
        FiberMat::from_fn(2, |p, q| match (p, q) {
            (0, 0) => o,
            (1, 1) => -o,
            _ => z,
        }),
    ]
}

/// Rank two (`γ_h ⊕ γ_−h`): every randomized internal `2×2` triple that
/// satisfies so(3) within tolerance and exponentiates to a genuine SO(3)
/// representation has Casimir eigenvalues below `bound`.
///
/// Candidates: small random triples around zero, random unitary conjugates
/// of spin-1/2 (projective, rejected by their half-integral weights) plus
/// perturbations of them, and the block-diagonal helicity generators
/// `h k̂ ⊕ (−h) k̂` at sampled momenta (which violate so(3)).
pub fn rank2_certificate(
    trials: usize,
    seed: u64,
    bound: f64,
    tolerance: f64,
) -> Result<NoGoCertificate> {
    let mut r = rng(seed);
    let mut cert = NoGoCertificate {
        trials: 0,
        so3_satisfying: 0,
        max_witness: 0.0,
        projective_excluded: 0,
        tolerance,
        bound,
        pass: true,
    };
    let consider = |f: &[FiberMat<f64>; 3], cert: &mut NoGoCertificate| -> Result<()> {
        let c = internal_certificate(f)?;
        cert.trials += 1;
        if c.so3_residual < tolerance {
            if !c.integral_weights {
                cert.projective_excluded += 1;
                return Ok(());
            }
            cert.so3_satisfying += 1;
            cert.max_witness = cert
                .max_witness
                .max(c.casimir_eigenvalues[0].max(c.casimir_eigenvalues[1]));
        }
        Ok(())
    };
    let frame_domain = line_frame(1, ChartId::North)?.domain();
    for h in [1, 2] {
        for k in sample_points(&frame_domain, 50, seed ^ h as u64)? {
            let rr = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            let f = std::array::from_fn(|n| {
                let c = h as f64 * k[n] / rr;
                FiberMat::from_fn(2, |p, q| match (p, q) {
                    (0, 0) => C64::new(c, 0.0),
                    (1, 1) => C64::new(-c, 0.0),
                    _ => C64::new(0.0, 0.0),
                })
            });
            consider(&f, &mut cert)?;
        }
    }
    let half = pauli_halves();
    while cert.trials < trials {
        let f: [FiberMat<f64>; 3] = match cert.trials % 3 {
            0 | 1 => {
                let eps = log_uniform(&mut r, -14.0, 0.5);
                std::array::from_fn(|_| FiberMat::from_fn(2, |_, _| gaussian_c64(&mut r) * eps))
            }
            _ => {
                let u = random_unitary2(&mut r);
                let eps = log_uniform(&mut r, -14.0, -1.0);
                std::array::from_fn(|n| {
                    let base = u.matmul(&half[n]).matmul(&u.adjoint());
                    base.add(&FiberMat::from_fn(2, |_, _| gaussian_c64(&mut r) * eps))
                })
            }
        };
        consider(&f, &mut cert)?;
    }
    cert.pass = cert.max_witness < bound;
    Ok(cert)
}
