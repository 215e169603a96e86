//! Pointwise certificates for internal (zero-drift) triples on rank-two fibers.
//!
//! An internal triple acts fiber by fiber, so satisfying so(3) means each
//! fiber carries a two-dimensional Lie-algebra representation. Among those,
//! only the ones whose `F_3` spectrum is integral exponentiate to genuine
//! (non-projective) SO(3) representations; those are sums of spin 0.

use serde::{Deserialize, Serialize};

use super::field::{levi_civita, FiberMat, C64};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InternalCertificate {
    /// `max ‖[F_m,F_n] − iε_{mnp}F_p‖ / (1 + max ‖F‖)`.
    pub so3_residual: f64,
    /// Moduli of the eigenvalues of `Σ_n F_n²`.
    pub casimir_eigenvalues: [f64; 2],
    /// Eigenvalues of `F_3` (complex in general).
    pub weights: [C64; 2],
    /// Eigenvalues of `F_3` are integers to `1e-6`, i.e. `exp(−2πi F_3) = 1`.
    pub integral_weights: bool,
    pub max_norm: f64,
}

fn eig2(m: &FiberMat<f64>) -> [C64; 2] {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let half_tr = (a + d) * 0.5;
    let disc = (half_tr * half_tr - (a * d - b * c)).sqrt();
    [half_tr + disc, half_tr - disc]
}

pub fn internal_certificate(f: &[FiberMat<f64>; 3]) -> Result<InternalCertificate> {
    if f.iter().any(|m| m.rank() != 2) {
        return Err(Error::Unsupported(
            "internal certificates are implemented for rank-two fibers".into(),
        ));
    }
    let i = C64::new(0.0, 1.0);
    let max_norm = f.iter().map(|m| m.frobenius()).fold(0.0, f64::max);
    let mut res: f64 = 0.0;
    for (m, n) in [(0, 1), (0, 2), (1, 2)] {
        let mut rhs = FiberMat::zeros(2);
        for (p, fp) in f.iter().enumerate() {
            rhs = rhs.add(&fp.scale(i * levi_civita(m, n, p)));
        }
        res = res.max(f[m].commutator(&f[n]).sub(&rhs).frobenius());
    }
    let casimir = f
        .iter()
        .fold(FiberMat::zeros(2), |acc, m| acc.add(&m.matmul(m)));
    let cas = eig2(&casimir);
    let weights = eig2(&f[2]);
    let integral_weights = weights
        .iter()
        .all(|w| w.im.abs() < 1e-6 && (w.re - w.re.round()).abs() < 1e-6);
    Ok(InternalCertificate {
        so3_residual: res / (1.0 + max_norm),
        casimir_eigenvalues: [cas[0].norm(), cas[1].norm()],
        weights,
        integral_weights,
        max_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_halves() -> [FiberMat<f64>; 3] {
        let z = C64::new(0.0, 0.0);
        let h = |re: f64, im: f64| C64::new(re * 0.5, im * 0.5);
        [
            FiberMat::from_fn(2, |p, q| if p != q { h(1.0, 0.0) } else { z }),
            FiberMat::from_fn(2, |p, q| match (p, q) {
                (0, 1) => h(0.0, -1.0),
                (1, 0) => h(0.0, 1.0),
                _ => z,
            }),
            FiberMat::from_fn(2, |p, q| match (p, q) {
                (0, 0) => h(1.0, 0.0),
                (1, 1) => h(-1.0, 0.0),
                _ => z,
            }),
        ]
    }

    #[test]
    fn spin_half_is_caught_as_projective() {
        let cert = internal_certificate(&pauli_halves()).unwrap();
        assert!(cert.so3_residual < 1e-15);
        assert!((cert.casimir_eigenvalues[0] - 0.75).abs() < 1e-14);
        assert!(!cert.integral_weights);
    }

    #[test]
    fn zero_triple_is_trivial() {
        let cert =
            internal_certificate(&[FiberMat::zeros(2), FiberMat::zeros(2), FiberMat::zeros(2)])
                .unwrap();
        assert_eq!(cert.so3_residual, 0.0);
        assert!(cert.integral_weights);
        assert_eq!(cert.casimir_eigenvalues, [0.0, 0.0]);
    }

    #[test]
    fn block_diagonal_helicity_generators_fail_so3() {
        // h k̂_n ⊕ (−h) k̂_n at k̂ = ẑ
        let khat = [0.0, 0.6, 0.8];
        let f = khat.map(|c| {
            FiberMat::from_fn(2, |p, q| match (p, q) {
                (0, 0) => C64::new(c, 0.0),
                (1, 1) => C64::new(-c, 0.0),
                _ => C64::new(0.0, 0.0),
            })
        });
        let cert = internal_certificate(&f).unwrap();
        assert!(cert.so3_residual > 0.1);
    }
}
