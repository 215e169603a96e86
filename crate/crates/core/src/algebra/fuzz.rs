//! Random polynomial operators for property tests and fuzzed identities.

use num_complex::Complex;
use rand::Rng;

use super::field::{FiberMat, SmoothMatrixField, SmoothScalarField, C64};
use super::jet::Jet;
use super::operator::{DiffOperator, Domain};

/// Coefficients of a complex polynomial of degree ≤ 2 in `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadratic {
    pub c0: C64,
    pub c1: [C64; 3],
    pub c2: [[C64; 3]; 3],
}

fn unit_c64(r: &mut impl Rng) -> C64 {
    C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

impl Quadratic {
    pub fn random(r: &mut impl Rng) -> Self {
        Quadratic {
            c0: unit_c64(r),
            c1: std::array::from_fn(|_| unit_c64(r)),
            c2: std::array::from_fn(|_| std::array::from_fn(|_| unit_c64(r))),
        }
    }

    pub fn eval(&self, k: &[Jet; 3]) -> Complex<Jet> {
        let lift = |z: C64| Complex::new(Jet::constant(z.re), Jet::constant(z.im));
        let mut acc = lift(self.c0);
        for a in 0..3 {
            acc = acc + lift(self.c1[a]) * Complex::new(k[a], Jet::constant(0.0));
            for b in 0..3 {
                acc = acc + lift(self.c2[a][b]) * Complex::new(k[a] * k[b], Jet::constant(0.0));
            }
        }
        acc
    }

    pub fn field(self) -> SmoothScalarField {
        SmoothScalarField::analytic(move |k| self.eval(k))
    }
}

/// Operator with random quadratic drift and fiber coefficients.
pub fn random_operator(r: &mut impl Rng, rank: usize, domain: Domain) -> DiffOperator {
    let drift = std::array::from_fn(|_| Quadratic::random(r).field());
    let entries: Vec<Quadratic> = (0..rank * rank).map(|_| Quadratic::random(r)).collect();
    let fiber = SmoothMatrixField::analytic(rank, move |k| {
        FiberMat::from_fn(rank, |i, j| entries[i * rank + j].eval(k))
    });
    DiffOperator::new(drift, fiber, domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::checks::jacobi_residual;
    use crate::algebra::sampling::{rng, sample_points};

    #[test]
    fn fuzzed_operators_satisfy_jacobi() {
        let mut r = rng(3);
        let d = Domain::lightcone();
        let pts = sample_points(&d, 5, 1).unwrap();
        for rank in [1, 2] {
            let [a, b, c] = std::array::from_fn(|_| random_operator(&mut r, rank, d));
            assert!(jacobi_residual(&a, &b, &c, &pts).unwrap() < 1e-12);
            assert!(
                a.commutator(&b)
                    .unwrap()
                    .coefficients_unchecked(pts[0])
                    .norm()
                    > 1e-3
            );
        }
    }
}
