//! Sampled certificates of commutation relations.
//!
//! Every check evaluates the coefficients of a bracket identity at seeded
//! sample points and reports the largest coefficient-wise deviation,
//! normalized by `1 + max operator coefficient norm` over the samples.

use serde::{Deserialize, Serialize};

use super::field::{levi_civita, SmoothScalarField, C64};
use super::operator::{DiffOperator, Domain, OpCoeffs};
use super::sampling::{sample_points, SampleConfig};
use crate::error::{Error, Result};

const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    /// `residuals[m][n]`: worst normalized deviation of the `(m, n)` identity.
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
    pub sample_points: Vec<[f64; 3]>,
    pub tolerance: f64,
    pub pass: bool,
}

impl CommutatorReport {
    fn from_pairs(residuals: Vec<Vec<f64>>, points: Vec<[f64; 3]>, tolerance: f64) -> Self {
        let max_residual = residuals.iter().flatten().copied().fold(0.0, f64::max);
        CommutatorReport {
            residuals,
            max_residual,
            sample_points: points,
            tolerance,
            pass: max_residual < tolerance,
        }
    }
}

/// Common domain of a list of operators, checking that ranks agree.
pub(crate) fn common_domain<'a>(
    ops: impl IntoIterator<Item = &'a DiffOperator>,
) -> Result<(usize, Domain)> {
    let mut it = ops.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Usage("no operators supplied".into()))?;
    let mut domain = *first.domain();
    for op in it {
        if op.rank() != first.rank() {
            return Err(Error::RankMismatch {
                left: first.rank(),
                right: op.rank(),
            });
        }
        domain = domain.intersect(op.domain())?;
    }
    Ok((first.rank(), domain))
}

/// Evaluates `lhs(m, n) − rhs(m, n)` for every index pair at every sample.
///
/// `rhs` receives the coefficient values of `basis` at the point.
fn bracket_residuals(
    left: &[DiffOperator],
    right: &[DiffOperator],
    basis: &[DiffOperator],
    pairs: &[(usize, usize)],
    rhs: impl Fn(usize, usize, &[OpCoeffs<f64>]) -> OpCoeffs<f64>,
    cfg: &SampleConfig,
) -> Result<CommutatorReport> {
    let (_, domain) = common_domain(left.iter().chain(right).chain(basis))?;
    let points = sample_points(&domain, cfg.samples, cfg.seed)?;
    let mut brackets = Vec::with_capacity(pairs.len());
    for &(m, n) in pairs {
        brackets.push(left[m].commutator(&right[n])?);
    }
    let mut scale: f64 = 0.0;
    let mut raw = vec![vec![0.0f64; right.len()]; left.len()];
    for &k in &points {
        let vals: Vec<OpCoeffs<f64>> = basis
            .iter()
            .map(|op| op.coefficients_unchecked(k))
            .collect();
        for op in left.iter().chain(right) {
            scale = scale.max(op.coefficients_unchecked(k).norm());
        }
        for (idx, &(m, n)) in pairs.iter().enumerate() {
            let dev = brackets[idx]
                .coefficients_unchecked(k)
                .sub(&rhs(m, n, &vals))
                .norm();
            raw[m][n] = raw[m][n].max(dev);
        }
    }
    let residuals = raw
        .into_iter()
        .map(|row| row.into_iter().map(|r| r / (1.0 + scale)).collect())
        .collect();
    Ok(CommutatorReport::from_pairs(
        residuals,
        points,
        cfg.tolerance,
    ))
}

/// `i Σ_p ε_{mnp} X_p` evaluated from coefficient values.
fn i_eps(m: usize, n: usize, vals: &[OpCoeffs<f64>]) -> OpCoeffs<f64> {
    let rank = vals[0].fiber.rank();
    (0..3).fold(OpCoeffs::zeros(rank), |acc, p| {
        let e = levi_civita(m, n, p);
        if e == 0.0 {
            acc
        } else {
            acc.add(&vals[p].scale(I * e))
        }
    })
}

fn expect_triple(ops: &[DiffOperator]) -> Result<()> {
    if ops.len() != 3 {
        return Err(Error::Usage(format!(
            "expected an operator triple, got {}",
            ops.len()
        )));
    }
    Ok(())
}

/// `[X_m, X_n] = i ε_{mnp} X_p`.
pub fn check_so3(ops: &[DiffOperator], cfg: &SampleConfig) -> Result<CommutatorReport> {
    expect_triple(ops)?;
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut report = bracket_residuals(ops, ops, ops, &pairs, i_eps, cfg)?;
    for (m, n) in pairs {
        report.residuals[n][m] = report.residuals[m][n];
    }
    Ok(report)
}

/// `[V_m, J_n] = i ε_{mnp} V_p` for all nine pairs.
pub fn check_vector_operator(
    v: &[DiffOperator],
    j: &[DiffOperator],
    cfg: &SampleConfig,
) -> Result<CommutatorReport> {
    expect_triple(v)?;
    expect_triple(j)?;
    let pairs: Vec<_> = (0..3).flat_map(|m| (0..3).map(move |n| (m, n))).collect();
    bracket_residuals(v, j, v, &pairs, i_eps, cfg)
}

/// `[A_m, B_n] = 0` for all nine pairs.
pub fn check_commuting(
    a: &[DiffOperator],
    b: &[DiffOperator],
    cfg: &SampleConfig,
) -> Result<CommutatorReport> {
    expect_triple(a)?;
    expect_triple(b)?;
    let pairs: Vec<_> = (0..3).flat_map(|m| (0..3).map(move |n| (m, n))).collect();
    let rank = a[0].rank();
    bracket_residuals(a, b, a, &pairs, move |_, _, _| OpCoeffs::zeros(rank), cfg)
}

/// Identity `[A_m, B_n] = i ε_{mnp} C_p` with an arbitrary right-hand triple.
pub fn check_bracket_identity(
    a: &[DiffOperator],
    b: &[DiffOperator],
    c: &[DiffOperator],
    cfg: &SampleConfig,
) -> Result<CommutatorReport> {
    expect_triple(a)?;
    expect_triple(b)?;
    expect_triple(c)?;
    let pairs: Vec<_> = (0..3).flat_map(|m| (0..3).map(move |n| (m, n))).collect();
    bracket_residuals(a, b, c, &pairs, i_eps, cfg)
}

/// Outcome of [`scalar_so3_triviality`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialityVerdict {
    /// Samples at which the triple satisfies so(3) within tolerance.
    pub so3_samples: usize,
    pub samples: usize,
    /// Largest `|F|` among the so(3)-satisfying samples.
    pub max_norm_where_so3: f64,
    /// Largest pointwise so(3) residual over all samples.
    pub max_so3_residual: f64,
    /// The implication `so(3) ⇒ F = 0` held at every sample.
    pub pass: bool,
}

/// Rank-one internal triples: checks pointwise that satisfying so(3) forces
/// the triple to vanish. For multiplication operators the brackets are
/// identically zero, so `i ε_{mnp} F_p` must vanish too.
pub fn scalar_so3_triviality(
    fields: &[SmoothScalarField; 3],
    cfg: &SampleConfig,
) -> Result<TrivialityVerdict> {
    let domain = Domain::lightcone();
    let ops: Vec<DiffOperator> = fields
        .iter()
        .map(|f| DiffOperator::scalar_multiplication(f.clone(), domain))
        .collect();
    let brackets =
        [(0, 1), (0, 2), (1, 2)].map(|(m, n)| ops[m].commutator(&ops[n]).map(|c| (m, n, c)));
    let brackets: Vec<_> = brackets.into_iter().collect::<Result<_>>()?;
    let points = sample_points(&domain, cfg.samples, cfg.seed)?;
    let mut verdict = TrivialityVerdict {
        so3_samples: 0,
        samples: points.len(),
        max_norm_where_so3: 0.0,
        max_so3_residual: 0.0,
        pass: true,
    };
    for k in points {
        let vals: Vec<OpCoeffs<f64>> = ops.iter().map(|op| op.coefficients_unchecked(k)).collect();
        let norm = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut res: f64 = 0.0;
        for (m, n, c) in &brackets {
            res = res.max(
                c.coefficients_unchecked(k)
                    .sub(&i_eps(*m, *n, &vals))
                    .norm(),
            );
        }
        let res = res / (1.0 + norm);
        verdict.max_so3_residual = verdict.max_so3_residual.max(res);
        if res < cfg.tolerance {
            verdict.so3_samples += 1;
            verdict.max_norm_where_so3 = verdict.max_norm_where_so3.max(norm);
            if norm >= cfg.tolerance * (1.0 + norm) {
                verdict.pass = false;
            }
        }
    }
    Ok(verdict)
}

/// Drift of every operator is tangent to the spheres `|k| = const`
/// (energy-preserving actions): returns `max |Σ_a f_a k_a| / |k|`.
pub fn radial_drift(ops: &[DiffOperator], points: &[[f64; 3]]) -> f64 {
    let mut worst: f64 = 0.0;
    for op in ops {
        for k in points {
            let c = op.coefficients_unchecked(*k);
            let r = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
            let dot: C64 = (0..3).map(|a| c.drift[a] * k[a]).sum();
            worst = worst.max(dot.norm() / r);
        }
    }
    worst
}

/// Largest drift and fiber coefficient norms of a triple at the points.
pub fn coefficient_extent(ops: &[DiffOperator], points: &[[f64; 3]]) -> (f64, f64) {
    let (mut drift, mut fiber): (f64, f64) = (0.0, 0.0);
    for op in ops {
        for k in points {
            let c = op.coefficients_unchecked(*k);
            drift = drift.max(c.drift.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
            fiber = fiber.max(c.fiber.frobenius());
        }
    }
    (drift, fiber)
}

/// Jacobi identity `[A,[B,C]] + [B,[C,A]] + [C,[A,B]]` at the points.
pub fn jacobi_residual(
    a: &DiffOperator,
    b: &DiffOperator,
    c: &DiffOperator,
    points: &[[f64; 3]],
) -> Result<f64> {
    let t1 = a.commutator(&b.commutator(c)?)?;
    let t2 = b.commutator(&c.commutator(a)?)?;
    let t3 = c.commutator(&a.commutator(b)?)?;
    let sum = DiffOperator::sum([&t1, &t2, &t3])?;
    let mut worst: f64 = 0.0;
    for k in points {
        let scale = [a, b, c]
            .iter()
            .map(|op| op.coefficients_unchecked(*k).norm())
            .fold(1.0, f64::max);
        worst = worst.max(sum.coefficients_unchecked(*k).norm() / scale.powi(3));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{FiberMat, SmoothMatrixField};

    fn spin1_cartesian() -> Vec<DiffOperator> {
        (0..3)
            .map(|n| {
                let m = FiberMat::from_fn(3, |p, q| C64::new(0.0, -levi_civita(n, p, q)));
                DiffOperator::multiplication(SmoothMatrixField::constant(m), Domain::everywhere())
            })
            .collect()
    }

    fn orbital(rank: usize) -> Vec<DiffOperator> {
        (0..3)
            .map(|n| DiffOperator::orbital(n, rank, Domain::everywhere()))
            .collect()
    }

    #[test]
    fn cartesian_spin_one_satisfies_so3() {
        let r = check_so3(&spin1_cartesian(), &SampleConfig::new(100, 42, 1e-12)).unwrap();
        assert!(r.pass, "{}", r.max_residual);
    }

    #[test]
    fn orbital_triple_satisfies_so3_but_does_not_commute_with_itself() {
        let cfg = SampleConfig::new(100, 3, 1e-12);
        assert!(check_so3(&orbital(1), &cfg).unwrap().pass);
        assert!(
            !check_commuting(&orbital(1), &orbital(1), &cfg)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn constant_triple_is_not_a_vector_operator() {
        let d = Domain::everywhere();
        let v: Vec<_> = [1.0, 0.0, 0.0]
            .iter()
            .map(|&c| {
                DiffOperator::scalar_multiplication(
                    SmoothScalarField::constant(C64::new(c, 0.0)),
                    d,
                )
            })
            .collect();
        let r = check_vector_operator(&v, &orbital(1), &SampleConfig::default()).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn direction_multiplications_commute() {
        let d = Domain::lightcone();
        let khat: Vec<_> = (0..3)
            .map(|a| DiffOperator::scalar_multiplication(SmoothScalarField::unit_coordinate(a), d))
            .collect();
        assert!(
            check_commuting(&khat, &khat, &SampleConfig::default())
                .unwrap()
                .pass
        );
        // k̂ is a vector operator with respect to orbital rotations
        assert!(
            check_vector_operator(&khat, &orbital(1), &SampleConfig::default())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn scalar_triviality_examples() {
        let cfg = SampleConfig::new(50, 1, 1e-8);
        let zero = [
            SmoothScalarField::zero(),
            SmoothScalarField::zero(),
            SmoothScalarField::zero(),
        ];
        let v = scalar_so3_triviality(&zero, &cfg).unwrap();
        assert!(v.pass);
        assert_eq!(v.so3_samples, 50);

        let khat = [0, 1, 2].map(SmoothScalarField::unit_coordinate);
        let v = scalar_so3_triviality(&khat, &cfg).unwrap();
        assert!(v.pass);
        assert_eq!(v.so3_samples, 0);

        let synthetic = [
            SmoothScalarField::constant(C64::new(1.0, 0.0)),
            SmoothScalarField::constant(C64::new(0.0, 1.0)),
            SmoothScalarField::coordinate(0),
        ];
        let v = scalar_so3_triviality(&synthetic, &cfg).unwrap();
        assert!(v.pass);
        assert_eq!(v.so3_samples, 0);
    }

    #[test]
    fn jacobi_on_orbital_and_multiplication() {
        let d = Domain::lightcone();
        let a = DiffOperator::orbital(0, 1, d);
        let b = DiffOperator::scalar_multiplication(SmoothScalarField::unit_coordinate(2), d);
        let c = DiffOperator::partial(1, 1, d).left_mul(&SmoothScalarField::coordinate(0));
        let pts = sample_points(&d, 50, 5).unwrap();
        assert!(jacobi_residual(&a, &b, &c, &pts).unwrap() < 1e-12);
    }

    #[test]
    fn empty_samples_rejected() {
        assert!(matches!(
            check_so3(&orbital(1), &SampleConfig::new(0, 1, 1e-8)),
            Err(Error::Usage(_))
        ));
    }
}
