//! Least-squares structure constants: does a set of operators close into a
//! Lie algebra `[X_m, X_n] = i c_{mnp} X_p`?

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::checks::common_domain;
use super::field::C64;
use super::operator::DiffOperator;
use super::sampling::{sample_points, SampleConfig};
use crate::error::{Error, Result};

/// Residual below which a fit certifies closure.
pub const CLOSURE_TOLERANCE: f64 = 1e-8;
/// Residual above which a fit certifies non-closure.
pub const FAILURE_FLOOR: f64 = 1e-1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureFit {
    /// `structure_constants[m][n][p] = c_{mnp}`, antisymmetric in `(m, n)`.
    pub structure_constants: Vec<Vec<Vec<C64>>>,
    /// Worst pair misfit `‖[X_m,X_n] − i c_{mnp} X_p‖`, relative to the
    /// largest stacked operator norm.
    pub residual: f64,
    /// Misfit of each pair, same normalization.
    pub pair_residuals: Vec<Vec<f64>>,
    pub samples_used: usize,
}

/// Verdict of a two-sided closure certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Closure {
    Closes,
    DoesNotClose,
    /// Residual inside the gap `[CLOSURE_TOLERANCE, FAILURE_FLOOR]`.
    Inconclusive,
}

impl ClosureFit {
    pub fn verdict(&self) -> Closure {
        if self.residual < CLOSURE_TOLERANCE {
            Closure::Closes
        } else if self.residual > FAILURE_FLOOR {
            Closure::DoesNotClose
        } else {
            Closure::Inconclusive
        }
    }

    pub fn max_abs_constant(&self) -> f64 {
        self.structure_constants
            .iter()
            .flatten()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `max |c_{mnp} − target_{mnp}|`.
    pub fn deviation_from(&self, target: impl Fn(usize, usize, usize) -> f64) -> f64 {
        let n = self.structure_constants.len();
        let mut worst: f64 = 0.0;
        for m in 0..n {
            for q in 0..n {
                for p in 0..n {
                    worst = worst.max((self.structure_constants[m][q][p] - target(m, q, p)).norm());
                }
            }
        }
        worst
    }
}

pub fn fit_structure_constants(ops: &[DiffOperator], cfg: &SampleConfig) -> Result<ClosureFit> {
    let n = ops.len();
    if n < 2 {
        return Err(Error::Usage(format!(
            "closure fit needs at least two operators, got {n}"
        )));
    }
    let (_, domain) = common_domain(ops)?;
    let points = sample_points(&domain, cfg.samples, cfg.seed)?;

    let stack = |op: &DiffOperator| -> Vec<C64> {
        points
            .iter()
            .flat_map(|k| op.coefficients_unchecked(*k).flatten())
            .collect()
    };
    let columns: Vec<Vec<C64>> = ops.iter().map(stack).collect();
    let rows = columns[0].len();
    let basis = DMatrix::from_fn(rows, n, |r, c| columns[c][r]);
    let scale = columns
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Degenerate(
            "all operators vanish at the sample points".into(),
        ));
    }
    let svd = basis.clone().svd(true, true);
    let eps = 1e-12 * svd.singular_values.max();

    let mut c = vec![vec![vec![C64::new(0.0, 0.0); n]; n]; n];
    let mut pair_residuals = vec![vec![0.0; n]; n];
    let mut residual: f64 = 0.0;
    for m in 0..n {
        for q in (m + 1)..n {
            let bracket = ops[m].commutator(&ops[q])?;
            let y = DVector::from_vec(stack(&bracket));
            // y ≈ B z with z = i c
            let z = svd
                .solve(&y, eps)
                .map_err(|e| Error::Degenerate(e.to_string()))?;
            let misfit = (&y - &basis * &z).norm() / scale;
            for p in 0..n {
                let cp = z[p] * C64::new(0.0, -1.0);
                c[m][q][p] = cp;
                c[q][m][p] = -cp;
            }
            pair_residuals[m][q] = misfit;
            pair_residuals[q][m] = misfit;
            residual = residual.max(misfit);
        }
    }
    Ok(ClosureFit {
        structure_constants: c,
        residual,
        pair_residuals,
        samples_used: points.len(),
    })
}
