//! Seeded sample points for coefficient comparisons.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::operator::Domain;
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 42;
/// Radial shell sampled inside every domain.
pub const SAMPLE_RADII: (f64, f64) = (0.5, 2.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Pass threshold applied to the normalized residual.
    pub tolerance: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tolerance: super::CLOSURE_TOLERANCE,
        }
    }
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64, tolerance: f64) -> Self {
        SampleConfig {
            samples,
            seed,
            tolerance,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on the unit sphere.
pub fn random_direction(rng: &mut impl Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    [rho * phi.cos(), rho * phi.sin(), z]
}

/// Draws `count` points of `domain`: radius log-uniform in the sampling shell
/// (clipped to the domain), direction uniform outside any excluded cone.
pub fn sample_points(domain: &Domain, count: usize, seed: u64) -> Result<Vec<[f64; 3]>> {
    if count == 0 {
        return Err(Error::Usage("sample set is empty".into()));
    }
    let lo = SAMPLE_RADII.0.max(domain.min_radius);
    let hi = SAMPLE_RADII.1.min(domain.max_radius);
    let (lo, hi) = if lo < hi {
        (lo, hi)
    } else {
        (domain.min_radius.max(1e-3), domain.max_radius)
    };
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::Domain(format!(
            "cannot sample radial shell [{lo}, {hi})"
        )));
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count {
            return Err(Error::Domain(
                "rejection sampling failed to hit the domain".into(),
            ));
        }
        let r = if hi.is_finite() {
            (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
        } else {
            lo * (1.0 + rng.random::<f64>())
        };
        let n = random_direction(&mut rng);
        let k = [r * n[0], r * n[1], r * n[2]];
        if domain.contains(k) {
            out.push(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::norm3;

    #[test]
    fn sampling_is_deterministic_and_respects_domain() {
        let d = Domain {
            exclude_minus_z: true,
            ..Domain::lightcone()
        };
        let a = sample_points(&d, 200, 9).unwrap();
        let b = sample_points(&d, 200, 9).unwrap();
        assert_eq!(a, b);
        for k in &a {
            let r = norm3(k);
            assert!((0.5..2.0).contains(&r));
            assert!(d.contains(*k));
        }
    }

    #[test]
    fn empty_sample_set_is_a_usage_error() {
        assert!(matches!(
            sample_points(&Domain::everywhere(), 0, 1),
            Err(Error::Usage(_))
        ));
    }
}
