//! First-order differential operators on sections of a rank-`r` bundle,
//!
//! ```text
//! A = Σ_a f_a(k) ∂_a ⊗ 1_r + F(k)
//! ```
//!
//! with scalar drift coefficients `f_a` and an `r × r` fiber term `F`. Angular
//! momentum candidates (total, spin, orbital and the parallel/perpendicular
//! splitting) are all values of this type. Two operators are equal when their
//! coefficients agree pointwise, so every identity is checked on coefficients
//! rather than on test sections.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_complex::Complex;
use num_traits::Zero;

use super::field::{norm3, require_order, FiberMat, SmoothMatrixField, SmoothScalarField, C64};
use super::jet::{ccst, cpartial, cvalue, Jet};
use crate::error::{Error, Result};

/// Half-angle of the cone excluded around a chart's singular axis.
pub const POLE_EXCLUSION: f64 = 0.2;

/// Region of momentum space on which an operator is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub min_radius: f64,
    pub max_radius: f64,
    /// Momentum origin removed (lightcone).
    pub punctured: bool,
    /// Cone of half-angle [`POLE_EXCLUSION`] around `+ẑ` removed.
    pub exclude_plus_z: bool,
    /// Cone of half-angle [`POLE_EXCLUSION`] around `−ẑ` removed.
    pub exclude_minus_z: bool,
}

impl Domain {
    /// All of ℝ³ (mass hyperboloid chart).
    pub const fn everywhere() -> Self {
        Domain {
            min_radius: 0.0,
            max_radius: f64::INFINITY,
            punctured: false,
            exclude_plus_z: false,
            exclude_minus_z: false,
        }
    }

    /// ℝ³ without the origin (forward lightcone).
    pub const fn lightcone() -> Self {
        Domain {
            punctured: true,
            ..Self::everywhere()
        }
    }

    pub fn with_radii(mut self, lo: f64, hi: f64) -> Self {
        self.min_radius = lo;
        self.max_radius = hi;
        self
    }

    pub fn intersect(&self, o: &Domain) -> Result<Domain> {
        let d = Domain {
            min_radius: self.min_radius.max(o.min_radius),
            max_radius: self.max_radius.min(o.max_radius),
            punctured: self.punctured || o.punctured,
            exclude_plus_z: self.exclude_plus_z || o.exclude_plus_z,
            exclude_minus_z: self.exclude_minus_z || o.exclude_minus_z,
        };
        if d.min_radius >= d.max_radius {
            return Err(Error::Domain(format!(
                "domains do not overlap: radial shells [{}, {}) and [{}, {})",
                self.min_radius, self.max_radius, o.min_radius, o.max_radius
            )));
        }
        Ok(d)
    }

    pub fn contains(&self, k: [f64; 3]) -> bool {
        let r = norm3(&k);
        if r < self.min_radius || r >= self.max_radius || (self.punctured && r == 0.0) {
            return false;
        }
        if r == 0.0 {
            return !(self.exclude_plus_z || self.exclude_minus_z);
        }
        let cos_theta = (k[2] / r).clamp(-1.0, 1.0);
        let theta = cos_theta.acos();
        !(self.exclude_plus_z && theta < POLE_EXCLUSION
            || self.exclude_minus_z && std::f64::consts::PI - theta < POLE_EXCLUSION)
    }
}

/// Coefficients of an operator at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct OpCoeffs<T> {
    pub drift: [Complex<T>; 3],
    pub fiber: FiberMat<T>,
}

impl<T: super::jet::Real> OpCoeffs<T> {
    pub fn zeros(rank: usize) -> Self {
        OpCoeffs {
            drift: [Complex::zero(); 3],
            fiber: FiberMat::zeros(rank),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        OpCoeffs {
            drift: std::array::from_fn(|a| self.drift[a] + o.drift[a]),
            fiber: self.fiber.add(&o.fiber),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        OpCoeffs {
            drift: std::array::from_fn(|a| self.drift[a] - o.drift[a]),
            fiber: self.fiber.sub(&o.fiber),
        }
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        OpCoeffs {
            drift: self.drift.map(|d| d * z),
            fiber: self.fiber.scale(z),
        }
    }

    pub fn value(&self) -> OpCoeffs<f64> {
        OpCoeffs {
            drift: self.drift.map(cvalue),
            fiber: self.fiber.value(),
        }
    }
}

impl OpCoeffs<f64> {
    /// Euclidean norm of all coefficients, drift and fiber together.
    pub fn norm(&self) -> f64 {
        let d: f64 = self.drift.iter().map(|z| z.norm_sqr()).sum();
        (d + self.fiber.frobenius().powi(2)).sqrt()
    }

    /// Coefficients flattened into one vector: three drift entries, then the
    /// fiber matrix row-major.
    pub fn flatten(&self) -> Vec<C64> {
        let mut v = self.drift.to_vec();
        v.extend_from_slice(self.fiber.entries());
        v
    }
}

type CoeffFn = dyn Fn(&[Jet; 3]) -> OpCoeffs<Jet> + Send + Sync;

#[derive(Clone)]
pub struct DiffOperator {
    rank: usize,
    order: u8,
    domain: Domain,
    coeffs: Arc<CoeffFn>,
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiffOperator")
            .field("rank", &self.rank)
            .field("order", &self.order)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl DiffOperator {
    pub fn new(drift: [SmoothScalarField; 3], fiber: SmoothMatrixField, domain: Domain) -> Self {
        let rank = fiber.rank();
        let order = drift
            .iter()
            .map(|f| f.order())
            .min()
            .unwrap_or(2)
            .min(fiber.order());
        let drift = drift.map(|f| f.raw());
        let fiber = fiber.raw();
        Self::from_fn(rank, order, domain, move |k| OpCoeffs {
            drift: std::array::from_fn(|a| drift[a](k)),
            fiber: fiber(k),
        })
    }

    pub fn from_fn(
        rank: usize,
        order: u8,
        domain: Domain,
        f: impl Fn(&[Jet; 3]) -> OpCoeffs<Jet> + Send + Sync + 'static,
    ) -> Self {
        DiffOperator {
            rank,
            order,
            domain,
            coeffs: Arc::new(f),
        }
    }

    /// Multiplication by a matrix field (no drift).
    pub fn multiplication(fiber: SmoothMatrixField, domain: Domain) -> Self {
        let zero = SmoothScalarField::zero();
        Self::new([zero.clone(), zero.clone(), zero], fiber, domain)
    }

    pub fn scalar_multiplication(field: SmoothScalarField, domain: Domain) -> Self {
        Self::multiplication(SmoothMatrixField::scalar(1, field), domain)
    }

    pub fn zero(rank: usize, domain: Domain) -> Self {
        Self::multiplication(SmoothMatrixField::zero(rank), domain)
    }

    /// `∂_a ⊗ 1_r`.
    pub fn partial(a: usize, rank: usize, domain: Domain) -> Self {
        Self::from_fn(rank, 2, domain, move |_| {
            let mut c = OpCoeffs::zeros(rank);
            c.drift[a] = ccst(C64::new(1.0, 0.0));
            c
        })
    }

    /// Orbital generator `−i(k × ∇)_n ⊗ 1_r`.
    pub fn orbital(n: usize, rank: usize, domain: Domain) -> Self {
        Self::from_fn(rank, 2, domain, move |k| {
            let mut c = OpCoeffs::zeros(rank);
            // (k × ∇)_n = ε_{nbc} k_b ∂_c
            let (b, cc) = ((n + 1) % 3, (n + 2) % 3);
            c.drift[cc] = Complex::new(Jet::zero(), -k[b]);
            c.drift[b] = Complex::new(Jet::zero(), k[cc]);
            c
        })
    }

    /// The same operator with its most recent coefficient evaluation cached.
    ///
    /// Brackets evaluate every operand at the same jet, so operators that
    /// are expensive to evaluate and reused inside composites benefit.
    pub fn memoized(&self) -> DiffOperator {
        let f = Arc::clone(&self.coeffs);
        let last: Mutex<Option<([Jet; 3], OpCoeffs<Jet>)>> = Mutex::new(None);
        DiffOperator::from_fn(self.rank, self.order, self.domain, move |k| {
            if let Ok(guard) = last.lock() {
                if let Some((key, val)) = guard.as_ref() {
                    if key == k {
                        return val.clone();
                    }
                }
            }
            let val = f(k);
            if let Ok(mut guard) = last.lock() {
                *guard = Some((*k, val.clone()));
            }
            val
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of exact derivative orders carried by the coefficients.
    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn eval_jet(&self, k: &[Jet; 3]) -> OpCoeffs<Jet> {
        (self.coeffs)(k)
    }

    /// Coefficient values at `k`, which must lie in the operator's domain.
    pub fn coefficients(&self, k: [f64; 3]) -> Result<OpCoeffs<f64>> {
        if !self.domain.contains(k) {
            return Err(Error::Domain(format!(
                "point {k:?} outside operator domain {:?}",
                self.domain
            )));
        }
        Ok(self.coefficients_unchecked(k))
    }

    pub fn coefficients_unchecked(&self, k: [f64; 3]) -> OpCoeffs<f64> {
        let seed = Jet::seed(k);
        self.eval_jet(&seed).value()
    }

    /// `(Aψ)(k)` for a section given by `rank` scalar components.
    pub fn apply_at(&self, section: &[SmoothScalarField], k: [f64; 3]) -> Result<Vec<C64>> {
        if section.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: section.len(),
            });
        }
        let c = self.coefficients(k)?;
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let grad = section[i].gradient(k)?;
            let mut v: C64 = (0..3).map(|a| c.drift[a] * grad[a]).sum();
            for (j, psi) in section.iter().enumerate() {
                v += c.fiber.get(i, j) * psi.value(k);
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn drift_field(&self, a: usize) -> SmoothScalarField {
        let f = Arc::clone(&self.coeffs);
        SmoothScalarField::new(self.order, move |k| f(k).drift[a])
    }

    pub fn fiber_field(&self) -> SmoothMatrixField {
        let f = Arc::clone(&self.coeffs);
        SmoothMatrixField::new(self.rank, self.order, move |k| f(k).fiber)
    }

    fn binary(
        &self,
        o: &DiffOperator,
        order: u8,
        f: impl Fn(OpCoeffs<Jet>, OpCoeffs<Jet>) -> OpCoeffs<Jet> + Send + Sync + 'static,
    ) -> Result<DiffOperator> {
        if self.rank != o.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: o.rank,
            });
        }
        let domain = self.domain.intersect(&o.domain)?;
        let (a, b) = (Arc::clone(&self.coeffs), Arc::clone(&o.coeffs));
        Ok(DiffOperator::from_fn(self.rank, order, domain, move |k| {
            f(a(k), b(k))
        }))
    }

    pub fn add(&self, o: &DiffOperator) -> Result<DiffOperator> {
        self.binary(o, self.order.min(o.order), |a, b| a.add(&b))
    }

    pub fn sub(&self, o: &DiffOperator) -> Result<DiffOperator> {
        self.binary(o, self.order.min(o.order), |a, b| a.sub(&b))
    }

    pub fn scale(&self, z: C64) -> DiffOperator {
        let f = Arc::clone(&self.coeffs);
        let zj = ccst(z);
        DiffOperator::from_fn(self.rank, self.order, self.domain, move |k| f(k).scale(zj))
    }

    /// Left multiplication `φ ∘ A` by a scalar field.
    pub fn left_mul(&self, phi: &SmoothScalarField) -> DiffOperator {
        let (f, p) = (Arc::clone(&self.coeffs), phi.raw());
        DiffOperator::from_fn(
            self.rank,
            self.order.min(phi.order()),
            self.domain,
            move |k| f(k).scale(p(k)),
        )
    }

    /// Sum of several operators of equal rank.
    pub fn sum<'a>(ops: impl IntoIterator<Item = &'a DiffOperator>) -> Result<DiffOperator> {
        let mut it = ops.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Usage("empty operator sum".into()))?
            .clone();
        it.try_fold(first, |acc, op| acc.add(op))
    }

    /// Operator bracket `[A, B] = AB − BA`.
    ///
    /// Drift: `Σ_a (f_a ∂_a g_b − g_a ∂_a f_b)`.
    /// Fiber: `Σ_a (f_a ∂_a G − g_a ∂_a F) + [F, G]`.
    pub fn commutator(&self, o: &DiffOperator) -> Result<DiffOperator> {
        require_order(self.order.min(o.order), 1)?;
        let order = self.order.min(o.order) - 1;
        self.binary(o, order, |a, b| {
            let mut out = OpCoeffs {
                drift: [Complex::zero(); 3],
                fiber: a.fiber.commutator(&b.fiber),
            };
            for c in 0..3 {
                let (fa, gb) = (a.drift[c], b.drift[c]);
                for d in 0..3 {
                    out.drift[d] =
                        out.drift[d] + fa * cpartial(b.drift[d], c) - gb * cpartial(a.drift[d], c);
                }
                out.fiber = out
                    .fiber
                    .add(&b.fiber.partial(c).scale(fa))
                    .sub(&a.fiber.partial(c).scale(gb));
            }
            out
        })
    }

    /// Conjugation `g A g⁻¹` by an invertible matrix field: the drift is
    /// unchanged and the fiber becomes `g F g⁻¹ + g (f·∇ g⁻¹)`.
    pub fn conjugate(
        &self,
        g: &SmoothMatrixField,
        g_inv: &SmoothMatrixField,
    ) -> Result<DiffOperator> {
        if g.rank() != self.rank || g_inv.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: g.rank(),
            });
        }
        require_order(g_inv.order(), 1)?;
        let order = self.order.min(g.order()).min(g_inv.order() - 1);
        let (f, gf, gi) = (Arc::clone(&self.coeffs), g.raw(), g_inv.raw());
        Ok(DiffOperator::from_fn(
            self.rank,
            order,
            self.domain,
            move |k| {
                let c = f(k);
                let (gm, gim) = (gf(k), gi(k));
                let mut fiber = gm.matmul(&c.fiber).matmul(&gim);
                for a in 0..3 {
                    fiber = fiber.add(&gm.matmul(&gim.partial(a)).scale(c.drift[a]));
                }
                OpCoeffs {
                    drift: c.drift,
                    fiber,
                }
            },
        ))
    }
}
