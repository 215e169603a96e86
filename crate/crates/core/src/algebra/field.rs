//! Smooth coefficient fields over a momentum chart.
//!
//! A field is a closure evaluated on seeded [`Jet`]s, so every evaluation
//! returns the value together with its first and second partials. The
//! `order` tag records how many of those derivative orders are exact: fields
//! built from closed-form formulas carry order 2; a commutator consumes one.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::jet::{ccst, cpartial, cvalue, Jet, Real};
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Dense `rank × rank` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberMat<T> {
    rank: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> FiberMat<T> {
    pub fn zeros(rank: usize) -> Self {
        FiberMat {
            rank,
            data: vec![Complex::zero(); rank * rank],
        }
    }

    pub fn identity(rank: usize) -> Self {
        let mut m = Self::zeros(rank);
        for i in 0..rank {
            m.data[i * rank + i] = Complex::one();
        }
        m
    }

    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                data.push(f(i, j));
            }
        }
        FiberMat { rank, data }
    }

    /// 1×1 matrix holding `z`.
    pub fn scalar(z: Complex<T>) -> Self {
        FiberMat {
            rank: 1,
            data: vec![z],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.rank + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex<T>) {
        self.data[i * self.rank + j] = z;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn map<U: Real>(&self, f: impl Fn(Complex<T>) -> Complex<U>) -> FiberMat<U> {
        FiberMat {
            rank: self.rank,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn zip_with(&self, o: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        debug_assert_eq!(self.rank, o.rank);
        FiberMat {
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        self.map(|a| a * z)
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let r = self.rank;
        debug_assert_eq!(r, o.rank);
        Self::from_fn(r, |i, j| {
            let mut acc = Complex::zero();
            for l in 0..r {
                acc = acc + self.data[i * r + l] * o.data[l * r + j];
            }
            acc
        })
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.matmul(o).sub(&o.matmul(self))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.rank, |i, j| self.get(j, i).conj())
    }

    pub fn value(&self) -> FiberMat<f64> {
        FiberMat {
            rank: self.rank,
            data: self.data.iter().map(|&z| cvalue(z)).collect(),
        }
    }
}

impl FiberMat<f64> {
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn lift<T: Real>(&self) -> FiberMat<T> {
        self.map(ccst)
    }
}

impl FiberMat<Jet> {
    pub fn partial(&self, a: usize) -> Self {
        self.map(|z| cpartial(z, a))
    }
}

type ScalarFn = dyn Fn(&[Jet; 3]) -> Complex<Jet> + Send + Sync;
type MatrixFn = dyn Fn(&[Jet; 3]) -> FiberMat<Jet> + Send + Sync;

/// Complex scalar coefficient function of the momentum.
#[derive(Clone)]
pub struct SmoothScalarField {
    order: u8,
    f: Arc<ScalarFn>,
}

impl fmt::Debug for SmoothScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothScalarField")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl SmoothScalarField {
    pub fn new(order: u8, f: impl Fn(&[Jet; 3]) -> Complex<Jet> + Send + Sync + 'static) -> Self {
        SmoothScalarField {
            order,
            f: Arc::new(f),
        }
    }

    /// Field given by a closed-form expression, exact to second order.
    pub fn analytic(f: impl Fn(&[Jet; 3]) -> Complex<Jet> + Send + Sync + 'static) -> Self {
        Self::new(2, f)
    }

    pub fn constant(z: C64) -> Self {
        Self::analytic(move |_| ccst(z))
    }

    pub fn zero() -> Self {
        Self::constant(C64::zero())
    }

    /// `k_a`.
    pub fn coordinate(a: usize) -> Self {
        Self::analytic(move |k| Complex::new(k[a], Jet::zero()))
    }

    /// `k_a / |k|`.
    pub fn unit_coordinate(a: usize) -> Self {
        Self::analytic(move |k| Complex::new(k[a] / norm3(k), Jet::zero()))
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn eval_jet(&self, k: &[Jet; 3]) -> Complex<Jet> {
        (self.f)(k)
    }

    pub fn value(&self, k: [f64; 3]) -> C64 {
        cvalue(self.eval_jet(&Jet::seed(k)))
    }

    /// Forward-mode gradient at `k`.
    pub fn gradient(&self, k: [f64; 3]) -> Result<[C64; 3]> {
        require_order(self.order, 1)?;
        let z = self.eval_jet(&Jet::seed(k));
        Ok(std::array::from_fn(|a| Complex::new(z.re.g[a], z.im.g[a])))
    }

    /// Largest mixed absolute/relative deviation between the forward-mode
    /// gradient and a central difference of the values with spacing `step`.
    pub fn derivative_deviation(&self, k: [f64; 3], step: f64) -> Result<f64> {
        let grad = self.gradient(k)?;
        let mut worst = 0.0f64;
        for (a, g) in grad.iter().enumerate() {
            let (mut kp, mut km) = (k, k);
            kp[a] += step;
            km[a] -= step;
            let fd = (self.value(kp) - self.value(km)) / (2.0 * step);
            worst = worst.max((fd - g).norm() / g.norm().max(1.0));
        }
        Ok(worst)
    }

    pub(crate) fn raw(&self) -> Arc<ScalarFn> {
        Arc::clone(&self.f)
    }
}

/// `rank × rank` complex matrix-valued coefficient function.
#[derive(Clone)]
pub struct SmoothMatrixField {
    rank: usize,
    order: u8,
    f: Arc<MatrixFn>,
}

impl fmt::Debug for SmoothMatrixField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothMatrixField")
            .field("rank", &self.rank)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl SmoothMatrixField {
    pub fn new(
        rank: usize,
        order: u8,
        f: impl Fn(&[Jet; 3]) -> FiberMat<Jet> + Send + Sync + 'static,
    ) -> Self {
        SmoothMatrixField {
            rank,
            order,
            f: Arc::new(f),
        }
    }

    pub fn analytic(
        rank: usize,
        f: impl Fn(&[Jet; 3]) -> FiberMat<Jet> + Send + Sync + 'static,
    ) -> Self {
        Self::new(rank, 2, f)
    }

    pub fn constant(m: FiberMat<f64>) -> Self {
        let rank = m.rank();
        let lifted: FiberMat<Jet> = m.lift();
        Self::analytic(rank, move |_| lifted.clone())
    }

    pub fn zero(rank: usize) -> Self {
        Self::constant(FiberMat::zeros(rank))
    }

    /// Scalar field times the identity.
    pub fn scalar(rank: usize, s: SmoothScalarField) -> Self {
        let order = s.order();
        let f = s.raw();
        Self::new(rank, order, move |k| FiberMat::identity(rank).scale(f(k)))
    }

    /// Scalar field of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> SmoothScalarField {
        let f = Arc::clone(&self.f);
        SmoothScalarField::new(self.order, move |k| f(k).get(i, j))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn eval_jet(&self, k: &[Jet; 3]) -> FiberMat<Jet> {
        (self.f)(k)
    }

    pub fn value(&self, k: [f64; 3]) -> FiberMat<f64> {
        self.eval_jet(&Jet::seed(k)).value()
    }

    /// Matrix-valued counterpart of [`SmoothScalarField::derivative_deviation`].
    pub fn derivative_deviation(&self, k: [f64; 3], step: f64) -> Result<f64> {
        require_order(self.order, 1)?;
        let m = self.eval_jet(&Jet::seed(k));
        let mut worst = 0.0f64;
        for a in 0..3 {
            let (mut kp, mut km) = (k, k);
            kp[a] += step;
            km[a] -= step;
            let (vp, vm) = (self.value(kp), self.value(km));
            for (idx, z) in m.entries().iter().enumerate() {
                let g = Complex::new(z.re.g[a], z.im.g[a]);
                let fd = (vp.entries()[idx] - vm.entries()[idx]) / (2.0 * step);
                worst = worst.max((fd - g).norm() / g.norm().max(1.0));
            }
        }
        Ok(worst)
    }

    /// Deviation between the forward-mode Hessian and a central difference
    /// of the forward-mode gradient.
    pub fn hessian_deviation(&self, k: [f64; 3], step: f64) -> Result<f64> {
        require_order(self.order, 2)?;
        let m = self.eval_jet(&Jet::seed(k));
        let mut worst = 0.0f64;
        for a in 0..3 {
            let (mut kp, mut km) = (k, k);
            kp[a] += step;
            km[a] -= step;
            let (mp, mm) = (self.eval_jet(&Jet::seed(kp)), self.eval_jet(&Jet::seed(km)));
            for idx in 0..m.entries().len() {
                for b in 0..3 {
                    let z = m.entries()[idx];
                    let h = Complex::new(z.re.h[a][b], z.im.h[a][b]);
                    let (zp, zm) = (mp.entries()[idx], mm.entries()[idx]);
                    let fd = (Complex::new(zp.re.g[b], zp.im.g[b])
                        - Complex::new(zm.re.g[b], zm.im.g[b]))
                        / (2.0 * step);
                    worst = worst.max((fd - h).norm() / h.norm().max(1.0));
                }
            }
        }
        Ok(worst)
    }

    pub(crate) fn raw(&self) -> Arc<MatrixFn> {
        Arc::clone(&self.f)
    }
}

pub(crate) fn require_order(have: u8, need: u8) -> Result<()> {
    if have < need {
        Err(Error::InsufficientOrder { have, need })
    } else {
        Ok(())
    }
}

pub fn norm3<T: Real>(k: &[T; 3]) -> T {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
}

/// Levi-Civita symbol.
pub fn levi_civita(m: usize, n: usize, p: usize) -> f64 {
    match (m, n, p) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}
