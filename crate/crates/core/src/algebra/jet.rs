//! Forward-mode differentiation.
//!
//! [`Jet`] is a second-order truncated Taylor expansion in the three momentum
//! components: value, gradient and Hessian. [`Dual`] is a first-order dual
//! number over any [`Real`], used for the one-parameter group derivative
//! `d/dt|_{t=0}` when the coefficient itself must stay a [`Jet`] in `k`.
//!
//! Coefficient formulas are written once, generically over [`Real`], and run
//! unchanged on `f64`, `Jet` and `Dual<Jet>`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

/// Scalar type the generic coefficient formulas are written against.
pub trait Real:
    Copy + Debug + Num + Neg<Output = Self> + AddAssign + SubAssign + MulAssign + Send + Sync + 'static
{
    fn cst(x: f64) -> Self;
    /// Primal (undifferentiated) value.
    fn re(self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
}

/// Second-order jet in three variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub g: [f64; 3],
    /// Symmetric Hessian.
    pub h: [[f64; 3]; 3],
}

impl Jet {
    pub const fn constant(v: f64) -> Self {
        Jet {
            v,
            g: [0.0; 3],
            h: [[0.0; 3]; 3],
        }
    }

    /// The independent variable `index` at value `v`.
    pub fn var(v: f64, index: usize) -> Self {
        let mut g = [0.0; 3];
        g[index] = 1.0;
        Jet {
            v,
            g,
            h: [[0.0; 3]; 3],
        }
    }

    /// Seeds a point of momentum space as three independent variables.
    pub fn seed(k: [f64; 3]) -> [Jet; 3] {
        [Jet::var(k[0], 0), Jet::var(k[1], 1), Jet::var(k[2], 2)]
    }

    /// Partial derivative along `a`. The result is exact to first order only.
    pub fn partial(&self, a: usize) -> Jet {
        Jet {
            v: self.g[a],
            g: self.h[a],
            h: [[0.0; 3]; 3],
        }
    }

    /// Applies a scalar function with derivatives `d1 = f'(v)`, `d2 = f''(v)`.
    fn chain(self, f: f64, d1: f64, d2: f64) -> Jet {
        let mut out = Jet::constant(f);
        for i in 0..3 {
            out.g[i] = d1 * self.g[i];
            for j in 0..3 {
                out.h[i][j] = d1 * self.h[i][j] + d2 * self.g[i] * self.g[j];
            }
        }
        out
    }

    fn recip(self) -> Jet {
        let inv = 1.0 / self.v;
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        self += o;
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        self.v += o.v;
        for i in 0..3 {
            self.g[i] += o.g[i];
            for j in 0..3 {
                self.h[i][j] += o.h[i][j];
            }
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, o: Jet) -> Jet {
        self -= o;
        self
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, o: Jet) {
        self.v -= o.v;
        for i in 0..3 {
            self.g[i] -= o.g[i];
            for j in 0..3 {
                self.h[i][j] -= o.h[i][j];
            }
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::constant(0.0) - self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut out = Jet::constant(self.v * o.v);
        for i in 0..3 {
            out.g[i] = self.v * o.g[i] + o.v * self.g[i];
            for j in 0..3 {
                out.h[i][j] = self.v * o.h[i][j]
                    + o.v * self.h[i][j]
                    + self.g[i] * o.g[j]
                    + o.g[i] * self.g[j];
            }
        }
        out
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, o: Jet) {
        *self = *self * o;
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Rem for Jet {
    type Output = Jet;
    fn rem(self, o: Jet) -> Jet {
        let q = (self.v / o.v).trunc();
        self - o * Jet::constant(q)
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::constant(0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Jet::zero()
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::constant(1.0)
    }
}

impl Num for Jet {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Jet::constant)
    }
}

impl Real for Jet {
    fn cst(x: f64) -> Self {
        Jet::constant(x)
    }
    fn re(self) -> f64 {
        self.v
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let inv = 1.0 / self.v;
        self.chain(self.v.ln(), inv, -inv * inv)
    }
}

/// First-order dual number `re + eps·ε`, `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }

    /// The differentiation variable at value `re`.
    pub fn variable(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual {
            re: self.re + o.re,
            eps: self.eps + o.eps,
        }
    }
}

impl<T: Real> AddAssign for Dual<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual {
            re: self.re - o.re,
            eps: self.eps - o.eps,
        }
    }
}

impl<T: Real> SubAssign for Dual<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            re: -self.re,
            eps: -self.eps,
        }
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            re: self.re * o.re,
            eps: self.re * o.eps + self.eps * o.re,
        }
    }
}

impl<T: Real> MulAssign for Dual<T> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = T::one() / o.re;
        Dual {
            re: self.re * inv,
            eps: (self.eps * o.re - self.re * o.eps) * inv * inv,
        }
    }
}

impl<T: Real> Rem for Dual<T> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        let q = T::cst((self.re.re() / o.re.re()).trunc());
        self - o * Dual::constant(q)
    }
}

impl<T: Real> Zero for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<T: Real> One for Dual<T> {
    fn one() -> Self {
        Dual::constant(T::one())
    }
}

impl<T: Real> Num for Dual<T> {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(|x| Dual::constant(T::cst(x)))
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(x: f64) -> Self {
        Dual::constant(T::cst(x))
    }
    fn re(self) -> f64 {
        self.re.re()
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual {
            re: s,
            eps: self.eps / (T::cst(2.0) * s),
        }
    }
    fn sin(self) -> Self {
        Dual {
            re: self.re.sin(),
            eps: self.eps * self.re.cos(),
        }
    }
    fn cos(self) -> Self {
        Dual {
            re: self.re.cos(),
            eps: -(self.eps * self.re.sin()),
        }
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual {
            re: e,
            eps: self.eps * e,
        }
    }
    fn ln(self) -> Self {
        Dual {
            re: self.re.ln(),
            eps: self.eps / self.re,
        }
    }
}

/// Complex constant lifted into `Complex<T>`.
pub fn ccst<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::cst(z.re), T::cst(z.im))
}

/// Primal value of a complex jet.
pub fn cvalue<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.re(), z.im.re())
}

/// `∂_a` of a complex jet.
pub fn cpartial(z: Complex<Jet>, a: usize) -> Complex<Jet> {
    Complex::new(z.re.partial(a), z.im.partial(a))
}

/// Gradient of the primal value of a complex jet.
pub fn cgrad(z: Complex<Jet>) -> [Complex<f64>; 3] {
    std::array::from_fn(|a| Complex::new(z.re.g[a], z.im.g[a]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn product_rule_and_hessian() {
        let k = Jet::seed([0.3, -1.2, 0.7]);
        // f = x² y + z / x
        let f = k[0] * k[0] * k[1] + k[2] / k[0];
        let (x, y, z) = (0.3, -1.2, 0.7);
        assert!(close(f.v, x * x * y + z / x, 1e-14));
        assert!(close(f.g[0], 2.0 * x * y - z / (x * x), 1e-14));
        assert!(close(f.g[1], x * x, 1e-14));
        assert!(close(f.g[2], 1.0 / x, 1e-14));
        assert!(close(f.h[0][0], 2.0 * y + 2.0 * z / (x * x * x), 1e-13));
        assert!(close(f.h[0][1], 2.0 * x, 1e-14));
        assert!(close(f.h[0][2], -1.0 / (x * x), 1e-14));
        assert!(close(f.h[2][2], 0.0, 1e-14));
    }

    #[test]
    fn unary_functions_match_closed_forms() {
        let x = Jet::var(0.8, 0);
        let s = x.sqrt();
        assert!(close(s.g[0], 0.5 / 0.8f64.sqrt(), 1e-14));
        assert!(close(s.h[0][0], -0.25 * 0.8f64.powf(-1.5), 1e-14));
        let c = x.cos();
        assert!(close(c.h[0][0], -(0.8f64.cos()), 1e-14));
        let l = x.ln();
        assert!(close(l.h[0][0], -1.0 / 0.64, 1e-14));
    }

    #[test]
    fn dual_over_jet_mixed_derivative() {
        // g(t, x) = sin(t x0) x1 ; ∂t g at t=0 = x0 x1, its gradient (x1, x0, 0)
        let k = Jet::seed([0.4, 2.0, 0.0]);
        let t = Dual::variable(Jet::zero());
        let g = (t * Dual::constant(k[0])).sin() * Dual::constant(k[1]);
        assert!(close(g.eps.v, 0.8, 1e-14));
        assert!(close(g.eps.g[0], 2.0, 1e-14));
        assert!(close(g.eps.g[1], 0.4, 1e-14));
        assert!(close(g.eps.h[0][1], 1.0, 1e-14));
    }
}
