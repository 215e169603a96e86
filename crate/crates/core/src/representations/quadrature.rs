//! Product quadrature on a fixed-radius momentum sphere and the section
//! inner product with the invariant measure `d³k/|k|`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::frame::FiberFrame;
use crate::algebra::field::C64;
use crate::error::{Error, Result};
use crate::minkowski::Rotation;

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for l in 2..=n {
                let p2 = ((2 * l - 1) as f64 * z * p1 - (l - 1) as f64 * p0) / l as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Nodes `k` on the sphere `|k| = radius` with weights of `|k|⁻¹d³k`
/// restricted to the slice, i.e. `radius · dΩ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereQuadrature {
    pub radius: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl SphereQuadrature {
    pub fn new(radius: f64, n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 || !(radius > 0.0) {
            return Err(Error::Usage(
                "quadrature needs positive radius and node counts".into(),
            ));
        }
        let (x, w) = gauss_legendre(n_theta);
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (ct, wt) in x.iter().zip(&w) {
            let st = (1.0 - ct * ct).sqrt();
            for j in 0..n_phi {
                // half-step offset keeps nodes off the coordinate planes
                let phi = TAU * (j as f64 + 0.5) / n_phi as f64;
                nodes.push([
                    radius * st * phi.cos(),
                    radius * st * phi.sin(),
                    radius * ct,
                ]);
                weights.push(radius * wt * TAU / n_phi as f64);
            }
        }
        Ok(SphereQuadrature {
            radius,
            n_theta,
            n_phi,
            nodes,
            weights,
        })
    }

    fn same_mesh(&self, o: &SphereQuadrature) -> bool {
        self.radius == o.radius && self.n_theta == o.n_theta && self.n_phi == o.n_phi
    }
}

/// Section values at the nodes of a quadrature, in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledSection {
    pub quadrature: SphereQuadrature,
    pub values: Vec<Vec<C64>>,
}

pub fn sample_section(q: &SphereQuadrature, f: impl Fn([f64; 3]) -> Vec<C64>) -> SampledSection {
    SampledSection {
        quadrature: q.clone(),
        values: q.nodes.iter().map(|k| f(*k)).collect(),
    }
}

pub fn section_inner_product(a: &SampledSection, b: &SampledSection) -> Result<C64> {
    if !a.quadrature.same_mesh(&b.quadrature) || a.values.len() != b.values.len() {
        return Err(Error::Usage(
            "sections are sampled on different quadrature meshes".into(),
        ));
    }
    let mut acc = C64::new(0.0, 0.0);
    for ((u, v), w) in a.values.iter().zip(&b.values).zip(&a.quadrature.weights) {
        if u.len() != v.len() {
            return Err(Error::Usage(
                "sections have different fiber dimensions".into(),
            ));
        }
        let ip: C64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
        acc += ip * *w;
    }
    Ok(acc)
}

/// Orthogonal projection of an ambient field onto the frame's fibers.
pub fn project_to_frame(frame: &FiberFrame, k: [f64; 3], u: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); u.len()];
    for e in frame.vectors_at(k) {
        let c: C64 = e.iter().zip(u).map(|(x, y)| x.conj() * y).sum();
        for (o, x) in out.iter_mut().zip(&e) {
            *o += c * x;
        }
    }
    out
}

/// Induced action `(Σ̃_R ψ)(k) = D(R) ψ(R⁻¹k)` on a section given as a function.
pub fn rotated_section<'a>(
    frame: &'a FiberFrame,
    r: &Rotation,
    psi: impl Fn([f64; 3]) -> Vec<C64> + 'a,
) -> impl Fn([f64; 3]) -> Vec<C64> + 'a {
    let rows = r.rows();
    let inv = r.inverse();
    move |k| frame.rotate_vector(&rows, &psi(inv.apply(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::frame::{helicity_frame, ChartId};

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        for p in 0..20 {
            let exact = if p % 2 == 1 {
                0.0
            } else {
                2.0 / (p as f64 + 1.0)
            };
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
            assert!((approx - exact).abs() < 1e-14, "degree {p}");
        }
    }

    #[test]
    fn constant_section_has_norm_four_pi() {
        let q = SphereQuadrature::new(1.0, 8, 16).unwrap();
        let s = sample_section(&q, |_| vec![C64::new(1.0, 0.0)]);
        let n = section_inner_product(&s, &s).unwrap();
        assert!((n.re - 4.0 * PI).abs() < 1e-12 && n.im.abs() < 1e-15);
        let zero = sample_section(&q, |_| vec![C64::new(0.0, 0.0)]);
        assert_eq!(
            section_inner_product(&zero, &zero).unwrap(),
            C64::new(0.0, 0.0)
        );
        let other = sample_section(&SphereQuadrature::new(1.0, 9, 16).unwrap(), |_| {
            vec![C64::new(1.0, 0.0)]
        });
        assert!(section_inner_product(&s, &other).is_err());
    }

    #[test]
    fn rotations_are_unitary() {
        let f = helicity_frame(1, ChartId::North).unwrap();
        let q = SphereQuadrature::new(1.3, 24, 48).unwrap();
        let u1 = |k: [f64; 3]| {
            vec![
                C64::new(1.0 + k[0], k[1]),
                C64::new(k[2] * k[0], 0.5),
                C64::new(0.0, k[1] * k[1]),
            ]
        };
        let u2 = |k: [f64; 3]| {
            vec![
                C64::new(k[2], 0.0),
                C64::new(1.0, -k[0]),
                C64::new(k[1], k[2]),
            ]
        };
        let psi1 = |k: [f64; 3]| project_to_frame(&f, k, &u1(k));
        let psi2 = |k: [f64; 3]| project_to_frame(&f, k, &u2(k));
        let r = Rotation::from_axis_angle([0.3, 1.0, -0.2], 0.9).unwrap();
        let a =
            section_inner_product(&sample_section(&q, psi1), &sample_section(&q, psi2)).unwrap();
        let b = section_inner_product(
            &sample_section(&q, rotated_section(&f, &r, psi1)),
            &sample_section(&q, rotated_section(&f, &r, psi2)),
        )
        .unwrap();
        assert!((a - b).norm() < 1e-8);
        assert!(a.norm() > 0.1);
    }
}
