//! Polarization frames: smooth orthonormal vectors in an ambient complex
//! space, one list per chart.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::field::{FiberMat, C64};
use crate::algebra::jet::Real;
use crate::algebra::operator::Domain;
use crate::error::{Error, Result};
use crate::minkowski::{mat3_apply, minimal_rotation_matrix, Rotation};

/// Local trivialization of a helicity bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartId {
    /// Smooth away from `k̂ = −ẑ`.
    North,
    /// Smooth away from `k̂ = +ẑ`.
    South,
}

impl ChartId {
    pub fn domain(self) -> Domain {
        match self {
            ChartId::North => Domain {
                exclude_minus_z: true,
                ..Domain::lightcone()
            },
            ChartId::South => Domain {
                exclude_plus_z: true,
                ..Domain::lightcone()
            },
        }
    }

    pub fn other(self) -> ChartId {
        match self {
            ChartId::North => ChartId::South,
            ChartId::South => ChartId::North,
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartId::North => "north",
            ChartId::South => "south",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FrameKind {
    /// `e_σ` in `C³` (|h| = 1) or `e_σ ⊗ e_σ` in `C⁹` (|h| = 2).
    Helicity(i32),
    /// Constant unit vector of `C¹`, helicity 0.
    Trivial,
    /// Constant standard basis of `Cⁿ`.
    Ambient(usize),
    /// Block-diagonal direct sum.
    DirectSum(Vec<FiberFrame>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberFrame {
    kind: FrameKind,
    chart: ChartId,
}

/// Frame of the helicity-`h` line bundle on `chart`.
pub fn helicity_frame(h: i32, chart: ChartId) -> Result<FiberFrame> {
    match h.abs() {
        0 => Err(Error::Domain(
            "helicity 0 is the trivial bundle; use trivial_frame".into(),
        )),
        1 | 2 => Ok(FiberFrame {
            kind: FrameKind::Helicity(h),
            chart,
        }),
        _ => Err(Error::Unsupported(format!(
            "helicity frames are implemented for |h| ≤ 2, got {h}"
        ))),
    }
}

pub fn trivial_frame() -> FiberFrame {
    FiberFrame {
        kind: FrameKind::Trivial,
        chart: ChartId::North,
    }
}

/// Frame of the trivial bundle with fiber `Cⁿ`.
pub fn ambient_frame(n: usize) -> Result<FiberFrame> {
    if n == 0 {
        return Err(Error::Domain("ambient dimension must be positive".into()));
    }
    Ok(FiberFrame {
        kind: FrameKind::Ambient(n),
        chart: ChartId::North,
    })
}

/// Line-bundle frame for any integer helicity in range (0 allowed).
pub fn line_frame(h: i32, chart: ChartId) -> Result<FiberFrame> {
    if h == 0 {
        Ok(trivial_frame())
    } else {
        helicity_frame(h, chart)
    }
}

pub fn direct_sum(frames: Vec<FiberFrame>) -> Result<FiberFrame> {
    let chart = frames
        .first()
        .ok_or_else(|| Error::Usage("empty direct sum".into()))?
        .chart;
    Ok(FiberFrame {
        kind: FrameKind::DirectSum(frames),
        chart,
    })
}

pub(crate) fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.conj() * *y;
    }
    acc
}

impl FiberFrame {
    pub fn kind(&self) -> &FrameKind {
        &self.kind
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn with_chart(&self, chart: ChartId) -> FiberFrame {
        let kind = match &self.kind {
            FrameKind::DirectSum(fs) => {
                FrameKind::DirectSum(fs.iter().map(|f| f.with_chart(chart)).collect())
            }
            k => k.clone(),
        };
        FiberFrame { kind, chart }
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            FrameKind::Helicity(_) | FrameKind::Trivial => 1,
            FrameKind::Ambient(n) => *n,
            FrameKind::DirectSum(fs) => fs.iter().map(|f| f.rank()).sum(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.kind {
            FrameKind::Helicity(h) if h.abs() == 1 => 3,
            FrameKind::Helicity(_) => 9,
            FrameKind::Trivial => 1,
            FrameKind::Ambient(n) => *n,
            FrameKind::DirectSum(fs) => fs.iter().map(|f| f.ambient_dim()).sum(),
        }
    }

    /// Helicity label of a line bundle; sum of labels for a direct sum of lines.
    pub fn helicity(&self) -> Option<i32> {
        match &self.kind {
            FrameKind::Helicity(h) => Some(*h),
            FrameKind::Trivial => Some(0),
            FrameKind::Ambient(_) => None,
            FrameKind::DirectSum(_) => None,
        }
    }

    /// Points where the frame is smooth.
    pub fn domain(&self) -> Domain {
        match &self.kind {
            FrameKind::Helicity(_) => self.chart.domain(),
            FrameKind::DirectSum(fs)
                if fs.iter().any(|f| matches!(f.kind, FrameKind::Helicity(_))) =>
            {
                self.chart.domain()
            }
            _ => Domain::lightcone(),
        }
    }

    /// Frame vectors at `k` in ambient coordinates.
    pub fn vectors<T: Real>(&self, k: &[T; 3]) -> Vec<Vec<Complex<T>>> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        match &self.kind {
            FrameKind::Trivial => vec![vec![one]],
            FrameKind::Ambient(n) => (0..*n)
                .map(|j| (0..*n).map(|i| if i == j { one } else { zero }).collect())
                .collect(),
            FrameKind::Helicity(h) => {
                let e = circular(h.signum(), self.chart, k);
                if h.abs() == 1 {
                    vec![e.to_vec()]
                } else {
                    vec![(0..9).map(|i| e[i / 3] * e[i % 3]).collect()]
                }
            }
            FrameKind::DirectSum(fs) => {
                let n = self.ambient_dim();
                let mut out = Vec::with_capacity(self.rank());
                let mut offset = 0;
                for f in fs {
                    for v in f.vectors(k) {
                        let mut w = vec![zero; n];
                        w[offset..offset + v.len()].copy_from_slice(&v);
                        out.push(w);
                    }
                    offset += f.ambient_dim();
                }
                out
            }
        }
    }

    pub fn vectors_at(&self, k: [f64; 3]) -> Vec<Vec<C64>> {
        self.vectors(&k)
    }

    /// Natural rotation action `D(R)` on the ambient space: the defining
    /// representation on `C³`, its tensor square on `C⁹`, trivial on constant
    /// frames.
    pub fn rotate_vector<T: Real>(&self, r: &[[T; 3]; 3], v: &[Complex<T>]) -> Vec<Complex<T>> {
        let rc = |i: usize, j: usize| Complex::new(r[i][j], T::zero());
        match &self.kind {
            FrameKind::Helicity(h) if h.abs() == 1 => (0..3)
                .map(|i| {
                    (0..3).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                        acc + rc(i, j) * v[j]
                    })
                })
                .collect(),
            FrameKind::Helicity(_) => (0..9)
                .map(|ij| {
                    let (i, j) = (ij / 3, ij % 3);
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for a in 0..3 {
                        for b in 0..3 {
                            acc = acc + rc(i, a) * rc(j, b) * v[3 * a + b];
                        }
                    }
                    acc
                })
                .collect(),
            FrameKind::Trivial | FrameKind::Ambient(_) => v.to_vec(),
            FrameKind::DirectSum(fs) => {
                let mut out = Vec::with_capacity(v.len());
                let mut offset = 0;
                for f in fs {
                    let d = f.ambient_dim();
                    out.extend(f.rotate_vector(r, &v[offset..offset + d]));
                    offset += d;
                }
                out
            }
        }
    }

    /// Largest `|⟨e_i, e_j⟩ − δ_ij|` at `k`.
    pub fn orthonormality_defect(&self, k: [f64; 3]) -> f64 {
        let e = self.vectors_at(k);
        let mut worst: f64 = 0.0;
        for (i, a) in e.iter().enumerate() {
            for (j, b) in e.iter().enumerate() {
                let d = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(a, b) - d).norm());
            }
        }
        worst
    }

    /// Frame-comparison matrix `⟨e_i(k), D(R) e_j(R⁻¹k)⟩`.
    pub fn comparison_matrix(&self, r: &Rotation, k: [f64; 3]) -> Result<FiberMat<f64>> {
        let d = self.domain();
        let back = r.inverse().apply(k);
        if !d.contains(k) || !d.contains(back) {
            return Err(Error::Domain(format!(
                "{k:?} or its preimage {back:?} lies outside the {} chart",
                self.chart
            )));
        }
        let rows = r.rows();
        let ek = self.vectors(&k);
        let eb: Vec<_> = self
            .vectors(&back)
            .iter()
            .map(|v| self.rotate_vector(&rows, v))
            .collect();
        Ok(FiberMat::from_fn(self.rank(), |i, j| inner(&ek[i], &eb[j])))
    }
}

/// `R_min(±ẑ → k̂)(x̂ ± iσŷ)/√2`, sign choices per chart.
fn circular<T: Real>(sigma: i32, chart: ChartId, k: &[T; 3]) -> [Complex<T>; 3] {
    let r = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    let khat = [k[0] / r, k[1] / r, k[2] / r];
    let (pole, s) = match chart {
        ChartId::North => (T::one(), T::cst(sigma as f64)),
        ChartId::South => (-T::one(), T::cst(-sigma as f64)),
    };
    let rot = minimal_rotation_matrix([T::zero(), T::zero(), pole], khat);
    let c = T::cst(std::f64::consts::FRAC_1_SQRT_2);
    let re = mat3_apply(&rot, [c, T::zero(), T::zero()]);
    let im = mat3_apply(&rot, [T::zero(), s * c, T::zero()]);
    std::array::from_fn(|i| Complex::new(re[i], im[i]))
}
