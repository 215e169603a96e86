//! Minkowski space with signature (−,+,+,+), proper orthochronous Lorentz
//! transforms, standard boosts and little-group extraction.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::algebra::jet::Real;
use crate::error::{Error, Result};

/// Tolerance for accepting a matrix as Lorentz or orthogonal.
pub const GROUP_TOLERANCE: f64 = 1e-10;
/// Tolerance for "W fixes the standard momentum".
pub const FIX_TOLERANCE: f64 = 1e-10;

/// Reference null momentum of the massless standard boost.
pub const REFERENCE_NULL: FourVector = FourVector {
    t: 1.0,
    x: 0.0,
    y: 0.0,
    z: 1.0,
};

fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    pub fn norm2(&self) -> f64 {
        -self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        FourVector {
            t: v[0],
            x: v[1],
            y: v[2],
            z: v[3],
        }
    }

    pub fn distance(&self, o: &FourVector) -> f64 {
        (self.to_vector() - o.to_vector()).norm()
    }
}

/// Point of the mass hyperboloid (`mass > 0`) or forward lightcone (`mass = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumPoint {
    k: [f64; 3],
    mass: f64,
}

impl MomentumPoint {
    pub fn new(k: [f64; 3], mass: f64) -> Result<Self> {
        if !(mass >= 0.0) || !mass.is_finite() {
            return Err(Error::Domain(format!(
                "mass must be finite and non-negative, got {mass}"
            )));
        }
        if k.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("momentum must be finite, got {k:?}")));
        }
        if mass == 0.0 && norm(k) == 0.0 {
            return Err(Error::Domain("the lightcone excludes ω = |k| = 0".into()));
        }
        Ok(MomentumPoint { k, mass })
    }

    pub fn massless(k: [f64; 3]) -> Result<Self> {
        Self::new(k, 0.0)
    }

    pub fn k(&self) -> [f64; 3] {
        self.k
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn energy(&self) -> f64 {
        (self.mass * self.mass + dot(self.k, self.k)).sqrt()
    }

    pub fn four_momentum(&self) -> FourVector {
        FourVector::new(self.energy(), self.k[0], self.k[1], self.k[2])
    }

    /// Image under `Λ`, on the same orbit.
    pub fn transformed(&self, l: &LorentzTransform) -> MomentumPoint {
        let v = l.apply(&self.four_momentum());
        MomentumPoint {
            k: v.spatial(),
            mass: self.mass,
        }
    }

    /// Momentum fixed by the little group of this orbit.
    pub fn standard(&self) -> FourVector {
        if self.mass > 0.0 {
            FourVector::new(self.mass, 0.0, 0.0, 0.0)
        } else {
            REFERENCE_NULL
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzTransform {
    entries: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        LorentzTransform {
            entries: Matrix4::identity(),
        }
    }

    /// Validates `ΛᵀηΛ = η`, `det Λ = 1` and `Λ⁰₀ ≥ 1`.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        let defect = (m.transpose() * eta() * m - eta()).abs().max();
        if defect > GROUP_TOLERANCE {
            return Err(Error::Precondition(format!(
                "matrix is not Lorentz (defect {defect:e})"
            )));
        }
        if m.determinant() < 0.0 || m[(0, 0)] < 1.0 - GROUP_TOLERANCE {
            return Err(Error::Precondition(
                "matrix is not proper orthochronous".into(),
            ));
        }
        Ok(LorentzTransform { entries: m })
    }

    /// Boost along `z` with the given rapidity.
    pub fn boost_z(rapidity: f64) -> Self {
        let (c, s) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = c;
        m[(3, 3)] = c;
        m[(0, 3)] = s;
        m[(3, 0)] = s;
        LorentzTransform { entries: m }
    }

    pub fn from_rotation(r: &Rotation) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&r.entries);
        LorentzTransform { entries: m }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn compose(&self, o: &LorentzTransform) -> LorentzTransform {
        LorentzTransform {
            entries: self.entries * o.entries,
        }
    }

    pub fn inverse(&self) -> LorentzTransform {
        LorentzTransform {
            entries: eta() * self.entries.transpose() * eta(),
        }
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector::from_vector(&(self.entries * v.to_vector()))
    }

    pub fn lorentz_defect(&self) -> f64 {
        (self.entries.transpose() * eta() * self.entries - eta())
            .abs()
            .max()
    }

    pub fn max_distance(&self, o: &LorentzTransform) -> f64 {
        (self.entries - o.entries).abs().max()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.entries - self.entries.transpose()).abs().max() < tol
    }

    /// Spatial block, when `Λ` is a pure rotation.
    pub fn as_rotation(&self) -> Result<Rotation> {
        let off = (0..4).map(|i| {
            if i == 0 {
                0.0
            } else {
                self.entries[(0, i)].abs() + self.entries[(i, 0)].abs()
            }
        });
        if off.fold(0.0, f64::max) > GROUP_TOLERANCE
            || (self.entries[(0, 0)] - 1.0).abs() > GROUP_TOLERANCE
        {
            return Err(Error::Precondition(
                "transform is not a pure rotation".into(),
            ));
        }
        Rotation::from_matrix(self.entries.fixed_view::<3, 3>(1, 1).into_owned())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    entries: Matrix3<f64>,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation {
            entries: Matrix3::identity(),
        }
    }

    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self> {
        let defect = (m.transpose() * m - Matrix3::identity()).abs().max();
        if defect > GROUP_TOLERANCE || (m.determinant() - 1.0).abs() > GROUP_TOLERANCE {
            return Err(Error::Precondition(format!(
                "matrix is not in SO(3) (defect {defect:e})"
            )));
        }
        Ok(Rotation { entries: m })
    }

    /// Right-handed rotation by `angle` about `axis` (normalized here).
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = norm(axis);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Domain(
                "rotation axis must be a nonzero finite vector".into(),
            ));
        }
        let a = [axis[0] / n, axis[1] / n, axis[2] / n];
        Ok(Rotation {
            entries: Matrix3::from(axis_angle_matrix(a, angle)).transpose(),
        })
    }

    /// Rotation by `angle` about coordinate axis `n` (0 = x, 1 = y, 2 = z).
    pub fn about(n: usize, angle: f64) -> Self {
        Rotation {
            entries: Matrix3::from(coordinate_rotation(n, angle)).transpose(),
        }
    }

    /// Smallest rotation taking unit `a` to unit `b`; undefined at `b = −a`.
    pub fn minimal(a: [f64; 3], b: [f64; 3]) -> Result<Self> {
        let (a, b) = (unit(a)?, unit(b)?);
        if 1.0 + dot(a, b) < 1e-12 {
            return Err(Error::Domain(
                "minimal rotation is undefined between antipodal points".into(),
            ));
        }
        Ok(Rotation {
            entries: Matrix3::from(minimal_rotation_matrix(a, b)).transpose(),
        })
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.entries
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[(i, j)]))
    }

    pub fn compose(&self, o: &Rotation) -> Rotation {
        Rotation {
            entries: self.entries * o.entries,
        }
    }

    pub fn inverse(&self) -> Rotation {
        Rotation {
            entries: self.entries.transpose(),
        }
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let w = self.entries * Vector3::from(v);
        [w[0], w[1], w[2]]
    }

    pub fn angle(&self) -> f64 {
        ((self.entries.trace() - 1.0) * 0.5).clamp(-1.0, 1.0).acos()
    }

    /// Axis-angle form with angle in `[0, π]`; the identity reports `ẑ, 0`.
    pub fn axis_angle(&self) -> ([f64; 3], f64) {
        match axis_of_rotation(self) {
            FixedPoints::Axis(a) => (a, self.angle()),
            FixedPoints::All => ([0.0, 0.0, 1.0], 0.0),
        }
    }

    pub fn orthogonality_defect(&self) -> f64 {
        (self.entries.transpose() * self.entries - Matrix3::identity())
            .abs()
            .max()
    }

    pub fn max_distance(&self, o: &Rotation) -> f64 {
        (self.entries - o.entries).abs().max()
    }
}

/// ISO(2) little-group element of the reference null momentum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Iso2Element {
    /// Rotation angle in `(−π, π]`.
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Fixed points of a rotation acting on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FixedPoints {
    /// The rotation fixes exactly `±axis`.
    Axis([f64; 3]),
    /// Identity: every point is fixed.
    All,
}

/// The pure boost taking `(m, 0)` to `(ω, k)`.
pub fn boost_to(p: &MomentumPoint) -> Result<LorentzTransform> {
    let m = p.mass();
    if !(m > 0.0) {
        return Err(Error::Domain("massless momenta have no rest frame".into()));
    }
    let (k, w) = (p.k(), p.energy());
    let mut e = Matrix4::identity();
    e[(0, 0)] = w / m;
    for i in 0..3 {
        e[(0, i + 1)] = k[i] / m;
        e[(i + 1, 0)] = k[i] / m;
        for j in 0..3 {
            e[(i + 1, j + 1)] += k[i] * k[j] / (m * (w + m));
        }
    }
    Ok(LorentzTransform { entries: e })
}

/// `z`-boost with rapidity `ln|k|` followed by the minimal rotation `ẑ → k̂`.
pub fn standard_boost_lightlike(p: &MomentumPoint) -> Result<LorentzTransform> {
    let k = p.k();
    let r = norm(k);
    if r == 0.0 {
        return Err(Error::Domain("standard boost needs |k| > 0".into()));
    }
    let rot = Rotation::minimal([0.0, 0.0, 1.0], k)?;
    Ok(LorentzTransform::from_rotation(&rot).compose(&LorentzTransform::boost_z(r.ln())))
}

/// Standard boost of the orbit of `p`.
pub fn standard_boost(p: &MomentumPoint) -> Result<LorentzTransform> {
    if p.mass() > 0.0 {
        boost_to(p)
    } else {
        standard_boost_lightlike(p)
    }
}

/// Wigner element `L(Λp)⁻¹ Λ L(p)`.
pub fn little_group_element(l: &LorentzTransform, p: &MomentumPoint) -> Result<LorentzTransform> {
    let lp = standard_boost(p)?;
    let lq = standard_boost(&p.transformed(l))?;
    Ok(lq.inverse().compose(l).compose(&lp))
}

/// `W = S(α, β)·R_z(θ)` with the null rotation `S` fixing `(1,0,0,1)`.
pub fn iso2_embed(e: &Iso2Element) -> LorentzTransform {
    let (a, b) = (e.alpha, e.beta);
    let zeta = 0.5 * (a * a + b * b);
    #[rustfmt::skip]
    let s = Matrix4::new(
        1.0 + zeta, a,   b,   -zeta,
        a,          1.0, 0.0, -a,
        b,          0.0, 1.0, -b,
        zeta,       a,   b,   1.0 - zeta,
    );
    let r = LorentzTransform::from_rotation(&Rotation::about(2, e.theta));
    LorentzTransform {
        entries: s * r.entries,
    }
}

pub fn decompose_iso2(w: &LorentzTransform) -> Result<Iso2Element> {
    let moved = w.apply(&REFERENCE_NULL).distance(&REFERENCE_NULL);
    if moved > FIX_TOLERANCE {
        return Err(Error::Precondition(format!(
            "transform moves the reference momentum by {moved:e}"
        )));
    }
    let m = w.matrix();
    let mut theta = m[(2, 1)].atan2(m[(1, 1)]);
    if theta <= -PI {
        theta += 2.0 * PI;
    }
    let s = m * LorentzTransform::from_rotation(&Rotation::about(2, -theta)).entries;
    Ok(Iso2Element {
        theta,
        alpha: s[(1, 0)],
        beta: s[(2, 0)],
    })
}

pub fn axis_of_rotation(r: &Rotation) -> FixedPoints {
    let m = &r.entries;
    let v = [
        m[(2, 1)] - m[(1, 2)],
        m[(0, 2)] - m[(2, 0)],
        m[(1, 0)] - m[(0, 1)],
    ];
    let cos = (m.trace() - 1.0) * 0.5;
    if (m - Matrix3::identity()).abs().max() < 1e-14 {
        return FixedPoints::All;
    }
    if cos > 0.0 {
        let n = norm(v);
        return FixedPoints::Axis([v[0] / n, v[1] / n, v[2] / n]);
    }
    // R + Rᵀ − 2cos·I = 2(1 − cos) n nᵀ
    let sym = m + m.transpose() - Matrix3::identity() * (2.0 * cos);
    let col = (0..3)
        .max_by(|&i, &j| sym.column(i).norm().total_cmp(&sym.column(j).norm()))
        .unwrap_or(0);
    let c = sym.column(col);
    let n = c.norm();
    let mut axis = [c[0] / n, c[1] / n, c[2] / n];
    if dot(axis, v) < 0.0 {
        axis = axis.map(|x| -x);
    }
    FixedPoints::Axis(axis)
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn unit(a: [f64; 3]) -> Result<[f64; 3]> {
    let n = norm(a);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::Domain(format!("cannot normalize {a:?}")));
    }
    Ok([a[0] / n, a[1] / n, a[2] / n])
}

/// Rows of `exp(angle·[a]×)` for unit `a`, in any scalar type.
pub fn axis_angle_matrix<T: Real>(a: [T; 3], angle: T) -> [[T; 3]; 3] {
    let (s, c) = (angle.sin(), angle.cos());
    let one = T::one();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let kron = if i == j { one } else { T::zero() };
            let cross_term = match (i, j) {
                (0, 1) => -a[2],
                (1, 0) => a[2],
                (0, 2) => a[1],
                (2, 0) => -a[1],
                (1, 2) => -a[0],
                (2, 1) => a[0],
                _ => T::zero(),
            };
            kron * c + cross_term * s + a[i] * a[j] * (one - c)
        })
    })
}

pub fn coordinate_rotation<T: Real>(n: usize, angle: T) -> [[T; 3]; 3] {
    let mut a = [T::zero(); 3];
    a[n] = T::one();
    axis_angle_matrix(a, angle)
}

/// Rows of `v ↦ v + c×v + c×(c×v)/(1 + a·b)`, `c = a×b`, for unit `a`, `b`.
pub fn minimal_rotation_matrix<T: Real>(a: [T; 3], b: [T; 3]) -> [[T; 3]; 3] {
    let c = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let d = T::one() / (T::one() + a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
    let cx = [
        [T::zero(), -c[2], c[1]],
        [c[2], T::zero(), -c[0]],
        [-c[1], c[0], T::zero()],
    ];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut sq = T::zero();
            for l in 0..3 {
                sq += cx[i][l] * cx[l][j];
            }
            (if i == j { T::one() } else { T::zero() }) + cx[i][j] + sq * d
        })
    })
}

pub fn mat3_apply<T: Real>(m: &[[T; 3]; 3], v: [T; 3]) -> [T; 3] {
    std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rotation(rng: &mut impl Rng) -> Rotation {
        let axis = crate::algebra::sampling::random_direction(rng);
        Rotation::from_axis_angle(axis, rng.random_range(-PI..PI)).unwrap()
    }

    fn random_k(rng: &mut impl Rng) -> [f64; 3] {
        let d = crate::algebra::sampling::random_direction(rng);
        let r = rng.random_range(0.2..3.0);
        [r * d[0], r * d[1], r * d[2]]
    }

    #[test]
    fn rest_frame_boost_is_identity() {
        let p = MomentumPoint::new([0.0; 3], 1.0).unwrap();
        assert!(
            boost_to(&p)
                .unwrap()
                .max_distance(&LorentzTransform::identity())
                == 0.0
        );
    }

    #[test]
    fn boost_maps_rest_momentum() {
        let p = MomentumPoint::new([0.0, 0.0, 0.75], 1.0).unwrap();
        let l = boost_to(&p).unwrap();
        let img = l.apply(&FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert!(img.distance(&FourVector::new(1.25, 0.0, 0.0, 0.75)) < 1e-12);
        assert!((l.get(0, 0) - 1.25).abs() < 1e-12 && (l.get(0, 3) - 0.75).abs() < 1e-12);
        assert!(l.is_symmetric(1e-15) && l.lorentz_defect() < 1e-12);
        let massless = MomentumPoint::massless([1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(boost_to(&massless), Err(Error::Domain(_))));
    }

    #[test]
    fn lightlike_standard_boost() {
        let id =
            standard_boost_lightlike(&MomentumPoint::massless([0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert!(id.max_distance(&LorentzTransform::identity()) < 1e-15);
        let l2 =
            standard_boost_lightlike(&MomentumPoint::massless([0.0, 0.0, 2.0]).unwrap()).unwrap();
        assert!(l2.max_distance(&LorentzTransform::boost_z(2f64.ln())) < 1e-15);
        assert!(
            l2.apply(&REFERENCE_NULL)
                .distance(&FourVector::new(2.0, 0.0, 0.0, 2.0))
                < 1e-12
        );
        let lx =
            standard_boost_lightlike(&MomentumPoint::massless([1.0, 0.0, 0.0]).unwrap()).unwrap();
        assert!(
            lx.apply(&REFERENCE_NULL)
                .distance(&FourVector::new(1.0, 1.0, 0.0, 0.0))
                < 1e-12
        );
        assert!(MomentumPoint::massless([0.0; 3]).is_err());
    }

    #[test]
    fn massive_wigner_rotation_of_a_rotation_is_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let r = random_rotation(&mut rng);
            let p = MomentumPoint::new(random_k(&mut rng), 0.7).unwrap();
            let w = little_group_element(&LorentzTransform::from_rotation(&r), &p).unwrap();
            assert!(w.max_distance(&LorentzTransform::from_rotation(&r)) < 1e-10);
        }
    }

    #[test]
    fn massless_z_rotation_at_reference() {
        let p = MomentumPoint::massless([0.0, 0.0, 1.0]).unwrap();
        let r = LorentzTransform::from_rotation(&Rotation::about(2, 0.9));
        let w = little_group_element(&r, &p).unwrap();
        assert!(w.max_distance(&r) < 1e-12);
        let e = decompose_iso2(&w).unwrap();
        assert!((e.theta - 0.9).abs() < 1e-12 && e.alpha.abs() < 1e-12 && e.beta.abs() < 1e-12);
    }

    #[test]
    fn little_group_is_a_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for mass in [0.0, 1.3] {
            for _ in 0..50 {
                let boost =
                    boost_to(&MomentumPoint::new(random_k(&mut rng), 1.0).unwrap()).unwrap();
                let l1 =
                    LorentzTransform::from_rotation(&random_rotation(&mut rng)).compose(&boost);
                let l2 = LorentzTransform::from_rotation(&random_rotation(&mut rng));
                let p = MomentumPoint::new(random_k(&mut rng), mass).unwrap();
                let lhs = little_group_element(&l1.compose(&l2), &p);
                let rhs = little_group_element(&l1, &p.transformed(&l2))
                    .and_then(|a| little_group_element(&l2, &p).map(|b| a.compose(&b)));
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => {
                        assert!(a.max_distance(&b) < 1e-9);
                        assert!(a.apply(&p.standard()).distance(&p.standard()) < 1e-9);
                    }
                    // an intermediate momentum landed on the −z axis
                    (Err(Error::Domain(_)), _) | (_, Err(Error::Domain(_))) => {}
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn iso2_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let id = decompose_iso2(&LorentzTransform::identity()).unwrap();
        assert_eq!(
            id,
            Iso2Element {
                theta: 0.0,
                alpha: 0.0,
                beta: 0.0
            }
        );
        for _ in 0..200 {
            let e = Iso2Element {
                theta: rng.random_range(-PI..PI),
                alpha: rng.random_range(-2.0..2.0),
                beta: rng.random_range(-2.0..2.0),
            };
            let w = iso2_embed(&e);
            assert!(w.lorentz_defect() < 1e-12);
            let back = decompose_iso2(&w).unwrap();
            assert!((back.theta - e.theta).abs() < 1e-10);
            assert!((back.alpha - e.alpha).abs() < 1e-10 && (back.beta - e.beta).abs() < 1e-10);
            assert!(iso2_embed(&back).max_distance(&w) < 1e-10);
        }
        let pi = decompose_iso2(&iso2_embed(&Iso2Element {
            theta: -PI,
            alpha: 0.0,
            beta: 0.0,
        }))
        .unwrap();
        assert!(pi.theta > 0.0);
        assert!(matches!(
            decompose_iso2(&LorentzTransform::from_rotation(&Rotation::about(0, 0.4))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn massless_wigner_elements_fix_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let p = MomentumPoint::massless(random_k(&mut rng)).unwrap();
            let boost = boost_to(&MomentumPoint::new(random_k(&mut rng), 2.0).unwrap()).unwrap();
            let l = LorentzTransform::from_rotation(&random_rotation(&mut rng)).compose(&boost);
            if let Ok(w) = little_group_element(&l, &p) {
                assert!(decompose_iso2(&w).is_ok());
            }
        }
    }

    #[test]
    fn axes() {
        let z = axis_of_rotation(&Rotation::about(2, PI / 3.0));
        assert_eq!(z, FixedPoints::Axis([0.0, 0.0, 1.0]));
        let n = 1.0 / 3f64.sqrt();
        let r = Rotation::from_axis_angle([1.0, 1.0, 1.0], 0.7).unwrap();
        let FixedPoints::Axis(a) = axis_of_rotation(&r) else {
            panic!()
        };
        assert!(a.iter().all(|c| (c - n).abs() < 1e-12));
        assert_eq!(axis_of_rotation(&Rotation::identity()), FixedPoints::All);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let r = random_rotation(&mut rng);
            let FixedPoints::Axis(a) = axis_of_rotation(&r) else {
                panic!()
            };
            let ra = r.apply(a);
            assert!((0..3).all(|i| (ra[i] - a[i]).abs() < 1e-12));
            let (axis, angle) = r.axis_angle();
            assert!(
                Rotation::from_axis_angle(axis, angle)
                    .unwrap()
                    .max_distance(&r)
                    < 1e-12
            );
        }
        let half = Rotation::about(0, PI);
        let FixedPoints::Axis(a) = axis_of_rotation(&half) else {
            panic!()
        };
        assert!((a[0].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn minimal_rotation() {
        let r = Rotation::minimal([0.0, 0.0, 1.0], [1.0, 2.0, -0.5]).unwrap();
        let img = r.apply([0.0, 0.0, 1.0]);
        let b = unit([1.0, 2.0, -0.5]).unwrap();
        assert!((0..3).all(|i| (img[i] - b[i]).abs() < 1e-14));
        assert!(r.orthogonality_defect() < 1e-14);
        assert!(Rotation::minimal([0.0, 0.0, 1.0], [0.0, 0.0, -1.0]).is_err());
        assert!(Rotation::from_matrix(Matrix3::identity() * 2.0).is_err());
    }

    #[test]
    fn four_vector_norm_signature() {
        assert_eq!(FourVector::new(2.0, 1.0, 1.0, 1.0).norm2(), -1.0);
        assert_eq!(REFERENCE_NULL.norm2(), 0.0);
    }
}
