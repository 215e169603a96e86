//! Total angular momentum on helicity line bundles and the proposed
//! `J = J∥ + J⊥` splitting.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::frame::{inner, line_frame, ChartId, FiberFrame};
use super::spin::{OperatorTriple, TripleLabel};
use crate::algebra::checks::{
    check_bracket_identity, check_commuting, check_vector_operator, CommutatorReport,
};
use crate::algebra::closure::{fit_structure_constants, ClosureFit};
use crate::algebra::field::{FiberMat, SmoothMatrixField, SmoothScalarField, C64};
use crate::algebra::jet::{Dual, Jet};
use crate::algebra::operator::{DiffOperator, Domain, OpCoeffs};
use crate::algebra::sampling::{sample_points, SampleConfig};
use crate::error::{Error, Result};
use crate::minkowski::{coordinate_rotation, mat3_apply, MomentumPoint, Rotation};

/// `⟨e(k), D(R) e(R⁻¹k)⟩` for a line-bundle frame. The induced action on
/// chart amplitudes is `(U_R ψ)(k) = phase · ψ(R⁻¹k)`.
pub fn rotate_section_phase(r: &Rotation, k: &MomentumPoint, frame: &FiberFrame) -> Result<C64> {
    if frame.rank() != 1 {
        return Err(Error::Usage(format!(
            "rank-{} frame: use FiberFrame::comparison_matrix for the unitary comparison",
            frame.rank()
        )));
    }
    Ok(frame.comparison_matrix(r, k.k())?.get(0, 0))
}

/// `i ∂_t ⟨e(k), D(e^{tG_n}) e(e^{−tG_n}k)⟩ |_{t=0}` with the k-dependence
/// kept to second order.
fn connection_term(frame: &FiberFrame, n: usize, k: &[Jet; 3]) -> Complex<Jet> {
    let kd: [Dual<Jet>; 3] = k.map(Dual::constant);
    let t = Dual::variable(Jet::zero());
    let back = mat3_apply(&coordinate_rotation(n, -t), kd);
    let ek = &frame.vectors(&kd)[0];
    let moved = frame.rotate_vector(&coordinate_rotation(n, t), &frame.vectors(&back)[0]);
    let phase = inner(ek, &moved);
    Complex::new(-phase.im.eps, phase.re.eps)
}

/// Generators `J_n = −i(k×∇)_n + F_n(k)` of the rotation action on chart
/// amplitudes of the helicity-`h` line bundle.
#[allow(non_snake_case)]
pub fn build_massless_J(h: i32, chart: ChartId) -> Result<OperatorTriple> {
    let frame = line_frame(h, chart)?;
    let domain = frame.domain();
    let ops = std::array::from_fn(|n| {
        let f = frame.clone();
        let orbital = DiffOperator::orbital(n, 1, domain);
        if h == 0 {
            return orbital;
        }
        let fiber = SmoothScalarField::new(2, move |k| connection_term(&f, n, k));
        let conn = DiffOperator::scalar_multiplication(fiber, domain);
        orbital.add(&conn).expect("same rank and domain").memoized()
    });
    OperatorTriple::new(TripleLabel::J, ops)
}

/// `k̂ · J`, the helicity operator.
pub fn helicity_operator(j: &OperatorTriple) -> Result<DiffOperator> {
    let parts: Vec<_> = (0..3)
        .map(|m| j.get(m).left_mul(&SmoothScalarField::unit_coordinate(m)))
        .collect();
    DiffOperator::sum(&parts)
}

/// Worst `|(J·k̂)ψ − hψ|` for the frame section `ψ ≡ 1` at sampled points.
pub fn helicity_eigenvalue_residual(j: &OperatorTriple, h: i32, cfg: &SampleConfig) -> Result<f64> {
    let op = helicity_operator(j)?;
    let points = sample_points(op.domain(), cfg.samples, cfg.seed)?;
    let one = SmoothScalarField::constant(C64::new(1.0, 0.0));
    let mut worst: f64 = 0.0;
    for k in points {
        let v = op.apply_at(std::slice::from_ref(&one), k)?;
        worst = worst.max((v[0] - h as f64).norm());
    }
    Ok(worst)
}

/// `J∥_n = k̂_n (k̂·J)` and `J⊥ = J − J∥`.
pub fn build_parallel_perp(j: &OperatorTriple) -> Result<(OperatorTriple, OperatorTriple)> {
    let hel = helicity_operator(j)?;
    let par = OperatorTriple::new(
        TripleLabel::Parallel,
        std::array::from_fn(|n| hel.left_mul(&SmoothScalarField::unit_coordinate(n))),
    )?;
    let perp = j.sub(&par, TripleLabel::Perp)?;
    Ok((par, perp))
}

/// Worst coefficient distance between `J∥` and multiplication by `h k̂`.
pub fn parallel_deviation(par: &OperatorTriple, h: i32, cfg: &SampleConfig) -> Result<f64> {
    let points = sample_points(&par.domain(), cfg.samples, cfg.seed)?;
    let mut worst: f64 = 0.0;
    for k in points {
        let r = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        for n in 0..3 {
            let mut want = OpCoeffs::zeros(1);
            want.fiber = FiberMat::scalar(C64::new(h as f64 * k[n] / r, 0.0));
            worst = worst.max(par.get(n).coefficients_unchecked(k).sub(&want).norm());
        }
    }
    Ok(worst)
}

/// Certificates of the nonstandard bracket relations of the splitting and of
/// the closure behaviour of each part.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonstandardReport {
    /// `[J∥_m, J∥_n] = 0`.
    pub parallel_abelian: CommutatorReport,
    /// `[J⊥_m, J∥_n] = iε_{mnp} J∥_p`.
    pub perp_parallel: CommutatorReport,
    /// `[J⊥_m, J⊥_n] = iε_{mnp}(J⊥_p − J∥_p)`.
    pub perp_perp: CommutatorReport,
    pub parallel_fit: ClosureFit,
    pub perp_fit: ClosureFit,
}

impl NonstandardReport {
    pub fn pass(&self) -> bool {
        self.parallel_abelian.pass
            && self.perp_parallel.pass
            && self.perp_perp.pass
            && self.parallel_fit.max_abs_constant() < self.parallel_abelian.tolerance
            && self.perp_fit.residual > crate::algebra::closure::FAILURE_FLOOR
    }
}

pub fn verify_nonstandard_relations(
    par: &OperatorTriple,
    perp: &OperatorTriple,
    cfg: &SampleConfig,
) -> Result<NonstandardReport> {
    let rhs35 = perp.sub(par, TripleLabel::Perp)?;
    Ok(NonstandardReport {
        parallel_abelian: check_commuting(par.ops(), par.ops(), cfg)?,
        perp_parallel: check_bracket_identity(perp.ops(), par.ops(), par.ops(), cfg)?,
        perp_perp: check_bracket_identity(perp.ops(), perp.ops(), rhs35.ops(), cfg)?,
        parallel_fit: fit_structure_constants(par.ops(), cfg)?,
        perp_fit: fit_structure_constants(perp.ops(), cfg)?,
    })
}

/// Both parts are vector operators with respect to `J`.
pub fn splitting_vector_reports(
    j: &OperatorTriple,
    par: &OperatorTriple,
    perp: &OperatorTriple,
    cfg: &SampleConfig,
) -> Result<(CommutatorReport, CommutatorReport)> {
    Ok((
        check_vector_operator(par.ops(), j.ops(), cfg)?,
        check_vector_operator(perp.ops(), j.ops(), cfg)?,
    ))
}

/// Transition `τ = ⟨e_S, e_N⟩`, so that `ψ_S = τ ψ_N` on the overlap.
pub fn transition_function(h: i32) -> Result<(SmoothMatrixField, SmoothMatrixField)> {
    let (n, s) = (
        line_frame(h, ChartId::North)?,
        line_frame(h, ChartId::South)?,
    );
    let (n2, s2) = (n.clone(), s.clone());
    let tau = SmoothMatrixField::new(1, 2, move |k| {
        FiberMat::scalar(inner(&s.vectors(k)[0], &n.vectors(k)[0]))
    });
    let tau_inv = SmoothMatrixField::new(1, 2, move |k| {
        FiberMat::scalar(inner(&n2.vectors(k)[0], &s2.vectors(k)[0]))
    });
    Ok((tau, tau_inv))
}

/// Overlap of the two charts.
pub fn chart_overlap() -> Domain {
    Domain {
        exclude_plus_z: true,
        exclude_minus_z: true,
        ..Domain::lightcone()
    }
}

/// `max ‖J^S_n − τ J^N_n τ⁻¹‖ / (1 + max ‖J‖)` over sampled overlap points.
pub fn chart_independence_residual(h: i32, cfg: &SampleConfig) -> Result<f64> {
    let overlap = chart_overlap();
    let jn = build_massless_J(h, ChartId::North)?;
    let js = build_massless_J(h, ChartId::South)?;
    let (tau, tau_inv) = transition_function(h)?;
    let points = sample_points(&overlap, cfg.samples, cfg.seed)?;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for n in 0..3 {
        let conj = jn.get(n).conjugate(&tau, &tau_inv)?;
        for &k in &points {
            let a = js.get(n).coefficients_unchecked(k);
            scale = scale.max(a.norm());
            worst = worst.max(a.sub(&conj.coefficients_unchecked(k)).norm());
        }
    }
    Ok(worst / (1.0 + scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::checks::check_so3;
    use crate::algebra::closure::Closure;
    use crate::minkowski::axis_angle_matrix;
    use rand::{Rng, SeedableRng};

    fn cfg() -> SampleConfig {
        SampleConfig {
            samples: 40,
            ..SampleConfig::default()
        }
    }

    #[test]
    fn z_rotation_phase_at_pole() {
        let f = line_frame(1, ChartId::North).unwrap();
        let k = MomentumPoint::massless([0.0, 0.0, 1.0]).unwrap();
        for phi in [0.3, -1.2, 2.5] {
            let p = rotate_section_phase(&Rotation::about(2, phi), &k, &f).unwrap();
            assert!((p - C64::from_polar(1.0, -phi)).norm() < 1e-14);
        }
        let p = rotate_section_phase(
            &Rotation::identity(),
            &MomentumPoint::massless([0.2, 0.4, 0.1]).unwrap(),
            &f,
        );
        assert!((p.unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn phase_is_unimodular_cocycle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for h in [-2, -1, 1, 2] {
            let f = line_frame(h, ChartId::North).unwrap();
            let mut tested = 0;
            while tested < 30 {
                let r1 = Rotation::from_axis_angle(
                    [rng.random(), rng.random(), rng.random()],
                    rng.random_range(-1.0..1.0),
                )
                .unwrap();
                let r2 = Rotation::from_axis_angle(
                    [rng.random(), rng.random(), rng.random()],
                    rng.random_range(-1.0..1.0),
                )
                .unwrap();
                let k = [
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(0.0..1.0),
                ];
                let p = MomentumPoint::massless(k).unwrap();
                let (Ok(a), Ok(b), Ok(c)) = (
                    rotate_section_phase(&r1.compose(&r2), &p, &f),
                    rotate_section_phase(&r1, &p, &f),
                    MomentumPoint::massless(r1.inverse().apply(k))
                        .and_then(|q| rotate_section_phase(&r2, &q, &f)),
                ) else {
                    continue;
                };
                assert!((a.norm() - 1.0).abs() < 1e-10);
                assert!((a - b * c).norm() < 1e-10);
                tested += 1;
            }
        }
    }

    #[test]
    fn generators_match_finite_rotations() {
        // i d/dt of the phase along a finite-difference path
        let f = line_frame(2, ChartId::South).unwrap();
        let k = [0.4, -0.3, 0.5];
        let j = build_massless_J(2, ChartId::South).unwrap();
        for n in 0..3 {
            let mut axis = [0.0; 3];
            axis[n] = 1.0;
            let dt = 1e-6;
            let ph = |t: f64| {
                let r = Rotation::from_matrix(
                    nalgebra::Matrix3::from(axis_angle_matrix(axis, t)).transpose(),
                )
                .unwrap();
                rotate_section_phase(&r, &MomentumPoint::massless(k).unwrap(), &f).unwrap()
            };
            let fd = C64::new(0.0, 1.0) * (ph(dt) - ph(-dt)) / (2.0 * dt);
            let fiber = j.get(n).coefficients_unchecked(k).fiber.get(0, 0);
            assert!((fd - fiber).norm() < 1e-8);
        }
    }

    #[test]
    fn massless_j_satisfies_so3_with_helicity_h() {
        for h in [-2, -1, 0, 1, 2] {
            for chart in [ChartId::North, ChartId::South] {
                let j = build_massless_J(h, chart).unwrap();
                assert!(
                    check_so3(j.ops(), &cfg()).unwrap().max_residual < 1e-10,
                    "h={h} {chart}"
                );
                assert!(helicity_eigenvalue_residual(&j, h, &cfg()).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn splitting_relations() {
        for h in [-2, 1] {
            let j = build_massless_J(h, ChartId::North).unwrap();
            let (par, perp) = build_parallel_perp(&j).unwrap();
            assert!(parallel_deviation(&par, h, &cfg()).unwrap() < 1e-12);
            let rep = verify_nonstandard_relations(&par, &perp, &cfg()).unwrap();
            assert!(
                rep.pass(),
                "{:?}",
                (rep.perp_perp.max_residual, rep.perp_fit.residual)
            );
            assert_eq!(rep.perp_fit.verdict(), Closure::DoesNotClose);
            let (a, b) = splitting_vector_reports(&j, &par, &perp, &cfg()).unwrap();
            assert!(a.pass && b.pass);
            assert!(!check_so3(par.ops(), &cfg()).unwrap().pass);
        }
    }

    #[test]
    fn charts_are_conjugate() {
        for h in [-2, -1, 1, 2] {
            assert!(chart_independence_residual(h, &cfg()).unwrap() < 1e-10);
        }
    }
}
