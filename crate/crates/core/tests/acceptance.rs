//! Acceptance criteria, one line per criterion.
//!
//! Exits non-zero if any criterion fails, except for clauses listed in
//! `UNATTAINABLE`, which are evaluated as stated and reported as FAIL.

use std::f64::consts::PI;
use std::time::Instant;

use spinsplit::algebra::checks::{
    check_commuting, check_so3, check_vector_operator, coefficient_extent, jacobi_residual,
};
use spinsplit::algebra::closure::{CLOSURE_TOLERANCE, FAILURE_FLOOR};
use spinsplit::algebra::sampling::rng;
use spinsplit::algebra::{random_operator, sample_points, Domain, SampleConfig, C64};
use spinsplit::minkowski::Rotation;
use spinsplit::representations::massless::{
    helicity_eigenvalue_residual, verify_nonstandard_relations,
};
use spinsplit::representations::{
    ambient_frame, build_massive_JSL, build_massless_J, build_parallel_perp, coulomb_project,
    line_frame, rank1_certificate, rank2_certificate, sam_descent_counterexample, ChartId,
    FiberFrame,
};
use spinsplit::suite::{
    emit_report, run_suite, triangle_with_solid_angle, ReportFormat, SuiteConfig,
    VerificationReport,
};
use spinsplit::topology::{
    berry_holonomy, bundle_chern, chern_number, external_frame_construction, hemisphere, icosphere,
    region_consistency, whitney_sum_chern, BundleAction, LoopPath, STABILIZER_ANGLES,
};
use spinsplit::Result;

const SEED: u64 = 42;
const HELICITIES: [i32; 4] = [-2, -1, 1, 2];
/// Clauses that cannot hold as written; see the AC7 detail line.
const UNATTAINABLE: [&str; 1] = ["AC7"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn ac1() -> Result<Outcome> {
    let cfg = SampleConfig::new(100, SEED, 1e-10);
    let mut worst: f64 = 0.0;
    let mut structural = true;
    for s in [0.0, 1.0, 2.0] {
        let m = build_massive_JSL(s, 1.0)?;
        for t in [&m.j, &m.s, &m.l] {
            worst = worst.max(check_so3(t.ops(), &cfg)?.max_residual);
        }
        worst = worst.max(check_commuting(m.s.ops(), m.l.ops(), &cfg)?.max_residual);
        worst = worst.max(check_vector_operator(m.s.ops(), m.j.ops(), &cfg)?.max_residual);
        worst = worst.max(check_vector_operator(m.l.ops(), m.j.ops(), &cfg)?.max_residual);
        let pts = sample_points(&m.j.domain(), 100, SEED)?;
        structural &= coefficient_extent(m.s.ops(), &pts).0 == 0.0
            && coefficient_extent(m.l.ops(), &pts).1 == 0.0;
    }
    outcome(
        worst < 1e-10 && structural,
        format!("max residual {worst:.2e} (< 1e-10); S drift = 0, L fiber = 0: {structural}"),
    )
}

fn ac2() -> Result<Outcome> {
    let cfg = SampleConfig::new(100, SEED, 1e-8);
    let (mut so3, mut hel): (f64, f64) = (0.0, 0.0);
    for h in HELICITIES {
        for chart in [ChartId::North, ChartId::South] {
            let j = build_massless_J(h, chart)?;
            so3 = so3.max(check_so3(j.ops(), &cfg)?.max_residual);
            hel = hel.max(helicity_eigenvalue_residual(&j, h, &cfg)?);
        }
    }
    outcome(
        so3 < 1e-8 && hel < 1e-9,
        format!("so(3) {so3:.2e} (< 1e-8), |J·k̂ − h| {hel:.2e} (< 1e-9)"),
    )
}

fn ac3() -> Result<Outcome> {
    let (mut brackets, mut consts, mut perp_min): (f64, f64, f64) = (0.0, 0.0, f64::INFINITY);
    let mut in_gap = 0;
    for seed in [SEED, 7, 1234] {
        let cfg = SampleConfig::new(100, seed, CLOSURE_TOLERANCE);
        for h in HELICITIES {
            let (par, perp) = build_parallel_perp(&build_massless_J(h, ChartId::North)?)?;
            let r = verify_nonstandard_relations(&par, &perp, &cfg)?;
            for c in [&r.parallel_abelian, &r.perp_parallel, &r.perp_perp] {
                brackets = brackets.max(c.max_residual);
            }
            consts = consts.max(r.parallel_fit.max_abs_constant());
            perp_min = perp_min.min(r.perp_fit.residual);
            for res in [r.parallel_fit.residual, r.perp_fit.residual] {
                if res > CLOSURE_TOLERANCE && res < FAILURE_FLOOR {
                    in_gap += 1;
                }
            }
        }
    }
    outcome(
        brackets < 1e-8 && consts < 1e-8 && perp_min > 0.1 && in_gap == 0,
        format!("brackets {brackets:.2e}, parallel max|c| {consts:.2e}, perp fit residual >= {perp_min:.3}, fits in gap: {in_gap}"),
    )
}

fn ac4() -> Result<Outcome> {
    let r1 = rank1_certificate(10_000, SEED, 1e-7, &SampleConfig::new(10, SEED, 1e-8))?;
    let r2 = rank2_certificate(10_000, SEED, 1e-7, 1e-8)?;
    outcome(
        r1.pass && r2.pass,
        format!(
            "rank 1: {} trials, {} satisfy so(3), max sup-norm {:.2e}; rank 2: {} trials, {} satisfy so(3) ({} projective excluded), max Casimir {:.2e}",
            r1.trials, r1.so3_satisfying, r1.max_witness, r2.trials, r2.so3_satisfying, r2.projective_excluded, r2.max_witness
        ),
    )
}

fn ac5() -> Result<Outcome> {
    let mut ok = true;
    let mut seen = Vec::new();
    for (h, want) in [(1, -2), (-1, 2), (2, -4), (-2, 4)] {
        for level in 3..=5 {
            let c = chern_number(&line_frame(h, ChartId::North)?, &icosphere(level)?)?;
            ok &= c.chern == want && c.integrality_defect() < 1e-6;
        }
        seen.push(format!("C({h:+})={want}"));
    }
    let f = |h| line_frame(h, ChartId::North);
    let mesh = icosphere(4)?;
    let w1 = whitney_sum_chern(&[f(1)?, f(-1)?], &mesh)?.chern;
    let w2 = whitney_sum_chern(&[f(2)?, f(-2)?], &mesh)?.chern;
    ok &= w1 == 0 && w2 == 0;
    outcome(
        ok,
        format!("{} at levels 3-5; Whitney sums {w1}, {w2}", seen.join(" ")),
    )
}

fn ac6() -> Result<Outcome> {
    let (mut hol, mut stokes): (f64, f64) = (0.0, 0.0);
    let mesh = icosphere(4)?;
    for h in HELICITIES {
        let frame = line_frame(h, ChartId::North)?;
        for omega in [PI / 2.0, 0.3, 1.7] {
            let tri = triangle_with_solid_angle(omega, [0.3, -0.5, 0.8])?;
            let got = berry_holonomy(&frame, &LoopPath::geodesic_polygon(&tri, 200)?)?;
            hol = hol.max((got - C64::from_polar(1.0, h as f64 * omega)).norm());
        }
        for axis in [[0.0, 0.0, 1.0], [0.3, -0.8, 0.1], [1.0, 1.0, -1.0]] {
            stokes = stokes.max(region_consistency(&frame, &mesh, &hemisphere(&mesh, axis))?.2);
        }
    }
    outcome(
        hol < 1e-6 && stokes < 1e-6,
        format!("|hol − e^(ihΩ)| {hol:.2e}, hemisphere Stokes {stokes:.2e} (< 1e-6)"),
    )
}

fn ac7() -> Result<Outcome> {
    let mesh = icosphere(4)?;
    let k0 = [0.0, 0.0, 1.0];
    let mut frames: Vec<(String, FiberFrame, BundleAction)> = [-2, -1, 0, 1, 2]
        .into_iter()
        .map(|h| {
            Ok((
                format!("h={h}"),
                line_frame(h, ChartId::North)?,
                BundleAction::Natural,
            ))
        })
        .collect::<Result<_>>()?;
    frames.push(("C^3".into(), ambient_frame(3)?, BundleAction::BaseOnly));
    let (mut trivial_ok, mut equivalence, mut pi_ok, mut max_ok) = (true, true, true, true);
    let mut pi_report = Vec::new();
    for (name, frame, action) in &frames {
        let c = bundle_chern(frame, &mesh)?.chern;
        let fc = external_frame_construction(frame, *action, k0, &mesh, &STABILIZER_ANGLES)?;
        equivalence &= (fc.residual < 1e-10) == (c == 0);
        if c == 0 {
            trivial_ok &= fc.residual < 1e-10 && fc.min_gram_determinant > 0.9;
        } else {
            let at_pi = fc.residual_at(PI).expect("π is sampled");
            pi_ok &= at_pi >= 1.0;
            max_ok &= fc.residual >= 1.0;
            pi_report.push(format!("{name}: {at_pi:.2}"));
        }
    }
    outcome(
        trivial_ok && equivalence && pi_ok && max_ok,
        format!(
            "C=0 frames exact: {trivial_ok}; residual≈0 ⟺ C=0: {equivalence}; max over angles >= 1: {max_ok}; \
             at θ=π [{}] >= 1: {pi_ok} (even h: the π-rotation acts on the fiber by e^(−ihπ) = 1)",
            pi_report.join(", ")
        ),
    )
}

fn ac8() -> Result<Outcome> {
    let mut r = rng(SEED);
    let (mut idem, mut class): (f64, f64) = (0.0, 0.0);
    use rand::Rng;
    for _ in 0..1000 {
        let k: [f64; 3] = std::array::from_fn(|_| r.random_range(-2.0..2.0));
        let a: [C64; 3] =
            std::array::from_fn(|_| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
        let alpha: f64 = r.random_range(-3.0..3.0);
        let p = coulomb_project(k, &a)?;
        let pp = coulomb_project(k, &p)?;
        let b: [C64; 3] = std::array::from_fn(|i| a[i] + alpha * k[i]);
        let pb = coulomb_project(k, &b)?;
        idem = idem.max((0..3).map(|i| (pp[i] - p[i]).norm()).fold(0.0, f64::max));
        class = class.max((0..3).map(|i| (pb[i] - p[i]).norm()).fold(0.0, f64::max));
    }
    let x = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    let d = sam_descent_counterexample([0.0, 0.0, 1.0], &x, 1.0, &Rotation::about(0, PI / 2.0))?
        .distance;
    outcome(
        idem < 1e-12 && class < 1e-10 && (d - 1.0).abs() < 1e-10,
        format!("idempotence {idem:.2e}, gauge-class spread {class:.2e}, descent witness {d:.12}"),
    )
}

fn ac9() -> Result<Outcome> {
    let infra = SuiteConfig::named("infrastructure");
    let rep = run_suite(&infra)?;
    let deriv = rep
        .checks
        .iter()
        .filter(|c| c.tag == "derivative-contract")
        .filter_map(|c| c.residual)
        .fold(0.0, f64::max);
    let deriv_ok = rep
        .checks
        .iter()
        .filter(|c| c.tag == "derivative-contract")
        .all(|c| c.residual.is_some());
    let mut r = rng(SEED);
    let d = Domain::lightcone();
    let pts = sample_points(&d, 10, SEED)?;
    let mut jac: f64 = 0.0;
    for i in 0..100 {
        let [a, b, c] = std::array::from_fn(|_| random_operator(&mut r, 1 + i % 2, d));
        jac = jac.max(jacobi_residual(&a, &b, &c, &pts)?);
    }
    let cfg = SuiteConfig {
        nogo_trials: 500,
        ..SuiteConfig::named("all")
    };
    let first = emit_report(&run_suite(&cfg)?, ReportFormat::Json);
    let second = emit_report(&run_suite(&cfg)?, ReportFormat::Json);
    let reemit = emit_report(&VerificationReport::from_json(&first)?, ReportFormat::Json);
    let identical = first == second && first == reemit;
    outcome(
        deriv_ok && deriv < 1e-7 && jac < 1e-9 && identical,
        format!("derivative contract {deriv:.2e} (< 1e-7), Jacobi {jac:.2e} (< 1e-9), byte-identical JSON: {identical}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
    ];
    let mut unexpected = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let (pass, detail) = match f() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!(
            "{name} {verdict} [{:.1}s] {detail}",
            t.elapsed().as_secs_f64()
        );
        if !pass && !UNATTAINABLE.contains(&name) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
