//! The named checks behind every suite.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::config::SuiteConfig;
use super::report::Relation;
use crate::algebra::checks::{
    check_commuting, check_so3, check_vector_operator, coefficient_extent, jacobi_residual,
    radial_drift,
};
use crate::algebra::closure::{CLOSURE_TOLERANCE, FAILURE_FLOOR};
use crate::algebra::field::C64;
use crate::algebra::fuzz::random_operator;
use crate::algebra::operator::Domain;
use crate::algebra::sampling::{rng, sample_points, SampleConfig};
use crate::error::{Error, Result};
use crate::minkowski::{MomentumPoint, Rotation};
use crate::representations::gauge::{
    coulomb_project, lorentz_gauge_complete, sam_descent_counterexample, CVec3,
};
use crate::representations::massless::{
    build_massless_J, build_parallel_perp, chart_independence_residual,
    helicity_eigenvalue_residual, parallel_deviation, rotate_section_phase,
    splitting_vector_reports, transition_function, verify_nonstandard_relations, NonstandardReport,
};
use crate::representations::nogo::{rank1_certificate, rank2_certificate};
use crate::representations::spin::{build_massive_JSL, OperatorTriple};
use crate::representations::{ambient_frame, line_frame, ChartId, FiberFrame};
use crate::topology::{
    berry_holonomy, bundle_chern, chern_number, external_frame_construction, hemisphere, icosphere,
    region_consistency, whitney_sum_chern, BundleAction, LoopPath, STABILIZER_ANGLES,
};

type Probe = Box<dyn Fn() -> Result<f64> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub tag: &'static str,
    pub tolerance: f64,
    pub relation: Relation,
    probe: Probe,
}

impl Check {
    fn new(
        id: String,
        tag: &'static str,
        tolerance: f64,
        relation: Relation,
        probe: impl Fn() -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Check {
            id,
            tag,
            tolerance,
            relation,
            probe: Box::new(probe),
        }
    }

    pub fn run(&self) -> Result<f64> {
        (self.probe)()
    }
}

/// Solid angles of the holonomy triangles.
pub const HOLONOMY_SOLID_ANGLES: [f64; 3] = [FRAC_PI_2, 0.3, 1.7];
pub const LOOP_STEPS: usize = 200;
/// Gap between an exact frame and an obstructed one.
pub const FRAME_TOLERANCE: f64 = 1e-10;
const DERIVATIVE_STEP: f64 = 1e-5;
const GAUGE_TRIALS: usize = 100;
const CONSTRUCTION_BASE: [f64; 3] = [0.0, 0.0, 1.0];

fn sc(cfg: &SuiteConfig, tol: f64) -> SampleConfig {
    SampleConfig::new(cfg.samples, cfg.seed, tol)
}

fn fmt_spin(s: f64) -> String {
    format!("s={s}")
}

/// Checks of the named suite, in registration order.
pub fn registry(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let all = cfg.suite == "all";
    let mut matched = false;
    let mut add = |name: &str, f: fn(&SuiteConfig, &mut Vec<Check>)| {
        if all || cfg.suite == name {
            matched = true;
            f(cfg, &mut out);
        }
    };
    add("massive", massive);
    add("massless", massless);
    add("splitting", splitting);
    add("topology", topology);
    add("gauge", gauge);
    add("infrastructure", infrastructure);
    if !matched {
        return Err(Error::Usage(format!("unknown suite `{}`", cfg.suite)));
    }
    Ok(out)
}

fn massive(cfg: &SuiteConfig, out: &mut Vec<Check>) {
    for &s in &cfg.spins {
        let base = format!("massive/{}", fmt_spin(s));
        let mass = cfg.mass;
        let c = sc(cfg, 1e-10);
        let split = Arc::new(OnceLock::new());
        let get = move |split: &Arc<OnceLock<Result<crate::representations::MassiveSplit>>>| {
            split.get_or_init(|| build_massive_JSL(s, mass)).clone()
        };
        for (name, pick) in [("J", 0usize), ("S", 1), ("L", 2)] {
            let sp = split.clone();
            out.push(Check::new(
                format!("{base}/so3-{name}"),
                "so3",
                1e-10,
                Relation::Below,
                move || {
                    let m = get(&sp)?;
                    let t = [&m.j, &m.s, &m.l][pick];
                    Ok(check_so3(t.ops(), &c)?.max_residual)
                },
            ));
        }
        for (name, pick) in [("S", 1usize), ("L", 2)] {
            let sp = split.clone();
            out.push(Check::new(
                format!("{base}/vector-{name}"),
                "vector-operator",
                1e-10,
                Relation::Below,
                move || {
                    let m = get(&sp)?;
                    let t = [&m.j, &m.s, &m.l][pick];
                    Ok(check_vector_operator(t.ops(), m.j.ops(), &c)?.max_residual)
                },
            ));
        }
        let sp = split.clone();
        out.push(Check::new(
            format!("{base}/commuting-S-L"),
            "commuting",
            1e-10,
            Relation::Below,
            move || {
                let m = get(&sp)?;
                Ok(check_commuting(m.s.ops(), m.l.ops(), &c)?.max_residual)
            },
        ));
        let sp = split.clone();
        out.push(Check::new(
            format!("{base}/internal-S"),
            "internal",
            1e-14,
            Relation::Below,
            move || {
                let m = get(&sp)?;
                let pts = sample_points(&m.s.domain(), c.samples, c.seed)?;
                Ok(coefficient_extent(m.s.ops(), &pts).0)
            },
        ));
        let sp = split.clone();
        out.push(Check::new(
            format!("{base}/external-L"),
            "external",
            1e-14,
            Relation::Below,
            move || {
                let m = get(&sp)?;
                let pts = sample_points(&m.l.domain(), c.samples, c.seed)?;
                Ok(coefficient_extent(m.l.ops(), &pts).1)
            },
        ));
        let sp = split;
        out.push(Check::new(
            format!("{base}/energy"),
            "energy",
            1e-10,
            Relation::Below,
            move || {
                let m = get(&sp)?;
                let pts = sample_points(&m.j.domain(), c.samples, c.seed)?;
                let ops: Vec<_> = [&m.j, &m.s, &m.l]
                    .iter()
                    .flat_map(|t| t.ops().to_vec())
                    .collect();
                Ok(radial_drift(&ops, &pts))
            },
        ));
    }
}

fn massless(cfg: &SuiteConfig, out: &mut Vec<Check>) {
    for &h in &cfg.helicities {
        let base = format!("massless/h={h}");
        let c = sc(cfg, 1e-8);
        for chart in [ChartId::North, ChartId::South] {
            let name = if chart == ChartId::North {
                "north"
            } else {
                "south"
            };
            out.push(Check::new(
                format!("{base}/so3-J-{name}"),
                "so3",
                1e-8,
                Relation::Below,
                move || Ok(check_so3(build_massless_J(h, chart)?.ops(), &c)?.max_residual),
            ));
        }
        out.push(Check::new(
            format!("{base}/helicity"),
            "helicity",
            1e-9,
            Relation::Below,
            move || helicity_eigenvalue_residual(&build_massless_J(h, ChartId::North)?, h, &c),
        ));
        out.push(Check::new(
            format!("{base}/transition"),
            "transition",
            1e-8,
            Relation::Below,
            move || chart_independence_residual(h, &c),
        ));
        out.push(Check::new(
            format!("{base}/little-group-phase"),
            "little-group",
            1e-12,
            Relation::Below,
            move || {
                let frame = line_frame(h, ChartId::North)?;
                let k = MomentumPoint::massless([0.0, 0.0, 1.0])?;
                let mut worst: f64 = 0.0;
                for phi in [0.7, -2.1, PI] {
                    let got = rotate_section_phase(&Rotation::about(2, phi), &k, &frame)?;
                    worst = worst.max((got - C64::from_polar(1.0, -(h as f64) * phi)).norm());
                }
                Ok(worst)
            },
        ));
    }
    let (trials, seed) = (cfg.nogo_trials, cfg.seed);
    out.push(Check::new(
        "massless/nogo/rank1".into(),
        "nogo-rank1",
        1e-7,
        Relation::Below,
        move || {
            let cert = rank1_certificate(
                trials,
                seed,
                1e-7,
                &SampleConfig::new(10, seed, CLOSURE_TOLERANCE),
            )?;
            Ok(cert.max_witness)
        },
    ));
    out.push(Check::new(
        "massless/nogo/rank2".into(),
        "nogo-rank2",
        1e-7,
        Relation::Below,
        move || Ok(rank2_certificate(trials, seed, 1e-7, CLOSURE_TOLERANCE)?.max_witness),
    ));
}

type Splitting = (
    OperatorTriple,
    OperatorTriple,
    OperatorTriple,
    NonstandardReport,
);

fn splitting(cfg: &SuiteConfig, out: &mut Vec<Check>) {
    for &h in &cfg.helicities {
        let base = format!("splitting/h={h}");
        let c = sc(cfg, CLOSURE_TOLERANCE);
        let cell: Arc<OnceLock<Result<Splitting>>> = Arc::new(OnceLock::new());
        let get = move |cell: &Arc<OnceLock<Result<Splitting>>>| -> Result<Splitting> {
            cell.get_or_init(|| {
                let j = build_massless_J(h, ChartId::North)?;
                let (par, perp) = build_parallel_perp(&j)?;
                let rep = verify_nonstandard_relations(&par, &perp, &c)?;
                Ok((j, par, perp, rep))
            })
            .clone()
        };
        let entries: [(
            &str,
            &'static str,
            f64,
            Relation,
            fn(&Splitting, &SampleConfig, i32) -> Result<f64>,
        ); 10] = [
            (
                "parallel-form",
                "parallel-form",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, c, h| parallel_deviation(&s.1, h, c),
            ),
            (
                "parallel-abelian",
                "parallel-abelian",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, _, _| Ok(s.3.parallel_abelian.max_residual),
            ),
            (
                "perp-parallel",
                "perp-parallel",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, _, _| Ok(s.3.perp_parallel.max_residual),
            ),
            (
                "perp-perp",
                "perp-perp",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, _, _| Ok(s.3.perp_perp.max_residual),
            ),
            (
                "vector-parallel",
                "vector-operator",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, c, _| {
                    Ok(splitting_vector_reports(&s.0, &s.1, &s.2, c)?
                        .0
                        .max_residual)
                },
            ),
            (
                "vector-perp",
                "vector-operator",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, c, _| {
                    Ok(splitting_vector_reports(&s.0, &s.1, &s.2, c)?
                        .1
                        .max_residual)
                },
            ),
            (
                "closure-parallel-constants",
                "closure",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, _, _| Ok(s.3.parallel_fit.max_abs_constant()),
            ),
            (
                "closure-parallel-residual",
                "closure",
                CLOSURE_TOLERANCE,
                Relation::Below,
                |s, _, _| Ok(s.3.parallel_fit.residual),
            ),
            (
                "nonclosure-perp",
                "non-closure",
                FAILURE_FLOOR,
                Relation::Above,
                |s, _, _| Ok(s.3.perp_fit.residual),
            ),
            (
                "closure-gap",
                "closure-gap",
                0.5,
                Relation::Below,
                |s, _, _| {
                    let inside = |r: f64| (CLOSURE_TOLERANCE..=FAILURE_FLOOR).contains(&r);
                    Ok([s.3.parallel_fit.residual, s.3.perp_fit.residual]
                        .into_iter()
                        .filter(|r| inside(*r))
                        .count() as f64)
                },
            ),
        ];
        for (name, tag, tol, rel, f) in entries {
            let cell = cell.clone();
            out.push(Check::new(
                format!("{base}/{name}"),
                tag,
                tol,
                rel,
                move || f(&get(&cell)?, &c, h),
            ));
        }
    }
}

/// Equilateral spherical triangle of solid angle `omega` centred on `axis`,
/// counterclockwise seen from outside. The size is solved from Girard's
/// excess formula, independently of the loop's own solid-angle routine.
pub fn triangle_with_solid_angle(omega: f64, axis: [f64; 3]) -> Result<[[f64; 3]; 3]> {
    if !(omega > 0.0 && omega < TAU) {
        return Err(Error::Domain(format!(
            "equilateral triangles have solid angle in (0, 2π), got {omega}"
        )));
    }
    let excess = |beta: f64| {
        let cos_side = beta.cos().powi(2) + beta.sin().powi(2) * (TAU / 3.0).cos();
        3.0 * (cos_side / (1.0 + cos_side)).acos() - PI
    };
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) < omega {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta = 0.5 * (lo + hi);
    let g = Rotation::minimal([0.0, 0.0, 1.0], axis)?;
    Ok(std::array::from_fn(|i| {
        let phi = TAU * i as f64 / 3.0;
        g.apply([beta.sin() * phi.cos(), beta.sin() * phi.sin(), beta.cos()])
    }))
}

const HOLONOMY_AXIS: [f64; 3] = [0.3, -0.5, 0.8];

fn chern_frames(cfg: &SuiteConfig) -> Vec<(String, FiberFrame, BundleAction)> {
    let mut hs: Vec<i32> = cfg.helicities.clone();
    hs.push(0);
    hs.sort_unstable();
    hs.dedup();
    let mut v: Vec<_> = hs
        .into_iter()
        .map(|h| {
            (
                format!("h={h}"),
                line_frame(h, ChartId::North).expect("|h| <= 2"),
                BundleAction::Natural,
            )
        })
        .collect();
    v.push((
        "ambient3".into(),
        ambient_frame(3).expect("rank 3"),
        BundleAction::BaseOnly,
    ));
    v
}

fn topology(cfg: &SuiteConfig, out: &mut Vec<Check>) {
    let level = cfg.mesh_level;
    let mut hs: Vec<i32> = cfg.helicities.clone();
    hs.push(0);
    hs.sort_unstable();
    hs.dedup();
    for &h in &hs {
        out.push(Check::new(
            format!("topology/chern/h={h}"),
            "chern",
            0.5,
            Relation::Below,
            move || {
                let c = chern_number(&line_frame(h, ChartId::North)?, &icosphere(level)?)?;
                Ok((c.chern + 2 * h as i64).abs() as f64)
            },
        ));
    }
    let mut pos: Vec<i32> = cfg.helicities.iter().map(|h| h.abs()).collect();
    pos.sort_unstable();
    pos.dedup();
    for h in pos {
        out.push(Check::new(
            format!("topology/whitney/h=+-{h}"),
            "whitney",
            0.5,
            Relation::Below,
            move || {
                let f = |h| line_frame(h, ChartId::North);
                Ok(whitney_sum_chern(&[f(h)?, f(-h)?], &icosphere(level)?)?
                    .chern
                    .abs() as f64)
            },
        ));
    }
    for (i, &omega) in HOLONOMY_SOLID_ANGLES.iter().enumerate() {
        out.push(Check::new(
            format!("topology/solid-angle/{i}"),
            "solid-angle",
            1e-9,
            Relation::Below,
            move || {
                let path = LoopPath::geodesic_polygon(
                    &triangle_with_solid_angle(omega, HOLONOMY_AXIS)?,
                    LOOP_STEPS,
                )?;
                Ok((path.solid_angle() - omega).abs())
            },
        ));
    }
    for &h in &cfg.helicities {
        out.push(Check::new(
            format!("topology/holonomy/h={h}"),
            "holonomy",
            1e-6,
            Relation::Below,
            move || {
                let frame = line_frame(h, ChartId::North)?;
                let mut worst: f64 = 0.0;
                for omega in HOLONOMY_SOLID_ANGLES {
                    let path = LoopPath::geodesic_polygon(
                        &triangle_with_solid_angle(omega, HOLONOMY_AXIS)?,
                        LOOP_STEPS,
                    )?;
                    let hol = berry_holonomy(&frame, &path)?;
                    worst = worst.max((hol - C64::from_polar(1.0, h as f64 * omega)).norm());
                }
                Ok(worst)
            },
        ));
        out.push(Check::new(
            format!("topology/stokes/h={h}"),
            "stokes",
            1e-6,
            Relation::Below,
            move || {
                let frame = line_frame(h, ChartId::North)?;
                let mesh = icosphere(level)?;
                let mut worst: f64 = 0.0;
                for axis in [[0.0, 0.0, 1.0], [0.3, -0.8, 0.1], [1.0, 1.0, -1.0]] {
                    worst =
                        worst.max(region_consistency(&frame, &mesh, &hemisphere(&mesh, axis))?.2);
                }
                Ok(worst)
            },
        ));
        out.push(Check::new(
            format!("topology/stabilizer-phase/h={h}"),
            "stabilizer-phase",
            1e-10,
            Relation::Below,
            move || {
                let c = external_frame_construction(
                    &line_frame(h, ChartId::North)?,
                    BundleAction::Natural,
                    CONSTRUCTION_BASE,
                    &icosphere(level)?,
                    &STABILIZER_ANGLES,
                )?;
                let mut worst: f64 = 0.0;
                for &(theta, r) in &c.residual_by_angle {
                    worst = worst.max(
                        (r - (C64::new(1.0, 0.0) - C64::from_polar(1.0, -(h as f64) * theta))
                            .norm())
                        .abs(),
                    );
                }
                Ok(worst)
            },
        ));
    }
    for (name, frame, action) in chern_frames(cfg) {
        let trivial = frame.helicity().unwrap_or(0) == 0;
        let (tag, tol, rel) = if trivial {
            ("external-frame", FRAME_TOLERANCE, Relation::Below)
        } else {
            ("obstruction", 1.0, Relation::AtLeast)
        };
        out.push(Check::new(
            format!("topology/frame/{name}"),
            tag,
            tol,
            rel,
            move || {
                Ok(external_frame_construction(
                    &frame,
                    action,
                    CONSTRUCTION_BASE,
                    &icosphere(level)?,
                    &STABILIZER_ANGLES,
                )?
                .residual)
            },
        ));
    }
    let frames = chern_frames(cfg);
    out.push(Check::new(
        "topology/frame-equivalence".into(),
        "equivalence",
        0.5,
        Relation::Below,
        move || {
            let mesh = icosphere(level)?;
            let mut mismatches = 0usize;
            for (_, frame, action) in &frames {
                let c = bundle_chern(frame, &mesh)?.chern;
                let r = external_frame_construction(
                    frame,
                    *action,
                    CONSTRUCTION_BASE,
                    &mesh,
                    &STABILIZER_ANGLES,
                )?
                .residual;
                if (r < FRAME_TOLERANCE) != (c == 0) {
                    mismatches += 1;
                }
            }
            Ok(mismatches as f64)
        },
    ));
}

fn random_potential(r: &mut impl Rng) -> ([f64; 3], CVec3) {
    let k = std::array::from_fn(|_| r.random_range(-2.0..2.0));
    let a = std::array::from_fn(|_| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    (k, a)
}

fn cdist(a: &CVec3, b: &CVec3) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn gauge(cfg: &SuiteConfig, out: &mut Vec<Check>) {
    let seed = cfg.seed;
    out.push(Check::new(
        "gauge/lorentz-condition".into(),
        "lorentz-gauge",
        1e-12,
        Relation::Below,
        move || {
            let mut r = rng(seed);
            let mut worst: f64 = 0.0;
            for _ in 0..GAUGE_TRIALS {
                let (k, a) = random_potential(&mut r);
                let p = lorentz_gauge_complete(k, a)?;
                let kdot: C64 = (0..3).map(|i| a[i] * k[i]).sum();
                worst = worst.max((p.a0 * p.k.energy() - kdot).norm() / (1.0 + kdot.norm()));
            }
            Ok(worst)
        },
    ));
    out.push(Check::new(
        "gauge/coulomb-idempotent".into(),
        "coulomb-idempotent",
        1e-12,
        Relation::Below,
        move || {
            let mut r = rng(seed);
            let mut worst: f64 = 0.0;
            for _ in 0..GAUGE_TRIALS {
                let (k, a) = random_potential(&mut r);
                let p = coulomb_project(k, &a)?;
                worst = worst.max(cdist(&coulomb_project(k, &p)?, &p));
            }
            Ok(worst)
        },
    ));
    out.push(Check::new(
        "gauge/coulomb-class".into(),
        "gauge-class",
        1e-10,
        Relation::Below,
        move || {
            let mut r = rng(seed ^ 1);
            let mut worst: f64 = 0.0;
            for _ in 0..GAUGE_TRIALS {
                let (k, a) = random_potential(&mut r);
                let alpha: f64 = r.random_range(-3.0..3.0);
                let b: CVec3 = std::array::from_fn(|i| a[i] + alpha * k[i]);
                worst = worst.max(cdist(&coulomb_project(k, &a)?, &coulomb_project(k, &b)?));
            }
            Ok(worst)
        },
    ));
    out.push(Check::new(
        "gauge/sam-descent".into(),
        "sam-descent",
        1e-10,
        Relation::Below,
        || {
            let a = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
            let w = sam_descent_counterexample(
                [0.0, 0.0, 1.0],
                &a,
                1.0,
                &Rotation::about(0, FRAC_PI_2),
            )?;
            if w.degenerate {
                return Err(Error::Degenerate(
                    "rotation fixes the momentum direction".into(),
                ));
            }
            Ok((w.distance - 1.0).abs())
        },
    ));
}

/// Every operator family whose coefficients the suites differentiate.
pub fn coefficient_families(cfg: &SuiteConfig) -> Result<Vec<(String, Vec<OperatorTriple>)>> {
    let mut out = Vec::new();
    for &s in &cfg.spins {
        let m = build_massive_JSL(s, cfg.mass)?;
        out.push((format!("massive-{}", fmt_spin(s)), vec![m.j, m.s, m.l]));
    }
    for &h in &cfg.helicities {
        for chart in [ChartId::North, ChartId::South] {
            let j = build_massless_J(h, chart)?;
            let (par, perp) = build_parallel_perp(&j)?;
            out.push((
                format!("massless-h={h}-{chart:?}").to_lowercase(),
                vec![j, par, perp],
            ));
        }
    }
    Ok(out)
}

fn derivative_contract(triples: &[OperatorTriple], seed: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t in triples {
        let pts = sample_points(&t.domain(), 20, seed)?;
        for op in t.ops() {
            let fields: Vec<_> = (0..3).map(|a| op.drift_field(a)).collect();
            let fiber = op.fiber_field();
            for &k in &pts {
                for f in &fields {
                    worst = worst.max(f.derivative_deviation(k, DERIVATIVE_STEP)?);
                }
                worst = worst.max(fiber.derivative_deviation(k, DERIVATIVE_STEP)?);
            }
        }
    }
    Ok(worst)
}

fn infrastructure(cfg: &SuiteConfig, out: &mut Vec<Check>) {
    for &s in &cfg.spins {
        let (mass, seed) = (cfg.mass, cfg.seed);
        out.push(Check::new(
            format!("infrastructure/derivative/massive-{}", fmt_spin(s)),
            "derivative-contract",
            1e-7,
            Relation::Below,
            move || {
                let m = build_massive_JSL(s, mass)?;
                derivative_contract(&[m.j, m.s, m.l], seed)
            },
        ));
    }
    for &h in &cfg.helicities {
        let seed = cfg.seed;
        out.push(Check::new(
            format!("infrastructure/derivative/massless-h={h}"),
            "derivative-contract",
            1e-7,
            Relation::Below,
            move || {
                let mut triples = Vec::new();
                for chart in [ChartId::North, ChartId::South] {
                    let j = build_massless_J(h, chart)?;
                    let (par, perp) = build_parallel_perp(&j)?;
                    triples.extend([j, par, perp]);
                }
                let mut worst = derivative_contract(&triples, seed)?;
                let (tau, tau_inv) = transition_function(h)?;
                for k in
                    sample_points(&crate::representations::massless::chart_overlap(), 20, seed)?
                {
                    worst = worst.max(tau.derivative_deviation(k, DERIVATIVE_STEP)?);
                    worst = worst.max(tau_inv.derivative_deviation(k, DERIVATIVE_STEP)?);
                }
                Ok(worst)
            },
        ));
    }
    let (n, seed) = (cfg.fuzz_triples, cfg.seed);
    out.push(Check::new(
        "infrastructure/jacobi-fuzz".into(),
        "jacobi",
        1e-9,
        Relation::Below,
        move || {
            let mut r = rng(seed);
            let d = Domain::lightcone();
            let pts = sample_points(&d, 10, seed)?;
            let mut worst: f64 = 0.0;
            for i in 0..n {
                let rank = 1 + i % 2;
                let [a, b, c] = std::array::from_fn(|_| random_operator(&mut r, rank, d));
                worst = worst.max(jacobi_residual(&a, &b, &c, &pts)?);
            }
            Ok(worst)
        },
    ));
}
