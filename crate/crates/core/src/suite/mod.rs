//! Named verification campaigns over the operator, representation and
//! topology layers, with deterministic reports.

pub mod config;
pub mod registry;
pub mod report;

use rayon::prelude::*;

pub use config::{ReportFormat, SuiteConfig, SUITES};
pub use registry::{registry, triangle_with_solid_angle, Check};
pub use report::{emit_report, CheckRecord, Relation, Verdict, VerificationReport};

use crate::error::Result;

/// Ids of the checks `run_suite` would execute, sorted as in the report.
pub fn registered_ids(cfg: &SuiteConfig) -> Result<Vec<String>> {
    cfg.validate()?;
    let mut ids: Vec<String> = registry(cfg)?.into_iter().map(|c| c.id).collect();
    ids.sort();
    Ok(ids)
}

/// Runs every check of the configured suite. Check failures and numerical
/// errors are recorded in the report; only invalid configurations are `Err`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let checks = registry(cfg)?;
    let records: Vec<CheckRecord> = checks
        .par_iter()
        .map(|c| {
            let tol = cfg.tolerances.get(c.tag).copied().unwrap_or(c.tolerance);
            match c.run() {
                Ok(r) => CheckRecord::measured(c.id.clone(), c.tag.into(), r, tol, c.relation),
                Err(e) => CheckRecord::errored(c.id.clone(), c.tag.into(), tol, c.relation, &e),
            }
        })
        .collect();
    Ok(VerificationReport::new(&cfg.suite, cfg.seed, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn massive_spin_one_passes() {
        let cfg = SuiteConfig {
            spins: vec![1.0],
            ..SuiteConfig::named("massive")
        };
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().all(|c| c.residual.unwrap() < 1e-10));
        assert_eq!(r.checks.len(), registered_ids(&cfg).unwrap().len());
    }

    #[test]
    fn tolerance_overrides_apply_by_tag() {
        let cfg = SuiteConfig {
            tolerances: [("coulomb-idempotent".to_string(), 1e-300)].into(),
            ..SuiteConfig::named("gauge")
        };
        let r = run_suite(&cfg).unwrap();
        let c = r
            .checks
            .iter()
            .find(|c| c.tag == "coulomb-idempotent")
            .unwrap();
        assert_eq!(c.tolerance, 1e-300);
    }
}
