use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spinsplit::suite::{emit_report, run_suite, ReportFormat, SuiteConfig};
use spinsplit::Error;

#[derive(Parser)]
#[command(
    name = "spinsplit",
    version,
    about = "Verify angular-momentum splittings and helicity-bundle topology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: massive, massless, splitting, topology, gauge, infrastructure or all.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    suite: String,
    /// Massive spins, comma separated.
    #[arg(long = "spin", value_delimiter = ',')]
    spins: Vec<f64>,
    /// Massless helicities, comma separated.
    #[arg(long = "helicity", value_delimiter = ',', allow_hyphen_values = true)]
    helicities: Vec<i32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    mesh_level: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// TOML file with suite settings; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output format: json or md.
    #[arg(long)]
    format: Option<ReportFormat>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config_from(args: &VerifyArgs) -> Result<SuiteConfig, Error> {
    let mut cfg = match &args.config {
        Some(p) => SuiteConfig::from_file(p)?,
        None => SuiteConfig::default(),
    };
    cfg.suite = args.suite.clone();
    if !args.spins.is_empty() {
        cfg.spins = args.spins.clone();
    }
    if !args.helicities.is_empty() {
        cfg.helicities = args.helicities.clone();
    }
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    if let Some(l) = args.mesh_level {
        cfg.mesh_level = l;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<bool, Error> {
    let cfg = config_from(args)?;
    let report = run_suite(&cfg)?;
    let text = emit_report(&report, cfg.format);
    match &args.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    for c in report.failures() {
        eprintln!(
            "FAIL {} ({}): {}",
            c.id,
            c.tag,
            c.error.as_deref().unwrap_or("bound not met")
        );
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => match verify(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
