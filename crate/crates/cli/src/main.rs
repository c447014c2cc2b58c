use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cone_gauge::job::{Cpx, ConeSpec, JobPayload, JobSpec};
use cone_gauge::run::execute;

/// Spectral-gap certification on real and complex cones.
#[derive(Parser)]
#[command(name = "cone-gauge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the certificate (and optional eigenvalue oracle) of a job file.
    Certify {
        /// Path to the JSON job file.
        job: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Run the top-two eigenvalue oracle regardless of the job setting.
        #[arg(long)]
        oracle: bool,
        /// Override the job's sampling seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Execute the full reproduction suite and print pass/fail per criterion.
    Reproduce {
        /// Run only criteria whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Evaluate the projective gauge between two complex vectors.
    Gauge {
        /// JSON file with the cone description.
        #[arg(long)]
        cone: PathBuf,
        /// JSON file with the first vector as [re, im] pairs.
        #[arg(long)]
        x: PathBuf,
        /// JSON file with the second vector as [re, im] pairs.
        #[arg(long)]
        y: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

/// CONE_GAUGE_THREADS caps internal parallelism of the dense scans.
fn configure_threads() {
    if let Ok(v) = std::env::var("CONE_GAUGE_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, (u8, String)> {
    match cli.command {
        Command::Certify { job, out, oracle, seed } => {
            let text = std::fs::read_to_string(&job)
                .map_err(|e| (2u8, format!("cannot read {}: {e}", job.display())))?;
            let mut spec: JobSpec =
                serde_json::from_str(&text).map_err(|e| (2u8, format!("invalid job file: {e}")))?;
            if oracle {
                spec.oracle = true;
            }
            if let Some(s) = seed {
                spec.seed = s;
            }
            emit(&spec, out)
        }
        Command::Reproduce { filter } => {
            let outcomes = cone_gauge_core::suite::run(filter.as_deref());
            if outcomes.is_empty() {
                return Err((2, "no criterion matches the filter".into()));
            }
            let mut all_ok = true;
            for outcome in &outcomes {
                for line in &outcome.lines {
                    println!("  {line}");
                }
                println!("{}", outcome.summary());
                all_ok &= outcome.passed;
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gauge { cone, x, y, out } => {
            let cone: ConeSpec = read_json(&cone)?;
            let x: Vec<Cpx> = read_json(&x)?;
            let y: Vec<Cpx> = read_json(&y)?;
            let spec = JobSpec {
                payload: JobPayload::Gauge { cone, x, y },
                oracle: false,
                seed: 0,
            };
            emit(&spec, out)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (2u8, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| (2u8, format!("invalid file {}: {e}", path.display())))
}

fn emit(spec: &JobSpec, out: Option<PathBuf>) -> Result<ExitCode, (u8, String)> {
    match execute(spec) {
        Ok(report) => {
            let text = report.to_json();
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| (2u8, format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err((e.exit_code as u8, e.message)),
    }
}
