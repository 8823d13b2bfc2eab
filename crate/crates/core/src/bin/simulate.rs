use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use porous_spectral::run::{parse_config, run, ExitStatus};

/// Integrate an interface model from a key = value config and write CSV outputs.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// Path to the run configuration.
    config: PathBuf,
    /// Overrides `output_dir`.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Overrides `resolution`.
    #[arg(long)]
    resolution: Option<usize>,
    /// Overrides `time.t_end`.
    #[arg(long)]
    t_end: Option<f64>,
}

fn exit(status: ExitStatus) -> ExitCode {
    ExitCode::from(status.code() as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return exit(ExitStatus::ParseError);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.config.display());
            return exit(ExitStatus::IoError);
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return exit(ExitStatus::ParseError);
        }
    };
    if let Err(e) = config.apply_overrides(args.output_dir, args.resolution, args.t_end) {
        eprintln!("{e}");
        return exit(ExitStatus::ParseError);
    }
    let report = run(&config);
    if let Some(msg) = &report.message {
        eprintln!("{msg}");
    }
    if report.status == ExitStatus::Success {
        println!("wrote {} files to {}", report.files.len(), config.output_dir.display());
    }
    exit(report.status)
}
