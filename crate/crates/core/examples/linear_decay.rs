//! Runs a configuration file end to end and reports the written files.
//!
//! `cargo run --example linear_decay -- examples/configs/linear_decay.cfg`

use std::path::PathBuf;

use porous_spectral::run::{parse_config, run};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/linear_decay.cfg"));
    let mut config = parse_config(&std::fs::read_to_string(&path)?)?;
    config.output_dir = std::env::temp_dir().join("porous_spectral_linear_decay");

    let report = run(&config);
    println!("status {:?} (exit code {})", report.status, report.status.code());
    println!("{} files in {}", report.files.len(), config.output_dir.display());
    let diag = std::fs::read_to_string(config.output_dir.join("diagnostics.csv"))?;
    for line in diag.lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
