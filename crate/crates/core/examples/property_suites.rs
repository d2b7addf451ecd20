//! Running the randomized property suites from code.
//!
//! `cargo run --release --example property_suites -- gh-oracle 200 7`

use metriclab::suites::{run_suite, SUITE_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let trials = args.get(1).map(|t| t.parse()).transpose()?.unwrap_or(20);
    let seed = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let names: Vec<&str> = match args.first() {
        Some(name) => vec![name.as_str()],
        None => SUITE_NAMES.to_vec(),
    };
    for name in names {
        let report = run_suite(name, trials, seed)?;
        println!(
            "{name:<24} checks {:>5}  failures {:>3}  unverified {:>3}  worst margin {:+.3e}",
            report.checks,
            report.failures.len(),
            report.unverified.len(),
            report.worst_margin.unwrap_or(0.0),
        );
    }
    Ok(())
}
