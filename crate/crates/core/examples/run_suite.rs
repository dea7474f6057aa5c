//! Runs every verification suite from code and prints the report summary.
//! `cargo run --example run_suite -- 3` uses seed 3.

use loewner_dbr::suite::{run, Entry, SuiteConfig};

fn main() -> loewner_dbr::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = run(&SuiteConfig {
        seed,
        ..SuiteConfig::default()
    })?;
    for entry in &report.entries {
        let mark = if entry.pass() { "ok  " } else { "FAIL" };
        match entry {
            Entry::Identity { suite, report } => {
                println!(
                    "{mark} {:<20} {:<30} {:.2e}",
                    suite.as_str(),
                    report.identity_name,
                    report.max_abs_err
                )
            }
            Entry::Membership { suite, entry } => {
                println!(
                    "{mark} {:<20} {:<30} {:?}",
                    suite.as_str(),
                    entry.case,
                    entry.report.verdict
                )
            }
            Entry::Error { suite, message, .. } => println!("{mark} {:<20} {message}", suite.as_str()),
        }
    }
    println!("seed {seed}: pass {}, {} ms", report.pass, report.wall_clock_ms);
    Ok(())
}
