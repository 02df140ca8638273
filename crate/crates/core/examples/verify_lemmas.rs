//! Runs every verification sweep and prints a one-line verdict per suite.
//!
//! ```bash
//! cargo run --release -p superpose --example verify_lemmas
//! ```

use superpose::harness::{verify_lemmas, Suite, VerifyOptions};

fn main() -> superpose::Result<()> {
    let report = verify_lemmas(&Suite::ALL, &VerifyOptions::default())?;
    for s in &report.suites {
        println!(
            "{:7} {} {:4} cases, worst margin {:.3e} ({})",
            s.suite.name(),
            if s.passed { "pass" } else { "FAIL" },
            s.cases,
            s.worst_margin,
            s.worst_case
        );
        for n in &s.notes {
            println!("          {n}");
        }
    }
    if !report.passed {
        std::process::exit(1);
    }
    Ok(())
}
