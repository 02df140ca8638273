//! Seeded Monte Carlo estimate of the probability that at least
//! `alpha0 L` sections are decoded wrongly, next to the analytic bound.
//!
//! ```bash
//! cargo run --release -p superpose --example monte_carlo
//! cargo run --release -p superpose --example monte_carlo -- crates/core/examples/configs/low_snr.json
//! ```

use std::path::PathBuf;

use superpose::harness::{compare_bounds, run_monte_carlo, BoundQuery, ExperimentConfig};

fn main() -> superpose::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/l6_m8.json"));
    let cfg = ExperimentConfig::load(&path)?;
    let run = run_monte_carlo(&cfg)?;
    let s = &run.summary;
    println!(
        "L={} M={} n={} v={:?}: {} trials, {} events (>= {} mistakes)",
        s.code.sections, s.code.section_size, s.code.code_length, s.snr, s.counted_trials, s.events, s.event_threshold
    );
    println!(
        "Pr = {:.5}, 95% Wilson [{:.5}, {:.5}]",
        s.probability, s.interval.low, s.interval.high
    );
    for row in s.histogram_rows() {
        println!(
            "  l={} {:>6} {}",
            row.mistakes,
            row.trials,
            "#".repeat((60.0 * row.fraction).ceil() as usize)
        );
    }

    let report = compare_bounds(&BoundQuery::from_experiment(&cfg)?)?;
    println!(
        "summed bound: gaussian {:.4e}, bernoulli {:.4e} (iota = {:.3})",
        report.gauss.summed_bound, report.ber.summed_bound, report.iotas.iota
    );

    // the same code without noise decodes perfectly
    let ctl = run_monte_carlo(&ExperimentConfig {
        trials: 100,
        ..cfg.noiseless_control()?
    })?;
    println!(
        "noiseless control: {} of {} counted trials wrong, {} duplicate dictionaries",
        ctl.summary.counted_trials - ctl.summary.histogram[0],
        ctl.summary.counted_trials,
        ctl.summary.duplicate_dictionaries
    );
    Ok(())
}
