use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use superpose::codec::DictionaryKind;
use superpose::harness::io::{write_csv, write_json};
use superpose::harness::{
    compare_bounds, iota_table, phi_table, run_monte_carlo, verify_lemmas, BoundQuery, BoundReport, ExperimentConfig,
    MonteCarloSummary, Suite, VerifyOptions, CODE_VERSION,
};
use superpose::{Error, Result};

/// Sparse superposition codes: bounds, simulation and lemma checks.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian and Bernoulli dictionary error bounds for one code.
    Bounds {
        /// Signal-to-noise ratio P / sigma^2.
        #[arg(long)]
        v: f64,
        /// Rate as a fraction of capacity.
        #[arg(long)]
        rate_fraction: f64,
        /// Number of sections.
        #[arg(long = "L")]
        sections: usize,
        /// Section size rate, M = L^a.
        #[arg(long)]
        a: f64,
        #[arg(long)]
        alpha0: f64,
        #[arg(long, default_value = "bernoulli")]
        dict: DictionaryKind,
        /// JSON report; the per-l table goes next to it as CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo estimate of the probability of too many section errors.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        power: Option<f64>,
        #[arg(long)]
        sigma2: Option<f64>,
        #[arg(long)]
        alpha0: Option<f64>,
        #[arg(long)]
        dict: Option<DictionaryKind>,
        #[arg(long)]
        decode_cap: Option<u64>,
        /// Output directory; falls back to `out_dir` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the numerical lemma sweeps.
    VerifyLemmas {
        /// phi, quad1d, quad2d, quad3d, em or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2000)]
        lmax: u64,
        /// Overrides the lattice-bound constant (checker sanity tests).
        #[arg(long, hide = true)]
        eta: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Table of phi(l) with its minimizer and the exact ratio.
    PhiTable {
        #[arg(long, default_value_t = 1)]
        lmin: u64,
        #[arg(long)]
        lmax: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Enumerate the exact ratio only up to this l.
        #[arg(long, default_value_t = 5000)]
        ratio_lmax: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Table of the Bernoulli penalty terms over several L.
    IotaTable {
        #[arg(long = "L-list", value_delimiter = ',', default_value = "100,1000,10000,100000")]
        sections: Vec<usize>,
        #[arg(long)]
        alpha0: f64,
        #[arg(long)]
        v: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Success, or an invariant violation worth exit status 1.
enum Outcome {
    Ok,
    Violation(String),
}

#[derive(Serialize)]
struct RunDocument<'a> {
    code_version: &'static str,
    master_seed: u64,
    config: &'a ExperimentConfig,
    summary: &'a MonteCarloSummary,
    bounds: Option<&'a BoundReport>,
    bounds_note: Option<String>,
}

fn sibling_csv(path: &Path) -> PathBuf {
    path.with_extension("csv")
}

fn bounds(
    v: f64,
    fraction: f64,
    sections: usize,
    a: f64,
    alpha0: f64,
    dict: DictionaryKind,
    out: &Path,
) -> Result<Outcome> {
    let (q, spec) = BoundQuery::from_section_rate(v, fraction, sections, a, alpha0, dict)?;
    let report = compare_bounds(&q)?;
    write_json(out, &report)?;
    write_csv(&sibling_csv(out), &report.table)?;
    println!(
        "L={} M={} n={} R={:.6} C={:.6}",
        spec.sections, spec.section_size, spec.code_length, q.rate, report.capacity
    );
    println!(
        "gaussian: E >= {:.6e}  Pr <= {:.6e}  summed <= {:.6e}",
        report.gauss.exponent_lower, report.gauss.prob_bound, report.gauss.summed_bound
    );
    println!(
        "bernoulli: E >= {:.6e}  Pr <= {:.6e}  summed <= {:.6e}  (iota = {:.6e})",
        report.ber.exponent_lower, report.ber.prob_bound, report.ber.summed_bound, report.iotas.iota
    );
    Ok(if report.is_consistent() {
        Outcome::Ok
    } else {
        Outcome::Violation("bernoulli bound below gaussian bound".into())
    })
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    config: &Path,
    trials: Option<u64>,
    seed: Option<u64>,
    threads: Option<usize>,
    power: Option<f64>,
    sigma2: Option<f64>,
    alpha0: Option<f64>,
    dict: Option<DictionaryKind>,
    decode_cap: Option<u64>,
    out: Option<PathBuf>,
) -> Result<Outcome> {
    let mut cfg = ExperimentConfig::load(config)?;
    cfg.trials = trials.unwrap_or(cfg.trials);
    cfg.master_seed = seed.unwrap_or(cfg.master_seed);
    cfg.threads = threads.or(cfg.threads);
    cfg.power = power.unwrap_or(cfg.power);
    match sigma2 {
        // keep the code of the noisy config; only the channel changes
        Some(0.0) => cfg = cfg.noiseless_control()?,
        Some(s) => cfg.sigma2 = s,
        None => {}
    }
    cfg.alpha0 = alpha0.unwrap_or(cfg.alpha0);
    cfg.dictionary = dict.unwrap_or(cfg.dictionary);
    cfg.decode_cap = decode_cap.unwrap_or(cfg.decode_cap);
    cfg.out_dir = out.or(cfg.out_dir);
    let dir = cfg
        .out_dir
        .clone()
        .ok_or_else(|| Error::Config("no output directory: pass --out or set out_dir".into()))?;
    cfg.validate()?;

    let run = run_monte_carlo(&cfg)?;
    let (report, note) = match BoundQuery::from_experiment(&cfg).and_then(|q| compare_bounds(&q)) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    std::fs::create_dir_all(&dir)?;
    write_json(
        &dir.join("run.json"),
        &RunDocument {
            code_version: CODE_VERSION,
            master_seed: cfg.master_seed,
            config: &cfg,
            summary: &run.summary,
            bounds: report.as_ref(),
            bounds_note: note,
        },
    )?;
    write_csv(&dir.join("trials.csv"), &run.records)?;
    write_csv(&dir.join("aggregate.csv"), run.summary.histogram_rows())?;
    if let Some(r) = &report {
        write_csv(&dir.join("bounds.csv"), &r.table)?;
    }

    let s = &run.summary;
    println!(
        "L={} M={} n={}: {} of {} counted trials with >= {} mistakes; Pr = {:.5} [{:.5}, {:.5}]; {} duplicate dictionaries",
        s.code.sections,
        s.code.section_size,
        s.code.code_length,
        s.events,
        s.counted_trials,
        s.event_threshold,
        s.probability,
        s.interval.low,
        s.interval.high,
        s.duplicate_dictionaries
    );
    if let Some(r) = &report {
        println!("summed bound ({}): {:.6e}", cfg.dictionary, r.summed_bound);
    }
    if cfg.sigma2 == 0.0 && s.histogram[0] != s.counted_trials {
        return Ok(Outcome::Violation(format!(
            "noiseless run decoded {} trials wrongly",
            s.counted_trials - s.histogram[0]
        )));
    }
    Ok(Outcome::Ok)
}

fn verify(suite: &str, lmax: u64, eta: Option<f64>, out: &Path) -> Result<Outcome> {
    let suites: Vec<Suite> = Suite::parse_selection(suite)?;
    let mut opts = VerifyOptions {
        lmax,
        ..VerifyOptions::default()
    };
    opts.eta = eta.unwrap_or(opts.eta);
    let report = verify_lemmas(&suites, &opts)?;
    write_json(out, &report)?;
    for s in &report.suites {
        println!(
            "{:7} {}  cases={} violations={} worst margin={:.3e} ({})",
            s.suite.name(),
            if s.passed { "PASS" } else { "FAIL" },
            s.cases,
            s.violations,
            s.worst_margin,
            s.worst_case
        );
        for n in &s.notes {
            println!("        {n}");
        }
    }
    Ok(if report.passed {
        Outcome::Ok
    } else {
        Outcome::Violation(format!("{} violations", report.violations()))
    })
}

fn phi_tab(lmin: u64, lmax: u64, step: u64, ratio_lmax: u64, out: &Path) -> Result<Outcome> {
    let rows = phi_table(lmin, lmax, step, ratio_lmax)?;
    write_csv(out, &rows)?;
    let bad = rows.iter().filter(|r| r.ratio_ok == Some(false)).count();
    println!("{} rows written to {}", rows.len(), out.display());
    Ok(if bad == 0 {
        Outcome::Ok
    } else {
        Outcome::Violation(format!("ratio above exp(phi) at {bad} values of l"))
    })
}

fn iota_tab(sections: &[usize], alpha0: f64, v: f64, out: &Path) -> Result<Outcome> {
    let rows = iota_table(sections, alpha0, v)?;
    write_csv(out, &rows)?;
    for r in &rows {
        println!(
            "L={:<7} iota={:.6e} iota*sqrt(L)={:.4} iota1={:.4e} iota2={:.4e}",
            r.sections, r.iota, r.iota_sqrt_l, r.iota1, r.iota2
        );
    }
    let bad = rows
        .iter()
        .any(|r| !(r.iota >= 0.0 && r.iota1 >= 0.0 && r.iota2 >= 0.0));
    Ok(if bad {
        Outcome::Violation("negative penalty term".into())
    } else {
        Outcome::Ok
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds {
            v,
            rate_fraction,
            sections,
            a,
            alpha0,
            dict,
            out,
        } => bounds(v, rate_fraction, sections, a, alpha0, dict, &out),
        Command::Simulate {
            config,
            trials,
            seed,
            threads,
            power,
            sigma2,
            alpha0,
            dict,
            decode_cap,
            out,
        } => simulate(
            &config, trials, seed, threads, power, sigma2, alpha0, dict, decode_cap, out,
        ),
        Command::VerifyLemmas { suite, lmax, eta, out } => verify(&suite, lmax, eta, &out),
        Command::PhiTable {
            lmin,
            lmax,
            step,
            ratio_lmax,
            out,
        } => phi_tab(lmin, lmax, step, ratio_lmax, &out),
        Command::IotaTable {
            sections,
            alpha0,
            v,
            out,
        } => iota_tab(&sections, alpha0, v, &out),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
