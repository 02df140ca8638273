//! Experiments, reports and persistence.

mod bounds;
mod config;
pub mod io;
mod lemmas;
mod monte_carlo;
mod tables;

pub use bounds::{compare_bounds, BoundQuery, BoundReport, BoundRow};
pub use config::ExperimentConfig;
pub use lemmas::{
    quad1d_grid, verify_lemmas, CaseRecord, LemmaReport, Suite, SuiteReport, VerifyOptions, DUAL_REL_TOL,
    EM_CONSTANT_TOL, EM_TOL,
};
pub use monte_carlo::{
    run_monte_carlo, wilson_interval, HistogramRow, MonteCarloRun, MonteCarloSummary, TrialRecord, WilsonInterval,
};
pub use tables::{iota_table, phi_table, IotaRow, PhiRow};

/// Crate version recorded in every run document.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");
