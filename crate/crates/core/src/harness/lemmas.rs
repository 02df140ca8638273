//! Sweeps checking the ratio bound, the lattice-sum bounds and the
//! Euler-Maclaurin identity, reported case by case.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{
    assemble_a, b_lambda_limit, binom_gauss_ratio, eta, proof_matrix_b, proof_matrix_btilde, BtildeSign, PhiTable,
};
use crate::error::{Error, Result};
use crate::quadrature::{
    discretized_gauss_1d_with_eta, discretized_gauss_2d_with_eta, discretized_gauss_3d_with_eta,
    em_bound_constant_check, euler_maclaurin_m0, extended_em_identity, GaussNd, GaussianBump, Polynomial,
    SmoothFunction,
};

/// Agreement required between the two ways of integrating out the
/// continuous axis.
pub const DUAL_REL_TOL: f64 = 1e-9;
/// Largest allowed gap between the two sides of the Euler-Maclaurin identity.
pub const EM_TOL: f64 = 1e-10;
/// Tolerance on the min-max kernel constant.
pub const EM_CONSTANT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Phi,
    Quad1d,
    Quad2d,
    Quad3d,
    Em,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Phi, Suite::Quad1d, Suite::Quad2d, Suite::Quad3d, Suite::Em];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Phi => "phi",
            Suite::Quad1d => "quad1d",
            Suite::Quad2d => "quad2d",
            Suite::Quad3d => "quad3d",
            Suite::Em => "em",
        }
    }

    /// Parses a suite name, or `all`.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| vec![x])
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown suite {s:?}; expected phi, quad1d, quad2d, quad3d, em or all"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Upper end of the `l` range in the ratio suite.
    pub lmax: u64,
    /// Constant used in the lattice-sum bounds; the true value unless
    /// deliberately corrupted to test the checker.
    pub eta: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { lmax: 2000, eta: eta() }
    }
}

/// One checked case. `margin = bound - value`; the case passes when it is
/// non-negative and any secondary check (`dual_rel_diff`) is within tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub suite: String,
    pub case: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_rel_diff: Option<f64>,
    pub ok: bool,
}

impl CaseRecord {
    fn new(suite: Suite, case: String, value: f64, bound: f64) -> Self {
        Self {
            suite: suite.name().into(),
            case,
            value,
            bound,
            margin: bound - value,
            dual_rel_diff: None,
            ok: value <= bound,
        }
    }

    fn from_lattice(suite: Suite, case: String, g: &GaussNd) -> Self {
        let mut r = Self::new(suite, case, g.ratio, g.bound_factor);
        r.dual_rel_diff = Some(g.dual_rel_diff);
        r.ok = g.bound_ok && g.dual_rel_diff <= DUAL_REL_TOL;
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub worst_case: String,
    pub passed: bool,
    pub notes: Vec<String>,
    pub records: Vec<CaseRecord>,
}

impl SuiteReport {
    fn from_records(suite: Suite, records: Vec<CaseRecord>, notes: Vec<String>) -> Self {
        let violations = records.iter().filter(|r| !r.ok).count();
        let worst = records
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
            .map(|r| (r.margin, r.case.clone()))
            .unwrap_or((f64::INFINITY, String::new()));
        Self {
            suite,
            cases: records.len(),
            violations,
            worst_margin: worst.0,
            worst_case: worst.1,
            passed: violations == 0 && !records.is_empty(),
            notes,
            records,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub options: VerifyOptions,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl LemmaReport {
    pub fn violations(&self) -> usize {
        self.suites.iter().map(|s| s.violations).sum()
    }
}

pub fn verify_lemmas(suites: &[Suite], opts: &VerifyOptions) -> Result<LemmaReport> {
    let reports = suites
        .iter()
        .map(|&s| {
            log::info!("running {} sweep", s.name());
            match s {
                Suite::Phi => phi_suite(opts.lmax),
                Suite::Quad1d => quad1d_suite(opts.eta),
                Suite::Quad2d => quad2d_suite(opts.eta),
                Suite::Quad3d => quad3d_suite(opts.eta),
                Suite::Em => em_suite(),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LemmaReport {
        options: *opts,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    })
}

/// Ratio bound for every `l <= lmax`, and `phi(l) <= 5/l` for `l >= 1000`.
fn phi_suite(lmax: u64) -> Result<SuiteReport> {
    if lmax < 1 {
        return Err(Error::Config("lmax must be at least 1".into()));
    }
    let table = PhiTable::shared(lmax);
    let mut records = (1..=lmax)
        .into_par_iter()
        .map(|l| {
            let r = binom_gauss_ratio(l)?;
            Ok(CaseRecord::new(
                Suite::Phi,
                format!("ratio l={l} k={}", r.argmax_k),
                r.ln_max_ratio,
                table.phi(l),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    records
        .extend((1000..=lmax).map(|l| CaseRecord::new(Suite::Phi, format!("5/l l={l}"), table.phi(l), 5.0 / l as f64)));
    Ok(SuiteReport::from_records(Suite::Phi, records, vec![]))
}

/// `n` over powers of two to 4096, `s` on a 16-point log grid over
/// `[0.1, 4]`, `mu` in `{0, h/3, pi/10}`.
pub fn quad1d_grid() -> Vec<(u64, f64, f64)> {
    let ns: Vec<u64> = (0..=12).map(|k| 1u64 << k).collect();
    let ss: Vec<f64> = (0..16).map(|i| 0.1 * 40f64.powf(i as f64 / 15.0)).collect();
    let mut cases = Vec::new();
    for &n in &ns {
        let h = 2.0 / (n as f64).sqrt();
        for &s in &ss {
            for mu in [0.0, h / 3.0, PI / 10.0] {
                cases.push((n, s, mu));
            }
        }
    }
    cases
}

fn quad1d_suite(eta: f64) -> Result<SuiteReport> {
    let results = quad1d_grid()
        .into_par_iter()
        .map(|(n, s, mu)| discretized_gauss_1d_with_eta(n, mu, s, eta))
        .collect::<Result<Vec<_>>>()?;
    let worst = results
        .iter()
        .max_by(|a, b| a.normalized_margin.total_cmp(&b.normalized_margin))
        .expect("grid is non-empty");
    let notes = vec![format!(
        "max normalized margin (I_d/I_c - 1) n / (eta s^2) = {:.6} at n={} s={:.4} mu={:.6}",
        worst.normalized_margin, worst.n, worst.s, worst.mu
    )];
    // ratio <= 1 + eta s^2/n is the same as normalized margin <= 1
    let records = results
        .iter()
        .map(|g| {
            let mut r = CaseRecord::new(
                Suite::Quad1d,
                format!("n={} s={:.4} mu={:.6}", g.n, g.s, g.mu),
                g.ratio,
                g.bound_factor,
            );
            r.ok = g.bound_ok && g.normalized_margin <= 1.0;
            r
        })
        .collect();
    Ok(SuiteReport::from_records(Suite::Quad1d, records, notes))
}

const ALPHAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const SNRS: [f64; 3] = [1.0, 3.0, 15.0];

/// `A = I - lambda B` over `(alpha, v)` and `lambda` up to 0.99 of the
/// feasible limit, plus identity and diagonal matrices.
fn quad2d_suite(eta: f64) -> Result<SuiteReport> {
    let fractions = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99];
    let lattices = [4u64, 16, 64];
    let mut cases: Vec<(String, [[f64; 2]; 2], u64)> = Vec::new();
    for &alpha in &ALPHAS {
        for &v in &SNRS {
            let b = proof_matrix_b(alpha, v)?;
            let limit = b_lambda_limit(alpha, v)?;
            for &f in &fractions {
                let a = assemble_a(&b, f * limit)?;
                for &n in &lattices {
                    cases.push((format!("B alpha={alpha} v={v} lambda={f}*limit n={n}"), a, n));
                }
            }
        }
    }
    for &n in &[1u64, 16, 256] {
        cases.push((format!("identity n={n}"), [[1.0, 0.0], [0.0, 1.0]], n));
        cases.push((format!("diag(4,1) n={n}"), [[4.0, 0.0], [0.0, 1.0]], n));
    }
    let records = cases
        .into_par_iter()
        .map(|(label, a, n)| {
            let g = discretized_gauss_2d_with_eta(n, &a, eta)?;
            Ok(CaseRecord::from_lattice(Suite::Quad2d, label, &g))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::from_records(Suite::Quad2d, records, vec![]))
}

/// `A = I - lambda B~` for both sign variants; infeasible `lambda` skipped
/// and counted.
fn quad3d_suite(eta: f64) -> Result<SuiteReport> {
    let lambdas = [0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99];
    let lattices = [(4u64, 9u64), (64, 64)];
    let mut cases: Vec<(String, [[f64; 3]; 3], u64, u64)> = Vec::new();
    let mut notes = Vec::new();
    for sign in [BtildeSign::Negative, BtildeSign::Positive] {
        let mut skipped = 0;
        let mut kept = 0;
        for &alpha in &ALPHAS {
            for &v in &SNRS {
                let bt = proof_matrix_btilde(alpha, v, sign)?;
                for &lambda in &lambdas {
                    match assemble_a(&bt, lambda) {
                        Ok(a) => {
                            for &(n, n2) in &lattices {
                                kept += 1;
                                cases.push((
                                    format!("Btilde {sign:?} alpha={alpha} v={v} lambda={lambda} n={n} n'={n2}"),
                                    a,
                                    n,
                                    n2,
                                ));
                            }
                        }
                        Err(Error::NotPositiveDefinite(_)) => skipped += 1,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        notes.push(format!(
            "{sign:?} variant: {kept} cases, {skipped} (alpha, v, lambda) points not positive definite"
        ));
    }
    cases.push((
        "diag(1,2,3) n=4 n'=9".into(),
        [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]],
        4,
        9,
    ));
    cases.push((
        "identity n=16 n'=16".into(),
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        16,
        16,
    ));
    let records = cases
        .into_par_iter()
        .map(|(label, a, n, n2)| {
            let g = discretized_gauss_3d_with_eta(n, n2, &a, eta)?;
            Ok(CaseRecord::from_lattice(Suite::Quad3d, label, &g))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::from_records(Suite::Quad3d, records, notes))
}

enum EmFunction {
    Gauss(GaussianBump),
    Poly(Polynomial),
}

impl EmFunction {
    fn as_smooth(&self) -> &dyn SmoothFunction {
        match self {
            EmFunction::Gauss(g) => g,
            EmFunction::Poly(p) => p,
        }
    }

    fn label(&self) -> String {
        match self {
            EmFunction::Gauss(g) => format!("gauss(s={}, mu={})", g.s, g.mu),
            EmFunction::Poly(p) => format!("poly{:?}", p.coeffs),
        }
    }
}

fn em_suite() -> Result<SuiteReport> {
    let mut functions: Vec<EmFunction> = Vec::new();
    for s in [0.5, 1.0, 2.0, 4.0] {
        for mu in [0.0, 0.3] {
            functions.push(EmFunction::Gauss(GaussianBump { s, mu }));
        }
    }
    functions.push(EmFunction::Poly(Polynomial { coeffs: vec![0.0, 1.0] }));
    functions.push(EmFunction::Poly(Polynomial {
        coeffs: vec![1.0, -1.0, 0.0, 1.0],
    }));
    let intervals = [(-3.0, 3.0), (-1.0, 2.0), (0.0, 1.0)];
    let cells = [4u64, 32];
    let b2s = [0.0, 0.125, 1.0 / 6.0, 0.5];
    let mut cases = Vec::new();
    for fi in 0..functions.len() {
        for &(a, b) in &intervals {
            for &n in &cells {
                for &b2 in &b2s {
                    cases.push((fi, a, b, n, b2));
                }
            }
        }
    }
    let mut records = cases
        .into_par_iter()
        .map(|(fi, a, b, n, b2)| {
            let f = &functions[fi];
            let r = extended_em_identity(f.as_smooth(), a, b, n, b2)?;
            Ok(CaseRecord::new(
                Suite::Em,
                format!("identity {} [{a}, {b}] n={n} b2={b2:.6}", f.label()),
                r.abs_diff,
                EM_TOL,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    for f in &functions {
        for &(a, b) in &intervals {
            let c = euler_maclaurin_m0(f.as_smooth(), a, b, 32)?;
            let e = extended_em_identity(f.as_smooth(), a, b, 32, 1.0 / 6.0)?;
            records.push(CaseRecord::new(
                Suite::Em,
                format!("classical m=0 {} [{a}, {b}]", f.label()),
                c.abs_diff.max((c.predicted - e.rhs).abs()),
                EM_TOL,
            ));
        }
    }
    let k = em_bound_constant_check(2.0)?;
    records.push(CaseRecord::new(
        Suite::Em,
        "min-max kernel constant 1/8".into(),
        (k.minmax_value - 0.125).abs().max((k.minmax_b2 - 0.125).abs()),
        EM_CONSTANT_TOL,
    ));
    records.push(CaseRecord::new(
        Suite::Em,
        "assembled constant and eta".into(),
        k.max_error(),
        EM_CONSTANT_TOL,
    ));
    let notes = vec![format!(
        "min over b2 of max |x^2 - x + b2| = {:.12} at b2 = {:.12}; max |f'| at s=2 = {:.9}; eta = {:.15}",
        k.minmax_value, k.minmax_b2, k.max_slope, k.eta_recovered
    )];
    Ok(SuiteReport::from_records(Suite::Em, records, notes))
}
