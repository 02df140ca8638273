//! The exponent machinery for Gaussian dictionaries: the closed-form
//! maximizers, the per-`l` bound minimized over the split point `t`, and
//! the theorem-level exponent.
//!
//! ```bash
//! cargo run --release -p superpose --example gaussian_bounds
//! ```

use superpose::exponents::{
    d1_max, d_max, err_gauss, g_fn, gauss_theorem_bound, h_fn, minimize_over_t, rho_terms, w_v_fn, ExponentQuery,
};
use superpose::params::capacity;

fn main() -> superpose::Result<()> {
    let v = 15.0;
    let cap = capacity(v)?;
    println!(
        "g(1) = {:.6}  w_v(15) = {:.7}  h(0.1, C/2) = {:.6e}",
        g_fn(1.0),
        w_v_fn(v),
        h_fn(0.1, cap / 2.0, v)
    );

    let rho = rho_terms(0.5, v)?;
    let d = d_max(0.3, rho.one_minus_rho2sq)?;
    let d1 = d1_max(0.3, rho.one_minus_rho1sq)?;
    println!(
        "D(0.3) = {:.6} at lambda {:.4};  D1(0.3) = {:.6} at lambda {:.4}",
        d.value, d.lambda, d1.value, d1.lambda
    );

    // one section error rate, scanned in t and then minimized
    let (l, n, rate) = (10, 100, 0.6 * cap);
    let q = ExponentQuery::new(0.5, v, rate, l, n, 0.0)?;
    let slack = q.slack()?;
    println!("\nalpha = 0.5, L = {l}, n = {n}, R = 0.6 C, slack = {slack:.4}");
    for i in 0..=5 {
        let t = slack * i as f64 / 5.0;
        let b = err_gauss(&q.with_t(t))?;
        println!(
            "  t = {t:.4}  ln err = {:>10.4}  (terms {:.3}, {:.3})",
            b.ln_raw, b.ln_first, b.ln_second
        );
    }
    let best = minimize_over_t(0.5, v, rate, l, n, err_gauss)?;
    println!("  min at t* = {:.5}: ln err = {:.4}", best.t_star, best.bound.ln_raw);

    println!("\ntheorem bound, alpha0 = 0.1, R = 0.5 C:");
    for (l, n) in [(50, 300), (100, 700), (200, 1500)] {
        let b = gauss_theorem_bound(0.1, v, 0.5 * cap, l, n)?;
        println!(
            "  L={l:<4} n={n:<5} E >= {:.5e}  Pr <= {:.3e}  summed <= {:.3e}",
            b.exponent_lower, b.prob_bound, b.summed_bound
        );
    }
    Ok(())
}
