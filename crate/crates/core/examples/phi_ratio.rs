//! `phi(l)` bounds the log of the largest ratio between the binomial(l, 1/2)
//! pmf and the matching Gaussian density. Compare it with the exact ratio.
//!
//! ```bash
//! cargo run --release -p superpose --example phi_ratio
//! ```

use superpose::bernoulli::{binom_gauss_ratio, phi, phi_zeta_branches};

fn main() -> superpose::Result<()> {
    println!(
        "{:>6} {:>9} {:>12} {:>12} {:>12} {:>8}  branch",
        "l", "zeta*", "phi", "ln ratio", "5/l", "argmax"
    );
    for l in [1, 2, 3, 5, 10, 32, 100, 1000, 2000, 10_000] {
        let p = phi(l)?;
        let r = binom_gauss_ratio(l)?;
        println!(
            "{l:>6} {:>9.5} {:>12.6e} {:>12.6e} {:>12.6e} {:>8}  {:?}",
            p.zeta_star,
            p.phi,
            r.ln_max_ratio,
            5.0 / l as f64,
            r.argmax_k,
            p.branch
        );
    }
    let b = phi_zeta_branches(1000, 0.265)?;
    println!("\nbranches at l=1000, zeta=0.265: {:.6} {:.4} {:.2}", b[0], b[1], b[2]);
    Ok(())
}
