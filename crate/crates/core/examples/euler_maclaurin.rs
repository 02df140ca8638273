//! The trapezoid error written with a free constant `b2` in the kernel
//! `b2 - x + x^2`: both sides agree for any `b2`, `b2 = 1/6` is classical
//! Euler-Maclaurin, and `b2 = 1/8` minimizes the kernel's sup norm.
//!
//! ```bash
//! cargo run --release -p superpose --example euler_maclaurin
//! ```

use superpose::quadrature::{
    em_bound_constant_check, euler_maclaurin_m0, extended_em_identity, GaussianBump, Polynomial,
};

fn main() -> superpose::Result<()> {
    let f = GaussianBump { s: 1.0, mu: 0.0 };
    for b2 in [0.0, 0.125, 1.0 / 6.0, 0.5] {
        let r = extended_em_identity(&f, -3.0, 3.0, 32, b2)?;
        println!(
            "b2={b2:.4}  lhs={:+.15e}  rhs={:+.15e}  |diff|={:.1e}",
            r.lhs, r.rhs, r.abs_diff
        );
    }

    let c = euler_maclaurin_m0(&GaussianBump { s: 2.0, mu: 0.1 }, -2.0, 3.0, 20)?;
    println!(
        "\nclassical, B_2 = {:.6}: predicted {:+.6e} actual {:+.6e}",
        c.b2, c.predicted, c.actual
    );

    let cubic = Polynomial {
        coeffs: vec![1.0, -1.0, 0.0, 1.0],
    };
    let r = extended_em_identity(&cubic, -1.0, 2.0, 4, 0.3)?;
    println!("cubic on [-1, 2], n=4: |diff| = {:.1e}", r.abs_diff);

    let k = em_bound_constant_check(2.0)?;
    println!(
        "\nmin over b2 of max |x^2 - x + b2| = {:.12} at b2 = {:.12} (b2 = 1/6 gives {:.6})",
        k.minmax_value, k.minmax_b2, k.max_at_bernoulli_b2
    );
    println!(
        "max |f'| at s = 2: {:.9} vs s/sqrt(e) = {:.9}",
        k.max_slope, k.max_slope_closed
    );
    println!("recovered eta = {:.15} vs {:.15}", k.eta_recovered, k.eta);
    Ok(())
}
