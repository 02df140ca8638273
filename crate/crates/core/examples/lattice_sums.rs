//! Gaussian densities summed over the lattice `h (k - n/2)`, `h = 2/sqrt(n)`,
//! against their integrals, in one, two and three dimensions.
//!
//! ```bash
//! cargo run --release -p superpose --example lattice_sums
//! ```

use superpose::bernoulli::{assemble_a, b_lambda_limit, eta, proof_matrix_b, proof_matrix_btilde, BtildeSign};
use superpose::quadrature::{discretized_gauss_1d, discretized_gauss_2d, discretized_gauss_3d};

fn main() -> superpose::Result<()> {
    println!("eta = {:.12}", eta());
    println!("\n1D, mu = 0:");
    for n in [1, 4, 16, 64, 256] {
        for s in [0.5, 1.0, 2.0, 4.0] {
            let g = discretized_gauss_1d(n, 0.0, s)?;
            println!(
                "  n={n:<4} s={s:<4} I_d/I_c={:.8} bound={:.8} normalized={:.4}",
                g.ratio, g.bound_factor, g.normalized_margin
            );
        }
    }

    println!("\n2D, A = I - lambda B at alpha = 0.5, v = 3:");
    let b = proof_matrix_b(0.5, 3.0)?;
    let limit = b_lambda_limit(0.5, 3.0)?;
    for frac in [0.0, 0.5, 0.9, 0.99] {
        let a = assemble_a(&b, frac * limit)?;
        let g = discretized_gauss_2d(16, &a)?;
        println!(
            "  lambda={:.4} ratio={:.8} bound={:.8} closed vs numeric inner integral: {:.1e}",
            frac * limit,
            g.ratio,
            g.bound_factor,
            g.dual_rel_diff
        );
    }

    println!("\n3D, A = I - lambda B~ at alpha = 0.3, v = 5, n = n' = 64:");
    for sign in [BtildeSign::Negative, BtildeSign::Positive] {
        let bt = proof_matrix_btilde(0.3, 5.0, sign)?;
        for lambda in [0.1, 0.5, 0.9] {
            let g = discretized_gauss_3d(64, 64, &assemble_a(&bt, lambda)?)?;
            println!(
                "  {sign:?} lambda={lambda} ratio={:.8} bound={:.8} ok={}",
                g.ratio, g.bound_factor, g.bound_ok
            );
        }
    }
    Ok(())
}
