//! Sizing a code: section size from `M = L^a`, code length from the rate,
//! and the capacities the bounds are measured against.
//!
//! ```bash
//! cargo run -p superpose --example code_spec
//! ```

use superpose::params::{c_alpha, capacity, derive_code_spec, nats_to_bits, ChannelSpec, CodeSpec};

fn main() -> superpose::Result<()> {
    let channel = ChannelSpec::new(15.0, 1.0)?;
    let cap = channel.capacity();
    println!(
        "v = {}  C = {cap:.6} nats = {:.6} bits",
        channel.snr(),
        channel.capacity_bits()
    );

    for (l, a, frac) in [(6, 1.0, 0.3), (16, 1.0, 0.5), (100, 1.0, 0.5), (1000, 0.5, 0.8)] {
        let s = derive_code_spec(l, a, frac * cap)?;
        println!(
            "L={:<5} a={a:<4} R={frac}C -> M={:<4} N={:<7} n={:<7} K={:.1} bits  realized R={:.5} ({:.4} bits)",
            s.sections,
            s.section_size,
            s.columns,
            s.code_length,
            s.message_bits,
            s.rate,
            nats_to_bits(s.rate)
        );
    }

    // explicit section size, as in the small simulations
    let s = CodeSpec::with_section_size(6, 8, 0.3 * capacity(15.0)?)?;
    println!("L=6 M=8: n={} codebook size {:?}", s.code_length, s.codebook_size());

    println!("\npartial capacities C_alpha against alpha C at v = 15:");
    for alpha in [0.0, 0.1, 0.25, 0.5, 0.75, 1.0] {
        let ca = c_alpha(alpha, 15.0)?;
        println!(
            "  alpha={alpha:<5} C_alpha={ca:.6}  C_alpha - alpha C = {:.6}",
            ca - alpha * cap
        );
    }
    Ok(())
}
