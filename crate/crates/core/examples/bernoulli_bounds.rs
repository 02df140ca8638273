//! Bernoulli dictionaries pay a penalty `iota(L)` in the exponent. This
//! prints the penalty's pieces and the two bounds side by side.
//!
//! ```bash
//! cargo run --release -p superpose --example bernoulli_bounds
//! ```

use superpose::bernoulli::iota_breakdown;
use superpose::codec::DictionaryKind;
use superpose::harness::{compare_bounds, BoundQuery};

fn main() -> superpose::Result<()> {
    println!(
        "{:>7} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}",
        "L", "iota3", "iota4", "iota5", "iota1", "iota2", "iota*sqrtL"
    );
    for l in [10, 100, 1000, 10_000, 100_000] {
        let b = iota_breakdown(l, 0.1, 15.0)?;
        println!(
            "{l:>7} {:>10.4e} {:>10.4e} {:>10.4e} {:>10.4e} {:>10.4e} {:>9.3}",
            b.iota3,
            b.iota4,
            b.iota5,
            b.iota1,
            b.iota2,
            b.iota * (l as f64).sqrt()
        );
    }

    let (q, spec) = BoundQuery::from_section_rate(15.0, 0.5, 200, 1.0, 0.1, DictionaryKind::Bernoulli)?;
    let r = compare_bounds(&q)?;
    println!(
        "\nL={} M={} n={} R=0.5C",
        spec.sections, spec.section_size, spec.code_length
    );
    println!("              E lower      Pr bound     summed");
    println!(
        "gaussian   {:>11.4e} {:>11.3e} {:>11.3e}",
        r.gauss.exponent_lower, r.gauss.prob_bound, r.gauss.summed_bound
    );
    println!(
        "bernoulli  {:>11.4e} {:>11.3e} {:>11.3e}",
        r.ber.exponent_lower, r.ber.prob_bound, r.ber.summed_bound
    );
    println!("\nfirst rows of the per-l table:");
    for row in r.table.iter().take(5) {
        println!(
            "  l={:<4} slack={:.4} gauss t*={:.4} ln={:>9.3}   ber t*={:.4} ln={:>9.3}",
            row.mistakes, row.slack, row.gauss_t_star, row.gauss_ln_bound, row.ber_t_star, row.ber_ln_bound
        );
    }
    Ok(())
}
