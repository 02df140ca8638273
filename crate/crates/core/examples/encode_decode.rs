//! One transmission end to end: draw a dictionary, encode a message,
//! add noise, decode by exhaustive least squares and count mistakes.
//!
//! ```bash
//! cargo run -p superpose --example encode_decode -- 4.0
//! ```
//!
//! The optional argument is the noise variance (default 1).

use superpose::codec::{
    awgn_channel, codeword_power, count_mistakes, encode, least_squares_decode, Dictionary, DictionaryKind,
    SectionMessage, DEFAULT_DECODE_CAP,
};
use superpose::params::{capacity, CodeSpec};

fn main() -> superpose::Result<()> {
    let sigma2: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let power = 15.0;
    let spec = CodeSpec::with_section_size(6, 8, 0.3 * capacity(power / 1.0)?)?;
    println!(
        "L={} M={} n={} sigma2={sigma2}",
        spec.sections, spec.section_size, spec.code_length
    );

    for kind in [DictionaryKind::Bernoulli, DictionaryKind::Gaussian] {
        for seed in 0..4u64 {
            let dict = Dictionary::generate(&spec, power, kind, seed)?;
            let msg = SectionMessage::random(spec.sections, spec.section_size, seed);
            let c = encode(&msg, &dict)?;
            let y = awgn_channel(&c, sigma2, seed)?;
            let dec = least_squares_decode(&dict, &y, DEFAULT_DECODE_CAP)?;
            let m = count_mistakes(&dec.message, &msg)?;
            println!(
                "{kind:9} seed {seed}: sent {:?} got {:?}  mistakes {}  power {:.2}  residual {:.2}",
                msg.indices(),
                dec.message.indices(),
                m.count,
                codeword_power(&c),
                dec.residual
            );
        }
    }
    Ok(())
}
