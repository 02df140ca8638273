//! Sectioned encoding over a random dictionary, the AWGN channel, and the
//! exhaustive least-squares decoder.

mod channel;
mod decoder;
mod dictionary;
mod message;
pub mod rng;

pub use channel::awgn_channel;
pub use decoder::{least_squares_decode, Decoded, DEFAULT_DECODE_CAP};
pub use dictionary::{Dictionary, DictionaryKind, DEFAULT_MEMORY_CAP};
pub use message::{codeword_power, count_mistakes, encode, Mistakes, ReceivedWord, SectionMessage};
