//! Order-n adaptive codes with per-context Huffman codebooks.
//!
//! The crate encodes a string by conditioning each symbol's codeword on the
//! `n` symbols before it. Every context gets its own Huffman code built from
//! the successor counts observed in the input; the counts travel with the
//! payload so the decoder can rebuild identical codebooks.
//!
//! Modules:
//!
//! * [`bitstring`]: bit-exact strings and fixed-width integer fields.
//! * [`adaptive_code`]: context-indexed code tables and their sufficiency check.
//! * [`huffman`]: deterministic tuple-based Huffman construction.
//! * [`codec`]: the five-part EAHn encoder and its decoder.
//! * [`automaton`]: the nondeterministic automaton view of a coded string.
//! * [`baselines`]: whole-string Huffman and LZ78 bit counts for comparison.
//! * [`container`]: the `EAHC` file format.
//! * [`report`]: benchmark rows and their text/CSV rendering.

pub mod adaptive_code;
pub mod alphabet;
pub mod automaton;
pub mod baselines;
pub mod bitstring;
pub mod codec;
pub mod container;
pub mod error;
pub mod fixtures;
pub mod huffman;
pub mod report;

pub use adaptive_code::{is_prefix_code, AdaptiveCodeTable};
pub use alphabet::Alphabet;
pub use automaton::{AdaptiveAutomaton, State, TransitionLabel};
pub use baselines::{huffman_baseline_length, lz78_encode, Lz78Output, Phrase};
pub use bitstring::{base10_base2, base10_basem, to_fixed_width, BitString, DigitTuple};
pub use codec::{decode, decode_trace, encode, leah, ContextModel, EahPayload, Successor};
pub use error::{Error, Result};
pub use huffman::{huffman, weighted_cost, CodeAssignment};
