//! Reference compressors: whole-string Huffman and LZ78.

use std::collections::HashMap;

use crate::alphabet::Alphabet;
use crate::bitstring::ceil_log2;
use crate::error::Result;
use crate::huffman::{huffman, weighted_cost};

/// Bits needed to Huffman-code `w` with one codebook built from its symbol
/// counts (occurring symbols only, in alphabet order). Empty input costs 0.
pub fn huffman_baseline_length(w: &[u8], alphabet: &Alphabet) -> Result<u64> {
    let mut counts = vec![0u64; alphabet.len()];
    for i in alphabet.indices(w)? {
        counts[i as usize] += 1;
    }
    let freqs: Vec<u64> = counts.into_iter().filter(|&c| c > 0).collect();
    if freqs.is_empty() {
        return Ok(0);
    }
    weighted_cost(&huffman(&freqs)?, &freqs)
}

/// One LZ78 phrase: a dictionary reference (0 is the empty root) extended by
/// a symbol, or a bare reference when the input ends mid-match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phrase {
    pub index: u32,
    pub symbol: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lz78Output {
    pub phrases: Vec<Phrase>,
    pub bit_length: u64,
}

impl Lz78Output {
    /// Rebuilds the parsed string from the phrase list.
    pub fn expand(&self) -> Vec<u8> {
        let mut dict: Vec<(u32, u8)> = Vec::with_capacity(self.phrases.len());
        let mut out = Vec::new();
        let spell = |mut entry: u32, dict: &[(u32, u8)], out: &mut Vec<u8>| {
            let start = out.len();
            while entry != 0 {
                let (parent, sym) = dict[entry as usize - 1];
                out.push(sym);
                entry = parent;
            }
            out[start..].reverse();
        };
        for p in &self.phrases {
            spell(p.index, &dict, &mut out);
            if let Some(sym) = p.symbol {
                out.push(sym);
                dict.push((p.index, sym));
            }
        }
        out
    }
}

/// Greedy LZ78 parse of `w`.
///
/// Phrase `t` (1-based) costs ⌈log₂ t⌉ bits for its dictionary index plus
/// ⌈log₂ m⌉ bits for its symbol; a trailing bare reference pays only the
/// index bits.
pub fn lz78_encode(w: &[u8], alphabet: &Alphabet) -> Result<Lz78Output> {
    alphabet.indices(w)?;
    let symbol_bits = ceil_log2(alphabet.len() as u64) as u64;
    let mut dict: HashMap<(u32, u8), u32> = HashMap::new();
    let mut phrases = Vec::new();
    let mut bit_length = 0u64;
    let mut pos = 0;
    while pos < w.len() {
        let mut node = 0u32;
        while pos < w.len() {
            match dict.get(&(node, w[pos])) {
                Some(&child) => {
                    node = child;
                    pos += 1;
                }
                None => break,
            }
        }
        let t = phrases.len() as u64 + 1;
        bit_length += ceil_log2(t) as u64;
        let symbol = w.get(pos).copied();
        if let Some(sym) = symbol {
            dict.insert((node, sym), dict.len() as u32 + 1);
            bit_length += symbol_bits;
            pos += 1;
        }
        phrases.push(Phrase { index: node, symbol });
    }
    Ok(Lz78Output { phrases, bit_length })
}
