//! The EAHn encoder and decoder.
//!
//! A string `w = w_1…w_h` over an alphabet of `m` symbols is encoded as five
//! bitstrings:
//!
//! * `A`: the indices of `w_1…w_n`, each in ⌈log₂ m⌉ bits;
//! * `B`: one bit per context `j ∈ 0..m^n`, set when the n-gram `j` is followed
//!   by some symbol in `w`;
//! * `C`: for every symbol `i` (outer) and every set context `j` (inner), whether
//!   `j` is followed by `σ_i`;
//! * `D`: the occurrence count of every marked `(i, j)` in `Max` bits, same scan
//!   order as `C`;
//! * `E`: the per-context Huffman codeword of every symbol after position `n`.
//!
//! Strings with `h ≤ n` only carry `A`.
//!
//! The decoder recovers the context model from `B`, `C` and `D`, reruns the
//! deterministic Huffman construction per context with successors in
//! alphabet order, and replays `E`.

use std::collections::{BTreeMap, HashMap};

use crate::alphabet::Alphabet;
use crate::automaton::TransitionLabel;
use crate::bitstring::{base10_basem, bit_width, to_fixed_width, BitReader, BitString};
use crate::error::{Error, Result};
use crate::huffman::huffman;

/// Upper bound on `m^n`, the number of bits in `B`.
pub const MAX_CONTEXT_SPACE: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    /// Alphabet index of the successor symbol.
    pub symbol: u8,
    pub frequency: u64,
    pub codeword: BitString,
}

/// Per-context successor counts and their Huffman codewords.
///
/// Contexts and n-grams are stored as alphabet indices, oldest symbol first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextModel {
    order: usize,
    alphabet: Alphabet,
    table: BTreeMap<Vec<u8>, Vec<Successor>>,
    ngram_stats: BTreeMap<Vec<u8>, u64>,
}

impl ContextModel {
    /// Counts every `(context, successor)` pair of `w` and assigns each
    /// context's codewords with one Huffman run over its successors taken in
    /// alphabet order.
    pub fn build(w: &[u8], order: usize, alphabet: &Alphabet) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let idx = alphabet.indices(w)?;
        let mut counts: BTreeMap<Vec<u8>, BTreeMap<u8, u64>> = BTreeMap::new();
        for window in idx.windows(order + 1) {
            let (ctx, succ) = window.split_at(order);
            *counts.entry(ctx.to_vec()).or_default().entry(succ[0]).or_insert(0) += 1;
        }
        let mut ngram_stats = BTreeMap::new();
        for gram in idx.windows(order) {
            *ngram_stats.entry(gram.to_vec()).or_insert(0) += 1;
        }
        let mut model = Self::from_counts(order, alphabet.clone(), counts)?;
        model.ngram_stats = ngram_stats;
        Ok(model)
    }

    /// Builds the model from successor counts alone; n-gram statistics are
    /// left empty.
    pub fn from_counts(
        order: usize,
        alphabet: Alphabet,
        counts: BTreeMap<Vec<u8>, BTreeMap<u8, u64>>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (ctx, succs) in counts {
            let freqs: Vec<u64> = succs.values().copied().collect();
            let codes = huffman(&freqs)?.into_codes();
            let row = succs
                .into_iter()
                .zip(codes)
                .map(|((symbol, frequency), codeword)| Successor { symbol, frequency, codeword })
                .collect();
            table.insert(ctx, row);
        }
        Ok(ContextModel { order, alphabet, table, ngram_stats: BTreeMap::new() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Contexts in increasing context number, each with successors in
    /// alphabet order.
    pub fn table(&self) -> &BTreeMap<Vec<u8>, Vec<Successor>> {
        &self.table
    }

    /// Occurrence count of every n-gram of `w` (windows `1..=h−n+1`).
    pub fn ngram_stats(&self) -> &BTreeMap<Vec<u8>, u64> {
        &self.ngram_stats
    }

    pub fn successors(&self, context: &[u8]) -> Option<&[Successor]> {
        self.table.get(context).map(Vec::as_slice)
    }

    pub fn successor(&self, context: &[u8], symbol: u8) -> Option<&Successor> {
        self.successors(context)?.iter().find(|s| s.symbol == symbol)
    }

    /// Σ frequency over all `(context, successor)` pairs; `h − n` for a model
    /// built from a string of length `h > n`.
    pub fn total_frequency(&self) -> u64 {
        self.table.values().flatten().map(|s| s.frequency).sum()
    }

    /// Σ frequency · codeword length; the size of `E`.
    pub fn weighted_cost(&self) -> u64 {
        self.table.values().flatten().map(|s| s.frequency * s.codeword.len() as u64).sum()
    }

    /// The `(frequency, codeword)` label used by every position after `n`.
    pub fn label_trace(&self, w: &[u8]) -> Result<Vec<TransitionLabel>> {
        let idx = self.alphabet.indices(w)?;
        idx.windows(self.order + 1)
            .map(|window| {
                let (ctx, succ) = window.split_at(self.order);
                self.successor(ctx, succ[0])
                    .map(|s| TransitionLabel::new(s.frequency, s.codeword.clone()))
                    .ok_or_else(|| Error::MissingCode { context: ctx.to_vec(), successor: succ[0] })
            })
            .collect()
    }
}

/// The five payload parts plus the header values needed to read them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EahPayload {
    pub alphabet: Alphabet,
    pub order: usize,
    pub h: u64,
    pub a: BitString,
    pub b: BitString,
    pub c: BitString,
    pub d: BitString,
    pub e: BitString,
}

impl EahPayload {
    pub fn parts(&self) -> [&BitString; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    /// `(|A|, |B|, |C|, |D|, |E|)`.
    pub fn component_lengths(&self) -> [usize; 5] {
        self.parts().map(BitString::len)
    }

    /// Number of marked `(symbol, context)` pairs, i.e. set bits of `C`.
    pub fn marked_count(&self) -> usize {
        self.c.count_ones()
    }

    /// Width of one `D` field, or `None` when nothing is marked.
    pub fn max_width(&self) -> Option<usize> {
        let marked = self.marked_count();
        (marked > 0 && self.d.len().is_multiple_of(marked)).then(|| self.d.len() / marked)
    }
}

/// Total payload size in bits, |A|+|B|+|C|+|D|+|E|.
pub fn leah(payload: &EahPayload) -> u64 {
    payload.component_lengths().iter().map(|&l| l as u64).sum()
}

fn context_space(m: usize, n: usize) -> Result<u64> {
    (m as u64)
        .checked_pow(n as u32)
        .filter(|&size| size <= MAX_CONTEXT_SPACE)
        .ok_or(Error::ContextSpaceTooLarge { m, n })
}

/// Context number `j`: the context's digits read in base `m`.
fn context_number(ctx: &[u8], m: usize) -> u64 {
    ctx.iter().fold(0, |acc, &d| acc * m as u64 + d as u64)
}

fn push_indices(out: &mut BitString, idx: &[u8], width: u32) {
    if width == 0 {
        return;
    }
    for &i in idx {
        out.append(&to_fixed_width(i as u64, width).expect("index fits its field"));
    }
}

/// Encodes `w` with order-`n` contexts.
pub fn encode(w: &[u8], order: usize, alphabet: &Alphabet) -> Result<EahPayload> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if order > u8::MAX as usize {
        return Err(Error::ContextSpaceTooLarge { m: alphabet.len(), n: order });
    }
    let idx = alphabet.indices(w)?;
    let m = alphabet.len();
    let width = alphabet.index_width();
    let mut payload = EahPayload {
        alphabet: alphabet.clone(),
        order,
        h: w.len() as u64,
        a: BitString::new(),
        b: BitString::new(),
        c: BitString::new(),
        d: BitString::new(),
        e: BitString::new(),
    };
    if idx.len() <= order {
        push_indices(&mut payload.a, &idx, width);
        return Ok(payload);
    }
    let space = context_space(m, order)?;
    let model = ContextModel::build(w, order, alphabet)?;
    push_indices(&mut payload.a, &idx[..order], width);

    payload.b = BitString::zeros(space as usize);
    for ctx in model.table.keys() {
        payload.b.set(context_number(ctx, m) as usize, true);
    }

    let max = model
        .table
        .values()
        .flatten()
        .map(|s| bit_width(s.frequency))
        .max()
        .expect("h > n yields at least one pair");
    for i in 0..m as u8 {
        for succs in model.table.values() {
            match succs.iter().find(|s| s.symbol == i) {
                Some(s) => {
                    payload.c.push(true);
                    payload.d.append(&to_fixed_width(s.frequency, max)?);
                }
                None => payload.c.push(false),
            }
        }
    }

    for window in idx.windows(order + 1) {
        let (ctx, succ) = window.split_at(order);
        let s = model.successor(ctx, succ[0]).expect("every pair of w is in the model");
        payload.e.append(&s.codeword);
    }
    Ok(payload)
}

/// Reads codewords of one context bit by bit.
#[derive(Debug, Default)]
struct PrefixDecoder {
    // children[node] = [on 0, on 1]; 0 means absent (node 0 is the root).
    children: Vec<[u32; 2]>,
    leaves: Vec<Option<usize>>,
}

impl PrefixDecoder {
    fn new(succs: &[Successor]) -> Self {
        let mut dec = PrefixDecoder { children: vec![[0, 0]], leaves: vec![None] };
        for (k, s) in succs.iter().enumerate() {
            let mut node = 0usize;
            for bit in s.codeword.iter() {
                let next = dec.children[node][bit as usize];
                node = if next == 0 {
                    dec.children.push([0, 0]);
                    dec.leaves.push(None);
                    let fresh = dec.children.len() - 1;
                    dec.children[node][bit as usize] = fresh as u32;
                    fresh
                } else {
                    next as usize
                };
            }
            dec.leaves[node] = Some(k);
        }
        dec
    }

    /// Position in the successor list of the next codeword, or `None` when
    /// the bits run out or leave the code tree.
    fn read(&self, reader: &mut BitReader<'_>) -> Option<usize> {
        let mut node = 0usize;
        loop {
            let next = self.children[node][reader.read_bit()? as usize];
            if next == 0 {
                return None;
            }
            node = next as usize;
            if let Some(k) = self.leaves[node] {
                return Some(k);
            }
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedPayload(msg.into())
}

/// Recovers the original string from a payload.
pub fn decode(payload: &EahPayload) -> Result<Vec<u8>> {
    decode_trace(payload).map(|(w, _)| w)
}

/// Decodes and also returns the `(frequency, codeword)` label of every
/// codeword read from `E`, in order.
pub fn decode_trace(payload: &EahPayload) -> Result<(Vec<u8>, Vec<TransitionLabel>)> {
    let alphabet = &payload.alphabet;
    let m = alphabet.len();
    let n = payload.order;
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let width = alphabet.index_width();
    let h = usize::try_from(payload.h).map_err(|_| malformed("length does not fit in memory"))?;

    let read_indices = |count: usize| -> Result<Vec<u8>> {
        if payload.a.len() != count * width as usize {
            return Err(malformed(format!(
                "|A| = {} but {count} fields of {width} bits are expected",
                payload.a.len()
            )));
        }
        let mut reader = BitReader::new(&payload.a);
        (0..count)
            .map(|_| {
                let i = reader.read_bits(width).expect("length checked");
                if i as usize >= m {
                    Err(malformed(format!("index {i} in A exceeds alphabet size {m}")))
                } else {
                    Ok(i as u8)
                }
            })
            .collect()
    };

    if h <= n {
        if payload.parts()[1..].iter().any(|p| !p.is_empty()) {
            return Err(malformed("B..E must be empty when h <= n"));
        }
        let idx = read_indices(h)?;
        return Ok((idx.iter().map(|&i| alphabet.symbols()[i as usize]).collect(), Vec::new()));
    }

    let mut idx = read_indices(n)?;
    idx.reserve(h - n);

    let space = context_space(m, n)?;
    if payload.b.len() as u64 != space {
        return Err(malformed(format!("|B| = {} but m^n = {space}", payload.b.len())));
    }
    let contexts: Vec<Vec<u8>> = payload
        .b
        .iter()
        .enumerate()
        .filter(|(_, bit)| *bit)
        .map(|(j, _)| {
            base10_basem(j as u64, m as u64, n as u32)
                .map(|t| t.digits().iter().map(|&d| d as u8).collect())
        })
        .collect::<Result<_>>()?;
    if payload.c.len() != m * contexts.len() {
        return Err(malformed(format!(
            "|C| = {} but m * (ones in B) = {}",
            payload.c.len(),
            m * contexts.len()
        )));
    }
    let mut marked = Vec::new();
    let mut c_bits = payload.c.iter();
    for i in 0..m {
        for ctx in &contexts {
            if c_bits.next() == Some(true) {
                marked.push((ctx, i as u8));
            }
        }
    }
    if marked.is_empty() {
        return Err(malformed("no marked (symbol, context) pairs"));
    }
    if !payload.d.len().is_multiple_of(marked.len()) {
        return Err(malformed(format!(
            "|D| = {} is not a multiple of |Marked| = {}",
            payload.d.len(),
            marked.len()
        )));
    }
    let max = payload.d.len() / marked.len();
    if max == 0 || max > 64 {
        return Err(malformed(format!("frequency field width {max} out of range")));
    }
    let mut counts: BTreeMap<Vec<u8>, BTreeMap<u8, u64>> = BTreeMap::new();
    let mut d_reader = BitReader::new(&payload.d);
    for (ctx, i) in marked {
        let f = d_reader.read_bits(max as u32).expect("length checked");
        if f == 0 {
            return Err(malformed("zero frequency in D"));
        }
        counts.entry(ctx.clone()).or_default().insert(i, f);
    }
    let model = ContextModel::from_counts(n, alphabet.clone(), counts)?;
    let decoders: HashMap<&[u8], PrefixDecoder> =
        model.table.iter().map(|(ctx, succs)| (ctx.as_slice(), PrefixDecoder::new(succs))).collect();

    let mut labels = Vec::with_capacity(h - n);
    let mut reader = BitReader::new(&payload.e);
    while reader.remaining() > 0 {
        if idx.len() >= h {
            return Err(malformed("E holds more codewords than h - n"));
        }
        let ctx = &idx[idx.len() - n..];
        let (succs, dec) = match (model.successors(ctx), decoders.get(ctx)) {
            (Some(s), Some(d)) => (s, d),
            _ => return Err(malformed(format!("context {ctx:?} has no marked successors"))),
        };
        let start = reader.position();
        let k = dec.read(&mut reader).ok_or_else(|| {
            malformed(format!("E has {} trailing unmatched bits", payload.e.len() - start))
        })?;
        let s = &succs[k];
        labels.push(TransitionLabel::new(s.frequency, s.codeword.clone()));
        idx.push(s.symbol);
    }
    if idx.len() != h {
        return Err(malformed(format!("decoded {} symbols, header says {h}", idx.len())));
    }
    Ok((idx.iter().map(|&i| alphabet.symbols()[i as usize]).collect(), labels))
}
