//! Adaptive codes of order n: code tables indexed by (symbol, context), their
//! homomorphic extension, and the prefix-code sufficiency check.
//!
//! A context is any string of at most `n` symbols, λ included. Tables are
//! dense: every one of the `Σ_{i≤n} m^i` contexts carries `m` codewords.

use std::collections::HashMap;

use crate::alphabet::Alphabet;
use crate::bitstring::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveCodeTable {
    order: usize,
    alphabet: Alphabet,
    /// Keyed by context as symbol indices; each row is in alphabet order.
    rows: HashMap<Vec<u8>, Vec<BitString>>,
}

impl AdaptiveCodeTable {
    /// Builds a table from a closure giving `c(σ, u)` for symbol index `σ`
    /// and context `u` (symbol indices, oldest first).
    pub fn from_fn<F>(alphabet: Alphabet, order: usize, mut code: F) -> Result<Self>
    where
        F: FnMut(u8, &[u8]) -> BitString,
    {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let m = alphabet.len();
        let mut rows = HashMap::new();
        for ctx in all_contexts(m, order) {
            let row: Vec<BitString> = (0..m).map(|s| code(s as u8, &ctx)).collect();
            rows.insert(ctx, row);
        }
        let table = AdaptiveCodeTable { order, alphabet, rows };
        table.check_nonempty()?;
        Ok(table)
    }

    /// Parses the text layout: one line per context, the context token (`λ`
    /// or `-` for the empty context) followed by `m` codewords in alphabet
    /// order. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str, alphabet: Alphabet, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let m = alphabet.len();
        let mut rows = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::InvalidTable(format!("line {}: {msg}", lineno + 1));
            let mut fields = line.split_whitespace();
            let token = fields.next().unwrap();
            let ctx = if token == "λ" || token == "-" {
                Vec::new()
            } else {
                alphabet.indices(token.as_bytes()).map_err(|e| bad(e.to_string()))?
            };
            if ctx.len() > order {
                return Err(bad(format!("context {token:?} longer than order {order}")));
            }
            let row = fields
                .map(|f| f.parse::<BitString>())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| bad(e.to_string()))?;
            if row.len() != m {
                return Err(bad(format!("expected {m} codewords, found {}", row.len())));
            }
            if rows.insert(ctx, row).is_some() {
                return Err(bad(format!("context {token:?} listed twice")));
            }
        }
        let expected: usize = (0..=order as u32).map(|i| m.pow(i)).sum();
        if rows.len() != expected {
            return Err(Error::InvalidTable(format!(
                "table lists {} contexts, order {order} over {m} symbols needs {expected}",
                rows.len()
            )));
        }
        let table = AdaptiveCodeTable { order, alphabet, rows };
        table.check_nonempty()?;
        Ok(table)
    }

    fn check_nonempty(&self) -> Result<()> {
        if self.rows.values().flatten().any(BitString::is_empty) {
            return Err(Error::InvalidTable("codewords must be nonempty".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `c(σ, u)` with both given as symbol indices.
    pub fn code(&self, symbol: u8, context: &[u8]) -> &BitString {
        &self.rows[context][symbol as usize]
    }

    /// The codeword set `C_u` in alphabet order.
    pub fn context_codes(&self, context: &[u8]) -> &[BitString] {
        &self.rows[context]
    }

    pub fn contexts(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.rows.keys()
    }

    /// The homomorphic extension c̄: symbol i is coded under the previous
    /// `min(i−1, n)` symbols.
    pub fn encode_extension(&self, x: &[u8]) -> Result<BitString> {
        let idx = self.alphabet.indices(x)?;
        let mut out = BitString::new();
        for (i, &s) in idx.iter().enumerate() {
            let ctx = &idx[i.saturating_sub(self.order)..i];
            out.append(self.code(s, ctx));
        }
        Ok(out)
    }

    /// True when every `C_u` holds `m` distinct words forming a prefix code,
    /// which is sufficient for the table to be an adaptive code of order n.
    /// `false` is inconclusive.
    pub fn check_order_n_sufficiency(&self) -> bool {
        self.rows.values().all(|row| {
            let mut sorted = row.clone();
            sorted.sort();
            sorted.dedup();
            sorted.len() == row.len() && is_prefix_code(row)
        })
    }
}

/// Every context of length `0..=order` over `m` symbols.
fn all_contexts(m: usize, order: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..order {
        layer = layer
            .iter()
            .flat_map(|ctx: &Vec<u8>| {
                (0..m).map(move |s| {
                    let mut next = ctx.clone();
                    next.push(s as u8);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// True iff no word is a proper prefix of another.
pub fn is_prefix_code(words: &[BitString]) -> bool {
    let mut sorted: Vec<&BitString> = words.iter().collect();
    sorted.sort();
    // In lexicographic order a word's extensions follow it directly.
    sorted
        .windows(2)
        .all(|pair| pair[0] == pair[1] || !pair[0].is_prefix_of(pair[1]))
}
