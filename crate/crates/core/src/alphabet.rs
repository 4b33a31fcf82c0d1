//! Ordered byte alphabets with a bijective `Index` onto `0..m`.

use crate::bitstring::ceil_log2;
use crate::error::{Error, Result};

pub const MAX_SYMBOLS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<u8>,
    index: [Option<u8>; 256],
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols; their order fixes `Index`.
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > MAX_SYMBOLS {
            return Err(Error::InvalidAlphabet(format!("{} symbols exceed 256", symbols.len())));
        }
        let mut index = [None; 256];
        for (i, &s) in symbols.iter().enumerate() {
            if index[s as usize].is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:#04x}")));
            }
            index[s as usize] = Some(i as u8);
        }
        Ok(Alphabet { symbols, index })
    }

    /// Distinct bytes of `data` in increasing byte order.
    pub fn from_data(data: &[u8]) -> Result<Self> {
        let mut seen = [false; 256];
        for &b in data {
            seen[b as usize] = true;
        }
        let symbols: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Option<u8> {
        self.symbols.get(index).copied()
    }

    pub fn index_of(&self, symbol: u8) -> Result<u8> {
        self.index[symbol as usize].ok_or(Error::UnknownSymbol(symbol))
    }

    /// Maps every symbol of `data` to its index.
    pub fn indices(&self, data: &[u8]) -> Result<Vec<u8>> {
        data.iter().map(|&b| self.index_of(b)).collect()
    }

    /// ⌈log₂ m⌉: the width of one fixed-width index field.
    pub fn index_width(&self) -> u32 {
        ceil_log2(self.len() as u64)
    }
}
