//! Bit-exact strings and the integer conversions used by every payload part.
//!
//! A [`BitString`] keeps its bits packed most-significant-bit first, which is
//! also the order the container format writes them in. Bits past `len` in the
//! last byte are always zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    /// The empty string λ.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// Wraps packed bytes. Padding bits in the final byte are cleared.
    pub fn from_bytes(mut bytes: Vec<u8>, len: usize) -> Self {
        assert!(len <= bytes.len() * 8, "bit length exceeds byte buffer");
        bytes.truncate(len.div_ceil(8));
        if !len.is_multiple_of(8) {
            let last = bytes.len() - 1;
            bytes[last] &= 0xffu8 << (8 - len % 8);
        }
        BitString { bytes, len }
    }

    /// `len` zero bits.
    pub fn zeros(len: usize) -> Self {
        BitString { bytes: vec![0; len.div_ceil(8)], len }
    }

    pub fn set(&mut self, index: usize, bit: bool) {
        assert!(index < self.len, "bit index out of range");
        let mask = 0x80 >> (index % 8);
        if bit {
            self.bytes[index / 8] |= mask;
        } else {
            self.bytes[index / 8] &= !mask;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed bytes, MSB first, zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| self.bytes[index / 8] & (0x80 >> (index % 8)) != 0)
    }

    pub fn append(&mut self, other: &BitString) {
        if self.len.is_multiple_of(8) {
            self.bytes.extend_from_slice(&other.bytes);
            self.len += other.len;
        } else {
            for bit in other.iter() {
                self.push(bit);
            }
        }
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        out.append(other);
        out
    }

    /// Prepends a single bit; used while Huffman codewords grow from the leaf side.
    pub fn prepend(&mut self, bit: bool) {
        let mut out = BitString::with_capacity(self.len + 1);
        out.push(bit);
        out.append(self);
        *self = out;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Bits `start..end` as a new string.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len, "bit slice out of range");
        let mut out = BitString::with_capacity(end - start);
        for i in start..end {
            out.push(self.get(i).unwrap());
        }
        out
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len <= other.len && self.iter().zip(other.iter()).all(|(a, b)| a == b)
    }

    /// Unsigned value of the bits read as a big-endian binary number.
    pub fn to_u64(&self) -> Option<u64> {
        let significant = self.iter().skip_while(|b| !b).count();
        if significant > 64 {
            return None;
        }
        Some(self.iter().fold(0u64, |acc, b| (acc << 1) | b as u64))
    }
}

impl Ord for BitString {
    /// Lexicographic on bits; a proper prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("λ");
        }
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses a string of `0`/`1`. `λ` and the empty string both denote λ.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::with_capacity(s.len());
        if s == "λ" {
            return Ok(out);
        }
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                other => return Err(Error::InvalidBitChar(other)),
            }
        }
        Ok(out)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

/// Sequential reader over a [`BitString`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn read_bit(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos)?;
        self.pos += 1;
        Some(bit)
    }

    /// Reads `width` bits as an unsigned big-endian integer (`width` ≤ 64).
    pub fn read_bits(&mut self, width: u32) -> Option<u64> {
        if width as usize > self.remaining() || width > 64 {
            return None;
        }
        let mut value = 0u64;
        for _ in 0..width {
            value = (value << 1) | self.read_bit()? as u64;
        }
        Some(value)
    }
}

/// Minimal-length binary representation of `k`; `0` encodes as the single bit `0`.
pub fn base10_base2(k: u64) -> BitString {
    if k == 0 {
        return BitString::from_iter([false]);
    }
    let width = 64 - k.leading_zeros();
    (0..width).rev().map(|i| (k >> i) & 1 == 1).collect()
}

/// `base10_base2(k)` left-padded with zeros to exactly `width` bits.
pub fn to_fixed_width(k: u64, width: u32) -> Result<BitString> {
    let needed = bit_width(k);
    if needed > width {
        return Err(Error::WidthOverflow { value: k, width });
    }
    Ok((0..width).rev().map(|i| i < 64 && (k >> i) & 1 == 1).collect())
}

/// Number of bits `base10_base2(k)` occupies.
pub fn bit_width(k: u64) -> u32 {
    (64 - k.leading_zeros()).max(1)
}

/// ⌈log₂ m⌉, with `ceil_log2(1) == 0` and `ceil_log2(0) == 0`.
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// Fixed-length base-`m` digit tuple, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitTuple {
    digits: Vec<u64>,
    base: u64,
}

impl DigitTuple {
    pub fn new(digits: Vec<u64>, base: u64) -> Result<Self> {
        if base < 2 && !(base == 1 && digits.iter().all(|&d| d == 0)) {
            return Err(Error::DigitRange { value: 0, base, width: digits.len() as u32 });
        }
        if let Some(&bad) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitRange { value: bad, base, width: digits.len() as u32 });
        }
        Ok(DigitTuple { digits, base })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Σ digit_i · base^(n−i).
    pub fn value(&self) -> u64 {
        self.digits.iter().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// `j` written in base `m` with exactly `n` digits.
///
/// Base 1 is accepted for the degenerate single-symbol alphabet, where the
/// only representable value is `0`.
pub fn base10_basem(j: u64, m: u64, n: u32) -> Result<DigitTuple> {
    let range_err = Error::DigitRange { value: j, base: m, width: n };
    if m == 0 {
        return Err(range_err);
    }
    if m == 1 {
        return if j == 0 { DigitTuple::new(vec![0; n as usize], 1) } else { Err(range_err) };
    }
    match m.checked_pow(n) {
        Some(limit) if j >= limit => return Err(range_err),
        _ => {}
    }
    let mut digits = vec![0u64; n as usize];
    let mut rest = j;
    for slot in digits.iter_mut().rev() {
        *slot = rest % m;
        rest /= m;
    }
    if rest != 0 {
        return Err(range_err);
    }
    Ok(DigitTuple { digits, base: m })
}
