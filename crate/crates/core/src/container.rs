//! On-disk container for an [`EahPayload`].
//!
//! ```text
//! magic    4 bytes  "EAHC"
//! version  1 byte   1
//! n        1 byte
//! m        1 byte   0 means 256
//! alphabet m bytes  symbols in index order
//! h        8 bytes  big-endian
//! |A|..|E| 5 × 8 bytes, big-endian bit lengths
//! body     A‖B‖C‖D‖E packed MSB first, zero-padded to a byte
//! ```

use crate::alphabet::Alphabet;
use crate::bitstring::BitString;
use crate::codec::EahPayload;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"EAHC";
pub const VERSION: u8 = 1;
/// Header bytes excluding the alphabet.
pub const FIXED_HEADER_LEN: usize = 4 + 1 + 1 + 1 + 8 + 5 * 8;

pub fn serialize(payload: &EahPayload) -> Result<Vec<u8>> {
    let order = u8::try_from(payload.order)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::MalformedContainer(format!("order {} does not fit in one byte", payload.order)))?;
    let m = payload.alphabet.len();
    let mut body = BitString::new();
    for part in payload.parts() {
        body.append(part);
    }
    let mut out = Vec::with_capacity(FIXED_HEADER_LEN + m + body.as_bytes().len());
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(order);
    out.push((m % 256) as u8);
    out.extend_from_slice(payload.alphabet.symbols());
    out.extend_from_slice(&payload.h.to_be_bytes());
    for part in payload.parts() {
        out.extend_from_slice(&(part.len() as u64).to_be_bytes());
    }
    out.extend_from_slice(body.as_bytes());
    Ok(out)
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.data.len()).ok_or_else(|| {
            Error::MalformedContainer(format!("truncated while reading {what}"))
        })?;
        let slice = &self.data[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_be_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Parses a container. Only the framing is checked here; whether the parts
/// are consistent with each other is left to the decoder.
pub fn parse(data: &[u8]) -> Result<EahPayload> {
    let mut cur = Cursor { data, pos: 0 };
    if cur.take(4, "magic")? != MAGIC {
        return Err(Error::MalformedContainer("bad magic".into()));
    }
    let version = cur.u8("version")?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let order = cur.u8("order")?;
    if order == 0 {
        return Err(Error::MalformedContainer("order 0".into()));
    }
    let m = match cur.u8("alphabet size")? {
        0 => 256,
        m => m as usize,
    };
    let alphabet = Alphabet::new(cur.take(m, "alphabet")?)
        .map_err(|e| Error::MalformedContainer(e.to_string()))?;
    let h = cur.u64("length")?;
    let mut lens = [0u64; 5];
    for len in &mut lens {
        *len = cur.u64("part lengths")?;
    }
    let total = lens
        .iter()
        .try_fold(0u64, |acc, &l| acc.checked_add(l))
        .ok_or_else(|| Error::MalformedContainer("part lengths overflow".into()))?;
    let body_len = usize::try_from(total.div_ceil(8))
        .map_err(|_| Error::MalformedContainer("body too large".into()))?;
    let body = cur.take(body_len, "body")?;
    if cur.pos != data.len() {
        return Err(Error::MalformedContainer(format!(
            "{} trailing bytes after body",
            data.len() - cur.pos
        )));
    }
    let body = BitString::from_bytes(body.to_vec(), total as usize);
    if body.as_bytes() != &data[data.len() - body_len..] {
        return Err(Error::MalformedContainer("nonzero padding bits".into()));
    }
    let mut parts = Vec::with_capacity(5);
    let mut offset = 0usize;
    for len in lens {
        let len = len as usize;
        parts.push(body.slice(offset, offset + len));
        offset += len;
    }
    let [a, b, c, d, e]: [BitString; 5] = parts.try_into().unwrap();
    Ok(EahPayload { alphabet, order: order as usize, h, a, b, c, d, e })
}
