//! Tuple-based Huffman construction.
//!
//! The work list holds entries `(weight, ages…, members)`. Each round takes
//! the two lightest entries (ties go to the lower position), prepends `0` to
//! the codewords of the earlier entry's members and `1` to the later one's,
//! removes both and appends their merge at the tail. With the same input the
//! output is always bit-identical, which the decoder relies on.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// One element of the work list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkEntry {
    pub weight: u64,
    /// Age counters; a fresh entry has a single `0`, each merge bumps every
    /// counter except the two leading ones, which are summed into `weight`.
    pub ages: Vec<u64>,
    /// Zero-based indices into the input frequency tuple.
    pub members: Vec<usize>,
}

impl WorkEntry {
    fn leaf(weight: u64, index: usize) -> Self {
        WorkEntry { weight, ages: vec![0], members: vec![index] }
    }

    /// Combines two entries: weights add, the remaining counters are each
    /// incremented, and the member lists are concatenated.
    pub fn merge(&self, other: &WorkEntry) -> WorkEntry {
        let ages = self.ages.iter().chain(&other.ages).map(|a| a + 1).collect();
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        WorkEntry { weight: self.weight + other.weight, ages, members }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeAssignment {
    codes: Vec<BitString>,
}

impl CodeAssignment {
    pub fn codes(&self) -> &[BitString] {
        &self.codes
    }

    pub fn into_codes(self) -> Vec<BitString> {
        self.codes
    }

    /// `(codeword, length)` pairs in input order.
    pub fn pairs(&self) -> impl Iterator<Item = (&BitString, usize)> {
        self.codes.iter().map(|c| (c, c.len()))
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.codes.iter().map(BitString::len).collect()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

/// Assigns a prefix code to `freqs`, preserving input order.
///
/// A single frequency gets the codeword `0`.
pub fn huffman(freqs: &[u64]) -> Result<CodeAssignment> {
    huffman_traced(freqs).map(|(codes, _)| codes)
}

/// Like [`huffman`], also returning the final work list (one entry).
pub fn huffman_traced(freqs: &[u64]) -> Result<(CodeAssignment, Vec<WorkEntry>)> {
    if freqs.is_empty() {
        return Err(Error::EmptyFrequencies);
    }
    if let Some(pos) = freqs.iter().position(|&f| f == 0) {
        return Err(Error::ZeroFrequency(pos));
    }
    let mut list: Vec<WorkEntry> =
        freqs.iter().enumerate().map(|(i, &f)| WorkEntry::leaf(f, i)).collect();
    let mut codes = vec![BitString::new(); freqs.len()];
    if freqs.len() == 1 {
        codes[0].push(false);
    }
    while list.len() > 1 {
        let (i, j) = two_smallest(&list);
        for &x in &list[i].members {
            codes[x].prepend(false);
        }
        for &x in &list[j].members {
            codes[x].prepend(true);
        }
        let merged = list[i].merge(&list[j]);
        list.remove(j);
        list.remove(i);
        list.push(merged);
    }
    Ok((CodeAssignment { codes }, list))
}

/// Positions `i < j` of the two lightest entries, lower positions winning ties.
fn two_smallest(list: &[WorkEntry]) -> (usize, usize) {
    let mut first = 0;
    let mut second = usize::MAX;
    for q in 1..list.len() {
        let w = list[q].weight;
        if w < list[first].weight {
            second = first;
            first = q;
        } else if second == usize::MAX || w < list[second].weight {
            second = q;
        }
    }
    (first.min(second), first.max(second))
}

/// Σ f_i · l_i.
pub fn weighted_cost(assignment: &CodeAssignment, freqs: &[u64]) -> Result<u64> {
    if assignment.len() != freqs.len() {
        return Err(Error::LengthMismatch { left: assignment.len(), right: freqs.len() });
    }
    Ok(assignment.codes.iter().zip(freqs).map(|(c, &f)| f * c.len() as u64).sum())
}
