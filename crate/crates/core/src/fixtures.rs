//! Embedded reference inputs.

/// The 200-symbol string over `{a,b,c,d,e}` whose order-1 automaton has eight
/// labeled edges.
pub const W200: &[u8] = include_bytes!("../fixtures/w200.txt");

/// SHA-256 of [`W200`], hex.
pub const W200_SHA256: &str = "aa1e440d6e1d8af9bc1ae9217b2f9adcd3a26edecb1e0639a408e355abad8f60";

/// Nine-symbol string over `{a,b,c,d}` used for the small automaton.
pub const ABDBACDBA: &[u8] = b"abdbacdba";

/// Order-2 adaptive code over `{a,b,c}` in the table text format.
pub const TABLE_1: &str = "\
# context  c(a,u) c(b,u) c(c,u)
λ   00 11 10
a   01 10 11
b   10 00 01
c   10 11 01
aa  00 11 10
ab  11 01 00
ac  10 00 11
ba  01 00 11
bb  10 11 00
bc  11 01 00
ca  11 10 00
cb  11 00 10
cc  00 10 11
";

/// Published bit counts for [`W200`]: whole-string Huffman, order-1 EAH, LZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceCounts {
    pub lh: u64,
    pub leah1: u64,
    pub llz: u64,
}

pub const W200_REFERENCE: ReferenceCounts = ReferenceCounts { lh: 462, leah1: 310, llz: 388 };
