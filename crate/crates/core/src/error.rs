use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{value} does not fit in {width} bits")]
    WidthOverflow { value: u64, width: u32 },

    #[error("{value} is out of range for {width} base-{base} digits")]
    DigitRange { value: u64, base: u64, width: u32 },

    #[error("invalid bit character {0:?}")]
    InvalidBitChar(char),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0:#04x} is not in the alphabet")]
    UnknownSymbol(u8),

    #[error("invalid code table: {0}")]
    InvalidTable(String),

    #[error("frequency tuple is empty")]
    EmptyFrequencies,

    #[error("frequency at position {0} is zero")]
    ZeroFrequency(usize),

    #[error("length mismatch: {left} codewords vs {right} frequencies")]
    LengthMismatch { left: usize, right: usize },

    #[error("string too short for order {order}: length {len}")]
    StringTooShort { len: usize, order: usize },

    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("context ({context:?}, successor {successor}) has no code assigned")]
    MissingCode { context: Vec<u8>, successor: u8 },

    #[error("label ({frequency},{codeword}) is not a label of this automaton")]
    UnknownLabel { frequency: u64, codeword: String },

    #[error("context space of {m}^{n} entries is too large")]
    ContextSpaceTooLarge { m: usize, n: usize },

    #[error("malformed payload: {0}")]
    MalformedPayload(String),

    #[error("malformed container: {0}")]
    MalformedContainer(String),

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),
}

pub type Result<T> = std::result::Result<T, Error>;
