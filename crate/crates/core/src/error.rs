use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// |λ| differs from the total area of the rectangles.
    SizeMismatch { lambda: usize, rects: usize },
    NonRectangular,
    /// A map was applied to an LR tableau of the wrong family.
    DomainMismatch(&'static str),
    TooLarge(&'static str),
    LevelTooSmall,
    BadWitness,
    MissingPadString { k: usize, len: usize },
    BadLevel { expected: usize, got: usize },
    NoStabilization { m_cap: usize },
    InvalidInput(String),
    /// Something the theory forbids happened; always a bug.
    InternalInconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SizeMismatch { lambda, rects } => {
                write!(f, "size mismatch: |lambda| = {lambda}, rectangles cover {rects}")
            }
            Error::NonRectangular => f.write_str("operation needs a rectangular tableau"),
            Error::DomainMismatch(what) => write!(f, "domain mismatch: {what}"),
            Error::TooLarge(what) => write!(f, "instance too large: {what}"),
            Error::LevelTooSmall => f.write_str("level too small for this weight or rectangle"),
            Error::BadWitness => f.write_str("witness is not a column-strict tableau of the required shape"),
            Error::MissingPadString { k, len } => {
                write!(f, "no zero-labelled string of length {len} in nu^({k})")
            }
            Error::BadLevel { expected, got } => write!(f, "weight has level {got}, expected {expected}"),
            Error::NoStabilization { m_cap } => write!(f, "no stabilization up to M = {m_cap}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
