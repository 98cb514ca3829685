use std::fmt;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped by the layer that produces them; the CLI maps the
/// `*CapExceeded` family to a dedicated exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("multiplication table is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("table entry {value} out of range for a monoid of size {size}")]
    IndexOutOfRange { value: usize, size: usize },
    #[error("element {identity} is not an identity: fails against element {witness}")]
    BadIdentity { identity: usize, witness: usize },
    #[error("multiplication is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("partition is not compatible with multiplication: {0}")]
    Incompatible(String),
    #[error("result would exceed the size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },
    #[error("automaton construction exceeded the state cap of {cap}")]
    StateCapExceeded { cap: usize },
    #[error("identity check needs {required} assignments, above the search cap of {cap}")]
    SearchSpaceExceeded { required: u128, cap: u64 },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not enough letters a-z for {needed} distinct witness letters")]
    AlphabetExhausted { needed: usize },
    #[error("monoid is in W_{m}, so it does not witness a separation")]
    NotAWitness { m: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by a configured resource cap rather than bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::SizeCapExceeded { .. }
                | Error::StateCapExceeded { .. }
                | Error::SearchSpaceExceeded { .. }
        )
    }

    pub(crate) fn syntax(position: usize, expected: impl fmt::Display) -> Self {
        Error::Syntax {
            position,
            expected: expected.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
