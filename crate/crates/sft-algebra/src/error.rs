use std::fmt;

/// Errors shared across the crate.
///
/// Dimension mismatches are reported separately from semantic failures
/// (an equation that does not hold is a `false` verification result,
/// not an error; an `R` that cannot be multiplied by `S` is an error).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation required a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Two matrices cannot be combined with the requested shapes.
    DimensionMismatch {
        context: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// An index was outside the matrix or sequence bounds.
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        bound: usize,
    },
    /// Input violated a documented precondition.
    Precondition(String),
    /// A polynomial did not have the required form (e.g. constant term 1).
    MalformedInput(String),
    /// A trace sequence is not realizable over the integers.
    NotRealizableOverZ { index: usize, detail: String },
    /// A matrix claimed to be over `Z+[t]` has a negative coefficient.
    NotOverZPlusT { row: usize, col: usize },
    /// A polynomial matrix entry has a nonzero constant term where the
    /// operation requires entries in `t Z+[t]`.
    NonzeroConstantTerm { row: usize, col: usize },
    /// An elementary move left the declared matrix class.
    IllegalMove(String),
    /// Verification of an internally constructed certificate failed.
    Internal(String),
    /// The matrix is not irreducible where irreducibility is required.
    NotIrreducible,
    /// The matrix is not nilpotent where nilpotency is required.
    NotNilpotent,
    /// A 2x2 matrix does not have the characteristic polynomial of the
    /// requested triangular family.
    FamilyMismatch { expected: String, found: String },
    /// The requested quantity is undefined for this input (e.g. the
    /// modular inverse needed by the transpose test does not exist).
    Inapplicable(String),
    /// A bounded enumeration ran out of budget.
    BudgetExceeded { context: &'static str, budget: u64 },
    /// A parse error in one of the text formats, with position info.
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    /// CLI usage error.
    Usage(String),
    /// Filesystem error while reading an input file.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::DimensionMismatch { context, lhs, rhs } => write!(
                f,
                "{context}: dimension mismatch {}x{} vs {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Error::IndexOutOfRange {
                context,
                index,
                bound,
            } => {
                write!(f, "{context}: index {index} out of range (bound {bound})")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::MalformedInput(msg) => write!(f, "malformed input: {msg}"),
            Error::NotRealizableOverZ { index, detail } => {
                write!(
                    f,
                    "trace sequence not realizable over Z at index {index}: {detail}"
                )
            }
            Error::NotOverZPlusT { row, col } => {
                write!(
                    f,
                    "entry ({row},{col}) has a negative coefficient; matrix is not over Z+[t]"
                )
            }
            Error::NonzeroConstantTerm { row, col } => {
                write!(
                    f,
                    "entry ({row},{col}) has a nonzero constant term; matrix is not over tZ+[t]"
                )
            }
            Error::IllegalMove(msg) => write!(f, "illegal move: {msg}"),
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::NotIrreducible => write!(f, "matrix is not irreducible"),
            Error::NotNilpotent => write!(f, "matrix is not nilpotent"),
            Error::FamilyMismatch { expected, found } => {
                write!(
                    f,
                    "characteristic polynomial mismatch: expected {expected}, found {found}"
                )
            }
            Error::Inapplicable(msg) => write!(f, "inapplicable: {msg}"),
            Error::BudgetExceeded { context, budget } => {
                write!(f, "{context}: enumeration budget {budget} exceeded")
            }
            Error::Parse { line, col, msg } => {
                write!(f, "parse error at line {line}, column {col}: {msg}")
            }
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
