use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry out of range: table[{row}][{col}] = {value} but size is {size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u64,
        size: usize,
    },

    #[error("size must be positive")]
    EmptySet,

    #[error("{label} is not a quandle: {reason}")]
    NotAQuandle { label: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("conjugation class not closed: {a} conjugated by {b} leaves the class")]
    ClassNotClosed { a: usize, b: usize },

    #[error("operation size mismatch: op {index} has size {found}, expected {expected}")]
    SizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("distributive set must start with the trivial operation a*b = a")]
    MissingTrivialOp,

    #[error("index {index} out of range 1..={degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("degree {0} has no boundary map")]
    DegreeZero(usize),

    #[error("matrices do not compose: {left_cols} columns vs {right_rows} rows")]
    NotComposable { left_cols: usize, right_rows: usize },

    #[error("boundary composition is nonzero at column {column}")]
    BrokenComplex { column: usize },

    #[error("degenerate subcomplex not closed: column {column} hits a non-degenerate tuple")]
    DegenerateNotClosed { column: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("face relation {relation} fails on {tuple}")]
    FaceRelation { relation: String, tuple: String },

    #[error("{evaluations} evaluations exceed the budget of {budget}")]
    BudgetExceeded { evaluations: u64, budget: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
