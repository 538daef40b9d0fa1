use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is empty after merging like terms")]
    EmptyPolynomial,

    #[error("too many variables: {0} (at most {max})", max = crate::mixedpoly::MAX_VARS)]
    TooManyVariables(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid weight vector {0:?}")]
    InvalidWeight(Vec<i64>),

    #[error("invalid index subset {0:?}")]
    InvalidSubset(Vec<usize>),

    #[error("polynomial is not convenient: no pure term in variable {axis}")]
    NotConvenient { axis: usize },

    #[error("degenerate face: expected affine dimension {expected}, found {found}")]
    DegenerateFace { expected: usize, found: usize },

    #[error("not of strongly polar positive weighted homogeneous face type at P={normal:?}: {reason}")]
    NotFaceType { normal: Vec<i64>, reason: String },

    #[error("chi strategy inapplicable: {0}")]
    StrategyInapplicable(String),

    #[error("found {roots} zeros on the slice z1 = 1, not divisible by p1 = {p1}")]
    NonIntegralOrbitCount { roots: usize, p1: i64 },

    #[error("no zeros of the face function found in the torus")]
    NoZerosFound,

    #[error("period {period} does not divide chi {chi} for I={subset}, P={normal:?}")]
    NonDivisible {
        subset: String,
        normal: Vec<i64>,
        period: i64,
        chi: i64,
    },

    #[error("invalid normal slice: r = p = {0}")]
    InvalidSlice(i64),

    #[error("invalid covering: need a > b >= 0, got a={a}, b={b}")]
    InvalidCovering { a: u32, b: u32 },

    #[error("cone is not regular: |det| = {det}")]
    NotRegular { det: String },

    #[error("face of P={normal:?} has no common polar degree; chart factor exponents are not integral")]
    OddParity { normal: Vec<i64> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("stellar subdivision did not terminate within {iters} iterations; offending cone {cone:?}")]
    IterationBudgetExceeded { iters: usize, cone: Vec<Vec<i64>> },

    #[error("S' / S correspondence failed: {0}")]
    BijectionFailure(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
