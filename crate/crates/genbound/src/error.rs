use thiserror::Error;

/// Every failure the library can report.
///
/// Mathematical violations found by the verification routines are not errors;
/// they are returned as data inside reports. The variants here signal invalid
/// inputs or a broken construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinates {0} do not describe a point of the standard simplex")]
    NotInSimplex(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("projection from the center is undefined")]
    CenterProjection,
    #[error("level {level} is outside the admissible range for dimension {n}")]
    LevelOutOfRange { level: String, n: usize },
    #[error("breakpoints are not strictly increasing at {0}")]
    NonMonotone(String),
    #[error("polygon does not start at {lo} and end at {hi}")]
    BadEndpoints { lo: String, hi: String },
    #[error("{t} lies outside the interval [{lo}, {hi}]")]
    OutOfDomain { t: String, lo: String, hi: String },
    #[error("interval mismatch: [{0}] composed with [{1}]")]
    DomainMismatch(String, String),
    #[error("a lifted map must live on [0, {expected}], found [{lo}, {hi}]")]
    BadDomain { expected: String, lo: String, hi: String },
    #[error("endpoint {0} is not fixed")]
    EndpointNotFixed(String),
    #[error("levels alpha={alpha}, beta={beta} are not admissible for dimension {n}")]
    BadLevels { alpha: String, beta: String, n: usize },
    #[error("coordinate {index} equals alpha but its image is {image}, not beta")]
    CrossMismatch { index: usize, image: String },
    #[error("boundary point {point} on the alpha cross maps to {image}, off the beta cross")]
    CrossPropertyViolation { point: String, image: String },
    #[error("slot {j} of {point} should hold {expected}")]
    WrongSlotValue { j: usize, point: String, expected: String },
    #[error("{point} does not lie on face {j}")]
    NotOnFace { j: usize, point: String },
    #[error("L = {0} is not supported; only L = 0 and L = 1 are constructed")]
    UnsupportedL(usize),
    #[error("index {name} = {value} is out of range (max {max})")]
    IndexOutOfRange {
        name: &'static str,
        value: usize,
        max: usize,
    },
    #[error("dimension {n} exceeds the cache cap {cap}")]
    DimensionCap { n: usize, cap: usize },
    #[error("ring or dimension mismatch between chains")]
    ChainMismatch,
    #[error("coefficient tuple has length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },
    #[error("no inverse is available for {0}")]
    NoInverse(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
