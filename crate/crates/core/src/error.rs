use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("root finding did not converge within {0} iterations")]
    RootFinding(usize),
    #[error("requested precision of {0} digits exceeds the supported 14")]
    PrecisionUnsupported(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero binary form has no multiplicity pattern")]
    ZeroForm,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("the two lines are equal")]
    EqualLines,
    #[error("zero coordinate triple")]
    ZeroTriple,
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("non-reduced input: {0}")]
    NonReduced(String),
    #[error("singularity outside the supported catalog at {point}: {detail}")]
    UnsupportedSingularity { point: String, detail: String },
    #[error("numeric bitangent search returned {found} lines instead of 28")]
    BitangentCount { found: usize, residuals: Vec<f64> },
    #[error("degree {0} exceeds the linear-algebra cap of 12")]
    DegreeCap(u32),
    #[error("Milnor algebra dimensions did not stabilise by degree {0}")]
    NoStabilization(usize),
    #[error("new syzygy generator in degree {0}, outside the scan window")]
    GeneratorWindow(usize),
    #[error("Hilbert series mismatch: {0}")]
    HilbertMismatch(String),
    #[error("classification criteria disagree: {0}")]
    ClassificationConflict(String),
    #[error("hyperflex count {0} outside 0..=12")]
    HyperflexRange(u32),
    #[error("unknown `{0}` is not bounded by any equation")]
    Unbounded(String),
    #[error("rank certification failed: {0}")]
    Certification(String),
    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),
}
