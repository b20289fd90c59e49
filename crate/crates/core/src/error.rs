use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input file or argument; `at` names the offending field.
    #[error("input error at {at}: {msg}")]
    Input { at: String, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("evaluation point {0} is not a fourth root of unity")]
    NotFourthRoot(String),

    #[error("segments {a} and {b} {what}")]
    Geometry { a: String, b: String, what: String },

    #[error("self-crossing {index} of component {component} has no over/under override")]
    MissingOverride { component: usize, index: usize },

    #[error("override for component {component} names crossing {index}, which does not exist")]
    BadOverride { component: usize, index: usize },

    #[error("component {0} passes through the puncture")]
    ThroughPuncture(usize),

    #[error("component {component}: {msg}")]
    BadComponent { component: usize, msg: String },

    #[error("surfaces differ: {0} vs {1}")]
    SurfaceMismatch(String, String),

    #[error("not an embedded multicurve: {0}")]
    NotMulticurve(String),

    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },

    #[error("could not reach general position after {0} perturbations")]
    PerturbationFailed(usize),

    #[error("invalid band: {0}")]
    InvalidBand(String),

    #[error("grading precondition violated: {0}")]
    Grading(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn input(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Input { at: at.into(), msg: msg.into() }
    }
}
