use std::fmt;

/// Pipeline stage that gave up, reported by [`Error::PipelineStall`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Expose,
    Pushout,
    Flatten,
    Regularize,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Expose => "expose",
            Stage::Pushout => "pushout",
            Stage::Flatten => "flatten",
            Stage::Regularize => "regularize",
        };
        f.write_str(name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {n}")]
    TooFewVertices { n: usize },

    #[error("edge {index} has length deviating from 1 by {deviation:e}")]
    EdgeLengthViolation { index: usize, deviation: f64 },

    #[error("angle at vertex {index} is undefined (zero-length edge)")]
    DegenerateAngle { index: usize },

    #[error("point is not on the knot: {0}")]
    PointNotOnKnot(String),

    #[error("vertices {i} and {j} coincide; reflection axis undefined")]
    DegenerateAxis { i: usize, j: usize },

    #[error("no coplanarizing reflection exists (residual {residual:e})")]
    NotCoplanarizable { residual: f64 },

    #[error("{stage} stage stalled after {iterations} iterations: {detail}")]
    PipelineStall {
        stage: Stage,
        iterations: usize,
        detail: String,
    },

    #[error("move not applicable: {0}")]
    NotApplicable(String),

    #[error("quadrilateral diagnostic has no sign change on [0, pi/2]: f(0)={f0:e}, f(pi/2)={f1:e}")]
    NoSignChange { f0: f64, f1: f64 },

    #[error("polygon is already regular")]
    AlreadyRegular,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("integrity failure at step {step}: {detail}")]
    IntegrityFailure { step: u64, detail: String },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("no generic projection direction found after {attempts} attempts")]
    NoGenericProjection { attempts: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("record {index}: {source}")]
    Record {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
