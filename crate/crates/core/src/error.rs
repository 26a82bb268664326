use thiserror::Error;

/// Errors raised by series arithmetic, constructors, transforms and probes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a series whose constant term vanishes (|b0| = {0:e})")]
    DivisionBySingularSeries(f64),
    #[error("composition requires the inner series to have a zero constant term")]
    CompositionRequiresVanishingConstant,
    #[error("principal branch undefined: constant term {0} lies on the closed negative real axis")]
    BranchPointAtOrigin(String),
    #[error("series is not normalized: expected c0 = 0 and c1 = 1")]
    NotNormalized,
    #[error("series is not a normalized Caratheodory candidate: expected c0 = 1, got {0}")]
    NotCaratheodoryNormalized(String),
    #[error("Schwarz function must vanish at the origin")]
    NotSchwarzNormalized,
    #[error("constant term of the denominator is zero")]
    ConstantDenominatorZero,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("omitted value {0} is attained on the probe grid")]
    OmittedValueAttained(String),
    #[error("series order {got} is too low; at least {needed} required")]
    OrderTooLow { needed: usize, got: usize },
    #[error("evaluation hit a singularity at z = {0}")]
    EvaluationSingularity(String),
    #[error("derivative has no zero in |z| <= {r_max}")]
    NoZeroFound { r_max: f64 },
    #[error("predicate already fails at the innermost radius {0}")]
    DegenerateAtCenter(f64),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// True for errors caused by bad user input rather than by a computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::InvalidMeasure(_)
                | Error::Malformed(_)
                | Error::NotNormalized
                | Error::NotCaratheodoryNormalized(_)
                | Error::NotSchwarzNormalized
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
