use thiserror::Error;

/// Errors produced by the belief calculus.
///
/// Set-valued payloads are rendered with their frame labels where the
/// error is raised, so messages read like `{F,M}` rather than raw bits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate outcome label `{0}`")]
    DuplicateLabel(String),
    #[error("outcome labels must be non-empty")]
    EmptyLabel,
    #[error("a frame needs at least one outcome")]
    EmptyFrame,
    #[error("frame of size {size} exceeds the limit of {limit} outcomes")]
    FrameTooLarge { size: usize, limit: usize },
    #[error("unknown outcome label `{0}`")]
    UnknownLabel(String),
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("mask {bits:#b} does not fit a frame of size {size}")]
    MaskOutOfRange { bits: u32, size: usize },

    #[error("the empty set carries mass {0}")]
    EmptySetMass(String),
    #[error("negative mass {mass} on {set}")]
    NegativeMass { set: String, mass: String },
    #[error("masses sum to {total}, not 1")]
    MassNotNormalized { total: String },
    #[error("not a belief function: Möbius mass {mass} on {set}")]
    NotABeliefFunction { set: String, mass: String },
    #[error("set function is nonzero on the empty set ({0})")]
    NonzeroEmptySet(String),
    #[error("probability weights must be non-negative and sum to 1 (got total {total})")]
    InvalidDistribution { total: String },

    #[error("conditioning on {0} is undefined: all evidence contradicts it")]
    ConditioningUndefined(String),
    #[error("sets do not partition the frame")]
    NotAPartition,
    #[error("total conflict: Dempster's rule is undefined")]
    TotalConflict,
    #[error("{count} extreme points exceed the enumeration cap of {limit}")]
    TooManyExtremePoints { count: u128, limit: u128 },
    #[error("every compatible distribution gives probability 0 to {0}")]
    ConditionImpossible(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {locus}: {reason}")]
    Parse { locus: String, reason: String },
    #[error("model error at {locus}: {source}")]
    Located {
        locus: String,
        #[source]
        source: Box<Error>,
    },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

impl Error {
    pub(crate) fn located(locus: impl Into<String>, source: Error) -> Self {
        Error::Located {
            locus: locus.into(),
            source: Box::new(source),
        }
    }

    pub(crate) fn parse(locus: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            locus: locus.into(),
            reason: reason.into(),
        }
    }

    /// The underlying error with any location wrappers stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
