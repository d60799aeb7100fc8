use thiserror::Error;

/// Every failure the toolkit reports. Verdict-level failures (a check that
/// does not hold) are report entries, not errors; these are misuse,
/// unsatisfiable preconditions and configuration problems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed families: `{left}` and `{right}` in one operation")]
    MixedFamily { left: String, right: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid element for `{family}`: {reason}")]
    InvalidElement { family: String, reason: String },
    #[error("budget must be at least 1")]
    InvalidBudget,
    #[error("no way-below rule or search data for `{0}`")]
    NoRule(String),
    #[error("no approximant procedure for `{0}`")]
    NoApproximant(String),
    #[error("chain `{label}` is not monotone at index {index}")]
    NotMonotone { label: String, index: usize },
    #[error("chain `{label}` is flagged rapid but term {index} is not way below term {next}", next = index + 1)]
    NotRapid { label: String, index: usize },
    #[error("chain `{label}` violates its declared ambient supremum at index {index}")]
    AmbientViolated { label: String, index: usize },
    #[error("chain `{0}` has no declared bound")]
    UnboundedChain(String),
    #[error("map `{0}` is not additive")]
    NotAMap(String),
    #[error("map `{0}` is not an order-embedding")]
    NotEmbedding(String),
    #[error("interval sequence `{0}` is not increasing")]
    NotIncreasing(String),
    #[error("supremum could not be produced: {0}")]
    SupFailed(String),
    #[error("carrier of size {size} exceeds the cap {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("search space of size {size} exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("grid exhausted: {0}")]
    GridExhausted(String),
    #[error("`{0}` is not all-compact")]
    NotAllCompact(String),
    #[error("system mismatch: {0}")]
    SystemMismatch(String),
    #[error("connecting maps of `{0}` failed their morphism check")]
    UncertifiedMaps(String),
    #[error("fragment of size {size} exceeds the cap {cap}")]
    FragmentTooLarge { size: usize, cap: usize },
    #[error("invalid table `{name}`: {reason}")]
    InvalidTable { name: String, reason: String },
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("`{object}`: {reason}")]
    Validation { object: String, reason: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(family: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidElement {
            family: family.into(),
            reason: reason.into(),
        }
    }
}
