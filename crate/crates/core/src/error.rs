use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("site {site} is outside 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("ring size must be positive")]
    EmptyRing,
    #[error("ring sizes differ: {0} and {1}")]
    RingMismatch(usize, usize),
    #[error("{0}")]
    Domain(String),
    #[error("layer {0} is not contained in the layer below it")]
    NotNested(usize),
    #[error("oplus at site {site}: {requested} increments but only {available} entries")]
    OplusSize { site: usize, requested: u32, available: usize },
    #[error("label {label} is not below the smallest letter {min} of the input word")]
    LabelPrecondition { label: u32, min: u32 },
    #[error("row index {index} is outside 1..{rows}")]
    RowIndex { index: usize, rows: usize },
    #[error("queue shape is not weakly decreasing from the bottom row")]
    NotStraight,
    #[error("invalid priority order: {0}")]
    Order(String),
    #[error("chain has no states")]
    EmptyChain,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("chain is reducible")]
    Reducible,
    #[error("state {0} has no outgoing transitions")]
    Absorbing(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
