use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data that cannot be parsed or refers to vertices out of range.
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A value outside the domain of a closed-form calculator.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("scaled community {community} has size 0")]
    DegenerateCommunity { community: usize },

    /// No allocation can satisfy the collision threshold, even choosing every node.
    #[error("infeasible: f at full allocation is {f_full} > alpha = {alpha}")]
    Infeasible { alpha: f64, f_full: f64 },

    #[error("no resolving set exists: {0}")]
    NoResolvingSet(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("oracle exhausted: no feasible point up to level {0}")]
    OracleExhausted(usize),

    #[error("arithmetic on an unreachable distance")]
    UnreachableArithmetic,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible { .. } => 3,
            Error::NoResolvingSet(_) => 4,
            Error::SizeCap(_) | Error::OracleExhausted(_) => 5,
            Error::UnreachableArithmetic => 1,
            _ => 2,
        }
    }
}
