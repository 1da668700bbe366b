use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("invalid node id {0}")]
    InvalidNode(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: malformed edge line: {reason}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("target below current clustering (target {target}, current {current})")]
    TargetBelowCurrent { target: f64, current: f64 },

    #[error("katz series diverges: beta {beta} >= 1/rho(A), spectral radius estimate {spectral_radius:.6}")]
    Divergence { beta: f64, spectral_radius: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("leaked edge ({0}, {1}): test pair is present in the training graph")]
    LeakedEdge(i64, i64),

    #[error("plan: {0}")]
    Plan(String),
}

impl Error {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGraph => "empty_graph",
            Error::InvalidNode(_) => "invalid_node",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::MalformedLine { .. } => "malformed_line",
            Error::Io { .. } => "io",
            Error::TargetBelowCurrent { .. } => "target_below_current",
            Error::Divergence { .. } => "divergence",
            Error::NoConvergence { .. } => "no_convergence",
            Error::LeakedEdge(..) => "leaked_edge",
            Error::Plan(_) => "plan",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
