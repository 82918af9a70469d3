use std::io;

use lbgraph::oracles::Mismatch;
use lbgraph::strategies::Strategy;

use crate::run::BenchmarkResult;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] lbgraph::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{strategy} disagrees with the oracle on {mismatch_count} nodes{}", describe(first))]
    Verification {
        strategy: Strategy,
        mismatch_count: usize,
        first: Option<Mismatch>,
        /// Everything measured up to and including the failing strategy.
        partial: Box<BenchmarkResult>,
    },

    #[error("writing CSV report: {0}")]
    Csv(#[from] csv::Error),

    #[error("writing JSON report: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

fn describe(first: &Option<Mismatch>) -> String {
    match first {
        Some(m) => format!(" (first: node {} expected {} got {})", m.node, m.expected, m.actual),
        None => String::new(),
    }
}

impl BenchError {
    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        use lbgraph::Error as E;
        match self {
            BenchError::Verification { .. } => 2,
            BenchError::Config(_) => 3,
            BenchError::Core(E::Parse { .. } | E::Config(_) | E::InvalidGraph(_) | E::NodeOutOfRange { .. } | E::EmptyGraph | E::Io(_)) => 3,
            _ => 1,
        }
    }
}
