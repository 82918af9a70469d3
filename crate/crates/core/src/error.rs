use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by graph construction, the execution engine and the strategy drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: line {line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("COO layout needs {required} cells but only {available} are available")]
    Capacity { required: u64, available: u64 },

    #[error("node id {node} out of range for {num_nodes} nodes")]
    NodeOutOfRange { node: u64, num_nodes: usize },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("worklist overflow: reserving {requested} slots at cursor {cursor} exceeds capacity {capacity}")]
    WorklistOverflow {
        requested: usize,
        cursor: usize,
        capacity: usize,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("kernel failed in virtual thread {thread_id}: {msg}")]
    Launch { thread_id: usize, msg: String },

    #[error("kernel failed in virtual thread {thread_id}: {source}")]
    Kernel {
        thread_id: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
