//! Data-driven BFS and SSSP on an emulated GPU kernel model, with five
//! ways of distributing the active work across virtual threads.
//!
//! See [`strategies`] for the strategies, [`engine`] for the kernel model and
//! [`oracles`] for the sequential references.

pub mod engine;
pub mod error;
pub mod graph;
pub mod oracles;
pub mod strategies;

pub use error::{Error, Result};

// The guide's code blocks run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/degree-histogram.md")]
    mod degree_histogram {}
    #[doc = include_str!("../../../book/src/engine.md")]
    mod engine {}
    #[doc = include_str!("../../../book/src/strategies.md")]
    mod strategies {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
