//! Computads, free categories and groupoids, presentations by rewriting,
//! combinatorial CW models and deficiency of presentations.

pub mod cli;
pub mod computad;
pub mod cw;
pub mod deficiency;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod free;
pub mod graph;
pub mod linalg;
pub mod presentation;
pub mod random;
pub mod two_dim;

pub use error::{Error, GraphError, Result};
