//! JSON graph format and command-line front end for `artin-core`.

pub mod cli;
pub mod graph;

pub use cli::run;
pub use graph::{parse_coxeter, serialize_coxeter, GraphError};
