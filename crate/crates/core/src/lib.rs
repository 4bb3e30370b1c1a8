//! Coset graphs, block systems, quotient lifting and certified Hamilton cycles
//! for vertex-transitive graphs.
//!
//! Permutations compose left to right: `p.then(&q)` applies `p` first.

pub mod build;
pub mod catalog;
pub mod error;
pub mod family;
pub mod graph;
pub mod io;
pub mod perm;
pub mod pipeline;
pub mod quotient;
pub mod search;
pub mod union_find;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use perm::{BlockSystem, PermGroup, Permutation, SemiregularDecomposition};
