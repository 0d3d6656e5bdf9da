//! Spectral laboratory for the algebraic connectivity of sparse graph
//! classes: exact Fiedler values, separator-based upper bounds with their
//! test vectors, shallow topological minor certificates, and the extremal
//! join constructions that realise the matching lower bounds.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod fmt;
pub mod graph;
pub mod io;
pub mod rational;
pub mod separators;
pub mod shallow;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{complete_join, generate, Family, Graph, VertexSet};
pub use rational::Rational;
