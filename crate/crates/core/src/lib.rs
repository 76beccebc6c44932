//! Self-avoiding walk statistics on finite graphs.

pub mod cli;
pub mod error;
pub mod graph;
pub mod meanfield;
pub mod nbrw;
pub mod numeric;
pub mod predictions;
pub mod report;
pub mod saw;

pub use error::{Error, Result};
pub use graph::{Family, Girth, Graph, GraphMeta, Transitivity};
pub use saw::{Convention, Gamma, Method, SawCensus, SawMeasureEval};
