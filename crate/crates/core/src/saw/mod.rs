//! Exact self-avoiding walk enumeration and evaluation of the walk measure.

mod census;
mod measure;
mod pairs;
mod scan;
mod visited;

pub use census::{enumerate_census, enumerate_census_partial, SawCensus, DEFAULT_NODE_BUDGET};
pub use measure::{evaluate, Convention, EvalOptions, Gamma, LogSeries, Method, SawMeasureEval};
pub use pairs::{enumerate_pairs, intersection_prob_bruteforce, verify_intersection_identity, IdentityResidual, PairCensus};
pub use scan::{critical_scan, monotonicity_scan, Crossing, MonotonicityReport, ScanCell, ScanOptions, ScanTable, Violation};

pub(crate) use measure::check_positive_x;
pub(crate) use visited::{BitSet, VisitedSet};
