//! Non-backtracking random walks: self-intersection times, estimators of the
//! walk measure built on them, and exact evolution of the walk's law.

mod chain;
mod estimate;
mod exact;
mod splitting;
mod walk;

pub use chain::{
    large_girth_ratio, mixing_time, mixing_time_from, transition_distribution, ChainDistribution, DirectedEdge, MixingReport, MixingTime,
    NbChain,
};
pub use estimate::{
    bootstrap_histograms, census_from_survival, estimate_measure, estimate_measure_from_stats, estimate_measure_grid, paper_closed_forms,
    EstimatedCensus, McEstimate, McOptions, Z95,
};
pub use exact::{exact_t_distribution, ExactTDistribution};
pub use splitting::{estimate_measure_splitting, splitting_survival, SplitSurvival, SplittingOptions};
pub use walk::{estimate_survival, sample_histogram, sample_t, SurvivalCurve, TSampleStats};
