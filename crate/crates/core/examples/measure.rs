//! Evaluate the walk measure: partition function, expected length,
//! trivial-intersection probability and exponent, under both conventions.
//!
//!     cargo run --release --example measure

use sawlab::graph::Family;
use sawlab::saw::{enumerate_census, evaluate, monotonicity_scan, Convention, EvalOptions, DEFAULT_NODE_BUDGET};

fn main() -> sawlab::Result<()> {
    let g = Family::Petersen.generate()?;
    let census = enumerate_census(&g, 0, 9, DEFAULT_NODE_BUDGET)?;
    println!("Petersen graph, root 0; c_k = {:?}", census.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("{:>6} {:>12} {:>10} {:>10} {:>10} | {:>10} {:>10}", "x", "Z", "L", "I", "gamma", "Z paper", "L paper");
    for x in [0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 2.0] {
        let exact = evaluate(&census, x, EvalOptions { convention: Convention::Exact, assume_transitive: true })?;
        let paper = evaluate(&census, x, EvalOptions { convention: Convention::Paper, assume_transitive: false })?;
        println!(
            "{x:>6} {:>12.5} {:>10.5} {:>10.5} {:>10} | {:>10.5} {:>10.5}",
            exact.z(),
            exact.length,
            exact.intersection.unwrap(),
            exact.gamma.value().map_or("undefined".into(), |v| format!("{v:.5}")),
            paper.z(),
            paper.length
        );
    }

    // L is non-decreasing in x on every graph.
    let grid: Vec<f64> = (1..=200).map(|i| i as f64 / 100.0).collect();
    for fam in [Family::Complete(6), Family::Cycle(9), Family::Hypercube(3), Family::Petersen] {
        let g = fam.generate()?;
        let census = enumerate_census(&g, 0, g.n() - 1, DEFAULT_NODE_BUDGET)?;
        let scan = monotonicity_scan(&census, &grid, Convention::Exact)?;
        println!("{:<12} L monotone on 200 points in (0, 2]: {}", g.name(), scan.monotone);
    }
    Ok(())
}
