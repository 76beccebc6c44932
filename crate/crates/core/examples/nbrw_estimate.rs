//! Estimate the walk measure from non-backtracking walks and compare with
//! exact values.
//!
//!     cargo run --release --example nbrw_estimate

use num_traits::ToPrimitive;
use sawlab::graph::Family;
use sawlab::nbrw::{census_from_survival, estimate_measure_from_stats, estimate_survival, exact_t_distribution, McOptions};
use sawlab::saw::{enumerate_census, evaluate, EvalOptions, DEFAULT_NODE_BUDGET};

fn main() -> sawlab::Result<()> {
    let g = Family::Petersen.generate()?;
    let stats = estimate_survival(&g, 0, 100_000, 42, g.n())?;
    let exact_t = exact_t_distribution(&g, 0, DEFAULT_NODE_BUDGET)?;
    println!("Petersen: self-intersection time T from 100000 walks");
    println!("{:>3} {:>10} {:>10} {:>10}", "k", "P[T>k]", "stderr", "exact");
    for k in 0..=g.n() {
        let exact = exact_t.survival[k].to_f64().unwrap();
        println!("{k:>3} {:>10.5} {:>10.5} {:>10.5}", stats.survival.values[k], stats.survival.stderr[k], exact);
    }
    println!("E[T] sampled {:.4}, exact {}", stats.mean_t(), exact_t.mean_t());

    // Counts implied by the survival curve against the census.
    let census = enumerate_census(&g, 0, 9, DEFAULT_NODE_BUDGET)?;
    let implied = census_from_survival(&stats);
    println!("\n{:>3} {:>10} {:>12} {:>10}", "k", "c_k", "estimate", "exact E[]");
    for k in 1..=9 {
        println!("{k:>3} {:>10} {:>12.2} {:>10}", census.counts[k], implied.log_counts[k].exp(), exact_t.implied_count(k));
    }

    let opts = McOptions { assume_transitive: true, ..Default::default() };
    println!("\n{:>5} {:>22} {:>9} {:>22} {:>9}", "x", "Z (95% CI)", "exact", "L (95% CI)", "exact");
    for x in [0.2, 0.5, 1.0] {
        let est = estimate_measure_from_stats(&stats, x, opts)?;
        let exact = evaluate(&census, x, EvalOptions::default())?;
        let (zl, zh) = (est.ci_log_z.0.exp(), est.ci_log_z.1.exp());
        println!(
            "{x:>5} {:>8.4} ({zl:.4}, {zh:.4}) {:>9.4} {:>8.4} ({:.4}, {:.4}) {:>9.4}",
            est.eval.z(),
            exact.z(),
            est.eval.length,
            est.ci_length.0,
            est.ci_length.1,
            exact.length
        );
    }
    Ok(())
}
