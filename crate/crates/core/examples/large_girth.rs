//! Predictions for random regular graphs, whose girth grows slowly with `n`,
//! against measured values.
//!
//!     cargo run --release --example large_girth

use sawlab::graph::{girth, Family};
use sawlab::meanfield::GammaLimit;
use sawlab::nbrw::{estimate_measure_from_stats, estimate_survival, McOptions};
use sawlab::predictions::{critical_l_bounds, gamma_prediction_large_girth, subcritical_l_bounds, subcritical_limits, BoundReport};
use sawlab::saw::Convention;

fn main() -> sawlab::Result<()> {
    let opts = McOptions { convention: Convention::Paper, ..Default::default() };

    let g = Family::RandomRegular { n: 10_000, d: 3, seed: 1 }.generate()?;
    let g0 = girth(&g).finite().unwrap();
    let stats = estimate_survival(&g, 0, 100_000, 1, g.n())?;
    let x = 0.2;
    let est = estimate_measure_from_stats(&stats, x, opts)?;
    let report = BoundReport::new("L", est.eval.length, est.ci_length, subcritical_l_bounds(x, 3, g0)?, "sub-critical sandwich");
    println!("{} (girth {g0}), x = {x}:", g.name());
    println!(
        "  L = {:.7} CI ({:.7}, {:.7}) in [{:.7}, {:.7}]: {}",
        report.measured, report.ci_lo, report.ci_hi, report.bound_lo, report.bound_hi, report.holds
    );
    let limits = subcritical_limits(x, 3)?;
    println!(
        "  limit forms: y/(1-y) = {:.4}, exact convention {:.4}, (1-x)/x = {:.4}",
        limits.paper_convention, limits.exact_convention, limits.stated_length
    );

    let g = Family::RandomRegular { n: 2000, d: 3, seed: 1 }.generate()?;
    let stats = estimate_survival(&g, 0, 100_000, 1, g.n())?;
    let bounds = critical_l_bounds(&stats, girth(&g).finite().unwrap(), None, g.n())?;
    let est = estimate_measure_from_stats(&stats, 0.5, opts)?;
    println!("\n{} at x = 1/2: {:.3} <= L = {:.3} <= {:.3}", g.name(), bounds.lo, est.eval.length, bounds.hi);

    println!("\nexponent at x = 1/(d-1) approaches 1:");
    for n in [500, 1000, 2000] {
        let g = Family::RandomRegular { n, d: 3, seed: 1 }.generate()?;
        let stats = estimate_survival(&g, 0, 100_000, 1, n)?;
        let est = estimate_measure_from_stats(&stats, 0.5, opts)?;
        println!("  n = {n:>5}: gamma = {:.4}", est.eval.gamma.value().unwrap());
    }
    let GammaLimit::Value(predicted) = gamma_prediction_large_girth(0.25, 3)? else { unreachable!() };
    let g = Family::RandomRegular { n: 2000, d: 3, seed: 1 }.generate()?;
    let stats = estimate_survival(&g, 0, 100_000, 1, 2000)?;
    let est = estimate_measure_from_stats(&stats, 0.25, opts)?;
    println!("sub-critical x = 0.25: gamma = {:.4}, predicted {predicted:.4}", est.eval.gamma.value().unwrap());
    Ok(())
}
