//! Super-critical estimates by population splitting, against plain sampling.
//!
//! For `(d-1) x > 1` almost all of the measure sits on walks of length of
//! order `n`, which a plain sample of walks essentially never produces.
//!
//!     cargo run --release --example splitting

use sawlab::graph::Family;
use sawlab::nbrw::{estimate_measure, estimate_measure_splitting, splitting_survival, McOptions, SplittingOptions};
use sawlab::saw::Convention;

fn main() -> sawlab::Result<()> {
    let x = 0.8;
    let opts = McOptions { convention: Convention::Paper, assume_transitive: true, bootstrap: 0 };
    println!("random 3-regular graphs, x = {x}, paper convention");
    println!("{:>6} {:>16} {:>16} {:>12}", "n", "L/n splitting", "L/n plain", "I");
    for n in [500, 1000, 2000] {
        let g = Family::RandomRegular { n, d: 3, seed: 1 }.generate()?;
        let split = splitting_survival(&g, 0, SplittingOptions { population: 2000, replicates: 16, seed: 1 })?;
        let est = estimate_measure_splitting(&split, x, opts)?;
        let plain = estimate_measure(&g, 0, x, 100_000, 1, opts)?;
        println!(
            "{n:>6} {:>9.4} ±{:.4} {:>16.4} {:>12.3e}",
            est.eval.length / n as f64,
            est.se_length / n as f64,
            plain.eval.length / n as f64,
            est.eval.intersection.unwrap()
        );
    }
    Ok(())
}
