//! Run every applicable check on a few graphs and print the reports as CSV.
//!
//!     cargo run --release --example verify

use sawlab::graph::Family;
use sawlab::predictions::{verify_graph, VerifyOptions};

fn main() -> sawlab::Result<()> {
    for fam in [Family::Petersen, Family::Complete(6), Family::RandomRegular { n: 400, d: 3, seed: 9 }] {
        let g = fam.generate()?;
        let opts = VerifyOptions { budget: 50_000_000, ..Default::default() };
        let report = verify_graph(&g, &[0.1, 0.3, 0.5, 1.0], opts)?;
        println!("== {} ({})", g.name(), if report.any_violated() { "VIOLATED" } else { "no violations" });
        print!("{}", report.to_table().to_csv()?);
    }
    Ok(())
}
