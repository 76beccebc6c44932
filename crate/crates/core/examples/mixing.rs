//! Exact evolution of the non-backtracking walk and its mixing time.
//!
//!     cargo run --release --example mixing

use sawlab::graph::{girth, Family};
use sawlab::nbrw::{large_girth_ratio, mixing_time, mixing_time_from, MixingTime, NbChain};

fn main() -> sawlab::Result<()> {
    let g = Family::RandomRegular { n: 200, d: 3, seed: 2 }.generate()?;
    let chain = NbChain::new(&g)?;
    let m = chain.edges().len();
    let uniform = vec![1.0 / m as f64; m];
    let drift = chain.step(&uniform).iter().map(|p| (p - 1.0 / m as f64).abs()).fold(0.0, f64::max);
    println!("{}: uniform law on {m} directed edges moves by at most {drift:.1e} in one step", g.name());

    for fam in [Family::Complete(8), Family::Petersen, Family::Hypercube(3), Family::RandomRegular { n: 500, d: 3, seed: 4 }] {
        let g = fam.generate()?;
        let report = mixing_time(&g, 300)?;
        let detail = match report.tau {
            MixingTime::Tau(tau) => {
                let g0 = girth(&g).finite().unwrap();
                format!("tau = {tau}, tau / (d-1)^(g/4) = {:.3}", large_girth_ratio(tau, g0, g.regular_degree().unwrap()))
            }
            MixingTime::ExceedsHorizon => "does not mix within 300 steps".to_string(),
        };
        println!("{:<24} {detail}", g.name());
    }

    // From a handful of starts: a lower bound, and much cheaper on big graphs.
    let big = Family::RandomRegular { n: 10_000, d: 3, seed: 1 }.generate()?;
    let report = mixing_time_from(&big, &[0, 1, 2, 3], 200)?;
    println!("{} from 4 starts: tau >= {}", big.name(), report.tau);
    Ok(())
}
