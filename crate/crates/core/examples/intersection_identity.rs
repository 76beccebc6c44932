//! Enumerate pairs of walks that meet only at the root, and check
//! `L + 1 = I Z` on vertex-transitive graphs.
//!
//!     cargo run --release --example intersection_identity

use sawlab::graph::Family;
use sawlab::saw::{enumerate_pairs, evaluate, verify_intersection_identity, EvalOptions, DEFAULT_NODE_BUDGET};
use sawlab::Error;

fn main() -> sawlab::Result<()> {
    let g = Family::Complete(4).generate()?;
    let pairs = enumerate_pairs(&g, 0, DEFAULT_NODE_BUDGET)?;
    println!("K_4 root-disjoint pairs by total length: {:?}", pairs.counts);
    println!("K_4 I(1) = {} (49/256 = {})", pairs.intersection(1.0)?, 49.0 / 256.0);

    for fam in [Family::Petersen, Family::Cycle(6), Family::Complete(6), Family::Hypercube(3)] {
        let g = fam.generate()?;
        let d = g.regular_degree().unwrap() as f64;
        let xs = [0.1, 0.3, 1.0 / (d - 1.0), 1.0];
        let residuals = verify_intersection_identity(&g, 0, &xs, false, DEFAULT_NODE_BUDGET)?;
        let worst = residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
        println!("{:<12} max |L+1 - I Z|/(L+1) over x in {xs:?}: {worst:.2e}", g.name());
    }

    // On a path graph the identity fails, so it is refused; I itself is still defined.
    let path = sawlab::Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], 2)?;
    match verify_intersection_identity(&path, 2, &[1.0], false, DEFAULT_NODE_BUDGET) {
        Err(Error::NotTransitive) => println!("path graph: identity refused (not vertex-transitive)"),
        other => println!("path graph: unexpected {other:?}"),
    }
    let pairs = enumerate_pairs(&path, 2, DEFAULT_NODE_BUDGET)?;
    let eval = evaluate(&pairs.census, 1.0, EvalOptions::default())?;
    println!("path graph at x=1: I = {:.5}, (L+1)/Z = {:.5}", pairs.intersection(1.0)?, (eval.length + 1.0) / eval.z());
    Ok(())
}
