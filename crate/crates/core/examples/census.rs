//! Count self-avoiding walks by length and compare with closed forms.
//!
//!     cargo run --release --example census

use sawlab::graph::{girth, Family};
use sawlab::meanfield::saw_count_complete;
use sawlab::report::census_table;
use sawlab::saw::{enumerate_census, enumerate_census_partial, DEFAULT_NODE_BUDGET};
use std::time::Instant;

fn main() -> sawlab::Result<()> {
    // On K_n every ordering of distinct vertices is a walk: c_k = (n-1)!/(n-1-k)!.
    for n in 3..=10 {
        let g = Family::Complete(n).generate()?;
        let start = Instant::now();
        let census = enumerate_census(&g, 0, n - 1, DEFAULT_NODE_BUDGET)?;
        let exact = (0..n).all(|k| census.counts[k] == saw_count_complete(n, k).unwrap());
        println!("K_{n:<2} total {:>10}  closed form {}  ({:.1?})", census.total(), if exact { "ok" } else { "MISMATCH" }, start.elapsed());
    }

    // Below the girth a d-regular graph looks like a tree: c_k = d (d-1)^(k-1).
    let g = Family::RandomRegular { n: 60, d: 3, seed: 11 }.generate()?;
    let g0 = girth(&g).finite().unwrap();
    let census = enumerate_census(&g, 0, 12, DEFAULT_NODE_BUDGET)?;
    println!("\n{} (girth {g0}), lengths up to 12:", g.name());
    for (k, c) in census.counts.iter().enumerate().skip(1) {
        let tree = 3u64 * 2u64.pow(k as u32 - 1);
        println!("  c_{k:<2} = {c:>6}   tree count {tree:>6}{}", if k < g0 { "" } else { "  (cycles reachable)" });
    }

    // The census as written by the command line.
    let petersen = Family::Petersen.generate()?;
    print!("\n{}", census_table(&enumerate_census(&petersen, 0, 9, DEFAULT_NODE_BUDGET)?).to_csv()?);

    // A budget too small for the whole tree: the partial counts are flagged.
    let big = Family::RandomRegular { n: 200, d: 3, seed: 1 }.generate()?;
    let partial = enumerate_census_partial(&big, 0, 199, 1_000_000)?;
    println!("\npartial census of {}: complete = {}, longest walk found {}", big.name(), partial.complete, partial.k_max());
    Ok(())
}
