//! Locate the critical window by sweeping `x` over graphs of growing size.
//!
//!     cargo run --release --example critical_scan

use sawlab::graph::SizedFamily;
use sawlab::nbrw::SplittingOptions;
use sawlab::saw::{critical_scan, Convention, ScanOptions};

fn main() -> sawlab::Result<()> {
    // Complete graphs: Z blows up once x passes about 1/(n-1).
    let grid: Vec<f64> = (1..=40).map(|i| i as f64 * 0.01).collect();
    let opts = ScanOptions { levels: vec![5.0, 50.0], ..Default::default() };
    let table = critical_scan(SizedFamily::Complete, &[6, 8, 10], &grid, &opts)?;
    for c in &table.crossings {
        let shown = c.x_hat.map_or("not reached".into(), |x| format!("{x:.4}, (n-1) x = {:.3}", x * (c.size - 1) as f64));
        println!("K_{:<3} Z = {:<5} at x = {shown}", c.size, c.level);
    }

    // Random 3-regular graphs are far too big to enumerate; the scan falls back to splitting.
    let grid: Vec<f64> = (0..=20).map(|i| 0.35 + i as f64 * 0.015).collect();
    let opts = ScanOptions {
        budget: 10_000_000,
        convention: Convention::Paper,
        levels: vec![8.0, 20.0],
        fallback: Some(SplittingOptions { population: 1000, replicates: 8, seed: 1 }),
    };
    let table = critical_scan(SizedFamily::RandomRegular { d: 3, seed: 1 }, &[50, 100, 200], &grid, &opts)?;
    for c in &table.crossings {
        println!(
            "random 3-regular n = {:<4} Z = {:<4} at x = {}",
            c.size,
            c.level,
            c.x_hat.map_or("not reached".into(), |x| format!("{x:.4}"))
        );
    }
    Ok(())
}
