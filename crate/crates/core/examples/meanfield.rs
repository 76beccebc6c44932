//! Complete graphs in closed form: the three regimes, the critical constant,
//! and the Poisson tail bound.
//!
//!     cargo run --release --example meanfield

use sawlab::meanfield::{critical_constant, evaluate_complete, log_poisson_tail, poisson_tail_bound};

fn main() -> sawlab::Result<()> {
    println!("critical window, x = 1/(n-1): L / sqrt(n-1) -> {:.5}", critical_constant());
    for n in [100, 1_000, 10_000, 40_000, 1_000_000] {
        let e = evaluate_complete(n, 1.0 / (n - 1) as f64)?;
        println!("  n = {n:>8}: L / sqrt(n-1) = {:.5}", e.length / ((n - 1) as f64).sqrt());
    }

    let n = 10_000;
    println!("\nsub-critical, n = {n}, x = (1-eps)/(n-1): L -> (1-eps)/eps");
    for eps in [0.25, 0.5, 0.75] {
        let e = evaluate_complete(n, (1.0 - eps) / (n - 1) as f64)?;
        println!("  eps = {eps}: L = {:.5}, limit {:.5}", e.length, e.predicted_length);
    }

    let n = 500;
    println!("\nsuper-critical, n = {n}, x = (1+eps)/(n-1): L inside the envelope around eps/(1+eps) (n-1)");
    for eps in [0.5, 1.0, 2.0] {
        let e = evaluate_complete(n, (1.0 + eps) / (n - 1) as f64)?;
        let (lo, hi) = e.envelope.expect("envelope");
        println!("  eps = {eps}: L = {:.4} in [{lo:.4}, {hi:.4}], regime {}", e.length, e.regime);
    }

    println!("\nPoisson tail P[Poi(1/x) >= n] against its bound:");
    for (x, n) in [(0.5, 5), (0.1, 20), (0.01, 200), (0.001, 1500)] {
        println!("  x = {x:<6} n = {n:<5} ln tail {:>10.3}  ln bound {:>10.3}", log_poisson_tail(1.0 / x, n), poisson_tail_bound(x, n)?);
    }
    Ok(())
}
