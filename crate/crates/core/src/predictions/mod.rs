//! Closed-form predictions for regular graphs of large girth, and reports that
//! compare measured quantities against them.
//!
//! Throughout, `y = (d-1) x`: `y < 1` is sub-critical, `y = 1` critical and
//! `y > 1` super-critical.

mod harness;

pub use harness::{verify_graph, VerifyOptions, VerifyReport, IDENTITY_TOLERANCE};

use crate::error::{Error, Result};
use crate::meanfield::GammaLimit;
use crate::nbrw::{TSampleStats, Z95};
use crate::numeric::FLOAT_TOLERANCE;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Violated,
    /// The interval of the measurement straddles a bound.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Violated => "Violated",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// A measurement with its interval checked against `[bound_lo, bound_hi]`
/// (either end may be infinite).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    pub measured: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub bound_lo: f64,
    pub bound_hi: f64,
    pub source: String,
    pub holds: Verdict,
}

impl BoundReport {
    /// `Holds` only when the whole interval lies within the bounds, `Violated`
    /// when it lies entirely outside; comparisons allow a relative slack of
    /// [`FLOAT_TOLERANCE`].
    pub fn new(quantity: &str, measured: f64, ci: (f64, f64), bounds: (f64, f64), source: &str) -> BoundReport {
        let (ci_lo, ci_hi) = (ci.0.min(measured), ci.1.max(measured));
        let (lo, hi) = bounds;
        let slack = |a: f64, b: f64| {
            let s = FLOAT_TOLERANCE * a.abs().max(b.abs());
            if s.is_finite() {
                s
            } else {
                0.0
            }
        };
        let above_lo = |v: f64| v >= lo - slack(v, lo);
        let below_hi = |v: f64| v <= hi + slack(v, hi);
        let holds = if above_lo(ci_lo) && below_hi(ci_hi) {
            Verdict::Holds
        } else if !above_lo(ci_hi) || !below_hi(ci_lo) {
            Verdict::Violated
        } else {
            Verdict::Inconclusive
        };
        BoundReport {
            quantity: quantity.to_string(),
            measured,
            ci_lo,
            ci_hi,
            bound_lo: lo,
            bound_hi: hi,
            source: source.to_string(),
            holds,
        }
    }

    /// A value known without sampling error.
    pub fn exact(quantity: &str, measured: f64, bounds: (f64, f64), source: &str) -> BoundReport {
        BoundReport::new(quantity, measured, (measured, measured), bounds, source)
    }
}

fn check_degree(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::PreconditionViolated(format!("degree must be at least 3, got {d}")));
    }
    Ok(())
}

/// Bracket for the `Convention::Paper` `L` on a `d`-regular graph of girth `g` at
/// sub-critical `x`:
/// `y/(1-y) - g y^g/(1-y^g) <= L <= y/(1-y)`.
pub fn subcritical_l_bounds(x: f64, d: usize, g: usize) -> Result<(f64, f64)> {
    check_degree(d)?;
    let y = (d - 1) as f64 * x;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::PreconditionViolated(format!("sub-critical bounds need 0 < (d-1)x < 1, got {y}")));
    }
    if g < 3 {
        return Err(Error::PreconditionViolated(format!("girth must be at least 3, got {g}")));
    }
    let yg = y.powi(g as i32);
    let hi = y / (1.0 - y);
    Ok((hi - g as f64 * yg / (1.0 - yg), hi))
}

/// Limits of `L` along sub-critical large-girth sequences, in the forms that
/// appear in the literature and under both conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubcriticalLimits {
    /// `y/(1-y)`: `Convention::Paper`, from the self-intersection time.
    pub paper_convention: f64,
    /// `d x / ((1-y)(1-y+dx))`: exact convention, from `c_k = d(d-1)^(k-1)`.
    pub exact_convention: f64,
    /// `(1-x)/x`, as the limit is sometimes stated.
    pub stated_length: f64,
    /// `(1 - 1/d) x`, as the intersection limit is sometimes stated.
    pub stated_intersection: f64,
}

pub fn subcritical_limits(x: f64, d: usize) -> Result<SubcriticalLimits> {
    check_degree(d)?;
    let df = d as f64;
    let y = (df - 1.0) * x;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::PreconditionViolated(format!("sub-critical limits need 0 < (d-1)x < 1, got {y}")));
    }
    Ok(SubcriticalLimits {
        paper_convention: y / (1.0 - y),
        exact_convention: df * x / ((1.0 - y) * (1.0 - y + df * x)),
        stated_length: (1.0 - x) / x,
        stated_intersection: (1.0 - 1.0 / df) * x,
    })
}

/// `[E[T]/2 - 1/2, (d/(d-1)) E[T] - 1]`, the bracket for the `Convention::Paper`
/// `L` at `x = 1/(d-1)`.
pub fn critical_l_bracket(mean_t: f64, d: usize) -> (f64, f64) {
    let df = d as f64;
    (0.5 * (mean_t - 1.0), df / (df - 1.0) * mean_t - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalBounds {
    pub lo: f64,
    pub hi: f64,
    /// 95% intervals of each end from the sampling error of `E[T]`.
    pub lo_ci: (f64, f64),
    pub hi_ci: (f64, f64),
    /// `g (d-1)^g`, the a-priori scale of `E[T]`.
    pub girth_cap: f64,
    /// `min(tau, sqrt(n))`, the scale of the lower bound `L >= c' min(tau, sqrt(n))`
    /// (the constant `c'` is not known).
    pub mixing_scale: Option<f64>,
}

/// Plug-in critical bracket from a sample of `T`.
pub fn critical_l_bounds(stats: &TSampleStats, g: usize, tau: Option<usize>, n: usize) -> Result<CriticalBounds> {
    if stats.num_samples == 0 {
        return Err(Error::EmptyStats);
    }
    let d = stats.degree;
    let mean = stats.mean_t();
    let half = Z95 * stats.sd_t() / (stats.num_samples as f64).sqrt();
    let (lo, hi) = critical_l_bracket(mean, d);
    let (lo_a, hi_a) = critical_l_bracket(mean - half, d);
    let (lo_b, hi_b) = critical_l_bracket(mean + half, d);
    Ok(CriticalBounds {
        lo,
        hi,
        lo_ci: (lo_a, lo_b),
        hi_ci: (hi_a, hi_b),
        girth_cap: g as f64 * ((d - 1) as f64).powi(g as i32),
        mixing_scale: tau.map(|t| (t as f64).min((n as f64).sqrt())),
    })
}

/// `c min(1, ln y) n`, the super-critical lower bound on `L`; `c` is not
/// explicit and has to be calibrated.
pub fn supercritical_l_floor(x: f64, d: usize, n: usize, c: f64) -> Result<f64> {
    check_degree(d)?;
    let y = (d - 1) as f64 * x;
    if !(y > 1.0) {
        return Err(Error::PreconditionViolated(format!("super-critical floor needs (d-1)x > 1, got {y}")));
    }
    if !(c > 0.0) {
        return Err(Error::PreconditionViolated(format!("the constant must be positive, got {c}")));
    }
    Ok(c * y.ln().min(1.0) * n as f64)
}

/// The constant `c` that puts the floor at `safety` times a measured `L` on
/// one instance, for use on the others.
pub fn calibrate_supercritical_constant(length: f64, x: f64, d: usize, n: usize, safety: f64) -> Result<f64> {
    let unit = supercritical_l_floor(x, d, n, 1.0)?;
    Ok(safety * length / unit)
}

/// Lower bound on `P[T > k + m] / P[T > k]` when `m` is at least the mixing
/// time: `1 - 3(k+1)m/(2n) - m^2 (d-1)^(-floor(g/2))`, clamped to `[0, 1]`.
pub fn survival_floor(k: usize, m: usize, n: usize, g: usize, d: usize) -> f64 {
    let (kf, mf, nf) = (k as f64, m as f64, n as f64);
    let v = 1.0 - 3.0 * (kf + 1.0) * mf / (2.0 * nf) - mf * mf * ((d - 1) as f64).powi(-((g / 2) as i32));
    v.clamp(0.0, 1.0)
}

/// `c e^(-delta k)`, the exponential lower bound on `P[T > k]`, valid for
/// `k <= delta n / 6`.
pub fn exponential_survival_floor(k: usize, n: usize, c: f64, delta: f64) -> Result<f64> {
    if k as f64 > delta * n as f64 / 6.0 {
        return Err(Error::PreconditionViolated(format!("the exponential floor needs k <= delta n / 6, got k = {k}")));
    }
    Ok(c * (-delta * k as f64).exp())
}

/// Limit of the exponent on large-girth `d`-regular sequences at fixed `x`:
/// `(ln(d/(d-1)) - ln(1-y)) / -ln(1-y)` below criticality, 1 at `y = 1`
/// (to a relative tolerance of `1e-12`) and unbounded above.
pub fn gamma_prediction_large_girth(x: f64, d: usize) -> Result<GammaLimit> {
    check_degree(d)?;
    if !(x > 0.0) {
        return Err(Error::PreconditionViolated(format!("x must be positive, got {x}")));
    }
    let y = (d - 1) as f64 * x;
    if (y - 1.0).abs() <= 1e-12 {
        return Ok(GammaLimit::Value(1.0));
    }
    if y > 1.0 {
        return Ok(GammaLimit::Unbounded);
    }
    let df = d as f64;
    let tail = -(-y).ln_1p();
    Ok(GammaLimit::Value(((df / (df - 1.0)).ln() + tail) / tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::nbrw::{estimate_survival, exact_t_distribution};
    use crate::saw::{enumerate_census, evaluate, Convention, EvalOptions, DEFAULT_NODE_BUDGET};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn subcritical_bracket_example() {
        let (lo, hi) = subcritical_l_bounds(0.2, 3, 20).unwrap();
        assert!((hi - 2.0 / 3.0).abs() < 1e-15);
        let correction = 20.0 * 0.4f64.powi(20) / (1.0 - 0.4f64.powi(20));
        assert!((hi - lo - correction).abs() < 1e-15);
        assert!((correction - 2.2e-7).abs() < 1e-8);
        let (lo, hi) = subcritical_l_bounds(1e-9, 3, 5).unwrap();
        assert!(lo.abs() < 1e-8 && hi < 1e-8);
        assert!(matches!(subcritical_l_bounds(0.5, 3, 5), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn subcritical_bracket_shrinks_with_girth() {
        for y in [0.3, 0.6, 0.9] {
            let widths: Vec<f64> = (3..400)
                .map(|g| {
                    let (lo, hi) = subcritical_l_bounds(y / 2.0, 3, g).unwrap();
                    hi - lo
                })
                .collect();
            assert!(widths.windows(2).all(|w| w[1] <= w[0]), "y={y}");
            assert!(widths[0] > 0.05 && *widths.last().unwrap() < 1e-12, "y={y}");
        }
    }

    #[test]
    fn subcritical_bracket_holds_exactly_on_small_graphs() {
        for fam in [Family::Petersen, Family::Complete(6), Family::Hypercube(3), Family::RandomRegular { n: 14, d: 3, seed: 2 }] {
            let g = fam.generate().unwrap();
            let girth = crate::graph::girth(&g).finite().unwrap();
            let d = g.regular_degree().unwrap();
            let census = enumerate_census(&g, 0, g.n() - 1, DEFAULT_NODE_BUDGET).unwrap();
            for i in 1..20 {
                let x = i as f64 / 20.0 / (d - 1) as f64;
                let l = evaluate(&census, x, EvalOptions { convention: Convention::Paper, ..Default::default() }).unwrap().length;
                let bounds = subcritical_l_bounds(x, d, girth).unwrap();
                assert_eq!(BoundReport::exact("L", l, bounds, "t").holds, Verdict::Holds, "{fam} x={x}");
            }
        }
    }

    #[test]
    fn exact_limit_forms() {
        // On a tree-like neighbourhood c_k = d (d-1)^(k-1); sum the series directly.
        let (x, d) = (0.2f64, 3usize);
        let y = 0.4;
        let (mut z, mut first) = (1.0, 0.0);
        for k in 1..400 {
            let t = d as f64 * 2f64.powi(k - 1) * x.powi(k);
            z += t;
            first += k as f64 * t;
        }
        let limits = subcritical_limits(x, d).unwrap();
        assert!((first / z - limits.exact_convention).abs() < 1e-12);
        assert!((first / (z - 1.0 + 1.5) - limits.paper_convention).abs() < 1e-12);
        assert!((limits.paper_convention - y / (1.0 - y)).abs() < 1e-15);
        assert!((limits.stated_length - 4.0).abs() < 1e-12);
    }

    #[test]
    fn critical_bracket_on_petersen_is_exact() {
        let g = Family::Petersen.generate().unwrap();
        let dist = exact_t_distribution(&g, 0, DEFAULT_NODE_BUDGET).unwrap();
        let (lo, hi) = critical_l_bracket(dist.mean_t().to_f64().unwrap(), 3);
        let census = enumerate_census(&g, 0, 9, DEFAULT_NODE_BUDGET).unwrap();
        let l = evaluate(&census, 0.5, EvalOptions { convention: Convention::Paper, ..Default::default() }).unwrap().length;
        assert!(lo <= l && l <= hi, "{lo} <= {l} <= {hi}");
    }

    #[test]
    fn critical_bounds_from_constant_sample() {
        let stats = TSampleStats::from_histogram(0, 0, 3, vec![0, 0, 0, 0, 0, 0, 0, 50], 7);
        let b = critical_l_bounds(&stats, 7, Some(12), 100).unwrap();
        assert_eq!(b.lo, 3.0);
        assert_eq!(b.lo_ci, (3.0, 3.0));
        assert_eq!(b.girth_cap, 7.0 * 128.0);
        assert_eq!(b.mixing_scale, Some(10.0));
        let empty = TSampleStats::from_histogram(0, 0, 3, vec![0; 8], 7);
        assert!(matches!(critical_l_bounds(&empty, 7, None, 100), Err(Error::EmptyStats)));
    }

    #[test]
    fn critical_bounds_self_consistent_on_random_graph() {
        let g = Family::RandomRegular { n: 2000, d: 3, seed: 4 }.generate().unwrap();
        let stats = estimate_survival(&g, 0, 20_000, 3, 2000).unwrap();
        let b = critical_l_bounds(&stats, 3, None, 2000).unwrap();
        let opts = crate::nbrw::McOptions { convention: Convention::Paper, bootstrap: 0, ..Default::default() };
        let l = crate::nbrw::estimate_measure_from_stats(&stats, 0.5, opts).unwrap().eval.length;
        assert!(b.lo <= l && l <= b.hi);
    }

    #[test]
    fn supercritical_floor_arithmetic() {
        let f = supercritical_l_floor(1.0, 3, 1000, 0.1).unwrap();
        assert!((f - 0.1 * 2f64.ln() * 1000.0).abs() < 1e-9);
        assert!(supercritical_l_floor(0.5 + 1e-9, 3, 1000, 1.0).unwrap() < 1e-5);
        assert_eq!(supercritical_l_floor(10.0, 3, 100, 1.0).unwrap(), 100.0);
        assert!(supercritical_l_floor(0.5, 3, 10, 1.0).is_err());
        let c = calibrate_supercritical_constant(320.0, 0.8, 3, 500, 0.5).unwrap();
        assert!((supercritical_l_floor(0.8, 3, 500, c).unwrap() - 160.0).abs() < 1e-9);
    }

    #[test]
    fn survival_floor_example() {
        let v = survival_floor(10, 5, 10_000, 20, 3);
        let want = 1.0 - 3.0 * 11.0 * 5.0 / 20_000.0 - 25.0 / 1024.0;
        assert!((v - want).abs() < 1e-15);
        assert!((v - 0.96734).abs() < 1e-5);
        assert_eq!(survival_floor(0, 40, 1000, 6, 3), 0.0);
        assert!((exponential_survival_floor(10, 1000, 0.5, 0.1).unwrap() - 0.5 * (-1f64).exp()).abs() < 1e-15);
        assert!(exponential_survival_floor(20, 1000, 0.5, 0.1).is_err());
    }

    #[test]
    fn gamma_predictions() {
        let GammaLimit::Value(v) = gamma_prediction_large_girth(0.25, 3).unwrap() else { panic!() };
        assert!((v - (1.5f64.ln() + 2f64.ln()) / 2f64.ln()).abs() < 1e-12);
        assert!((v - 1.585).abs() < 1e-3);
        assert_eq!(gamma_prediction_large_girth(0.5, 3).unwrap(), GammaLimit::Value(1.0));
        assert_eq!(gamma_prediction_large_girth(1.0, 3).unwrap(), GammaLimit::Unbounded);
        // Continuous at criticality from below.
        let GammaLimit::Value(near) = gamma_prediction_large_girth(0.5 - 1e-9, 3).unwrap() else { panic!() };
        assert!(near > 1.0 && near < 1.03);
    }

    #[test]
    fn report_verdicts() {
        assert_eq!(BoundReport::new("L", 1.0, (0.9, 1.1), (0.0, 2.0), "s").holds, Verdict::Holds);
        assert_eq!(BoundReport::new("L", 1.0, (0.9, 1.1), (1.05, 2.0), "s").holds, Verdict::Inconclusive);
        assert_eq!(BoundReport::new("L", 3.0, (2.9, 3.1), (0.0, 2.0), "s").holds, Verdict::Violated);
        assert_eq!(BoundReport::exact("L", 2.0, (0.0, 2.0 - 1e-14), "s").holds, Verdict::Holds);
        assert_eq!(BoundReport::exact("L", 5.0, (0.0, f64::INFINITY), "s").holds, Verdict::Holds);
    }

    proptest! {
        #[test]
        fn gamma_formula_is_above_one_and_decreasing(y1 in 0.001f64..0.998, dy in 0.0001f64..0.001, d in 3usize..8) {
            let x1 = y1 / (d - 1) as f64;
            let x2 = (y1 + dy) / (d - 1) as f64;
            let (GammaLimit::Value(a), GammaLimit::Value(b)) =
                (gamma_prediction_large_girth(x1, d).unwrap(), gamma_prediction_large_girth(x2, d).unwrap()) else { unreachable!() };
            prop_assert!(b >= 1.0);
            prop_assert!(b < a);
        }

        #[test]
        fn holds_means_interval_inside(m in -5.0f64..5.0, w in 0.0f64..2.0, lo in -5.0f64..5.0, span in 0.0f64..5.0) {
            let r = BoundReport::new("q", m, (m - w, m + w), (lo, lo + span), "s");
            if r.holds == Verdict::Holds {
                prop_assert!(r.ci_lo >= lo - 1e-11 && r.ci_hi <= lo + span + 1e-11);
            }
        }
    }
}
