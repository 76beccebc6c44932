//! Plug-in estimators of the walk measure from self-intersection times.
//!
//! With `y = (d-1) x`, the walk counts satisfy `c_k = (d/(d-1)) (d-1)^k P[T > k]`
//! for `k >= 1`, so
//!
//! ```text
//! sum_k c_k x^k     = (d/(d-1)) E[G(T)] - 1/(d-1),   G(T) = sum_{k<T} y^k
//! sum_k k c_k x^k   = (d/(d-1)) E[H(T)],             H(T) = sum_{k<T} k y^k
//! ```
//!
//! where the `-1/(d-1)` restores `c_0 = 1`; dropping it gives the
//! convention `c_0 = d/(d-1)`. `G` and `H` are evaluated in log space, so `y^T`
//! never overflows.

use super::walk::{estimate_survival, TSampleStats};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::log_add_exp;
use crate::saw::{check_positive_x, Convention, Gamma, LogSeries, Method, SawMeasureEval};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Mixed into the sampling seed so bootstrap streams never coincide with
/// sampling streams.
const BOOTSTRAP_SALT: u64 = 0x6a09_e667_f3bc_c909;

/// Estimated walk counts `c_k`, in log space, with 95% intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatedCensus {
    pub degree: usize,
    pub log_counts: Vec<f64>,
    pub log_lo: Vec<f64>,
    pub log_hi: Vec<f64>,
}

impl EstimatedCensus {
    /// `c_0 = 1` and `c_k = d (d-1)^(k-1) S_k` for `k >= 1`, where `log_survival[k] = ln S_k`.
    pub fn from_log_survival(degree: usize, log_survival: &[f64], log_lo: &[f64], log_hi: &[f64]) -> EstimatedCensus {
        let scale = |k: usize| if k == 0 { 0.0 } else { log_nb_paths(degree, k) };
        let lift = |v: &[f64]| v.iter().enumerate().map(|(k, &s)| if k == 0 { 0.0 } else { s + scale(k) }).collect();
        EstimatedCensus { degree, log_counts: lift(log_survival), log_lo: lift(log_lo), log_hi: lift(log_hi) }
    }

    pub fn log_series(&self, convention: Convention) -> LogSeries {
        let mut coeffs = self.log_counts.clone();
        if convention == Convention::Paper {
            coeffs[0] = paper_log_c0(self.degree);
        }
        LogSeries::new(coeffs)
    }
}

pub(crate) fn log_nb_paths(d: usize, k: usize) -> f64 {
    (d as f64).ln() + (k - 1) as f64 * ((d - 1) as f64).ln()
}

fn paper_log_c0(d: usize) -> f64 {
    (d as f64 / (d - 1) as f64).ln()
}

/// Walk counts implied by a sampled survival curve, with intervals from the
/// binomial standard errors.
pub fn census_from_survival(stats: &TSampleStats) -> EstimatedCensus {
    let s = &stats.survival;
    let ln = |v: f64| if v > 0.0 { v.ln() } else { f64::NEG_INFINITY };
    let log_s: Vec<f64> = s.values.iter().map(|&v| ln(v)).collect();
    let lo: Vec<f64> = s.values.iter().zip(&s.stderr).map(|(&v, &e)| ln(v - Z95 * e)).collect();
    let hi: Vec<f64> = s.values.iter().zip(&s.stderr).map(|(&v, &e)| ln((v + Z95 * e).min(1.0))).collect();
    EstimatedCensus::from_log_survival(stats.degree, &log_s, &lo, &hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McOptions {
    pub convention: Convention,
    /// Also report `I = (L + 1) / Z`, valid on vertex-transitive graphs.
    pub assume_transitive: bool,
    /// Bootstrap replicates for percentile intervals; 0 gives normal intervals
    /// from the delta-method standard errors.
    pub bootstrap: usize,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { convention: Convention::Exact, assume_transitive: false, bootstrap: 200 }
    }
}

/// A Monte-Carlo evaluation with standard errors and 95% intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub eval: SawMeasureEval,
    pub se_log_z: f64,
    pub se_length: f64,
    pub se_intersection: Option<f64>,
    pub ci_log_z: (f64, f64),
    pub ci_length: (f64, f64),
    pub ci_intersection: Option<(f64, f64)>,
    pub num_samples: u64,
    pub seed: u64,
}

/// Histogram moments of the rescaled weights `G(T) e^{-M}` and `H(T) e^{-M}`.
struct Moments {
    log_scale: f64,
    mean_g: f64,
    mean_h: f64,
    var_g: f64,
    var_h: f64,
    cov_gh: f64,
    count: f64,
}

fn moments(hist: &[u64], y: f64) -> Moments {
    let ln_y = y.ln();
    // log G(t) and log H(t) for t = 0..len by G(t+1) = G(t) + y^t, H(t+1) = H(t) + t y^t.
    let mut log_g = vec![f64::NEG_INFINITY; hist.len()];
    let mut log_h = vec![f64::NEG_INFINITY; hist.len()];
    for t in 1..hist.len() {
        let k = (t - 1) as f64;
        log_g[t] = log_add_exp(log_g[t - 1], k * ln_y);
        log_h[t] = if t >= 2 { log_add_exp(log_h[t - 1], k.ln() + k * ln_y) } else { f64::NEG_INFINITY };
    }
    let support = || hist.iter().enumerate().filter(|(_, &c)| c > 0);
    let log_scale = support().map(|(t, _)| log_g[t]).fold(f64::NEG_INFINITY, f64::max);
    let count: f64 = hist.iter().sum::<u64>() as f64;
    let weights = |t: usize| ((log_g[t] - log_scale).exp(), (log_h[t] - log_scale).exp());
    let (mut mean_g, mut mean_h) = (0.0, 0.0);
    for (t, &c) in support() {
        let (g, h) = weights(t);
        mean_g += c as f64 * g;
        mean_h += c as f64 * h;
    }
    mean_g /= count;
    mean_h /= count;
    let (mut var_g, mut var_h, mut cov_gh) = (0.0, 0.0, 0.0);
    for (t, &c) in support() {
        let (g, h) = weights(t);
        let (dg, dh) = (g - mean_g, h - mean_h);
        var_g += c as f64 * dg * dg;
        var_h += c as f64 * dh * dh;
        cov_gh += c as f64 * dg * dh;
    }
    let dof = (count - 1.0).max(1.0);
    Moments { log_scale, mean_g, mean_h, var_g: var_g / dof, var_h: var_h / dof, cov_gh: cov_gh / dof, count }
}

struct Point {
    log_z: f64,
    length: f64,
    intersection: f64,
    se_log_z: f64,
    se_length: f64,
    se_intersection: f64,
}

/// Point estimates and delta-method standard errors. `I` always uses the
/// exact convention.
fn point(m: &Moments, d: usize, convention: Convention) -> Point {
    let exact_g = m.mean_g - (-m.log_scale).exp() / d as f64;
    let eff_g = match convention {
        Convention::Exact => exact_g,
        Convention::Paper => m.mean_g,
    };
    let root_n = m.count.sqrt();
    let log_z = paper_log_c0(d) + m.log_scale + eff_g.ln();
    let length = m.mean_h / eff_g;
    let combo_var = |a: f64| (m.var_h - 2.0 * a * m.cov_gh + a * a * m.var_g).max(0.0);

    let exact_length = m.mean_h / exact_g;
    let exact_log_z = paper_log_c0(d) + m.log_scale + exact_g.ln();
    let intersection = ((exact_length + 1.0).ln() - exact_log_z).exp();
    let b = 2.0 * exact_length + 1.0;
    Point {
        log_z,
        length,
        intersection,
        se_log_z: m.var_g.sqrt() / (root_n * eff_g),
        se_length: combo_var(length).sqrt() / (root_n * eff_g),
        se_intersection: intersection * combo_var(b).sqrt() / (root_n * exact_g * (exact_length + 1.0)),
    }
}

/// Multinomial resamples of a histogram, by successive conditional binomials.
pub fn bootstrap_histograms(hist: &[u64], replicates: usize, seed: u64) -> Vec<Vec<u64>> {
    let total: u64 = hist.iter().sum();
    (0..replicates)
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ BOOTSTRAP_SALT);
            rng.set_stream(b as u64);
            let mut remaining = total;
            let mut mass_left = total;
            hist.iter()
                .map(|&c| {
                    if c == 0 || remaining == 0 {
                        return 0;
                    }
                    let draw = if c == mass_left {
                        remaining
                    } else {
                        let p = c as f64 / mass_left as f64;
                        Binomial::new(remaining, p).expect("valid binomial").sample(&mut rng)
                    };
                    remaining -= draw;
                    mass_left -= c;
                    draw
                })
                .collect()
        })
        .collect()
}

fn percentile_interval(mut values: Vec<f64>) -> (f64, f64) {
    values.retain(|v| v.is_finite());
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    values.sort_by(f64::total_cmp);
    let at = |q: f64| {
        let pos = q * (values.len() - 1) as f64;
        let (i, frac) = (pos.floor() as usize, pos.fract());
        if i + 1 < values.len() {
            values[i] * (1.0 - frac) + values[i + 1] * frac
        } else {
            values[i]
        }
    };
    (at(0.025), at(0.975))
}

/// Samples `num_samples` walks and estimates the measure at `x`.
pub fn estimate_measure(g: &Graph, root: usize, x: f64, num_samples: u64, seed: u64, opts: McOptions) -> Result<McEstimate> {
    check_positive_x(x)?;
    let stats = estimate_survival(g, root, num_samples, seed, g.n())?;
    estimate_measure_from_stats(&stats, x, opts)
}

pub fn estimate_measure_from_stats(stats: &TSampleStats, x: f64, opts: McOptions) -> Result<McEstimate> {
    Ok(estimate_measure_grid(stats, &[x], opts)?.remove(0))
}

/// Estimates on every grid point from one sample, sharing the bootstrap
/// resamples across the grid.
pub fn estimate_measure_grid(stats: &TSampleStats, xs: &[f64], opts: McOptions) -> Result<Vec<McEstimate>> {
    if stats.num_samples == 0 {
        return Err(Error::EmptyStats);
    }
    for &x in xs {
        check_positive_x(x)?;
    }
    let d = stats.degree;
    let resamples = bootstrap_histograms(&stats.histogram, opts.bootstrap, stats.seed);
    xs.iter()
        .map(|&x| {
            let y = (d - 1) as f64 * x;
            let p = point(&moments(&stats.histogram, y), d, opts.convention);
            let normal = |v: f64, se: f64| (v - Z95 * se, v + Z95 * se);
            let (ci_log_z, ci_length, ci_i) = if resamples.is_empty() {
                (normal(p.log_z, p.se_log_z), normal(p.length, p.se_length), normal(p.intersection, p.se_intersection))
            } else {
                let boot: Vec<Point> = resamples.iter().map(|h| point(&moments(h, y), d, opts.convention)).collect();
                (
                    percentile_interval(boot.iter().map(|b| b.log_z).collect()),
                    percentile_interval(boot.iter().map(|b| b.length).collect()),
                    percentile_interval(boot.iter().map(|b| b.intersection).collect()),
                )
            };
            let transitive = opts.assume_transitive;
            Ok(McEstimate {
                eval: SawMeasureEval {
                    x,
                    log_z: p.log_z,
                    length: p.length,
                    intersection: transitive.then_some(p.intersection),
                    gamma: Gamma::from_parts(p.log_z, p.length),
                    method: Method::MonteCarlo,
                    convention: opts.convention,
                },
                se_log_z: p.se_log_z,
                se_length: p.se_length,
                se_intersection: transitive.then_some(p.se_intersection),
                ci_log_z,
                ci_length,
                ci_intersection: transitive.then_some(ci_i),
                num_samples: stats.num_samples,
                seed: stats.seed,
            })
        })
        .collect()
}

/// The closed forms in terms of `E[y^T]` and `E[T y^T]` (or `E[T]` and
/// `E[T(T-1)]` at `y = 1`), evaluated in `Convention::Paper`:
/// `Z = (d/(d-1)) E[y^T - 1]/(y - 1)` and `L = E[T y^T]/E[y^T - 1] - y/(y - 1)`.
/// Only usable while `y^T` fits in a float; the log-space estimators above are
/// algebraically identical.
pub fn paper_closed_forms(stats: &TSampleStats, x: f64) -> (f64, f64) {
    let d = stats.degree as f64;
    let y = (d - 1.0) * x;
    let n = stats.num_samples as f64;
    let mean = |f: &dyn Fn(f64) -> f64| stats.histogram.iter().enumerate().map(|(t, &c)| c as f64 * f(t as f64)).sum::<f64>() / n;
    if y == 1.0 {
        let et = mean(&|t| t);
        let et2 = mean(&|t| t * (t - 1.0));
        (d / (d - 1.0) * et, et2 / (2.0 * et))
    } else {
        let e_pow = mean(&|t| y.powf(t) - 1.0);
        let e_tpow = mean(&|t| t * y.powf(t));
        (d / (d - 1.0) * e_pow / (y - 1.0), e_tpow / e_pow - y / (y - 1.0))
    }
}
