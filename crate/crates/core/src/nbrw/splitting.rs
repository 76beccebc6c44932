//! Survival curves deep into the tail by population splitting.
//!
//! A plain sample of `N` walks resolves `P[T > k]` only down to about `1/N`,
//! while for `(d-1) x > 1` the measure is carried by walks of length of order
//! `n`, whose survival is exponentially small. Here a population of walkers is
//! advanced one step at a time; walkers that revisit die and are replaced by
//! copies of uniformly chosen survivors. The product of the per-step survival
//! fractions is an unbiased estimate of `P[T > k]` at every `k`.

use super::estimate::{EstimatedCensus, McEstimate, McOptions, Z95};
use super::walk::{nb_step, nbrw_degree, sample_rng};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::log_sum_exp;
use crate::saw::{check_positive_x, Convention, Gamma, Method, SawMeasureEval};
use crate::saw::{BitSet, VisitedSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const RESAMPLE_SALT: u64 = 0xbb67_ae85_84ca_a73b;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingOptions {
    pub population: usize,
    /// Independent populations; their spread gives the standard errors.
    pub replicates: usize,
    pub seed: u64,
}

impl Default for SplittingOptions {
    fn default() -> Self {
        SplittingOptions { population: 2000, replicates: 16, seed: 1 }
    }
}

/// Per-replicate estimates of `ln P[T > k]`, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSurvival {
    pub root: usize,
    pub degree: usize,
    pub options: SplittingOptions,
    pub replicates: Vec<Vec<f64>>,
}

impl SplitSurvival {
    /// `ln` of the replicate average of `P[T > k]`.
    pub fn log_survival(&self) -> Vec<f64> {
        self.pooled(None)
    }

    fn pooled(&self, leave_out: Option<usize>) -> Vec<f64> {
        let kept: Vec<&Vec<f64>> = self.replicates.iter().enumerate().filter(|(r, _)| Some(*r) != leave_out).map(|(_, v)| v).collect();
        let ln_count = (kept.len() as f64).ln();
        (0..self.replicates[0].len()).map(|k| log_sum_exp(&kept.iter().map(|v| v[k]).collect::<Vec<_>>()) - ln_count).collect()
    }

    pub fn census(&self) -> EstimatedCensus {
        let log_s = self.log_survival();
        // Pointwise intervals from the replicate spread of P[T > k] relative to its mean.
        let r = self.replicates.len() as f64;
        let (lo, hi): (Vec<f64>, Vec<f64>) = log_s
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                if m == f64::NEG_INFINITY || r < 2.0 {
                    return (m, m);
                }
                let var: f64 = self.replicates.iter().map(|v| ((v[k] - m).exp() - 1.0).powi(2)).sum::<f64>() / (r - 1.0);
                let rel = Z95 * (var / r).sqrt();
                let lo = if rel < 1.0 { m + (1.0 - rel).ln() } else { f64::NEG_INFINITY };
                (lo, m + rel.ln_1p())
            })
            .unzip();
        EstimatedCensus::from_log_survival(self.degree, &log_s, &lo, &hi)
    }
}

#[derive(Clone)]
struct State {
    visited: BitSet,
    cur: usize,
    prev: usize,
    alive: bool,
}

/// Runs `replicates` independent populations of `population` walkers from `root`.
///
/// Each walker slot has its own random stream and each replicate its own
/// resampling stream, so the result does not depend on the number of workers.
pub fn splitting_survival(g: &Graph, root: usize, opts: SplittingOptions) -> Result<SplitSurvival> {
    let d = nbrw_degree(g)?;
    g.check_root(root)?;
    if opts.population == 0 || opts.replicates == 0 {
        return Err(Error::PreconditionViolated("population and replicates must be positive".into()));
    }
    let replicates = (0..opts.replicates).into_par_iter().map(|r| one_population(g, root, opts, r)).collect();
    Ok(SplitSurvival { root, degree: d, options: opts, replicates })
}

fn one_population(g: &Graph, root: usize, opts: SplittingOptions, replicate: usize) -> Vec<f64> {
    let n = g.n();
    let m = opts.population;
    let mut visited = BitSet::empty(n);
    visited.insert(root);
    let mut states = vec![State { visited, cur: root, prev: usize::MAX, alive: true }; m];
    let mut rngs: Vec<ChaCha8Rng> = (0..m).map(|i| sample_rng(opts.seed, (replicate * m + i) as u64)).collect();
    let mut master = ChaCha8Rng::seed_from_u64(opts.seed ^ RESAMPLE_SALT);
    master.set_stream(replicate as u64);

    let mut log_s = vec![f64::NEG_INFINITY; n + 1];
    log_s[0] = 0.0;
    for k in 1..=n {
        states.par_iter_mut().zip(rngs.par_iter_mut()).for_each(|(s, rng)| {
            let next = if s.prev == usize::MAX {
                let nbrs = g.neighbors(s.cur);
                nbrs[rng.random_range(0..nbrs.len())]
            } else {
                nb_step(g, s.cur, s.prev, rng)
            };
            if s.visited.contains(next) {
                s.alive = false;
            } else {
                s.visited.insert(next);
                s.prev = s.cur;
                s.cur = next;
            }
        });
        let survivors: Vec<usize> = (0..m).filter(|&i| states[i].alive).collect();
        if survivors.is_empty() {
            break;
        }
        log_s[k] = log_s[k - 1] + (survivors.len() as f64 / m as f64).ln();
        if survivors.len() < m {
            for i in 0..m {
                if !states[i].alive {
                    let j = survivors[master.random_range(0..survivors.len())];
                    states[i] = states[j].clone();
                }
            }
        }
    }
    log_s
}

/// Estimates the measure at `x` from a split survival curve. Standard errors
/// are leave-one-replicate-out jackknife errors; intervals are normal.
pub fn estimate_measure_splitting(split: &SplitSurvival, x: f64, opts: McOptions) -> Result<McEstimate> {
    check_positive_x(x)?;
    let r = split.replicates.len();
    let evaluate = |log_s: &[f64]| {
        let census = EstimatedCensus::from_log_survival(split.degree, log_s, log_s, log_s);
        let (log_z, length) = census.log_series(opts.convention).log_sum_and_mean(x);
        let (exact_log_z, exact_length) = match opts.convention {
            Convention::Exact => (log_z, length),
            Convention::Paper => census.log_series(Convention::Exact).log_sum_and_mean(x),
        };
        (log_z, length, ((exact_length + 1.0).ln() - exact_log_z).exp())
    };
    let (log_z, length, intersection) = evaluate(&split.log_survival());
    let (se_log_z, se_length, se_i) = if r < 2 {
        (f64::NAN, f64::NAN, f64::NAN)
    } else {
        let loo: Vec<(f64, f64, f64)> = (0..r).map(|i| evaluate(&split.pooled(Some(i)))).collect();
        let jack = |f: &dyn Fn(&(f64, f64, f64)) -> f64| {
            let mean = loo.iter().map(f).sum::<f64>() / r as f64;
            ((r - 1) as f64 / r as f64 * loo.iter().map(|v| (f(v) - mean).powi(2)).sum::<f64>()).sqrt()
        };
        (jack(&|v| v.0), jack(&|v| v.1), jack(&|v| v.2))
    };
    let normal = |v: f64, se: f64| (v - Z95 * se, v + Z95 * se);
    let transitive = opts.assume_transitive;
    Ok(McEstimate {
        eval: SawMeasureEval {
            x,
            log_z,
            length,
            intersection: transitive.then_some(intersection),
            gamma: Gamma::from_parts(log_z, length),
            method: Method::MonteCarlo,
            convention: opts.convention,
        },
        se_log_z,
        se_length,
        se_intersection: transitive.then_some(se_i),
        ci_log_z: normal(log_z, se_log_z),
        ci_length: normal(length, se_length),
        ci_intersection: transitive.then_some(normal(intersection, se_i)),
        num_samples: (split.options.population * r) as u64,
        seed: split.options.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Family};
    use crate::nbrw::exact::exact_t_distribution;
    use crate::saw::{enumerate_census, evaluate, EvalOptions, DEFAULT_NODE_BUDGET};
    use num_traits::ToPrimitive;

    #[test]
    fn matches_exact_survival_on_petersen() {
        let g = Family::Petersen.generate().unwrap();
        let exact = exact_t_distribution(&g, 0, DEFAULT_NODE_BUDGET).unwrap();
        let split = splitting_survival(&g, 0, SplittingOptions { population: 4000, replicates: 8, seed: 2 }).unwrap();
        let log_s = split.log_survival();
        for k in 0..=g.n() {
            let want = exact.survival[k].to_f64().unwrap();
            if want == 0.0 {
                assert_eq!(log_s[k], f64::NEG_INFINITY, "k={k}");
            } else {
                assert!((log_s[k].exp() / want - 1.0).abs() < 0.05, "k={k}: {} vs {want}", log_s[k].exp());
            }
        }
    }

    #[test]
    fn tail_is_resolved_far_below_one_over_population() {
        // On K_12, P[T > 11] = 10! / 10^10 ~ 3.6e-4, and a walk of full length is the mode of
        // the measure at x = 1; a plain sample of 500 would rarely see one.
        let g = Family::Complete(12).generate().unwrap();
        let split = splitting_survival(&g, 0, SplittingOptions { population: 500, replicates: 8, seed: 5 }).unwrap();
        let est = estimate_measure_splitting(&split, 1.0, McOptions { bootstrap: 0, ..Default::default() }).unwrap();
        let census = enumerate_census(&g, 0, 11, DEFAULT_NODE_BUDGET).unwrap();
        let exact = evaluate(&census, 1.0, EvalOptions::default()).unwrap();
        assert!((est.eval.length - exact.length).abs() < 4.0 * est.se_length + 1e-9, "{} vs {}", est.eval.length, exact.length);
        assert!((est.eval.log_z - exact.log_z).abs() < 4.0 * est.se_log_z + 1e-9);
    }

    #[test]
    fn girth_prefix_survives_surely() {
        let g = Family::RandomRegular { n: 400, d: 3, seed: 3 }.generate().unwrap();
        let g0 = girth(&g).finite().unwrap();
        let split = splitting_survival(&g, 0, SplittingOptions { population: 100, replicates: 2, seed: 1 }).unwrap();
        assert!(split.log_survival()[..g0].iter().all(|&v| v == 0.0));
        assert!(split.log_survival().windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn reproducible_across_worker_counts() {
        let g = Family::RandomRegular { n: 200, d: 3, seed: 3 }.generate().unwrap();
        let opts = SplittingOptions { population: 64, replicates: 3, seed: 9 };
        let run = |w| rayon::ThreadPoolBuilder::new().num_threads(w).build().unwrap().install(|| splitting_survival(&g, 0, opts).unwrap());
        assert_eq!(run(1), run(3));
    }
}
