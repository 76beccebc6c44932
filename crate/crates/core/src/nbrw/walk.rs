use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Samples per parallel work unit; fixed so that chunking never depends on the
/// number of workers.
const CHUNK: u64 = 4096;

/// Degree of `g` if the non-backtracking walk on it is non-degenerate.
pub(crate) fn nbrw_degree(g: &Graph) -> Result<usize> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if d < 3 {
        return Err(Error::DegreeTooSmall { degree: d });
    }
    Ok(d)
}

/// The random stream for sample `index` under `seed`.
pub(crate) fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform neighbor of `cur` other than `prev`; `prev` must be a neighbor.
#[inline]
pub(crate) fn nb_step<R: Rng + ?Sized>(g: &Graph, cur: usize, prev: usize, rng: &mut R) -> usize {
    let nbrs = g.neighbors(cur);
    let w = nbrs[rng.random_range(0..nbrs.len() - 1)];
    if w == prev {
        nbrs[nbrs.len() - 1]
    } else {
        w
    }
}

/// Reusable visited marks: a vertex is visited in the current walk iff its
/// stamp equals the current epoch.
pub(crate) struct Walker {
    stamp: Vec<u32>,
    epoch: u32,
}

impl Walker {
    pub(crate) fn new(n: usize) -> Walker {
        Walker { stamp: vec![0; n], epoch: 0 }
    }

    /// Runs one walk from `root` and returns its self-intersection time.
    pub(crate) fn run<R: Rng + ?Sized>(&mut self, g: &Graph, root: usize, rng: &mut R) -> usize {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let nbrs = g.neighbors(root);
        self.stamp[root] = epoch;
        let mut prev = root;
        let mut cur = nbrs[rng.random_range(0..nbrs.len())];
        let mut k = 1;
        while self.stamp[cur] != epoch {
            self.stamp[cur] = epoch;
            let next = nb_step(g, cur, prev, rng);
            prev = cur;
            cur = next;
            k += 1;
        }
        debug_assert!(k >= 3 && k <= g.n());
        k
    }
}

/// Self-intersection time of one non-backtracking walk from `root`: the first
/// `k` at which the walk stands on a vertex it has visited before.
pub fn sample_t<R: Rng + ?Sized>(g: &Graph, root: usize, rng: &mut R) -> Result<usize> {
    nbrw_degree(g)?;
    g.check_root(root)?;
    Ok(Walker::new(g.n()).run(g, root, rng))
}

/// Histogram of `T` over `num_samples` walks; `hist[t]` counts walks with `T = t`.
///
/// Sample `i` draws from its own stream `(seed, i)`, and the histogram is an
/// integer sum, so the result does not depend on the number of workers.
pub fn sample_histogram(g: &Graph, root: usize, num_samples: u64, seed: u64) -> Result<Vec<u64>> {
    nbrw_degree(g)?;
    g.check_root(root)?;
    let n = g.n();
    let chunks = num_samples.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .fold(
            || (vec![0u64; n + 1], Walker::new(n)),
            |(mut hist, mut walker), c| {
                for i in c * CHUNK..((c + 1) * CHUNK).min(num_samples) {
                    let t = walker.run(g, root, &mut sample_rng(seed, i));
                    hist[t] += 1;
                }
                (hist, walker)
            },
        )
        .map(|(hist, _)| hist)
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(hist)
}

/// `P[T > k]` estimates for `k = 0..=k_cap` with binomial standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalCurve {
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl SurvivalCurve {
    pub fn from_histogram(hist: &[u64], k_cap: usize) -> SurvivalCurve {
        let total: u64 = hist.iter().sum();
        let nf = total as f64;
        let mut above = total;
        let mut values = Vec::with_capacity(k_cap + 1);
        let mut stderr = Vec::with_capacity(k_cap + 1);
        for k in 0..=k_cap {
            above -= hist.get(k).copied().unwrap_or(0);
            let p = above as f64 / nf;
            values.push(p);
            stderr.push((p * (1.0 - p) / nf).sqrt());
        }
        SurvivalCurve { values, stderr }
    }
}

/// Monte-Carlo sample of the self-intersection time `T`, kept as a histogram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TSampleStats {
    pub root: usize,
    pub seed: u64,
    pub degree: usize,
    pub num_samples: u64,
    /// `histogram[t]` is the number of samples with `T = t`, for `t = 0..=n`.
    pub histogram: Vec<u64>,
    pub survival: SurvivalCurve,
}

impl TSampleStats {
    pub fn from_histogram(root: usize, seed: u64, degree: usize, histogram: Vec<u64>, k_cap: usize) -> TSampleStats {
        let survival = SurvivalCurve::from_histogram(&histogram, k_cap);
        TSampleStats { root, seed, degree, num_samples: histogram.iter().sum(), histogram, survival }
    }

    pub fn min_t(&self) -> Option<usize> {
        self.histogram.iter().position(|&c| c > 0)
    }

    pub fn max_t(&self) -> Option<usize> {
        self.histogram.iter().rposition(|&c| c > 0)
    }

    pub fn mean_t(&self) -> f64 {
        let sum: f64 = self.histogram.iter().enumerate().map(|(t, &c)| t as f64 * c as f64).sum();
        sum / self.num_samples as f64
    }

    /// Sample standard deviation of `T`.
    pub fn sd_t(&self) -> f64 {
        let mean = self.mean_t();
        let ss: f64 = self.histogram.iter().enumerate().map(|(t, &c)| c as f64 * (t as f64 - mean).powi(2)).sum();
        (ss / (self.num_samples as f64 - 1.0).max(1.0)).sqrt()
    }
}

/// Samples `num_samples` walks and tabulates the survival curve up to `k_cap`
/// (clamped to `n`, beyond which `P[T > k] = 0`).
pub fn estimate_survival(g: &Graph, root: usize, num_samples: u64, seed: u64, k_cap: usize) -> Result<TSampleStats> {
    if num_samples == 0 {
        return Err(Error::PreconditionViolated("num_samples must be at least 1".into()));
    }
    let d = nbrw_degree(g)?;
    let hist = sample_histogram(g, root, num_samples, seed)?;
    Ok(TSampleStats::from_histogram(root, seed, d, hist, k_cap.min(g.n())))
}
