//! Exact evolution of the non-backtracking walk as a Markov chain on directed edges.

use super::walk::nbrw_degree;
use crate::error::{Error, Result};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub tail: usize,
    pub head: usize,
}

/// Directed edges sorted by `(tail, head)`, so the out-edges of `v` are the
/// contiguous block `d v .. d (v + 1)`.
#[derive(Debug, Clone)]
pub struct NbChain {
    degree: usize,
    n: usize,
    edges: Vec<DirectedEdge>,
    reverse: Vec<usize>,
}

impl NbChain {
    pub fn new(g: &Graph) -> Result<NbChain> {
        let d = nbrw_degree(g)?;
        let edges: Vec<DirectedEdge> =
            (0..g.n()).flat_map(|tail| g.neighbors(tail).iter().map(move |&head| DirectedEdge { tail, head })).collect();
        let reverse = edges
            .iter()
            .map(|e| {
                let pos = g.neighbors(e.head).binary_search(&e.tail).expect("symmetric adjacency");
                e.head * d + pos
            })
            .collect();
        Ok(NbChain { degree: d, n: g.n(), edges, reverse })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    /// Law of the first directed edge from `start`: uniform over its out-edges.
    pub fn first_step(&self, start: usize) -> Vec<f64> {
        let d = self.degree;
        let mut p = vec![0.0; self.edges.len()];
        p[start * d..(start + 1) * d].fill(1.0 / d as f64);
        p
    }

    /// One non-backtracking step: `(b -> c)` receives the mass entering `b`
    /// from every vertex other than `c`, split over `d - 1` continuations.
    pub fn step(&self, p: &[f64]) -> Vec<f64> {
        let d = self.degree;
        let share = 1.0 / (d - 1) as f64;
        let mut next = vec![0.0; p.len()];
        for b in 0..self.n {
            let out = b * d..(b + 1) * d;
            let incoming: f64 = out.clone().map(|e| p[self.reverse[e]]).sum();
            for e in out {
                next[e] = (incoming - p[self.reverse[e]]) * share;
            }
        }
        next
    }

    /// Mass on each vertex, counted at the head of the current edge.
    pub fn vertex_marginal(&self, p: &[f64]) -> Vec<f64> {
        let mut m = vec![0.0; self.n];
        for (e, &mass) in self.edges.iter().zip(p) {
            m[e.head] += mass;
        }
        m
    }
}

/// Law of `NB(t)` from `start`, on directed edges and on vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainDistribution {
    pub t: usize,
    pub start: usize,
    pub probs: Vec<f64>,
    pub vertex_marginal: Vec<f64>,
}

pub fn transition_distribution(g: &Graph, start: usize, t: usize) -> Result<ChainDistribution> {
    let chain = NbChain::new(g)?;
    if start >= g.n() {
        return Err(Error::RootOutOfRange { root: start, n: g.n() });
    }
    if t == 0 {
        return Err(Error::PreconditionViolated("t must be at least 1".into()));
    }
    let mut p = chain.first_step(start);
    for _ in 1..t {
        p = chain.step(&p);
    }
    let vertex_marginal = chain.vertex_marginal(&p);
    Ok(ChainDistribution { t, start, probs: p, vertex_marginal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MixingTime {
    Tau(usize),
    ExceedsHorizon,
}

impl fmt::Display for MixingTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixingTime::Tau(t) => write!(f, "{t}"),
            MixingTime::ExceedsHorizon => f.write_str("ExceedsHorizon"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingReport {
    /// `max_dev[t - 1] = max_{u,v} |P_u[NB(t) = v] - 1/n|`, up to `tau` or the horizon.
    pub max_dev: Vec<f64>,
    pub threshold: f64,
    pub tau: MixingTime,
}

/// Smallest `t <= horizon` with `max_{u,v} |P_u[NB(t) = v] - 1/n| <= 1/(2n)`.
pub fn mixing_time(g: &Graph, horizon: usize) -> Result<MixingReport> {
    let starts: Vec<usize> = (0..g.n()).collect();
    mixing_time_from(g, &starts, horizon)
}

/// As [`mixing_time`], with the maximum over `u` restricted to `starts`. On a
/// subset this is a lower bound for the true mixing time.
pub fn mixing_time_from(g: &Graph, starts: &[usize], horizon: usize) -> Result<MixingReport> {
    let chain = NbChain::new(g)?;
    if let Some(&bad) = starts.iter().find(|&&u| u >= g.n()) {
        return Err(Error::RootOutOfRange { root: bad, n: g.n() });
    }
    let n = g.n() as f64;
    let threshold = 0.5 / n;
    let per_start: Vec<Vec<f64>> = starts
        .par_iter()
        .map(|&u| {
            let mut devs = Vec::with_capacity(horizon);
            let mut p = chain.first_step(u);
            for t in 1..=horizon {
                if t > 1 {
                    p = chain.step(&p);
                }
                let dev = chain.vertex_marginal(&p).iter().map(|m| (m - 1.0 / n).abs()).fold(0.0, f64::max);
                devs.push(dev);
            }
            devs
        })
        .collect();
    let mut max_dev = Vec::new();
    for t in 0..horizon {
        let dev = per_start.iter().map(|d| d[t]).fold(0.0, f64::max);
        max_dev.push(dev);
        if dev <= threshold {
            return Ok(MixingReport { max_dev, threshold, tau: MixingTime::Tau(t + 1) });
        }
    }
    Ok(MixingReport { max_dev, threshold, tau: MixingTime::ExceedsHorizon })
}

/// `tau / (d - 1)^(g / 4)`; small values are what the super-critical
/// large-girth result asks for.
pub fn large_girth_ratio(tau: usize, girth: usize, d: usize) -> f64 {
    tau as f64 / ((d - 1) as f64).powf(girth as f64 / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn uniform_is_stationary() {
        for fam in [Family::Petersen, Family::Complete(6), Family::RandomRegular { n: 100, d: 3, seed: 8 }] {
            let chain = NbChain::new(&fam.generate().unwrap()).unwrap();
            let m = chain.edges().len();
            let uniform = vec![1.0 / m as f64; m];
            let next = chain.step(&uniform);
            let residual = next.iter().map(|p| (p - 1.0 / m as f64).abs()).fold(0.0, f64::max);
            assert!(residual <= 1e-12 / m as f64, "{fam}");
        }
    }

    #[test]
    fn mass_is_conserved() {
        let g = Family::RandomRegular { n: 60, d: 4, seed: 1 }.generate().unwrap();
        for t in [1, 2, 7, 30] {
            let dist = transition_distribution(&g, 3, t).unwrap();
            assert!((dist.probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(dist.probs.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn no_return_before_the_girth() {
        let g = Family::Petersen.generate().unwrap();
        for t in 1..5 {
            for v in 0..10 {
                assert_eq!(transition_distribution(&g, v, t).unwrap().vertex_marginal[v], 0.0);
            }
        }
        assert!(transition_distribution(&g, 0, 5).unwrap().vertex_marginal[0] > 0.0);
    }

    #[test]
    fn one_step_on_k4() {
        let g = Family::Complete(4).generate().unwrap();
        let m = transition_distribution(&g, 0, 1).unwrap().vertex_marginal;
        assert_eq!(m, vec![0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
    }

    #[test]
    fn walking_by_hand_matches_the_chain() {
        // Law of NB(3) on K_4 by enumerating all 3 * 2 * 2 paths.
        let g = Family::Complete(4).generate().unwrap();
        let mut m = [0.0; 4];
        for &a in g.neighbors(0) {
            for &b in g.neighbors(a).iter().filter(|&&b| b != 0) {
                for &c in g.neighbors(b).iter().filter(|&&c| c != a) {
                    m[c] += 1.0 / 12.0;
                }
            }
        }
        let dist = transition_distribution(&g, 0, 3).unwrap();
        for v in 0..4 {
            assert!((dist.vertex_marginal[v] - m[v]).abs() < 1e-15);
        }
    }

    #[test]
    fn bipartite_never_mixes() {
        let g = Family::Hypercube(3).generate().unwrap();
        let report = mixing_time(&g, 200).unwrap();
        assert_eq!(report.tau, MixingTime::ExceedsHorizon);
        assert_eq!(report.max_dev.len(), 200);
        assert_eq!(mixing_time(&Family::Complete(8).generate().unwrap(), 0).unwrap().tau, MixingTime::ExceedsHorizon);
    }

    #[test]
    fn complete_graph_mixes_fast() {
        let report = mixing_time(&Family::Complete(8).generate().unwrap(), 50).unwrap();
        let MixingTime::Tau(tau) = report.tau else { panic!("K_8 should mix") };
        assert!(tau <= 5);
        assert!(report.max_dev[tau - 1] <= report.threshold);
        assert!(report.max_dev[..tau - 1].iter().all(|&d| d > report.threshold));
    }

    #[test]
    fn ratio_arithmetic() {
        assert_eq!(large_girth_ratio(10, 20, 3), 0.3125);
        assert_eq!(large_girth_ratio(100, 4, 3), 50.0);
    }
}
