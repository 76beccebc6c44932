use super::visited::{BitSet, VisitedSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::ln_biguint;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

/// Default DFS node limit.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Exact counts `counts[k]` of self-avoiding walks of length `k` from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SawCensus {
    pub graph_name: String,
    pub root: usize,
    pub counts: Vec<BigUint>,
    /// False when the enumeration was cut short by its budget; the counts are
    /// then lower bounds and evaluation refuses them.
    pub complete: bool,
}

impl SawCensus {
    pub fn from_counts(graph_name: impl Into<String>, root: usize, counts: Vec<BigUint>) -> SawCensus {
        SawCensus { graph_name: graph_name.into(), root, counts, complete: true }
    }

    pub fn k_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// `c_1`, the degree of the root, when the census reaches length 1.
    pub fn root_degree(&self) -> Option<usize> {
        self.counts.get(1).and_then(ToPrimitive::to_usize)
    }

    /// Total number of walks, `Z(1)`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn log_counts(&self) -> Vec<f64> {
        self.counts.iter().map(ln_biguint).collect()
    }

    pub(crate) fn check_valid(&self) -> Result<()> {
        if !self.complete {
            return Err(Error::InvalidCensus("enumeration was truncated by its budget".into()));
        }
        if self.counts.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::InvalidCensus("c_0 must equal 1".into()));
        }
        if let Some(k) = self.counts.iter().position(Zero::is_zero) {
            if self.counts[k..].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidCensus(format!("c_{k} = 0 but a later count is positive")));
            }
        }
        Ok(())
    }
}

/// Counts self-avoiding walks from `root` up to length `k_max`.
///
/// The search is split over the root's first steps and run in parallel; the
/// per-subtree counts are merged by exact addition. The node budget applies to
/// the whole enumeration: the result is `BudgetExceeded` exactly when the full
/// search tree has more than `budget` nodes.
pub fn enumerate_census(g: &Graph, root: usize, k_max: usize, budget: u64) -> Result<SawCensus> {
    check_args(g, root, k_max)?;
    let subtrees: Vec<Subtree> = if g.n() <= 64 {
        first_step_subtrees::<u64>(g, root, k_max, budget)
    } else {
        first_step_subtrees::<BitSet>(g, root, k_max, budget)
    };
    let mut counts = vec![0u64; k_max + 1];
    counts[0] = 1;
    let mut nodes = 1u64;
    for sub in subtrees {
        if sub.aborted {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        nodes = nodes.saturating_add(sub.nodes);
        for (c, s) in counts.iter_mut().zip(sub.counts) {
            *c += s;
        }
    }
    if nodes > budget {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    Ok(SawCensus { graph_name: g.name().to_string(), root, counts: counts.into_iter().map(BigUint::from).collect(), complete: true })
}

/// Sequential enumeration in ascending-neighbor order that stops after
/// `budget` nodes and returns whatever it counted, flagged incomplete.
pub fn enumerate_census_partial(g: &Graph, root: usize, k_max: usize, budget: u64) -> Result<SawCensus> {
    check_args(g, root, k_max)?;
    let sub = if g.n() <= 64 {
        count_from_prefix::<u64>(g, &[root], k_max, budget)
    } else {
        count_from_prefix::<BitSet>(g, &[root], k_max, budget)
    };
    Ok(SawCensus {
        graph_name: g.name().to_string(),
        root,
        counts: sub.counts.into_iter().map(BigUint::from).collect(),
        complete: !sub.aborted,
    })
}

fn check_args(g: &Graph, root: usize, k_max: usize) -> Result<()> {
    g.check_root(root)?;
    if k_max >= g.n() {
        return Err(Error::PreconditionViolated(format!("k_max = {k_max} must be at most n - 1 = {}", g.n() - 1)));
    }
    Ok(())
}

pub(crate) struct Subtree {
    pub counts: Vec<u64>,
    pub nodes: u64,
    pub aborted: bool,
}

fn first_step_subtrees<V: VisitedSet>(g: &Graph, root: usize, k_max: usize, budget: u64) -> Vec<Subtree> {
    if k_max == 0 {
        return Vec::new();
    }
    g.neighbors(root).par_iter().map(|&w| count_from_prefix::<V>(g, &[root, w], k_max, budget)).collect()
}

/// Counts all self-avoiding extensions of `prefix` (itself included) by length.
pub(crate) fn count_from_prefix<V: VisitedSet>(g: &Graph, prefix: &[usize], k_max: usize, budget: u64) -> Subtree {
    let mut visited = V::empty(g.n());
    for &v in prefix {
        visited.insert(v);
    }
    let mut counts = vec![0u64; k_max + 1];
    let mut nodes = 0u64;
    let last = *prefix.last().expect("non-empty prefix");
    let finished = extend(g, &mut visited, last, prefix.len() - 1, k_max, &mut |depth, _| {
        nodes += 1;
        if nodes > budget {
            return false;
        }
        counts[depth] += 1;
        true
    });
    Subtree { counts, nodes, aborted: !finished }
}

/// Depth-first search over the self-avoiding extensions of a walk ending at
/// `start` (already in `visited`, at length `base`), in ascending neighbor order.
///
/// `on_node(length, visited)` is called on the walk itself and on every
/// extension up to length `k_max`, with `visited` holding the extension's
/// vertices. Returning false stops the search, and the function then returns
/// false with `visited` left dirty; otherwise `visited` is restored. The walk
/// is kept on an explicit stack so that long walks do not exhaust the call stack.
pub(crate) fn extend<V: VisitedSet>(
    g: &Graph,
    visited: &mut V,
    start: usize,
    base: usize,
    k_max: usize,
    on_node: &mut impl FnMut(usize, &V) -> bool,
) -> bool {
    if !on_node(base, visited) {
        return false;
    }
    if base >= k_max {
        return true;
    }
    let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, idx) = *top;
        let nbrs = g.neighbors(v);
        if idx == nbrs.len() {
            stack.pop();
            if !stack.is_empty() {
                visited.remove(v);
            }
            continue;
        }
        top.1 += 1;
        let w = nbrs[idx];
        if visited.contains(w) {
            continue;
        }
        let depth = base + stack.len();
        visited.insert(w);
        if !on_node(depth, visited) {
            return false;
        }
        if depth < k_max {
            stack.push((w, 0));
        } else {
            visited.remove(w);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Family};

    fn counts(c: &SawCensus) -> Vec<u64> {
        c.counts.iter().map(|v| v.to_u64().unwrap()).collect()
    }

    /// Recursive enumeration over explicit vertex lists; slow but obvious.
    fn brute_force(g: &Graph, root: usize, k_max: usize) -> Vec<u64> {
        fn go(g: &Graph, path: &mut Vec<usize>, k_max: usize, out: &mut Vec<u64>) {
            out[path.len() - 1] += 1;
            if path.len() - 1 == k_max {
                return;
            }
            for &w in g.neighbors(*path.last().unwrap()) {
                if !path.contains(&w) {
                    path.push(w);
                    go(g, path, k_max, out);
                    path.pop();
                }
            }
        }
        let mut out = vec![0; k_max + 1];
        go(g, &mut vec![root], k_max, &mut out);
        out
    }

    #[test]
    fn k4_cycle5_petersen() {
        let k4 = Family::Complete(4).generate().unwrap();
        assert_eq!(counts(&enumerate_census(&k4, 0, 3, DEFAULT_NODE_BUDGET).unwrap()), vec![1, 3, 6, 6]);
        let c5 = Family::Cycle(5).generate().unwrap();
        assert_eq!(counts(&enumerate_census(&c5, 0, 4, DEFAULT_NODE_BUDGET).unwrap()), vec![1, 2, 2, 2, 2]);
        let p = Family::Petersen.generate().unwrap();
        let c = enumerate_census(&p, 0, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(counts(&c), vec![1, 3, 6, 12, 24]);
        assert_eq!(counts(&c), brute_force(&p, 0, 4));
    }

    #[test]
    fn matches_brute_force_on_assorted_graphs() {
        for fam in [
            Family::Petersen,
            Family::Hypercube(3),
            Family::Torus(3, 2),
            Family::RandomRegular { n: 12, d: 3, seed: 4 },
            Family::Complete(6),
        ] {
            let g = fam.generate().unwrap();
            let k = g.n() - 1;
            assert_eq!(counts(&enumerate_census(&g, 0, k, DEFAULT_NODE_BUDGET).unwrap()), brute_force(&g, 0, k), "{fam}");
        }
    }

    #[test]
    fn large_graphs_use_the_bitset_path() {
        let g = Family::Torus(9, 2).generate().unwrap();
        assert!(g.n() > 64);
        assert_eq!(counts(&enumerate_census(&g, 5, 6, DEFAULT_NODE_BUDGET).unwrap()), brute_force(&g, 5, 6));
    }

    #[test]
    fn structural_invariants() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)], 0).unwrap();
        let c = enumerate_census(&g, 0, 5, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(counts(&c), vec![1, 2, 3, 2, 1, 0]);
        assert_eq!(c.root_degree(), Some(2));
        c.check_valid().unwrap();
    }

    #[test]
    fn girth_prefix_law() {
        for fam in [Family::Petersen, Family::Hypercube(4), Family::RandomRegular { n: 200, d: 3, seed: 9 }] {
            let g = fam.generate().unwrap();
            let d = g.regular_degree().unwrap() as u64;
            let g0 = girth(&g).finite().unwrap();
            let c = enumerate_census(&g, 0, g0 - 1, DEFAULT_NODE_BUDGET).unwrap();
            for k in 1..g0 {
                assert_eq!(c.counts[k], BigUint::from(d * (d - 1).pow(k as u32 - 1)), "{fam} k={k}");
            }
        }
    }

    #[test]
    fn budget_exceeded_and_partial() {
        let g = Family::Complete(7).generate().unwrap();
        // total walks on K_7 from a vertex: sum_k 6!/(6-k)! = 1957
        assert!(enumerate_census(&g, 0, 6, 1957).is_ok());
        assert!(matches!(enumerate_census(&g, 0, 6, 1956), Err(Error::BudgetExceeded { limit: 1956 })));
        let partial = enumerate_census_partial(&g, 0, 6, 100).unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.counts.iter().map(|c| c.to_u64().unwrap()).sum::<u64>(), 100);
        assert_eq!(partial, enumerate_census_partial(&g, 0, 6, 100).unwrap());
        assert!(partial.check_valid().is_err());
    }

    #[test]
    fn argument_checks() {
        let g = Family::Cycle(5).generate().unwrap();
        assert!(matches!(enumerate_census(&g, 5, 2, 10), Err(Error::RootOutOfRange { .. })));
        assert!(matches!(enumerate_census(&g, 0, 5, 10), Err(Error::PreconditionViolated(_))));
        assert_eq!(counts(&enumerate_census(&g, 0, 0, 10).unwrap()), vec![1]);
    }
}
