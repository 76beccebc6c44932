use super::walk::nbrw_degree;
use crate::error::{Error, Result};
use crate::graph::Graph;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact law of the self-intersection time `T` from one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTDistribution {
    pub root: usize,
    pub degree: usize,
    /// `hits[k]`: number of non-backtracking paths of length `k` whose first
    /// revisit happens at step `k`. Each such path has probability
    /// `1 / (d (d-1)^(k-1))`.
    pub hits: Vec<BigUint>,
    /// `survival[k] = P[T > k]` for `k = 0..=n`.
    pub survival: Vec<BigRational>,
}

impl ExactTDistribution {
    /// `P[T = k]`.
    pub fn point_mass(&self, k: usize) -> BigRational {
        match self.hits.get(k) {
            Some(h) if k >= 1 => BigRational::new(BigInt::from(h.clone()), BigInt::from(nb_paths(self.degree, k))),
            _ => BigRational::zero(),
        }
    }

    pub fn mean_t(&self) -> BigRational {
        self.survival.iter().fold(BigRational::zero(), |acc, s| acc + s)
    }

    /// `d (d-1)^(k-1) P[T > k]`, the walk count the survival function predicts.
    pub fn implied_count(&self, k: usize) -> BigRational {
        assert!(k >= 1);
        &self.survival[k] * BigRational::from_integer(BigInt::from(nb_paths(self.degree, k)))
    }
}

/// Number of non-backtracking paths of length `k >= 1` from a vertex.
fn nb_paths(d: usize, k: usize) -> BigUint {
    BigUint::from(d) * BigUint::from(d - 1).pow(k as u32 - 1)
}

/// Walks every non-backtracking path from `root` up to its first revisit and
/// tallies when that revisit happens.
///
/// A path that has not yet revisited is a self-avoiding walk; each of its
/// `d - 1` non-reversing continuations either revisits (a hit) or extends it.
/// `P[T > k]` is then `1 - sum_{j <= k} P[T = j]`; it is not derived from the
/// walk counts, so comparing the two is a real check.
pub fn exact_t_distribution(g: &Graph, root: usize, budget: u64) -> Result<ExactTDistribution> {
    let d = nbrw_degree(g)?;
    g.check_root(root)?;
    let n = g.n();
    let mut hits = vec![0u64; n + 1];
    let mut on_path = vec![false; n];
    on_path[root] = true;
    let mut nodes = 1u64;
    // Frames hold (vertex, next neighbor index); the root frame has no predecessor.
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    while let Some(&(v, idx)) = stack.last() {
        let nbrs = g.neighbors(v);
        if idx == nbrs.len() {
            stack.pop();
            on_path[v] = false;
            continue;
        }
        stack.last_mut().expect("non-empty").1 += 1;
        let w = nbrs[idx];
        let len = stack.len();
        if len >= 2 && w == stack[len - 2].0 {
            continue;
        }
        if on_path[w] {
            hits[len] += 1;
            continue;
        }
        nodes += 1;
        if nodes > budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        on_path[w] = true;
        stack.push((w, 0));
    }
    let hits: Vec<BigUint> = hits.into_iter().map(BigUint::from).collect();
    let mut dist = ExactTDistribution { root, degree: d, hits, survival: Vec::with_capacity(n + 1) };
    let mut remaining = BigRational::one();
    for k in 0..=n {
        remaining -= dist.point_mass(k);
        dist.survival.push(remaining.clone());
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Family};
    use crate::saw::{enumerate_census, DEFAULT_NODE_BUDGET};

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn k4_values() {
        let g = Family::Complete(4).generate().unwrap();
        let dist = exact_t_distribution(&g, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(dist.survival[2], ratio(1, 1));
        assert_eq!(dist.survival[3], ratio(1, 2));
        assert_eq!(dist.survival[4], ratio(0, 1));
        assert_eq!(dist.mean_t(), ratio(7, 2));
    }

    #[test]
    fn girth_prefix_is_certain() {
        for fam in [Family::Petersen, Family::Hypercube(3), Family::Complete(5)] {
            let g = fam.generate().unwrap();
            let g0 = girth(&g).finite().unwrap();
            let dist = exact_t_distribution(&g, 0, DEFAULT_NODE_BUDGET).unwrap();
            for k in 0..g0 {
                assert!(dist.survival[k].is_one(), "{fam} k={k}");
            }
            assert!(dist.survival[g.n()].is_zero());
        }
        let p = Family::Petersen.generate().unwrap();
        assert!(exact_t_distribution(&p, 0, DEFAULT_NODE_BUDGET).unwrap().survival[4].is_one());
    }

    #[test]
    fn reproduces_walk_counts() {
        for fam in [
            Family::Complete(4),
            Family::Petersen,
            Family::Hypercube(3),
            Family::Torus(3, 2),
            Family::RandomRegular { n: 12, d: 3, seed: 5 },
        ] {
            let g = fam.generate().unwrap();
            let census = enumerate_census(&g, 0, g.n() - 1, DEFAULT_NODE_BUDGET).unwrap();
            let dist = exact_t_distribution(&g, 0, DEFAULT_NODE_BUDGET).unwrap();
            for k in 1..g.n() {
                let c = BigRational::from_integer(BigInt::from(census.counts[k].clone()));
                assert_eq!(dist.implied_count(k), c, "{fam} k={k}");
            }
        }
    }

    #[test]
    fn budget_and_guards() {
        let g = Family::Petersen.generate().unwrap();
        assert!(matches!(exact_t_distribution(&g, 0, 10), Err(Error::BudgetExceeded { limit: 10 })));
        let c6 = Family::Cycle(6).generate().unwrap();
        assert!(matches!(exact_t_distribution(&c6, 0, 10), Err(Error::DegreeTooSmall { .. })));
    }
}
