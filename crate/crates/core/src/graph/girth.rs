use super::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => write!(f, "acyclic"),
        }
    }
}

/// Length of the shortest cycle, by a BFS from every vertex.
///
/// A BFS from `s` that meets a non-tree edge `(u, w)` closes a closed walk of
/// length `dist[u] + dist[w] + 1` through `s`; the minimum over all sources is
/// the girth. Each BFS stops once its frontier is too deep to improve on the best cycle seen.
pub fn girth(g: &Graph) -> Girth {
    let best = (0..g.n())
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; g.n()], vec![usize::MAX; g.n()], VecDeque::new()),
            |(dist, parent, queue), s| shortest_cycle_through(g, s, dist, parent, queue),
        )
        .min()
        .unwrap_or(usize::MAX);
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}

fn shortest_cycle_through(g: &Graph, s: usize, dist: &mut [usize], parent: &mut [usize], queue: &mut VecDeque<usize>) -> usize {
    let mut touched = vec![s];
    dist[s] = 0;
    parent[s] = usize::MAX;
    queue.clear();
    queue.push_back(s);
    let mut best = usize::MAX;
    'bfs: while let Some(u) = queue.pop_front() {
        if 2 * dist[u] >= best {
            break;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                touched.push(w);
                queue.push_back(w);
            } else if parent[u] != w {
                best = best.min(dist[u] + dist[w] + 1);
                if best == 3 {
                    break 'bfs;
                }
            }
        }
    }
    for v in touched {
        dist[v] = usize::MAX;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    /// Shortest cycle by exhaustive search over simple closed paths.
    fn brute_force_girth(g: &Graph) -> Option<usize> {
        fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
            let last = *path.last().unwrap();
            for &w in g.neighbors(last) {
                if w == start && path.len() >= 3 {
                    let len = path.len();
                    *best = Some(best.map_or(len, |b: usize| b.min(len)));
                } else if w > start && !path.contains(&w) {
                    path.push(w);
                    extend(g, start, path, best);
                    path.pop();
                }
            }
        }
        let mut best = None;
        for s in 0..g.n() {
            extend(g, s, &mut vec![s], &mut best);
        }
        best
    }

    #[test]
    fn named_graphs() {
        assert_eq!(girth(&Family::Complete(4).generate().unwrap()), Girth::Finite(3));
        assert_eq!(girth(&Family::Cycle(7).generate().unwrap()), Girth::Finite(7));
        assert_eq!(girth(&Family::Petersen.generate().unwrap()), Girth::Finite(5));
        assert_eq!(girth(&Family::Hypercube(4).generate().unwrap()), Girth::Finite(4));
        assert_eq!(girth(&Family::Torus(5, 2).generate().unwrap()), Girth::Finite(4));
        assert_eq!(girth(&Family::Torus(3, 2).generate().unwrap()), Girth::Finite(3));
    }

    #[test]
    fn petersen_matches_brute_force() {
        let g = Family::Petersen.generate().unwrap();
        assert_eq!(brute_force_girth(&g), Some(5));
    }

    #[test]
    fn trees_are_acyclic() {
        let path = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], 0).unwrap();
        assert_eq!(girth(&path), Girth::Acyclic);
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], 0).unwrap();
        assert_eq!(girth(&star), Girth::Acyclic);
        let empty = Graph::new(3, &[], 0).unwrap();
        assert_eq!(girth(&empty), Girth::Acyclic);
    }

    #[test]
    fn complete_and_cycle_laws() {
        for n in 3..10 {
            assert_eq!(girth(&Family::Complete(n).generate().unwrap()), Girth::Finite(3));
            assert_eq!(girth(&Family::Cycle(n).generate().unwrap()), Girth::Finite(n));
        }
    }

    #[test]
    fn random_regular_agrees_with_brute_force() {
        for seed in 0..6 {
            let g = Family::RandomRegular { n: 14, d: 3, seed }.generate().unwrap();
            assert_eq!(girth(&g).finite(), brute_force_girth(&g), "seed {seed}");
        }
    }
}
