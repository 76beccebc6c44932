//! Vertex-transitivity by backtracking automorphism search.

use super::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub const DEFAULT_AUTOMORPHISM_BUDGET: u64 = 10_000_000;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transitivity {
    Yes,
    No,
    /// The search ran out of budget before deciding.
    Unknown,
}

/// Decides whether the automorphism group acts transitively on vertices.
///
/// Vertices are first screened by their BFS distance profile (a necessary
/// condition). The orbit of vertex 0 is then grown from explicitly found
/// automorphisms: each new automorphism is closed over the current orbit, and
/// a search is only started for targets not already known to be in the orbit.
/// `budget` bounds the total number of partial-map extensions.
pub fn is_vertex_transitive(g: &Graph, budget: u64) -> Transitivity {
    let n = g.n();
    if n <= 1 {
        return Transitivity::Yes;
    }
    if g.regular_degree().is_none() {
        return Transitivity::No;
    }
    let profiles: Vec<Vec<usize>> = (0..n).into_par_iter().map(|v| distance_profile(g, v)).collect();
    if profiles.iter().any(|p| *p != profiles[0]) {
        return Transitivity::No;
    }

    let mut search = Search::new(g, 0);
    let mut in_orbit = vec![false; n];
    in_orbit[0] = true;
    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut spent = 0u64;
    for target in 1..n {
        if in_orbit[target] {
            continue;
        }
        match search.find(target, budget, &mut spent) {
            SearchOutcome::Found(sigma) => {
                generators.push(sigma);
                close_orbit(&mut in_orbit, &generators);
            }
            SearchOutcome::Exhausted => return Transitivity::No,
            SearchOutcome::OutOfBudget => return Transitivity::Unknown,
        }
    }
    Transitivity::Yes
}

fn bfs_distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![NONE; g.n()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == NONE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Number of vertices at each distance; the last slot counts unreachable ones.
fn distance_profile(g: &Graph, s: usize) -> Vec<usize> {
    let dist = bfs_distances(g, s);
    let max = dist.iter().copied().filter(|&d| d != NONE).max().unwrap_or(0);
    let mut profile = vec![0; max + 2];
    for d in dist {
        let slot = if d == NONE { max + 1 } else { d };
        profile[slot] += 1;
    }
    profile
}

fn close_orbit(in_orbit: &mut [bool], generators: &[Vec<usize>]) {
    let mut queue: VecDeque<usize> = (0..in_orbit.len()).filter(|&v| in_orbit[v]).collect();
    while let Some(v) = queue.pop_front() {
        for sigma in generators {
            let w = sigma[v];
            if !in_orbit[w] {
                in_orbit[w] = true;
                queue.push_back(w);
            }
        }
    }
}

enum SearchOutcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct Search<'g> {
    g: &'g Graph,
    source: usize,
    /// Vertices in the order they are assigned (BFS order, component by component).
    order: Vec<usize>,
    parent: Vec<usize>,
    source_dist: Vec<usize>,
    all: Vec<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, source: usize) -> Self {
        let n = g.n();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![NONE; n];
        let mut seen = vec![false; n];
        for start in std::iter::once(source).chain(0..n) {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = u;
                        queue.push_back(w);
                    }
                }
            }
        }
        Search { g, source, order, parent, source_dist: bfs_distances(g, source), all: (0..n).collect() }
    }

    fn find(&mut self, target: usize, budget: u64, spent: &mut u64) -> SearchOutcome {
        let g = self.g;
        let n = g.n();
        let target_dist = bfs_distances(g, target);
        let mut map = vec![NONE; n];
        let mut inv = vec![NONE; n];
        map[self.source] = target;
        inv[target] = self.source;
        let mut next_candidate = vec![0usize; n];
        let mut level = 1;
        loop {
            if level == n {
                return SearchOutcome::Found(map);
            }
            if level == 0 {
                return SearchOutcome::Exhausted;
            }
            let v = self.order[level];
            if map[v] != NONE {
                inv[map[v]] = NONE;
                map[v] = NONE;
            }
            let pool: &[usize] = match self.parent[v] {
                NONE => &self.all,
                p => g.neighbors(map[p]),
            };
            let mut assigned = false;
            while next_candidate[level] < pool.len() {
                let c = pool[next_candidate[level]];
                next_candidate[level] += 1;
                if inv[c] != NONE || g.degree(c) != g.degree(v) || target_dist[c] != self.source_dist[v] || !consistent(g, v, c, &map, &inv)
                {
                    continue;
                }
                *spent += 1;
                if *spent > budget {
                    return SearchOutcome::OutOfBudget;
                }
                map[v] = c;
                inv[c] = v;
                assigned = true;
                break;
            }
            if assigned {
                level += 1;
                if level < n {
                    next_candidate[level] = 0;
                }
            } else {
                next_candidate[level] = 0;
                level -= 1;
            }
        }
    }
}

/// Mapping `v -> c` preserves adjacency and non-adjacency to every mapped vertex.
fn consistent(g: &Graph, v: usize, c: usize, map: &[usize], inv: &[usize]) -> bool {
    let mut mapped_nbrs = 0;
    for &w in g.neighbors(v) {
        if map[w] != NONE {
            if !g.has_edge(c, map[w]) {
                return false;
            }
            mapped_nbrs += 1;
        }
    }
    let image_nbrs = g.neighbors(c).iter().filter(|&&w| inv[w] != NONE).count();
    image_nbrs == mapped_nbrs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use itertools::Itertools;
    use proptest::prelude::*;

    /// Orbit of vertex 0 under every permutation that preserves the edge set.
    fn brute_force_transitive(g: &Graph) -> bool {
        let n = g.n();
        let edges: Vec<_> = g.edges().collect();
        let mut orbit = vec![false; n];
        for perm in (0..n).permutations(n) {
            if orbit[perm[0]] {
                continue;
            }
            if edges.iter().all(|&(u, v)| g.has_edge(perm[u], perm[v])) {
                orbit[perm[0]] = true;
            }
        }
        orbit.into_iter().all(|b| b)
    }

    #[test]
    fn known_graphs() {
        for fam in [Family::Petersen, Family::Cycle(7), Family::Complete(5), Family::Hypercube(4), Family::Torus(4, 2), Family::Torus(3, 3)]
        {
            let g = fam.generate().unwrap();
            assert_eq!(is_vertex_transitive(&g, DEFAULT_AUTOMORPHISM_BUDGET), Transitivity::Yes, "{fam}");
        }
        let path = Graph::new(3, &[(0, 1), (1, 2)], 0).unwrap();
        assert_eq!(is_vertex_transitive(&path, DEFAULT_AUTOMORPHISM_BUDGET), Transitivity::No);
    }

    #[test]
    fn petersen_matches_permutation_oracle() {
        // 10! permutations is too many for the oracle; check a generator directly.
        let g = Family::Petersen.generate().unwrap();
        let rotate = |v: usize| if v < 5 { (v + 1) % 5 } else { 5 + (v - 5 + 1) % 5 };
        assert!(g.edges().all(|(u, v)| g.has_edge(rotate(u), rotate(v))));
        assert_eq!(is_vertex_transitive(&g, DEFAULT_AUTOMORPHISM_BUDGET), Transitivity::Yes);
    }

    #[test]
    fn regular_but_not_transitive() {
        // K_4 plus a disjoint 3-cube: 3-regular, components of different girth.
        let mut edges: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let cube = Family::Hypercube(3).generate().unwrap();
        edges.extend(cube.edges().map(|(u, v)| (u + 4, v + 4)));
        let g = Graph::new(12, &edges, 0).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(is_vertex_transitive(&g, DEFAULT_AUTOMORPHISM_BUDGET), Transitivity::No);
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let g = Family::Hypercube(4).generate().unwrap();
        assert_eq!(is_vertex_transitive(&g, 3), Transitivity::Unknown);
    }

    #[test]
    fn exhaustive_small_regular() {
        for seed in 0..10 {
            let g = Family::RandomRegular { n: 8, d: 3, seed }.generate().unwrap();
            let expected = if brute_force_transitive(&g) { Transitivity::Yes } else { Transitivity::No };
            assert_eq!(is_vertex_transitive(&g, DEFAULT_AUTOMORPHISM_BUDGET), expected, "seed {seed}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_permutation_oracle(n in 2usize..=7, mask in any::<u32>()) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(n, &edges, 0).unwrap();
            let expected = if brute_force_transitive(&g) { Transitivity::Yes } else { Transitivity::No };
            prop_assert_eq!(is_vertex_transitive(&g, DEFAULT_AUTOMORPHISM_BUDGET), expected);
        }
    }
}
