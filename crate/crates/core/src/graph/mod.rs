//! Finite simple graphs with a designated root vertex.
//!
//! A [`Graph`] is immutable once built. Adjacency lists are kept sorted so that
//! every search over the graph visits neighbors in ascending id order, which
//! makes enumeration order (and hence any budget-truncated partial result)
//! reproducible.

mod automorphism;
mod generate;
mod girth;
mod io;

pub use automorphism::{is_vertex_transitive, Transitivity, DEFAULT_AUTOMORPHISM_BUDGET};
pub use generate::{Family, SizedFamily, DEFAULT_RESAMPLE_LIMIT};
pub use girth::{girth, Girth};
pub use io::{load_graph, parse_edge_list, parse_json, save_graph, to_edge_list, to_json, GraphFile};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adjacency: Vec<Vec<usize>>,
    root: usize,
    num_edges: usize,
}

impl Graph {
    /// Builds the canonical graph on `n` vertices. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Graph> {
        if root >= n {
            return Err(Error::RootOutOfRange { root, n });
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let num_edges = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { name: String::from("graph"), adjacency, root, num_edges })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = name.into();
        self
    }

    pub fn with_root(mut self, root: usize) -> Result<Graph> {
        if root >= self.n() {
            return Err(Error::RootOutOfRange { root, n: self.n() });
        }
        self.root = root;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The common degree, if every vertex has the same number of neighbors.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn check_root(&self, root: usize) -> Result<()> {
        if root >= self.n() {
            Err(Error::RootOutOfRange { root, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Structural summary. The transitivity search is bounded by `budget` nodes.
    pub fn meta(&self, budget: u64) -> GraphMeta {
        let degree = self.regular_degree();
        GraphMeta { is_regular: degree.is_some(), degree, girth: girth(self), vertex_transitive: is_vertex_transitive(self, budget) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub is_regular: bool,
    pub degree: Option<usize>,
    pub girth: Girth,
    pub vertex_transitive: Transitivity,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_two_regular() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)], 0).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, &[(0, 1), (1, 0)], 0).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Graph::new(3, &[(0, 3)], 0), Err(Error::EndpointOutOfRange { .. })));
        assert!(matches!(Graph::new(3, &[(1, 1)], 0), Err(Error::SelfLoop { vertex: 1 })));
        assert!(matches!(Graph::new(3, &[], 3), Err(Error::RootOutOfRange { .. })));
    }

    #[test]
    fn petersen_degree_by_direct_count() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let g = Graph::new(10, &edges, 0).unwrap();
        for v in 0..10 {
            let count = edges.iter().filter(|&&(a, b)| a == v || b == v).count();
            assert_eq!(count, 3);
            assert_eq!(g.degree(v), 3);
        }
        assert_eq!(g.num_edges(), 15);
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::new(5, &[(4, 0), (2, 0), (3, 1), (0, 1), (3, 4)], 0).unwrap();
        for u in 0..g.n() {
            assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v, u));
            }
        }
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 4), (1, 3), (3, 4)]);
    }
}
