use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numeric::ExpFloat;
use crate::weights::WeightMatrix;

/// Weighted graph with non-negative finite edge weights.
///
/// Self-loops are dropped and parallel edges collapse to the lightest one.
/// Undirected edges are stored once with `u < v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize, ExpFloat)>,
}

impl Graph {
    pub fn new(n: usize, directed: bool, edges: impl IntoIterator<Item = (usize, usize, ExpFloat)>) -> Result<Graph> {
        let mut best: BTreeMap<(usize, usize), ExpFloat> = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            if !w.is_finite() {
                return Err(Error::InvalidValue(format!("edge ({u}, {v}) has infinite weight")));
            }
            if u == v {
                continue;
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            let e = best.entry(key).or_insert(w);
            if w.cmp_uncounted(e).is_lt() {
                *e = w;
            }
        }
        let edges = best.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        Ok(Graph { n, directed, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize, ExpFloat)] {
        &self.edges
    }

    /// Outgoing `(neighbour, weight)` lists; undirected edges appear both ways.
    pub fn adjacency_lists(&self) -> Vec<Vec<(usize, ExpFloat)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            if !self.directed {
                adj[v].push((u, w));
            }
        }
        adj
    }

    /// Weight matrix with a zero diagonal and `inf` for non-edges.
    pub fn adjacency_matrix(&self) -> WeightMatrix {
        let n = self.n;
        let mut m = WeightMatrix::filled(n, ExpFloat::INFINITY);
        for i in 0..n {
            m[(i, i)] = ExpFloat::ZERO;
        }
        for &(u, v, w) in &self.edges {
            m[(u, v)] = w;
            if !self.directed {
                m[(v, u)] = w;
            }
        }
        m
    }

    /// Same vertices, only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize, ExpFloat) -> bool) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(u, v, w)| keep(u, v, w)).collect();
        Graph { n: self.n, directed: self.directed, edges }
    }

    /// Same topology with every weight mapped through `f`.
    pub fn map_weights(&self, mut f: impl FnMut(ExpFloat) -> ExpFloat) -> Graph {
        let edges = self.edges.iter().map(|&(u, v, w)| (u, v, f(w))).collect();
        Graph { n: self.n, directed: self.directed, edges }
    }
}

/// Distances with a zero diagonal; `inf` marks unreachable pairs.
pub type DistanceMatrix = WeightMatrix;
