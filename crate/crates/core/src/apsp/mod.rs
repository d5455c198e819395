//! All-pairs shortest paths: exact oracle, repeated approximate squaring for
//! directed graphs, and scaling with edge contraction for undirected ones.

mod contraction;
mod graph;
mod undirected;

pub use contraction::ContractionMap;
pub use graph::{DistanceMatrix, Graph};
pub use undirected::approx_apsp_undirected;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::numeric::{Eps, ExpFloat};
use crate::product::{approx_minplus_product_with, zwick_minplus_product, ProductOptions};
use crate::weights::WeightMatrix;

/// `ceil(log2 n)` for `n >= 1`.
pub(crate) fn ceil_log2(n: usize) -> u32 {
    n.max(1).next_power_of_two().trailing_zeros()
}

/// Single-source distances by Dijkstra.
pub fn dijkstra(adj: &[Vec<(usize, ExpFloat)>], src: usize) -> Vec<ExpFloat> {
    let mut dist = vec![ExpFloat::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = ExpFloat::ZERO;
    heap.push(Reverse((dist[src], src)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d.add(w);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Exact distances by one Dijkstra run per source.
pub fn exact_apsp(g: &Graph) -> DistanceMatrix {
    let adj = g.adjacency_lists();
    let entries = (0..g.n()).flat_map(|s| dijkstra(&adj, s)).collect();
    WeightMatrix::new(g.n(), entries).expect("n rows of length n")
}

/// `ln(1 + eps) / ceil(log2 n)`: per-round parameter so that the rounds'
/// errors compound to at most `1 + eps`.
pub(crate) fn per_round_eps(eps: Eps, rounds: u32) -> Eps {
    Eps::new(eps.get().ln_1p() / rounds.max(1) as f64).expect("positive and below eps")
}

/// `(1 + eps)`-approximate distances by `ceil(log2 n)` approximate squarings
/// of the zero-diagonal adjacency matrix.
pub fn approx_apsp_directed(g: &Graph, eps: Eps) -> Result<DistanceMatrix> {
    approx_apsp_directed_with(g, eps, ProductOptions::default())
}

pub fn approx_apsp_directed_with(g: &Graph, eps: Eps, opts: ProductOptions) -> Result<DistanceMatrix> {
    let rounds = ceil_log2(g.n());
    let mut d = g.adjacency_matrix();
    if rounds == 0 {
        return Ok(d);
    }
    let e = per_round_eps(eps, rounds);
    for _ in 0..rounds {
        d = approx_minplus_product_with(&d, &d, e, opts)?;
    }
    Ok(d)
}

/// Repeated squaring with the scaling product; the weight range enters the
/// running time. `w` must have a zero diagonal.
pub fn zwick_apsp(w: &WeightMatrix, eps: Eps) -> Result<DistanceMatrix> {
    zwick_apsp_capped(w, eps, None)
}

/// As [`zwick_apsp`], but estimates above `cap` are dropped to `inf` after
/// each round. Distances whose optimal paths only use sub-paths with
/// estimates up to `cap` are still approximated.
pub(crate) fn zwick_apsp_capped(w: &WeightMatrix, eps: Eps, cap: Option<ExpFloat>) -> Result<DistanceMatrix> {
    let rounds = ceil_log2(w.n());
    let mut d = w.clone();
    if rounds == 0 {
        return Ok(d);
    }
    let e = per_round_eps(eps, rounds).div(4.0);
    for _ in 0..rounds {
        d = zwick_minplus_product(&d, &d, e)?;
        if let Some(c) = cap {
            for x in d.entries_mut() {
                if x.cmp_uncounted(&c).is_gt() {
                    *x = ExpFloat::INFINITY;
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ef(x: f64) -> ExpFloat {
        ExpFloat::from_f64(x)
    }

    #[test]
    fn exact_examples() {
        let g = Graph::new(3, true, [(0, 1, ef(1.0)), (1, 2, ef(1.0)), (2, 0, ef(1.0))]).unwrap();
        let d = exact_apsp(&g);
        assert_eq!(d[(0, 2)], ef(2.0));
        assert_eq!(d[(2, 1)], ef(2.0));
        let g = Graph::new(2, true, []).unwrap();
        assert!(exact_apsp(&g)[(0, 1)].is_infinite());
        let d = exact_apsp(&Graph::new(1, false, []).unwrap());
        assert!(d[(0, 0)].is_zero());
    }

    #[test]
    fn single_edge_is_exact() {
        let w = ExpFloat::new(1.37, 500);
        let g = Graph::new(2, true, [(0, 1, w)]).unwrap();
        let d = approx_apsp_directed(&g, Eps::new(0.1).unwrap()).unwrap();
        assert_eq!(d[(0, 1)], w);
        assert!(d[(1, 0)].is_infinite());
        assert!(d[(0, 0)].is_zero());
    }

    #[test]
    fn cycle_within_eps() {
        let g = Graph::new(3, true, [(0, 1, ef(1.0)), (1, 2, ef(1.0)), (2, 0, ef(1.0))]).unwrap();
        let exact = exact_apsp(&g);
        let eps = Eps::new(0.1).unwrap();
        for d in [approx_apsp_directed(&g, eps).unwrap(), zwick_apsp(&g.adjacency_matrix(), eps).unwrap()] {
            for (x, y) in d.entries().iter().zip(exact.entries()) {
                let r = x.ratio(*y);
                assert!((1.0..=1.1 + 1e-12).contains(&r), "{r}");
            }
        }
    }
}
