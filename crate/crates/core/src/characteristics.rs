//! Diameter, radius, median, minimum-weight triangle and minimum-weight
//! cycle, approximated on a graph whose weight range has been reduced.
//!
//! A threshold search finds the smallest edge weight `w*` at which the
//! quantity becomes finite; the true value then lies in `[w*, n^2 w*]`.
//! Heavier edges cannot matter, and rounding the rest up to multiples of
//! `w* eps / n^2` perturbs the answer by a factor of at most `1 + eps`.

use std::fmt;
use std::str::FromStr;

use crate::apsp::{dijkstra, exact_apsp, zwick_apsp, ContractionMap, DistanceMatrix, Graph};
use crate::error::{Error, Result};
use crate::numeric::{Eps, ExpFloat};
use crate::product::zwick_minplus_product;
use crate::weights::WeightMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharacteristicKind {
    Diameter,
    Radius,
    Median,
    MinTriangle,
    MinCycle,
}

impl CharacteristicKind {
    pub const ALL: [CharacteristicKind; 5] = [
        CharacteristicKind::Diameter,
        CharacteristicKind::Radius,
        CharacteristicKind::Median,
        CharacteristicKind::MinTriangle,
        CharacteristicKind::MinCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CharacteristicKind::Diameter => "diameter",
            CharacteristicKind::Radius => "radius",
            CharacteristicKind::Median => "median",
            CharacteristicKind::MinTriangle => "min_triangle",
            CharacteristicKind::MinCycle => "min_cycle",
        }
    }

    /// Whether a graph on a single vertex already has value zero.
    fn trivial_on_one_vertex(self) -> bool {
        matches!(self, CharacteristicKind::Diameter | CharacteristicKind::Radius | CharacteristicKind::Median)
    }
}

impl fmt::Display for CharacteristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CharacteristicKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CharacteristicKind> {
        CharacteristicKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidValue(format!("unknown characteristic `{s}`")))
    }
}

/// Graph with a reduced weight range.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeReduction {
    pub w_star: ExpFloat,
    pub rounded_graph: Graph,
    pub granularity: ExpFloat,
}

fn reaches_all(adj: &[Vec<usize>], src: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![src];
    seen[src] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == adj.len()
}

fn out_lists(g: &Graph, edges: &[(usize, usize, ExpFloat)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for &(u, v, _) in edges {
        adj[u].push(v);
        if !g.is_directed() {
            adj[v].push(u);
        }
    }
    adj
}

fn has_triangle(g: &Graph, edges: &[(usize, usize, ExpFloat)]) -> bool {
    let n = g.n();
    let mut m = vec![false; n * n];
    for &(u, v, _) in edges {
        m[u * n + v] = true;
        if !g.is_directed() {
            m[v * n + u] = true;
        }
    }
    (0..n).any(|i| {
        (0..n).any(|k| m[i * n + k] && (0..n).any(|j| j != i && m[k * n + j] && m[j * n + i]))
    })
}

fn has_cycle(g: &Graph, edges: &[(usize, usize, ExpFloat)]) -> bool {
    let n = g.n();
    if g.is_directed() {
        let mut indeg = vec![0usize; n];
        let adj = out_lists(g, edges);
        for &(_, v, _) in edges {
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = stack.pop() {
            removed += 1;
            for &v in &adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        removed < n
    } else {
        let mut uf = ContractionMap::new(n);
        edges.iter().any(|&(u, v, _)| !uf.union(u, v))
    }
}

/// Whether `kind` is finite on the subgraph formed by `edges`.
fn finite_on(g: &Graph, kind: CharacteristicKind, edges: &[(usize, usize, ExpFloat)]) -> bool {
    let n = g.n();
    match kind {
        CharacteristicKind::Diameter => {
            let adj = out_lists(g, edges);
            if g.is_directed() {
                (0..n).all(|v| reaches_all(&adj, v))
            } else {
                reaches_all(&adj, 0)
            }
        }
        CharacteristicKind::Radius | CharacteristicKind::Median => {
            let adj = out_lists(g, edges);
            if g.is_directed() {
                (0..n).any(|v| reaches_all(&adj, v))
            } else {
                reaches_all(&adj, 0)
            }
        }
        CharacteristicKind::MinTriangle => has_triangle(g, edges),
        CharacteristicKind::MinCycle => has_cycle(g, edges),
    }
}

/// Smallest edge weight `w` such that `kind` is finite using only edges of
/// weight at most `w`.
pub fn threshold_search(g: &Graph, kind: CharacteristicKind) -> Result<ExpFloat> {
    let mut edges = g.edges().to_vec();
    edges.sort_by_key(|x| x.2);
    let mut weights: Vec<ExpFloat> = edges.iter().map(|e| e.2).collect();
    weights.dedup();
    let prefix = |w: ExpFloat| {
        let end = edges.partition_point(|e| e.2.cmp_uncounted(&w).is_le());
        &edges[..end]
    };
    if g.n() == 0 || weights.is_empty() || !finite_on(g, kind, prefix(*weights.last().expect("nonempty"))) {
        return Err(Error::Infinite);
    }
    let (mut lo, mut hi) = (0, weights.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if finite_on(g, kind, prefix(weights[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(weights[lo])
}

/// Every weight rounded up to the next multiple of `w_star eps / n^2`.
pub fn round_weights(g: &Graph, w_star: ExpFloat, eps: Eps) -> Graph {
    let gran = granularity(g.n(), w_star, eps);
    g.map_weights(|w| round_up(w, gran))
}

fn granularity(n: usize, w_star: ExpFloat, eps: Eps) -> ExpFloat {
    let n2 = (n.max(1) * n.max(1)) as f64;
    w_star.mul_f64(eps.get()).div_f64(n2)
}

fn round_up(w: ExpFloat, gran: ExpFloat) -> ExpFloat {
    let k = w.div(gran).to_f64().ceil().max(1.0);
    gran.mul_f64(k)
}

/// Threshold search, removal of edges heavier than `n^2 w*`, and rounding
/// with granularity `w* eps / n^2`.
pub fn range_reduction(g: &Graph, kind: CharacteristicKind, eps: Eps) -> Result<RangeReduction> {
    let w_star = threshold_search(g, kind)?;
    let n2 = (g.n() * g.n()) as f64;
    let cap = w_star.mul_f64(n2);
    let kept = g.filter_edges(|_, _, w| w <= cap);
    let granularity = granularity(g.n(), w_star, eps);
    let rounded_graph = kept.map_weights(|w| round_up(w, granularity));
    Ok(RangeReduction { w_star, rounded_graph, granularity })
}

fn aggregate(d: &DistanceMatrix, kind: CharacteristicKind) -> ExpFloat {
    let n = d.n();
    match kind {
        CharacteristicKind::Diameter => d.entries().iter().copied().fold(ExpFloat::ZERO, ExpFloat::max),
        CharacteristicKind::Radius => {
            d.rows().map(|r| r.iter().copied().fold(ExpFloat::ZERO, ExpFloat::max)).fold(ExpFloat::INFINITY, ExpFloat::min)
        }
        CharacteristicKind::Median => (0..n)
            .map(|i| d.row(i).iter().fold(ExpFloat::ZERO, |acc, &x| acc.add(x)))
            .fold(ExpFloat::INFINITY, ExpFloat::min),
        _ => unreachable!("not a distance aggregate"),
    }
}

/// Adjacency matrix with `inf` on the diagonal.
fn loopless_adjacency(g: &Graph) -> WeightMatrix {
    let mut a = g.adjacency_matrix();
    for i in 0..g.n() {
        a[(i, i)] = ExpFloat::INFINITY;
    }
    a
}

fn min_triangle_from(a: &WeightMatrix, c: &WeightMatrix) -> ExpFloat {
    let n = a.n();
    let mut best = ExpFloat::INFINITY;
    for i in 0..n {
        for j in 0..n {
            let t = c[(i, j)].add(a[(j, i)]);
            best = best.min(t);
        }
    }
    best
}

/// Shortest cycle through some edge, closing each undirected edge `{u, v}`
/// by the shortest `u`-`v` path that avoids it.
fn undirected_min_cycle(g: &Graph) -> ExpFloat {
    let mut best = ExpFloat::INFINITY;
    for (idx, &(u, v, w)) in g.edges().iter().enumerate() {
        let mut k = 0;
        let rest = g.filter_edges(|_, _, _| {
            k += 1;
            k - 1 != idx
        });
        let d = dijkstra(&rest.adjacency_lists(), u)[v];
        best = best.min(w.add(d));
    }
    best
}

fn directed_min_cycle(g: &Graph, d: &DistanceMatrix) -> ExpFloat {
    g.edges().iter().map(|&(u, v, w)| w.add(d[(v, u)])).fold(ExpFloat::INFINITY, ExpFloat::min)
}

/// `(1 + eps)`-approximation of `kind`. Fails with [`Error::Infinite`] when
/// the quantity is infinite.
pub fn approx_characteristic(g: &Graph, kind: CharacteristicKind, eps: Eps) -> Result<ExpFloat> {
    if g.n() == 1 && kind.trivial_on_one_vertex() {
        return Ok(ExpFloat::ZERO);
    }
    let third = eps.div(3.0);
    let red = range_reduction(g, kind, third)?;
    let h = &red.rounded_graph;
    let value = match kind {
        CharacteristicKind::Diameter | CharacteristicKind::Radius | CharacteristicKind::Median => {
            aggregate(&zwick_apsp(&h.adjacency_matrix(), third)?, kind)
        }
        CharacteristicKind::MinTriangle => {
            let a = loopless_adjacency(h);
            let c = zwick_minplus_product(&a, &a, third.div(4.0))?;
            min_triangle_from(&a, &c)
        }
        CharacteristicKind::MinCycle if h.is_directed() => {
            directed_min_cycle(h, &zwick_apsp(&h.adjacency_matrix(), third)?)
        }
        CharacteristicKind::MinCycle => undirected_min_cycle(h),
    };
    if value.is_infinite() {
        return Err(Error::Infinite);
    }
    Ok(value)
}

/// Exact value of `kind` from exact distances and exhaustive triangle
/// search.
pub fn exact_characteristic(g: &Graph, kind: CharacteristicKind) -> Result<ExpFloat> {
    if g.n() == 1 && kind.trivial_on_one_vertex() {
        return Ok(ExpFloat::ZERO);
    }
    let value = match kind {
        CharacteristicKind::Diameter | CharacteristicKind::Radius | CharacteristicKind::Median => {
            aggregate(&exact_apsp(g), kind)
        }
        CharacteristicKind::MinTriangle => {
            let a = loopless_adjacency(g);
            let n = g.n();
            let mut best = ExpFloat::INFINITY;
            for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        if i != j {
                            best = best.min(a[(i, k)].add(a[(k, j)]).add(a[(j, i)]));
                        }
                    }
                }
            }
            best
        }
        CharacteristicKind::MinCycle if g.is_directed() => directed_min_cycle(g, &exact_apsp(g)),
        CharacteristicKind::MinCycle => undirected_min_cycle(g),
    };
    if value.is_infinite() {
        return Err(Error::Infinite);
    }
    Ok(value)
}
