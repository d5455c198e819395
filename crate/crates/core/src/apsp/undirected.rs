use std::collections::BTreeMap;

use super::{zwick_apsp_capped, ContractionMap, DistanceMatrix, Graph};
use crate::error::{Error, Result};
use crate::numeric::{Eps, ExpFloat};
use crate::weights::WeightMatrix;

/// `(1 + eps)`-approximate distances in an undirected graph.
///
/// Runs over powers of two `q`. In each round the graph `H` holds the edges
/// lighter than `2q`, rounded down to multiples of `q eps' / n` with
/// `eps' = eps / 4`; edges rounding to zero are contracted for good. Pairs
/// whose estimate in `H` falls in `[(1 - eps') q, (1 + eps') 2q)` are
/// recorded. Rounds in which `H` has no edge are skipped by jumping to the
/// next edge weight.
pub fn approx_apsp_undirected(g: &Graph, eps: Eps) -> Result<DistanceMatrix> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let e = eps.get() / 4.0;
    let inner = Eps::new(e)?;
    let mut d = WeightMatrix::filled(n, ExpFloat::INFINITY);
    for i in 0..n {
        d[(i, i)] = ExpFloat::ZERO;
    }
    let mut edges = g.edges().to_vec();
    edges.sort_by_key(|x| x.2);

    let mut cmap = ContractionMap::new(n);
    let mut contracted = 0;
    while contracted < edges.len() && edges[contracted].2.is_zero() {
        cmap.union(edges[contracted].0, edges[contracted].1);
        contracted += 1;
    }
    let reps: Vec<usize> = cmap.representatives().collect();
    for &r in &reps {
        let m = cmap.members(r);
        for &x in m {
            for &y in m {
                d[(x, y)] = ExpFloat::ZERO;
            }
        }
    }

    let mut present = contracted;
    if present < edges.len() {
        let mut q = ExpFloat::pow2(edges[present].2.exponent());
        let cap_units = ExpFloat::from_f64(4.0 * n as f64 / e);
        loop {
            let two_q = q.shift(1);
            while present < edges.len() && edges[present].2 < two_q {
                present += 1;
            }
            let unit = q.mul_f64(e / n as f64);
            while contracted < present && edges[contracted].2 < unit {
                cmap.union(edges[contracted].0, edges[contracted].1);
                contracted += 1;
            }

            let mut h: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for &(u, v, w) in &edges[contracted..present] {
                let (ru, rv) = (cmap.find(u), cmap.find(v));
                if ru == rv {
                    continue;
                }
                let m = w.div(unit).to_f64().floor().max(1.0) as u64;
                let slot = h.entry((ru.min(rv), ru.max(rv))).or_insert(m);
                *slot = (*slot).min(m);
            }

            if h.is_empty() {
                if present == edges.len() {
                    break;
                }
                q = ExpFloat::pow2(edges[present].2.exponent());
                continue;
            }

            let lo = q.mul_f64(1.0 - e);
            let hi = two_q.mul_f64(1.0 + e);
            for comp in components(n, &h) {
                let c = comp.len();
                let local: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &r)| (r, i)).collect();
                let mut w = WeightMatrix::filled(c, ExpFloat::INFINITY);
                for i in 0..c {
                    w[(i, i)] = ExpFloat::ZERO;
                }
                for (&(ru, rv), &m) in h.range((comp[0], 0)..) {
                    let (Some(&a), Some(&b)) = (local.get(&ru), local.get(&rv)) else {
                        continue;
                    };
                    w[(a, b)] = ExpFloat::from_u64(m);
                    w[(b, a)] = ExpFloat::from_u64(m);
                }
                let dh = zwick_apsp_capped(&w, inner, Some(cap_units))?;
                for a in 0..c {
                    for b in 0..c {
                        let units = dh[(a, b)];
                        if a == b || units.is_infinite() {
                            continue;
                        }
                        let val = units.mul(unit);
                        if val < lo || val >= hi {
                            continue;
                        }
                        for &x in cmap.members(comp[a]) {
                            for &y in cmap.members(comp[b]) {
                                if val < d[(x, y)] {
                                    d[(x, y)] = val;
                                }
                            }
                        }
                    }
                }
            }
            q = two_q;
        }
    }

    let f = 1.0 / (1.0 - e);
    for x in d.entries_mut() {
        if x.is_finite() && !x.is_zero() {
            *x = x.mul_f64(f);
        }
    }
    Ok(d)
}

/// Connected components (sorted vertex lists, at least two vertices each)
/// of the graph on the endpoints of `h`.
fn components(n: usize, h: &BTreeMap<(usize, usize), u64>) -> Vec<Vec<usize>> {
    let mut uf = ContractionMap::new(n);
    for &(u, v) in h.keys() {
        uf.union(u, v);
    }
    let mut out: Vec<Vec<usize>> = uf
        .representatives()
        .map(|r| {
            let mut m = uf.members(r).to_vec();
            m.sort_unstable();
            m
        })
        .filter(|m| m.len() >= 2)
        .collect();
    out.sort();
    out
}
