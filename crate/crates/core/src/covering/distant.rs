use super::close::check_positive;
use super::{CoveringFamily, Layer, LayerSource};
use crate::error::Result;
use crate::numeric::{ceil_log2_recip, Eps, ExpFloat};

/// Two index subsets of `Z` whose values are at least `1/eps` apart.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetPair {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// A level of the recursive decomposition: half-open ranges into sorted `Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChunkList {
    pub chunks: Vec<(usize, usize)>,
}

fn levels(len: usize) -> u32 {
    len.max(1).next_power_of_two().trailing_zeros()
}

/// Number of set pairs produced for a multiset of `len` values.
pub fn set_pair_count(len: usize, eps: f64) -> usize {
    2 * levels(len) as usize * (ceil_log2_recip(eps) as usize + 1)
}

/// Layer count of the vector variant for `z_len` finite input values.
pub fn s_distant(z_len: usize, eps: f64) -> usize {
    2 * set_pair_count(z_len, 2.0 * eps)
}

/// Far-pair covering of a multiset: every `x < y` with `y/x >= 2/eps` lands
/// in some `(X, Y)`, and every output pair is `1/eps`-separated.
pub fn distant_covering_sets(z: &[ExpFloat], eps: Eps) -> Result<Vec<SetPair>> {
    check_positive(z)?;
    Ok(Decomposition::new(z).set_pairs(eps.get()))
}

/// Sorted, padded view of `Z` together with the chunk hierarchy.
pub struct Decomposition {
    vals: Vec<ExpFloat>,
    ids: Vec<Option<usize>>,
}

impl Decomposition {
    pub fn new(z: &[ExpFloat]) -> Decomposition {
        let mut order: Vec<usize> = (0..z.len()).collect();
        order.sort_by(|&a, &b| z[a].cmp(&z[b]).then(a.cmp(&b)));
        let pad = z.len().max(1).next_power_of_two();
        let mut vals: Vec<ExpFloat> = order.iter().map(|&i| z[i]).collect();
        let mut ids: Vec<Option<usize>> = order.into_iter().map(Some).collect();
        let top = vals.last().copied().unwrap_or(ExpFloat::ONE);
        vals.resize(pad, top);
        ids.resize(pad, None);
        Decomposition { vals, ids }
    }

    pub fn levels(&self) -> u32 {
        levels(self.vals.len())
    }

    /// Chunk lists `T_1, T_2, ...` after each split round.
    pub fn chunk_levels(&self, eps: f64) -> Vec<ChunkList> {
        let mut out = Vec::new();
        let mut chunks = vec![(0, self.vals.len())];
        for _ in 0..self.levels() {
            let mut next = Vec::with_capacity(chunks.len() * 2);
            for &(a, b) in &chunks {
                if self.vals[a] < self.vals[b - 1].mul_f64(eps) {
                    let mid = (a + b) / 2;
                    next.push((a, mid));
                    next.push((mid, b));
                }
            }
            chunks = next;
            out.push(ChunkList { chunks: chunks.clone() });
        }
        out
    }

    pub fn set_pairs(&self, eps: f64) -> Vec<SetPair> {
        let shifts = ceil_log2_recip(eps);
        let mut out = Vec::new();
        for level in self.chunk_levels(eps) {
            let pairs: Vec<((usize, usize), (usize, usize))> =
                level.chunks.chunks(2).map(|p| (p[0], p[1])).collect();
            for parity in 0..2 {
                let sub: Vec<_> = pairs.iter().skip(parity).step_by(2).copied().collect();
                for t in 0..=shifts {
                    out.push(self.shifted_transition(&sub, eps, t));
                }
            }
        }
        out
    }

    fn shifted_transition(
        &self,
        pairs: &[((usize, usize), (usize, usize))],
        eps: f64,
        t: u32,
    ) -> SetPair {
        let factor = eps * (1u64 << t) as f64;
        let mut sp = SetPair::default();
        for &((a1, b1), (a2, b2)) in pairs {
            let zmin = self.vals[a2];
            let x_cut = zmin.mul_f64(factor);
            let mut k = a1;
            while k < b1 && self.vals[k] <= x_cut {
                if let Some(id) = self.ids[k] {
                    sp.x.push(id);
                }
                k += 1;
            }
            let y_cut = zmin.shift(t as i64);
            let mut k = b2;
            while k > a2 && self.vals[k - 1] >= y_cut {
                k -= 1;
            }
            sp.y.extend((k..b2).filter_map(|p| self.ids[p]));
        }
        sp
    }
}

/// Corollary-style vector covering built from the set covering with `2 eps`.
///
/// Layers keep original entries verbatim; the first half maps `X` to `A` and
/// `Y` to `B`, the second half swaps the roles.
pub fn distant_covering_vectors(a: &[ExpFloat], b: &[ExpFloat], eps: Eps) -> Result<CoveringFamily> {
    check_positive(a)?;
    check_positive(b)?;
    let layers = distant_layers(a, b, eps.get());
    let budget = layers.len();
    Ok(CoveringFamily { layers, len_a: a.len(), len_b: b.len(), eps, budget, scale: None })
}

/// Finite values of `A` then `B`, tagged with their side and index.
pub(super) fn finite_union(a: &[ExpFloat], b: &[ExpFloat]) -> (Vec<ExpFloat>, Vec<(bool, u32)>) {
    let mut z = Vec::new();
    let mut origin = Vec::new();
    for (side, v) in [(false, a), (true, b)] {
        for (i, &x) in v.iter().enumerate() {
            if x.is_finite() {
                z.push(x);
                origin.push((side, i as u32));
            }
        }
    }
    (z, origin)
}

pub(super) fn distant_layers(a: &[ExpFloat], b: &[ExpFloat], eps: f64) -> Vec<Layer> {
    let (z, origin) = finite_union(a, b);
    let pairs = Decomposition::new(&z).set_pairs(2.0 * eps);
    let mut layers = Vec::with_capacity(2 * pairs.len());
    for swap in [false, true] {
        for p in &pairs {
            let (for_a, for_b) = if swap { (&p.y, &p.x) } else { (&p.x, &p.y) };
            let mut layer = Layer::empty(LayerSource::Distant);
            for &id in for_a {
                let (side, i) = origin[id];
                if !side {
                    layer.a.push((i, z[id]));
                }
            }
            for &id in for_b {
                let (side, j) = origin[id];
                if side {
                    layer.b.push((j, z[id]));
                }
            }
            layer.a.sort_unstable_by_key(|e| e.0);
            layer.b.sort_unstable_by_key(|e| e.0);
            layers.push(layer);
        }
    }
    layers
}
