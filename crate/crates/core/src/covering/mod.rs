//! Sum-to-max coverings: families of sparse vector pairs whose layer-wise
//! maximum sandwiches every pairwise sum.

mod close;
mod distant;

pub use close::{close_covering, s_close};
pub use distant::{
    distant_covering_sets, distant_covering_vectors, s_distant, set_pair_count, ChunkList,
    Decomposition, SetPair,
};

use crate::error::Result;
use crate::numeric::{Eps, ExpFloat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerSource {
    Close,
    Distant,
}

/// One pair `(A^l, B^l)`; absent indices stand for `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub a: Vec<(u32, ExpFloat)>,
    pub b: Vec<(u32, ExpFloat)>,
    pub source: LayerSource,
}

impl Layer {
    pub fn empty(source: LayerSource) -> Layer {
        Layer { a: Vec::new(), b: Vec::new(), source }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoveringMode {
    /// `(1 - 2 eps)`-lower and `(1 + eps)`-upper sandwich.
    Weak,
    /// Exact lower bound and `(1 + eps)`-upper sandwich.
    Strong,
}

#[derive(Clone, Debug)]
pub struct CoveringFamily {
    pub layers: Vec<Layer>,
    pub len_a: usize,
    pub len_b: usize,
    pub eps: Eps,
    /// Closed-form layer count the construction must match.
    pub budget: usize,
    /// Factor applied to every entry of the weak family, if any. Distant
    /// layers hold original entries multiplied by this factor.
    pub scale: Option<f64>,
}

impl CoveringFamily {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// `min_l max(A^l[i], B^l[j])` for all pairs, as a `len_a x len_b` table.
    pub fn pairwise_min_max(&self) -> Vec<ExpFloat> {
        let mut b_dense = vec![ExpFloat::INFINITY; self.layers.len() * self.len_b];
        let mut by_a: Vec<Vec<(usize, ExpFloat)>> = vec![Vec::new(); self.len_a];
        for (l, layer) in self.layers.iter().enumerate() {
            for &(j, v) in &layer.b {
                b_dense[l * self.len_b + j as usize] = v;
            }
            for &(i, v) in &layer.a {
                by_a[i as usize].push((l, v));
            }
        }
        let mut out = vec![ExpFloat::INFINITY; self.len_a * self.len_b];
        for (i, entries) in by_a.iter().enumerate() {
            let row = &mut out[i * self.len_b..(i + 1) * self.len_b];
            for &(l, va) in entries {
                let bl = &b_dense[l * self.len_b..(l + 1) * self.len_b];
                for (o, &vb) in row.iter_mut().zip(bl) {
                    *o = (*o).min(va.max(vb));
                }
            }
        }
        out
    }
}

/// Closed-form layer count of [`sum_to_max_covering`] for `z_len` finite
/// input values.
pub fn layer_budget(z_len: usize, eps: Eps, mode: CoveringMode) -> usize {
    let e = match mode {
        CoveringMode::Weak => eps.get(),
        CoveringMode::Strong => eps.get() / 5.0,
    };
    s_distant(z_len, e) + s_close(e)
}

/// Factor applied by the strong covering to the weak one built with `eps/5`.
pub fn strong_scale(eps: Eps) -> f64 {
    1.0 / (1.0 - 2.0 * eps.get() / 5.0)
}

/// Layers of a sum-to-max covering: distant ones stored, close ones
/// generated on demand.
#[derive(Clone, Debug)]
pub(crate) struct CoveringPlan {
    pub distant: Vec<Layer>,
    pub close: close::CloseGen,
    pub scale: Option<f64>,
}

impl CoveringPlan {
    pub(crate) fn len(&self) -> usize {
        self.distant.len() + self.close.len()
    }

    /// Visits every layer in order, distant ones first.
    pub(crate) fn for_each_layer(&self, mut f: impl FnMut(&Layer)) {
        for layer in &self.distant {
            f(layer);
        }
        let mut buf = Layer::empty(LayerSource::Close);
        for l in 0..self.close.len() {
            self.close.fill(l, self.scale, &mut buf);
            f(&buf);
        }
    }
}

pub(crate) fn covering_plan(a: &[ExpFloat], b: &[ExpFloat], eps: Eps, mode: CoveringMode) -> Result<CoveringPlan> {
    close::check_positive(a)?;
    close::check_positive(b)?;
    let e = match mode {
        CoveringMode::Weak => eps.get(),
        CoveringMode::Strong => eps.get() / 5.0,
    };
    let mut distant = distant::distant_layers(a, b, e);
    let close = close::CloseGen::new(a, b, e)?;
    let scale = match mode {
        CoveringMode::Weak => None,
        CoveringMode::Strong => {
            let f = strong_scale(eps);
            for layer in &mut distant {
                for entry in layer.a.iter_mut().chain(layer.b.iter_mut()) {
                    entry.1 = entry.1.mul_f64(f);
                }
            }
            Some(f)
        }
    };
    let plan = CoveringPlan { distant, close, scale };
    let z_len = distant::finite_union(a, b).0.len();
    assert_eq!(plan.len(), layer_budget(z_len, eps, mode), "layer count must match the closed form");
    Ok(plan)
}

/// Distant layers only, with original entries; `scale` multiplies every
/// decoded value.
pub(crate) fn distant_plan(a: &[ExpFloat], b: &[ExpFloat], eps: f64, scale: Option<f64>) -> Result<CoveringPlan> {
    close::check_positive(a)?;
    close::check_positive(b)?;
    let distant = distant::distant_layers(a, b, eps);
    Ok(CoveringPlan { distant, close: close::CloseGen::empty(), scale })
}

/// Distant layers followed by close layers; the strong mode runs the weak
/// construction with `eps/5` and inflates every entry by `1/(1 - 2 eps/5)`.
pub fn sum_to_max_covering(
    a: &[ExpFloat],
    b: &[ExpFloat],
    eps: Eps,
    mode: CoveringMode,
) -> Result<CoveringFamily> {
    let plan = covering_plan(a, b, eps, mode)?;
    let mut layers = Vec::with_capacity(plan.len());
    plan.for_each_layer(|l| layers.push(l.clone()));
    let budget = layers.len();
    Ok(CoveringFamily { layers, len_a: a.len(), len_b: b.len(), eps, budget, scale: plan.scale })
}
