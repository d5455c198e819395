//! Evaluates `min_l decode(kernel(rank(A^l), rank(B^l)))` over a covering.

use crate::covering::{CoveringPlan, LayerSource};
use crate::numeric::{count_cmp, ExpFloat};

/// Rank standing for `+inf` in every layer.
pub(crate) const TOP: u32 = u32::MAX;

/// Runs `kernel` on every layer of `plan` and keeps the entry-wise minimum of
/// the decoded outputs.
///
/// Distant layers hold the original entries (times `plan.scale`), so they
/// share one global ranking; close layers are ranked on their own. With
/// `oblivious` set, empty layers still run the kernel so that the work does
/// not depend on the data.
pub(crate) fn min_over_layers(
    a: &[ExpFloat],
    b: &[ExpFloat],
    plan: &CoveringPlan,
    out_len: usize,
    oblivious: bool,
    mut kernel: impl FnMut(&[u32], &[u32]) -> Vec<u32>,
) -> Vec<ExpFloat> {
    let global = GlobalRanks::new(a, b, plan.scale);
    let mut ra = vec![TOP; a.len()];
    let mut rb = vec![TOP; b.len()];
    let mut best = vec![ExpFloat::INFINITY; out_len];
    let mut local: Vec<ExpFloat> = Vec::new();

    plan.for_each_layer(|layer| {
        if !oblivious && (layer.a.is_empty() || layer.b.is_empty()) {
            return;
        }
        let decode: &[ExpFloat] = match layer.source {
            LayerSource::Distant => {
                for &(i, _) in &layer.a {
                    ra[i as usize] = global.a[i as usize];
                }
                for &(j, _) in &layer.b {
                    rb[j as usize] = global.b[j as usize];
                }
                &global.values
            }
            LayerSource::Close => {
                rank_locally(layer, &mut ra, &mut rb, &mut local);
                &local
            }
        };
        let c = kernel(&ra, &rb);
        for (o, &r) in best.iter_mut().zip(&c) {
            if r != TOP {
                let v = decode[r as usize];
                if v.cmp_uncounted(o).is_lt() {
                    *o = v;
                }
            }
        }
        count_cmp(out_len as u64);
        for &(i, _) in &layer.a {
            ra[i as usize] = TOP;
        }
        for &(j, _) in &layer.b {
            rb[j as usize] = TOP;
        }
    });
    best
}

struct GlobalRanks {
    a: Vec<u32>,
    b: Vec<u32>,
    values: Vec<ExpFloat>,
}

impl GlobalRanks {
    fn new(a: &[ExpFloat], b: &[ExpFloat], scale: Option<f64>) -> GlobalRanks {
        let mut items: Vec<(ExpFloat, bool, u32)> = Vec::new();
        for (side, v) in [(false, a), (true, b)] {
            for (i, &x) in v.iter().enumerate() {
                if x.is_finite() {
                    items.push((x, side, i as u32));
                }
            }
        }
        items.sort_by_key(|p| p.0);
        let mut ra = vec![TOP; a.len()];
        let mut rb = vec![TOP; b.len()];
        let mut values: Vec<ExpFloat> = Vec::new();
        let mut last: Option<ExpFloat> = None;
        for &(x, side, i) in &items {
            if last != Some(x) {
                values.push(x);
                last = Some(x);
            }
            let r = values.len() as u32 - 1;
            if side {
                rb[i as usize] = r;
            } else {
                ra[i as usize] = r;
            }
        }
        if let Some(f) = scale {
            for v in &mut values {
                *v = v.mul_f64(f);
            }
        }
        GlobalRanks { a: ra, b: rb, values }
    }
}

/// Ranks (0-based) of one close layer, written into `ra` and `rb`.
///
/// Close layers list their entries in increasing order, so a merge suffices;
/// other inputs are sorted first.
fn rank_locally(layer: &crate::covering::Layer, ra: &mut [u32], rb: &mut [u32], values: &mut Vec<ExpFloat>) {
    let sorted = |v: &[(u32, ExpFloat)]| v.windows(2).all(|w| w[0].1.cmp_uncounted(&w[1].1).is_le());
    let mut sa;
    let mut sb;
    let (la, lb): (&[(u32, ExpFloat)], &[(u32, ExpFloat)]) = (&layer.a, &layer.b);
    let la = if sorted(la) {
        la
    } else {
        sa = la.to_vec();
        sa.sort_by_key(|p| p.1);
        &sa[..]
    };
    let lb = if sorted(lb) {
        lb
    } else {
        sb = lb.to_vec();
        sb.sort_by_key(|p| p.1);
        &sb[..]
    };
    values.clear();
    count_cmp((la.len() + lb.len()) as u64);
    let (mut i, mut j) = (0, 0);
    while i < la.len() || j < lb.len() {
        let take_a = j == lb.len() || (i < la.len() && la[i].1.cmp_uncounted(&lb[j].1).is_le());
        let (x, idx, side) = if take_a {
            i += 1;
            (la[i - 1].1, la[i - 1].0, false)
        } else {
            j += 1;
            (lb[j - 1].1, lb[j - 1].0, true)
        };
        if values.last().is_none_or(|l| l.cmp_uncounted(&x).is_ne()) {
            values.push(x);
        }
        let r = values.len() as u32 - 1;
        if side {
            rb[idx as usize] = r;
        } else {
            ra[idx as usize] = r;
        }
    }
}
