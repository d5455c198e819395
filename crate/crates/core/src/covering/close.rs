use super::{CoveringFamily, Layer, LayerSource};
use crate::error::{Error, Result};
use std::collections::VecDeque;

use crate::numeric::{add_uncounted, count_add, count_mul, Eps, ExpFloat, Geometric};

/// Layer count of the close covering: `1 + ceil(2 log_{1+eps}(1/eps))`.
pub fn s_close(eps: f64) -> usize {
    1 + (2.0 * (1.0 / eps).ln() / eps.ln_1p()).ceil().max(0.0) as usize
}

/// Covers every pair whose ratio lies in `[eps, 1/eps]`.
///
/// Layer `l` keeps the buckets `d = k*s + l`; `A` entries are rounded up to
/// `(1+eps)^d`, `B` entries are shifted by `(1+eps)^d` when they fall in the
/// window `[eps (1+eps)^(d-1), (1+eps)^d / eps)`.
pub fn close_covering(a: &[ExpFloat], b: &[ExpFloat], eps: Eps) -> Result<CoveringFamily> {
    check_positive(a)?;
    check_positive(b)?;
    let layers = close_layers(a, b, eps.get())?;
    let budget = layers.len();
    Ok(CoveringFamily { layers, len_a: a.len(), len_b: b.len(), eps, budget, scale: None })
}

pub(super) fn check_positive(v: &[ExpFloat]) -> Result<()> {
    if v.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidValue("covering inputs must be positive".into()));
    }
    Ok(())
}

/// Finite indices of `v` in increasing order of value.
pub(super) fn sorted_finite(v: &[ExpFloat]) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..v.len() as u32).filter(|&i| v[i as usize].is_finite()).collect();
    idx.sort_by(|&i, &j| v[i as usize].cmp(&v[j as usize]));
    idx
}

/// `(1+eps)^d` for bucket ranges that only move upwards, each lookup
/// counted as one multiplication.
struct PowWindow<'a> {
    g: &'a Geometric,
    start: i64,
    vals: VecDeque<ExpFloat>,
    /// Largest forward gap filled in rather than restarting the window.
    reach: i64,
}

impl<'a> PowWindow<'a> {
    fn new(g: &'a Geometric, reach: usize) -> PowWindow<'a> {
        PowWindow { g, start: 0, vals: VecDeque::new(), reach: reach as i64 }
    }

    fn get(&mut self, d: i64) -> ExpFloat {
        count_mul(1);
        let end = self.start + self.vals.len() as i64;
        if d < self.start || d > end + self.reach {
            if d < self.start {
                return self.g.pow_uncounted(d);
            }
            self.start = d;
            self.vals.clear();
        }
        while self.start + (self.vals.len() as i64) <= d {
            let k = self.start + self.vals.len() as i64;
            self.vals.push_back(self.g.pow_uncounted(k));
        }
        self.vals[(d - self.start) as usize]
    }

    /// Forgets buckets below `d`.
    fn trim(&mut self, d: i64) {
        while self.start < d && !self.vals.is_empty() {
            self.vals.pop_front();
            self.start += 1;
        }
    }
}

/// Close layers, produced one at a time.
///
/// `A` entries sit in exactly one layer each and are stored per layer. A `B`
/// entry belongs to every layer whose residue class meets its bucket window,
/// so those entries are generated on demand from the window bounds.
#[derive(Clone, Debug)]
pub(crate) struct CloseGen {
    s: usize,
    a_layers: Vec<Vec<(u32, ExpFloat)>>,
    /// `(index, value, lo, hi)` in increasing order of value.
    b_items: Vec<(u32, ExpFloat, i64, i64)>,
    /// Runs `(first bucket, offset into pows)` covering every window.
    runs: Vec<(i64, usize)>,
    pows: Vec<ExpFloat>,
}

impl CloseGen {
    pub(crate) fn new(a: &[ExpFloat], b: &[ExpFloat], eps: f64) -> Result<CloseGen> {
        let s = s_close(eps);
        let g = Geometric::new(Eps::new(eps)?);
        let slot = |d: i64| (d - 1).rem_euclid(s as i64) as usize;
        let mut a_layers = vec![Vec::new(); s];
        let mut pw = PowWindow::new(&g, s + 4);
        for i in sorted_finite(a) {
            let d = g.bucket_index(a[i as usize])?;
            pw.trim(d);
            a_layers[slot(d)].push((i, pw.get(d)));
        }

        // Window predicates, evaluated the same way everywhere.
        let mut pw = PowWindow::new(&g, s + 4);
        let mut b_items = Vec::new();
        for j in sorted_finite(b) {
            let y = b[j as usize];
            let mut lo = g.bucket_index(y.mul_f64(eps))?;
            pw.trim(lo - 2);
            while y < pw.get(lo - 1).div_f64(eps) {
                lo -= 1;
            }
            while y >= pw.get(lo).div_f64(eps) {
                lo += 1;
            }
            let mut hi = g.bucket_index(y.div_f64(eps))?;
            while pw.get(hi).mul_f64(eps) <= y {
                hi += 1;
            }
            while pw.get(hi - 1).mul_f64(eps) > y {
                hi -= 1;
            }
            // The window spans at most s buckets; should rounding admit one
            // more, the larger bucket wins its layer.
            let lo = lo.max(hi - s as i64 + 1);
            if lo <= hi {
                b_items.push((j, y, lo, hi));
            }
        }

        let mut runs: Vec<(i64, usize)> = Vec::new();
        let mut pows = Vec::new();
        let mut end = i64::MIN;
        for &(_, _, lo, hi) in &b_items {
            if runs.is_empty() || lo > end {
                runs.push((lo, pows.len()));
                end = lo;
                pows.push(g.pow_uncounted(lo));
            }
            while end < hi {
                end += 1;
                pows.push(g.pow_uncounted(end));
            }
        }
        Ok(CloseGen { s, a_layers, b_items, runs, pows })
    }

    /// No layers at all.
    pub(crate) fn empty() -> CloseGen {
        CloseGen { s: 0, a_layers: Vec::new(), b_items: Vec::new(), runs: Vec::new(), pows: Vec::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.s
    }

    /// Overwrites `out` with layer `l`, every entry multiplied by `scale`.
    pub(crate) fn fill(&self, l: usize, scale: Option<f64>, out: &mut Layer) {
        out.a.clear();
        out.b.clear();
        out.source = LayerSource::Close;
        let s = self.s as i64;
        match scale {
            Some(f) => out.a.extend(self.a_layers[l].iter().map(|&(i, v)| (i, v.mul_f64(f)))),
            None => out.a.extend_from_slice(&self.a_layers[l]),
        }
        let mut r = 0;
        let target = l as i64 + 1;
        for &(j, y, lo, hi) in &self.b_items {
            // Largest d <= hi with d = l + 1 (mod s).
            let d = hi - (hi - target).rem_euclid(s);
            if d < lo {
                continue;
            }
            while r + 1 < self.runs.len() && self.runs[r + 1].0 <= d {
                r += 1;
            }
            let (start, off) = self.runs[r];
            let mut v = add_uncounted(y, self.pows[off + (d - start) as usize]);
            if let Some(f) = scale {
                v = v.mul_f64_uncounted(f);
            }
            out.b.push((j, v));
        }
        let k = out.b.len() as u64;
        count_add(k);
        count_mul(if scale.is_some() { 2 * k } else { k });
    }
}

/// Close layers; entries of each layer are listed in increasing order of
/// both the original and the shifted value.
pub(super) fn close_layers(a: &[ExpFloat], b: &[ExpFloat], eps: f64) -> Result<Vec<Layer>> {
    let gen = CloseGen::new(a, b, eps)?;
    let mut layers = vec![Layer::empty(LayerSource::Close); gen.len()];
    for (l, layer) in layers.iter_mut().enumerate() {
        gen.fill(l, None, layer);
    }
    Ok(layers)
}
