use super::ntt;
use crate::error::{Error, Result};
use crate::numeric::count_cmp;

/// Sequence of ranks; `top` encodes `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSequence {
    pub top: u32,
    pub entries: Vec<u32>,
}

impl RankSequence {
    pub fn new(top: u32, entries: Vec<u32>) -> Result<RankSequence> {
        if let Some(&bad) = entries.iter().find(|&&r| r > top) {
            return Err(Error::EntryOutOfRange { value: bad as u64, bound: top as u64 });
        }
        Ok(RankSequence { top, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConvBackend {
    /// Dense quadratic loop; its work is independent of the data.
    Naive,
    /// Quadratic loop that skips infinite left-hand entries.
    #[default]
    SkipInfinite,
    /// Threshold blocks located by boolean convolutions, then resolved by
    /// scanning the block.
    Subquadratic,
}

/// `C[k] = min_{i+j=k} max(A[i], B[j])` for `k < n`.
pub fn minmax_convolution(a: &RankSequence, b: &RankSequence, backend: ConvBackend) -> Result<RankSequence> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let top = a.top.max(b.top);
    let entries = match backend {
        ConvBackend::Naive => dense(&a.entries, &b.entries, top, false),
        ConvBackend::SkipInfinite => dense(&a.entries, &b.entries, top, true),
        ConvBackend::Subquadratic => subquadratic(&a.entries, &b.entries, top),
    };
    Ok(RankSequence { top, entries })
}

pub(crate) fn dense(a: &[u32], b: &[u32], top: u32, skip: bool) -> Vec<u32> {
    let n = a.len();
    let mut c = vec![top; n];
    let mut work = 0u64;
    for (i, &x) in a.iter().enumerate() {
        if skip && x >= top {
            continue;
        }
        work += (n - i) as u64;
        for (cv, &bv) in c[i..].iter_mut().zip(b) {
            *cv = (*cv).min(x.max(bv));
        }
    }
    let checks = if skip { n as u64 } else { 0 };
    count_cmp(checks + 2 * work);
    c
}

pub(crate) fn subquadratic(a: &[u32], b: &[u32], top: u32) -> Vec<u32> {
    let n = a.len();
    if n < 64 {
        return dense(a, b, top, true);
    }
    const NONE: usize = usize::MAX;
    // Distinct positions in one sorted order; min and max commute with it.
    let mut items: Vec<(u32, bool, u32)> = Vec::with_capacity(2 * n);
    for i in 0..n {
        if a[i] < top {
            items.push((a[i], false, i as u32));
        }
        if b[i] < top {
            items.push((b[i], true, i as u32));
        }
    }
    items.sort_unstable();
    let m = items.len();
    let mut pos_a = vec![NONE; n];
    let mut pos_b = vec![NONE; n];
    for (p, &(_, side, i)) in items.iter().enumerate() {
        if side {
            pos_b[i as usize] = p;
        } else {
            pos_a[i as usize] = p;
        }
    }

    let log = (usize::BITS - n.leading_zeros()) as usize;
    let block = ((6 * n * log) as f64).sqrt().ceil() as usize;
    let mut ind_a = vec![0u64; n];
    let mut ind_b = vec![0u64; n];
    let mut result = vec![NONE; n];
    let mut open: Vec<usize> = (0..n).collect();
    let mut work = (m * log) as u64;
    let mut start = 0;
    while start < m && !open.is_empty() {
        let end = (start + block).min(m);
        for &(_, side, i) in &items[start..end] {
            if side {
                ind_b[i as usize] = 1;
            } else {
                ind_a[i as usize] = 1;
            }
        }
        let hits = ntt::convolve(&ind_a, &ind_b);
        let t = end - 1;
        open.retain(|&k| {
            if hits[k] == 0 {
                return true;
            }
            let mut best = NONE;
            for &(_, side, idx) in &items[start..end] {
                let idx = idx as usize;
                if idx > k {
                    continue;
                }
                let (pa, pb) = if side { (pos_a[k - idx], pos_b[idx]) } else { (pos_a[idx], pos_b[k - idx]) };
                if pa != NONE && pb != NONE && pa <= t && pb <= t {
                    best = best.min(pa.max(pb));
                }
            }
            work += 2 * (end - start) as u64;
            result[k] = best;
            false
        });
        start = end;
    }
    count_cmp(work);
    result.into_iter().map(|p| if p == NONE { top } else { items[p].0 }).collect()
}
