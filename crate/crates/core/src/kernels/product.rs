use crate::error::{Error, Result};
use crate::numeric::count_cmp;

/// `n x n` matrix of ranks; `top` encodes `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMatrix {
    pub n: usize,
    pub top: u32,
    pub entries: Vec<u32>,
}

impl RankMatrix {
    pub fn new(n: usize, top: u32, entries: Vec<u32>) -> Result<RankMatrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        if let Some(&bad) = entries.iter().find(|&&r| r > top) {
            return Err(Error::EntryOutOfRange { value: bad as u64, bound: top as u64 });
        }
        Ok(RankMatrix { n, top, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MinMaxBackend {
    /// Dense cubic loop; its work is independent of the data.
    Naive,
    /// Cubic loop that skips infinite left-hand entries.
    #[default]
    SkipInfinite,
    /// Bit-packed boolean products at a few rank thresholds, with exact
    /// resolution inside the first threshold block that connects a pair.
    Threshold,
}

/// `C[i,j] = min_k max(A[i,k], B[k,j])`.
pub fn minmax_product(a: &RankMatrix, b: &RankMatrix, backend: MinMaxBackend) -> Result<RankMatrix> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let top = a.top.max(b.top);
    let entries = match backend {
        MinMaxBackend::Naive => dense(&a.entries, &b.entries, a.n, top, false),
        MinMaxBackend::SkipInfinite => dense(&a.entries, &b.entries, a.n, top, true),
        MinMaxBackend::Threshold => threshold(&a.entries, &b.entries, a.n, top),
    };
    Ok(RankMatrix { n: a.n, top, entries })
}

pub(crate) fn dense(a: &[u32], b: &[u32], n: usize, top: u32, skip: bool) -> Vec<u32> {
    let mut c = vec![top; n * n];
    let mut active = 0u64;
    for i in 0..n {
        let crow = &mut c[i * n..(i + 1) * n];
        for k in 0..n {
            let x = a[i * n + k];
            if skip && x >= top {
                continue;
            }
            active += 1;
            let brow = &b[k * n..(k + 1) * n];
            for (cv, &bv) in crow.iter_mut().zip(brow) {
                *cv = (*cv).min(x.max(bv));
            }
        }
    }
    let checks = if skip { (n * n) as u64 } else { 0 };
    count_cmp(checks + 2 * active * n as u64);
    c
}

fn threshold(a: &[u32], b: &[u32], n: usize, top: u32) -> Vec<u32> {
    const BLOCKS: usize = 32;
    let words = n.div_ceil(64);
    let mut c = vec![top; n * n];
    if n == 0 {
        return c;
    }

    // Finite entries ordered by rank; `false` marks A, `true` marks B.
    let mut items: Vec<(u32, bool, u32, u32)> = Vec::new();
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k] < top {
                items.push((a[i * n + k], false, i as u32, k as u32));
            }
            if b[i * n + k] < top {
                items.push((b[i * n + k], true, i as u32, k as u32));
            }
        }
    }
    items.sort_unstable();
    let m = items.len();
    count_cmp(m as u64 * (usize::BITS - m.leading_zeros()) as u64);

    let mut row_bits = vec![0u64; n * words];
    let mut col_bits = vec![0u64; n * words];
    let mut open: Vec<u32> = (0..(n * n) as u32).collect();
    let block = m.div_ceil(BLOCKS).max(1);
    let mut start = 0;
    let mut word_ops = 0u64;
    while start < m && !open.is_empty() {
        let mut end = (start + block).min(m);
        // Keep equal ranks inside one block.
        while end < m && items[end].0 == items[end - 1].0 {
            end += 1;
        }
        for &(_, side, r, s) in &items[start..end] {
            let (r, s) = (r as usize, s as usize);
            if side {
                // B[r][s]: column s, bit r.
                col_bits[s * words + r / 64] |= 1 << (r % 64);
            } else {
                // A[r][s]: row r, bit s.
                row_bits[r * words + s / 64] |= 1 << (s % 64);
            }
        }
        open.retain(|&p| {
            let (i, j) = (p as usize / n, p as usize % n);
            let rb = &row_bits[i * words..(i + 1) * words];
            let cb = &col_bits[j * words..(j + 1) * words];
            word_ops += words as u64;
            let mut best = top;
            for (w, (&x, &y)) in rb.iter().zip(cb).enumerate() {
                let mut bits = x & y;
                while bits != 0 {
                    let k = w * 64 + bits.trailing_zeros() as usize;
                    best = best.min(a[i * n + k].max(b[k * n + j]));
                    word_ops += 2;
                    bits &= bits - 1;
                }
            }
            if best < top {
                c[p as usize] = best;
                false
            } else {
                true
            }
        });
        start = end;
    }
    count_cmp(word_ops);
    c
}
