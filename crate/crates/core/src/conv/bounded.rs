use crate::error::{Error, Result};
use crate::kernels::ntt;
use crate::numeric::{count_add, count_cmp};

pub use crate::product::BOUNDED_INF;

/// Exact min-plus convolution of sequences with finite entries in `0..=m`.
///
/// Sparse inputs use a direct loop over finite pairs; dense ones encode
/// position `i` with value `x` as the monomial `z^((2m+1) i + x)` and read
/// each output off one polynomial product.
pub fn bounded_minconv_exact(a: &[u64], b: &[u64], m: u64) -> Result<Vec<u64>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&x| x != BOUNDED_INF && x > m) {
        return Err(Error::EntryOutOfRange { value: bad, bound: m });
    }
    let fa: Vec<(usize, u64)> = a.iter().copied().enumerate().filter(|e| e.1 != BOUNDED_INF).collect();
    let fb: Vec<(usize, u64)> = b.iter().copied().enumerate().filter(|e| e.1 != BOUNDED_INF).collect();
    Ok(bounded_from_lists(&fa, &fb, a.len(), m))
}

/// As [`bounded_minconv_exact`] on the finite entries `(index, value)`,
/// listed by increasing index, of two length-`n` sequences.
pub(crate) fn bounded_from_lists(fa: &[(usize, u64)], fb: &[(usize, u64)], n: usize, m: u64) -> Vec<u64> {
    let width = 2 * m as usize + 1;
    let log = (usize::BITS - n.leading_zeros()) as usize;
    let pairs = fa.len() * fb.len();
    let len = (2 * n * width).next_power_of_two();
    if pairs <= n * width * log || len > ntt::MAX_LEN {
        sparse(fa, fb, n)
    } else {
        kronecker(fa, fb, n, width)
    }
}

fn sparse(fa: &[(usize, u64)], fb: &[(usize, u64)], n: usize) -> Vec<u64> {
    let mut c = vec![BOUNDED_INF; n];
    let mut work = 0u64;
    for &(i, x) in fa {
        for &(j, y) in fb {
            if i + j >= n {
                break;
            }
            work += 1;
            let s = x + y;
            if s < c[i + j] {
                c[i + j] = s;
            }
        }
    }
    count_add(work);
    count_cmp(work);
    c
}

fn kronecker(fa: &[(usize, u64)], fb: &[(usize, u64)], n: usize, width: usize) -> Vec<u64> {
    let encode = |f: &[(usize, u64)]| {
        let mut p = vec![0u64; n * width];
        for &(i, x) in f {
            p[i * width + x as usize] = 1;
        }
        p
    };
    let q = ntt::convolve(&encode(fa), &encode(fb));
    count_cmp((n * width) as u64);
    (0..n)
        .map(|k| {
            let lo = k * width;
            let hi = (lo + width).min(q.len());
            q.get(lo..hi)
                .and_then(|w| w.iter().position(|&c| c != 0))
                .map_or(BOUNDED_INF, |v| v as u64)
        })
        .collect()
}
