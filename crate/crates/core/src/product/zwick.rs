use crate::error::{Error, Result};
use crate::numeric::{count_add, count_cmp, count_mul, Eps, ExpFloat};
use crate::weights::WeightMatrix;

/// Sentinel for `+inf` in bounded integer matrices.
pub const BOUNDED_INF: u64 = u64::MAX;

/// `n x n` matrix with finite entries in `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedMatrix {
    pub n: usize,
    pub bound: u64,
    pub entries: Vec<u64>,
}

impl BoundedMatrix {
    pub fn new(n: usize, bound: u64, entries: Vec<u64>) -> Result<BoundedMatrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x != BOUNDED_INF && x > bound) {
            return Err(Error::EntryOutOfRange { value: bad, bound });
        }
        Ok(BoundedMatrix { n, bound, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }
}

/// `ceil(A[i,j] / (eps 2^q))` for entries at most `2^q`, `inf` otherwise.
pub fn zwick_scale(a: &WeightMatrix, q: i64, eps: Eps) -> BoundedMatrix {
    let bound = (1.0 / eps.get()).ceil() as u64;
    let cap = ExpFloat::pow2(q);
    let e = eps.get();
    let entries = a
        .entries()
        .iter()
        .map(|&x| {
            if x > cap {
                BOUNDED_INF
            } else {
                count_mul(1);
                let v = (x.shift(-q).to_f64() / e).ceil() as u64;
                v.min(bound)
            }
        })
        .collect();
    BoundedMatrix { n: a.n(), bound, entries }
}

/// Exact min-plus product of bounded integer matrices.
pub fn bounded_minplus_product(a: &BoundedMatrix, b: &BoundedMatrix) -> Result<BoundedMatrix> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut c = vec![BOUNDED_INF; n * n];
    let mut work = 0u64;
    for i in 0..n {
        let crow = &mut c[i * n..(i + 1) * n];
        for k in 0..n {
            let x = a.entries[i * n + k];
            if x == BOUNDED_INF {
                continue;
            }
            work += n as u64;
            for (cv, &y) in crow.iter_mut().zip(&b.entries[k * n..(k + 1) * n]) {
                if y != BOUNDED_INF && x + y < *cv {
                    *cv = x + y;
                }
            }
        }
    }
    count_cmp((n * n) as u64 + work);
    count_add(work);
    Ok(BoundedMatrix { n, bound: a.bound + b.bound, entries: c })
}

/// Scaling-based approximation: one bounded product per power of two between
/// the smallest and largest finite entry. `C <= result <= (1 + 4 eps) C`.
pub fn zwick_minplus_product(a: &WeightMatrix, b: &WeightMatrix, eps: Eps) -> Result<WeightMatrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let n = a.n();
    let mut out = WeightMatrix::filled(n, ExpFloat::INFINITY);
    let finite = a.entries().iter().chain(b.entries()).filter(|x| x.is_finite());
    let (mut lo, mut hi): (Option<ExpFloat>, Option<ExpFloat>) = (None, None);
    let mut has_zero = false;
    for &x in finite {
        if x.is_zero() {
            has_zero = true;
            continue;
        }
        lo = Some(lo.map_or(x, |l| if x.cmp_uncounted(&l).is_lt() { x } else { l }));
        hi = Some(hi.map_or(x, |h| if x.cmp_uncounted(&h).is_gt() { x } else { h }));
    }
    let (q0, q1) = match (lo, hi) {
        (Some(l), Some(h)) => (l.ceil_log2(), h.ceil_log2()),
        _ if has_zero => (0, 0),
        _ => return Ok(out),
    };
    for q in q0..=q1 {
        let sa = zwick_scale(a, q, eps);
        let sb = zwick_scale(b, q, eps);
        let c = bounded_minplus_product(&sa, &sb)?;
        for (o, &v) in out.entries_mut().iter_mut().zip(&c.entries) {
            if v != BOUNDED_INF {
                let cand = ExpFloat::from_u64(v).mul_f64(eps.get()).shift(q);
                if cand < *o {
                    *o = cand;
                }
            }
        }
    }
    Ok(out)
}
