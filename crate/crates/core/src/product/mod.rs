//! Min-plus matrix products: exact, covering-based approximate, and the
//! scaling baseline, plus the reduction recovering exact min-max products.

mod zwick;

pub use zwick::{bounded_minplus_product, zwick_minplus_product, zwick_scale, BoundedMatrix, BOUNDED_INF};

use crate::covering::{covering_plan, CoveringMode};
use crate::error::{Error, Result};
use crate::kernels::{self, MinMaxBackend, RankMatrix};
use crate::layered::{min_over_layers, TOP};
use crate::numeric::{Eps, ExpFloat};
use crate::weights::WeightMatrix;

/// `C[i,j] = min_k A[i,k] + B[k,j]`.
pub fn minplus_product_naive(a: &WeightMatrix, b: &WeightMatrix) -> Result<WeightMatrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let n = a.n();
    let mut c = WeightMatrix::filled(n, ExpFloat::INFINITY);
    for i in 0..n {
        for k in 0..n {
            let x = a[(i, k)];
            if x.is_infinite() {
                continue;
            }
            for j in 0..n {
                let s = x.add(b[(k, j)]);
                if s < c[(i, j)] {
                    c[(i, j)] = s;
                }
            }
        }
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProductOptions {
    pub backend: MinMaxBackend,
}

/// `(1 + eps)`-approximate min-plus product via a strong sum-to-max covering.
pub fn approx_minplus_product(a: &WeightMatrix, b: &WeightMatrix, eps: Eps) -> Result<WeightMatrix> {
    approx_minplus_product_with(a, b, eps, ProductOptions::default())
}

pub fn approx_minplus_product_with(
    a: &WeightMatrix,
    b: &WeightMatrix,
    eps: Eps,
    opts: ProductOptions,
) -> Result<WeightMatrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let n = a.n();
    let (pa, pb) = (positive_part(a.entries()), positive_part(b.entries()));
    let plan = covering_plan(&pa, &pb, eps, CoveringMode::Strong)?;
    let oblivious = opts.backend == MinMaxBackend::Naive;
    let mut out = min_over_layers(&pa, &pb, &plan, n * n, oblivious, |ra, rb| match opts.backend {
        MinMaxBackend::Naive => kernels::product_dense(ra, rb, n, TOP, false),
        MinMaxBackend::SkipInfinite => kernels::product_dense(ra, rb, n, TOP, true),
        MinMaxBackend::Threshold => {
            let ma = RankMatrix { n, top: TOP, entries: ra.to_vec() };
            let mb = RankMatrix { n, top: TOP, entries: rb.to_vec() };
            kernels::minmax_product(&ma, &mb, MinMaxBackend::Threshold).expect("square layers").entries
        }
    });
    zero_terms(a, b, &mut out);
    WeightMatrix::new(n, out)
}

/// Zeros replaced by `inf`; sums with a zero operand are handled exactly.
pub(crate) fn positive_part(v: &[ExpFloat]) -> Vec<ExpFloat> {
    v.iter().map(|&x| if x.is_zero() { ExpFloat::INFINITY } else { x }).collect()
}

/// Folds in `A[i,k] + B[k,j]` for every term with a zero operand.
fn zero_terms(a: &WeightMatrix, b: &WeightMatrix, out: &mut [ExpFloat]) {
    let n = a.n();
    for i in 0..n {
        for k in 0..n {
            if a[(i, k)].is_zero() {
                for (o, &y) in out[i * n..(i + 1) * n].iter_mut().zip(b.row(k)) {
                    *o = (*o).min(y);
                }
            }
        }
    }
    for k in 0..n {
        for j in 0..n {
            if b[(k, j)].is_zero() {
                for i in 0..n {
                    out[i * n + j] = out[i * n + j].min(a[(i, k)]);
                }
            }
        }
    }
}

/// `log2 r` for the smallest power of two `r >= 4 (1 + eps)^2`.
pub fn reduction_log2_base(eps: Eps) -> i64 {
    let r = 4.0 * (1.0 + eps.get()).powi(2);
    r.log2().ceil() as i64
}

/// Recovers a rank from an approximate value known to lie in
/// `[r^c, r^(c + 1/2)]`, tolerating rounding at both ends.
pub(crate) fn decode_rank(v: ExpFloat, log2_r: i64, top: u32) -> u32 {
    if v.is_infinite() {
        return top;
    }
    let l = log2_r as f64;
    ((v.log2() + l / 4.0) / l).floor() as u32
}

/// Exact min-max product through one approximate min-plus product on
/// `r^A` and `r^B`.
pub fn minmax_product_via_approx(a: &RankMatrix, b: &RankMatrix, eps: Eps) -> Result<RankMatrix> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let top = a.top.max(b.top);
    let l = reduction_log2_base(eps);
    let lift = |m: &RankMatrix| {
        let e = m
            .entries
            .iter()
            .map(|&r| if r >= top { ExpFloat::INFINITY } else { ExpFloat::pow2(r as i64 * l) })
            .collect();
        WeightMatrix::new(m.n, e)
    };
    let c = approx_minplus_product(&lift(a)?, &lift(b)?, eps)?;
    let entries = c.entries().iter().map(|&v| decode_rank(v, l, top)).collect();
    Ok(RankMatrix { n: a.n, top, entries })
}
