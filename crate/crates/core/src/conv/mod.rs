//! Min-plus convolution: exact oracle, covering-based approximations, and
//! the reduction recovering exact min-max convolution.

mod bounded;
mod close;

pub use bounded::{bounded_minconv_exact, BOUNDED_INF};
pub use close::close_minconv;

use crate::covering::{covering_plan, distant_plan, CoveringMode};
use crate::error::{Error, Result};
use crate::kernels::{self, ConvBackend, RankSequence};
use crate::layered::{min_over_layers, TOP};
use crate::numeric::{Eps, ExpFloat};
use crate::product::{decode_rank, positive_part, reduction_log2_base};
use crate::weights::WeightSequence;

/// `C[k] = min_{i+j=k} A[i] + B[j]` for `k < n`.
pub fn minconv_naive(a: &WeightSequence, b: &WeightSequence) -> Result<WeightSequence> {
    check_lengths(a, b)?;
    let n = a.len();
    let mut c = vec![ExpFloat::INFINITY; n];
    for (i, &x) in a.iter().enumerate() {
        if x.is_infinite() {
            continue;
        }
        for (o, &y) in c[i..].iter_mut().zip(b.iter()) {
            let s = x.add(y);
            if s < *o {
                *o = s;
            }
        }
    }
    Ok(WeightSequence::new(c))
}

fn check_lengths(a: &WeightSequence, b: &WeightSequence) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConvOptions {
    /// Min-max convolution kernel for covering layers.
    pub backend: ConvBackend,
}

fn conv_kernel(backend: ConvBackend) -> impl FnMut(&[u32], &[u32]) -> Vec<u32> {
    move |ra, rb| match backend {
        ConvBackend::Naive => kernels::conv_dense(ra, rb, TOP, false),
        ConvBackend::SkipInfinite => kernels::conv_dense(ra, rb, TOP, true),
        ConvBackend::Subquadratic => kernels::conv_subquadratic(ra, rb, TOP),
    }
}

/// Folds in `A[i] + B[j]` for every term with a zero operand.
fn zero_terms(a: &[ExpFloat], b: &[ExpFloat], out: &mut [ExpFloat]) {
    let n = out.len();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            for (o, &y) in out[i..].iter_mut().zip(b) {
                *o = (*o).min(y);
            }
        }
    }
    for (j, y) in b.iter().enumerate() {
        if y.is_zero() {
            for (o, &x) in out[j..n].iter_mut().zip(a) {
                *o = (*o).min(x);
            }
        }
    }
}

/// `(1 + eps)`-approximation through one strong covering of all index pairs.
pub fn approx_minconv_simple(a: &WeightSequence, b: &WeightSequence, eps: Eps) -> Result<WeightSequence> {
    approx_minconv_simple_with(a, b, eps, ConvOptions::default())
}

pub fn approx_minconv_simple_with(
    a: &WeightSequence,
    b: &WeightSequence,
    eps: Eps,
    opts: ConvOptions,
) -> Result<WeightSequence> {
    check_lengths(a, b)?;
    let (pa, pb) = (positive_part(a), positive_part(b));
    let plan = covering_plan(&pa, &pb, eps, CoveringMode::Strong)?;
    let oblivious = opts.backend == ConvBackend::Naive;
    let mut out = min_over_layers(&pa, &pb, &plan, a.len(), oblivious, conv_kernel(opts.backend));
    zero_terms(a, b, &mut out);
    Ok(WeightSequence::new(out))
}

/// Upper bound on `C` that is within `1 + eps` wherever an optimal pair has
/// ratio outside `[eps/4, 4/eps]`.
pub fn distant_minconv(a: &WeightSequence, b: &WeightSequence, eps: Eps) -> Result<WeightSequence> {
    distant_minconv_with(a, b, eps, ConvOptions::default())
}

pub fn distant_minconv_with(
    a: &WeightSequence,
    b: &WeightSequence,
    eps: Eps,
    opts: ConvOptions,
) -> Result<WeightSequence> {
    check_lengths(a, b)?;
    let (pa, pb) = (positive_part(a), positive_part(b));
    let e = eps.get();
    let plan = distant_plan(&pa, &pb, e / 4.0, Some(1.0 / (1.0 - e / 2.0)))?;
    let oblivious = opts.backend == ConvBackend::Naive;
    let mut out = min_over_layers(&pa, &pb, &plan, a.len(), oblivious, conv_kernel(opts.backend));
    zero_terms(a, b, &mut out);
    Ok(WeightSequence::new(out))
}

/// `(1 + eps)`-approximation as the entry-wise minimum of the distant and
/// close routines.
pub fn approx_minconv(a: &WeightSequence, b: &WeightSequence, eps: Eps) -> Result<WeightSequence> {
    approx_minconv_with(a, b, eps, ConvOptions::default())
}

pub fn approx_minconv_with(
    a: &WeightSequence,
    b: &WeightSequence,
    eps: Eps,
    opts: ConvOptions,
) -> Result<WeightSequence> {
    let far = distant_minconv_with(a, b, eps, opts)?;
    let near = close_minconv(a, b, eps)?;
    let out = far.iter().zip(near.iter()).map(|(&x, &y)| x.min(y)).collect();
    Ok(WeightSequence::new(out))
}

/// Exact min-max convolution through one approximate min-plus convolution
/// on `r^A` and `r^B`.
pub fn minmax_conv_via_approx(a: &RankSequence, b: &RankSequence, eps: Eps) -> Result<RankSequence> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let top = a.top.max(b.top);
    let l = reduction_log2_base(eps);
    let lift = |s: &RankSequence| -> WeightSequence {
        s.entries.iter().map(|&r| if r >= top { ExpFloat::INFINITY } else { ExpFloat::pow2(r as i64 * l) }).collect::<Vec<_>>().into()
    };
    let c = approx_minconv(&lift(a), &lift(b), eps)?;
    let entries = c.iter().map(|&v| decode_rank(v, l, top)).collect();
    Ok(RankSequence { top, entries })
}
