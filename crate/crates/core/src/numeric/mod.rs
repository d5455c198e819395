//! Extended-exponent weights, geometric bucketing, rank compression and
//! operation counting.

mod expfloat;
mod ops;
mod rank;
mod scale;

pub use expfloat::ExpFloat;
pub(crate) use expfloat::add_uncounted;
pub use ops::OpCounter;
pub(crate) use ops::{count_add, count_cmp, count_mul};
pub use rank::{rank_compress, RankMap};
pub use scale::{bucket_index, ceil_log2_recip, Eps, Geometric};

/// Multiplicative slack allowed on top of every `(1 + eps)` guarantee.
pub const SLACK: f64 = 1.0 / (1u64 << 40) as f64;
