//! Exact (min,max) product and convolution on integer ranks.

mod conv;
pub mod ntt;
mod product;

pub use conv::{minmax_convolution, ConvBackend, RankSequence};
pub(crate) use conv::{dense as conv_dense, subquadratic as conv_subquadratic};
pub use product::{minmax_product, MinMaxBackend, RankMatrix};
pub(crate) use product::dense as product_dense;
