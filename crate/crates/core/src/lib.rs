//! Strongly polynomial `(1 + eps)`-approximations for (min,+) problems.
//!
//! The central tool is a sum-to-max covering: a short list of vector pairs
//! whose layer-wise maximum sandwiches every pairwise sum. It reduces
//! approximate min-plus products and convolutions to exact min-max ones,
//! with an operation count independent of the weight magnitude.

pub mod apsp;
pub mod characteristics;
pub mod conv;
pub mod covering;
pub mod error;
pub mod generate;
pub mod io;
pub mod kernels;
mod layered;
pub mod numeric;
pub mod product;
pub mod weights;

pub use error::{Error, Result};
pub use numeric::{Eps, ExpFloat, OpCounter};
pub use weights::{WeightMatrix, WeightSequence};
