//! Min-plus all-pairs shortest paths with a sorted early-termination kernel.
//!
//! The core routines are generic over the weight type ([`Weight`], implemented
//! for `f32` and `f64`); the `*64` aliases below fix it to `f64`, which is what
//! the command-line tools use.

pub mod analysis;
pub mod apsp;
pub mod error;
pub mod generators;
pub mod io;
pub mod kernel;
pub mod matrix;
pub mod scalar;

pub use analysis::{
    exact_expected_M, expected_upper_bound, monte_carlo_M, sampling_tail_no_replacement,
    sampling_tail_with_replacement, tail_probability, MonteCarloEstimate, ProbabilityCurve,
};
pub use apsp::{
    apsp_oracle, apsp_squaring, floyd_warshall, funny_product_fast, funny_product_naive, DistanceMatrix,
    Graph, Kernel, ProductStats,
};
pub use error::{Error, Result};
pub use kernel::{minplus_select, naive_select, select, sort_index, KernelResult, SortedIndex, SortedList};
pub use matrix::WeightMatrix;
pub use scalar::Weight;

pub type WeightMatrix64 = WeightMatrix<f64>;
pub type Graph64 = Graph<f64>;
pub type DistanceMatrix64 = DistanceMatrix<f64>;
pub type KernelResult64 = KernelResult<f64>;

pub type WeightMatrix32 = WeightMatrix<f32>;
pub type Graph32 = Graph<f32>;
pub type DistanceMatrix32 = DistanceMatrix<f32>;
pub type KernelResult32 = KernelResult<f32>;
