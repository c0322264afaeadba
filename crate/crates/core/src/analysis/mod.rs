//! Combinatorics and measurements around the compressor.
//!
//! All per-segment quantities are taken on a paired block `w_n·w̃_n` read in
//! isolation from an empty stack, with the codec's flush applied at the end.

mod blocks;
mod bound;
mod edges;
mod normality;
mod ratio;

pub use blocks::{block_stats, expected_h, BlockCounter, BlockStats};
pub use bound::{ratio_bound, ratio_bound_factor, sufficiency_exact, sufficiency_exponents, MAX_EXACT_K};
pub use edges::{edge_set, pop_run_account, EdgeSet, PopRunAccount, PopRunCounter};
pub use normality::{normality_deviation, LengthStats, NormalityReport};
pub use ratio::{analyze_segment, ratio_series, rho, BlockReport, RatioPoint, RatioSeries, BURN_IN};
