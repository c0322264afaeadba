//! A deterministic one-to-one pushdown transducer that compresses a normal
//! sequence, together with everything needed to check that it does.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom up:
//!
//! - [`engine`]: a generic deterministic pushdown-transducer runtime. Machines
//!   are described by schematic [`engine::Rule`]s so that large alphabets do
//!   not need their transition tables materialised.
//! - [`codec`]: the compressor `T_k` and its inverse, with a flush convention
//!   that makes the pair a lossless codec on finite words.
//! - [`seqgen`]: generators for `w₁w̃₁w₂w̃₂⋯` and the per-word reversal variant.
//! - [`rewrite`]: deletion of adjacent equal pairs, normal forms, and the
//!   induced congruence.
//! - [`analysis`]: block census, push/pop matching, pop-run accounting,
//!   compression-ratio series, normality estimates and the exact sufficiency
//!   inequality.
//!
//! ```
//! use pdt_core::codec::{self, CodecParams};
//! use pdt_core::{symbol::word, Alphabet};
//!
//! let k = Alphabet::new(2).unwrap();
//! let packed = codec::compress(&word(&[0, 1, 1, 0]), CodecParams::new(k)).unwrap();
//! assert_eq!(packed, word(&[0, 1, 3]));
//! assert_eq!(codec::decompress(&packed, k).unwrap(), word(&[0, 1, 1, 0]));
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod codec;
pub mod engine;
pub mod rewrite;
pub mod seqgen;
pub mod symbol;

pub use symbol::{Alphabet, StackSymbol, Symbol};

use alloc::vec::Vec;

/// Errors raised by the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("alphabet size {0} outside the supported range 2..=65534")]
    AlphabetSize(u32),

    #[error("symbol {code} at position {position} is not in the input alphabet of size {k}")]
    SymbolOutOfAlphabet { position: usize, code: u16, k: u16 },

    #[error("transducer description has {} violation(s)", .0.len())]
    InvalidSpec(Vec<engine::Violation>),

    #[error("no transition from state {state} with top {top} on {input:?} (position {position})")]
    NoTransition {
        position: usize,
        state: u32,
        top: StackSymbol,
        input: Option<Symbol>,
    },

    #[error("stack exhausted at position {position}")]
    EmptyStack { position: usize },

    #[error("more than {limit} consecutive ε-steps at position {position}")]
    EpsilonDivergence { position: usize, limit: usize },

    #[error("malformed compressed stream at position {position}")]
    MalformedStream { position: usize },

    #[error("positions {position} and {} do not hold equal symbols", .position + 1)]
    NotARedex { position: usize },

    #[error("segment leaves {depth} symbol(s) on the stack")]
    UnbalancedSegment { depth: usize },

    #[error("{0}")]
    Domain(&'static str),

    #[error("block length {length} exceeds the horizon cap {cap}")]
    HorizonExceeded { length: u128, cap: u64 },
}
