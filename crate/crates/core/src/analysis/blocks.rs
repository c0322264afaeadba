use alloc::collections::BTreeMap;

use crate::symbol::{Alphabet, Symbol};
use crate::Error;

/// Maximal runs of equal adjacent symbols in a word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockStats {
    pub total: usize,
    /// Block length → number of blocks of that length.
    pub histogram: BTreeMap<usize, usize>,
    /// Number of blocks of length 1.
    pub h: usize,
}

impl BlockStats {
    /// Total length covered, `Σ length × count`.
    pub fn covered(&self) -> usize {
        self.histogram.iter().map(|(len, count)| len * count).sum()
    }
}

/// Streaming block counter.
#[derive(Clone, Debug, Default)]
pub struct BlockCounter {
    stats: BlockStats,
    last: Option<Symbol>,
    run: usize,
}

impl BlockCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, s: Symbol) {
        if self.last == Some(s) {
            self.run += 1;
        } else {
            self.close();
            self.last = Some(s);
            self.run = 1;
        }
    }

    fn close(&mut self) {
        if self.run > 0 {
            self.stats.total += 1;
            *self.stats.histogram.entry(self.run).or_default() += 1;
            if self.run == 1 {
                self.stats.h += 1;
            }
        }
        self.run = 0;
    }

    pub fn finish(mut self) -> BlockStats {
        self.close();
        self.stats
    }
}

pub fn block_stats(word: &[Symbol]) -> BlockStats {
    let mut c = BlockCounter::new();
    word.iter().for_each(|&s| c.push(s));
    c.finish()
}

/// Number of length-1 blocks in `w_n·w̃_n`, `(k−1)²·2n·k^(n−2)`, for `n ≥ 3`.
pub fn expected_h(k: Alphabet, n: u32) -> Result<u128, Error> {
    if n < 3 {
        return Err(Error::Domain("the singleton-block count is exact only for n >= 3"));
    }
    let k = k.k() as u128;
    (k - 1)
        .checked_pow(2)
        .and_then(|a| a.checked_mul(2 * n as u128))
        .and_then(|a| a.checked_mul(k.checked_pow(n - 2)?))
        .ok_or(Error::Domain("singleton-block count overflows u128"))
}
