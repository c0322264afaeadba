use alloc::vec::Vec;

use super::blocks::{expected_h, BlockCounter};
use super::edges::PopRunCounter;
use crate::codec::{CodecParams, Compressor, PENDING_POP};
use crate::seqgen::{blocks, Horizon, SequenceSpec, Variant};
use crate::symbol::{Alphabet, Symbol};
use crate::Error;

/// Checkpoints from this block on count towards the reported minimum.
pub const BURN_IN: u32 = 3;

/// Normalised compression ratio `written·ln(k+2) / (read·ln k)`.
pub fn rho(k: Alphabet, read: u64, written: u64) -> f64 {
    let k = k.k() as f64;
    (written as f64 * libm::log(k + 2.0)) / (read as f64 * libm::log(k))
}

/// Ratio at a block boundary of the streaming run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioPoint {
    /// Index of the block just completed.
    pub block: u32,
    pub n_read: u64,
    pub m_written: u64,
    pub rho: f64,
}

/// Per-block quantities of a segment read in isolation (with flush).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockReport {
    pub block: u32,
    pub len: u64,
    pub out_len: u64,
    pub h_observed: u64,
    /// Only defined for the paired-lex variant with `n ≥ 3`.
    pub h_expected: Option<u128>,
    /// `len − out_len`.
    pub d: i64,
    /// Pops in maximal pop runs of length at least two.
    pub long_pops: u64,
}

impl BlockReport {
    /// `d ≥ h/6`, compared in integers.
    pub fn bound_ok(&self) -> bool {
        6 * self.d >= self.h_observed as i64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioSeries {
    pub k: Alphabet,
    pub variant: Variant,
    pub points: Vec<RatioPoint>,
    pub blocks: Vec<BlockReport>,
}

impl RatioSeries {
    /// Ratio at the last checkpoint, the asymptotic estimate.
    pub fn final_rho(&self) -> Option<f64> {
        self.points.last().map(|p| p.rho)
    }

    /// Smallest ratio over checkpoints from [`BURN_IN`] on.
    pub fn min_rho_after_burn_in(&self) -> Option<f64> {
        self.points
            .iter()
            .filter(|p| p.block >= BURN_IN)
            .map(|p| p.rho)
            .reduce(f64::min)
    }
}

/// Compresses a single segment from an empty stack and accounts for it.
pub fn analyze_segment(k: Alphabet, block: u32, segment: &[Symbol]) -> Result<BlockReport, Error> {
    let c = Compressor::new(CodecParams::new(k));
    let mut s = c.session();
    let mut out = Vec::new();
    let mut blocks = BlockCounter::new();
    let mut pops = PopRunCounter::default();
    for &a in segment {
        blocks.push(a);
        pops.observe(s.feed(a, &mut out)?.kind);
        out.clear();
    }
    pops.close();
    s.finish(&mut out);
    let len = segment.len() as u64;
    let out_len = s.written() as u64;
    Ok(BlockReport {
        block,
        len,
        out_len,
        h_observed: blocks.finish().h as u64,
        h_expected: None,
        d: len as i64 - out_len as i64,
        long_pops: pops.long_pops,
    })
}

/// Runs the compressor once over blocks `1..=n_max` of the sequence.
///
/// A checkpoint is taken after every block, where the stack is back to `⊥`.
/// Alongside, each block is accounted as if read on its own: a pending `σ₁`
/// at a boundary belongs to the block before it.
pub fn ratio_series(k: Alphabet, variant: Variant, n_max: u32, cap: u64) -> Result<RatioSeries, Error> {
    let spec = SequenceSpec { k, variant, horizon: Horizon::Blocks(n_max), cap };
    let compressor = Compressor::new(CodecParams::new(k).without_flush());
    let mut session = compressor.session();
    // The streaming run never needs its output, only the count.
    let mut sink = Vec::with_capacity(4);
    let mut series = RatioSeries { k, variant, points: Vec::new(), blocks: Vec::new() };
    let mut prev_written = 0u64;
    let mut prev_pending = false;

    for (n, block) in blocks(&spec)? {
        let start = session.read() as u64;
        let mut counter = BlockCounter::new();
        let mut pops = PopRunCounter::default();
        for a in block {
            counter.push(a);
            pops.observe(session.feed(a, &mut sink)?.kind);
            sink.clear();
        }
        pops.close();
        debug_assert_eq!(session.config().depth(), 1, "paired blocks drain the stack");

        let read = session.read() as u64;
        let written = session.written() as u64;
        let pending = session.config().state == PENDING_POP;
        let len = read - start;
        let out_len = written - prev_written - prev_pending as u64 + pending as u64;
        let h_expected = match variant {
            Variant::PairedLex if n >= 3 => Some(expected_h(k, n)?),
            _ => None,
        };
        series.blocks.push(BlockReport {
            block: n,
            len,
            out_len,
            h_observed: counter.finish().h as u64,
            h_expected,
            d: len as i64 - out_len as i64,
            long_pops: pops.long_pops,
        });
        series.points.push(RatioPoint {
            block: n,
            n_read: read,
            m_written: written,
            rho: rho(k, read, written),
        });
        prev_written = written;
        prev_pending = pending;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::compress;
    use crate::seqgen::{block, paired_block, sequence_prefix, DEFAULT_CAP};

    fn k(n: u32) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    #[test]
    fn streaming_blocks_match_isolated_runs() {
        for (kk, n_max) in [(2, 5), (3, 4), (5, 3)] {
            let s = ratio_series(k(kk), Variant::PairedLex, n_max, DEFAULT_CAP).unwrap();
            for r in &s.blocks {
                let seg = paired_block(k(kk), r.block).unwrap();
                let iso = analyze_segment(k(kk), r.block, &seg).unwrap();
                assert_eq!(
                    (r.len, r.out_len, r.h_observed, r.d, r.long_pops),
                    (iso.len, iso.out_len, iso.h_observed, iso.d, iso.long_pops),
                    "k={kk} n={}",
                    r.block
                );
            }
        }
    }

    #[test]
    fn checkpoints_match_direct_compression() {
        let kk = k(2);
        let s = ratio_series(kk, Variant::PairedLex, 3, DEFAULT_CAP).unwrap();
        let mut prefix = Vec::new();
        for p in &s.points {
            prefix.extend(block(kk, Variant::PairedLex, p.block, DEFAULT_CAP).unwrap());
            let out = compress(&prefix, CodecParams::new(kk).without_flush()).unwrap();
            assert_eq!(p.n_read as usize, prefix.len());
            assert_eq!(p.m_written as usize, out.len());
            let want = out.len() as f64 * 4f64.ln() / (prefix.len() as f64 * 2f64.ln());
            assert!((p.rho - want).abs() < 1e-12);
        }
        let all: Vec<_> = sequence_prefix(&SequenceSpec::paired_lex(kk, 3)).unwrap().collect();
        assert_eq!(all, prefix);
    }

    #[test]
    fn burn_in_minimum() {
        let s = ratio_series(k(3), Variant::PairedLex, 5, DEFAULT_CAP).unwrap();
        let m = s.min_rho_after_burn_in().unwrap();
        assert!(s.points[2..].iter().all(|p| p.rho >= m));
        assert_eq!(s.final_rho(), Some(s.points[4].rho));
        assert_eq!(s.blocks[2].h_expected, Some(expected_h(k(3), 3).unwrap()));
        assert_eq!(s.blocks[1].h_expected, None);
    }
}
