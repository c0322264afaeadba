//! Property checks run by `pdt verify`.

use pdt_core::analysis::{
    analyze_segment, block_stats, edge_set, expected_h, ratio_bound, sufficiency_exact, MAX_EXACT_K,
};
use pdt_core::codec::{compress, decompress, CodecParams, Compressor};
use pdt_core::rewrite::normal_form;
use pdt_core::seqgen::{block_length, cyclic_census, paired_block, word_length, word_wn};
use pdt_core::{Alphabet, Error, StackSymbol, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Segments longer than this skip the traced edge check.
const EDGE_CHECK_MAX: u128 = 1 << 20;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub n_max: u32,
    /// Random words per `k` for the codec checks.
    pub words: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Largest `|w_n|` a block check may generate.
    pub cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { k_min: 2, k_max: 5, n_max: 4, words: 200, max_len: 2000, seed: 0, cap: 2_000_000 }
    }
}

/// Outcome of one property over all its cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn random_word(rng: &mut ChaCha8Rng, k: u32, max_len: usize) -> Vec<Symbol> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| Symbol(rng.random_range(0..k) as u16)).collect()
}

fn fits(len: Option<u128>, cap: u64) -> bool {
    len.is_some_and(|l| l <= cap as u128)
}

/// Runs every check over `k_min..=k_max`.
pub fn run(cfg: &VerifyConfig) -> Result<Vec<Check>, Error> {
    let alphabets = (cfg.k_min..=cfg.k_max).map(Alphabet::new).collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut round_trip = Check::new("round-trip");
    let mut stack = Check::new("stack-normal-form");
    for &k in &alphabets {
        let kk = k.k() as u32;
        let unflushed = Compressor::new(CodecParams::new(k).without_flush());
        for _ in 0..cfg.words {
            let w = random_word(&mut rng, kk, cfg.max_len);
            let back = decompress(&compress(&w, CodecParams::new(k))?, k)?;
            round_trip.record(back == w, || format!("k={kk} word of length {}", w.len()));

            let r = unflushed.compress_traced(&w)?;
            let want: Vec<StackSymbol> = std::iter::once(StackSymbol::Bottom)
                .chain(normal_form(&w).into_iter().map(StackSymbol::Tape))
                .collect();
            stack.record(r.config.stack == want, || format!("k={kk} word of length {}", w.len()));
        }
    }

    let mut census = Check::new("block-census");
    let mut chain = Check::new("bound-chain");
    let mut edges = Check::new("edge-structure");
    let mut cyclic = Check::new("cyclic-occurrences");
    for &k in &alphabets {
        let kk = k.k();
        for n in 1..=cfg.n_max {
            if !fits(word_length(k, n), cfg.cap) {
                break;
            }
            let w = word_wn(k, n)?;
            let counts = cyclic_census(&w, k, n)?;
            cyclic.record(counts.iter().all(|&c| c == n as u64), || format!("k={kk} n={n}"));

            if n < 3 {
                continue;
            }
            let seg = paired_block(k, n)?;
            let h = block_stats(&seg).h as u128;
            census.record(h == expected_h(k, n)?, || format!("k={kk} n={n}: h={h}"));

            let r = analyze_segment(k, n, &seg)?;
            let (d, big_n, h) = (r.d, r.long_pops as i64, r.h_observed as i64);
            chain.record(3 * d >= big_n && 2 * big_n >= h && 6 * d >= h, || {
                format!("k={kk} n={n}: d={d} N={big_n} h={h}")
            });

            if block_length(k, n).is_some_and(|l| l <= EDGE_CHECK_MAX) {
                let t = Compressor::new(CodecParams::new(k)).compress_traced(&seg)?;
                let ok = edge_set(&t.trace).is_ok_and(|e| e.check(&seg).is_ok());
                edges.record(ok, || format!("k={kk} n={n}"));
            }
        }
    }

    let mut sufficiency = Check::new("sufficiency");
    for &k in &alphabets {
        let kk = k.k() as u32;
        if kk > MAX_EXACT_K {
            break;
        }
        let exact = sufficiency_exact(kk)?;
        let float = ratio_bound(kk) < 1.0;
        sufficiency.record(exact == float, || format!("k={kk}: exact {exact}, float {float}"));
    }

    Ok(vec![round_trip, stack, census, chain, edges, cyclic, sufficiency])
}
