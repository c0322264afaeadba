//! Generators for the compressed normal sequence and its enumeration variant.
//!
//! `w_n` is the concatenation, in lexicographic order, of all `kⁿ` words of
//! length `n`. The paired-lex sequence is `w₁w̃₁w₂w̃₂⋯`, where `w̃` is the
//! reversal. In the enumeration variant, block `n` is `u₁ũ₁u₂ũ₂⋯` for an
//! ordering `u₁, u₂, …` of the words of length `n`.
//!
//! Blocks are produced lazily with `O(n)` working memory, except for shuffled
//! orders which keep the permutation of `kⁿ` word indices.

use alloc::vec::Vec;
use core::iter::Chain;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::symbol::{Alphabet, Symbol};
use crate::Error;

/// Default bound on `|w_n| = n·kⁿ`.
pub const DEFAULT_CAP: u64 = 20_000_000;

/// Order of the words inside an enumeration block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Lex,
    /// A seeded uniform permutation, fixed per `(seed, n)`.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `w₁w̃₁w₂w̃₂⋯`
    PairedLex,
    /// `u₁ũ₁⋯u_ℓũ_ℓ` per block.
    PairedEnumeration(Order),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Horizon {
    /// Blocks `1..=n_max`.
    Blocks(u32),
    /// The first `len` symbols.
    Symbols(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub k: Alphabet,
    pub variant: Variant,
    pub horizon: Horizon,
    pub cap: u64,
}

impl SequenceSpec {
    pub fn paired_lex(k: Alphabet, n_max: u32) -> Self {
        SequenceSpec { k, variant: Variant::PairedLex, horizon: Horizon::Blocks(n_max), cap: DEFAULT_CAP }
    }
}

/// `n·kⁿ`, or `None` on overflow.
pub fn word_length(k: Alphabet, n: u32) -> Option<u128> {
    (k.k() as u128).checked_pow(n)?.checked_mul(n as u128)
}

/// Length of block `n`, `2·n·kⁿ`.
pub fn block_length(k: Alphabet, n: u32) -> Option<u128> {
    word_length(k, n)?.checked_mul(2)
}

fn check(k: Alphabet, n: u32, cap: u64) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Domain("word length n must be at least 1"));
    }
    match word_length(k, n) {
        Some(length) if length <= cap as u128 => Ok(()),
        Some(length) => Err(Error::HorizonExceeded { length, cap }),
        None => Err(Error::HorizonExceeded { length: u128::MAX, cap }),
    }
}

/// Lazy `w_n` (ascending) or `w̃_n` (descending, each word reversed).
#[derive(Clone, Debug)]
pub struct LexWords {
    k: u16,
    digits: Vec<u16>,
    pos: usize,
    descending: bool,
    done: bool,
}

impl LexWords {
    fn new(k: Alphabet, n: u32, descending: bool) -> Self {
        let fill = if descending { k.k() - 1 } else { 0 };
        LexWords {
            k: k.k(),
            digits: alloc::vec![fill; n as usize],
            pos: 0,
            descending,
            done: false,
        }
    }

    fn advance_word(&mut self) {
        let (from, to) = if self.descending { (0, self.k - 1) } else { (self.k - 1, 0) };
        for d in self.digits.iter_mut().rev() {
            if *d == from {
                *d = to;
            } else {
                if self.descending {
                    *d -= 1;
                } else {
                    *d += 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for LexWords {
    type Item = Symbol;

    #[inline]
    fn next(&mut self) -> Option<Symbol> {
        if self.done {
            return None;
        }
        let n = self.digits.len();
        let i = if self.descending { n - 1 - self.pos } else { self.pos };
        let s = Symbol(self.digits[i]);
        self.pos += 1;
        if self.pos == n {
            self.pos = 0;
            self.advance_word();
        }
        Some(s)
    }
}

/// `w_n` as a lazy stream.
pub fn lex_words(k: Alphabet, n: u32, cap: u64) -> Result<LexWords, Error> {
    check(k, n, cap)?;
    Ok(LexWords::new(k, n, false))
}

/// `w_n`, materialised.
pub fn word_wn(k: Alphabet, n: u32) -> Result<Vec<Symbol>, Error> {
    Ok(lex_words(k, n, DEFAULT_CAP)?.collect())
}

/// `w_n · reverse(w_n)`, materialised.
pub fn paired_block(k: Alphabet, n: u32) -> Result<Vec<Symbol>, Error> {
    Ok(block(k, Variant::PairedLex, n, DEFAULT_CAP)?.collect())
}

/// Block `n` of the enumeration variant, `u₁ũ₁⋯`.
#[derive(Clone, Debug)]
pub struct EnumeratedBlock {
    k: u64,
    order: Option<Vec<u64>>,
    next_index: u64,
    count: u64,
    word: Vec<u16>,
    pos: usize,
}

impl EnumeratedBlock {
    fn new(k: Alphabet, n: u32, order: Order) -> Self {
        let count = (k.k() as u64).pow(n);
        let order = match order {
            Order::Lex => None,
            Order::Shuffled(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(n as u64);
                let mut idx: Vec<u64> = (0..count).collect();
                idx.shuffle(&mut rng);
                Some(idx)
            }
        };
        EnumeratedBlock {
            k: k.k() as u64,
            order,
            next_index: 0,
            count,
            word: alloc::vec![0; n as usize],
            pos: 2 * n as usize,
        }
    }

    fn load(&mut self, mut index: u64) {
        for d in self.word.iter_mut().rev() {
            *d = (index % self.k) as u16;
            index /= self.k;
        }
    }
}

impl Iterator for EnumeratedBlock {
    type Item = Symbol;

    #[inline]
    fn next(&mut self) -> Option<Symbol> {
        let n = self.word.len();
        if self.pos == 2 * n {
            if self.next_index == self.count {
                return None;
            }
            let i = self.next_index as usize;
            let index = self.order.as_ref().map_or(self.next_index, |o| o[i]);
            self.load(index);
            self.next_index += 1;
            self.pos = 0;
        }
        let i = if self.pos < n { self.pos } else { 2 * n - 1 - self.pos };
        self.pos += 1;
        Some(Symbol(self.word[i]))
    }
}

/// One block of a sequence, as a lazy stream.
#[derive(Clone, Debug)]
pub enum Block {
    Lex(Chain<LexWords, LexWords>),
    Enumerated(EnumeratedBlock),
}

impl Iterator for Block {
    type Item = Symbol;

    #[inline]
    fn next(&mut self) -> Option<Symbol> {
        match self {
            Block::Lex(it) => it.next(),
            Block::Enumerated(it) => it.next(),
        }
    }
}

/// Block `n` of `variant`.
pub fn block(k: Alphabet, variant: Variant, n: u32, cap: u64) -> Result<Block, Error> {
    check(k, n, cap)?;
    Ok(match variant {
        Variant::PairedLex => Block::Lex(LexWords::new(k, n, false).chain(LexWords::new(k, n, true))),
        Variant::PairedEnumeration(order) => Block::Enumerated(EnumeratedBlock::new(k, n, order)),
    })
}

/// Last block index needed to cover `spec.horizon`.
pub fn last_block(spec: &SequenceSpec) -> Result<u32, Error> {
    match spec.horizon {
        Horizon::Blocks(n_max) => Ok(n_max),
        Horizon::Symbols(len) => {
            let mut total: u128 = 0;
            let mut n = 0;
            while total < len as u128 {
                n += 1;
                check(spec.k, n, spec.cap)?;
                total += block_length(spec.k, n).expect("checked above");
            }
            Ok(n)
        }
    }
}

/// Largest `n` with `n·kⁿ ≤ cap`, or 0 if there is none.
pub fn max_block(k: Alphabet, cap: u64) -> u32 {
    (1..).take_while(|&n| word_length(k, n).is_some_and(|l| l <= cap as u128)).last().unwrap_or(0)
}

/// Total number of symbols in blocks `1..=n_max`.
pub fn prefix_length(k: Alphabet, n_max: u32) -> Option<u128> {
    (1..=n_max).try_fold(0u128, |acc, n| acc.checked_add(block_length(k, n)?))
}

/// The blocks of `spec`, each tagged with its index.
pub fn blocks(spec: &SequenceSpec) -> Result<impl Iterator<Item = (u32, Block)>, Error> {
    let last = last_block(spec)?;
    for n in 1..=last {
        check(spec.k, n, spec.cap)?;
    }
    let SequenceSpec { k, variant, cap, .. } = *spec;
    Ok((1..=last).map(move |n| (n, block(k, variant, n, cap).expect("checked above"))))
}

/// The sequence described by `spec`, symbol by symbol.
pub fn sequence_prefix(spec: &SequenceSpec) -> Result<impl Iterator<Item = Symbol>, Error> {
    let take = match spec.horizon {
        Horizon::Blocks(_) => usize::MAX,
        Horizon::Symbols(len) => usize::try_from(len).unwrap_or(usize::MAX),
    };
    Ok(blocks(spec)?.flat_map(|(_, b)| b).take(take))
}

/// Occurrences of `pattern` in the circular word `word`.
///
/// Counts the positions `i` of `word` such that `pattern` reads off starting
/// at `i` and wrapping around the end.
pub fn cyclic_occurrences(word: &[Symbol], pattern: &[Symbol]) -> usize {
    let len = word.len();
    if pattern.len() > len {
        return 0;
    }
    (0..len)
        .filter(|&i| pattern.iter().enumerate().all(|(j, &p)| word[(i + j) % len] == p))
        .count()
}

/// Cyclic occurrence counts of every word of length `len`, indexed by the
/// word read as a base-`k` number (first symbol most significant).
pub fn cyclic_census(word: &[Symbol], k: Alphabet, len: u32) -> Result<Vec<u64>, Error> {
    k.check_word(word)?;
    let base = k.k() as u64;
    let size = base
        .checked_pow(len)
        .filter(|&s| s <= 1 << 28)
        .ok_or(Error::Domain("census table too large"))?;
    let mut counts = alloc::vec![0u64; size as usize];
    if len == 0 {
        counts[0] = word.len() as u64;
        return Ok(counts);
    }
    if len as usize > word.len() {
        return Ok(counts);
    }
    let l = len as usize;
    let mut index = 0u64;
    for &s in word.iter().take(l) {
        index = index * base + s.0 as u64;
    }
    let high = size / base;
    let wrapped = word.iter().skip(l).chain(word.iter().take(l));
    for (outgoing, incoming) in word.iter().zip(wrapped) {
        counts[index as usize] += 1;
        index = (index - outgoing.0 as u64 * high) * base + incoming.0 as u64;
    }
    Ok(counts)
}
