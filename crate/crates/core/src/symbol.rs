//! Tape and stack symbols.
//!
//! Tape symbols are 16-bit codes. Over an input alphabet of size `k` the
//! ordinary digits are `0..k`, and the two output markers sit directly above
//! them: [`Symbol::odd_pop`] has code `k` and [`Symbol::pair_pop`] has code
//! `k + 1`. The bottom-of-stack marker is not a tape symbol at all, it only
//! exists as [`StackSymbol::Bottom`].

use core::fmt;

use crate::Error;

/// Largest supported input alphabet; keeps `k + 1` inside a `u16`.
pub const MAX_K: u16 = u16::MAX - 1;

/// Smallest supported input alphabet.
pub const MIN_K: u16 = 2;

/// A tape symbol, identified by its code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    #[inline]
    pub const fn code(self) -> u16 {
        self.0
    }

    /// Marker for a pop run of odd length (code `k`).
    #[inline]
    pub const fn odd_pop(k: Alphabet) -> Symbol {
        Symbol(k.0)
    }

    /// Marker for two consecutive pops (code `k + 1`).
    #[inline]
    pub const fn pair_pop(k: Alphabet) -> Symbol {
        Symbol(k.0 + 1)
    }
}

impl From<u16> for Symbol {
    fn from(code: u16) -> Self {
        Symbol(code)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated input alphabet size `k`, with `MIN_K <= k <= MAX_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(u16);

impl Alphabet {
    pub fn new(k: u32) -> Result<Self, Error> {
        if (MIN_K as u32..=MAX_K as u32).contains(&k) {
            Ok(Alphabet(k as u16))
        } else {
            Err(Error::AlphabetSize(k))
        }
    }

    #[inline]
    pub const fn k(self) -> u16 {
        self.0
    }

    /// Size of the output alphabet `A ⊎ {σ₁, σ₂}`.
    #[inline]
    pub const fn output_size(self) -> u32 {
        self.0 as u32 + 2
    }

    #[inline]
    pub const fn contains(self, s: Symbol) -> bool {
        s.0 < self.0
    }

    #[inline]
    pub const fn contains_output(self, s: Symbol) -> bool {
        (s.0 as u32) < self.output_size()
    }

    pub fn symbols(self) -> impl DoubleEndedIterator<Item = Symbol> + Clone {
        (0..self.0).map(Symbol)
    }

    /// First symbol of `word` outside the input alphabet, with its index.
    pub fn check_word(self, word: &[Symbol]) -> Result<(), Error> {
        match word.iter().position(|&s| !self.contains(s)) {
            None => Ok(()),
            Some(position) => Err(Error::SymbolOutOfAlphabet {
                position,
                code: word[position].0,
                k: self.0,
            }),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A symbol that can sit on the stack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StackSymbol {
    /// `⊥`, the start symbol marking the bottom.
    Bottom,
    Tape(Symbol),
}

impl StackSymbol {
    #[inline]
    pub const fn tape(self) -> Option<Symbol> {
        match self {
            StackSymbol::Bottom => None,
            StackSymbol::Tape(s) => Some(s),
        }
    }
}

impl From<Symbol> for StackSymbol {
    fn from(s: Symbol) -> Self {
        StackSymbol::Tape(s)
    }
}

impl fmt::Display for StackSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackSymbol::Bottom => f.write_str("⊥"),
            StackSymbol::Tape(s) => write!(f, "{s}"),
        }
    }
}

/// Builds a word from raw codes. Mostly useful in tests and examples.
pub fn word(codes: &[u16]) -> alloc::vec::Vec<Symbol> {
    codes.iter().copied().map(Symbol).collect()
}
