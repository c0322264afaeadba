//! Deletion of adjacent equal pairs, `uaav → uv`.
//!
//! Every rewrite shortens the word by two, so reductions terminate, and two
//! overlapping or disjoint redexes always rejoin, so every word has a unique
//! irreducible normal form. Two words are equivalent when their normal forms
//! agree; the equivalence is a congruence for concatenation and every even
//! palindrome `w·reverse(w)` is equivalent to the empty word.
//!
//! Positions are 0-based: a redex at `i` is the pair `word[i] == word[i + 1]`.

use alloc::vec::Vec;

use crate::symbol::Symbol;
use crate::Error;

/// True when no two adjacent symbols are equal.
pub fn is_irreducible(word: &[Symbol]) -> bool {
    word.windows(2).all(|p| p[0] != p[1])
}

/// Positions of all redexes, left to right.
pub fn redexes(word: &[Symbol]) -> impl Iterator<Item = usize> + '_ {
    word.windows(2).enumerate().filter(|(_, p)| p[0] == p[1]).map(|(i, _)| i)
}

/// Deletes the pair at `position` and `position + 1`.
pub fn reduce_once(word: &[Symbol], position: usize) -> Result<Vec<Symbol>, Error> {
    match word.get(position..position + 2) {
        Some([a, b]) if a == b => {
            let mut out = Vec::with_capacity(word.len() - 2);
            out.extend_from_slice(&word[..position]);
            out.extend_from_slice(&word[position + 2..]);
            Ok(out)
        }
        _ => Err(Error::NotARedex { position }),
    }
}

/// The unique irreducible word reachable from `word`.
///
/// One left-to-right pass with a stack: a symbol equal to the top cancels it,
/// anything else is pushed.
pub fn normal_form(word: &[Symbol]) -> Vec<Symbol> {
    let mut stack = Vec::with_capacity(word.len());
    for &a in word {
        if stack.last() == Some(&a) {
            stack.pop();
        } else {
            stack.push(a);
        }
    }
    stack
}

/// `u ∼ v`.
pub fn equivalent(u: &[Symbol], v: &[Symbol]) -> bool {
    normal_form(u) == normal_form(v)
}
