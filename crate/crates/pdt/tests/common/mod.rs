//! Reference implementations written without the library, for cross-checking.

use std::collections::BTreeSet;

use rand::Rng;

/// `w_n`: every length-`n` word over `0..k` in lexicographic order, by counting in base `k`.
pub fn lex_word(k: u16, n: u32) -> Vec<u16> {
    let count = (k as u64).pow(n);
    let mut out = Vec::with_capacity((count * n as u64) as usize);
    let mut digits = vec![0u16; n as usize];
    for idx in 0..count {
        let mut x = idx;
        for d in digits.iter_mut().rev() {
            *d = (x % k as u64) as u16;
            x /= k as u64;
        }
        out.extend_from_slice(&digits);
    }
    out
}

pub fn paired(w: &[u16]) -> Vec<u16> {
    w.iter().chain(w.iter().rev()).copied().collect()
}

/// Deletes non-overlapping equal pairs left to right, pass after pass, until none remain.
pub fn naive_normal_form(w: &[u16]) -> Vec<u16> {
    let mut cur = w.to_vec();
    loop {
        let mut next = Vec::with_capacity(cur.len());
        let mut i = 0;
        while i < cur.len() {
            if i + 1 < cur.len() && cur[i] == cur[i + 1] {
                i += 2;
            } else {
                next.push(cur[i]);
                i += 1;
            }
        }
        if next.len() == cur.len() {
            return next;
        }
        cur = next;
    }
}

/// Every word reachable from `w` by deleting one adjacent equal pair.
pub fn one_step(w: &[u16]) -> Vec<Vec<u16>> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] == w[i + 1])
        .map(|i| [&w[..i], &w[i + 2..]].concat())
        .collect()
}

pub fn descendants(w: &[u16]) -> BTreeSet<Vec<u16>> {
    let mut seen = BTreeSet::new();
    let mut todo = vec![w.to_vec()];
    while let Some(x) = todo.pop() {
        if seen.insert(x.clone()) {
            todo.extend(one_step(&x));
        }
    }
    seen
}

/// Reduces by deleting a uniformly chosen redex until none is left.
pub fn random_order_normal_form<R: Rng>(w: &[u16], rng: &mut R) -> Vec<u16> {
    let mut cur = w.to_vec();
    loop {
        let redexes: Vec<usize> = (0..cur.len().saturating_sub(1)).filter(|&i| cur[i] == cur[i + 1]).collect();
        if redexes.is_empty() {
            return cur;
        }
        let i = redexes[rng.random_range(0..redexes.len())];
        cur.drain(i..i + 2);
    }
}

/// Direct simulation of the compressor, one symbol at a time.
pub struct RefCompressor {
    odd: u16,
    pair: u16,
    pub stack: Vec<u16>,
    pending: bool,
    pub read: u64,
    pub written: u64,
}

impl RefCompressor {
    pub fn new(k: u16) -> Self {
        RefCompressor { odd: k, pair: k + 1, stack: Vec::new(), pending: false, read: 0, written: 0 }
    }

    /// Appends the emitted symbols to `out` and reports whether `a` was popped.
    pub fn feed(&mut self, a: u16, out: &mut Vec<u16>) -> bool {
        let before = out.len();
        let top_matches = self.stack.last() == Some(&a);
        let popped = match (self.pending, top_matches) {
            (false, false) => {
                self.stack.push(a);
                out.push(a);
                false
            }
            (false, true) => {
                self.stack.pop();
                self.pending = true;
                true
            }
            (true, true) => {
                self.stack.pop();
                out.push(self.pair);
                self.pending = false;
                true
            }
            (true, false) => {
                self.stack.push(a);
                out.extend([self.odd, a]);
                self.pending = false;
                false
            }
        };
        self.read += 1;
        self.written += (out.len() - before) as u64;
        popped
    }

    pub fn flush(&mut self, out: &mut Vec<u16>) {
        if self.pending {
            out.push(self.odd);
            self.written += 1;
            self.pending = false;
        }
    }
}

pub struct Reference {
    pub output: Vec<u16>,
    /// One entry per input symbol: `true` for a pop.
    pub pops: Vec<bool>,
}

pub fn reference_compress(k: u16, w: &[u16], flush: bool) -> Reference {
    let mut c = RefCompressor::new(k);
    let mut output = Vec::new();
    let pops = w.iter().map(|&a| c.feed(a, &mut output)).collect();
    if flush {
        c.flush(&mut output);
    }
    Reference { output, pops }
}

/// Pops lying in maximal runs of at least two consecutive pops.
pub fn long_pops(pops: &[bool]) -> u64 {
    let mut total = 0;
    let mut run = 0u64;
    for &p in pops.iter().chain([false].iter()) {
        if p {
            run += 1;
        } else {
            if run >= 2 {
                total += run;
            }
            run = 0;
        }
    }
    total
}

/// Maximal runs of equal symbols that have length one.
pub fn singleton_blocks(w: &[u16]) -> u64 {
    let mut h = 0;
    let mut i = 0;
    while i < w.len() {
        let mut j = i + 1;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        if j - i == 1 {
            h += 1;
        }
        i = j;
    }
    h
}

/// Number of cyclic occurrences of every word, indexed by its base-`k` value.
pub fn cyclic_counts(w: &[u16], k: u16, n: u32) -> Vec<u64> {
    let mut counts = vec![0u64; (k as usize).pow(n)];
    let len = w.len();
    for i in 0..len {
        let idx = (0..n as usize).fold(0usize, |acc, j| acc * k as usize + w[(i + j) % len] as usize);
        counts[idx] += 1;
    }
    counts
}

/// Little-endian base-2³² natural number, just enough for comparing powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nat(Vec<u32>);

impl Nat {
    pub fn pow(base: u32, exp: u32) -> Nat {
        let mut limbs = vec![1u32];
        for _ in 0..exp {
            let mut carry = 0u64;
            for limb in limbs.iter_mut() {
                let v = *limb as u64 * base as u64 + carry;
                *limb = v as u32;
                carry = v >> 32;
            }
            if carry > 0 {
                limbs.push(carry as u32);
            }
        }
        Nat(limbs)
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(1 − (k−1)²/(6k²))·ln(k+2)/ln k < 1`, decided on `(k+2)^a < k^b`.
pub fn bound_below_one(k: u32) -> bool {
    let kk = k as u64;
    let b = 6 * kk * kk;
    let a = b - (kk - 1) * (kk - 1);
    let g = gcd(a, b);
    Nat::pow(k + 2, (a / g) as u32) < Nat::pow(k, (b / g) as u32)
}
