use alloc::vec::Vec;

use crate::symbol::{Alphabet, Symbol};
use crate::Error;

/// Overlapping-occurrence statistics for all words of one length.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthStats {
    pub len: u32,
    /// Number of windows of this length in the prefix.
    pub windows: u64,
    /// Indexed by the word read in base `k`, first symbol most significant.
    pub counts: Vec<u64>,
    /// `max |count/windows − k^(−len)|`.
    pub max_deviation: f64,
}

impl LengthStats {
    pub fn frequency(&self, index: usize) -> f64 {
        if self.windows == 0 {
            0.0
        } else {
            self.counts[index] as f64 / self.windows as f64
        }
    }
}

/// Empirical word frequencies of a finite prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalityReport {
    pub k: Alphabet,
    pub prefix_len: u64,
    pub lengths: Vec<LengthStats>,
    pub max_deviation: f64,
}

/// Counts every word of length `1..=l_max` in `prefix`, overlaps included.
///
/// Frequencies are taken over the `len − ℓ + 1` windows of each length `ℓ`,
/// so they sum to one.
pub fn normality_deviation<I>(prefix: I, k: Alphabet, l_max: u32) -> Result<NormalityReport, Error>
where
    I: IntoIterator<Item = Symbol>,
{
    let base = k.k() as u64;
    let table = base
        .checked_pow(l_max)
        .filter(|&t| t <= 1 << 26)
        .ok_or(Error::Domain("frequency table too large"))?;
    let mut lengths: Vec<LengthStats> = (1..=l_max)
        .map(|len| LengthStats {
            len,
            windows: 0,
            counts: alloc::vec![0; base.pow(len) as usize],
            max_deviation: 0.0,
        })
        .collect();
    // Rolling index of the last ℓ symbols, per ℓ.
    let mut rolling = alloc::vec![0u64; l_max as usize];
    let mut seen: u64 = 0;
    for (position, s) in prefix.into_iter().enumerate() {
        if !k.contains(s) {
            return Err(Error::SymbolOutOfAlphabet { position, code: s.0, k: k.k() });
        }
        seen += 1;
        for (l, stats) in lengths.iter_mut().enumerate() {
            let modulus = base.pow(l as u32);
            rolling[l] = (rolling[l] % modulus) * base + s.0 as u64;
            if seen > l as u64 {
                stats.counts[rolling[l] as usize] += 1;
                stats.windows += 1;
            }
        }
    }
    if seen < table {
        return Err(Error::Domain("prefix shorter than k^l_max"));
    }
    let mut overall: f64 = 0.0;
    for stats in &mut lengths {
        let expected = 1.0 / base.pow(stats.len) as f64;
        stats.max_deviation = (0..stats.counts.len())
            .map(|i| libm::fabs(stats.frequency(i) - expected))
            .fold(0.0, f64::max);
        overall = overall.max(stats.max_deviation);
    }
    Ok(NormalityReport { k, prefix_len: seen, lengths, max_deviation: overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::word;
    use alloc::vec;

    #[test]
    fn small_prefix() {
        let k = Alphabet::new(2).unwrap();
        let r = normality_deviation(word(&[0, 1, 1, 0]), k, 2).unwrap();
        assert_eq!(r.lengths[0].counts, vec![2, 2]);
        assert_eq!(r.lengths[0].max_deviation, 0.0);
        // 00, 01, 10, 11
        assert_eq!(r.lengths[1].counts, vec![0, 1, 1, 1]);
        assert_eq!(r.lengths[1].windows, 3);
        assert!((r.lengths[1].max_deviation - 0.25).abs() < 1e-12);
        assert!((r.max_deviation - 0.25).abs() < 1e-12);
    }

    #[test]
    fn frequencies_sum_to_one() {
        let k = Alphabet::new(3).unwrap();
        let w = word(&[0, 2, 1, 1, 0, 2, 2, 2, 1, 0, 0, 1]);
        let r = normality_deviation(w.iter().copied(), k, 2).unwrap();
        for stats in &r.lengths {
            let total: f64 = (0..stats.counts.len()).map(|i| stats.frequency(i)).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn short_prefix_rejected() {
        let k = Alphabet::new(3).unwrap();
        assert!(normality_deviation(word(&[0, 1]), k, 1).is_err());
    }
}
