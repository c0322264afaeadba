use alloc::vec::Vec;

use crate::engine::{RunTrace, StepKind};
use crate::symbol::Symbol;
use crate::Error;

/// The matching `f` from push positions to the positions that pop them.
///
/// Positions are 0-based input positions. An edge `(i, f(i))` is short when
/// `f(i) = i + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSet {
    /// Sorted by push position.
    pub edges: Vec<(usize, usize)>,
    pub short: usize,
    pub long: usize,
}

impl EdgeSet {
    /// Checks that `f` is a bijection between the push and pop positions of
    /// `word`, that edges point forward and join equal symbols, and that no
    /// two edges cross: for pushes `i < j`, either `f(j) < f(i)` or `f(i) < j`.
    pub fn check(&self, word: &[Symbol]) -> Result<(), &'static str> {
        const FREE: usize = usize::MAX;
        // The other end of the edge at each position.
        let mut partner = alloc::vec![FREE; word.len()];
        for &(i, j) in &self.edges {
            if i >= j || j >= word.len() {
                return Err("edge does not point forward inside the segment");
            }
            if word[i] != word[j] {
                return Err("edge joins different symbols");
            }
            if partner[i] != FREE || partner[j] != FREE {
                return Err("position used by two edges");
            }
            partner[i] = j;
            partner[j] = i;
        }
        let mut open = Vec::new();
        for (p, &q) in partner.iter().enumerate() {
            if q == FREE {
                return Err("position not covered by any edge");
            }
            if q > p {
                open.push(p);
            } else if open.pop() != Some(q) {
                return Err("edges cross");
            }
        }
        Ok(())
    }
}

/// Replays a compressor trace with a stack of push positions.
///
/// Fails with [`Error::UnbalancedSegment`] when pushes are left over.
pub fn edge_set(trace: &RunTrace) -> Result<EdgeSet, Error> {
    let mut open = Vec::new();
    let mut set = EdgeSet::default();
    for (position, step) in trace.consuming().enumerate() {
        match step.kind {
            StepKind::Push => open.push(position),
            StepKind::Pop => {
                let i = open.pop().ok_or(Error::Domain("pop without a matching push"))?;
                if position == i + 1 {
                    set.short += 1;
                } else {
                    set.long += 1;
                }
                set.edges.push((i, position));
            }
            StepKind::Replace => return Err(Error::Domain("trace is not from the compressor")),
        }
    }
    if !open.is_empty() {
        return Err(Error::UnbalancedSegment { depth: open.len() });
    }
    set.edges.sort_unstable();
    Ok(set)
}

/// Savings `d` and long-run pops `N` of a segment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PopRunAccount {
    /// Symbols read minus symbols written.
    pub d: i64,
    /// Pops lying in maximal pop runs of length at least two.
    pub long_pops: u64,
    pub pops: u64,
    pub runs: u64,
}

/// Streaming maximal-pop-run counter.
#[derive(Clone, Debug, Default)]
pub struct PopRunCounter {
    current: u64,
    pub long_pops: u64,
    pub pops: u64,
    pub runs: u64,
}

impl PopRunCounter {
    #[inline]
    pub fn observe(&mut self, kind: StepKind) {
        if kind == StepKind::Pop {
            self.current += 1;
            self.pops += 1;
        } else {
            self.close();
        }
    }

    /// Ends the current run, if any.
    pub fn close(&mut self) {
        if self.current > 0 {
            self.runs += 1;
            if self.current >= 2 {
                self.long_pops += self.current;
            }
        }
        self.current = 0;
    }
}

pub fn pop_run_account(trace: &RunTrace) -> PopRunAccount {
    let mut c = PopRunCounter::default();
    trace.consuming().for_each(|s| c.observe(s.kind));
    c.close();
    PopRunAccount {
        d: trace.read as i64 - trace.written as i64,
        long_pops: c.long_pops,
        pops: c.pops,
        runs: c.runs,
    }
}
