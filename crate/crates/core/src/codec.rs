//! The compressor `T_k` and its inverse.
//!
//! The compressor pushes every input symbol that differs from the stack top
//! and writes it out; a symbol equal to the top pops it instead. A maximal run
//! of `m` consecutive pops is written as `σ₂^⌊m/2⌋` followed by `σ₁` when `m`
//! is odd. That `σ₁` is only known to be needed once the run ends, so it is
//! carried by the next push (which writes `σ₁ a`) or, on a finite word, by the
//! flush at end of input.
//!
//! The decompressor echoes and pushes ordinary symbols, pops and writes one
//! symbol on `σ₁`, and two on `σ₂` (the second through an ε-move).

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{
    Configuration, Guard, InputPattern, Machine, Rule, RunTrace, Runner, StackPattern, StackTerm,
    StepInfo, StepKind, Term, TransducerSpec,
};
use crate::symbol::{Alphabet, StackSymbol, Symbol};
use crate::Error;

/// State in which the last step was an unpaired pop.
pub const PENDING_POP: u32 = 1;

/// Alphabet size plus the end-of-input convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodecParams {
    pub k: Alphabet,
    /// Emit `σ₁` when the input ends right after an unpaired pop.
    pub flush: bool,
}

impl CodecParams {
    pub fn new(k: Alphabet) -> Self {
        CodecParams { k, flush: true }
    }

    pub fn without_flush(self) -> Self {
        CodecParams { flush: false, ..self }
    }
}

/// The transition rules of `T_k`.
pub fn build_compressor(k: Alphabet) -> TransducerSpec {
    let all = InputPattern::Range { start: 0, end: k.k() as u32 };
    let rule = |from, guard, output, to, push| Rule {
        from,
        pop: StackPattern::Any,
        input: all,
        guard,
        output,
        to,
        push,
    };
    let push = || vec![StackTerm::Popped, StackTerm::Read];
    TransducerSpec {
        input_size: k.k() as u32,
        output_size: k.output_size(),
        stack_tape_size: k.k() as u32,
        states: 2,
        initial_state: 0,
        start_symbol: StackSymbol::Bottom,
        rules: vec![
            rule(0, Guard::Distinct, vec![Term::Read], 0, push()),
            rule(0, Guard::Equal, vec![], PENDING_POP, vec![]),
            rule(PENDING_POP, Guard::Equal, vec![Term::Lit(Symbol::pair_pop(k))], 0, vec![]),
            rule(
                PENDING_POP,
                Guard::Distinct,
                vec![Term::Lit(Symbol::odd_pop(k)), Term::Read],
                0,
                push(),
            ),
        ],
    }
}

/// The transition rules of the inverse transducer.
///
/// Pushing is allowed on `⊥` as well, otherwise the first symbol of a stream
/// could never be read.
pub fn build_decompressor(k: Alphabet) -> TransducerSpec {
    let pop = |from, input, to| Rule {
        from,
        pop: StackPattern::AnyTape,
        input,
        guard: Guard::None,
        output: vec![Term::Popped],
        to,
        push: vec![],
    };
    TransducerSpec {
        input_size: k.output_size(),
        output_size: k.k() as u32,
        stack_tape_size: k.k() as u32,
        states: 2,
        initial_state: 0,
        start_symbol: StackSymbol::Bottom,
        rules: vec![
            Rule {
                from: 0,
                pop: StackPattern::Any,
                input: InputPattern::Range { start: 0, end: k.k() as u32 },
                guard: Guard::None,
                output: vec![Term::Read],
                to: 0,
                push: vec![StackTerm::Popped, StackTerm::Read],
            },
            pop(0, InputPattern::Exact(Symbol::odd_pop(k)), 0),
            pop(0, InputPattern::Exact(Symbol::pair_pop(k)), 1),
            pop(1, InputPattern::Epsilon, 0),
        ],
    }
}

/// A reusable compressor for one alphabet.
#[derive(Clone, Debug)]
pub struct Compressor {
    params: CodecParams,
    machine: Machine,
}

impl Compressor {
    pub fn new(params: CodecParams) -> Self {
        let machine = Machine::new(build_compressor(params.k)).expect("T_k is deterministic");
        Compressor { params, machine }
    }

    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn session(&self) -> Session<'_> {
        Session { params: self.params, runner: self.machine.runner() }
    }

    pub fn traced_session(&self) -> Session<'_> {
        Session { params: self.params, runner: self.machine.runner().traced() }
    }

    /// Compresses a finite word.
    pub fn compress(&self, word: &[Symbol]) -> Result<Vec<Symbol>, Error> {
        let mut out = Vec::with_capacity(word.len());
        let mut s = self.session();
        s.feed_all(word, &mut out)?;
        s.finish(&mut out);
        Ok(out)
    }

    /// Compresses a finite word, keeping the run trace and final configuration.
    pub fn compress_traced(&self, word: &[Symbol]) -> Result<Compressed, Error> {
        let mut output = Vec::with_capacity(word.len());
        let mut s = self.traced_session();
        s.feed_all(word, &mut output)?;
        s.finish(&mut output);
        let (config, trace) = s.runner.into_parts();
        Ok(Compressed { output, config, trace: trace.unwrap_or_default() })
    }
}

/// A compressor run with everything it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compressed {
    pub output: Vec<Symbol>,
    /// Configuration after the last symbol; the flush does not change it.
    pub config: Configuration,
    pub trace: RunTrace,
}

/// Single-owner streaming compression.
#[derive(Clone, Debug)]
pub struct Session<'c> {
    params: CodecParams,
    runner: Runner<'c>,
}

impl Session<'_> {
    pub fn feed(&mut self, a: Symbol, out: &mut Vec<Symbol>) -> Result<StepInfo, Error> {
        if !self.params.k.contains(a) {
            return Err(Error::SymbolOutOfAlphabet {
                position: self.runner.read(),
                code: a.0,
                k: self.params.k.k(),
            });
        }
        self.runner.feed(a, out)
    }

    pub fn feed_all(&mut self, word: &[Symbol], out: &mut Vec<Symbol>) -> Result<(), Error> {
        word.iter().try_for_each(|&a| self.feed(a, out).map(drop))
    }

    /// Ends the input. With flush on, a pending odd pop run gets its `σ₁`.
    /// Returns the number of symbols appended.
    pub fn finish(&mut self, out: &mut Vec<Symbol>) -> usize {
        if self.params.flush && self.runner.config().state == PENDING_POP {
            out.push(Symbol::odd_pop(self.params.k));
            self.runner.append_trailer(1);
            1
        } else {
            0
        }
    }

    pub fn config(&self) -> &Configuration {
        self.runner.config()
    }

    pub fn read(&self) -> usize {
        self.runner.read()
    }

    /// Symbols written so far, flush included.
    pub fn written(&self) -> usize {
        self.runner.written()
    }

    pub fn trace(&self) -> Option<&RunTrace> {
        self.runner.trace()
    }
}

pub fn compress(word: &[Symbol], params: CodecParams) -> Result<Vec<Symbol>, Error> {
    Compressor::new(params).compress(word)
}

/// Inverse of [`compress`] with flush.
pub fn decompress(stream: &[Symbol], k: Alphabet) -> Result<Vec<Symbol>, Error> {
    if let Some(position) = stream.iter().position(|&s| !k.contains_output(s)) {
        return Err(Error::SymbolOutOfAlphabet { position, code: stream[position].0, k: k.k() });
    }
    let machine = Machine::new(build_decompressor(k)).expect("inverse is deterministic");
    let mut runner = machine.runner();
    let mut out = Vec::with_capacity(stream.len() * 2);
    for (position, &s) in stream.iter().enumerate() {
        runner.feed(s, &mut out).map_err(|e| match e {
            Error::NoTransition { .. } => Error::MalformedStream { position },
            e => e,
        })?;
    }
    runner.finish(&mut out)?;
    // State 1 with only ⊥ left: a σ₂ whose second pop has nothing to pop.
    if runner.config().state != 0 {
        return Err(Error::MalformedStream { position: stream.len() });
    }
    Ok(out)
}

/// A maximal run of consecutive pops and the symbols that encode it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopRun {
    /// Input position of the first pop.
    pub start: usize,
    pub len: usize,
    pub coding: Vec<Symbol>,
}

/// Splits a compressor trace into maximal pop runs.
///
/// The coding of a run is what its pops wrote plus, for an odd run, the `σ₁`
/// written by the step that ends it (a push or the flush).
pub fn pop_run_decomposition(trace: &RunTrace, output: &[Symbol], k: Alphabet) -> Vec<PopRun> {
    let odd = Symbol::odd_pop(k);
    let mut runs: Vec<PopRun> = Vec::new();
    let mut current: Option<PopRun> = None;
    for (position, step) in trace.consuming().enumerate() {
        let emitted = &output[step.output.clone()];
        if step.kind == StepKind::Pop {
            let run = current.get_or_insert_with(|| PopRun { start: position, len: 0, coding: Vec::new() });
            run.len += 1;
            run.coding.extend_from_slice(emitted);
        } else if let Some(mut run) = current.take() {
            if emitted.first() == Some(&odd) {
                run.coding.push(odd);
            }
            runs.push(run);
        }
    }
    if let Some(mut run) = current {
        run.coding.extend_from_slice(&output[trace.trailer.clone()]);
        runs.push(run);
    }
    runs
}
