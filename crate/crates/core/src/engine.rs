//! Deterministic pushdown-transducer runtime.
//!
//! A machine is a [`TransducerSpec`]: a finite set of states, an input and an
//! output alphabet of tape codes, a stack alphabet made of `⊥` plus a range of
//! tape codes, and a list of [`Rule`]s. A rule is a transition schema in the
//! style `p, z --a|v--> q, h`, where `z` and `a` may range over sets and be
//! related by a [`Guard`], and where `v` and `h` may refer back to the popped
//! symbol and the read symbol. Every rule therefore stands for a family of
//! concrete [`Transition`]s; [`TransducerSpec::transitions`] enumerates them.
//!
//! Runs are driven by a [`Machine`], which can only be built from a spec that
//! passes [`validate`]. ε-rules fire eagerly: whenever one applies to the
//! current state and stack top it fires before the next read, and again once
//! the input ends.

use alloc::vec::Vec;
use core::ops::Range;

use crate::symbol::{StackSymbol, Symbol};
use crate::Error;

pub type State = u32;

/// Which stack symbols a rule can pop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StackPattern {
    Exact(StackSymbol),
    /// Any tape symbol of the stack alphabet, never `⊥`.
    AnyTape,
    /// Any stack symbol, `⊥` included.
    Any,
}

/// Which input a rule consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputPattern {
    /// Consumes nothing.
    Epsilon,
    Exact(Symbol),
    /// Any code in `start..end`.
    Range { start: u16, end: u32 },
}

/// Relation required between the popped symbol and the read symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    None,
    /// Popped symbol equals the read symbol.
    Equal,
    /// Popped symbol differs from the read symbol (`⊥` differs from everything).
    Distinct,
}

/// Symbol template for the output word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Lit(Symbol),
    Read,
    Popped,
}

/// Symbol template for the pushed word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StackTerm {
    Lit(StackSymbol),
    Read,
    Popped,
}

/// A transition schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub from: State,
    pub pop: StackPattern,
    pub input: InputPattern,
    pub guard: Guard,
    pub output: Vec<Term>,
    pub to: State,
    /// Replaces the popped symbol, written bottom up.
    pub push: Vec<StackTerm>,
}

/// A concrete transition `from, pop --input|output--> to, push`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transition {
    pub from: State,
    pub pop: StackSymbol,
    /// `None` for an ε-transition.
    pub input: Option<Symbol>,
    pub output: Vec<Symbol>,
    pub to: State,
    pub push: Vec<StackSymbol>,
}

/// Immutable description of a pushdown transducer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransducerSpec {
    /// Input codes are `0..input_size`.
    pub input_size: u32,
    /// Output codes are `0..output_size`.
    pub output_size: u32,
    /// Tape codes allowed on the stack are `0..stack_tape_size`; `⊥` is always allowed.
    pub stack_tape_size: u32,
    pub states: u32,
    pub initial_state: State,
    pub start_symbol: StackSymbol,
    pub rules: Vec<Rule>,
}

/// A problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Initial state or a rule endpoint outside `0..states`.
    UnknownState { rule: Option<usize>, state: State },
    /// A literal or pattern symbol outside its alphabet.
    SymbolOutOfRange { rule: Option<usize> },
    /// `Read` used by an ε-rule, `Popped` emitted when `⊥` may be popped,
    /// or a guard on an ε-rule.
    UnboundTerm { rule: usize },
    /// Two rules apply to the same (state, top, input).
    Nondeterministic {
        first: usize,
        second: usize,
        state: State,
        top: StackSymbol,
        input: Option<Symbol>,
    },
    /// An ε-rule and a consuming rule share a (state, top) pair.
    EpsilonConflict {
        epsilon: usize,
        consuming: usize,
        state: State,
        top: StackSymbol,
    },
}

/// A set of stack symbols: optionally `⊥`, plus a half-open range of tape codes.
#[derive(Clone, Copy, Debug)]
struct StackSet {
    bottom: bool,
    tape: (u32, u32),
}

impl StackSet {
    fn of(pattern: StackPattern, stack_tape_size: u32) -> Self {
        match pattern {
            StackPattern::Exact(StackSymbol::Bottom) => StackSet { bottom: true, tape: (0, 0) },
            StackPattern::Exact(StackSymbol::Tape(s)) => StackSet {
                bottom: false,
                tape: (s.0 as u32, s.0 as u32 + 1),
            },
            StackPattern::AnyTape => StackSet { bottom: false, tape: (0, stack_tape_size) },
            StackPattern::Any => StackSet { bottom: true, tape: (0, stack_tape_size) },
        }
    }

    fn intersect(self, other: StackSet) -> StackSet {
        StackSet {
            bottom: self.bottom && other.bottom,
            tape: intersect(self.tape, other.tape),
        }
    }

    fn is_empty(self) -> bool {
        !self.bottom && self.tape.0 >= self.tape.1
    }

    fn any(self) -> Option<StackSymbol> {
        if self.bottom {
            Some(StackSymbol::Bottom)
        } else if self.tape.0 < self.tape.1 {
            Some(StackSymbol::Tape(Symbol(self.tape.0 as u16)))
        } else {
            None
        }
    }
}

fn intersect(a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
    (a.0.max(b.0), a.1.min(b.1))
}

fn input_range(pattern: InputPattern) -> Option<(u32, u32)> {
    match pattern {
        InputPattern::Epsilon => None,
        InputPattern::Exact(s) => Some((s.0 as u32, s.0 as u32 + 1)),
        InputPattern::Range { start, end } => Some((start as u32, end)),
    }
}

/// Combined guard of two rules, `None` when they are contradictory.
fn combine(a: Guard, b: Guard) -> Option<Guard> {
    match (a, b) {
        (Guard::Equal, Guard::Distinct) | (Guard::Distinct, Guard::Equal) => None,
        (Guard::None, g) | (g, Guard::None) => Some(g),
        (g, _) => Some(g),
    }
}

/// Finds `(z, a)` with `z ∈ stack`, `a ∈ input` satisfying `guard`.
fn witness(stack: StackSet, input: (u32, u32), guard: Guard) -> Option<(StackSymbol, Symbol)> {
    if input.0 >= input.1 || stack.is_empty() {
        return None;
    }
    let first = Symbol(input.0 as u16);
    match guard {
        Guard::None => Some((stack.any()?, first)),
        Guard::Equal => {
            let (lo, hi) = intersect(stack.tape, input);
            (lo < hi).then_some((StackSymbol::Tape(Symbol(lo as u16)), Symbol(lo as u16)))
        }
        Guard::Distinct => {
            if stack.bottom {
                return Some((StackSymbol::Bottom, first));
            }
            let (zl, zh) = stack.tape;
            let (al, ah) = input;
            if zh - zl == 1 && ah - al == 1 && zl == al {
                None
            } else if zl != al {
                Some((StackSymbol::Tape(Symbol(zl as u16)), first))
            } else if ah - al > 1 {
                Some((StackSymbol::Tape(Symbol(zl as u16)), Symbol(al as u16 + 1)))
            } else {
                Some((StackSymbol::Tape(Symbol(zl as u16 + 1)), first))
            }
        }
    }
}

/// Checks determinism, ε-exclusivity and well-formedness of `spec`.
///
/// The check is symbolic over rule patterns, so it costs `O(rules²)` no
/// matter how large the alphabets are. Each conflicting pair of rules is
/// reported once, with a witness configuration.
pub fn validate(spec: &TransducerSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if spec.initial_state >= spec.states {
        out.push(Violation::UnknownState { rule: None, state: spec.initial_state });
    }
    if !stack_symbol_ok(spec, spec.start_symbol) {
        out.push(Violation::SymbolOutOfRange { rule: None });
    }

    for (i, r) in spec.rules.iter().enumerate() {
        for state in [r.from, r.to] {
            if state >= spec.states {
                out.push(Violation::UnknownState { rule: Some(i), state });
            }
        }
        if !rule_symbols_ok(spec, r) {
            out.push(Violation::SymbolOutOfRange { rule: Some(i) });
        }
        let eps = r.input == InputPattern::Epsilon;
        let may_pop_bottom = matches!(
            r.pop,
            StackPattern::Any | StackPattern::Exact(StackSymbol::Bottom)
        );
        let reads = r.output.contains(&Term::Read)
            || r.push.contains(&StackTerm::Read);
        let emits_popped = r.output.contains(&Term::Popped);
        if (eps && (reads || r.guard != Guard::None)) || (may_pop_bottom && emits_popped) {
            out.push(Violation::UnboundTerm { rule: i });
        }
    }

    for (i, a) in spec.rules.iter().enumerate() {
        for (j, b) in spec.rules.iter().enumerate().skip(i + 1) {
            if a.from != b.from {
                continue;
            }
            let stack = StackSet::of(a.pop, spec.stack_tape_size)
                .intersect(StackSet::of(b.pop, spec.stack_tape_size));
            match (input_range(a.input), input_range(b.input)) {
                (None, None) => {
                    if let Some(top) = stack.any() {
                        out.push(Violation::Nondeterministic {
                            first: i,
                            second: j,
                            state: a.from,
                            top,
                            input: None,
                        });
                    }
                }
                (Some(ra), Some(rb)) => {
                    let hit = combine(a.guard, b.guard)
                        .and_then(|g| witness(stack, intersect(ra, rb), g));
                    if let Some((top, input)) = hit {
                        out.push(Violation::Nondeterministic {
                            first: i,
                            second: j,
                            state: a.from,
                            top,
                            input: Some(input),
                        });
                    }
                }
                (None, Some(r)) | (Some(r), None) => {
                    let (epsilon, consuming, rule) = if a.input == InputPattern::Epsilon {
                        (i, j, b)
                    } else {
                        (j, i, a)
                    };
                    if let Some((top, _)) = witness(stack, r, rule.guard) {
                        out.push(Violation::EpsilonConflict {
                            epsilon,
                            consuming,
                            state: a.from,
                            top,
                        });
                    }
                }
            }
        }
    }
    out
}

fn stack_symbol_ok(spec: &TransducerSpec, z: StackSymbol) -> bool {
    match z {
        StackSymbol::Bottom => true,
        StackSymbol::Tape(s) => (s.0 as u32) < spec.stack_tape_size,
    }
}

fn rule_symbols_ok(spec: &TransducerSpec, r: &Rule) -> bool {
    let pop_ok = match r.pop {
        StackPattern::Exact(z) => stack_symbol_ok(spec, z),
        _ => true,
    };
    let input_ok = match input_range(r.input) {
        None => true,
        Some((lo, hi)) => lo < hi && hi <= spec.input_size,
    };
    // Read and popped symbols are copied verbatim, so they must fit the
    // target alphabet.
    let read_hi = input_range(r.input).map_or(0, |(_, hi)| hi);
    let popped_hi = match r.pop {
        StackPattern::Exact(StackSymbol::Tape(s)) => s.0 as u32 + 1,
        StackPattern::Exact(StackSymbol::Bottom) => 0,
        _ => spec.stack_tape_size,
    };
    let output_ok = r.output.iter().all(|t| match t {
        Term::Lit(s) => (s.0 as u32) < spec.output_size,
        Term::Read => read_hi <= spec.output_size,
        Term::Popped => popped_hi <= spec.output_size,
    });
    let push_ok = r.push.iter().all(|t| match t {
        StackTerm::Lit(z) => stack_symbol_ok(spec, *z),
        StackTerm::Read => read_hi <= spec.stack_tape_size,
        StackTerm::Popped => true,
    });
    pop_ok && input_ok && output_ok && push_ok
}

impl Rule {
    /// Does this rule apply to `(state, top, input)`? `input == None` asks
    /// about ε-moves.
    #[inline]
    pub fn applies(&self, state: State, top: StackSymbol, input: Option<Symbol>) -> bool {
        if self.from != state {
            return false;
        }
        let pop_ok = match self.pop {
            StackPattern::Exact(z) => z == top,
            StackPattern::AnyTape => top != StackSymbol::Bottom,
            StackPattern::Any => true,
        };
        if !pop_ok {
            return false;
        }
        let input_ok = match (self.input, input) {
            (InputPattern::Epsilon, None) => true,
            (InputPattern::Exact(s), Some(a)) => s == a,
            (InputPattern::Range { start, end }, Some(a)) => a.0 >= start && (a.0 as u32) < end,
            _ => false,
        };
        input_ok
            && match (self.guard, input) {
                (Guard::None, _) => true,
                (Guard::Equal, Some(a)) => top == StackSymbol::Tape(a),
                (Guard::Distinct, Some(a)) => top != StackSymbol::Tape(a),
                (_, None) => false,
            }
    }

    fn emit(&self, top: StackSymbol, input: Option<Symbol>, out: &mut Vec<Symbol>) {
        for t in &self.output {
            out.push(match *t {
                Term::Lit(s) => s,
                Term::Read => input.expect("validated: Read only on consuming rules"),
                Term::Popped => top.tape().expect("validated: Popped output never sees ⊥"),
            });
        }
    }

    fn push_onto(&self, top: StackSymbol, input: Option<Symbol>, stack: &mut Vec<StackSymbol>) {
        for t in &self.push {
            stack.push(match *t {
                StackTerm::Lit(z) => z,
                StackTerm::Read => StackSymbol::Tape(input.expect("validated")),
                StackTerm::Popped => top,
            });
        }
    }

    /// The concrete transition this rule yields on `(top, input)`.
    pub fn instantiate(&self, top: StackSymbol, input: Option<Symbol>) -> Transition {
        let mut output = Vec::new();
        self.emit(top, input, &mut output);
        let mut push = Vec::new();
        self.push_onto(top, input, &mut push);
        Transition { from: self.from, pop: top, input, output, to: self.to, push }
    }
}

impl TransducerSpec {
    /// Every stack symbol of the machine, `⊥` first.
    pub fn stack_alphabet(&self) -> impl Iterator<Item = StackSymbol> + '_ {
        core::iter::once(StackSymbol::Bottom)
            .chain((0..self.stack_tape_size).map(|c| StackSymbol::Tape(Symbol(c as u16))))
    }

    /// Enumerates the concrete transitions of all rules.
    ///
    /// This walks `Q × Z × (A ∪ {ε})`, so it is only sensible for small alphabets.
    pub fn transitions(&self) -> Vec<Transition> {
        let mut all = Vec::new();
        let inputs = || {
            core::iter::once(None).chain((0..self.input_size).map(|c| Some(Symbol(c as u16))))
        };
        for state in 0..self.states {
            for top in self.stack_alphabet() {
                for input in inputs() {
                    for r in self.rules.iter().filter(|r| r.applies(state, top, input)) {
                        all.push(r.instantiate(top, input));
                    }
                }
            }
        }
        all
    }
}

/// State plus stack content, bottom up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub state: State,
    pub stack: Vec<StackSymbol>,
}

impl Configuration {
    pub fn top(&self) -> Option<StackSymbol> {
        self.stack.last().copied()
    }

    pub fn depth(&self) -> usize {
        self.stack.len()
    }
}

/// Net effect of a step on the stack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Push,
    Pop,
    /// Top replaced by exactly one symbol.
    Replace,
}

impl StepKind {
    fn of(push_len: usize) -> Self {
        match push_len {
            0 => StepKind::Pop,
            1 => StepKind::Replace,
            _ => StepKind::Push,
        }
    }
}

/// What a single step did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepInfo {
    pub rule: usize,
    pub consumed: bool,
    pub kind: StepKind,
    pub emitted: usize,
    pub depth: usize,
}

/// One recorded step of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The consumed symbol, `None` for ε-steps.
    pub input: Option<Symbol>,
    pub kind: StepKind,
    /// Positions of the emitted symbols on the output tape.
    pub output: Range<usize>,
    /// Stack depth after the step, `⊥` included.
    pub depth: usize,
}

/// Step-by-step record of a run.
///
/// `written` counts every symbol on the output tape: the step outputs plus
/// the `trailer`, which holds anything appended after the last step (the
/// codec's flush marker).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
    pub read: usize,
    pub written: usize,
    pub trailer: Range<usize>,
}

impl RunTrace {
    /// Steps that consumed an input symbol, in input order.
    pub fn consuming(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| s.input.is_some())
    }
}

/// A validated transducer, ready to run.
#[derive(Clone, Debug)]
pub struct Machine {
    spec: TransducerSpec,
    // Rule indices per state, ε-rules and consuming rules apart.
    epsilon: Vec<Vec<usize>>,
    consuming: Vec<Vec<usize>>,
    epsilon_limit: usize,
}

/// Default bound on consecutive ε-steps before a run is declared divergent.
pub const EPSILON_LIMIT: usize = 1 << 20;

impl Machine {
    pub fn new(spec: TransducerSpec) -> Result<Self, Error> {
        let violations = validate(&spec);
        if !violations.is_empty() {
            return Err(Error::InvalidSpec(violations));
        }
        let mut epsilon = alloc::vec![Vec::new(); spec.states as usize];
        let mut consuming = alloc::vec![Vec::new(); spec.states as usize];
        for (i, r) in spec.rules.iter().enumerate() {
            let bucket = if r.input == InputPattern::Epsilon { &mut epsilon } else { &mut consuming };
            bucket[r.from as usize].push(i);
        }
        Ok(Machine { spec, epsilon, consuming, epsilon_limit: EPSILON_LIMIT })
    }

    pub fn with_epsilon_limit(mut self, limit: usize) -> Self {
        self.epsilon_limit = limit;
        self
    }

    pub fn spec(&self) -> &TransducerSpec {
        &self.spec
    }

    pub fn initial(&self) -> Configuration {
        Configuration {
            state: self.spec.initial_state,
            stack: alloc::vec![self.spec.start_symbol],
        }
    }

    fn find(&self, state: State, top: StackSymbol, input: Option<Symbol>) -> Option<usize> {
        let bucket = match input {
            None => &self.epsilon[state as usize],
            Some(_) => &self.consuming[state as usize],
        };
        bucket
            .iter()
            .copied()
            .find(|&i| self.spec.rules[i].applies(state, top, input))
    }

    /// Performs one step from `config`.
    ///
    /// An applicable ε-rule always wins and leaves `next` unconsumed. With
    /// `next == None` (end of input) and no ε-rule, nothing fires and
    /// `Ok(None)` is returned. `position` only labels errors.
    pub fn step(
        &self,
        config: &mut Configuration,
        next: Option<Symbol>,
        position: usize,
        out: &mut Vec<Symbol>,
    ) -> Result<Option<StepInfo>, Error> {
        let top = config.top().ok_or(Error::EmptyStack { position })?;
        let (rule, consumed) = match self.find(config.state, top, None) {
            Some(i) => (i, false),
            None => match next {
                None => return Ok(None),
                Some(a) => match self.find(config.state, top, Some(a)) {
                    Some(i) => (i, true),
                    None => {
                        return Err(Error::NoTransition {
                            position,
                            state: config.state,
                            top,
                            input: next,
                        })
                    }
                },
            },
        };
        let r = &self.spec.rules[rule];
        let input = if consumed { next } else { None };
        let before = out.len();
        r.emit(top, input, out);
        config.stack.pop();
        r.push_onto(top, input, &mut config.stack);
        config.state = r.to;
        Ok(Some(StepInfo {
            rule,
            consumed,
            kind: StepKind::of(r.push.len()),
            emitted: out.len() - before,
            depth: config.stack.len(),
        }))
    }

    pub fn runner(&self) -> Runner<'_> {
        Runner {
            machine: self,
            config: self.initial(),
            read: 0,
            written: 0,
            trace: None,
        }
    }

    /// Runs on a finite word, draining ε-moves before each read and after
    /// the last one.
    pub fn run(&self, input: &[Symbol]) -> Result<Run, Error> {
        let mut runner = self.runner().traced();
        let mut output = Vec::new();
        for &a in input {
            runner.feed(a, &mut output)?;
        }
        runner.finish(&mut output)?;
        let trace = runner.trace.take().unwrap_or_default();
        Ok(Run { output, config: runner.config, trace })
    }
}

/// Result of [`Machine::run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub output: Vec<Symbol>,
    pub config: Configuration,
    pub trace: RunTrace,
}

/// Validates `spec` and runs it on `input`.
pub fn run(spec: &TransducerSpec, input: &[Symbol]) -> Result<Run, Error> {
    Machine::new(spec.clone())?.run(input)
}

/// A streaming run: feed symbols one at a time, then [`Runner::finish`].
#[derive(Clone, Debug)]
pub struct Runner<'m> {
    machine: &'m Machine,
    config: Configuration,
    read: usize,
    written: usize,
    trace: Option<RunTrace>,
}

impl<'m> Runner<'m> {
    /// Records a [`RunTrace`] from now on.
    pub fn traced(mut self) -> Self {
        self.trace = Some(RunTrace {
            read: self.read,
            written: self.written,
            trailer: self.written..self.written,
            ..RunTrace::default()
        });
        self
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn read(&self) -> usize {
        self.read
    }

    pub fn written(&self) -> usize {
        self.written
    }

    pub fn trace(&self) -> Option<&RunTrace> {
        self.trace.as_ref()
    }

    pub fn into_parts(self) -> (Configuration, Option<RunTrace>) {
        (self.config, self.trace)
    }

    fn record(&mut self, input: Option<Symbol>, info: &StepInfo) {
        let start = self.written;
        self.written += info.emitted;
        if info.consumed {
            self.read += 1;
        }
        if let Some(trace) = &mut self.trace {
            trace.steps.push(TraceStep {
                input,
                kind: info.kind,
                output: start..self.written,
                depth: info.depth,
            });
            trace.read = self.read;
            trace.written = self.written;
            trace.trailer = self.written..self.written;
        }
    }

    fn drain(&mut self, out: &mut Vec<Symbol>) -> Result<(), Error> {
        let mut count = 0;
        loop {
            let top = self.config.top().ok_or(Error::EmptyStack { position: self.read })?;
            if self.machine.find(self.config.state, top, None).is_none() {
                return Ok(());
            }
            if count == self.machine.epsilon_limit {
                return Err(Error::EpsilonDivergence {
                    position: self.read,
                    limit: self.machine.epsilon_limit,
                });
            }
            let info = self
                .machine
                .step(&mut self.config, None, self.read, out)?
                .expect("ε-rule found above");
            self.record(None, &info);
            count += 1;
        }
    }

    /// Drains pending ε-moves, then consumes `a`. Returns the consuming step.
    pub fn feed(&mut self, a: Symbol, out: &mut Vec<Symbol>) -> Result<StepInfo, Error> {
        self.drain(out)?;
        let info = self
            .machine
            .step(&mut self.config, Some(a), self.read, out)?
            .expect("a symbol was offered");
        debug_assert!(info.consumed);
        self.record(Some(a), &info);
        Ok(info)
    }

    /// Accounts for `n` symbols the caller appended after the last step.
    pub fn append_trailer(&mut self, n: usize) {
        self.written += n;
        if let Some(trace) = &mut self.trace {
            trace.written = self.written;
            trace.trailer.end = self.written;
        }
    }

    /// Drains the ε-moves left at end of input.
    pub fn finish(&mut self, out: &mut Vec<Symbol>) -> Result<(), Error> {
        self.drain(out)
    }
}
