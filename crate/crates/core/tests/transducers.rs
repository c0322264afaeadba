//! The compressor and decompressor tables against a direct enumeration of
//! their transition families, plus engine-level run properties.

use std::collections::BTreeMap;

use pdt_core::codec::{build_compressor, build_decompressor};
use pdt_core::engine::{validate, Machine, StepKind, Transition};
use pdt_core::symbol::word;
use pdt_core::{Alphabet, StackSymbol, Symbol};
use proptest::prelude::*;

fn stack(k: u16) -> Vec<StackSymbol> {
    std::iter::once(StackSymbol::Bottom)
        .chain((0..k).map(|c| StackSymbol::Tape(Symbol(c))))
        .collect()
}

/// The four families of the compressor, spelled out over every (z, a).
fn compressor_families(k: u16) -> Vec<Transition> {
    let (odd, pair) = (Symbol(k), Symbol(k + 1));
    let mut out = Vec::new();
    for z in stack(k) {
        for a in (0..k).map(Symbol) {
            let t = |from, output, to, push| Transition { from, pop: z, input: Some(a), output, to, push };
            if z == StackSymbol::Tape(a) {
                out.push(t(0, vec![], 1, vec![]));
                out.push(t(1, vec![pair], 0, vec![]));
            } else {
                out.push(t(0, vec![a], 0, vec![z, StackSymbol::Tape(a)]));
                out.push(t(1, vec![odd, a], 0, vec![z, StackSymbol::Tape(a)]));
            }
        }
    }
    out.sort();
    out
}

/// The four families of the inverse, pushes allowed on ⊥.
fn decompressor_families(k: u16) -> Vec<Transition> {
    let (odd, pair) = (Symbol(k), Symbol(k + 1));
    let mut out = Vec::new();
    for z in stack(k) {
        for a in (0..k).map(Symbol) {
            out.push(Transition { from: 0, pop: z, input: Some(a), output: vec![a], to: 0, push: vec![z, StackSymbol::Tape(a)] });
        }
        if let StackSymbol::Tape(s) = z {
            out.push(Transition { from: 0, pop: z, input: Some(odd), output: vec![s], to: 0, push: vec![] });
            out.push(Transition { from: 0, pop: z, input: Some(pair), output: vec![s], to: 1, push: vec![] });
            out.push(Transition { from: 1, pop: z, input: None, output: vec![s], to: 0, push: vec![] });
        }
    }
    out.sort();
    out
}

/// Exhaustive determinism and ε-exclusivity over a concrete table.
fn deterministic(table: &[Transition]) -> bool {
    let mut per_triple: BTreeMap<(u32, StackSymbol, Option<Symbol>), usize> = BTreeMap::new();
    for t in table {
        *per_triple.entry((t.from, t.pop, t.input)).or_default() += 1;
    }
    let unique = per_triple.values().all(|&c| c == 1);
    let exclusive = per_triple
        .keys()
        .filter(|(_, _, i)| i.is_none())
        .all(|(q, z, _)| !per_triple.keys().any(|(q2, z2, i2)| q2 == q && z2 == z && i2.is_some()));
    unique && exclusive
}

#[test]
fn compressor_table_matches_families() {
    for k in [2u16, 3, 4, 6] {
        let a = Alphabet::new(k as u32).unwrap();
        let spec = build_compressor(a);
        assert!(validate(&spec).is_empty());
        let mut got = spec.transitions();
        got.sort();
        let want = compressor_families(k);
        assert!(deterministic(&want));
        assert_eq!(got, want, "k = {k}");
        let k = k as usize;
        assert_eq!(got.len(), 2 * k * k + 2 * k);
    }
}

#[test]
fn decompressor_table_matches_families() {
    for k in [2u16, 3, 5] {
        let a = Alphabet::new(k as u32).unwrap();
        let spec = build_decompressor(a);
        assert!(validate(&spec).is_empty());
        let mut got = spec.transitions();
        got.sort();
        let want = decompressor_families(k);
        assert!(deterministic(&want));
        assert_eq!(got, want, "k = {k}");
    }
}

#[test]
fn duplicate_triple_gives_one_violation() {
    let k = Alphabet::new(3).unwrap();
    let mut spec = build_compressor(k);
    let mut dup = spec.rules[0].clone();
    dup.pop = pdt_core::engine::StackPattern::Exact(StackSymbol::Bottom);
    dup.input = pdt_core::engine::InputPattern::Exact(Symbol(0));
    dup.to = 1;
    spec.rules.push(dup);
    assert_eq!(validate(&spec).len(), 1);
}

#[test]
fn single_steps() {
    let k = Alphabet::new(2).unwrap();
    let m = Machine::new(build_compressor(k)).unwrap();
    let mut c = m.initial();
    let mut out = Vec::new();
    let info = m.step(&mut c, Some(Symbol(0)), 0, &mut out).unwrap().unwrap();
    assert!(info.consumed);
    assert_eq!((c.state, c.stack.clone(), out.clone()), (0, vec![StackSymbol::Bottom, StackSymbol::Tape(Symbol(0))], word(&[0])));
    out.clear();
    m.step(&mut c, Some(Symbol(0)), 1, &mut out).unwrap();
    assert_eq!((c.state, c.stack.clone(), out.clone()), (1, vec![StackSymbol::Bottom], vec![]));

    let inv = Machine::new(build_decompressor(k)).unwrap();
    let mut c = pdt_core::engine::Configuration {
        state: 1,
        stack: vec![StackSymbol::Bottom, StackSymbol::Tape(Symbol(0))],
    };
    let mut out = Vec::new();
    let info = inv.step(&mut c, Some(Symbol(1)), 0, &mut out).unwrap().unwrap();
    assert!(!info.consumed);
    assert_eq!((c.state, c.stack, out), (0, vec![StackSymbol::Bottom], word(&[0])));
}

#[test]
fn run_examples() {
    let k = Alphabet::new(2).unwrap();
    let spec = build_compressor(k);
    let r = pdt_core::engine::run(&spec, &[]).unwrap();
    assert!(r.output.is_empty() && r.trace.steps.is_empty());
    assert_eq!(r.config, Machine::new(spec.clone()).unwrap().initial());

    let r = pdt_core::engine::run(&spec, &word(&[0, 1, 1, 0])).unwrap();
    assert_eq!(r.output, word(&[0, 1, 3]));
    assert_eq!((r.config.state, r.config.stack), (0, vec![StackSymbol::Bottom]));

    let r = pdt_core::engine::run(&spec, &word(&[0, 1, 0])).unwrap();
    assert_eq!(r.output, word(&[0, 1, 0]));
    let t = |c| StackSymbol::Tape(Symbol(c));
    assert_eq!(r.config.stack, vec![StackSymbol::Bottom, t(0), t(1), t(0)]);
}

fn words(k: u16, max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec((0..k).prop_map(Symbol), 0..max)
}

proptest! {
    #[test]
    fn streaming_consistency(u in words(3, 60), v in words(3, 60)) {
        let m = Machine::new(build_compressor(Alphabet::new(3).unwrap())).unwrap();
        let whole = m.run(&[u.clone(), v.clone()].concat()).unwrap();
        let mut runner = m.runner();
        let mut out = Vec::new();
        for &a in &u { runner.feed(a, &mut out).unwrap(); }
        runner.finish(&mut out).unwrap();
        let split = out.len();
        prop_assert_eq!(&out[..], &m.run(&u).unwrap().output[..]);
        for &a in &v { runner.feed(a, &mut out).unwrap(); }
        runner.finish(&mut out).unwrap();
        prop_assert_eq!(&out, &whole.output);
        prop_assert_eq!(runner.config(), &whole.config);
        prop_assert!(split <= out.len());
    }

    #[test]
    fn reruns_are_identical(w in words(4, 100)) {
        let m = Machine::new(build_compressor(Alphabet::new(4).unwrap())).unwrap();
        prop_assert_eq!(m.run(&w).unwrap(), m.run(&w).unwrap());
    }

    #[test]
    fn depth_accounting(w in words(3, 100)) {
        let m = Machine::new(build_compressor(Alphabet::new(3).unwrap())).unwrap();
        let r = m.run(&w).unwrap();
        let mut depth = 1usize;
        for s in &r.trace.steps {
            depth = match s.kind { StepKind::Push => depth + 1, StepKind::Pop => depth - 1, StepKind::Replace => depth };
            prop_assert_eq!(s.depth, depth);
            prop_assert!(s.depth >= 1);
        }
        prop_assert_eq!(r.trace.read, w.len());
        let emitted: usize = r.trace.steps.iter().map(|s| s.output.len()).sum();
        prop_assert_eq!(r.trace.written, emitted);
        prop_assert_eq!(r.trace.written, r.output.len());
    }

    #[test]
    fn inverse_takes_at_most_one_epsilon_step_between_reads(w in words(3, 200)) {
        let k = Alphabet::new(3).unwrap();
        let packed = pdt_core::codec::compress(&w, pdt_core::codec::CodecParams::new(k)).unwrap();
        let r = Machine::new(build_decompressor(k)).unwrap().run(&packed).unwrap();
        let mut streak = 0;
        for s in &r.trace.steps {
            if s.input.is_none() { streak += 1; prop_assert!(streak <= 1); } else { streak = 0; }
        }
        prop_assert_eq!(r.output, w);
    }
}
