use std::time::Instant;

use kamforce::kam::{reaches, run, run_until, step, FirstSeenCodec, Process, Rule, StackCodec};
use kamforce::term::{eliminate_abstraction, parse_cterm, parse_stack, Atom, CTerm, Stack};
use proptest::prelude::*;

fn p(head: &str, stack: &str) -> Process {
    Process::new(parse_cterm(head).unwrap(), parse_stack(stack).unwrap())
}

fn one_step(from: Process) -> (Rule, Process) {
    step(&from, &mut FirstSeenCodec::new()).expect("a rule applies")
}

#[test]
fn the_twelve_rules() {
    let start = Instant::now();
    let cases = [
        (p("(ξ) η", "π"), Rule::Push, p("ξ", "η.π")),
        (p("I", "ξ.π"), Rule::I, p("ξ", "π")),
        (p("K", "ξ.η.π"), Rule::K, p("ξ", "π")),
        (p("E", "ξ.η.π"), Rule::E, p("(ξ) η", "π")),
        (p("W", "ξ.η.π"), Rule::W, p("ξ", "η.η.π")),
        (p("C", "ξ.η.ζ.π"), Rule::C, p("ξ", "ζ.η.π")),
        (p("B", "ξ.η.ζ.π"), Rule::B, p("(ξ) (η) ζ", "π")),
        (p("cc", "ξ.a.π"), Rule::Cc, p("ξ", "k[a.π].a.π")),
        (p("k[a.π]", "ξ.b.ϖ"), Rule::Restore, p("ξ", "a.π")),
        (p("rd", "ξ.a.τ.π"), Rule::Rd, p("ξ", "τ.a.π")),
        (p("wr", "ξ.τ.a.π"), Rule::Wr, p("ξ", "a.τ.π")),
    ];
    for (from, rule, to) in cases {
        assert_eq!(one_step(from.clone()), (rule, to), "from {from}");
    }
    // ς pushes the numeral coding the remaining stack.
    let mut codec = FirstSeenCodec::new();
    let (r, q) = step(&p("qt", "ξ.a.π"), &mut codec).unwrap();
    assert_eq!(r, Rule::Qt);
    let rest = parse_stack("a.π").unwrap();
    let n = codec.encode(&rest);
    assert_eq!(q, Process::new(CTerm::cst("ξ"), {
        let mut s = rest.clone();
        s.push(CTerm::Num(n));
        s
    }));
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn the_continuation_discards_the_whole_stack() {
    let q = one_step(p("k[π0]", "ξ.a.b.c.π1")).1;
    assert_eq!(q, p("ξ", "π0"));
}

#[test]
fn rd_and_wr_on_a_single_item() {
    // π^τ with π = π0 is τ·π0.
    assert_eq!(one_step(p("rd", "ξ.τ.π0")).1, p("ξ", "τ.π0"));
    assert_eq!(one_step(p("wr", "ξ.τ.π0")).1, p("ξ", "τ.π0"));
}

#[test]
fn codec_is_injective_and_deterministic() {
    let stacks: Vec<Stack> = ["π0", "a.π0", "b.π0", "a.a.π0", "π1", "(a) b.π0"]
        .iter()
        .map(|s| parse_stack(s).unwrap())
        .collect();
    let mut c1 = FirstSeenCodec::new();
    let mut c2 = FirstSeenCodec::new();
    let codes: Vec<u64> = stacks.iter().map(|s| c1.encode(s)).collect();
    let again: Vec<u64> = stacks.iter().map(|s| c2.encode(s)).collect();
    assert_eq!(codes, again);
    let mut sorted = codes.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), codes.len());
    for (s, &n) in stacks.iter().zip(&codes) {
        assert_eq!(c1.decode(n), Some(s));
        assert_eq!(c1.encode(s), n);
    }
}

#[test]
fn trace_lines_follow_the_format() {
    let tr = run(p("(I) a", "b.π0"), 10, &mut FirstSeenCodec::new());
    assert_eq!(
        tr.lines(),
        [
            "0 start | (I) a | b.π0",
            "1 push | I | a.b.π0",
            "2 I | a | b.π0"
        ]
    );
}

const VARS: [&str; 3] = ["x1", "x2", "x3"];

fn arb_cterm() -> impl Strategy<Value = CTerm> {
    let leaf = prop_oneof![
        prop::sample::select(Atom::ELEMENTARY.to_vec()).prop_map(CTerm::Atom),
        prop::sample::select(VARS.to_vec()).prop_map(CTerm::var),
        prop::sample::select(vec!["a", "b"]).prop_map(CTerm::cst),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(f, a)| CTerm::app(f, a))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// λx1…λxn t ⋆ ξ1·…·ξn·π reaches t[ξ1/x1, …, ξn/xn] ⋆ π.
    #[test]
    fn abstraction_reaches_the_substituted_body(t in arb_cterm(), n in 0usize..=3) {
        let xs = &VARS[..n];
        // Only the abstracted variables may occur.
        let t = VARS[n..].iter().fold(t, |t, x| t.substitute(x, &CTerm::cst("c")));
        let abs = xs.iter().rev().fold(t.clone(), |body, x| eliminate_abstraction(x, &body));
        prop_assert!(abs.vars().is_empty());
        let xis: Vec<CTerm> = (0..n).map(|i| CTerm::cst(&format!("ξ{i}"))).collect();
        let env: Vec<(&str, CTerm)> = xs.iter().copied().zip(xis.iter().cloned()).collect();
        let start = Process::with_args(abs, xis.clone(), "π");
        let target = Process::new(t.substitute_all(&env), Stack::empty("π"));
        let hit = run_until(start.clone(), 100_000, &mut FirstSeenCodec::new(), |q| *q == target);
        prop_assert!(hit.is_some(), "{start} never reaches {target}");
        prop_assert!(reaches(&start, &target, 100_000));
    }
}
