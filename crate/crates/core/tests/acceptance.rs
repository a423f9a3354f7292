//! One pass/fail line per acceptance criterion. Run with `--nocapture` to
//! see the report; the test fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use kamforce::arith::{self, fixpoint, numeral, storage_pair, zero, Contract};
use kamforce::balg::{
    application_case, check_chain, g_case, lifted_combinator_cases, run_j, translate,
};
use kamforce::corpus;
use kamforce::kam::{run, run_until, step, FirstSeenCodec, Process, Rule, StackCodec};
use kamforce::logic::{
    force, nd_check, parse_formula, parse_iterm, prop_structure, synth_chi, Derivation, Formula,
    ITerm, PropType,
};
use kamforce::pole::{survey, UniverseConfig};
use kamforce::term::{
    compile, eliminate_abstraction, parse_cterm, parse_stack, Atom, CTerm, LTerm, Stack,
};
use kamforce::wedge::{
    derived_table, format_chain, gamma_table, parse_wedge, synth_extend, synth_project, Wedge,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn proc(head: CTerm, items: impl IntoIterator<Item = CTerm>) -> Process {
    Process::with_args(head, items, "π0")
}

fn c(s: &str) -> CTerm {
    CTerm::cst(s)
}

fn machine_rules() -> Check {
    let start = Instant::now();
    let p = |h: &str, s: &str| Process::new(parse_cterm(h).unwrap(), parse_stack(s).unwrap());
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
    for (from, rule, to) in &cases {
        let got = step(from, &mut FirstSeenCodec::new()).map_err(|h| h.to_string())?;
        ensure(got == (*rule, to.clone()), || {
            format!("{from} gave {} {}", got.0, got.1)
        })?;
    }
    let mut codec = FirstSeenCodec::new();
    let (r, q) = step(&p("qt", "ξ.a.π"), &mut codec).map_err(|h| h.to_string())?;
    let mut want = parse_stack("a.π").unwrap();
    let n = codec.encode(&want);
    want.push(CTerm::Num(n));
    ensure(r == Rule::Qt && q == Process::new(c("ξ"), want), || {
        format!("qt gave {q}")
    })?;
    Ok(format!("12 rules, {}", within(start, Duration::from_secs(1))?))
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

fn abstraction_property() -> Check {
    let start = Instant::now();
    runner(1000)
        .run(&(arb_cterm(), 0usize..=3), |(t, n)| {
            let xs = &VARS[..n];
            let t = VARS[n..].iter().fold(t, |t, x| t.substitute(x, &c("c")));
            let abs = xs
                .iter()
                .rev()
                .fold(t.clone(), |b, x| eliminate_abstraction(x, &b));
            let xis: Vec<CTerm> = (0..n).map(|i| c(&format!("ξ{i}"))).collect();
            let env: Vec<(&str, CTerm)> = xs.iter().copied().zip(xis.iter().cloned()).collect();
            let target = Process::new(t.substitute_all(&env), Stack::empty("π"));
            let hit = run_until(
                Process::with_args(abs, xis, "π"),
                100_000,
                &mut FirstSeenCodec::new(),
                |q| *q == target,
            );
            prop_assert!(hit.is_some());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("1000 terms, {}", within(start, Duration::from_secs(30))?))
}

const NAMES: [&str; 3] = ["x", "y", "z"];

fn arb_lterm() -> impl Strategy<Value = LTerm> {
    let leaf = prop_oneof![
        4 => prop::sample::select(NAMES.to_vec()).prop_map(LTerm::var),
        1 => prop::sample::select(Atom::ELEMENTARY.to_vec()).prop_map(LTerm::Atom),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| LTerm::app(f, a)),
            (prop::sample::select(NAMES.to_vec()), inner).prop_map(|(x, b)| LTerm::lam(x, b)),
        ]
    })
}

fn substitution_property() -> Check {
    runner(1000)
        .run(
            &(arb_lterm(), arb_lterm(), prop::sample::select(NAMES.to_vec())),
            |(p, q, x)| {
                prop_assert_eq!(
                    compile(&p.subst(x, &q)),
                    compile(&p).substitute(x, &compile(&q))
                );
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;
    Ok("1000 triples".into())
}

fn fixpoint_and_storage() -> Check {
    let visits = |start: Process, states: &[Process]| -> Result<(), String> {
        let tr = run(start.clone(), 100_000, &mut FirstSeenCodec::new());
        match states.iter().find(|s| !tr.contains(s)) {
            Some(s) => Err(format!("{start} never visits {s}")),
            None => Ok(()),
        }
    };
    let y = fixpoint();
    visits(
        proc(y.clone(), [c("κ")]),
        &[proc(c("κ"), [CTerm::app(y, c("κ"))])],
    )?;
    let (t, s) = storage_pair();
    let phi = c("φ");
    for n in 0..=15u64 {
        let mut states = vec![proc(numeral(n), [s.clone(), phi.clone(), zero()])];
        for k in (0..n).rev() {
            let acc = CTerm::apps(numeral(k), [s.clone(), phi.clone()]);
            states.push(proc(s.clone(), [acc, numeral(n - 1 - k)]));
        }
        states.push(proc(phi.clone(), [numeral(n)]));
        visits(proc(t.clone(), [phi.clone(), numeral(n)]), &states)?;
        visits(
            proc(s.clone(), [c("ψ"), numeral(n)]),
            &[proc(c("ψ"), [numeral(n + 1)])],
        )?;
    }
    Ok("Y, T and S for n ≤ 15".into())
}

fn arithmetic() -> Check {
    let mut runs = 0;
    for e in arith::catalog() {
        let inputs: Vec<Vec<u64>> = match e.contract {
            Contract::Unary(_) => (0..=20).map(|m| vec![m]).collect(),
            Contract::Select { numerals: 1, .. } => (0..=8).map(|m| vec![m]).collect(),
            Contract::Binary(_) | Contract::Select { .. } => (0..=8)
                .flat_map(|m| (0..=8).map(move |n| vec![m, n]))
                .collect(),
        };
        for args in inputs {
            let got = e.evaluate(&args, 2_000_000).map(|r| r.0);
            ensure(got == Ok(e.expected(&args)), || {
                format!("{} on {args:?}: {got:?}", e.name)
            })?;
            runs += 1;
        }
    }
    Ok(format!("{} terms, {runs} runs", arith::catalog().len()))
}

const PRINTED_CHAINS: [(&str, &str); 5] = [
    ("β′0", "p∧q; β0; (p∧q)∧(p∧q); α0; p∧(q∧(p∧q)); α2; q∧(p∧q); β1; (p∧q)∧q"),
    ("β′2", "p∧(q∧r); β1; (q∧r)∧p; α0; q∧(r∧p); β1; (r∧p)∧q; α0; r∧(p∧q); β1; (p∧q)∧r"),
    (
        "β′1",
        "(p∧q)∧r; β1; r∧(p∧q); β′0; (r∧(p∧q))∧(p∧q); β′2; ((r∧(p∧q))∧p)∧q; β1; \
         q∧((r∧(p∧q))∧p); α2; (r∧(p∧q))∧p; α0; r∧((p∧q)∧p); β1; ((p∧q)∧p)∧r; β2; \
         (p∧(q∧p))∧r; α0; p∧((q∧p)∧r); α2; (q∧p)∧r",
    ),
    ("β3", "p∧(q∧r); β1; (q∧r)∧p; β′1; (r∧q)∧p; β1; p∧(r∧q)"),
    (
        "β′3",
        "(p∧(q∧r))∧s; β′1; ((q∧r)∧p)∧s; α0; (q∧r)∧(p∧s); β′1; (r∧q)∧(p∧s); β′2; \
         ((r∧q)∧p)∧s; β′1; (p∧(r∧q))∧s",
    ),
];

fn arb_wedge() -> impl Strategy<Value = Wedge> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "r", "s"]).prop_map(Wedge::var),
        1 => Just(Wedge::One),
    ];
    leaf.prop_recursive(4, 10, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Wedge::and(a, b))
    })
}

fn restrict(u: &Wedge, t: &Wedge) -> Wedge {
    let tv = t.vars();
    match u {
        Wedge::Var(x) if tv.contains(x) => u.clone(),
        Wedge::Var(_) => tv
            .iter()
            .next()
            .map_or(Wedge::One, |x| Wedge::Var(x.clone())),
        Wedge::One => Wedge::One,
        Wedge::And(a, b) => Wedge::and(restrict(a, t), restrict(b, t)),
    }
}

fn cexpr_calculus() -> Check {
    for (name, printed) in PRINTED_CHAINS {
        let d = derived_table()
            .iter()
            .find(|d| d.name == name)
            .ok_or(format!("no {name}"))?;
        let ch = d.expr.chain(&d.from).map_err(|e| e.to_string())?;
        let got = format_chain(&d.from, &ch);
        ensure(got == printed, || format!("{name}: {got}"))?;
    }
    for g in gamma_table() {
        let got = g.expr.apply_to(&g.from).map_err(|e| e.to_string())?;
        ensure(got == g.to, || format!("{} reaches {got}", g.name))?;
    }
    runner(1000)
        .run(&(arb_wedge(), arb_wedge()), |(t, u)| {
            let u = restrict(&u, &t);
            let ext = synth_extend(&t, &u).unwrap();
            prop_assert_eq!(ext.apply_to(&t).unwrap(), Wedge::and(t.clone(), u.clone()));
            prop_assert_eq!(synth_project(&t, &u).unwrap().apply_to(&t).unwrap(), u);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "5 printed chains, {} γ's, 1000 synthesized pairs",
        gamma_table().len()
    ))
}

fn lifted_chains() -> Check {
    let mut cases = lifted_combinator_cases();
    cases.push(application_case());
    let names: Vec<String> = cases.iter().map(|c| c.name.clone()).collect();
    for case in &cases {
        check_chain(case, 200_000).map_err(|e| e.to_string())?;
    }
    let w = cases.iter().find(|c| c.name == "W").ok_or("no W case")?;
    ensure(
        w.target_condition == parse_wedge("p^(q^(q^s))").unwrap(),
        || format!("W ends at {}", w.target_condition),
    )?;
    let e = cases.iter().find(|c| c.name == "E").ok_or("no E case")?;
    ensure(e.derived, || "E case should be marked derived".into())?;
    for n in 0..=6 {
        check_chain(&g_case(n), 200_000).map_err(|e| e.to_string())?;
        let want = translate(&numeral(n)).map_err(|e| e.to_string())?.term;
        ensure(run_j(n, 200_000) == Some(want), || format!("j on {n}"))?;
    }
    Ok(format!("{}, g and j for n ≤ 6", names.join(" ")))
}

fn forcing() -> Check {
    let f = |s: &str| parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"));
    let golden = [
        ("p", "X(t)", "forall q. (C[p ^ q] -> X+(q, t))"),
        ("p", "$X(t, u)", "forall q. (C[p ^ q] -> $X+(q, t, u))"),
        (
            "p",
            "X -> Y",
            "forall q. (forall r. (C[q ^ r] -> X+(r)) -> forall s. (C[(p ^ q) ^ s] -> Y+(s)))",
        ),
        ("p", "@R(x) -> X(x)", "@R(x) -> forall q. (C[p ^ q] -> X+(q, x))"),
        ("p", "f(x) = 0 |-> X", "f(x) = 0 |-> forall q. (C[p ^ q] -> X+(q))"),
        (
            "p",
            "forall x. X(x)",
            "forall x. forall q. (C[p ^ q] -> X+(q, x))",
        ),
        (
            "p",
            "forall2 X/1. X(y)",
            "forall2 X+/2. forall q. (C[p ^ q] -> X+(q, y))",
        ),
        ("q", "n eps p", "C[q ^ 1] -> n eps p"),
    ];
    for (cond, a, want) in golden {
        let got = force(&parse_iterm(cond).unwrap(), &f(a)).map_err(|e| e.to_string())?;
        ensure(got.alpha_eq(&f(want)), || format!("{cond} ⊩ {a} gave {got}"))?;
    }
    let g = f(
        "forall2 X/1. ((forall x. ((forall y. (f(x, y) = 0 |-> X(y))) -> X(x))) -> forall x. X(x))",
    );
    let ps = prop_structure(&g).to_string();
    ensure(ps == "(O→O)→O", || format!("structure {ps}"))?;

    // Pairs of formulas with one propositional structure, written two ways.
    fn render(t: &PropType, rng: &mut ChaCha8Rng, style: bool) -> String {
        match t {
            PropType::O if style => ["X(x)", "bot", "n eps p", "forall y. Y(y)"][rng.gen_range(0..4)].into(),
            PropType::O => ["Y(0)", "forall2 Z/0. Z", "$P(s(x))", "top"][rng.gen_range(0..4)].into(),
            PropType::Arrow(a, b) => {
                let (a, b) = (render(a, rng, style), render(b, rng, style));
                if style {
                    format!("({a} -> {b})")
                } else {
                    format!("forall z. ({a} -> {b})")
                }
            }
        }
    }
    fn arb_type(rng: &mut ChaCha8Rng, depth: u32) -> PropType {
        if depth == 0 || rng.gen_bool(0.3) {
            PropType::O
        } else {
            PropType::arrow(arb_type(rng, depth - 1), arb_type(rng, depth - 1))
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for _ in 0..50 {
        let t = arb_type(&mut rng, 4);
        let (a, b) = (render(&t, &mut rng, true), render(&t, &mut rng, false));
        let (fa, fb): (Formula, Formula) = (f(&a), f(&b));
        ensure(prop_structure(&fa) == t && prop_structure(&fb) == t, || {
            format!("structure of {a} or {b} is not {t}")
        })?;
        ensure(synth_chi(&fa) == synth_chi(&fb), || format!("χ differs on {a} and {b}"))?;
    }
    Ok("8 clauses, (O→O)→O example, 50 χ pairs".into())
}

fn pole_falsification() -> Check {
    let start = Instant::now();
    let tallies = survey(0..200, &UniverseConfig::default(), 100).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for t in &tallies {
        ensure(t.as_expected(), || match &t.first_failure {
            Some((seed, w)) => format!("{} fails at seed {seed}: {w}", t.name),
            None => format!("{} never fails", t.name),
        })?;
        if t.censored > 0 {
            notes.push(format!("{} censored {}", t.name, t.censored));
        }
    }
    let time = within(start, Duration::from_secs(300))?;
    Ok(format!(
        "200 universes × 100 trials, broken variant caught, {time}{}",
        if notes.is_empty() {
            String::new()
        } else {
            format!(", {}", notes.join(", "))
        }
    ))
}

fn corpus_replay() -> Check {
    let entries = corpus::catalog();
    for e in entries {
        ensure(e.compiled.is_closed() && e.stray_constants().is_empty(), || {
            format!("{} is not closed", e.name)
        })?;
    }
    let first = corpus::replay_all(200_000);
    let mut claims = 0;
    for r in &first {
        ensure(r.passed(), || {
            let bad = r.outcomes.iter().find(|o| o.result.is_err());
            format!("{}: {}", r.name, bad.map_or("open", |o| o.label.as_str()))
        })?;
        claims += r.outcomes.len();
    }
    let again = corpus::replay_all(200_000);
    let lines = |rs: &[corpus::Replay]| rs.iter().flat_map(|r| r.lines()).collect::<Vec<_>>();
    ensure(lines(&first) == lines(&again), || "report is not deterministic".into())?;
    let constructed = first.iter().filter(|r| r.outcomes.is_empty()).count();
    Ok(format!(
        "{} entries closed, {claims} claims replayed, {constructed} constructed only",
        entries.len()
    ))
}

fn natural_deduction() -> Check {
    let a = |x: &str| Formula::atom(x, vec![]);
    let f = |s: &str| parse_formula(s).unwrap();
    let k = Derivation::lam("x", a("A"), Derivation::lam("y", a("B"), Derivation::hyp("x")));
    let syl = |f1: &str, f2: &str| {
        Derivation::lam(
            "f",
            Formula::imp(a("A"), a("B")),
            Derivation::lam(
                "g",
                Formula::imp(a("B"), a("C")),
                Derivation::lam(
                    "a",
                    a("A"),
                    Derivation::app(
                        Derivation::hyp(f1),
                        Derivation::app(Derivation::hyp(f2), Derivation::hyp("a")),
                    ),
                ),
            ),
        )
    };
    let peirce = Derivation::Peirce { a: a("A"), b: a("B") };
    for (d, want) in [
        (&k, "A -> B -> A"),
        (&syl("g", "f"), "(A -> B) -> (B -> C) -> A -> C"),
        (&peirce, "((A -> B) -> A) -> A"),
    ] {
        let j = nd_check(&[], d).map_err(|e| e.to_string())?;
        ensure(j.conclusion.alpha_eq(&f(want)), || format!("{j}"))?;
    }
    let mutants = [
        Derivation::claim(
            f("A -> B -> A"),
            Derivation::lam("x", a("A"), Derivation::lam("y", a("B"), Derivation::hyp("y"))),
        ),
        syl("f", "g"),
        Derivation::lam("x", a("A"), Derivation::hyp("z")),
        Derivation::lam("h", f("X(y)"), Derivation::gen("y", Derivation::hyp("h"))),
        Derivation::lam(
            "h",
            Formula::imp(a("A"), a("B")),
            Derivation::inst_ind(ITerm::Zero, Derivation::hyp("h")),
        ),
    ];
    for (i, d) in mutants.iter().enumerate() {
        ensure(nd_check(&[], d).is_err(), || format!("mutant {i} accepted"))?;
    }
    Ok("3 accepted, 5 mutants rejected".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("machine rules", machine_rules),
        ("abstraction reaches the substituted body", abstraction_property),
        ("compilation commutes with substitution", substitution_property),
        ("fixpoint and storage chains", fixpoint_and_storage),
        ("arithmetic catalog", arithmetic),
        ("C-expression calculus", cexpr_calculus),
        ("lifted chains", lifted_chains),
        ("forcing transform", forcing),
        ("pole falsification", pole_falsification),
        ("corpus", corpus_replay),
        ("natural deduction", natural_deduction),
    ];
    let mut failed = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(why) => {
                println!("criterion {n:>2} FAIL  {title}: {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
