use std::collections::BTreeMap;
use std::time::Instant;

use kamforce::kam::Process;
use kamforce::logic::parse_formula;
use kamforce::pole::{
    check_eq_props, falsify, falsity_value, replay_counterexample, Env, Interp, Membership,
    Universe, UniverseConfig, Verdict, CLAIMS,
};
use kamforce::term::{Atom, CTerm, Stack};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const UNIVERSES: u64 = 60;
const TRIALS: usize = 100;

#[test]
fn claims_hold_and_broken_variant_fails() {
    let start = Instant::now();
    let cfg = UniverseConfig::default();
    let mut clean: BTreeMap<&str, usize> = BTreeMap::new();
    let mut trials: BTreeMap<&str, usize> = BTreeMap::new();
    let mut censored: BTreeMap<&str, usize> = BTreeMap::new();
    let mut broken = None;
    for seed in 0..UNIVERSES {
        let u = Universe::generate(seed, &cfg);
        for c in check_eq_props(&u, TRIALS).unwrap() {
            *trials.entry(c.name).or_default() += c.trials();
            *censored.entry(c.name).or_default() += c.censored();
            if c.is_clean() {
                *clean.entry(c.name).or_default() += 1;
            } else if c.name == "peirce-with-K" {
                if let Some(Verdict::Counterexample { witness, .. }) = c.first_counterexample() {
                    assert!(replay_counterexample(&u, witness));
                    broken.get_or_insert((seed, witness.clone()));
                }
            } else {
                panic!(
                    "seed {seed}: {} fails: {}",
                    c.name,
                    c.first_counterexample().unwrap()
                );
            }
        }
    }
    for name in CLAIMS {
        println!(
            "{name}: clean in {}/{UNIVERSES} universes, {} trials, {} censored",
            clean.get(name).copied().unwrap_or(0),
            trials.get(name).copied().unwrap_or(0),
            censored.get(name).copied().unwrap_or(0)
        );
    }
    let (seed, w) = broken.expect("K in place of cc never failed");
    println!("broken Peirce realizer fails at seed {seed}: {w}");
    println!("elapsed {:?}", start.elapsed());
}

fn tiny() -> Universe {
    Universe::generate(7, &UniverseConfig::default())
}

#[test]
fn k_fails_on_identity_law() {
    // ∥X∥ = {π0}, pole = {c0 ⋆ π0}: c0 ⊩ X, and K ⋆ c0·π0 gets stuck.
    let mut u = tiny();
    let pi0 = Stack::empty("π0");
    let ix = u.stacks.iter().position(|s| *s == pi0).unwrap();
    u.values.push(vec![ix]);
    let v = u.values.len() - 1;
    u.targets = [Process::new(CTerm::cst("c0"), pi0.clone())]
        .into_iter()
        .collect();
    let env = Env::default().with_pred("X", Interp::constant(0, u.individuals, v));
    let f = parse_formula("X -> X").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let verdict = falsify(&Atom::K.into(), &f, &env, &u, 100, &mut rng).unwrap();
    match &verdict {
        Verdict::Counterexample { witness, .. } => {
            assert_eq!(witness.head, CTerm::from(Atom::K));
            assert!(replay_counterexample(&u, witness));
        }
        other => panic!("{other}"),
    }
    assert!(falsify(&Atom::I.into(), &f, &env, &u, 100, &mut rng)
        .unwrap()
        .is_clean());
}

#[test]
fn maps_semantics() {
    let u = tiny();
    let env = Env::default().with_pred("X", Interp::constant(0, u.individuals, 1));
    let x = falsity_value(&parse_formula("X").unwrap(), &env, &u).unwrap();
    for d in 0..u.individuals {
        let env = env.clone().with_ind("x", d);
        let maps = falsity_value(&parse_formula("@R(x) |-> X").unwrap(), &env, &u).unwrap();
        let has_i = u.rels["R"][&vec![d]].contains(&Atom::I.into());
        if has_i {
            assert_eq!(maps, x);
        } else {
            assert!(maps.is_empty());
        }
    }
}

#[test]
fn eq_maps_semantics() {
    let u = tiny();
    let env = Env::default().with_pred("X", Interp::constant(0, u.individuals, 1));
    let x = falsity_value(&parse_formula("X").unwrap(), &env, &u).unwrap();
    let f = parse_formula("x = y |-> X").unwrap();
    for a in 0..u.individuals {
        for b in 0..u.individuals {
            let env = env.clone().with_ind("x", a).with_ind("y", b);
            let got = falsity_value(&f, &env, &u).unwrap();
            assert_eq!(got.is_empty(), a != b);
            if a == b {
                assert_eq!(got, x);
            }
        }
    }
}

#[test]
fn bottom_is_every_stack() {
    let u = tiny();
    let mut got = falsity_value(&parse_formula("bot").unwrap(), &Env::default(), &u).unwrap();
    let mut all = u.stacks.clone();
    got.sort_by_key(|s| s.to_string());
    all.sort_by_key(|s| s.to_string());
    assert_eq!(got, all);
}

/// Predecessors of `p` by one reverse step of push, I, K, or E.
/// `E ⋆ t·u·π ≻ tu ⋆ π` only applies when the head is an application.
fn predecessors(p: &Process, rng: &mut impl Rng) -> Vec<Process> {
    let mut out = Vec::new();
    let mut s = p.stack.clone();
    if let Some(a) = s.pop() {
        out.push(Process::new(CTerm::app(p.head.clone(), a), s));
    }
    let mut s = p.stack.clone();
    s.push(p.head.clone());
    out.push(Process::new(Atom::I.into(), s));
    let mut with_junk = p.stack.clone();
    with_junk.push(CTerm::cst(if rng.gen_bool(0.5) { "c0" } else { "c1" }));
    with_junk.push(p.head.clone());
    out.push(Process::new(Atom::K.into(), with_junk));
    if let CTerm::App(t, u) = &p.head {
        let mut s = p.stack.clone();
        s.push((**u).clone());
        s.push((**t).clone());
        out.push(Process::new(Atom::E.into(), s));
    }
    out
}

#[test]
fn pole_is_saturated() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    let mut seed = 0;
    while checked < 1000 {
        let u = Universe::generate(seed, &UniverseConfig::default());
        seed += 1;
        for t in &u.pool {
            for s in &u.stacks {
                let p = Process::new(t.clone(), s.clone());
                if u.membership(&p) != Membership::In {
                    continue;
                }
                for q in predecessors(&p, &mut rng) {
                    assert!(u.in_pole(&q), "{q} precedes {p} but is outside the pole");
                }
                checked += 1;
            }
        }
    }
}

#[test]
fn verdicts_are_deterministic() {
    let run = || {
        let u = Universe::generate(42, &UniverseConfig::default());
        check_eq_props(&u, 50)
            .unwrap()
            .into_iter()
            .map(|c| format!("{} {:?}", c.name, c.verdicts))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
