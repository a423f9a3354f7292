use kamforce::corpus::{catalog, replay, replay_all, CorpusError};

const BUDGET: usize = 200_000;

#[test]
fn every_claim_replays() {
    let mut failed = Vec::new();
    for r in replay_all(BUDGET) {
        for l in r.lines() {
            println!("{l}");
        }
        for o in &r.outcomes {
            if let Err(tail) = &o.result {
                failed.push(format!("{} / {}\n  {}", r.name, o.label, tail.join("\n  ")));
            }
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn entries_are_closed_with_no_stray_constants() {
    for e in catalog() {
        assert!(e.compiled.is_closed(), "{} has free variables", e.name);
        assert!(e.stray_constants().is_empty(), "{}: {:?}", e.name, e.stray_constants());
    }
}

#[test]
fn report_is_deterministic() {
    let a = replay("T", BUDGET).unwrap().lines();
    let b = replay("T", BUDGET).unwrap().lines();
    assert_eq!(a, b);
    assert!(matches!(replay("missing", 1), Err(CorpusError::Unknown(_))));
}

#[test]
fn entries_agree_with_the_library_terms() {
    use kamforce::arith::{fixpoint, storage_pair, zero};
    use kamforce::balg::lifted_storage;
    use kamforce::corpus::entry;
    use kamforce::wedge::{lift, parse_wedge, synth_project};

    let th = lifted_storage();
    let (t, s) = storage_pair();
    let get = |n: &str| entry(n).unwrap().compiled.clone();
    assert_eq!(get("Y"), fixpoint());
    assert_eq!(get("T"), t);
    assert_eq!(get("S"), s);
    assert_eq!(get("zero"), zero());
    assert_eq!(get("S-lifted"), th.s);
    assert_eq!(get("T-lifted"), th.t);
    assert_eq!(get("g"), th.g);
    assert_eq!(get("U"), th.u);
    assert_eq!(get("j"), th.j);
    assert_eq!(get("J"), th.big_j);
    assert_eq!(get("ideal-proper"), lift(&synth_project(&parse_wedge("1^(p^q)").unwrap(), &parse_wedge("p^1").unwrap()).unwrap()));
}

#[test]
fn extraction_rejects_open_inputs() {
    use kamforce::corpus::build_extraction;
    use kamforce::term::CTerm;
    let k = CTerm::cst("k");
    let open = CTerm::var("x");
    assert!(matches!(
        build_extraction(&open, &k, &k, &k, &k, &k),
        Err(CorpusError::Open(_))
    ));
}
