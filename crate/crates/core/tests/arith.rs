use kamforce::arith::{catalog, Contract, Outcome};

#[test]
fn every_catalog_term_meets_its_contract() {
    for e in catalog() {
        let inputs: Vec<Vec<u64>> = match e.contract {
            Contract::Unary(_) => (0..=20).map(|m| vec![m]).collect(),
            Contract::Binary(_) => (0..=8)
                .flat_map(|m| (0..=8).map(move |n| vec![m, n]))
                .collect(),
            Contract::Select { numerals: 1, .. } => (0..=8).map(|m| vec![m]).collect(),
            Contract::Select { .. } => (0..=8)
                .flat_map(|m| (0..=8).map(move |n| vec![m, n]))
                .collect(),
        };
        for args in inputs {
            let got = e.evaluate(&args, 2_000_000).map(|r| r.0);
            assert_eq!(got, Ok(e.expected(&args)), "{} on {:?}", e.name, args);
        }
    }
}

#[test]
fn double_of_three_is_six() {
    let d0 = kamforce::arith::arith_entry("double").unwrap();
    assert_eq!(d0.evaluate(&[3], 10_000).unwrap().0, Outcome::Value(6));
}

mod chains {
    use kamforce::arith::{fixpoint, numeral, storage_pair, zero};
    use kamforce::kam::{run, FirstSeenCodec, Process};
    use kamforce::term::CTerm;

    fn c(s: &str) -> CTerm {
        CTerm::cst(s)
    }

    fn proc(head: CTerm, items: impl IntoIterator<Item = CTerm>) -> Process {
        Process::with_args(head, items, "π0")
    }

    fn visits(start: Process, states: &[Process]) {
        let tr = run(start.clone(), 100_000, &mut FirstSeenCodec::new());
        for s in states {
            assert!(tr.contains(s), "{start} never visits {s}");
        }
    }

    #[test]
    fn fixpoint_unfolds() {
        let y = fixpoint();
        assert!(matches!(y, CTerm::App(..)));
        let target = proc(c("κ"), [CTerm::app(y.clone(), c("κ"))]);
        visits(proc(y.clone(), [c("κ")]), &[target.clone()]);
        visits(proc(CTerm::app(y, c("κ")), []), &[target]);
    }

    #[test]
    fn storage_chains() {
        let (t, s) = storage_pair();
        let phi = c("φ");
        for n in 0..=15u64 {
            let mut states = vec![proc(numeral(n), [s.clone(), phi.clone(), zero()])];
            for k in (0..n).rev() {
                let acc = CTerm::apps(numeral(k), [s.clone(), phi.clone()]);
                states.push(proc(s.clone(), [acc, numeral(n - 1 - k)]));
            }
            states.push(proc(phi.clone(), [numeral(n)]));
            visits(proc(t.clone(), [phi.clone(), numeral(n)]), &states);
        }
    }

    #[test]
    fn successor_step() {
        let (_, s) = storage_pair();
        for n in 0..=15u64 {
            visits(
                proc(s.clone(), [c("ψ"), numeral(n)]),
                &[proc(c("ψ"), [numeral(n + 1)])],
            );
        }
        let sigma = kamforce::arith::sigma();
        visits(
            proc(s, [c("ξ"), c("η")]),
            &[proc(c("ξ"), [CTerm::app(sigma, c("η"))])],
        );
    }

    #[test]
    fn storage_of_a_numeral_literal() {
        let (t, _) = storage_pair();
        visits(
            proc(t, [c("κ"), CTerm::Num(3)]),
            &[proc(c("κ"), [numeral(3)])],
        );
    }
}
