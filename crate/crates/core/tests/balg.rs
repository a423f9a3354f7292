use kamforce::arith::numeral;
use kamforce::balg::{
    check_chain, g_case, run_j, storage_s_case, storage_t_case, lifted_combinator_cases, translate,
};
use kamforce::wedge::parse_wedge;

#[test]
fn lifted_combinator_chains() {
    for case in lifted_combinator_cases() {
        let r = check_chain(&case, 50_000).unwrap_or_else(|e| panic!("{e}"));
        println!("{} {}", case.name, r.steps);
    }
}

#[test]
fn w_case_condition() {
    let w = lifted_combinator_cases().into_iter().find(|c| c.name == "W").unwrap();
    let r = check_chain(&w, 50_000).unwrap();
    assert_eq!(r.condition, parse_wedge("p^(q^(q^s))").unwrap());
}

#[test]
fn wrong_target_condition_is_reported() {
    let mut k = lifted_combinator_cases().into_iter().find(|c| c.name == "K").unwrap();
    k.target_condition = parse_wedge("s^p").unwrap();
    assert!(check_chain(&k, 50_000).is_err());
}

#[test]
fn storage_chains() {
    for n in 0..=10 {
        check_chain(&storage_s_case(n), 50_000).unwrap_or_else(|e| panic!("{e}"));
    }
    check_chain(&storage_t_case(), 50_000).unwrap_or_else(|e| panic!("{e}"));
}

#[test]
fn g_moves_the_numeral_into_the_condition() {
    for n in 0..=6 {
        check_chain(&g_case(n), 200_000).unwrap_or_else(|e| panic!("{e}"));
    }
}

#[test]
fn j_produces_the_translated_numeral() {
    for n in 0..=6 {
        let got = run_j(n, 200_000).expect("j reaches ξ");
        assert_eq!(got, translate(&numeral(n)).unwrap().term, "n = {n}");
    }
}
