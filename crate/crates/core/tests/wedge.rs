use kamforce::wedge::{
    apply_cexpr, decode_spine, derived_table, format_chain, gamma_table, synth_extend,
    synth_project, Certificate, Wedge,
};
use kamforce::term::CTerm;
use proptest::prelude::*;

/// The five derived expressions with their transformation chains as
/// printed alongside their definitions.
const PRINTED: [(&str, &str); 5] = [
    (
        "β′0",
        "p∧q; β0; (p∧q)∧(p∧q); α0; p∧(q∧(p∧q)); α2; q∧(p∧q); β1; (p∧q)∧q",
    ),
    (
        "β′2",
        "p∧(q∧r); β1; (q∧r)∧p; α0; q∧(r∧p); β1; (r∧p)∧q; α0; r∧(p∧q); β1; (p∧q)∧r",
    ),
    (
        "β′1",
        "(p∧q)∧r; β1; r∧(p∧q); β′0; (r∧(p∧q))∧(p∧q); β′2; ((r∧(p∧q))∧p)∧q; β1; \
         q∧((r∧(p∧q))∧p); α2; (r∧(p∧q))∧p; α0; r∧((p∧q)∧p); β1; ((p∧q)∧p)∧r; β2; \
         (p∧(q∧p))∧r; α0; p∧((q∧p)∧r); α2; (q∧p)∧r",
    ),
    (
        "β3",
        "p∧(q∧r); β1; (q∧r)∧p; β′1; (r∧q)∧p; β1; p∧(r∧q)",
    ),
    (
        "β′3",
        "(p∧(q∧r))∧s; β′1; ((q∧r)∧p)∧s; α0; (q∧r)∧(p∧s); β′1; (r∧q)∧(p∧s); β′2; \
         ((r∧q)∧p)∧s; β′1; (p∧(r∧q))∧s",
    ),
];

#[test]
fn derived_expressions_reproduce_printed_chains() {
    for (name, printed) in PRINTED {
        let d = derived_table().iter().find(|d| d.name == name).unwrap();
        let chain = d.expr.chain(&d.from).unwrap();
        assert_eq!(format_chain(&d.from, &chain), printed, "{name}");
        assert_eq!(chain.last().unwrap().1, d.to, "{name}");
    }
}

#[test]
fn gamma_table_meets_its_specifications() {
    let names: Vec<&str> = gamma_table().iter().map(|g| g.name).collect();
    assert_eq!(names, ["γ0", "γI", "γK", "γE", "γW", "γC", "γB", "γcc", "γk"]);
    for g in gamma_table() {
        assert_eq!(g.expr.apply_to(&g.from).unwrap(), g.to, "{}", g.name);
        // The machine-level spine replays to the same condition.
        let t = g.expr.apply_term(CTerm::cst("τ"));
        let (spine, base) = decode_spine(&t);
        assert_eq!(base, CTerm::cst("τ"));
        let cert = apply_cexpr(
            &kamforce::wedge::CExpr::prims(&spine),
            &Certificate::new(g.from.clone()),
        )
        .unwrap();
        assert_eq!(cert.condition, g.to, "{}", g.name);
    }
}

#[test]
fn missing_variables_are_rejected() {
    let t = kamforce::wedge::parse_wedge("p^q").unwrap();
    let u = kamforce::wedge::parse_wedge("p^r").unwrap();
    assert!(synth_project(&t, &u).is_err());
}

fn arb_wedge(vars: &'static [&'static str]) -> impl Strategy<Value = Wedge> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vars.to_vec()).prop_map(Wedge::var),
        1 => Just(Wedge::One),
    ];
    leaf.prop_recursive(4, 10, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Wedge::and(a, b))
    })
}

/// Replaces variables of `u` missing from `t` by a variable of `t`, or by
/// `1` when `t` has none.
fn restrict(u: &Wedge, t: &Wedge) -> Wedge {
    let tv = t.vars();
    match u {
        Wedge::Var(x) if tv.contains(x) => u.clone(),
        Wedge::Var(_) => tv.iter().next().map_or(Wedge::One, |x| Wedge::Var(x.clone())),
        Wedge::One => Wedge::One,
        Wedge::And(a, b) => Wedge::and(restrict(a, t), restrict(b, t)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn synthesis_is_sound(t in arb_wedge(&["p", "q", "r", "s"]), u in arb_wedge(&["p", "q", "r", "s"])) {
        let u = restrict(&u, &t);
        let ext = synth_extend(&t, &u).unwrap();
        prop_assert_eq!(ext.apply_to(&t).unwrap(), Wedge::and(t.clone(), u.clone()));
        let g = synth_project(&t, &u).unwrap();
        prop_assert_eq!(g.apply_to(&t).unwrap(), u.clone());
        let cert = apply_cexpr(&g, &Certificate::new(t.clone())).unwrap();
        prop_assert_eq!(cert.condition, u);
    }
}
