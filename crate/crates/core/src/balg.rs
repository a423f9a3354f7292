//! The lifted algebra: pairs `(ξ, p)` of a term and a condition, starred
//! combinators, the translation `t ↦ (t*, 1_t)`, and replay of the lifted
//! reduction chains on the ordinary machine.
//!
//! A lifted process `(ξ ⋆ π, p)` is executed as `ξ ⋆ π^τ` where `τ` is an
//! opaque constant standing for a witness of `C[p]`. Condition-transformers
//! only ever act on the bottom item, so after a run the bottom holds a
//! primitive spine `(δ0)…(δk)τ` which the certificate layer replays on `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::{numeral, sigma, zero};
use crate::kam::{run_until, FirstSeenCodec, Process};
use crate::term::{lam, Atom, CTerm, Stack};
use crate::wedge::{
    alpha0_bar, apply_cexpr, closed, decode_spine, gamma, lift, spine_src, synth_project, w, CExpr,
    CPrim, Certificate, Wedge, WedgeError,
};

/// The name of the certificate constant placed at the bottom of stacks.
pub const TAU: &str = "τ";

/// A pair `(ξ, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BTerm {
    pub term: CTerm,
    pub condition: Wedge,
}

impl fmt::Display for BTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.term, self.condition)
    }
}

/// `(ξ, p)(η, q) = (ᾱ0ξη, p∧q)`.
pub fn b_apply(f: &BTerm, a: &BTerm) -> BTerm {
    BTerm {
        term: CTerm::apps(alpha0_bar(), [f.term.clone(), a.term.clone()]),
        condition: Wedge::and(f.condition.clone(), a.condition.clone()),
    }
}

/// A lifted process `(ξ ⋆ π, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BProcess {
    pub term: CTerm,
    pub stack: Stack,
    pub condition: Wedge,
}

impl BProcess {
    /// `ξ ⋆ π^τ`.
    pub fn executable(&self, tau: CTerm) -> Process {
        Process::new(self.term.clone(), self.stack.with_bottom(tau))
    }
}

/// `(χ)λxλy(k)(χ′y)(γk)x`, with `k` left free.
fn k_star_src() -> String {
    format!("(rd) \\x \\y (k) (wr y) {}", spine_src(gamma("γk"), "x"))
}

fn build_stars() -> BTreeMap<Atom, CTerm> {
    let a0 = ("a0", alpha0_bar());
    let lg = |n: &str| lift(gamma(n));
    let mut m = BTreeMap::new();
    m.insert(
        Atom::B,
        closed(
            "\\x \\y \\z (gB) (a0 x) (a0) y z",
            &[("gB", lg("γB")), a0.clone()],
        ),
    );
    m.insert(Atom::C, CTerm::app(lg("γC"), Atom::C.into()));
    m.insert(
        Atom::E,
        closed("\\x \\y (gE) (a0) x y", &[("gE", lg("γE")), a0]),
    );
    m.insert(Atom::I, CTerm::app(lg("γI"), Atom::I.into()));
    m.insert(Atom::K, CTerm::app(lg("γK"), Atom::K.into()));
    m.insert(Atom::W, CTerm::app(lg("γW"), Atom::W.into()));
    let cc = format!(
        "(rd) \\x \\y (cc) \\k ((wr y) {}) {}",
        spine_src(gamma("γcc"), "x"),
        k_star_src()
    );
    m.insert(Atom::Cc, closed(&cc, &[]));
    m
}

fn stars() -> &'static BTreeMap<Atom, CTerm> {
    static T: OnceLock<BTreeMap<Atom, CTerm>> = OnceLock::new();
    T.get_or_init(build_stars)
}

/// `B*, C*, E*, I*, K*, W*, cc*`. `None` for ς, χ, χ′.
pub fn star(a: Atom) -> Option<CTerm> {
    stars().get(&a).cloned()
}

/// `k*_π = (χ)λxλy(k_π)(χ′y)(γk)x`.
pub fn k_star(pi: &Stack) -> CTerm {
    closed(&k_star_src(), &[("k", CTerm::cont(pi.clone()))])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalgError {
    #[error("{0} has no lifted counterpart")]
    OutsideFragment(String),
    #[error("chain {case}: machine did not reach {expected} (last state {last})")]
    Unreached {
        case: String,
        expected: String,
        last: String,
    },
    #[error("chain {case}: bottom item {found} is not a primitive spine over {TAU}")]
    BadBottom { case: String, found: String },
    #[error("chain {case}: certificate replay failed: {source}")]
    Certificate { case: String, source: WedgeError },
    #[error("chain {case}: condition is {found}, expected {expected}")]
    Condition {
        case: String,
        found: Wedge,
        expected: Wedge,
    },
    #[error("chain {case}: bottom spine is {found}, expected {expected}")]
    Spine {
        case: String,
        found: String,
        expected: String,
    },
}

/// `t_B = (t*, 1_t)`. Numeral literals are expanded first.
pub fn translate(t: &CTerm) -> Result<BTerm, BalgError> {
    match t {
        CTerm::Atom(a) => star(*a)
            .map(|term| BTerm {
                term,
                condition: Wedge::One,
            })
            .ok_or_else(|| BalgError::OutsideFragment(a.spelling().to_string())),
        CTerm::App(f, a) => Ok(b_apply(&translate(f)?, &translate(a)?)),
        CTerm::Num(n) => translate(&numeral(*n)),
        other => Err(BalgError::OutsideFragment(other.to_string())),
    }
}

/// `1_t` alone.
pub fn unit_condition(t: &CTerm) -> Result<Wedge, BalgError> {
    translate(t).map(|b| b.condition)
}

/// An operational claim about a lifted process: starting from `start`
/// with a witness of `start_condition` at the bottom, the machine reaches
/// `target` (given without its bottom item), whose bottom then carries
/// a witness of `target_condition`.
#[derive(Clone, Debug)]
pub struct ChainCase {
    pub name: String,
    pub start: BProcess,
    pub target_head: CTerm,
    pub target_stack: Stack,
    pub target_condition: Wedge,
    /// The C-expression expected at the bottom, when the claim names one.
    pub expected_spine: Option<CExpr>,
    /// Whether the expected target comes from the claim's statement or was
    /// worked out from the definitions.
    pub derived: bool,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub name: String,
    pub steps: usize,
    pub reached: Process,
    pub spine: Vec<CPrim>,
    pub condition: Wedge,
}

/// Runs a chain case and replays the certificate found at the bottom.
pub fn check_chain(case: &ChainCase, budget: usize) -> Result<ChainReport, BalgError> {
    let tau = CTerm::cst(TAU);
    let p = case.start.executable(tau.clone());
    let mut last = p.clone();
    let found = run_until(p, budget, &mut FirstSeenCodec::new(), |q| {
        last = q.clone();
        q.head == case.target_head
            && q.stack
                .split_bottom()
                .is_some_and(|(rest, _)| rest == case.target_stack)
    });
    let (steps, reached) = found.ok_or_else(|| BalgError::Unreached {
        case: case.name.clone(),
        expected: format!("{} ⋆ {}^τ", case.target_head, case.target_stack),
        last: last.to_string(),
    })?;
    let bottom = reached
        .stack
        .bottom()
        .expect("matched with a bottom item")
        .clone();
    let (spine, base) = decode_spine(&bottom);
    if base != tau {
        return Err(BalgError::BadBottom {
            case: case.name.clone(),
            found: bottom.to_string(),
        });
    }
    let cert = apply_cexpr(
        &CExpr::prims(&spine),
        &Certificate::new(case.start.condition.clone()),
    )
    .map_err(|source| BalgError::Certificate {
        case: case.name.clone(),
        source,
    })?;
    if let Some(g) = &case.expected_spine {
        if g.flatten() != spine {
            return Err(BalgError::Spine {
                case: case.name.clone(),
                found: CExpr::prims(&spine).to_string(),
                expected: CExpr::prims(&g.flatten()).to_string(),
            });
        }
    }
    if cert.condition != case.target_condition {
        return Err(BalgError::Condition {
            case: case.name.clone(),
            found: cert.condition,
            expected: case.target_condition.clone(),
        });
    }
    Ok(ChainReport {
        name: case.name.clone(),
        steps,
        reached,
        spine,
        condition: cert.condition,
    })
}

fn c(s: &str) -> CTerm {
    CTerm::cst(s)
}

/// The stack `π` used by the lifted chains: one item over `π0`.
pub fn sample_pi() -> Stack {
    Stack::new([c("ρ")], "π0")
}

fn with_items(items: &[CTerm], base: &Stack) -> Stack {
    let mut s = base.clone();
    for t in items.iter().rev() {
        s.push(t.clone());
    }
    s
}

/// The lifted-combinator chains, one per starred combinator plus `k*_π`.
pub fn lifted_combinator_cases() -> Vec<ChainCase> {
    let pi = sample_pi();
    let (xi, eta, zeta) = (c("ξ"), c("η"), c("ζ"));
    let a0 = alpha0_bar();
    let st = |a: Atom| star(a).expect("elementary");
    let case = |name: &str,
                head: CTerm,
                args: Vec<CTerm>,
                from: &str,
                th: CTerm,
                ts: Vec<CTerm>,
                to: &str,
                g: &str,
                derived: bool| ChainCase {
        name: name.to_string(),
        start: BProcess {
            term: head,
            stack: with_items(&args, &pi),
            condition: w(from),
        },
        target_head: th,
        target_stack: with_items(&ts, &pi),
        target_condition: w(to),
        expected_spine: Some(gamma(g).clone()),
        derived,
    };
    let mut out = vec![
        case(
            "I",
            st(Atom::I),
            vec![xi.clone()],
            "1^(p^s)",
            xi.clone(),
            vec![],
            "p^s",
            "γI",
            false,
        ),
        case(
            "K",
            st(Atom::K),
            vec![xi.clone(), eta.clone()],
            "1^(p^(q^s))",
            xi.clone(),
            vec![],
            "p^s",
            "γK",
            false,
        ),
        case(
            "E",
            st(Atom::E),
            vec![xi.clone(), eta.clone()],
            "1^(p^(q^s))",
            CTerm::apps(a0.clone(), [xi.clone(), eta.clone()]),
            vec![],
            "(p^q)^s",
            "γE",
            true,
        ),
        case(
            "W",
            st(Atom::W),
            vec![xi.clone(), eta.clone()],
            "1^(p^(q^s))",
            xi.clone(),
            vec![eta.clone(), eta.clone()],
            "p^(q^(q^s))",
            "γW",
            false,
        ),
        case(
            "C",
            st(Atom::C),
            vec![xi.clone(), eta.clone(), zeta.clone()],
            "1^(p^(q^(r^s)))",
            xi.clone(),
            vec![zeta.clone(), eta.clone()],
            "p^(r^(q^s))",
            "γC",
            false,
        ),
        case(
            "B",
            st(Atom::B),
            vec![xi.clone(), eta.clone(), zeta.clone()],
            "1^(p^(q^(r^s)))",
            CTerm::apps(
                a0.clone(),
                [xi.clone(), CTerm::apps(a0, [eta.clone(), zeta.clone()])],
            ),
            vec![],
            "(p^(q^r))^s",
            "γB",
            false,
        ),
        case(
            "cc",
            st(Atom::Cc),
            vec![xi.clone()],
            "1^(p^s)",
            xi.clone(),
            vec![k_star(&pi)],
            "p^(s^s)",
            "γcc",
            false,
        ),
    ];
    let omega = Stack::new([c("ω1")], "ω0");
    out.push(ChainCase {
        name: "k".to_string(),
        start: BProcess {
            term: k_star(&pi),
            stack: with_items(&[xi.clone()], &omega),
            condition: w("s^(p^q)"),
        },
        target_head: xi,
        target_stack: pi,
        target_condition: w("p^s"),
        expected_spine: Some(gamma("γk").clone()),
        derived: false,
    });
    out
}

/// `ᾱ0ξη ⋆ π^τ` with `τ : (p∧q)∧r` reaches `ξ ⋆ η·π^{α0τ}`.
pub fn application_case() -> ChainCase {
    let pi = sample_pi();
    ChainCase {
        name: "ᾱ0".to_string(),
        start: BProcess {
            term: CTerm::apps(alpha0_bar(), [c("ξ"), c("η")]),
            stack: pi.clone(),
            condition: w("(p^q)^r"),
        },
        target_head: c("ξ"),
        target_stack: with_items(&[c("η")], &pi),
        target_condition: w("p^(q^r)"),
        expected_spine: Some(CExpr::prims(&[CPrim::A0])),
        derived: false,
    }
}

/// The storage and numeral-transfer terms of the lifted model.
#[derive(Clone, Debug)]
pub struct LiftedStorage {
    /// `S = λfλx(γ̄f)(σ)x`.
    pub s: CTerm,
    /// `T = λfλx(γ̄′x)Sf0̄`.
    pub t: CTerm,
    /// `g = λkλx(γ̄0)(k)γ̄x`.
    pub g: CTerm,
    /// `U = λgλy(g)(β)y` with `β = ᾱ0σ*`.
    pub u: CTerm,
    /// `j = λkλf(k)Uf0̄*`.
    pub j: CTerm,
    /// `J = λx(gx)(j)x`.
    pub big_j: CTerm,
    pub gamma_s: CExpr,
    pub gamma_t: CExpr,
    pub gamma_g0: CExpr,
    pub gamma_g: CExpr,
}

fn synth(from: &Wedge, to: &Wedge) -> CExpr {
    synth_project(from, to).unwrap_or_else(|e| panic!("{from} ⇒ {to}: {e}"))
}

fn build_lifted_storage() -> LiftedStorage {
    let gamma_s = synth(&w("1^(p^(q^r))"), &w("p^(q^r)"));
    let gamma_t = synth(&w("1^(p^(q^r))"), &w("q^(1^(p^(1^r)))"));
    let gamma_g0 = synth(&w("1^(1^q)"), &w("(1^1)^q"));
    let one_sigma = unit_condition(&sigma()).expect("σ is elementary");
    let gamma_g = synth(
        &w("p^q"),
        &Wedge::and(Wedge::and(one_sigma, Wedge::var("p")), Wedge::var("q")),
    );
    let s = lam(
        "\\f \\x (gs f) (s) x",
        &[("gs", lift(&gamma_s)), ("s", sigma())],
    );
    let t = lam(
        "\\f \\x (gt x) S f zero",
        &[("gt", lift(&gamma_t)), ("S", s.clone()), ("zero", zero())],
    );
    let g = lam(
        "\\k \\x (g0) (k) gg x",
        &[("g0", lift(&gamma_g0)), ("gg", lift(&gamma_g))],
    );
    let sigma_star = translate(&sigma()).expect("σ is elementary").term;
    let beta = CTerm::app(alpha0_bar(), sigma_star);
    let u = lam("\\g \\y (g) (beta) y", &[("beta", beta)]);
    let zero_star = translate(&zero()).expect("0̄ is elementary").term;
    let j = lam("\\k \\f (k) U f zs", &[("U", u.clone()), ("zs", zero_star)]);
    let big_j = lam("\\x (gg x) (jj) x", &[("gg", g.clone()), ("jj", j.clone())]);
    LiftedStorage {
        s,
        t,
        g,
        u,
        j,
        big_j,
        gamma_s,
        gamma_t,
        gamma_g0,
        gamma_g,
    }
}

pub fn lifted_storage() -> &'static LiftedStorage {
    static T: OnceLock<LiftedStorage> = OnceLock::new();
    T.get_or_init(build_lifted_storage)
}

/// `(S,1) ⋆ (ψ,p)·(n̄,1)·(π,r)` reaches `(ψ,p) ⋆ (n+1,1)·(π,r)`.
pub fn storage_s_case(n: u64) -> ChainCase {
    let pi = sample_pi();
    let th = lifted_storage();
    ChainCase {
        name: format!("S, n={n}"),
        start: BProcess {
            term: th.s.clone(),
            stack: with_items(&[c("ψ"), numeral(n)], &pi),
            condition: w("1^(p^(1^r))"),
        },
        target_head: c("ψ"),
        target_stack: with_items(&[numeral(n + 1)], &pi),
        target_condition: w("p^(1^r)"),
        expected_spine: Some(th.gamma_s.clone()),
        derived: false,
    }
}

/// `(T,1) ⋆ (φ,p)·(ν,q)·(π,r)` reaches `(ν,q) ⋆ (S,1)·(φ,p)·(0̄,1)·(π,r)`.
pub fn storage_t_case() -> ChainCase {
    let pi = sample_pi();
    let th = lifted_storage();
    ChainCase {
        name: "T".to_string(),
        start: BProcess {
            term: th.t.clone(),
            stack: with_items(&[c("φ"), c("ν")], &pi),
            condition: w("1^(p^(q^r))"),
        },
        target_head: c("ν"),
        target_stack: with_items(&[th.s.clone(), c("φ"), zero()], &pi),
        target_condition: w("q^(1^(p^(1^r)))"),
        expected_spine: Some(th.gamma_t.clone()),
        derived: false,
    }
}

/// `g ⋆ n̄·ξ·π^τ ≻ ξ ⋆ π^{(γ)ⁿ(γ0)τ}`, with `τ : 1∧(1∧q)`; the final
/// condition is `1_n ∧ q`.
pub fn g_case(n: u64) -> ChainCase {
    let pi = sample_pi();
    let th = lifted_storage();
    let mut spine = CExpr::empty();
    for _ in 0..n {
        spine = spine.then_after(&th.gamma_g);
    }
    let spine = spine.then_after(&th.gamma_g0);
    let one_n = unit_condition(&numeral(n)).expect("numerals are elementary");
    ChainCase {
        name: format!("g, n={n}"),
        start: BProcess {
            term: th.g.clone(),
            stack: with_items(&[numeral(n), c("ξ")], &pi),
            condition: w("1^(1^q)"),
        },
        target_head: c("ξ"),
        target_stack: pi,
        target_condition: Wedge::and(one_n, Wedge::var("q")),
        expected_spine: Some(spine),
        derived: false,
    }
}

/// Runs `j ⋆ n̄·ξ·π` and returns the item handed to `ξ`, which should be
/// literally `n̄*`.
pub fn run_j(n: u64, budget: usize) -> Option<CTerm> {
    let pi = sample_pi();
    let p = Process::new(lifted_storage().j.clone(), with_items(&[numeral(n), c("ξ")], &pi));
    let target = c("ξ");
    let (_, q) = run_until(p, budget, &mut FirstSeenCodec::new(), |q| {
        q.head == target && q.stack.len() == pi.len() + 1
    })?;
    let mut s = q.stack;
    let top = s.pop()?;
    (s == pi).then_some(top)
}

/// `γ :: p∧q ⇒ 1∧q`.
pub fn weaken_left() -> CExpr {
    synth(&w("p^q"), &w("1^q"))
}
