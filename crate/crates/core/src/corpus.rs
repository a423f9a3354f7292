//! Named quasi-proofs, each built by compiling a λ-source, together with the
//! reduction claims that can be replayed on the machine.
//!
//! Sources are parsed with [`parse_lterm`]. Free variables of a source are
//! filled from its slots (other entries, catalog terms, lifted C-expressions)
//! and whatever is left becomes a constant: the primitive names written by
//! C-expression spines, plus parameters the entry declares explicitly.
//!
//! A claim starts from a concrete process and names the state it must reach.
//! Targets are either exact processes or shapes in which some stack items
//! are certificates: primitive spines over a named constant whose replay
//! from a start condition must land on a given condition.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::{arith_entry, fixpoint, numeral, sigma, storage_pair, zero};
use crate::balg::{
    g_case, sample_pi, storage_s_case, storage_t_case, lifted_storage, translate, BalgError, ChainCase,
};
use crate::kam::{run, run_until, FirstSeenCodec, Process};
use crate::logic::{parse_formula, synth_delta};
use crate::term::{compile, parse_lterm, CTerm, LTerm, Name, Stack};
use crate::wedge::{
    alpha0_bar, apply_cexpr, decode_spine, lift, proj, spine_src, w, CExpr, CPrim, Certificate,
    Wedge,
};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("no corpus entry named {0:?}")]
    Unknown(String),
    #[error("{0} is not closed")]
    Open(String),
    #[error(transparent)]
    Translate(#[from] BalgError),
}

/// Where the expected target of a claim comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// The reduction is displayed as such in the source material.
    Stated,
    /// Worked out independently; the string names the oracle.
    Derived(&'static str),
}

/// One stack item of a [`Target::Shape`].
#[derive(Clone, Debug)]
pub enum Item {
    Term(CTerm),
    /// A primitive spine over `base` that maps `from` to `to`.
    Cert { base: CTerm, from: Wedge, to: Wedge },
}

#[derive(Clone, Debug)]
pub enum Target {
    Exact(Process),
    /// Head, items top first, and stack constant.
    Shape {
        head: CTerm,
        items: Vec<Item>,
        base: Name,
    },
}

impl Target {
    fn matches(&self, p: &Process) -> bool {
        match self {
            Target::Exact(q) => p == q,
            Target::Shape { head, items, base } => {
                p.head == *head
                    && p.stack.base == *base
                    && p.stack.len() == items.len()
                    && p
                        .stack
                        .iter_top_first()
                        .zip(items)
                        .all(|(t, i)| item_matches(i, t))
            }
        }
    }
}

fn item_matches(i: &Item, t: &CTerm) -> bool {
    match i {
        Item::Term(u) => t == u,
        Item::Cert { base, from, to } => {
            let (spine, b) = decode_spine(t);
            b == *base
                && apply_cexpr(&CExpr::prims(&spine), &Certificate::new(from.clone()))
                    .is_ok_and(|c| c.condition == *to)
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Exact(p) => write!(f, "{p}"),
            Target::Shape { head, items, base } => {
                write!(f, "{head} ⋆ ")?;
                for i in items {
                    match i {
                        Item::Term(t) => write!(f, "{t} · ")?,
                        Item::Cert { base, to, .. } => write!(f, "[{base} : {to}] · ")?,
                    }
                }
                write!(f, "{base}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub label: String,
    pub start: Process,
    pub target: Target,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// What the term is for, in a few words.
    pub topic: &'static str,
    /// The λ-source as parsed.
    pub source: String,
    pub slots: Vec<(&'static str, CTerm)>,
    /// Free names of the source that stand for unspecified terms and stay
    /// constants.
    pub params: Vec<&'static str>,
    pub lterm: LTerm,
    pub compiled: CTerm,
    pub claims: Vec<Claim>,
}

impl CorpusEntry {
    fn new(
        name: &'static str,
        topic: &'static str,
        source: impl Into<String>,
        slots: Vec<(&'static str, CTerm)>,
    ) -> CorpusEntry {
        let source = source.into();
        let lterm =
            parse_lterm(&source).unwrap_or_else(|e| panic!("corpus source {name}: {e}"));
        let compiled = compile(&lterm).substitute_all(&slots).vars_to_consts();
        CorpusEntry {
            name,
            topic,
            source,
            slots,
            params: Vec::new(),
            lterm,
            compiled,
            claims: Vec::new(),
        }
    }

    fn params(mut self, ps: &[&'static str]) -> Self {
        self.params.extend_from_slice(ps);
        self
    }

    fn claim(mut self, label: impl Into<String>, start: Process, target: Target, o: Origin) -> Self {
        self.claims.push(Claim {
            label: label.into(),
            start,
            target,
            origin: o,
        });
        self
    }

    /// Constants of the compiled term that are neither primitive names nor
    /// declared parameters.
    pub fn stray_constants(&self) -> Vec<Name> {
        self.compiled
            .consts()
            .into_iter()
            .filter(|n| CPrim::from_spelling(n).is_none() && !self.params.contains(&&**n))
            .collect()
    }

    pub fn is_constructed_only(&self) -> bool {
        self.claims.is_empty()
    }
}

fn c(s: &str) -> CTerm {
    CTerm::cst(s)
}

fn proc(head: CTerm, items: impl IntoIterator<Item = CTerm>) -> Process {
    Process::with_args(head, items, "π0")
}

fn exact(head: CTerm, items: impl IntoIterator<Item = CTerm>) -> Target {
    Target::Exact(proc(head, items))
}

/// `head ⋆ items · π^τ` over the sample stack `ρ·π0`.
fn lifted(head: CTerm, items: &[CTerm], tau: &str) -> Process {
    let mut s = sample_pi().with_bottom(c(tau));
    for t in items.iter().rev() {
        s.push(t.clone());
    }
    Process::new(head, s)
}

/// `head ⋆ items · ρ · [base : from ⇒ to] · π0`.
fn lifted_target(head: CTerm, items: &[CTerm], base: &str, from: &str, to: &str) -> Target {
    let mut all: Vec<Item> = items.iter().cloned().map(Item::Term).collect();
    all.extend(sample_pi().iter_top_first().cloned().map(Item::Term));
    all.push(Item::Cert {
        base: c(base),
        from: w(from),
        to: w(to),
    });
    Target::Shape {
        head,
        items: all,
        base: sample_pi().base,
    }
}

fn from_chain(case: &ChainCase) -> (Process, Target) {
    let tau = c(crate::balg::TAU);
    let start = case.start.executable(tau.clone());
    let mut items: Vec<Item> = case
        .target_stack
        .iter_top_first()
        .cloned()
        .map(Item::Term)
        .collect();
    items.push(Item::Cert {
        base: tau,
        from: case.start.condition.clone(),
        to: case.target_condition.clone(),
    });
    let target = Target::Shape {
        head: case.target_head.clone(),
        items,
        base: case.target_stack.base.clone(),
    };
    (start, target)
}

/// A sub-term built from λ-source with constants for its free variables,
/// used to state the expected shape of reached items.
fn piece(src: &str, slots: &[(&str, CTerm)]) -> CTerm {
    crate::term::lam(src, slots).vars_to_consts()
}

const SUBST: Origin = Origin::Derived("machine run of a compiled abstraction yields the substituted body");
const CERT: Origin =
    Origin::Derived("χ/χ′ rules move the witness; certificate replay gives the condition");

fn arith(name: &str) -> CTerm {
    arith_entry(name)
        .unwrap_or_else(|e| panic!("{e}"))
        .term
        .clone()
}

fn find<'a>(es: &'a [CorpusEntry], name: &str) -> CTerm {
    es.iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("corpus entry {name} is built later than its users"))
        .compiled
        .clone()
}

fn fixpoint_entries(es: &mut Vec<CorpusEntry>) {
    let a_src = "\\a \\f (f) (a) a f";
    let a = CorpusEntry::new("A", "half of the fixpoint combinator", a_src, vec![]);
    let a_term = a.compiled.clone();
    es.push(
        CorpusEntry::new("Y", "fixpoint combinator", "A A", vec![("A", a_term.clone())]).claim(
            "Y ⋆ κ·π0 ≻ κ ⋆ (Y)κ·π0",
            proc(fixpoint(), [c("κ")]),
            exact(c("κ"), [CTerm::app(fixpoint(), c("κ"))]),
            Origin::Stated,
        ),
    );
    es.push(a.claim(
        "A ⋆ a·f·π0 ≻ f ⋆ (a)a f·π0",
        proc(a_term, [c("a"), c("f")]),
        exact(c("f"), [CTerm::apps(c("a"), [c("a"), c("f")])]),
        SUBST,
    ));
}

fn numeral_entries(es: &mut Vec<CorpusEntry>) {
    let (t, s) = storage_pair();
    let phi = c("φ");
    let mut te = CorpusEntry::new(
        "T",
        "storage operator for integers",
        "\\f \\n (n) S f zero",
        vec![("S", s.clone()), ("zero", zero())],
    );
    let mut se = CorpusEntry::new(
        "S",
        "successor step of the storage operator",
        "\\g \\x (g) (s) x",
        vec![("s", sigma())],
    );
    for n in 0..=15 {
        te = te
            .claim(
                format!("T ⋆ φ·{n}·π0 ≻ {n} ⋆ S·φ·0·π0"),
                proc(t.clone(), [phi.clone(), numeral(n)]),
                exact(numeral(n), [s.clone(), phi.clone(), zero()]),
                Origin::Stated,
            )
            .claim(
                format!("T ⋆ φ·{n}·π0 ≻ φ ⋆ {n}·π0"),
                proc(t.clone(), [phi.clone(), numeral(n)]),
                exact(phi.clone(), [numeral(n)]),
                Origin::Derived("n-fold iteration of the S step from 0"),
            );
        se = se.claim(
            format!("S ⋆ ψ·{n}·π0 ≻ ψ ⋆ {}·π0", n + 1),
            proc(s.clone(), [c("ψ"), numeral(n)]),
            exact(c("ψ"), [numeral(n + 1)]),
            Origin::Stated,
        );
    }
    es.push(te);
    es.push(se);
    es.push(
        CorpusEntry::new("zero", "the numeral 0", "\\x \\y y", vec![]).claim(
            "0 ⋆ f·a·π0 ≻ a ⋆ π0",
            proc(zero(), [c("f"), c("a")]),
            exact(c("a"), []),
            SUBST,
        ),
    );
    let sig = CorpusEntry::new("sigma", "successor on numerals", "\\n \\f \\x (f) (n) f x", vec![]);
    es.push(sig.claim(
        "σ ⋆ 4·f·a·π0 ≻ f ⋆ (4)f a·π0",
        proc(sigma(), [numeral(4), c("f"), c("a")]),
        exact(c("f"), [CTerm::apps(numeral(4), [c("f"), c("a")])]),
        SUBST,
    ));
    let three = CorpusEntry::new(
        "numeral",
        "the numeral 3 as (σ)(σ)(σ)0",
        "(s) (s) (s) zero",
        vec![("s", sigma()), ("zero", zero())],
    );
    es.push(three.claim(
        "3 ⋆ f·a·π0 ≻ f ⋆ (2)f a·π0",
        proc(numeral(3), [c("f"), c("a")]),
        exact(c("f"), [CTerm::apps(numeral(2), [c("f"), c("a")])]),
        SUBST,
    ));
}

fn lifted_entries(es: &mut Vec<CorpusEntry>) {
    let th = lifted_storage();
    let sig_star = translate(&sigma()).expect("σ is elementary").term;
    let zero_star = translate(&zero()).expect("0 is elementary").term;
    let mut s = CorpusEntry::new(
        "S-lifted",
        "storage step in the lifted model",
        "\\f \\x (gs f) (s) x",
        vec![("gs", lift(&th.gamma_s)), ("s", sigma())],
    );
    for n in 0..=6 {
        let (start, target) = from_chain(&storage_s_case(n));
        s = s.claim(
            format!("(S,1) ⋆ (ψ,p)·({n},1)·(π,r) ≻ (ψ,p) ⋆ ({},1)·(π,r)", n + 1),
            start,
            target,
            Origin::Stated,
        );
    }
    es.push(s);
    let (start, target) = from_chain(&storage_t_case());
    es.push(
        CorpusEntry::new(
            "T-lifted",
            "storage operator in the lifted model",
            "\\f \\x (gt x) S f zero",
            vec![
                ("gt", lift(&th.gamma_t)),
                ("S", th.s.clone()),
                ("zero", zero()),
            ],
        )
        .claim(
            "(T,1) ⋆ (φ,p)·(ν,q)·(π,r) ≻ (ν,q) ⋆ (S,1)·(φ,p)·(0,1)·(π,r)",
            start,
            target,
            Origin::Stated,
        ),
    );
    let mut g = CorpusEntry::new(
        "g",
        "moves a numeral into the condition",
        "\\k \\x (g0) (k) gg x",
        vec![("g0", lift(&th.gamma_g0)), ("gg", lift(&th.gamma_g))],
    );
    for n in 0..=6 {
        let (start, target) = from_chain(&g_case(n));
        g = g.claim(
            format!("g ⋆ {n}·ξ·π^τ ≻ ξ ⋆ π^(γ)^{n}(γ0)τ"),
            start,
            target,
            Origin::Stated,
        );
    }
    es.push(g);
    es.push(CorpusEntry::new(
        "U",
        "step function used by j",
        "\\g \\y (g) (beta) y",
        vec![("beta", CTerm::app(alpha0_bar(), sig_star))],
    ));
    let mut j = CorpusEntry::new(
        "j",
        "sends a numeral to its lifted translation",
        "\\k \\f (k) U f zs",
        vec![("U", th.u.clone()), ("zs", zero_star)],
    );
    for n in 0..=6 {
        let image = translate(&numeral(n)).expect("numerals are elementary").term;
        j = j.claim(
            format!("j ⋆ {n}·ξ·π ≻ ξ ⋆ {n}*·π"),
            lifted(th.j.clone(), &[numeral(n), c("ξ")], "τ")
                .stack
                .split_bottom()
                .map(|(s, _)| Process::new(th.j.clone(), s))
                .expect("nonempty"),
            Target::Exact(Process::new(c("ξ"), {
                let mut s = sample_pi();
                s.push(image);
                s
            })),
            Origin::Derived("translation of the numeral computed directly"),
        );
    }
    es.push(j);
    es.push(CorpusEntry::new(
        "J",
        "transfers integers into the lifted model",
        "\\x (gg x) (jj) x",
        vec![("gg", th.g.clone()), ("jj", th.j.clone())],
    ));
}

fn spine(from: &str, to: &str, x: &str) -> String {
    spine_src(&proj(from, to), x)
}

fn ideal_entries(es: &mut Vec<CorpusEntry>) {
    let xi = c("ξ");
    let eta = c("η");

    let alpha = proj("1^(p^q)", "p^1");
    let abar = lift(&alpha);
    es.push(
        CorpusEntry::new(
            "ideal-proper",
            "the generic ideal does not contain 1",
            format!("\\x (rd) \\y (wr x) {}", spine_src(&alpha, "y")),
            vec![],
        )
        .claim(
            "ᾱ ⋆ ξ·π^τ ≻ ξ ⋆ π^ατ, τ : 1∧(p∧q), ατ : p∧1",
            lifted(abar, &[xi.clone()], "τ"),
            lifted_target(xi.clone(), &[], "τ", "1^(p^q)", "p^1"),
            Origin::Stated,
        ),
    );

    let src = format!(
        "\\x (rd) \\y ((wr x) {}) {}",
        spine("1^(p^q)", "p^(1^1)", "y"),
        spine("1^(p^q)", "q", "y")
    );
    let e = CorpusEntry::new("ideal-complement", "conditions outside C belong to the ideal", src, vec![]);
    let t = e.compiled.clone();
    let a_tau = Item::Cert {
        base: c("τ"),
        from: w("1^(p^q)"),
        to: w("q"),
    };
    let Target::Shape { head, items, base } =
        lifted_target(eta.clone(), &[], "τ", "1^(p^q)", "p^(1^1)")
    else {
        unreachable!()
    };
    let items = std::iter::once(a_tau).chain(items).collect();
    es.push(e.claim(
        "θ ⋆ η·π^τ ≻ η ⋆ ατ·π^βτ",
        lifted(t, &[eta.clone()], "τ"),
        Target::Shape { head, items, base },
        CERT,
    ));

    let beta = proj("(q^p')^p", "p'^(p^q)");
    let src = format!(
        "\\x \\y (abar) (y) (bbar) x",
    );
    let e = CorpusEntry::new(
        "ideal-meet",
        "splitting membership of a meet",
        src,
        vec![
            ("abar", lift(&proj("1^(p'^(q'^q))", "q'^((q^p')^1)"))),
            ("bbar", lift(&beta)),
        ],
    );
    let t = e.compiled.clone();
    es.push(e.claim(
        "θ ⋆ ξ·η·π^τ ≻ η ⋆ β̄ξ·π^ατ, ατ : q′∧((q∧p′)∧1)",
        lifted(t, &[xi.clone(), eta.clone()], "τ"),
        lifted_target(
            eta.clone(),
            &[CTerm::app(lift(&beta), xi.clone())],
            "τ",
            "1^(p'^(q'^q))",
            "q'^((q^p')^1)",
        ),
        CERT,
    ));

    let swap = spine("p^q", "q^p", "z");
    let e = CorpusEntry::new(
        "ideal-generic",
        "the ideal meets every dense family",
        format!("\\x \\y (gbar) (x) \\z (wr y) {swap}"),
        vec![("gbar", lift(&proj("1^(r^(q^r'))", "r^(1^q)")))],
    );
    let t = e.compiled.clone();
    let inner = piece(&format!("\\z (wr y) {swap}"), &[("y", xi.clone())]);
    es.push(e.claim(
        "θ ⋆ η·ξ·π^τ ≻ η ⋆ λz(χ′ξ)(β)z·π^γτ, γτ : r∧(1∧q)",
        lifted(t, &[eta.clone(), xi.clone()], "τ"),
        lifted_target(eta.clone(), &[inner], "τ", "1^(r^(q^r'))", "r^(1^q)"),
        CERT,
    ));

    let inner_src = format!("\\z' (wr x) {}", spine("p^q", "q^p", "z'"));
    let src = format!(
        "\\x \\y (rd) \\z (((wr) (a0 y) {inner_src}) {}) {}",
        spine("1^(p'^(r^q))", "(r^1)^(1^1)", "z"),
        spine("1^(p'^(r^q))", "q^p'", "z"),
    );
    let e = CorpusEntry::new(
        "ideal-down",
        "the ideal is closed downwards",
        src,
        vec![("a0", alpha0_bar())],
    );
    let t = e.compiled.clone();
    let inner = piece(&inner_src, &[("x", xi.clone())]);
    let Target::Shape { head, items, base } = lifted_target(
        eta.clone(),
        &[inner],
        "τ",
        "1^(p'^(r^q))",
        "r^(1^(1^1))",
    ) else {
        unreachable!()
    };
    let mut items: Vec<Item> = items;
    items.insert(
        1,
        Item::Cert {
            base: c("τ"),
            from: w("1^(p'^(r^q))"),
            to: w("q^p'"),
        },
    );
    es.push(e.claim(
        "θ ⋆ ξ·η·π^τ ≻ η ⋆ λz′(χ′ξ)(β)z′·α′τ·π^(α0)ατ",
        lifted(t, &[xi.clone(), eta.clone()], "τ"),
        Target::Shape { head, items, base },
        CERT,
    ));

    let vartheta_src = format!("(rd) \\d \\x \\y (wr x) {}", spine("q^r", "q^(q^r)", "y"));
    let v = CorpusEntry::new("density-inner", "ϑ of the density argument", vartheta_src, vec![]);
    let vartheta = v.compiled.clone();
    let varpi = Stack::new([c("ϖ1")], "ϖ0").with_bottom(c("τ′"));
    let mut start = varpi.clone();
    start.push(c("τ1"));
    es.push(v.claim(
        "ϑη ⋆ τ1·ϖ^τ′ ≻ η ⋆ ϖ^ατ1, ατ1 : q∧(q∧r)",
        Process::new(CTerm::app(vartheta.clone(), eta.clone()), start),
        Target::Shape {
            head: eta.clone(),
            items: vec![
                Item::Term(c("ϖ1")),
                Item::Cert {
                    base: c("τ1"),
                    from: w("q^r"),
                    to: w("q^(q^r)"),
                },
            ],
            base: crate::term::name("ϖ0"),
        },
        CERT,
    ));
    let e = CorpusEntry::new(
        "density",
        "no condition forces every dense set out of the ideal",
        "(bbar) \\x \\y (x) (vt) y",
        vec![
            ("bbar", lift(&proj("1^(p^(q^r))", "p^(1^q)"))),
            ("vt", vartheta.clone()),
        ],
    );
    let t = e.compiled.clone();
    es.push(e.claim(
        "θ ⋆ ξ·η·π^τ0 ≻ ξ ⋆ ϑη·π^βτ0, βτ0 : p∧(1∧q)",
        lifted(t, &[xi.clone(), eta.clone()], "τ0"),
        lifted_target(
            xi.clone(),
            &[CTerm::app(vartheta, eta.clone())],
            "τ0",
            "1^(p^(q^r))",
            "p^(1^q)",
        ),
        Origin::Stated,
    ));
}

fn storage_condition_entry(es: &mut Vec<CorpusEntry>) {
    let e = CorpusEntry::new(
        "theta-storage",
        "transfers C along inclusion of ε-extensions",
        "\\f \\u \\m \\h (u m) \\n \\x (h n) (f) x",
        vec![],
    );
    let t = e.compiled.clone();
    let inner = piece(
        "\\n \\x (h n) (f) x",
        &[("h", c("h")), ("f", c("f"))],
    );
    es.push(e.claim(
        "θ ⋆ f·u·m·h·π0 ≻ u ⋆ m·λnλx(hn)(f)x·π0",
        proc(t, [c("f"), c("u"), c("m"), c("h")]),
        exact(c("u"), [c("m"), inner]),
        SUBST,
    ));
}

/// The comparator and the selector of residues mod 4, with their branch
/// contracts.
fn selector_entries(es: &mut Vec<CorpusEntry>) {
    let cp = arith("cp");
    let mut e = CorpusEntry::new(
        "cp",
        "three-way comparison of integers",
        "\\m (m) Step Base",
        vec![],
    );
    // The catalog term is authoritative; the source above only names it.
    e.compiled = cp.clone();
    e.source = "cp".into();
    e.lterm = LTerm::var("cp");
    e.slots = vec![("cp", cp.clone())];
    let branches = [c("ξ"), c("η"), c("ζ")];
    for m in 0..=8u64 {
        for n in 0..=8u64 {
            let i = match m.cmp(&n) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => 2,
            };
            let mut items = vec![numeral(m), numeral(n)];
            items.extend(branches.iter().cloned());
            e = e.claim(
                format!("cp ⋆ {m}·{n}·ξ·η·ζ·π0 ≻ {} ⋆ π0", branches[i]),
                proc(cp.clone(), items),
                exact(branches[i].clone(), []),
                Origin::Stated,
            );
        }
    }
    es.push(e);

    let e4 = arith("e4");
    let mut e = CorpusEntry::new("e4", "selects on the residue mod 4", "e4", vec![("e4", e4.clone())]);
    for i in 0..=8u64 {
        let b = match i % 4 {
            0 | 2 => 0,
            1 => 1,
            _ => 2,
        };
        let mut items = vec![numeral(i)];
        items.extend(branches.iter().cloned());
        e = e.claim(
            format!("e4 ⋆ {i}·ξ·η·ζ·π0 ≻ {} ⋆ π0", branches[b]),
            proc(e4.clone(), items),
            exact(branches[b].clone(), []),
            Origin::Stated,
        );
    }
    es.push(e);
}

fn chain_condition_entries(es: &mut Vec<CorpusEntry>) {
    es.push(CorpusEntry::new(
        "Y'",
        "well-founded induction with swapped arguments",
        "\\x (Y) \\y \\z (x) z y",
        vec![("Y", fixpoint())],
    ));

    let beta_p = CorpusEntry::new(
        "beta'",
        "p∧q is below p",
        format!("\\x \\y (x) {}", spine("(p^q)^r", "p^r", "y")),
        vec![],
    );
    let bp = beta_p.compiled.clone();
    es.push(beta_p.claim(
        "β′ ⋆ ξ·τ·π0 ≻ ξ ⋆ βτ·π0, βτ : p∧r",
        proc(bp.clone(), [c("ξ"), c("τ")]),
        Target::Shape {
            head: c("ξ"),
            items: vec![Item::Cert {
                base: c("τ"),
                from: w("(p^q)^r"),
                to: w("p^r"),
            }],
            base: crate::term::name("π0"),
        },
        CERT,
    ));

    es.push(CorpusEntry::new(
        "dse",
        "one step of the sequence: some p′ below p decides X n",
        format!(
            "\\a (\\h (a I I) \\x \\y h) \\z (cc) \\k ((\\x x z) bp) \\x \\y (k) (y) {}",
            spine("(p^q)^r", "r^q", "x")
        ),
        vec![("bp", bp)],
    ));
    let dse = find(es, "dse");
    es.push(CorpusEntry::new(
        "dse0",
        "the step with a least index",
        "\\x (dse) (qt) (Yp) x",
        vec![("dse", dse), ("Yp", find(es, "Y'"))],
    ));

    let cp = arith("cp");
    let mut e = CorpusEntry::new(
        "dse1",
        "least indices are unique",
        "\\k \\k' \\x \\y1 \\y2 \\y3 \\x' \\z1 \\z2 \\z3 ((cp k' k) (x) k' z1 z2 z3) (x') k y1 y2 y3",
        vec![("cp", cp)],
    );
    let t = e.compiled.clone();
    let (ys, zs) = (["η1", "η2", "η3"], ["η′1", "η′2", "η′3"]);
    for k in 0..=8u64 {
        for k2 in 0..=8u64 {
            let mut items = vec![numeral(k), numeral(k2), c("ξ")];
            items.extend(ys.iter().map(|s| c(s)));
            items.push(c("ξ′"));
            items.extend(zs.iter().map(|s| c(s)));
            items.push(c("ζ"));
            let target = match k2.cmp(&k) {
                std::cmp::Ordering::Less => {
                    let mut v = vec![numeral(k2)];
                    v.extend(zs.iter().map(|s| c(s)));
                    exact(c("ξ"), v)
                }
                std::cmp::Ordering::Greater => {
                    let mut v = vec![numeral(k)];
                    v.extend(ys.iter().map(|s| c(s)));
                    exact(c("ξ′"), v)
                }
                std::cmp::Ordering::Equal => exact(c("ζ"), []),
            };
            e = e.claim(
                format!("dse1 on k={k}, k′={k2}"),
                proc(t.clone(), items),
                target,
                Origin::Stated,
            );
        }
    }
    es.push(e);

    let e = CorpusEntry::new(
        "rec",
        "the recurrence step of the sequence",
        "\\k \\x \\y1 \\y2 \\y3 \\x' \\z \\u (z k x y1 y2 y3) (x') z u",
        vec![],
    );
    let t = e.compiled.clone();
    let args = ["ξ", "η1", "η2", "η3", "ξ′", "ζ", "υ"].map(c);
    let mut items = vec![numeral(2)];
    items.extend(args.iter().cloned());
    es.push(e.claim(
        "rec ⋆ 2·ξ·η⃗·ξ′·ζ·υ·π0 ≻ ζ ⋆ 2·ξ·η⃗·(ξ′)ζυ·π0",
        proc(t, items),
        exact(
            c("ζ"),
            [
                numeral(2),
                c("ξ"),
                c("η1"),
                c("η2"),
                c("η3"),
                CTerm::apps(c("ξ′"), [c("ζ"), c("υ")]),
            ],
        ),
        Origin::Stated,
    ));

    es.push(CorpusEntry::new(
        "cd1",
        "induction step: Φ(x, y) gives some Φ(sx, y′)",
        "\\x \\y (dse0) \\l \\z1 \\z2 \\z3 \\z4 (y) (rec) l z1 z2 z3 z4 x",
        vec![("dse0", find(es, "dse0")), ("rec", find(es, "rec"))],
    ));
    es.push(CorpusEntry::new(
        "ccd1",
        "every integer has a value of Φ",
        "\\n ((n) \\x \\y (x) \\z (cd1) z y) \\x (x) \\x \\y y",
        vec![("cd1", find(es, "cd1"))],
    ));

    let e = CorpusEntry::new(
        "ccd4",
        "values of Φ are non-trivial conditions",
        "\\a \\b \\c ((b \\x0 \\x1 \\x2 \\x3 \\x \\y (x) (x1) y) \\x x a) c",
        vec![],
    );
    let t = e.compiled.clone();
    let step = piece("\\x0 \\x1 \\x2 \\x3 \\x \\y (x) (x1) y", &[]);
    let base = piece("\\x x a", &[("a", c("τ"))]);
    es.push(e.claim(
        "ccd4 ⋆ τ·ξ·η·π0 ≻ ξ ⋆ λx0…(x)(x1)y·λx(x)τ·η·π0",
        proc(t, [c("τ"), c("ξ"), c("η")]),
        exact(c("ξ"), [step, base, c("η")]),
        Origin::Stated,
    ));

    let ccd4 = find(es, "ccd4");
    let e = CorpusEntry::new(
        "dec0",
        "the limit condition is non-trivial",
        "\\a \\b \\x (b) (ccd4) x",
        vec![("ccd4", ccd4.clone())],
    );
    let t = e.compiled.clone();
    es.push(e.claim(
        "dec0 ⋆ ω0·ω1·τ·π0 ≻ ω1 ⋆ (ccd4)τ·π0",
        proc(t, [c("ω0"), c("ω1"), c("τ")]),
        exact(c("ω1"), [CTerm::app(ccd4, c("τ"))]),
        SUBST,
    ));
    let e = CorpusEntry::new(
        "dec1",
        "the limit condition is below p0",
        "\\a \\b (a) \\x \\y y",
        vec![],
    );
    let t = e.compiled.clone();
    es.push(e.claim(
        "dec1 ⋆ ω0·ω1·π0 ≻ ω0 ⋆ λxλy y·π0",
        proc(t, [c("ω0"), c("ω1")]),
        exact(c("ω0"), [zero()]),
        SUBST,
    ));

    let e = CorpusEntry::new(
        "lef0",
        "forcing X n passes to smaller conditions",
        "\\x \\y \\z (cc) \\k ((y) \\u (k) (x) u) z",
        vec![],
    );
    let t = e.compiled.clone();
    let inner = piece(
        "\\u (k) (x) u",
        &[("k", CTerm::cont(Stack::empty("π0"))), ("x", c("ξ"))],
    );
    es.push(e.claim(
        "lef0 ⋆ ξ·η·τ·π0 ≻ η ⋆ λu(k_π0)(ξ)u·τ·π0",
        proc(t, [c("ξ"), c("η"), c("τ")]),
        exact(c("η"), [inner, c("τ")]),
        SUBST,
    ));
    let lef0 = find(es, "lef0");
    es.push(CorpusEntry::new(
        "lef1",
        "deciding X n passes to smaller conditions",
        "\\x \\y \\z \\u ((lef0) (cc) \\h ((y) \\v (h) (x) v u) z) y",
        vec![("lef0", lef0)],
    ));
    es.push(
        CorpusEntry::new(
            "dec2",
            "the limit condition decides every X n",
            "\\a \\b \\n (cc) \\k ((ccd1) (s) n) \\x (k) ((lef1) (for) n x) (a) n x",
            vec![
                ("ccd1", find(es, "ccd1")),
                ("lef1", find(es, "lef1")),
                ("s", sigma()),
            ],
        )
        .params(&["for"]),
    );

    es.push(CorpusEntry::new(
        "crl2",
        "a condition deciding X gives a witness set",
        format!(
            "\\x0 \\y0 \\z0 \\u ((\\y \\z ((y0) \\x (x0 y z) {}) {}) \\d \\x \\y ((x) {}) {}) \\n \\x \\y (z0 n x) {}",
            spine("p^q", "(p^q)^q", "x"),
            spine("p", "p^p", "u"),
            spine("(p^r)^q", "r^1", "y"),
            spine("(p^r)^q", "p^q", "y"),
            spine("(p^r)^1", "p^r", "y"),
        ),
        vec![],
    ));
    es.push(CorpusEntry::new(
        "crl1",
        "the same, under the hypotheses of the chain condition",
        format!(
            "\\x \\y \\z \\u \\v ((x) (crl2) u y z) {}",
            spine("1^p", "p", "v")
        ),
        vec![("crl2", find(es, "crl2"))],
    ));
}

fn well_order_entries(es: &mut Vec<CorpusEntry>) {
    let e = CorpusEntry::new(
        "subset-trans",
        "inclusion of condition sets is transitive",
        "\\f \\g \\i \\x \\h (f i x) \\j \\y (g j y) h",
        vec![],
    );
    let t = e.compiled.clone();
    let inner = piece("\\j \\y (g j y) h", &[("g", c("g")), ("h", c("h"))]);
    es.push(e.claim(
        "θ ⋆ f·g·3·ξ·h·π0 ≻ f ⋆ 3·ξ·λjλy(g j y)h·π0",
        proc(t, [c("f"), c("g"), numeral(3), c("ξ"), c("h")]),
        exact(c("f"), [numeral(3), c("ξ"), inner]),
        SUBST,
    ));

    let (e_sel, d0, d2) = (arith("e"), arith("double"), arith("half"));
    let mut e = CorpusEntry::new(
        "subset-meet",
        "inclusion is compatible with ∧",
        "\\f \\i \\y \\u ((e i) (u) i y) (((f) (d2) i) y) \\j (u) (d0) j",
        vec![("e", e_sel), ("d2", d2.clone()), ("d0", d0.clone())],
    );
    let t = e.compiled.clone();
    let inner = piece("\\j (u) (d0) j", &[("u", c("u")), ("d0", d0.clone())]);
    for i in 0..=8u64 {
        let target = if i % 2 == 1 {
            exact(c("u"), [numeral(i), c("ξ")])
        } else {
            exact(
                c("f"),
                [CTerm::app(d2.clone(), numeral(i)), c("ξ"), inner.clone()],
            )
        };
        e = e.claim(
            format!("θ′ ⋆ f·{i}·ξ·u·π0"),
            proc(t.clone(), [c("f"), numeral(i), c("ξ"), c("u")]),
            target,
            Origin::Derived("parity of i decides the branch"),
        );
    }
    es.push(e);

    let e = CorpusEntry::new(
        "subset-sub",
        "a subset of a chain is a chain",
        "\\f \\g \\i \\i' \\x \\x' \\u \\v \\w (f i' x') \\j' \\y' (f i x) \\j \\y (g) j j' y y' u v w",
        vec![],
    );
    let t = e.compiled.clone();
    let inner = piece(
        "\\j' \\y' (f i x) \\j \\y (g) j j' y y' u v w",
        &[
            ("f", c("f")),
            ("g", c("g")),
            ("i", numeral(1)),
            ("x", c("x")),
            ("u", c("u")),
            ("v", c("v")),
            ("w", c("w")),
        ],
    );
    es.push(e.claim(
        "θ ⋆ f·g·1·2·x·x′·u·v·w·π0 ≻ f ⋆ 2·x′·λj′λy′…·π0",
        proc(
            t,
            [
                c("f"),
                c("g"),
                numeral(1),
                numeral(2),
                c("x"),
                c("x′"),
                c("u"),
                c("v"),
                c("w"),
            ],
        ),
        exact(c("f"), [numeral(2), c("x′"), inner]),
        SUBST,
    ));

    let (e4, pred) = (arith("e4"), arith("pred"));
    let mut e = CorpusEntry::new(
        "meet-assoc",
        "p∧(q∧r) is included in (p∧q)∧r",
        "\\i \\y \\u ((e4 i (((u) (d0) i) y)) (((u) (s) (s) i) y)) (((u) (p) (p) (p) i) y)",
        vec![
            ("e4", e4),
            ("d0", d0.clone()),
            ("s", sigma()),
            ("p", pred.clone()),
        ],
    );
    let t = e.compiled.clone();
    for i in 0..=8u64 {
        let j = match i % 4 {
            0 | 2 => CTerm::app(d0.clone(), numeral(i)),
            1 => numeral(i + 2),
            _ => (0..3).fold(numeral(i), |acc, _| CTerm::app(pred.clone(), acc)),
        };
        e = e.claim(
            format!("θ ⋆ {i}·ξ·u·π0"),
            proc(t.clone(), [numeral(i), c("ξ"), c("u")]),
            exact(c("u"), [j, c("ξ")]),
            Origin::Derived("residue of i mod 4 decides the branch"),
        );
    }
    es.push(e);

    let mut e = CorpusEntry::new(
        "succ-index",
        "p is included in φ(p, q)",
        "\\i \\x \\y ((y) (s) i) x",
        vec![("s", sigma())],
    );
    let t = e.compiled.clone();
    for i in 0..=8u64 {
        e = e.claim(
            format!("θ ⋆ {i}·ξ·η·π0 ≻ η ⋆ {}·ξ·π0", i + 1),
            proc(t.clone(), [numeral(i), c("ξ"), c("η")]),
            exact(c("η"), [numeral(i + 1), c("ξ")]),
            Origin::Stated,
        );
    }
    es.push(e);
}

/// `ζ = δ′_G v ξ0 η0` with `v = ((ᾱ0)(ᾱ0)u*θ)θ′`.
///
/// `u` is the proof of `AU, RPN → G`, `au` and `rpn` the realizers paired
/// with `1`, `delta2_g` the term `δ′_G`, `xi0` a witness of
/// `C[(1_u∧1)∧1]` and `eta0` a realizer of the choice axiom.
pub fn build_extraction(
    u: &CTerm,
    au: &CTerm,
    rpn: &CTerm,
    delta2_g: &CTerm,
    xi0: &CTerm,
    eta0: &CTerm,
) -> Result<CTerm, CorpusError> {
    for (n, t) in [
        ("u", u),
        ("θ", au),
        ("θ′", rpn),
        ("δ′_G", delta2_g),
        ("ξ0", xi0),
        ("η0", eta0),
    ] {
        if !t.is_closed() {
            return Err(CorpusError::Open(format!("{n} = {t}")));
        }
    }
    let u_star = translate(u)?.term;
    let a0 = alpha0_bar();
    let inner = CTerm::apps(a0.clone(), [u_star, au.clone()]);
    let v = CTerm::apps(a0, [inner, rpn.clone()]);
    Ok(CTerm::apps(
        delta2_g.clone(),
        [v, xi0.clone(), eta0.clone()],
    ))
}

/// Stub inputs for `F ≡ ∀X(X1, X0 → X1)`: the proof term is `λxλyλzλaλb a`,
/// the axioms are opaque constants, and `G` stands the choice axiom by `⊥`
/// since the proof never uses it.
pub fn extraction_example() -> CTerm {
    let u = crate::term::lam("\\x \\y \\z \\a \\b a", &[]);
    let g = parse_formula("bot -> forall x. (1 eps x, 0 eps x -> 1 eps x)")
        .expect("well-formed");
    let (_, delta2) = synth_delta(&g).expect("first-order");
    build_extraction(&u, &c("θ"), &c("θ′"), &delta2, &c("ξ0"), &c("η0"))
        .expect("closed inputs")
}

fn extraction_entry(es: &mut Vec<CorpusEntry>) {
    let zeta = extraction_example();
    let mut e = CorpusEntry::new("extraction", "program extracted from a proof", "zeta", vec![]);
    e.compiled = zeta.clone();
    e.slots = vec![("zeta", zeta.clone())];
    e.params = vec!["θ", "θ′", "ξ0", "η0"];
    es.push(e.claim(
        "ζ ⋆ κ·κ′·π0 ≻ κ ⋆ π0",
        proc(zeta, [c("κ"), c("κ′")]),
        exact(c("κ"), []),
        Origin::Stated,
    ));
}

fn build() -> Vec<CorpusEntry> {
    let mut es = Vec::new();
    fixpoint_entries(&mut es);
    numeral_entries(&mut es);
    lifted_entries(&mut es);
    storage_condition_entry(&mut es);
    ideal_entries(&mut es);
    selector_entries(&mut es);
    chain_condition_entries(&mut es);
    well_order_entries(&mut es);
    extraction_entry(&mut es);
    es
}

/// Every entry, in a fixed order.
pub fn catalog() -> &'static [CorpusEntry] {
    static C: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    C.get_or_init(build)
}

pub fn entry(name: &str) -> Result<&'static CorpusEntry, CorpusError> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CorpusError::Unknown(name.to_string()))
}

#[derive(Clone, Debug)]
pub struct ClaimOutcome {
    pub label: String,
    pub origin: Origin,
    /// Steps taken to reach the target, or the tail of the trace.
    pub result: Result<usize, Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub name: &'static str,
    pub closed: bool,
    pub outcomes: Vec<ClaimOutcome>,
}

impl Replay {
    pub fn passed(&self) -> bool {
        self.closed && self.outcomes.iter().all(|o| o.result.is_ok())
    }

    /// One line per claim: name, label, pass or FAIL, steps, origin, separated
    /// by tabs. Entries without claims give a single `constructed` line.
    pub fn lines(&self) -> Vec<String> {
        if self.outcomes.is_empty() {
            let st = if self.closed { "constructed" } else { "open" };
            return vec![format!("{}\t-\t{st}\t-\t-", self.name)];
        }
        self.outcomes
            .iter()
            .map(|o| {
                let origin = match o.origin {
                    Origin::Stated => "stated",
                    Origin::Derived(_) => "derived",
                };
                match &o.result {
                    Ok(n) => format!("{}\t{}\tpass\t{n} steps\t{origin}", self.name, o.label),
                    Err(_) => format!("{}\t{}\tFAIL\t-\t{origin}", self.name, o.label),
                }
            })
            .collect()
    }
}

const TRACE_TAIL: usize = 8;

fn replay_claim(cl: &Claim, budget: usize) -> ClaimOutcome {
    let found = run_until(cl.start.clone(), budget, &mut FirstSeenCodec::new(), |p| {
        cl.target.matches(p)
    });
    let result = match found {
        Some((n, _)) => Ok(n),
        None => {
            let tr = run(cl.start.clone(), budget, &mut FirstSeenCodec::new());
            let lines = tr.lines();
            let skip = lines.len().saturating_sub(TRACE_TAIL);
            let mut tail: Vec<String> = lines.into_iter().skip(skip).collect();
            tail.push(format!("status: {:?}", tr.status));
            tail.push(format!("expected: {}", cl.target));
            Err(tail)
        }
    };
    ClaimOutcome {
        label: cl.label.clone(),
        origin: cl.origin.clone(),
        result,
    }
}

/// Runs every claim of an entry with at most `budget` steps each.
pub fn replay_entry(e: &'static CorpusEntry, budget: usize) -> Replay {
    Replay {
        name: e.name,
        closed: e.compiled.is_closed(),
        outcomes: e.claims.iter().map(|c| replay_claim(c, budget)).collect(),
    }
}

pub fn replay(name: &str, budget: usize) -> Result<Replay, CorpusError> {
    Ok(replay_entry(entry(name)?, budget))
}

pub fn replay_all(budget: usize) -> Vec<Replay> {
    catalog().iter().map(|e| replay_entry(e, budget)).collect()
}
