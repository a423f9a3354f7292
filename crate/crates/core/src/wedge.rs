//! ∧-terms, C-expressions over the six primitive condition transformers,
//! their synthesis, and the lifting `γ ↦ γ̄` to machine terms.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::term::{compile, name, Atom, CTerm, LTerm, Name};

/// A condition expression: variables, `1`, and `∧`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wedge {
    Var(Name),
    One,
    And(Arc<Wedge>, Arc<Wedge>),
}

impl Wedge {
    pub fn var(s: &str) -> Wedge {
        Wedge::Var(name(s))
    }

    pub fn and(a: Wedge, b: Wedge) -> Wedge {
        Wedge::And(Arc::new(a), Arc::new(b))
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            Wedge::Var(x) => {
                out.insert(x.clone());
            }
            Wedge::One => {}
            Wedge::And(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, p: &str) -> bool {
        match self {
            Wedge::Var(x) => &**x == p,
            Wedge::One => false,
            Wedge::And(a, b) => a.contains_var(p) || b.contains_var(p),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Wedge::And(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Fully parenthesised ASCII form, as accepted by [`parse_wedge`].
    pub fn ascii(&self) -> String {
        match self {
            Wedge::Var(x) => x.to_string(),
            Wedge::One => "1".into(),
            Wedge::And(a, b) => format!("({}^{})", a.ascii(), b.ascii()),
        }
    }

    /// Substitutes wedge terms for variables.
    pub fn instantiate(&self, env: &[(Name, Wedge)]) -> Wedge {
        match self {
            Wedge::Var(x) => env
                .iter()
                .find(|(y, _)| y == x)
                .map(|(_, w)| w.clone())
                .unwrap_or_else(|| self.clone()),
            Wedge::One => Wedge::One,
            Wedge::And(a, b) => Wedge::and(a.instantiate(env), b.instantiate(env)),
        }
    }
}

/// `p∧q`, `(p∧q)∧r`, … : parentheses only where needed below the root.
impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(w: &Wedge, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match w {
                Wedge::And(..) => write!(f, "({w})"),
                _ => write!(f, "{w}"),
            }
        }
        match self {
            Wedge::Var(x) => f.write_str(x),
            Wedge::One => f.write_str("1"),
            Wedge::And(a, b) => {
                side(a, f)?;
                f.write_str("∧")?;
                side(b, f)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("wedge syntax error at {pos}: {msg}")]
pub struct WedgeParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parses `w ::= ident | 1 | ( w ^ w )`. `∧` is accepted for `^`, and
/// the outermost parentheses may be omitted.
pub fn parse_wedge(text: &str) -> Result<Wedge, WedgeParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let w = wedge_expr(&chars, &mut i, text.len())?;
    skip(&chars, &mut i);
    if i < chars.len() {
        return Err(WedgeParseError {
            pos: chars[i].0,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(w)
}

fn skip(c: &[(usize, char)], i: &mut usize) {
    while *i < c.len() && c[*i].1.is_whitespace() {
        *i += 1;
    }
}

fn werr<T>(c: &[(usize, char)], i: usize, end: usize, msg: &str) -> Result<T, WedgeParseError> {
    Err(WedgeParseError {
        pos: c.get(i).map_or(end, |x| x.0),
        msg: msg.into(),
    })
}

fn wedge_expr(c: &[(usize, char)], i: &mut usize, end: usize) -> Result<Wedge, WedgeParseError> {
    let left = wedge_atom(c, i, end)?;
    skip(c, i);
    if *i < c.len() && matches!(c[*i].1, '^' | '∧') {
        *i += 1;
        let right = wedge_atom(c, i, end)?;
        skip(c, i);
        if *i < c.len() && matches!(c[*i].1, '^' | '∧') {
            return werr(c, *i, end, "ambiguous ∧ chain; add parentheses");
        }
        return Ok(Wedge::and(left, right));
    }
    Ok(left)
}

fn wedge_atom(c: &[(usize, char)], i: &mut usize, end: usize) -> Result<Wedge, WedgeParseError> {
    skip(c, i);
    match c.get(*i).map(|x| x.1) {
        Some('(') => {
            *i += 1;
            let w = wedge_expr(c, i, end)?;
            skip(c, i);
            if c.get(*i).map(|x| x.1) != Some(')') {
                return werr(c, *i, end, "expected ')'");
            }
            *i += 1;
            Ok(w)
        }
        Some('1') => {
            *i += 1;
            Ok(Wedge::One)
        }
        Some(ch) if ch.is_alphabetic() || ch == '_' => {
            let mut s = String::new();
            while let Some(&(_, ch)) = c.get(*i) {
                if ch.is_alphanumeric() || matches!(ch, '_' | '\'' | '′') {
                    s.push(ch);
                    *i += 1;
                } else {
                    break;
                }
            }
            Ok(Wedge::Var(name(&s)))
        }
        _ => werr(c, *i, end, "expected a variable, 1, or '('"),
    }
}

/// Shorthand for wedge literals written in this crate.
pub(crate) fn w(text: &str) -> Wedge {
    parse_wedge(text).unwrap_or_else(|e| panic!("built-in wedge {text:?}: {e}"))
}

/// The six primitive transformers of a forcing structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CPrim {
    A0,
    A1,
    A2,
    B0,
    B1,
    B2,
}

impl CPrim {
    pub const ALL: [CPrim; 6] = [
        CPrim::A0,
        CPrim::A1,
        CPrim::A2,
        CPrim::B0,
        CPrim::B1,
        CPrim::B2,
    ];

    pub fn spelling(self) -> &'static str {
        match self {
            CPrim::A0 => "α0",
            CPrim::A1 => "α1",
            CPrim::A2 => "α2",
            CPrim::B0 => "β0",
            CPrim::B1 => "β1",
            CPrim::B2 => "β2",
        }
    }

    pub fn from_spelling(s: &str) -> Option<CPrim> {
        CPrim::ALL.into_iter().find(|p| p.spelling() == s)
    }

    /// The schema `pattern ⇒ template`.
    pub fn schema(self) -> (Wedge, Wedge) {
        static S: OnceLock<Vec<(Wedge, Wedge)>> = OnceLock::new();
        let table = S.get_or_init(|| {
            [
                ("(p^q)^r", "p^(q^r)"),
                ("p", "p^1"),
                ("p^q", "q"),
                ("p", "p^p"),
                ("p^q", "q^p"),
                ("((p^q)^r)^s", "(p^(q^r))^s"),
            ]
            .iter()
            .map(|(a, b)| (w(a), w(b)))
            .collect()
        });
        table[self as usize].clone()
    }

    /// The opaque machine constant standing for this primitive.
    pub fn constant(self) -> CTerm {
        CTerm::cst(self.spelling())
    }

    /// Rewrites `c` at the root, or reports that the schema does not match.
    pub fn apply(self, c: &Wedge) -> Option<Wedge> {
        let (pat, tpl) = self.schema();
        let mut env = Vec::new();
        if matches_pattern(&pat, c, &mut env) {
            Some(tpl.instantiate(&env))
        } else {
            None
        }
    }
}

impl fmt::Display for CPrim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spelling())
    }
}

/// First-order matching; pattern variables bind arbitrary subterms.
pub fn matches_pattern(pat: &Wedge, t: &Wedge, env: &mut Vec<(Name, Wedge)>) -> bool {
    match pat {
        Wedge::Var(x) => match env.iter().find(|(y, _)| y == x) {
            Some((_, bound)) => bound == t,
            None => {
                env.push((x.clone(), t.clone()));
                true
            }
        },
        Wedge::One => *t == Wedge::One,
        Wedge::And(pa, pb) => match t {
            Wedge::And(ta, tb) => matches_pattern(pa, ta, env) && matches_pattern(pb, tb, env),
            _ => false,
        },
    }
}

/// One written factor of a C-expression: a primitive, or a named
/// abbreviation for another C-expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CStep {
    Prim(CPrim),
    Named(Name, CExpr),
}

impl CStep {
    pub fn label(&self) -> String {
        match self {
            CStep::Prim(p) => p.spelling().to_string(),
            CStep::Named(n, _) => n.to_string(),
        }
    }
}

/// `γ = (δ0)(δ1)…(δk)`; `δk` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CExpr(pub Vec<CStep>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("{prim} does not apply to {condition}")]
    NoMatch { prim: CPrim, condition: Wedge },
    #[error("variable {var} of the target does not occur in {within}")]
    MissingVar { var: Name, within: Wedge },
}

/// The symbolic claim `τ ∈ C[condition]`, with the primitives applied so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub condition: Wedge,
    pub provenance: Vec<CPrim>,
}

impl Certificate {
    pub fn new(condition: Wedge) -> Certificate {
        Certificate {
            condition,
            provenance: Vec::new(),
        }
    }
}

impl CExpr {
    pub fn empty() -> CExpr {
        CExpr(Vec::new())
    }

    pub fn prims(ps: &[CPrim]) -> CExpr {
        CExpr(ps.iter().map(|&p| CStep::Prim(p)).collect())
    }

    /// `(self)(inner)`: `inner` acts first.
    pub fn then_after(mut self, inner: &CExpr) -> CExpr {
        self.0.extend(inner.0.iter().cloned());
        self
    }

    /// The primitive spine in written order (outermost first).
    pub fn flatten(&self) -> Vec<CPrim> {
        let mut out = Vec::new();
        for s in &self.0 {
            match s {
                CStep::Prim(p) => out.push(*p),
                CStep::Named(_, e) => out.extend(e.flatten()),
            }
        }
        out
    }

    pub fn len_prims(&self) -> usize {
        self.flatten().len()
    }

    /// Rewrites a condition, innermost factor first.
    pub fn apply_to(&self, c: &Wedge) -> Result<Wedge, WedgeError> {
        self.chain(c)
            .map(|ch| ch.last().map_or(c.clone(), |s| s.1.clone()))
    }

    /// The intermediate conditions, one per written factor.
    pub fn chain(&self, c: &Wedge) -> Result<Vec<(String, Wedge)>, WedgeError> {
        let mut cur = c.clone();
        let mut out = Vec::new();
        for s in self.0.iter().rev() {
            cur = match s {
                CStep::Prim(p) => p.apply(&cur).ok_or_else(|| WedgeError::NoMatch {
                    prim: *p,
                    condition: cur.clone(),
                })?,
                CStep::Named(_, e) => e.apply_to(&cur)?,
            };
            out.push((s.label(), cur.clone()));
        }
        Ok(out)
    }

    /// `(γ)τ` as a machine term over the primitive constants.
    pub fn apply_term(&self, tau: CTerm) -> CTerm {
        self.flatten()
            .into_iter()
            .rev()
            .fold(tau, |acc, p| CTerm::app(p.constant(), acc))
    }
}

/// `p∧q; β0; (p∧q)∧(p∧q); …` in the notation of the printed derivations.
pub fn format_chain(start: &Wedge, chain: &[(String, Wedge)]) -> String {
    let mut s = start.to_string();
    for (l, c) in chain {
        s.push_str(&format!("; {l}; {c}"));
    }
    s
}

impl fmt::Display for CExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for s in &self.0 {
            write!(f, "({})", s.label())?;
        }
        Ok(())
    }
}

/// Replays a primitive spine on a certificate.
pub fn apply_cexpr(g: &CExpr, c: &Certificate) -> Result<Certificate, WedgeError> {
    let mut cur = c.clone();
    for p in g.flatten().into_iter().rev() {
        cur.condition = p.apply(&cur.condition).ok_or_else(|| WedgeError::NoMatch {
            prim: p,
            condition: cur.condition.clone(),
        })?;
        cur.provenance.push(p);
    }
    Ok(cur)
}

/// Reads `(δ0)(δ1)…(δk)τ` back into the primitives and `τ`.
pub fn decode_spine(t: &CTerm) -> (Vec<CPrim>, CTerm) {
    let mut prims = Vec::new();
    let mut cur = t;
    while let CTerm::App(f, a) = cur {
        match &**f {
            CTerm::Const(n) => match CPrim::from_spelling(n) {
                Some(p) => {
                    prims.push(p);
                    cur = a;
                }
                None => break,
            },
            _ => break,
        }
    }
    (prims, cur.clone())
}

fn named(n: &str, e: CExpr) -> CStep {
    CStep::Named(name(n), e)
}

fn prim(p: CPrim) -> CStep {
    CStep::Prim(p)
}

/// A derived expression with its specification.
#[derive(Clone, Debug)]
pub struct Derived {
    pub name: &'static str,
    pub expr: CExpr,
    pub from: Wedge,
    pub to: Wedge,
}

/// β′0, β′1, β′2, β3, β′3.
pub fn derived_table() -> &'static [Derived] {
    static T: OnceLock<Vec<Derived>> = OnceLock::new();
    T.get_or_init(|| {
        use CPrim::*;
        let b0p = CExpr(vec![prim(B1), prim(A2), prim(A0), prim(B0)]);
        let b2p = CExpr(vec![prim(B1), prim(A0), prim(B1), prim(A0), prim(B1)]);
        let b1p = CExpr(vec![
            prim(A2),
            prim(A0),
            prim(B2),
            prim(B1),
            prim(A0),
            prim(A2),
            prim(B1),
            named("β′2", b2p.clone()),
            named("β′0", b0p.clone()),
            prim(B1),
        ]);
        let b3 = CExpr(vec![prim(B1), named("β′1", b1p.clone()), prim(B1)]);
        let b3p = CExpr(vec![
            named("β′1", b1p.clone()),
            named("β′2", b2p.clone()),
            named("β′1", b1p.clone()),
            prim(A0),
            named("β′1", b1p.clone()),
        ]);
        let d = |n, expr, from: &str, to: &str| Derived {
            name: n,
            expr,
            from: w(from),
            to: w(to),
        };
        vec![
            d("β′0", b0p, "p^q", "(p^q)^q"),
            d("β′1", b1p, "(p^q)^r", "(q^p)^r"),
            d("β′2", b2p, "p^(q^r)", "(p^q)^r"),
            d("β3", b3, "p^(q^r)", "p^(r^q)"),
            d("β′3", b3p, "(p^(q^r))^s", "(p^(r^q))^s"),
        ]
    })
}

pub fn derived(n: &str) -> CStep {
    let d = derived_table()
        .iter()
        .find(|d| d.name == n)
        .unwrap_or_else(|| panic!("no derived expression {n}"));
    named(d.name, d.expr.clone())
}

/// Position of the last leaf equal to `p`, counted from the right end of
/// the term (0 = rightmost leaf). Used as the recursion measure.
fn after_last(t: &Wedge, p: &str) -> Option<usize> {
    match t {
        Wedge::Var(x) if &**x == p => Some(0),
        Wedge::Var(_) | Wedge::One => None,
        Wedge::And(a, b) => after_last(b, p)
            .map(|n| n + 1)
            .or_else(|| after_last(a, p).map(|n| n + 1 + b.size())),
    }
}

/// `γ :: t ⇒ t∧p` for a variable `p` of `t`.
pub fn synth_var(t: &Wedge, p: &str) -> Result<CExpr, WedgeError> {
    if after_last(t, p).is_none() {
        return Err(WedgeError::MissingVar {
            var: name(p),
            within: t.clone(),
        });
    }
    Ok(synth_var_rec(t, p))
}

fn synth_var_rec(t: &Wedge, p: &str) -> CExpr {
    match t {
        Wedge::Var(_) => CExpr::prims(&[CPrim::B0]),
        Wedge::And(_, v) if matches!(&**v, Wedge::Var(x) if &**x == p) => {
            CExpr(vec![derived("β′0")])
        }
        Wedge::And(u, v) if !v.contains_var(p) => {
            let inner = synth_var_rec(&Wedge::and((**v).clone(), (**u).clone()), p);
            CExpr(vec![derived("β′1")])
                .then_after(&inner)
                .then_after(&CExpr::prims(&[CPrim::B1]))
        }
        Wedge::And(u, v) => {
            let Wedge::And(v0, v1) = &**v else {
                unreachable!("p occurs in v and v is not p")
            };
            let (u, v0, v1) = ((**u).clone(), (**v0).clone(), (**v1).clone());
            if !v1.contains_var(p) {
                let inner = synth_var_rec(&Wedge::and(u, Wedge::and(v1, v0)), p);
                CExpr(vec![derived("β′3")])
                    .then_after(&inner)
                    .then_after(&CExpr(vec![derived("β3")]))
            } else {
                let inner = synth_var_rec(&Wedge::and(Wedge::and(u, v0), v1), p);
                CExpr::prims(&[CPrim::B2])
                    .then_after(&inner)
                    .then_after(&CExpr(vec![derived("β′2")]))
            }
        }
        Wedge::One => unreachable!("p occurs in t"),
    }
}

fn check_vars(t: &Wedge, u: &Wedge) -> Result<(), WedgeError> {
    match u.vars().into_iter().find(|x| !t.contains_var(x)) {
        Some(var) => Err(WedgeError::MissingVar {
            var,
            within: t.clone(),
        }),
        None => Ok(()),
    }
}

/// `γ :: t ⇒ t∧u`.
pub fn synth_extend(t: &Wedge, u: &Wedge) -> Result<CExpr, WedgeError> {
    check_vars(t, u)?;
    Ok(extend_rec(t, u))
}

fn extend_rec(t: &Wedge, u: &Wedge) -> CExpr {
    match u {
        Wedge::One => CExpr::prims(&[CPrim::A1]),
        Wedge::Var(p) => synth_var_rec(t, p),
        Wedge::And(v, wt) => {
            let g1 = extend_rec(t, v);
            let g2 = extend_rec(&Wedge::and(t.clone(), (**v).clone()), wt);
            CExpr::prims(&[CPrim::A0]).then_after(&g2).then_after(&g1)
        }
    }
}

/// `γ :: t ⇒ u`.
pub fn synth_project(t: &Wedge, u: &Wedge) -> Result<CExpr, WedgeError> {
    Ok(CExpr::prims(&[CPrim::A2]).then_after(&synth_extend(t, u)?))
}

/// [`synth_project`] on literal specifications written in this crate.
pub(crate) fn proj(from: &str, to: &str) -> CExpr {
    synth_project(&w(from), &w(to)).unwrap_or_else(|e| panic!("{from} ⇒ {to}: {e}"))
}

/// A named C-expression with its specification.
#[derive(Clone, Debug)]
pub struct GammaSpec {
    pub name: &'static str,
    pub from: Wedge,
    pub to: Wedge,
    pub expr: CExpr,
}

/// `γ0, γI, γK, γE, γW, γC, γB, γcc, γk`, each synthesized from its
/// specification.
pub fn gamma_table() -> &'static [GammaSpec] {
    static T: OnceLock<Vec<GammaSpec>> = OnceLock::new();
    T.get_or_init(|| {
        [
            ("γ0", "p^(q^r)", "(p^q)^r"),
            ("γI", "p^q", "q"),
            ("γK", "1^(p^(q^r))", "p^r"),
            ("γE", "1^(p^(q^r))", "(p^q)^r"),
            ("γW", "1^(p^(q^r))", "p^(q^(q^r))"),
            ("γC", "1^(p^(q^(r^s)))", "p^(r^(q^s))"),
            ("γB", "1^(p^(q^(r^s)))", "(p^(q^r))^s"),
            ("γcc", "1^(p^q)", "p^(q^q)"),
            ("γk", "p^(q^r)", "q^p"),
        ]
        .into_iter()
        .map(|(n, a, b)| GammaSpec {
            name: n,
            from: w(a),
            to: w(b),
            expr: proj(a, b),
        })
        .collect()
    })
}

pub fn gamma(n: &str) -> &'static CExpr {
    &gamma_table()
        .iter()
        .find(|g| g.name == n)
        .unwrap_or_else(|| panic!("no γ named {n}"))
        .expr
}

/// `γ̄ = λx(χ)λy(χ′x)(γ)y`, with the primitives as opaque constants.
pub fn lift(g: &CExpr) -> CTerm {
    let applied = g
        .flatten()
        .into_iter()
        .rev()
        .fold(LTerm::var("%y"), |acc, p| {
            LTerm::app(LTerm::var(p.spelling()), acc)
        });
    let body = LTerm::app(
        LTerm::Atom(Atom::Rd),
        LTerm::lam(
            "%y",
            LTerm::app(LTerm::app(LTerm::Atom(Atom::Wr), LTerm::var("%x")), applied),
        ),
    );
    compile(&LTerm::lam("%x", body)).vars_to_consts()
}

/// `(γ)x` as λ-source text: the primitive spine written in front of `x`.
/// The primitive names are free variables of the source; see [`closed`].
pub(crate) fn spine_src(g: &CExpr, x: &str) -> String {
    let mut s: String = g
        .flatten()
        .iter()
        .map(|p| format!("({}) ", p.spelling()))
        .collect();
    s.push_str(x);
    s
}

/// Builds a term from λ-source with slots, then turns the remaining free
/// variables (the primitive names written by [`spine_src`]) into constants.
pub(crate) fn closed(src: &str, slots: &[(&str, CTerm)]) -> CTerm {
    crate::term::lam(src, slots).vars_to_consts()
}

/// `ᾱ0`, the lift of `(α0)`.
pub fn alpha0_bar() -> CTerm {
    static T: OnceLock<CTerm> = OnceLock::new();
    T.get_or_init(|| lift(&CExpr::prims(&[CPrim::A0]))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(CPrim::A0.apply(&w("(p^q)^r")), Some(w("p^(q^r)")));
        assert_eq!(CPrim::A1.apply(&Wedge::One), Some(w("1^1")));
        assert_eq!(CPrim::A0.apply(&w("p^q")), None);
    }

    #[test]
    fn beta0_prime_chain_is_the_printed_one() {
        let d = &derived_table()[0];
        let ch = d.expr.chain(&d.from).unwrap();
        assert_eq!(
            format_chain(&d.from, &ch),
            "p∧q; β0; (p∧q)∧(p∧q); α0; p∧(q∧(p∧q)); α2; q∧(p∧q); β1; (p∧q)∧q"
        );
    }

    #[test]
    fn wedge_text_round_trip() {
        for s in ["p", "1", "((p^q)^r)", "(1^(p^(q^r)))"] {
            assert_eq!(parse_wedge(s).unwrap().ascii(), s);
        }
        assert!(parse_wedge("p^q^r").is_err());
        assert_eq!(parse_wedge("p ∧ q").unwrap(), w("(p^q)"));
    }

    #[test]
    fn synth_var_base_cases() {
        assert_eq!(synth_var(&w("p"), "p").unwrap(), CExpr::prims(&[CPrim::B0]));
        assert_eq!(synth_var(&w("u^p"), "p").unwrap().0, vec![derived("β′0")]);
        assert!(synth_var(&w("q"), "p").is_err());
    }

    #[test]
    fn extend_by_one_is_alpha1() {
        assert_eq!(
            synth_extend(&w("p"), &Wedge::One).unwrap(),
            CExpr::prims(&[CPrim::A1])
        );
    }

    #[test]
    fn spine_round_trip() {
        let g = gamma("γK");
        let t = g.apply_term(CTerm::cst("τ"));
        assert_eq!(decode_spine(&t), (g.flatten(), CTerm::cst("τ")));
    }
}
