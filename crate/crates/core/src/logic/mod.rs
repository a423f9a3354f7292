//! Second-order formulas over individuals (conditions), the forcing
//! transform, the χ/δ realizer synthesis that goes with it, and a
//! natural-deduction checker.
//!
//! Derived connectives (⊥, ¬, ∧, ∨, ∃, `x = y`) are not constructors: the
//! parser and the helper constructors expand them into `→`, `∀`.

mod force;
mod nd;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::term::{name, Name};

pub use force::{force, prop_structure, synth_chi, synth_chi_type, synth_delta, PropType};
pub use nd::{nd_check, Derivation, Judgment, NdError};
pub use parse::{parse_formula, parse_iterm, FormulaParseError};

/// Individual terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ITerm {
    Var(Name),
    Zero,
    Succ(Box<ITerm>),
    Fn(Name, Vec<ITerm>),
    One,
    Wedge(Box<ITerm>, Box<ITerm>),
}

impl ITerm {
    pub fn var(s: &str) -> ITerm {
        ITerm::Var(name(s))
    }

    pub fn wedge(a: ITerm, b: ITerm) -> ITerm {
        ITerm::Wedge(Box::new(a), Box::new(b))
    }

    pub fn succ(a: ITerm) -> ITerm {
        ITerm::Succ(Box::new(a))
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            ITerm::Var(x) => {
                out.insert(x.clone());
            }
            ITerm::Zero | ITerm::One => {}
            ITerm::Succ(t) => t.collect_vars(out),
            ITerm::Fn(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            ITerm::Wedge(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn subst(&self, x: &str, u: &ITerm) -> ITerm {
        match self {
            ITerm::Var(y) if &**y == x => u.clone(),
            ITerm::Var(_) | ITerm::Zero | ITerm::One => self.clone(),
            ITerm::Succ(t) => ITerm::succ(t.subst(x, u)),
            ITerm::Fn(f, args) => {
                ITerm::Fn(f.clone(), args.iter().map(|a| a.subst(x, u)).collect())
            }
            ITerm::Wedge(a, b) => ITerm::wedge(a.subst(x, u), b.subst(x, u)),
        }
    }
}

/// A predicate symbol in atomic position: a variable `X`, its companion
/// `X⁺`, or a second-order parameter `𝒳` (written `$X`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pred {
    pub name: Name,
    pub plus: bool,
    pub param: bool,
}

impl Pred {
    pub fn var(s: &str) -> Pred {
        Pred {
            name: name(s),
            plus: false,
            param: false,
        }
    }

    pub fn param(s: &str) -> Pred {
        Pred {
            name: name(s),
            plus: false,
            param: true,
        }
    }

    pub fn plus(&self) -> Pred {
        Pred {
            plus: true,
            ..self.clone()
        }
    }
}

/// Formulas of the core grammar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Pred, Vec<ITerm>),
    Imp(Box<Formula>, Box<Formula>),
    ForallInd(Name, Box<Formula>),
    /// `∀X A` with the arity of `X`.
    ForallPred(Pred, usize, Box<Formula>),
    /// `R(t⃗) → B` for a predicate constant `R`.
    RelArrow(Name, Vec<ITerm>, Box<Formula>),
    /// `R(t⃗) ↦ B`.
    RelMaps(Name, Vec<ITerm>, Box<Formula>),
    /// `t1 = t2 ↦ B`.
    EqMaps(ITerm, ITerm, Box<Formula>),
    /// `C[t] → B`.
    Cond(ITerm, Box<Formula>),
    /// `t ε u`.
    Eps(ITerm, ITerm),
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("{pred} is used with {found} arguments but has arity {expected}")]
    Arity {
        pred: String,
        expected: usize,
        found: usize,
    },
    #[error("the formula already mentions {0}; forcing applies to formulas without X⁺ variables")]
    PlusVariable(String),
    #[error("not a first-order formula: {0}")]
    NotFirstOrder(String),
}

/// The bound variable used by `⊥ ≡ ∀X X`.
const BOT_VAR: &str = "X";

impl Formula {
    pub fn atom(p: &str, args: Vec<ITerm>) -> Formula {
        Formula::Atom(Pred::var(p), args)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// `A1, …, An → B`.
    pub fn imps(hyps: impl IntoIterator<Item = Formula>, b: Formula) -> Formula {
        let hyps: Vec<_> = hyps.into_iter().collect();
        hyps.into_iter()
            .rev()
            .fold(b, |acc, h| Formula::imp(h, acc))
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::ForallInd(name(x), Box::new(a))
    }

    pub fn forall_pred(x: &str, arity: usize, a: Formula) -> Formula {
        Formula::ForallPred(Pred::var(x), arity, Box::new(a))
    }

    /// `⊥ ≡ ∀X X`.
    pub fn bot() -> Formula {
        Formula::forall_pred(BOT_VAR, 0, Formula::atom(BOT_VAR, vec![]))
    }

    pub fn is_bot(&self) -> bool {
        match self {
            Formula::ForallPred(x, 0, body) => {
                matches!(&**body, Formula::Atom(y, args) if y == x && args.is_empty())
            }
            _ => false,
        }
    }

    /// `¬A ≡ A → ⊥`.
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::bot())
    }

    /// `A ∧ B ≡ (A, B → ⊥) → ⊥`.
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::imps([a, b], Formula::bot()))
    }

    /// `A ∨ B ≡ (A → ⊥), (B → ⊥) → ⊥`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::imps([Formula::not(a), Formula::not(b)], Formula::bot())
    }

    /// `∃x{F1, …, Fk} ≡ ∀x(F1, …, Fk → ⊥) → ⊥`.
    pub fn exists(x: &str, fs: Vec<Formula>) -> Formula {
        Formula::not(Formula::forall(x, Formula::imps(fs, Formula::bot())))
    }

    pub fn exists_pred(x: &str, arity: usize, fs: Vec<Formula>) -> Formula {
        Formula::not(Formula::forall_pred(
            x,
            arity,
            Formula::imps(fs, Formula::bot()),
        ))
    }

    /// `x = y ≡ ∀Z(Zx → Zy)`.
    pub fn eq(t: ITerm, u: ITerm) -> Formula {
        let z = fresh("Z", &t.vars().union(&u.vars()).cloned().collect());
        Formula::forall_pred(
            &z,
            1,
            Formula::imp(Formula::atom(&z, vec![t]), Formula::atom(&z, vec![u])),
        )
    }

    /// `C[t] → B`.
    pub fn cond(t: ITerm, b: Formula) -> Formula {
        Formula::Cond(t, Box::new(b))
    }

    /// Free individual variables.
    pub fn free_ind(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.walk_free(
            &mut BTreeSet::new(),
            &mut BTreeSet::new(),
            &mut out,
            &mut BTreeSet::new(),
        );
        out
    }

    /// Free predicate symbols (variables, `X⁺` and parameters).
    pub fn free_preds(&self) -> BTreeSet<Pred> {
        let mut out = BTreeSet::new();
        self.walk_free(
            &mut BTreeSet::new(),
            &mut BTreeSet::new(),
            &mut BTreeSet::new(),
            &mut out,
        );
        out
    }

    fn walk_free(
        &self,
        bound_i: &mut BTreeSet<Name>,
        bound_p: &mut BTreeSet<Pred>,
        ind: &mut BTreeSet<Name>,
        preds: &mut BTreeSet<Pred>,
    ) {
        let terms = |ts: &[&ITerm], ind: &mut BTreeSet<Name>| {
            for t in ts {
                for v in t.vars() {
                    if !bound_i.contains(&v) {
                        ind.insert(v);
                    }
                }
            }
        };
        match self {
            Formula::Atom(p, args) => {
                if !bound_p.contains(p) {
                    preds.insert(p.clone());
                }
                terms(&args.iter().collect::<Vec<_>>(), ind);
            }
            Formula::Imp(a, b) => {
                a.walk_free(bound_i, bound_p, ind, preds);
                b.walk_free(bound_i, bound_p, ind, preds);
            }
            Formula::ForallInd(x, a) => {
                let fresh = bound_i.insert(x.clone());
                a.walk_free(bound_i, bound_p, ind, preds);
                if fresh {
                    bound_i.remove(x);
                }
            }
            Formula::ForallPred(x, _, a) => {
                let fresh = bound_p.insert(x.clone());
                a.walk_free(bound_i, bound_p, ind, preds);
                if fresh {
                    bound_p.remove(x);
                }
            }
            Formula::RelArrow(_, args, b) | Formula::RelMaps(_, args, b) => {
                terms(&args.iter().collect::<Vec<_>>(), ind);
                b.walk_free(bound_i, bound_p, ind, preds);
            }
            Formula::EqMaps(t, u, b) => {
                terms(&[t, u], ind);
                b.walk_free(bound_i, bound_p, ind, preds);
            }
            Formula::Cond(t, b) => {
                terms(&[t], ind);
                b.walk_free(bound_i, bound_p, ind, preds);
            }
            Formula::Eps(t, u) => terms(&[t, u], ind),
            Formula::Top => {}
        }
    }

    /// Every individual variable name occurring anywhere, bound or free.
    fn all_ind_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| out.extend(a.vars())),
            Formula::Imp(a, b) => {
                a.all_ind_names(out);
                b.all_ind_names(out);
            }
            Formula::ForallInd(x, a) => {
                out.insert(x.clone());
                a.all_ind_names(out);
            }
            Formula::ForallPred(_, _, a) => a.all_ind_names(out),
            Formula::RelArrow(_, args, b) | Formula::RelMaps(_, args, b) => {
                args.iter().for_each(|a| out.extend(a.vars()));
                b.all_ind_names(out);
            }
            Formula::EqMaps(t, u, b) => {
                out.extend(t.vars());
                out.extend(u.vars());
                b.all_ind_names(out);
            }
            Formula::Cond(t, b) => {
                out.extend(t.vars());
                b.all_ind_names(out);
            }
            Formula::Eps(t, u) => {
                out.extend(t.vars());
                out.extend(u.vars());
            }
            Formula::Top => {}
        }
    }

    /// `A[u/x]`, renaming bound variables that would capture `u`.
    pub fn subst_ind(&self, x: &str, u: &ITerm) -> Formula {
        let uv = u.vars();
        self.subst_ind_with(x, u, &uv)
    }

    fn subst_ind_with(&self, x: &str, u: &ITerm, uv: &BTreeSet<Name>) -> Formula {
        let s = |t: &ITerm| t.subst(x, u);
        let rec = |f: &Formula| Box::new(f.subst_ind_with(x, u, uv));
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(s).collect()),
            Formula::Imp(a, b) => Formula::Imp(rec(a), rec(b)),
            Formula::ForallInd(y, a) => {
                if &**y == x || !a.free_ind().contains(x) {
                    return self.clone();
                }
                if uv.contains(y) {
                    let mut avoid = uv.clone();
                    self.all_ind_names(&mut avoid);
                    avoid.insert(name(x));
                    let y2 = fresh(y, &avoid);
                    let renamed = a.subst_ind(y, &ITerm::var(&y2));
                    Formula::ForallInd(name(&y2), Box::new(renamed.subst_ind_with(x, u, uv)))
                } else {
                    Formula::ForallInd(y.clone(), rec(a))
                }
            }
            Formula::ForallPred(p, k, a) => Formula::ForallPred(p.clone(), *k, rec(a)),
            Formula::RelArrow(r, args, b) => {
                Formula::RelArrow(r.clone(), args.iter().map(s).collect(), rec(b))
            }
            Formula::RelMaps(r, args, b) => {
                Formula::RelMaps(r.clone(), args.iter().map(s).collect(), rec(b))
            }
            Formula::EqMaps(t1, t2, b) => Formula::EqMaps(s(t1), s(t2), rec(b)),
            Formula::Cond(t, b) => Formula::Cond(s(t), rec(b)),
            Formula::Eps(t1, t2) => Formula::Eps(s(t1), s(t2)),
            Formula::Top => Formula::Top,
        }
    }

    /// Replaces free occurrences of the predicate symbol `from` by `to`
    /// (same arity), e.g. a variable by a parameter.
    pub fn rename_pred(&self, from: &Pred, to: &Pred) -> Formula {
        let rec = |f: &Formula| Box::new(f.rename_pred(from, to));
        match self {
            Formula::Atom(p, args) if p == from => Formula::Atom(to.clone(), args.clone()),
            Formula::Atom(..) | Formula::Eps(..) | Formula::Top => self.clone(),
            Formula::Imp(a, b) => Formula::Imp(rec(a), rec(b)),
            Formula::ForallInd(x, a) => Formula::ForallInd(x.clone(), rec(a)),
            Formula::ForallPred(p, _, _) if p == from => self.clone(),
            Formula::ForallPred(p, k, a) => Formula::ForallPred(p.clone(), *k, rec(a)),
            Formula::RelArrow(r, args, b) => Formula::RelArrow(r.clone(), args.clone(), rec(b)),
            Formula::RelMaps(r, args, b) => Formula::RelMaps(r.clone(), args.clone(), rec(b)),
            Formula::EqMaps(t, u, b) => Formula::EqMaps(t.clone(), u.clone(), rec(b)),
            Formula::Cond(t, b) => Formula::Cond(t.clone(), rec(b)),
        }
    }

    /// `A[F/Xy1…yk]`: every atom `X(t1,…,tk)` becomes `F[t⃗/y⃗]`.
    pub fn subst_pred(
        &self,
        x: &Pred,
        k: usize,
        f: &Formula,
        ys: &[Name],
    ) -> Result<Formula, LogicError> {
        if ys.len() != k {
            return Err(LogicError::Arity {
                pred: pred_label(x),
                expected: k,
                found: ys.len(),
            });
        }
        let mut f_free_ind = f.free_ind();
        for y in ys {
            f_free_ind.remove(y);
        }
        let f_free_preds = f.free_preds();
        self.subst_pred_go(x, k, f, ys, &f_free_ind, &f_free_preds)
    }

    fn subst_pred_go(
        &self,
        x: &Pred,
        k: usize,
        f: &Formula,
        ys: &[Name],
        fi: &BTreeSet<Name>,
        fp: &BTreeSet<Pred>,
    ) -> Result<Formula, LogicError> {
        let rec = |g: &Formula| g.subst_pred_go(x, k, f, ys, fi, fp).map(Box::new);
        Ok(match self {
            Formula::Atom(p, args) if p == x => {
                if args.len() != k {
                    return Err(LogicError::Arity {
                        pred: pred_label(p),
                        expected: k,
                        found: args.len(),
                    });
                }
                instantiate(f, ys, args)
            }
            Formula::Atom(..) | Formula::Eps(..) | Formula::Top => self.clone(),
            Formula::Imp(a, b) => Formula::Imp(rec(a)?, rec(b)?),
            Formula::ForallInd(y, a) => {
                if fi.contains(y) {
                    let mut avoid = fi.clone();
                    self.all_ind_names(&mut avoid);
                    let y2 = fresh(y, &avoid);
                    let a2 = a.subst_ind(y, &ITerm::var(&y2));
                    Formula::ForallInd(name(&y2), rec(&a2)?)
                } else {
                    Formula::ForallInd(y.clone(), rec(a)?)
                }
            }
            Formula::ForallPred(p, _, _) if p == x => self.clone(),
            Formula::ForallPred(p, n, a) => {
                if fp.contains(p) {
                    let avoid: BTreeSet<Name> = fp
                        .iter()
                        .chain(a.free_preds().iter())
                        .map(|q| q.name.clone())
                        .collect();
                    let p2 = Pred {
                        name: name(&fresh(&p.name, &avoid)),
                        ..p.clone()
                    };
                    let a2 = a.rename_pred(p, &p2);
                    Formula::ForallPred(p2, *n, rec(&a2)?)
                } else {
                    Formula::ForallPred(p.clone(), *n, rec(a)?)
                }
            }
            Formula::RelArrow(r, args, b) => Formula::RelArrow(r.clone(), args.clone(), rec(b)?),
            Formula::RelMaps(r, args, b) => Formula::RelMaps(r.clone(), args.clone(), rec(b)?),
            Formula::EqMaps(t, u, b) => Formula::EqMaps(t.clone(), u.clone(), rec(b)?),
            Formula::Cond(t, b) => Formula::Cond(t.clone(), rec(b)?),
        })
    }

    /// Renames bound variables to `%0, %1, …` (individuals) and `%P0, …`
    /// (predicates) by binding depth.
    pub fn canonical(&self) -> Formula {
        self.canon(0)
    }

    fn canon(&self, depth: usize) -> Formula {
        match self {
            Formula::ForallInd(x, a) => {
                let n = format!("%{depth}");
                let a2 = a.subst_ind(x, &ITerm::var(&n));
                Formula::ForallInd(name(&n), Box::new(a2.canon(depth + 1)))
            }
            Formula::ForallPred(p, k, a) => {
                let p2 = Pred {
                    name: name(&format!("%P{depth}")),
                    ..p.clone()
                };
                let a2 = a.rename_pred(p, &p2);
                Formula::ForallPred(p2, *k, Box::new(a2.canon(depth + 1)))
            }
            Formula::Imp(a, b) => Formula::imp(a.canon(depth), b.canon(depth)),
            Formula::RelArrow(r, args, b) => {
                Formula::RelArrow(r.clone(), args.clone(), Box::new(b.canon(depth)))
            }
            Formula::RelMaps(r, args, b) => {
                Formula::RelMaps(r.clone(), args.clone(), Box::new(b.canon(depth)))
            }
            Formula::EqMaps(t, u, b) => {
                Formula::EqMaps(t.clone(), u.clone(), Box::new(b.canon(depth)))
            }
            Formula::Cond(t, b) => Formula::Cond(t.clone(), Box::new(b.canon(depth))),
            _ => self.clone(),
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self.canonical() == other.canonical()
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eps(..) | Formula::Top => 1,
            Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::ForallInd(_, a) | Formula::ForallPred(_, _, a) => 1 + a.size(),
            Formula::RelArrow(_, _, b)
            | Formula::RelMaps(_, _, b)
            | Formula::EqMaps(_, _, b)
            | Formula::Cond(_, b) => 1 + b.size(),
        }
    }

    /// Whether the formula is built by the first-order clauses: `⊥`,
    /// `A → B`, `R(t⃗) → B`, `C[t] → B`, `t1 = t2 ↦ B`, `∀x A`, `t ε u`.
    pub fn is_first_order(&self) -> bool {
        if self.is_bot() {
            return true;
        }
        match self {
            Formula::Imp(a, b) => a.is_first_order() && b.is_first_order(),
            Formula::RelArrow(_, _, b) | Formula::Cond(_, b) | Formula::EqMaps(_, _, b) => {
                b.is_first_order()
            }
            Formula::ForallInd(_, a) => a.is_first_order(),
            Formula::Eps(..) => true,
            _ => false,
        }
    }

    /// Renders in the ASCII syntax accepted by [`parse_formula`].
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        write_formula(&mut s, self, false, Style::Ascii);
        s
    }
}

fn pred_label(p: &Pred) -> String {
    let mut s = String::new();
    write_pred(&mut s, p, Style::Unicode);
    s
}

fn instantiate(f: &Formula, ys: &[Name], args: &[ITerm]) -> Formula {
    // Rename the parameters apart first so that simultaneous substitution
    // is not confused by arguments mentioning other parameters.
    let mut avoid = BTreeSet::new();
    f.all_ind_names(&mut avoid);
    args.iter().for_each(|a| avoid.extend(a.vars()));
    avoid.extend(ys.iter().cloned());
    let mut g = f.clone();
    let mut tmp = Vec::new();
    for y in ys {
        let t = fresh(&format!("{y}'"), &avoid);
        avoid.insert(name(&t));
        g = g.subst_ind(y, &ITerm::var(&t));
        tmp.push(t);
    }
    for (t, a) in tmp.iter().zip(args) {
        g = g.subst_ind(t, a);
    }
    g
}

/// A name based on `base` not in `avoid`.
pub(crate) fn fresh(base: &str, avoid: &BTreeSet<Name>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !avoid.contains(c.as_str()))
        .expect("infinitely many candidates")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Ascii,
    Unicode,
}

fn write_iterm(s: &mut String, t: &ITerm, style: Style) {
    match t {
        ITerm::Var(x) => s.push_str(x),
        ITerm::Zero => s.push('0'),
        ITerm::One => s.push('1'),
        ITerm::Succ(a) => {
            s.push_str("s(");
            write_iterm(s, a, style);
            s.push(')');
        }
        ITerm::Fn(f, args) => {
            s.push_str(f);
            write_args(s, args, style);
        }
        ITerm::Wedge(a, b) => {
            s.push('(');
            write_iterm(s, a, style);
            s.push_str(if style == Style::Ascii { " ^ " } else { "∧" });
            write_iterm(s, b, style);
            s.push(')');
        }
    }
}

/// Terms at the top of an argument position drop their outer parentheses.
fn write_iterm_top(s: &mut String, t: &ITerm, style: Style) {
    if let ITerm::Wedge(a, b) = t {
        write_iterm(s, a, style);
        s.push_str(if style == Style::Ascii { " ^ " } else { "∧" });
        write_iterm(s, b, style);
    } else {
        write_iterm(s, t, style);
    }
}

fn write_args(s: &mut String, args: &[ITerm], style: Style) {
    s.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        write_iterm_top(s, a, style);
    }
    s.push(')');
}

fn write_pred(s: &mut String, p: &Pred, style: Style) {
    if p.param {
        s.push('$');
    }
    s.push_str(&p.name);
    if p.plus {
        s.push_str(if style == Style::Ascii { "+" } else { "⁺" });
    }
}

/// `nested`: the formula sits in a position where an arrow must be
/// parenthesised (left of an arrow, or under a quantifier).
fn write_formula(s: &mut String, f: &Formula, nested: bool, style: Style) {
    let u = style == Style::Unicode;
    let arrow = if u { " → " } else { " -> " };
    let maps = if u { " ↦ " } else { " |-> " };
    if f.is_bot() {
        s.push_str(if u { "⊥" } else { "bot" });
        return;
    }
    let is_arrowish = matches!(
        f,
        Formula::Imp(..)
            | Formula::RelArrow(..)
            | Formula::RelMaps(..)
            | Formula::EqMaps(..)
            | Formula::Cond(..)
    );
    if nested && is_arrowish {
        s.push('(');
        write_formula(s, f, false, style);
        s.push(')');
        return;
    }
    match f {
        Formula::Atom(p, args) => {
            write_pred(s, p, style);
            if !args.is_empty() {
                write_args(s, args, style);
            }
        }
        Formula::Imp(a, b) => {
            write_formula(s, a, true, style);
            s.push_str(arrow);
            write_formula(s, b, false, style);
        }
        Formula::ForallInd(x, a) => {
            if u {
                s.push('∀');
                s.push_str(x);
                if !matches!(
                    **a,
                    Formula::Imp(..)
                        | Formula::RelArrow(..)
                        | Formula::RelMaps(..)
                        | Formula::EqMaps(..)
                        | Formula::Cond(..)
                ) || a.is_bot()
                {
                    s.push(' ');
                }
            } else {
                s.push_str("forall ");
                s.push_str(x);
                s.push_str(". ");
            }
            write_formula(s, a, true, style);
        }
        Formula::ForallPred(p, k, a) => {
            if u {
                s.push('∀');
                write_pred(s, p, style);
                if !matches!(
                    **a,
                    Formula::Imp(..)
                        | Formula::RelArrow(..)
                        | Formula::RelMaps(..)
                        | Formula::EqMaps(..)
                        | Formula::Cond(..)
                ) || a.is_bot()
                {
                    s.push(' ');
                }
            } else {
                s.push_str("forall2 ");
                write_pred(s, p, style);
                s.push_str(&format!("/{k}. "));
            }
            write_formula(s, a, true, style);
        }
        Formula::RelArrow(r, args, b) | Formula::RelMaps(r, args, b) => {
            if !u {
                s.push('@');
            }
            s.push_str(r);
            write_args(s, args, style);
            s.push_str(if matches!(f, Formula::RelArrow(..)) {
                arrow
            } else {
                maps
            });
            write_formula(s, b, false, style);
        }
        Formula::EqMaps(t1, t2, b) => {
            write_iterm_top(s, t1, style);
            s.push_str(" = ");
            write_iterm_top(s, t2, style);
            s.push_str(maps);
            write_formula(s, b, false, style);
        }
        Formula::Cond(t, b) => {
            s.push_str("C[");
            write_iterm_top(s, t, style);
            s.push(']');
            s.push_str(arrow);
            write_formula(s, b, false, style);
        }
        Formula::Eps(t1, t2) => {
            write_iterm(s, t1, style);
            s.push_str(if u { " ε " } else { " eps " });
            write_iterm(s, t2, style);
        }
        Formula::Top => s.push_str(if u { "⊤" } else { "top" }),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(&mut s, self, false, Style::Unicode);
        f.write_str(&s)
    }
}

impl fmt::Display for ITerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_iterm_top(&mut s, self, Style::Unicode);
        f.write_str(&s)
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pred_label(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> ITerm {
        ITerm::var(s)
    }

    #[test]
    fn bot_is_recognized() {
        assert!(Formula::bot().is_bot());
        assert_eq!(Formula::bot().to_string(), "⊥");
        assert!(Formula::bot().is_first_order());
        assert!(!Formula::forall_pred("X", 0, Formula::atom("Y", vec![])).is_first_order());
    }

    #[test]
    fn eq_unfolds_under_substitution() {
        // (∀Z(Zx → Zy))[z = z / Z z] is x = x → y = y
        let body = Formula::imp(
            Formula::atom("Z", vec![x("x")]),
            Formula::atom("Z", vec![x("y")]),
        );
        let f = Formula::eq(x("z"), x("z"));
        let got = body
            .subst_pred(&Pred::var("Z"), 1, &f, &[name("z")])
            .unwrap();
        assert!(got.alpha_eq(&Formula::imp(
            Formula::eq(x("x"), x("x")),
            Formula::eq(x("y"), x("y"))
        )));
    }

    #[test]
    fn subst_into_unrelated_formula() {
        let a = Formula::imp(Formula::atom("Y", vec![]), Formula::atom("Y", vec![]));
        let got = a
            .subst_pred(&Pred::var("X"), 0, &Formula::Top, &[])
            .unwrap();
        assert_eq!(got, a);
    }

    #[test]
    fn subst_pred_avoids_capture() {
        // ∀y X(y) with X z := z = y must rename the binder.
        let a = Formula::forall("y", Formula::atom("X", vec![x("y")]));
        let f = Formula::eq(x("z"), x("y"));
        let got = a.subst_pred(&Pred::var("X"), 1, &f, &[name("z")]).unwrap();
        assert!(got.free_ind().contains("y"));
        match got {
            Formula::ForallInd(b, _) => assert_ne!(&*b, "y"),
            _ => panic!(),
        }
    }

    #[test]
    fn arity_mismatch() {
        let a = Formula::atom("X", vec![x("a"), x("b")]);
        assert!(a
            .subst_pred(&Pred::var("X"), 1, &Formula::Top, &[name("z")])
            .is_err());
    }
}
