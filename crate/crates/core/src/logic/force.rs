use std::collections::BTreeSet;
use std::fmt;

use super::{fresh, Formula, ITerm, LogicError};
use crate::term::{name, Atom, CTerm, Name};
use crate::wedge::{alpha0_bar, closed, gamma, lift, proj, spine_src};

/// Simple types over a single atom `O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropType {
    O,
    Arrow(Box<PropType>, Box<PropType>),
}

impl PropType {
    pub fn arrow(a: PropType, b: PropType) -> PropType {
        PropType::Arrow(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for PropType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropType::O => write!(f, "O"),
            PropType::Arrow(a, b) => match **a {
                PropType::O => write!(f, "O→{b}"),
                _ => write!(f, "({a})→{b}"),
            },
        }
    }
}

/// Erases quantifiers and `↦` guards, collapses atoms to `O`.
pub fn prop_structure(f: &Formula) -> PropType {
    match f {
        Formula::Atom(..) | Formula::Eps(..) | Formula::Top => PropType::O,
        Formula::Imp(a, b) => PropType::arrow(prop_structure(a), prop_structure(b)),
        Formula::RelArrow(_, _, b) | Formula::Cond(_, b) => {
            PropType::arrow(PropType::O, prop_structure(b))
        }
        Formula::ForallInd(_, a)
        | Formula::ForallPred(_, _, a)
        | Formula::RelMaps(_, _, a)
        | Formula::EqMaps(_, _, a) => prop_structure(a),
    }
}

/// `p ⊩ F`.
///
/// Bound individual variables introduced for conditions avoid every name
/// already present in `p` and `F`, so the output never captures.
pub fn force(p: &ITerm, f: &Formula) -> Result<Formula, LogicError> {
    if let Some(x) = plus_pred(f) {
        return Err(LogicError::PlusVariable(x));
    }
    let mut avoid = BTreeSet::new();
    f.all_ind_names(&mut avoid);
    avoid.extend(p.vars());
    Ok(go(p, f, &mut avoid))
}

fn plus_pred(f: &Formula) -> Option<String> {
    match f {
        Formula::Atom(x, _) if x.plus => Some(format!("{x}")),
        Formula::ForallPred(x, _, _) if x.plus => Some(format!("{x}")),
        Formula::Atom(..) | Formula::Eps(..) | Formula::Top => None,
        Formula::Imp(a, b) => plus_pred(a).or_else(|| plus_pred(b)),
        Formula::ForallInd(_, a)
        | Formula::ForallPred(_, _, a)
        | Formula::RelArrow(_, _, a)
        | Formula::RelMaps(_, _, a)
        | Formula::EqMaps(_, _, a)
        | Formula::Cond(_, a) => plus_pred(a),
    }
}

fn fresh_cond(avoid: &mut BTreeSet<Name>) -> Name {
    let q = name(&fresh("q", avoid));
    avoid.insert(q.clone());
    q
}

fn go(p: &ITerm, f: &Formula, avoid: &mut BTreeSet<Name>) -> Formula {
    match f {
        Formula::Atom(x, args) => {
            let q = fresh_cond(avoid);
            let qv = ITerm::Var(q.clone());
            let mut plus_args = vec![qv.clone()];
            plus_args.extend(args.iter().cloned());
            Formula::ForallInd(
                q,
                Box::new(Formula::cond(
                    ITerm::wedge(p.clone(), qv),
                    Formula::Atom(x.plus(), plus_args),
                )),
            )
        }
        Formula::Imp(a, b) => {
            let q = fresh_cond(avoid);
            let qv = ITerm::Var(q.clone());
            let fa = go(&qv, a, avoid);
            let fb = go(&ITerm::wedge(p.clone(), qv), b, avoid);
            Formula::ForallInd(q, Box::new(Formula::imp(fa, fb)))
        }
        Formula::ForallInd(x, a) => Formula::ForallInd(x.clone(), Box::new(go(p, a, avoid))),
        Formula::ForallPred(x, k, a) => {
            Formula::ForallPred(x.plus(), k + 1, Box::new(go(p, a, avoid)))
        }
        Formula::RelArrow(r, args, b) => {
            Formula::RelArrow(r.clone(), args.clone(), Box::new(go(p, b, avoid)))
        }
        Formula::RelMaps(r, args, b) => {
            Formula::RelMaps(r.clone(), args.clone(), Box::new(go(p, b, avoid)))
        }
        Formula::EqMaps(t, u, b) => {
            Formula::EqMaps(t.clone(), u.clone(), Box::new(go(p, b, avoid)))
        }
        Formula::Cond(t, b) => Formula::Cond(t.clone(), Box::new(go(p, b, avoid))),
        Formula::Eps(..) => Formula::cond(ITerm::wedge(p.clone(), ITerm::One), f.clone()),
        Formula::Top => Formula::Top,
    }
}

/// `(χ_F, χ′_F)` for a propositional structure.
pub fn synth_chi_type(t: &PropType) -> (CTerm, CTerm) {
    match t {
        PropType::O => (Atom::Rd.into(), Atom::Wr.into()),
        PropType::Arrow(a, b) => {
            let (ca, ca2) = synth_chi_type(a);
            let (cb, cb2) = synth_chi_type(b);
            let chi = closed(
                "\\x \\y (g0) (cB) (x) (cA') y",
                &[("g0", lift(gamma("γ0"))), ("cB", cb), ("cA'", ca2)],
            );
            let chi2 = closed(
                "\\x \\y (cB') (a0 x) (cA) y",
                &[("cB'", cb2), ("a0", alpha0_bar()), ("cA", ca)],
            );
            (chi, chi2)
        }
    }
}

/// `(χ_F, χ′_F)`; depends only on [`prop_structure`].
pub fn synth_chi(f: &Formula) -> (CTerm, CTerm) {
    synth_chi_type(&prop_structure(f))
}

/// `(δ_F, δ′_F)` for a first-order formula.
pub fn synth_delta(f: &Formula) -> Result<(CTerm, CTerm), LogicError> {
    if !f.is_first_order() {
        return Err(LogicError::NotFirstOrder(f.to_string()));
    }
    Ok(delta(f))
}

fn delta(f: &Formula) -> (CTerm, CTerm) {
    let weaken = || spine_src(&proj("p", "p^1"), "y");
    if f.is_bot() || matches!(f, Formula::Eps(..)) {
        let keep = if f.is_bot() {
            proj("p^q", "p")
        } else {
            proj("p^1", "p")
        };
        let d = closed(&format!("\\x (rd) \\y (x) {}", spine_src(&keep, "y")), &[]);
        let d2 = closed(&format!("\\x \\y (wr x) {}", weaken()), &[]);
        return (d, d2);
    }
    match f {
        Formula::Imp(a, b) => {
            let (da, da2) = delta(a);
            let (db, db2) = delta(b);
            let src = format!(
                "\\x \\y (rd) \\z ((wr) (dB) \\d ((x) {}) (dA' y) {}) {}",
                spine_src(&proj("p^(q^r)", "p"), "z"),
                spine_src(&proj("p^(q^r)", "q"), "z"),
                spine_src(&proj("p^(q^r)", "1^r"), "z"),
            );
            let d = closed(&src, &[("dB", db), ("dA'", da2)]);
            let src2 = format!("\\x \\y \\z ((dB') (a0 x) (dA) \\d z) {}", weaken());
            let d2 = closed(&src2, &[("dB'", db2), ("a0", alpha0_bar()), ("dA", da)]);
            (d, d2)
        }
        Formula::RelArrow(_, _, b) | Formula::Cond(_, b) => {
            let (db, db2) = delta(b);
            let d = closed(
                "\\x \\y (abar) (dB) \\z (x) z y",
                &[("abar", lift(&proj("p^(1^r)", "p^r"))), ("dB", db)],
            );
            let src2 = format!("\\x \\y \\z ((dB') (a0) x z) {}", weaken());
            let d2 = closed(&src2, &[("dB'", db2), ("a0", alpha0_bar())]);
            (d, d2)
        }
        Formula::EqMaps(_, _, b) | Formula::ForallInd(_, b) => delta(b),
        other => unreachable!("first-order check admitted {other}"),
    }
}
