//! Natural deduction with proof terms, for formulas built from `→` and `∀`.

use std::fmt;

use thiserror::Error;

use super::{Formula, ITerm, LogicError, Pred};
use crate::term::{compile, name, Atom, CTerm, LTerm, Name};

/// A derivation tree. Each node is one rule application; the subject term
/// is read off the tree.
#[derive(Clone, Debug)]
pub enum Derivation {
    /// `x1 : A1, …, xn : An ⊢ xi : Ai`.
    Hyp(Name),
    /// From `t : A → B` and `u : A`, `tu : B`.
    App(Box<Derivation>, Box<Derivation>),
    /// Discharges `x : A`, giving `λx t : A → B`.
    Lam {
        var: Name,
        hyp: Formula,
        body: Box<Derivation>,
    },
    /// `∀x` introduction; `x` must not be free in the context.
    Gen { var: Name, body: Box<Derivation> },
    /// `∀X` introduction for a predicate variable of the given arity.
    GenPred {
        var: Name,
        arity: usize,
        body: Box<Derivation>,
    },
    /// From `t : ∀x A`, `t : A[τ/x]`.
    InstInd { term: ITerm, body: Box<Derivation> },
    /// From `t : ∀X A`, `t : A[F/Xy⃗]`.
    InstPred {
        formula: Formula,
        params: Vec<Name>,
        body: Box<Derivation>,
    },
    /// `cc : ((A → B) → A) → A`.
    Peirce { a: Formula, b: Formula },
    /// States the expected conclusion of the subderivation.
    Claim {
        formula: Formula,
        body: Box<Derivation>,
    },
}

impl Derivation {
    pub fn hyp(x: &str) -> Derivation {
        Derivation::Hyp(name(x))
    }

    pub fn app(f: Derivation, a: Derivation) -> Derivation {
        Derivation::App(Box::new(f), Box::new(a))
    }

    pub fn lam(x: &str, hyp: Formula, body: Derivation) -> Derivation {
        Derivation::Lam {
            var: name(x),
            hyp,
            body: Box::new(body),
        }
    }

    pub fn gen(x: &str, body: Derivation) -> Derivation {
        Derivation::Gen {
            var: name(x),
            body: Box::new(body),
        }
    }

    pub fn gen_pred(x: &str, arity: usize, body: Derivation) -> Derivation {
        Derivation::GenPred {
            var: name(x),
            arity,
            body: Box::new(body),
        }
    }

    pub fn inst_ind(term: ITerm, body: Derivation) -> Derivation {
        Derivation::InstInd {
            term,
            body: Box::new(body),
        }
    }

    pub fn inst_pred(formula: Formula, params: &[&str], body: Derivation) -> Derivation {
        Derivation::InstPred {
            formula,
            params: params.iter().map(|p| name(p)).collect(),
            body: Box::new(body),
        }
    }

    pub fn claim(formula: Formula, body: Derivation) -> Derivation {
        Derivation::Claim {
            formula,
            body: Box::new(body),
        }
    }
}

/// `x1 : A1, …, xn : An ⊢ t : A`.
#[derive(Clone, Debug)]
pub struct Judgment {
    pub context: Vec<(Name, Formula)>,
    pub subject: LTerm,
    pub conclusion: Formula,
}

impl Judgment {
    /// The subject as a c-term.
    pub fn compiled(&self) -> CTerm {
        compile(&self.subject)
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, a)) in self.context.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} : {a}")?;
        }
        if !self.context.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "⊢ {} : {}", self.subject, self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {at}: {reason}")]
pub struct NdError {
    /// Path from the root, e.g. `root.fun.arg`.
    pub at: String,
    pub reason: String,
}

/// Checks a derivation under the given context and returns its conclusion.
pub fn nd_check(context: &[(Name, Formula)], d: &Derivation) -> Result<Judgment, NdError> {
    for (i, (x, _)) in context.iter().enumerate() {
        if context[..i].iter().any(|(y, _)| y == x) {
            return Err(NdError {
                at: "context".into(),
                reason: format!("variable {x} is declared twice"),
            });
        }
    }
    let mut ctx = context.to_vec();
    let (subject, conclusion) = check(&mut ctx, d, "root")?;
    Ok(Judgment {
        context: context.to_vec(),
        subject,
        conclusion,
    })
}

fn fail<T>(at: &str, reason: impl Into<String>) -> Result<T, NdError> {
    Err(NdError {
        at: at.to_string(),
        reason: reason.into(),
    })
}

fn logic_err(at: &str, e: LogicError) -> NdError {
    NdError {
        at: at.to_string(),
        reason: e.to_string(),
    }
}

fn check(
    ctx: &mut Vec<(Name, Formula)>,
    d: &Derivation,
    at: &str,
) -> Result<(LTerm, Formula), NdError> {
    match d {
        Derivation::Hyp(x) => match ctx.iter().rev().find(|(y, _)| y == x) {
            Some((_, a)) => Ok((LTerm::Var(x.clone()), a.clone())),
            None => fail(at, format!("{x} is not in the context")),
        },
        Derivation::App(f, a) => {
            let (tf, ff) = check(ctx, f, &format!("{at}.fun"))?;
            let (ta, fa) = check(ctx, a, &format!("{at}.arg"))?;
            match ff {
                Formula::Imp(h, c) if h.alpha_eq(&fa) => Ok((LTerm::app(tf, ta), *c)),
                Formula::Imp(h, _) => fail(
                    at,
                    format!("function expects {h} but the argument proves {fa}"),
                ),
                other => fail(at, format!("{other} is not an implication")),
            }
        }
        Derivation::Lam { var, hyp, body } => {
            if ctx.iter().any(|(y, _)| y == var) {
                return fail(at, format!("{var} is already in the context"));
            }
            ctx.push((var.clone(), hyp.clone()));
            let r = check(ctx, body, &format!("{at}.body"));
            ctx.pop();
            let (t, b) = r?;
            Ok((LTerm::lam(var, t), Formula::imp(hyp.clone(), b)))
        }
        Derivation::Gen { var, body } => {
            if let Some((y, _)) = ctx.iter().find(|(_, a)| a.free_ind().contains(var)) {
                return fail(at, format!("{var} is free in the hypothesis {y}"));
            }
            let (t, a) = check(ctx, body, &format!("{at}.body"))?;
            Ok((t, Formula::ForallInd(var.clone(), Box::new(a))))
        }
        Derivation::GenPred { var, arity, body } => {
            let x = Pred::var(var);
            if let Some((y, _)) = ctx.iter().find(|(_, a)| a.free_preds().contains(&x)) {
                return fail(at, format!("{var} is free in the hypothesis {y}"));
            }
            let (t, a) = check(ctx, body, &format!("{at}.body"))?;
            Ok((t, Formula::ForallPred(x, *arity, Box::new(a))))
        }
        Derivation::InstInd { term, body } => {
            let (t, a) = check(ctx, body, &format!("{at}.body"))?;
            match a {
                Formula::ForallInd(x, inner) => Ok((t, inner.subst_ind(&x, term))),
                other => fail(at, format!("{other} is not a first-order universal")),
            }
        }
        Derivation::InstPred {
            formula,
            params,
            body,
        } => {
            let (t, a) = check(ctx, body, &format!("{at}.body"))?;
            match a {
                Formula::ForallPred(x, k, inner) => {
                    if params.len() != k {
                        return fail(
                            at,
                            format!(
                                "{x} has arity {k} but {} parameters were given",
                                params.len()
                            ),
                        );
                    }
                    let b = inner
                        .subst_pred(&x, k, formula, params)
                        .map_err(|e| logic_err(at, e))?;
                    Ok((t, b))
                }
                other => fail(at, format!("{other} is not a second-order universal")),
            }
        }
        Derivation::Peirce { a, b } => {
            let ab_a = Formula::imp(Formula::imp(a.clone(), b.clone()), a.clone());
            Ok((LTerm::Atom(Atom::Cc), Formula::imp(ab_a, a.clone())))
        }
        Derivation::Claim { formula, body } => {
            let (t, a) = check(ctx, body, at)?;
            if a.alpha_eq(formula) {
                Ok((t, a))
            } else {
                fail(at, format!("derived {a}, claimed {formula}"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Formula {
        Formula::atom("A", vec![])
    }

    #[test]
    fn hypothesis_leaf() {
        let ctx = [(name("x"), x())];
        let j = nd_check(&ctx, &Derivation::hyp("x")).unwrap();
        assert_eq!(j.to_string(), "x : A ⊢ x : A");
    }

    #[test]
    fn unknown_hypothesis_is_named() {
        let d = Derivation::lam("x", x(), Derivation::hyp("y"));
        let e = nd_check(&[], &d).unwrap_err();
        assert_eq!(e.at, "root.body");
    }

    #[test]
    fn instantiation() {
        let p = Formula::forall("x", Formula::atom("P", vec![ITerm::var("x")]));
        let ctx = [(name("t"), p)];
        let d = Derivation::inst_ind(ITerm::succ(ITerm::Zero), Derivation::hyp("t"));
        let j = nd_check(&ctx, &d).unwrap();
        assert_eq!(
            j.conclusion,
            Formula::atom("P", vec![ITerm::succ(ITerm::Zero)])
        );
    }
}
