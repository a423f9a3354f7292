//! λ-terms and combinator terms over stacks, with their shared text syntax.

mod compile;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use compile::{compile, eliminate_abstraction};
pub use parse::{parse_cterm, parse_lterm, parse_stack, ParseError};

/// Identifier type used for variables, constants and stack bases.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

/// Elementary combinators and the three instructions of a standard algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    B,
    C,
    E,
    I,
    K,
    W,
    Cc,
    /// ς: pushes the code of the current stack.
    Qt,
    /// χ: brings the deepest stack item to the top.
    Rd,
    /// χ′: moves the second item to the bottom of the stack.
    Wr,
}

impl Atom {
    pub const ALL: [Atom; 10] = [
        Atom::B,
        Atom::C,
        Atom::E,
        Atom::I,
        Atom::K,
        Atom::W,
        Atom::Cc,
        Atom::Qt,
        Atom::Rd,
        Atom::Wr,
    ];

    /// The elementary combinators, i.e. the atoms a λ-term compiles into.
    pub const ELEMENTARY: [Atom; 7] = [
        Atom::B,
        Atom::C,
        Atom::E,
        Atom::I,
        Atom::K,
        Atom::W,
        Atom::Cc,
    ];

    pub fn spelling(self) -> &'static str {
        match self {
            Atom::B => "B",
            Atom::C => "C",
            Atom::E => "E",
            Atom::I => "I",
            Atom::K => "K",
            Atom::W => "W",
            Atom::Cc => "cc",
            Atom::Qt => "qt",
            Atom::Rd => "rd",
            Atom::Wr => "wr",
        }
    }

    pub fn from_spelling(s: &str) -> Option<Atom> {
        Some(match s {
            "B" => Atom::B,
            "C" => Atom::C,
            "E" => Atom::E,
            "I" => Atom::I,
            "K" => Atom::K,
            "W" => Atom::W,
            "cc" => Atom::Cc,
            "qt" | "ς" => Atom::Qt,
            "rd" | "χ" => Atom::Rd,
            "wr" | "χ′" | "χ'" => Atom::Wr,
            _ => return None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spelling())
    }
}

/// Ordinary λ-terms over the combinator atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LTerm {
    Var(Name),
    Lam(Name, Box<LTerm>),
    App(Box<LTerm>, Box<LTerm>),
    Atom(Atom),
}

impl LTerm {
    pub fn var(s: &str) -> LTerm {
        LTerm::Var(name(s))
    }

    pub fn lam(x: &str, body: LTerm) -> LTerm {
        LTerm::Lam(name(x), Box::new(body))
    }

    pub fn app(f: LTerm, a: LTerm) -> LTerm {
        LTerm::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `(f)a1 a2 ...`.
    pub fn apps(f: LTerm, args: impl IntoIterator<Item = LTerm>) -> LTerm {
        args.into_iter().fold(f, LTerm::app)
    }

    /// `\x1 ... \xn body`.
    pub fn lams(xs: &[&str], body: LTerm) -> LTerm {
        xs.iter().rev().fold(body, |b, x| LTerm::lam(x, b))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            LTerm::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            LTerm::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            LTerm::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            LTerm::Atom(_) => {}
        }
    }

    /// Renames every bound variable to `%d` where `d` is its binding depth.
    /// Two terms are α-equivalent iff their canonical forms are equal.
    pub fn canonical(&self) -> LTerm {
        fn go(t: &LTerm, env: &mut Vec<(Name, Name)>) -> LTerm {
            match t {
                LTerm::Var(x) => match env.iter().rev().find(|(o, _)| o == x) {
                    Some((_, n)) => LTerm::Var(n.clone()),
                    None => t.clone(),
                },
                LTerm::Lam(x, b) => {
                    let fresh = name(&format!("%{}", env.len()));
                    env.push((x.clone(), fresh.clone()));
                    let body = go(b, env);
                    env.pop();
                    LTerm::Lam(fresh, Box::new(body))
                }
                LTerm::App(f, a) => LTerm::app(go(f, env), go(a, env)),
                LTerm::Atom(_) => t.clone(),
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn alpha_eq(&self, other: &LTerm) -> bool {
        self.canonical() == other.canonical()
    }

    /// Capture-avoiding substitution `self[q/x]`.
    pub fn subst(&self, x: &str, q: &LTerm) -> LTerm {
        let fv = q.free_vars();
        self.subst_with(x, q, &fv)
    }

    fn subst_with(&self, x: &str, q: &LTerm, fv: &BTreeSet<Name>) -> LTerm {
        match self {
            LTerm::Var(y) => {
                if &**y == x {
                    q.clone()
                } else {
                    self.clone()
                }
            }
            LTerm::Atom(_) => self.clone(),
            LTerm::App(f, a) => LTerm::app(f.subst_with(x, q, fv), a.subst_with(x, q, fv)),
            LTerm::Lam(y, b) => {
                if &**y == x || !b.free_vars().contains(x) {
                    return self.clone();
                }
                if fv.contains(y) {
                    let mut avoid = b.free_vars();
                    avoid.extend(fv.iter().cloned());
                    let fresh = fresh_name(y, &avoid);
                    let renamed = b.subst(y, &LTerm::Var(fresh.clone()));
                    LTerm::Lam(fresh, Box::new(renamed.subst_with(x, q, fv)))
                } else {
                    LTerm::Lam(y.clone(), Box::new(b.subst_with(x, q, fv)))
                }
            }
        }
    }
}

fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    (0..)
        .map(|i| name(&format!("{base}_{i}")))
        .find(|n| !avoid.contains(n))
        .expect("an unused name exists")
}

/// Combinator terms: what the machine executes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CTerm {
    Atom(Atom),
    /// A variable, substitutable by [`CTerm::substitute`].
    Var(Name),
    /// An opaque constant: inert at the head of a process.
    Const(Name),
    App(Arc<CTerm>, Arc<CTerm>),
    /// The continuation `k[π]`.
    Cont(Arc<Stack>),
    /// Numeral literal, behaving as `(σ)ⁿ 0̄`.
    Num(u64),
}

impl CTerm {
    pub fn var(s: &str) -> CTerm {
        CTerm::Var(name(s))
    }

    pub fn cst(s: &str) -> CTerm {
        CTerm::Const(name(s))
    }

    pub fn app(f: CTerm, a: CTerm) -> CTerm {
        CTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps(f: CTerm, args: impl IntoIterator<Item = CTerm>) -> CTerm {
        args.into_iter().fold(f, CTerm::app)
    }

    pub fn cont(s: Stack) -> CTerm {
        CTerm::Cont(Arc::new(s))
    }

    /// Splits `(h)a1...an` into `h` and `[a1, ..., an]`.
    pub fn spine(&self) -> (&CTerm, Vec<&CTerm>) {
        let mut args = Vec::new();
        let mut t = self;
        while let CTerm::App(f, a) = t {
            args.push(&**a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn has_var(&self, x: &str) -> bool {
        let mut todo = vec![self];
        while let Some(t) = todo.pop() {
            match t {
                CTerm::Var(y) if &**y == x => return true,
                CTerm::App(f, a) => {
                    todo.push(a);
                    todo.push(f);
                }
                CTerm::Cont(s) => todo.extend(s.items.iter()),
                _ => {}
            }
        }
        false
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let CTerm::Var(x) = t {
                out.insert(x.clone());
            }
        });
        out
    }

    pub fn consts(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let CTerm::Const(x) = t {
                out.insert(x.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&CTerm)) {
        f(self);
        match self {
            CTerm::App(g, a) => {
                g.visit(f);
                a.visit(f);
            }
            CTerm::Cont(s) => s.items.iter().for_each(|t| t.visit(f)),
            _ => {}
        }
    }

    /// No variable occurrences.
    pub fn is_closed(&self) -> bool {
        let mut closed = true;
        self.visit(&mut |t| closed &= !matches!(t, CTerm::Var(_)));
        closed
    }

    /// Closed, and built from atoms, numerals and application only.
    pub fn is_quasi_proof(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |t| ok &= matches!(t, CTerm::Atom(_) | CTerm::App(..) | CTerm::Num(_)));
        ok
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Literal replacement of every occurrence of variable `x` by `u`.
    pub fn substitute(&self, x: &str, u: &CTerm) -> CTerm {
        if !self.has_var(x) {
            return self.clone();
        }
        match self {
            CTerm::Var(_) => u.clone(),
            CTerm::App(f, a) => CTerm::app(f.substitute(x, u), a.substitute(x, u)),
            CTerm::Cont(s) => CTerm::cont(Stack {
                items: s.items.iter().map(|t| t.substitute(x, u)).collect(),
                base: s.base.clone(),
            }),
            _ => self.clone(),
        }
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, env: &[(&str, CTerm)]) -> CTerm {
        match self {
            CTerm::Var(y) => env
                .iter()
                .find(|(x, _)| *x == &**y)
                .map(|(_, u)| u.clone())
                .unwrap_or_else(|| self.clone()),
            CTerm::App(f, a) => CTerm::app(f.substitute_all(env), a.substitute_all(env)),
            CTerm::Cont(s) => CTerm::cont(Stack {
                items: s.items.iter().map(|t| t.substitute_all(env)).collect(),
                base: s.base.clone(),
            }),
            _ => self.clone(),
        }
    }

    /// Turns every remaining variable into a constant of the same name.
    pub fn vars_to_consts(&self) -> CTerm {
        match self {
            CTerm::Var(x) => CTerm::Const(x.clone()),
            CTerm::App(f, a) => CTerm::app(f.vars_to_consts(), a.vars_to_consts()),
            CTerm::Cont(s) => CTerm::cont(Stack {
                items: s.items.iter().map(|t| t.vars_to_consts()).collect(),
                base: s.base.clone(),
            }),
            _ => self.clone(),
        }
    }
}

impl From<Atom> for CTerm {
    fn from(a: Atom) -> CTerm {
        CTerm::Atom(a)
    }
}

/// `ξ1 · ... · ξn · π0`. Items are stored bottom first so that pushing and
/// popping the top are O(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stack {
    pub items: Vec<CTerm>,
    pub base: Name,
}

impl Stack {
    /// Builds a stack from items listed top first.
    pub fn new(top_first: impl IntoIterator<Item = CTerm>, base: &str) -> Stack {
        let mut items: Vec<CTerm> = top_first.into_iter().collect();
        items.reverse();
        Stack {
            items,
            base: name(base),
        }
    }

    pub fn empty(base: &str) -> Stack {
        Stack::new([], base)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn push(&mut self, t: CTerm) {
        self.items.push(t);
    }

    pub fn pop(&mut self) -> Option<CTerm> {
        self.items.pop()
    }

    pub fn top(&self) -> Option<&CTerm> {
        self.items.last()
    }

    /// Items from top to bottom.
    pub fn iter_top_first(&self) -> impl Iterator<Item = &CTerm> {
        self.items.iter().rev()
    }

    /// `π^τ`: τ inserted just above the base.
    pub fn with_bottom(&self, tau: CTerm) -> Stack {
        let mut items = Vec::with_capacity(self.items.len() + 1);
        items.push(tau);
        items.extend(self.items.iter().cloned());
        Stack {
            items,
            base: self.base.clone(),
        }
    }

    /// The item just above the base, if any.
    pub fn bottom(&self) -> Option<&CTerm> {
        self.items.first()
    }

    /// Splits `π^τ` into `(π, τ)`.
    pub fn split_bottom(&self) -> Option<(Stack, CTerm)> {
        let (tau, rest) = self.items.split_first()?;
        Some((
            Stack {
                items: rest.to_vec(),
                base: self.base.clone(),
            },
            tau.clone(),
        ))
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_lterm(self))
    }
}

impl fmt::Display for CTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_cterm(self))
    }
}

impl fmt::Display for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_stack(self))
    }
}

pub use print::{print_cterm, print_lterm, print_stack};

/// Parses a λ-term, compiles it, and substitutes combinator terms for some
/// of its free variables ("slots"). Other free variables stay variables.
pub fn build(src: &str, slots: &[(&str, CTerm)]) -> Result<CTerm, ParseError> {
    Ok(compile(&parse_lterm(src)?).substitute_all(slots))
}

/// [`build`] for sources that are part of this crate.
pub(crate) fn lam(src: &str, slots: &[(&str, CTerm)]) -> CTerm {
    build(src, slots).unwrap_or_else(|e| panic!("built-in term {src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitute_examples() {
        let k = CTerm::Atom(Atom::K);
        assert_eq!(CTerm::var("x").substitute("x", &k), k);
        let t = CTerm::app(CTerm::var("x"), CTerm::var("y"));
        assert_eq!(
            t.substitute("x", &Atom::I.into()),
            CTerm::app(Atom::I.into(), CTerm::var("y"))
        );
        assert_eq!(k.substitute("x", &Atom::I.into()), k);
    }

    #[test]
    fn bottom_push_goes_just_above_base() {
        let s = Stack::new([CTerm::cst("a"), CTerm::cst("b")], "p0");
        let t = s.with_bottom(CTerm::cst("t"));
        let listed: Vec<_> = t.iter_top_first().cloned().collect();
        assert_eq!(
            listed,
            vec![CTerm::cst("a"), CTerm::cst("b"), CTerm::cst("t")]
        );
        assert_eq!(t.split_bottom(), Some((s, CTerm::cst("t"))));
    }

    #[test]
    fn capture_avoiding_substitution_renames() {
        let p = LTerm::lam("y", LTerm::app(LTerm::var("x"), LTerm::var("y")));
        let r = p.subst("x", &LTerm::var("y"));
        let expected = LTerm::lam("z", LTerm::app(LTerm::var("y"), LTerm::var("z")));
        assert!(r.alpha_eq(&expected));
    }
}
