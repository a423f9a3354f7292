use super::{Atom, CTerm, LTerm};

fn atom(a: Atom) -> CTerm {
    CTerm::Atom(a)
}

/// `λx t` for a combinator term `t`, by the first applicable of six rules:
///
/// 1. `x` not in `t`: `(K)t`
/// 2. `t = x`: `I`
/// 3. `t = (u)v`, `x` not in `v`: `(C λx(E)u)v`
/// 4. `t = (u)x`, `x` not in `u`: `(E)u`
/// 5. `t = (u)x`, `x` in `u`: `(W)λx(E)u`
/// 6. `t = (u)(v)w`: `λx(B)uvw`
///
/// Panics if `x` occurs inside a continuation, which compiler input never
/// contains.
pub fn eliminate_abstraction(x: &str, t: &CTerm) -> CTerm {
    let mut t = t.clone();
    loop {
        if !t.has_var(x) {
            return CTerm::app(atom(Atom::K), t);
        }
        let (u, v) = match &t {
            CTerm::Var(_) => return atom(Atom::I),
            CTerm::App(u, v) => (u.clone(), v.clone()),
            other => panic!("no abstraction rule applies to {other}"),
        };
        if !v.has_var(x) {
            let inner = eliminate_abstraction(x, &CTerm::app(atom(Atom::E), (*u).clone()));
            return CTerm::app(CTerm::app(atom(Atom::C), inner), (*v).clone());
        }
        match &*v {
            CTerm::Var(_) if !u.has_var(x) => return CTerm::app(atom(Atom::E), (*u).clone()),
            CTerm::Var(_) => {
                return CTerm::app(
                    atom(Atom::W),
                    eliminate_abstraction(x, &CTerm::app(atom(Atom::E), (*u).clone())),
                )
            }
            CTerm::App(v1, w) => {
                t = CTerm::apps(atom(Atom::B), [(*u).clone(), (**v1).clone(), (**w).clone()]);
            }
            other => panic!("no abstraction rule applies to {other}"),
        }
    }
}

/// Compiles a λ-term to a combinator term, eliminating abstractions
/// innermost first. Free variables of the λ-term stay variables.
pub fn compile(p: &LTerm) -> CTerm {
    fn go(p: &LTerm) -> CTerm {
        match p {
            LTerm::Var(x) => CTerm::Var(x.clone()),
            LTerm::Atom(a) => CTerm::Atom(*a),
            LTerm::App(f, a) => CTerm::app(go(f), go(a)),
            LTerm::Lam(x, b) => eliminate_abstraction(x, &go(b)),
        }
    }
    go(&p.canonical())
}
