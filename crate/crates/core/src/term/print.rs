//! Printing in the `(ξ)η1 η2 ...` notation. A parenthesised head applies
//! to every item after it, and an abstraction body extends to the right, so
//! a compound argument is printed bare only in last position; otherwise
//! the application up to it becomes the parenthesised head.

use super::{CTerm, LTerm, Stack};

trait Printable: Sized {
    fn unapp(&self) -> Option<(&Self, &Self)>;
    fn is_compound(&self) -> bool;
    /// Prints a term that is not an application.
    fn leaf(&self, out: &mut String);

    fn spine(&self) -> (&Self, Vec<&Self>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Some((f, a)) = t.unapp() {
            args.push(a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    fn print(&self, out: &mut String) {
        if self.unapp().is_none() {
            return self.leaf(out);
        }
        let (head, args) = self.spine();
        let n = args.len();
        let split = args[..n - 1].iter().rposition(|a| a.is_compound());
        out.push('(');
        let rest = match split {
            Some(k) => {
                // The application up to and including args[k].
                let mut t = self;
                for _ in k + 1..n {
                    t = t.unapp().expect("spine").0;
                }
                t.print(out);
                &args[k + 1..]
            }
            None => {
                head.print(out);
                &args[..]
            }
        };
        out.push(')');
        for a in rest {
            out.push(' ');
            a.print(out);
        }
    }
}

impl Printable for CTerm {
    fn unapp(&self) -> Option<(&Self, &Self)> {
        match self {
            CTerm::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    fn is_compound(&self) -> bool {
        matches!(self, CTerm::App(..))
    }

    fn leaf(&self, out: &mut String) {
        match self {
            CTerm::Atom(a) => out.push_str(a.spelling()),
            CTerm::Const(x) => out.push_str(x),
            CTerm::Var(x) => {
                out.push('?');
                out.push_str(x);
            }
            CTerm::Num(n) => {
                out.push('#');
                out.push_str(&n.to_string());
            }
            CTerm::Cont(s) => {
                out.push_str("k[");
                stack_into(s, out);
                out.push(']');
            }
            CTerm::App(..) => unreachable!("applications are not leaves"),
        }
    }
}

impl Printable for LTerm {
    fn unapp(&self) -> Option<(&Self, &Self)> {
        match self {
            LTerm::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    fn is_compound(&self) -> bool {
        matches!(self, LTerm::App(..) | LTerm::Lam(..))
    }

    fn leaf(&self, out: &mut String) {
        match self {
            LTerm::Atom(a) => out.push_str(a.spelling()),
            LTerm::Var(x) => out.push_str(x),
            LTerm::Lam(x, b) => {
                out.push('\\');
                out.push_str(x);
                out.push(' ');
                b.print(out);
            }
            LTerm::App(..) => unreachable!("applications are not leaves"),
        }
    }
}

fn stack_into(s: &Stack, out: &mut String) {
    for t in s.iter_top_first() {
        t.print(out);
        out.push('.');
    }
    out.push_str(&s.base);
}

pub fn print_cterm(t: &CTerm) -> String {
    let mut s = String::new();
    t.print(&mut s);
    s
}

pub fn print_lterm(t: &LTerm) -> String {
    let mut s = String::new();
    t.print(&mut s);
    s
}

pub fn print_stack(s: &Stack) -> String {
    let mut out = String::new();
    stack_into(s, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_cterm, parse_lterm, Atom};

    #[test]
    fn examples() {
        assert_eq!(print_cterm(&CTerm::Atom(Atom::I)), "I");
        let t = CTerm::apps(Atom::K.into(), [Atom::I.into(), Atom::W.into()]);
        assert_eq!(print_cterm(&t), "(K) I W");
        assert_eq!(print_cterm(&CTerm::cont(Stack::empty("π0"))), "k[π0]");
    }

    #[test]
    fn compound_arguments_round_trip() {
        for s in [
            "((f) (g) x) y",
            "(f) (g) x",
            "(k[(K) I.a.π0]) #4 ?x",
            "((B) (C) I) (K) W",
        ] {
            let t = parse_cterm(s).unwrap();
            assert_eq!(parse_cterm(&print_cterm(&t)).unwrap(), t, "{s}");
        }
        for s in [
            "(\\x x) y",
            "\\x (x) \\y y",
            "((f) \\x x) y",
            "\\n \\f \\x (f) (n) f x",
        ] {
            let t = parse_lterm(s).unwrap();
            assert_eq!(parse_lterm(&print_lterm(&t)).unwrap(), t, "{s}");
        }
    }
}
