//! ASCII formula syntax.
//!
//! ```text
//! formula ::= disj ("," disj)* [("->" | "|->") formula]
//! disj    ::= conj ("|" conj)*
//! conj    ::= unary ("&" unary)*
//! unary   ::= "~" unary | "bot" | "top" | "(" formula ")"
//!           | "forall" x+ "." unary | "forall2" (X "/" k)+ "." unary
//!           | "exists" x+ "." body  | "exists2" (X "/" k)+ "." body
//!           | X["+"] ["(" terms ")"] | "$" X ["(" terms ")"]
//!           | "@" r "(" terms ")"  | "C[" term "]"
//!           | term "=" term | term "eps" term
//! body    ::= unary | "{" formula ("," formula)* "}"
//! term    ::= prim ["^" prim]
//! prim    ::= x | "0" | "1" | "s(" term ")" | f "(" terms ")" | "(" term ")"
//! ```
//!
//! Quantifiers bind tightly: `forall x. X(x) -> Y` is `(∀x X(x)) → Y`.
//! `@R(t⃗)` and `C[t]` are only allowed in front of `->` (and `@R(t⃗)`,
//! `t = u` in front of `|->`). A bare `t = u` is Leibniz equality.

use thiserror::Error;

use super::{Formula, ITerm, Pred};
use crate::term::name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula syntax error at {pos}: {msg}")]
pub struct FormulaParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
}

const SYMS: [&str; 18] = [
    "|->", "->", "|", "&", "~", ",", ".", "(", ")", "[", "]", "{", "}", "=", "^", "@", "$", "+",
];

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, FormulaParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    'outer: while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].1.is_alphanumeric() || matches!(chars[i].1, '_' | '\''))
            {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|c| c.1).collect()),
            ));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((pos, Tok::Num(chars[start..i].iter().map(|c| c.1).collect())));
            continue;
        }
        if c == '/' {
            out.push((pos, Tok::Sym("/")));
            i += 1;
            continue;
        }
        for s in SYMS {
            if src[pos..].starts_with(s) {
                out.push((pos, Tok::Sym(s)));
                i += s.chars().count();
                continue 'outer;
            }
        }
        return Err(FormulaParseError {
            pos,
            msg: format!("unexpected character {c:?}"),
        });
    }
    Ok(out)
}

enum Raw {
    F(Formula),
    Rel(String, Vec<ITerm>),
    CondG(ITerm),
    EqG(ITerm, ITerm),
}

struct P {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl P {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormulaParseError> {
        Err(FormulaParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.1)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(t)) if t == s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), FormulaParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn ident(&mut self) -> Result<String, FormulaParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn formula(&mut self, allow_list: bool) -> Result<Formula, FormulaParseError> {
        let mut items = vec![self.disj()?];
        if allow_list {
            while self.eat(",") {
                items.push(self.disj()?);
            }
        }
        if self.eat("->") {
            let rhs = self.formula(true)?;
            let mut acc = rhs;
            for it in items.into_iter().rev() {
                acc = match it {
                    Raw::F(a) => Formula::imp(a, acc),
                    Raw::Rel(r, args) => Formula::RelArrow(name(&r), args, Box::new(acc)),
                    Raw::CondG(t) => Formula::cond(t, acc),
                    Raw::EqG(t, u) => Formula::imp(Formula::eq(t, u), acc),
                };
            }
            return Ok(acc);
        }
        if self.is_sym("|->") {
            if items.len() != 1 {
                return self.err("'|->' takes a single guard");
            }
            self.i += 1;
            let rhs = Box::new(self.formula(true)?);
            return match items.pop().expect("one item") {
                Raw::Rel(r, args) => Ok(Formula::RelMaps(name(&r), args, rhs)),
                Raw::EqG(t, u) => Ok(Formula::EqMaps(t, u, rhs)),
                _ => self.err("'|->' needs a relation or an equation on its left"),
            };
        }
        if items.len() != 1 {
            return self.err("expected '->' after a list of hypotheses");
        }
        self.to_formula(items.pop().expect("one item"))
    }

    fn to_formula(&self, r: Raw) -> Result<Formula, FormulaParseError> {
        match r {
            Raw::F(f) => Ok(f),
            Raw::EqG(t, u) => Ok(Formula::eq(t, u)),
            Raw::Rel(..) | Raw::CondG(_) => {
                self.err("a relation guard must be followed by '->' or '|->'")
            }
        }
    }

    fn disj(&mut self) -> Result<Raw, FormulaParseError> {
        let first = self.conj()?;
        if !self.is_sym("|") {
            return Ok(first);
        }
        let mut acc = self.to_formula(first)?;
        while self.eat("|") {
            let r = self.conj()?;
            acc = Formula::or(acc, self.to_formula(r)?);
        }
        Ok(Raw::F(acc))
    }

    fn conj(&mut self) -> Result<Raw, FormulaParseError> {
        let first = self.unary()?;
        if !self.is_sym("&") {
            return Ok(first);
        }
        let mut acc = self.to_formula(first)?;
        while self.eat("&") {
            let r = self.unary()?;
            acc = Formula::and(acc, self.to_formula(r)?);
        }
        Ok(Raw::F(acc))
    }

    fn unary_formula(&mut self) -> Result<Formula, FormulaParseError> {
        let r = self.unary()?;
        self.to_formula(r)
    }

    fn pred_binders(&mut self) -> Result<Vec<(Pred, usize)>, FormulaParseError> {
        let mut out = Vec::new();
        while !self.is_sym(".") {
            let x = self.ident()?;
            let plus = self.eat("+");
            self.expect("/")?;
            let k = match self.peek() {
                Some(Tok::Num(n)) => n.parse().map_err(|_| FormulaParseError {
                    pos: self.pos(),
                    msg: "arity too large".into(),
                })?,
                _ => return self.err("expected an arity"),
            };
            self.i += 1;
            let mut p = Pred::var(&x);
            p.plus = plus;
            out.push((p, k));
        }
        if out.is_empty() {
            return self.err("expected a predicate binder");
        }
        self.i += 1;
        Ok(out)
    }

    fn ind_binders(&mut self) -> Result<Vec<String>, FormulaParseError> {
        let mut out = Vec::new();
        while !self.is_sym(".") {
            out.push(self.ident()?);
        }
        if out.is_empty() {
            return self.err("expected a variable");
        }
        self.i += 1;
        Ok(out)
    }

    fn exists_body(&mut self) -> Result<Vec<Formula>, FormulaParseError> {
        if self.eat("{") {
            let mut fs = vec![self.formula(false)?];
            while self.eat(",") {
                fs.push(self.formula(false)?);
            }
            self.expect("}")?;
            Ok(fs)
        } else {
            Ok(vec![self.unary_formula()?])
        }
    }

    fn unary(&mut self) -> Result<Raw, FormulaParseError> {
        if self.eat("~") {
            return Ok(Raw::F(Formula::not(self.unary_formula()?)));
        }
        if self.eat("(") {
            let f = self.formula(true)?;
            self.expect(")")?;
            return Ok(Raw::F(f));
        }
        if self.eat("@") {
            let r = self.ident()?;
            let args = self.args()?;
            return Ok(Raw::Rel(r, args));
        }
        if self.eat("$") {
            let x = self.ident()?;
            let mut p = Pred::param(&x);
            p.plus = self.eat("+");
            let args = if self.is_sym("(") {
                self.args()?
            } else {
                vec![]
            };
            return Ok(Raw::F(Formula::Atom(p, args)));
        }
        let Some(Tok::Ident(id)) = self.peek().cloned() else {
            return self.term_guard();
        };
        match id.as_str() {
            "bot" => {
                self.i += 1;
                Ok(Raw::F(Formula::bot()))
            }
            "top" => {
                self.i += 1;
                Ok(Raw::F(Formula::Top))
            }
            "forall" => {
                self.i += 1;
                let xs = self.ind_binders()?;
                let body = self.unary_formula()?;
                Ok(Raw::F(
                    xs.iter().rev().fold(body, |acc, x| Formula::forall(x, acc)),
                ))
            }
            "forall2" => {
                self.i += 1;
                let xs = self.pred_binders()?;
                let body = self.unary_formula()?;
                Ok(Raw::F(xs.into_iter().rev().fold(body, |acc, (p, k)| {
                    Formula::ForallPred(p, k, Box::new(acc))
                })))
            }
            "exists" => {
                self.i += 1;
                let xs = self.ind_binders()?;
                let body = self.exists_body()?;
                let (last, rest) = xs.split_last().expect("nonempty");
                let inner = Formula::exists(last, body);
                Ok(Raw::F(
                    rest.iter()
                        .rev()
                        .fold(inner, |acc, x| Formula::exists(x, vec![acc])),
                ))
            }
            "exists2" => {
                self.i += 1;
                let xs = self.pred_binders()?;
                let body = self.exists_body()?;
                let (last, rest) = xs.split_last().expect("nonempty");
                let inner = Formula::exists_pred(&last.0.name, last.1, body);
                Ok(Raw::F(rest.iter().rev().fold(inner, |acc, (p, k)| {
                    Formula::exists_pred(&p.name, *k, vec![acc])
                })))
            }
            "C" if matches!(self.peek_at(1), Some(Tok::Sym("["))) => {
                self.i += 2;
                let t = self.term()?;
                self.expect("]")?;
                Ok(Raw::CondG(t))
            }
            _ if id.chars().next().is_some_and(char::is_uppercase) => {
                self.i += 1;
                let mut p = Pred::var(&id);
                p.plus = self.eat("+");
                let args = if self.is_sym("(") {
                    self.args()?
                } else {
                    vec![]
                };
                Ok(Raw::F(Formula::Atom(p, args)))
            }
            _ => self.term_guard(),
        }
    }

    fn term_guard(&mut self) -> Result<Raw, FormulaParseError> {
        let t = self.term()?;
        if self.eat("=") {
            let u = self.term()?;
            return Ok(Raw::EqG(t, u));
        }
        if self.is_kw("eps") {
            self.i += 1;
            let u = self.term()?;
            return Ok(Raw::F(Formula::Eps(t, u)));
        }
        self.err("expected '=' or 'eps' after a term")
    }

    fn args(&mut self) -> Result<Vec<ITerm>, FormulaParseError> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        out.push(self.term()?);
        while self.eat(",") {
            out.push(self.term()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn term(&mut self) -> Result<ITerm, FormulaParseError> {
        let a = self.tprim()?;
        if self.eat("^") {
            let b = self.tprim()?;
            if self.is_sym("^") {
                return self.err("parenthesise nested '^'");
            }
            return Ok(ITerm::wedge(a, b));
        }
        Ok(a)
    }

    fn tprim(&mut self) -> Result<ITerm, FormulaParseError> {
        if self.eat("(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(t);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n == "0" => {
                self.i += 1;
                Ok(ITerm::Zero)
            }
            Some(Tok::Num(n)) if n == "1" => {
                self.i += 1;
                Ok(ITerm::One)
            }
            Some(Tok::Ident(id)) if id.chars().next().is_some_and(|c| !c.is_uppercase()) => {
                self.i += 1;
                if self.is_sym("(") {
                    let mut args = self.args()?;
                    if id == "s" && args.len() == 1 {
                        return Ok(ITerm::succ(args.pop().expect("one")));
                    }
                    return Ok(ITerm::Fn(name(&id), args));
                }
                Ok(ITerm::var(&id))
            }
            _ => self.err("expected a term"),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, FormulaParseError> {
    let mut p = P {
        toks: tokenize(src)?,
        i: 0,
        end: src.len(),
    };
    let f = p.formula(true)?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

pub fn parse_iterm(src: &str) -> Result<ITerm, FormulaParseError> {
    let mut p = P {
        toks: tokenize(src)?,
        i: 0,
        end: src.len(),
    };
    let t = p.term()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}
