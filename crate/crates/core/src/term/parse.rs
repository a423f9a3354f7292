//! Text syntax.
//!
//! ```text
//! seq   ::= item+                         left-nested application
//! item  ::= atom | ident | ?ident | #n
//!         | \ ident seq                   abstraction, body extends right
//!         | ( seq ) item*                applies seq to the following items
//!         | k[ stack ]
//! stack ::= (seq .)* ident                items top first, base last
//! ```
//!
//! In combinator terms a plain identifier is a constant and `?x` is a
//! variable; in λ-terms both spellings denote variables.

use super::{name, Atom, CTerm, LTerm, Name, Stack};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

enum Raw {
    Atom(Atom),
    Ident(Name),
    Var(Name),
    Num(u64),
    Lam(Name, Box<Raw>),
    App(Box<Raw>, Box<Raw>),
    Cont(Vec<Raw>, Name),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    src: &'a str,
}

fn ident_start(c: char) -> bool {
    (c.is_alphabetic() && c != 'λ') || c == '_' || c == '%'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric()
        || matches!(c, '_' | '\'' | '′' | '%')
        || ('\u{0300}'..='\u{036f}').contains(&c)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            i: 0,
            src,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.src.len(), |c| c.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.1.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        match self.chars.get(self.i) {
            Some(&(_, c)) if ident_start(c) => {}
            _ => return self.err("expected identifier"),
        }
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.i) {
            if ident_continue(c) {
                s.push(c);
                self.i += 1;
            } else {
                break;
            }
        }
        Ok(s)
    }

    fn at_item_start(&mut self) -> bool {
        match self.peek() {
            Some(c) => ident_start(c) || matches!(c, '(' | '\\' | 'λ' | '#' | '?'),
            None => false,
        }
    }

    fn seq(&mut self) -> Result<Raw, ParseError> {
        if !self.at_item_start() {
            return self.err("expected a term");
        }
        let mut t = self.item()?;
        while self.at_item_start() {
            let a = self.item()?;
            t = Raw::App(Box::new(t), Box::new(a));
        }
        Ok(t)
    }

    fn item(&mut self) -> Result<Raw, ParseError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let mut t = self.seq()?;
                self.expect(')')?;
                while self.at_item_start() {
                    let a = self.item()?;
                    t = Raw::App(Box::new(t), Box::new(a));
                }
                Ok(t)
            }
            Some('\\') | Some('λ') => {
                self.i += 1;
                let x = self.ident()?;
                let body = self.seq()?;
                Ok(Raw::Lam(name(&x), Box::new(body)))
            }
            Some('#') => {
                self.i += 1;
                let start = self.i;
                while self.chars.get(self.i).is_some_and(|c| c.1.is_ascii_digit()) {
                    self.i += 1;
                }
                let digits: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
                match digits.parse() {
                    Ok(n) => Ok(Raw::Num(n)),
                    Err(_) => self.err("expected a numeral after '#'"),
                }
            }
            Some('?') => {
                self.i += 1;
                Ok(Raw::Var(name(&self.ident()?)))
            }
            _ => {
                let id = self.ident()?;
                if id == "k" && self.chars.get(self.i).is_some_and(|c| c.1 == '[') {
                    self.i += 1;
                    let (items, base) = self.stack_body()?;
                    self.expect(']')?;
                    return Ok(Raw::Cont(items, base));
                }
                Ok(match Atom::from_spelling(&id) {
                    Some(a) => Raw::Atom(a),
                    None => Raw::Ident(name(&id)),
                })
            }
        }
    }

    fn stack_body(&mut self) -> Result<(Vec<Raw>, Name), ParseError> {
        let mut parts = vec![self.seq()?];
        while self.peek() == Some('.') {
            self.i += 1;
            parts.push(self.seq()?);
        }
        match parts.pop() {
            Some(Raw::Ident(b)) => Ok((parts, b)),
            _ => self.err("a stack must end with a stack constant"),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

fn to_lterm(r: Raw, p: &Parser) -> Result<LTerm, ParseError> {
    Ok(match r {
        Raw::Atom(a) => LTerm::Atom(a),
        Raw::Ident(x) | Raw::Var(x) => LTerm::Var(x),
        Raw::Lam(x, b) => LTerm::Lam(x, Box::new(to_lterm(*b, p)?)),
        Raw::App(f, a) => LTerm::app(to_lterm(*f, p)?, to_lterm(*a, p)?),
        Raw::Num(_) | Raw::Cont(..) => {
            return p.err("numerals and continuations are not λ-term syntax")
        }
    })
}

fn to_cterm(r: Raw, p: &Parser) -> Result<CTerm, ParseError> {
    Ok(match r {
        Raw::Atom(a) => CTerm::Atom(a),
        Raw::Ident(x) => CTerm::Const(x),
        Raw::Var(x) => CTerm::Var(x),
        Raw::Num(n) => CTerm::Num(n),
        Raw::App(f, a) => CTerm::app(to_cterm(*f, p)?, to_cterm(*a, p)?),
        Raw::Cont(items, base) => CTerm::cont(raw_stack(items, base, p)?),
        Raw::Lam(..) => return p.err("abstraction in a combinator term; compile it first"),
    })
}

fn raw_stack(items: Vec<Raw>, base: Name, p: &Parser) -> Result<Stack, ParseError> {
    let mut items = items
        .into_iter()
        .map(|r| to_cterm(r, p))
        .collect::<Result<Vec<_>, _>>()?;
    items.reverse();
    Ok(Stack { items, base })
}

pub fn parse_lterm(text: &str) -> Result<LTerm, ParseError> {
    let mut p = Parser::new(text);
    let r = p.seq()?;
    p.finish()?;
    to_lterm(r, &p)
}

pub fn parse_cterm(text: &str) -> Result<CTerm, ParseError> {
    let mut p = Parser::new(text);
    let r = p.seq()?;
    p.finish()?;
    to_cterm(r, &p)
}

/// Parses `t1.t2. ... .base`.
pub fn parse_stack(text: &str) -> Result<Stack, ParseError> {
    let mut p = Parser::new(text);
    let (items, base) = p.stack_body()?;
    p.finish()?;
    raw_stack(items, base, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_identity() {
        assert_eq!(
            parse_lterm("\\x x").unwrap(),
            LTerm::lam("x", LTerm::var("x"))
        );
    }

    #[test]
    fn paren_head_applies_to_rest() {
        assert_eq!(
            parse_lterm("(K) I").unwrap(),
            LTerm::app(LTerm::Atom(Atom::K), LTerm::Atom(Atom::I))
        );
        // (f)(n)f x = f applied to ((n f) x)
        let t = parse_lterm("\\n \\f \\x (f)(n) f x").unwrap();
        let body = LTerm::app(
            LTerm::var("f"),
            LTerm::apps(LTerm::var("n"), [LTerm::var("f"), LTerm::var("x")]),
        );
        assert_eq!(t, LTerm::lams(&["n", "f", "x"], body));
    }

    #[test]
    fn juxtaposition_is_left_nested() {
        assert_eq!(
            parse_cterm("K I W").unwrap(),
            CTerm::apps(Atom::K.into(), [Atom::I.into(), Atom::W.into()])
        );
    }

    #[test]
    fn continuation_and_numeral() {
        let t = parse_cterm("(k[a.b.π0]) #3").unwrap();
        let s = Stack::new([CTerm::cst("a"), CTerm::cst("b")], "π0");
        assert_eq!(t, CTerm::app(CTerm::cont(s), CTerm::Num(3)));
        assert_eq!(
            parse_cterm("k[π0]").unwrap(),
            CTerm::cont(Stack::empty("π0"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_lterm("(K I").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_cterm("\\x x").is_err());
        assert!(parse_stack("a.(b) c").is_err());
    }
}
