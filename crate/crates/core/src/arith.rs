//! Numerals with the fixpoint and storage combinators. The catalog
//! holds terms computing recursive functions in continuation-passing style.
//!
//! A unary function term `θ` satisfies `θ ⋆ m̄·κ·π ≻ κ ⋆ f(m)‾·π`, where the
//! numeral it hands to `κ` is literally `(σ)^{f(m)} 0̄`.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::kam::{run_quiet, FirstSeenCodec, Process};
use crate::term::{lam, Atom, CTerm};

/// `0̄ = λxλy y`, which compiles to `(K) I`.
pub fn zero() -> CTerm {
    static T: OnceLock<CTerm> = OnceLock::new();
    T.get_or_init(|| lam("\\x \\y y", &[])).clone()
}

/// `σ = λnλfλx (f)(n)f x`.
pub fn sigma() -> CTerm {
    static T: OnceLock<CTerm> = OnceLock::new();
    T.get_or_init(|| lam("\\n \\f \\x (f) (n) f x", &[]))
        .clone()
}

/// `n̄ = (σ)ⁿ 0̄`.
pub fn numeral(n: u64) -> CTerm {
    let s = sigma();
    (0..n).fold(zero(), |acc, _| CTerm::app(s.clone(), acc))
}

/// Reads back `(σ)ⁿ 0̄` (with literals allowed anywhere in the chain).
pub fn numeral_value(t: &CTerm) -> Option<u64> {
    let s = sigma();
    let z = zero();
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur {
            CTerm::Num(k) => return Some(n + k),
            _ if *cur == z => return Some(n),
            CTerm::App(f, a) if **f == s => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

/// Replaces every numeral literal by its full expansion.
pub fn expand_numerals(t: &CTerm) -> CTerm {
    match t {
        CTerm::Num(n) => numeral(*n),
        CTerm::App(f, a) => CTerm::app(expand_numerals(f), expand_numerals(a)),
        CTerm::Cont(s) => CTerm::cont(crate::term::Stack {
            items: s.items.iter().map(expand_numerals).collect(),
            base: s.base.clone(),
        }),
        _ => t.clone(),
    }
}

fn s_slot() -> (&'static str, CTerm) {
    ("s", sigma())
}

fn zero_slot() -> (&'static str, CTerm) {
    ("zero", zero())
}

/// `Y = AA` with `A = λaλf (f)(a)a f`; `Y ⋆ ξ·π ≻ ξ ⋆ (Y)ξ·π`.
pub fn fixpoint() -> CTerm {
    let a = lam("\\a \\f (f) (a) a f", &[]);
    CTerm::app(a.clone(), a)
}

/// `S = λgλx (g)(σ)x`.
pub fn storage_s() -> CTerm {
    lam("\\g \\x (g) (s) x", &[s_slot()])
}

/// `(T, S)` with `T = λfλn (n)S f 0̄`.
pub fn storage_pair() -> (CTerm, CTerm) {
    let s = storage_s();
    let t = lam("\\f \\n (n) S f zero", &[("S", s.clone()), zero_slot()]);
    (t, s)
}

/// What a catalog term computes.
#[derive(Clone, Copy)]
pub enum Contract {
    /// `θ ⋆ m̄·κ·π ≻ κ ⋆ f(m)‾·π`.
    Unary(fn(u64) -> u64),
    /// `θ ⋆ m̄·n̄·κ·π ≻ κ ⋆ f(m,n)‾·π`.
    Binary(fn(u64, u64) -> u64),
    /// `θ ⋆ m̄1·…·m̄k·ξ1·…·ξb·π ≻ ξi ⋆ π` with `i = select(m)`.
    Select {
        numerals: usize,
        branches: usize,
        select: fn(&[u64]) -> usize,
    },
}

impl fmt::Debug for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contract::Unary(_) => f.write_str("Unary"),
            Contract::Binary(_) => f.write_str("Binary"),
            Contract::Select {
                numerals, branches, ..
            } => {
                write!(f, "Select({numerals} numerals, {branches} branches)")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ArithEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub term: CTerm,
    pub contract: Contract,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown arithmetic term {0:?}")]
pub struct UnknownName(pub String);

/// Cantor pairing `(n1, n2) ↦ n1 + (n1+n2)(n1+n2+1)/2`.
pub fn pair_code(n1: u64, n2: u64) -> u64 {
    let s = n1 + n2;
    n1 + s * (s + 1) / 2
}

pub fn unpair_code(z: u64) -> (u64, u64) {
    let mut s = 0;
    while (s + 1) * (s + 2) / 2 <= z {
        s += 1;
    }
    let n1 = z - s * (s + 1) / 2;
    (n1, s - n1)
}

struct Parts {
    pred: CTerm,
    add: CTerm,
    tri: CTerm,
}

fn parts() -> &'static Parts {
    static P: OnceLock<Parts> = OnceLock::new();
    P.get_or_init(|| {
        let s = storage_s();
        let p = lam("\\c \\a \\b (c) b (s) b", &[s_slot()]);
        let pred = lam(
            "\\m \\k ((m) P \\a \\b (k) a) zero zero",
            &[("P", p), zero_slot()],
        );
        let add = lam("\\m \\n \\k (m) S k n", &[("S", s)]);
        let ts = lam(
            "\\c \\a \\b (((add) (s) b) a) \\r (c) r (s) b",
            &[("add", add.clone()), s_slot()],
        );
        let tri = lam(
            "\\n \\k ((n) TS \\a \\b (k) a) zero zero",
            &[("TS", ts), zero_slot()],
        );
        Parts { pred, add, tri }
    })
}

fn build_catalog() -> Vec<ArithEntry> {
    let Parts { pred, add, tri } = parts();
    let slots = |extra: Vec<(&'static str, CTerm)>| {
        let mut v = vec![
            s_slot(),
            zero_slot(),
            ("pred", pred.clone()),
            ("add", add.clone()),
        ];
        v.extend(extra);
        v
    };
    let double_step = lam("\\c \\x (c) (s) (s) x", &[s_slot()]);
    let half_step = lam("\\c \\a \\b (c) b (s) a", &[s_slot()]);
    let swap = lam("\\c \\a \\b (c) b a", &[]);
    let cp_base = lam("\\n \\x \\y \\z ((n) (K) x) z", &[]);
    let cp_step = lam(
        "\\f \\n \\x \\y \\z ((n) (K) (pred n) \\q (f) q x y z) y",
        &slots(vec![]),
    );
    let rot = lam("\\n \\a \\b \\c \\d (n) b c d a", &[]);
    let proj_step = lam(
        "\\c \\a \\b ((b) (K) (pred b) \\q ((c) (s) a) q) ((c) zero) (s) a",
        &slots(vec![]),
    );
    let entry =
        |name, summary, src: &str, extra: Vec<(&'static str, CTerm)>, contract| ArithEntry {
            name,
            summary,
            term: lam(src, &slots(extra)),
            contract,
        };
    vec![
        entry(
            "succ",
            "n ↦ n+1",
            "\\m \\k (k) (s) m",
            vec![],
            Contract::Unary(|m| m + 1),
        ),
        ArithEntry {
            name: "pred",
            summary: "n ↦ n-1, with 0 ↦ 0",
            term: pred.clone(),
            contract: Contract::Unary(|m| m.saturating_sub(1)),
        },
        ArithEntry {
            name: "add",
            summary: "(m, n) ↦ m+n",
            term: add.clone(),
            contract: Contract::Binary(|m, n| m + n),
        },
        entry(
            "double",
            "d0: n ↦ 2n",
            "\\m \\k (m) D k zero",
            vec![("D", double_step.clone())],
            Contract::Unary(|m| 2 * m),
        ),
        entry(
            "odd-double",
            "d1: n ↦ 2n+1",
            "\\m \\k (m) D k (s) zero",
            vec![("D", double_step)],
            Contract::Unary(|m| 2 * m + 1),
        ),
        entry(
            "half",
            "d2: n ↦ ⌊n/2⌋",
            "\\m \\k ((m) H \\a \\b (k) a) zero zero",
            vec![("H", half_step)],
            Contract::Unary(|m| m / 2),
        ),
        entry(
            "parity",
            "n ↦ n mod 2",
            "\\m \\k ((m) Sw \\a \\b (k) a) zero (s) zero",
            vec![("Sw", swap.clone())],
            Contract::Unary(|m| m % 2),
        ),
        entry(
            "e",
            "parity selector: e ⋆ n̄·ξ·η·π ≻ ξ ⋆ π if n is odd, η ⋆ π if n is even",
            "\\i \\x \\y (i) Sw K y x",
            vec![("Sw", lam("\\n \\a \\b (n) b a", &[]))],
            Contract::Select {
                numerals: 1,
                branches: 2,
                select: |m| if m[0] % 2 == 1 { 0 } else { 1 },
            },
        ),
        entry(
            "cp",
            "comparator: ξ if m < n, η if n < m, ζ if m = n",
            "\\m (m) Step Base",
            vec![("Step", cp_step), ("Base", cp_base)],
            Contract::Select {
                numerals: 2,
                branches: 3,
                select: |m| match m[0].cmp(&m[1]) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Equal => 2,
                },
            },
        ),
        entry(
            "e4",
            "residue selector: ξ if i ≡ 0 or 2, η if i ≡ 1, ζ if i ≡ 3 (mod 4)",
            "\\i \\x \\y \\z (i) Rot N x y x z",
            vec![("Rot", rot), ("N", lam("\\a \\b \\c \\d a", &[]))],
            Contract::Select {
                numerals: 1,
                branches: 3,
                select: |m| match m[0] % 4 {
                    0 | 2 => 0,
                    1 => 1,
                    _ => 2,
                },
            },
        ),
        ArithEntry {
            name: "triangle",
            summary: "n ↦ n(n+1)/2",
            term: tri.clone(),
            contract: Contract::Unary(|m| m * (m + 1) / 2),
        },
        entry(
            "pair",
            "(n1, n2) ↦ n1 + (n1+n2)(n1+n2+1)/2",
            "\\m \\n \\k ((add) m n) \\t (tri t) \\u ((add) m u) k",
            vec![("tri", tri.clone())],
            Contract::Binary(pair_code),
        ),
        entry(
            "unpair1",
            "first projection of the pairing",
            "\\w \\k ((w) PS \\a \\b (k) a) zero zero",
            vec![("PS", proj_step.clone())],
            Contract::Unary(|z| unpair_code(z).0),
        ),
        entry(
            "unpair2",
            "second projection of the pairing",
            "\\w \\k ((w) PS \\a \\b (k) b) zero zero",
            vec![("PS", proj_step)],
            Contract::Unary(|z| unpair_code(z).1),
        ),
    ]
}

/// The whole catalog, in a fixed order.
pub fn catalog() -> &'static [ArithEntry] {
    static C: OnceLock<Vec<ArithEntry>> = OnceLock::new();
    C.get_or_init(build_catalog)
}

pub fn arith_entry(name: &str) -> Result<&'static ArithEntry, UnknownName> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| UnknownName(name.to_string()))
}

pub fn arith_term(name: &str) -> Result<CTerm, UnknownName> {
    arith_entry(name).map(|e| e.term.clone())
}

/// Result of running a catalog term on numerals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The continuation received this numeral, in exact `(σ)ⁿ 0̄` form.
    Value(u64),
    /// The process continued with branch `i` on the bare stack.
    Branch(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("expected {expected} numeral arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("no answer within budget; last state {0}")]
    NoAnswer(String),
    #[error("unexpected final state {0}")]
    Malformed(String),
}

impl ArithEntry {
    pub fn numeral_arity(&self) -> usize {
        match self.contract {
            Contract::Unary(_) => 1,
            Contract::Binary(_) => 2,
            Contract::Select { numerals, .. } => numerals,
        }
    }

    /// What the contract says the term must do on `args`.
    pub fn expected(&self, args: &[u64]) -> Outcome {
        match self.contract {
            Contract::Unary(f) => Outcome::Value(f(args[0])),
            Contract::Binary(f) => Outcome::Value(f(args[0], args[1])),
            Contract::Select { select, .. } => Outcome::Branch(select(args)),
        }
    }

    /// The process `θ ⋆ m̄1·…·κ·π0` (or with branch constants `ξ0, ξ1, …`).
    pub fn process(&self, args: &[u64]) -> Process {
        let mut items: Vec<CTerm> = args.iter().map(|&m| numeral(m)).collect();
        match self.contract {
            Contract::Select { branches, .. } => {
                items.extend((0..branches).map(|i| CTerm::cst(&format!("ξ{i}"))))
            }
            _ => items.push(CTerm::cst("κ")),
        }
        Process::with_args(self.term.clone(), items, "π0")
    }

    /// Runs the term until it hands control to `κ` or to a branch constant.
    pub fn evaluate(&self, args: &[u64], budget: usize) -> Result<(Outcome, usize), EvalError> {
        if args.len() != self.numeral_arity() {
            return Err(EvalError::Arity {
                expected: self.numeral_arity(),
                got: args.len(),
            });
        }
        let (last, _, steps) = run_quiet(self.process(args), budget, &mut FirstSeenCodec::new());
        let CTerm::Const(head) = &last.head else {
            return Err(EvalError::NoAnswer(last.to_string()));
        };
        let malformed = || EvalError::Malformed(last.to_string());
        match self.contract {
            Contract::Select { .. } => {
                let i = head
                    .strip_prefix('ξ')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(malformed)?;
                if !last.stack.is_empty() || &*last.stack.base != "π0" {
                    return Err(malformed());
                }
                Ok((Outcome::Branch(i), steps))
            }
            _ => {
                if &**head != "κ" || last.stack.len() != 1 || &*last.stack.base != "π0" {
                    return Err(malformed());
                }
                let v = last.stack.top().expect("one item");
                let n = numeral_value(v).ok_or_else(malformed)?;
                if *v != numeral(n) {
                    return Err(malformed());
                }
                Ok((Outcome::Value(n), steps))
            }
        }
    }
}

/// Convenience: `(K) I` is also the term `Atom::K` applied to `Atom::I`.
pub fn is_zero(t: &CTerm) -> bool {
    *t == CTerm::app(Atom::K.into(), Atom::I.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_k_i() {
        assert!(is_zero(&zero()));
        assert_eq!(numeral(0), zero());
        assert_eq!(numeral(1), CTerm::app(sigma(), zero()));
    }

    #[test]
    fn numerals_read_back() {
        for n in 0..10 {
            assert_eq!(numeral_value(&numeral(n)), Some(n));
        }
        assert_eq!(numeral_value(&CTerm::app(sigma(), CTerm::Num(4))), Some(5));
        assert_eq!(numeral_value(&CTerm::Atom(Atom::K)), None);
    }

    #[test]
    fn pairing_oracle_inverts() {
        for z in 0..200 {
            let (a, b) = unpair_code(z);
            assert_eq!(pair_code(a, b), z);
        }
    }

    #[test]
    fn catalog_terms_are_quasi_proofs() {
        for e in catalog() {
            assert!(e.term.is_quasi_proof(), "{}", e.name);
        }
    }
}
