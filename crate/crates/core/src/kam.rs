//! The process machine of a standard realizability algebra.

use std::collections::HashMap;
use std::fmt;

use crate::term::{print_cterm, Atom, CTerm, Name, Stack};

pub const DEFAULT_BUDGET: usize = 100_000;

/// `head ⋆ stack`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Process {
    pub head: CTerm,
    pub stack: Stack,
}

impl Process {
    pub fn new(head: CTerm, stack: Stack) -> Process {
        Process { head, stack }
    }

    /// `head ⋆ a1 · ... · an · base`.
    pub fn with_args(
        head: CTerm,
        top_first: impl IntoIterator<Item = CTerm>,
        base: &str,
    ) -> Process {
        Process::new(head, Stack::new(top_first, base))
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⋆ {}", self.head, self.stack)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Push,
    I,
    K,
    E,
    W,
    C,
    B,
    Cc,
    /// Continuation `k_π` restoring its stack.
    Restore,
    Qt,
    Rd,
    Wr,
    /// One level of numeral-literal expansion.
    Num,
}

impl Rule {
    pub fn spelling(self) -> &'static str {
        match self {
            Rule::Push => "push",
            Rule::I => "I",
            Rule::K => "K",
            Rule::E => "E",
            Rule::W => "W",
            Rule::C => "C",
            Rule::B => "B",
            Rule::Cc => "cc",
            Rule::Restore => "k",
            Rule::Qt => "qt",
            Rule::Rd => "rd",
            Rule::Wr => "wr",
            Rule::Num => "num",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spelling())
    }
}

/// Why a process cannot take a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Halt {
    /// The head is a constant or variable: nothing more to do.
    Inert(Name),
    /// The head needs more stack items than there are.
    Stuck {
        head: String,
        needed: usize,
        found: usize,
    },
}

impl fmt::Display for Halt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Halt::Inert(x) => write!(f, "inert head {x}"),
            Halt::Stuck {
                head,
                needed,
                found,
            } => {
                write!(f, "{head} needs {needed} stack items, found {found}")
            }
        }
    }
}

/// Assigns natural numbers to stacks for the ς instruction.
pub trait StackCodec {
    fn encode(&mut self, s: &Stack) -> u64;
    fn decode(&self, n: u64) -> Option<&Stack>;
}

/// Numbers stacks in the order they are first seen. Injective, and
/// deterministic for a given sequence of queries.
#[derive(Default, Debug, Clone)]
pub struct FirstSeenCodec {
    index: HashMap<Stack, u64>,
    seen: Vec<Stack>,
}

impl FirstSeenCodec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}

impl StackCodec for FirstSeenCodec {
    fn encode(&mut self, s: &Stack) -> u64 {
        if let Some(&n) = self.index.get(s) {
            return n;
        }
        let n = self.seen.len() as u64;
        self.index.insert(s.clone(), n);
        self.seen.push(s.clone());
        n
    }

    fn decode(&self, n: u64) -> Option<&Stack> {
        self.seen.get(usize::try_from(n).ok()?)
    }
}

fn need(p: &Process, n: usize) -> Result<(), Halt> {
    if p.stack.len() < n {
        Err(Halt::Stuck {
            head: print_cterm(&p.head),
            needed: n,
            found: p.stack.len(),
        })
    } else {
        Ok(())
    }
}

/// One machine step, in place. Returns the rule applied.
pub fn step_mut(p: &mut Process, codec: &mut dyn StackCodec) -> Result<Rule, Halt> {
    let head = p.head.clone();
    let rule = match head {
        CTerm::App(f, a) => {
            p.stack.push((*a).clone());
            p.head = (*f).clone();
            return Ok(Rule::Push);
        }
        CTerm::Var(x) | CTerm::Const(x) => return Err(Halt::Inert(x)),
        CTerm::Num(n) => {
            p.head = if n == 0 {
                crate::arith::zero()
            } else {
                CTerm::app(crate::arith::sigma(), CTerm::Num(n - 1))
            };
            return Ok(Rule::Num);
        }
        CTerm::Cont(saved) => {
            need(p, 1)?;
            let xi = p.stack.pop().expect("arity checked");
            p.head = xi;
            p.stack = (*saved).clone();
            return Ok(Rule::Restore);
        }
        CTerm::Atom(a) => a,
    };
    let arity = match rule {
        Atom::I | Atom::Cc | Atom::Qt => 1,
        Atom::K | Atom::E | Atom::W | Atom::Rd | Atom::Wr => 2,
        Atom::B | Atom::C => 3,
    };
    need(p, arity)?;
    let st = &mut p.stack;
    macro_rules! pop {
        () => {
            st.pop().expect("arity checked")
        };
    }
    let (next, r) = match rule {
        Atom::I => (pop!(), Rule::I),
        Atom::K => {
            let xi = pop!();
            pop!();
            (xi, Rule::K)
        }
        Atom::E => {
            let xi = pop!();
            let eta = pop!();
            (CTerm::app(xi, eta), Rule::E)
        }
        Atom::W => {
            let xi = pop!();
            let eta = st.top().expect("arity checked").clone();
            st.push(eta);
            (xi, Rule::W)
        }
        Atom::C => {
            let xi = pop!();
            let eta = pop!();
            let zeta = pop!();
            st.push(eta);
            st.push(zeta);
            (xi, Rule::C)
        }
        Atom::B => {
            let xi = pop!();
            let eta = pop!();
            let zeta = pop!();
            (CTerm::app(xi, CTerm::app(eta, zeta)), Rule::B)
        }
        Atom::Cc => {
            let xi = pop!();
            let k = CTerm::cont(st.clone());
            st.push(k);
            (xi, Rule::Cc)
        }
        Atom::Qt => {
            let xi = pop!();
            let n = codec.encode(st);
            st.push(CTerm::Num(n));
            (xi, Rule::Qt)
        }
        Atom::Rd => {
            let xi = pop!();
            let tau = st.items.remove(0);
            st.push(tau);
            (xi, Rule::Rd)
        }
        Atom::Wr => {
            let xi = pop!();
            let tau = pop!();
            st.items.insert(0, tau);
            (xi, Rule::Wr)
        }
    };
    p.head = next;
    Ok(r)
}

/// One machine step.
pub fn step(p: &Process, codec: &mut dyn StackCodec) -> Result<(Rule, Process), Halt> {
    let mut q = p.clone();
    let r = step_mut(&mut q, codec)?;
    Ok((r, q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Done(Name),
    Stuck(Halt),
    BudgetExhausted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Done(x) => write!(f, "done (head {x})"),
            Status::Stuck(h) => write!(f, "stuck: {h}"),
            Status::BudgetExhausted => f.write_str("budget exhausted"),
        }
    }
}

fn status_of(h: Halt) -> Status {
    match h {
        Halt::Inert(x) => Status::Done(x),
        other => Status::Stuck(other),
    }
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub initial: Process,
    pub steps: Vec<(Rule, Process)>,
    pub status: Status,
}

impl Trace {
    pub fn last(&self) -> &Process {
        self.steps.last().map_or(&self.initial, |s| &s.1)
    }

    /// All visited processes, initial first.
    pub fn processes(&self) -> impl Iterator<Item = &Process> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.1))
    }

    pub fn contains(&self, q: &Process) -> bool {
        self.processes().any(|p| p == q)
    }

    /// One line per state: `<n> <rule> | <head> | <stack>`.
    pub fn lines(&self) -> Vec<String> {
        let fmt = |n: usize, r: &str, p: &Process| format!("{n} {r} | {} | {}", p.head, p.stack);
        let mut out = vec![fmt(0, "start", &self.initial)];
        out.extend(
            self.steps
                .iter()
                .enumerate()
                .map(|(i, (r, p))| fmt(i + 1, r.spelling(), p)),
        );
        out
    }
}

/// Runs until the machine halts or `budget` steps have been taken.
pub fn run(p: Process, budget: usize, codec: &mut dyn StackCodec) -> Trace {
    let mut cur = p.clone();
    let mut steps = Vec::new();
    for _ in 0..budget {
        match step_mut(&mut cur, codec) {
            Ok(r) => steps.push((r, cur.clone())),
            Err(h) => {
                return Trace {
                    initial: p,
                    steps,
                    status: status_of(h),
                }
            }
        }
    }
    let status = match step(&cur, codec) {
        Err(h) => status_of(h),
        Ok(_) => Status::BudgetExhausted,
    };
    Trace {
        initial: p,
        steps,
        status,
    }
}

/// Runs without recording, returning the final process, its status and
/// the number of steps taken.
pub fn run_quiet(
    mut p: Process,
    budget: usize,
    codec: &mut dyn StackCodec,
) -> (Process, Status, usize) {
    for n in 0..budget {
        if let Err(h) = step_mut(&mut p, codec) {
            return (p, status_of(h), n);
        }
    }
    let status = match step(&p, codec) {
        Err(h) => status_of(h),
        Ok(_) => Status::BudgetExhausted,
    };
    (p, status, budget)
}

/// Runs `p` until a state satisfying `pred` is found. Returns the number
/// of steps taken to reach it.
pub fn run_until(
    mut p: Process,
    budget: usize,
    codec: &mut dyn StackCodec,
    mut pred: impl FnMut(&Process) -> bool,
) -> Option<(usize, Process)> {
    for n in 0..=budget {
        if pred(&p) {
            return Some((n, p));
        }
        if n == budget || step_mut(&mut p, codec).is_err() {
            return None;
        }
    }
    None
}

/// Whether `q` occurs in the trace of `p` within `budget` steps.
pub fn reaches(p: &Process, q: &Process, budget: usize) -> bool {
    reaches_with(p, q, budget, &mut FirstSeenCodec::new())
}

pub fn reaches_with(p: &Process, q: &Process, budget: usize, codec: &mut dyn StackCodec) -> bool {
    run_until(p.clone(), budget, codec, |s| s == q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CTerm {
        CTerm::cst(s)
    }

    #[test]
    fn chi_then_chi_prime_restores() {
        let mut codec = FirstSeenCodec::new();
        let p = Process::with_args(Atom::Wr.into(), [c("x"), c("t"), c("a")], "p0");
        let (_, q) = step(&p, &mut codec).unwrap();
        assert_eq!(q, Process::with_args(c("x"), [c("a"), c("t")], "p0"));
        let r = Process::new(Atom::Rd.into(), {
            let mut s = q.stack.clone();
            s.push(c("y"));
            s
        });
        let (_, out) = step(&r, &mut codec).unwrap();
        assert_eq!(out, Process::with_args(c("y"), [c("t"), c("a")], "p0"));
    }

    #[test]
    fn codec_is_first_seen() {
        let mut codec = FirstSeenCodec::new();
        let a = Stack::empty("a");
        let b = Stack::new([c("x")], "a");
        assert_eq!(codec.encode(&a), 0);
        assert_eq!(codec.encode(&b), 1);
        assert_eq!(codec.encode(&a), 0);
        assert_eq!(codec.decode(1), Some(&b));
    }

    #[test]
    fn budget_is_reported() {
        // (W)(E)E applied to itself: ω ω loops forever.
        let w = CTerm::app(Atom::W.into(), CTerm::app(Atom::E.into(), Atom::E.into()));
        let t = run(
            Process::new(CTerm::app(w.clone(), w), Stack::empty("p")),
            50,
            &mut FirstSeenCodec::new(),
        );
        assert_eq!(t.status, Status::BudgetExhausted);
        assert_eq!(t.steps.len(), 50);
    }

    #[test]
    fn too_few_arguments_is_stuck() {
        let t = run(
            Process::with_args(Atom::K.into(), [c("x")], "p"),
            10,
            &mut FirstSeenCodec::new(),
        );
        assert!(matches!(
            t.status,
            Status::Stuck(Halt::Stuck {
                needed: 2,
                found: 1,
                ..
            })
        ));
    }
}
