//! Falsification of realizability claims `ξ ⊩ F` in small finite universes.
//!
//! A universe fixes a finite set of stacks `Π_u`, a handful of truth values
//! (subsets of `Π_u`, always including `∅` and `Π_u`), a pole given by a set
//! of target processes, and a pool of candidate terms. A process belongs to
//! the pole when its run halts on a target within the step budget; this set
//! is closed under anti-reduction because the machine is deterministic.
//!
//! Falsity values are computed exactly from these data. Realizer sets are
//! restricted to the pool, so for formulas with nested implications the
//! computed falsity value is only an approximation of the true one, and a
//! clean verdict is evidence rather than proof. A counterexample is always
//! a concrete process that misses the pole and can be replayed.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kam::{run_quiet, FirstSeenCodec, Process, Status};
use crate::logic::{parse_formula, Formula, ITerm};
use crate::term::{compile, name, parse_lterm, Atom, CTerm, Name, Stack};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoleError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("{0} cannot be interpreted in a finite universe")]
    Unsupported(String),
    #[error("falsity value has {0} elements, above the limit")]
    TooLarge(usize),
    #[error("{pred} interpreted with arity {expected}, used with {found} arguments")]
    Arity {
        pred: String,
        expected: usize,
        found: usize,
    },
}

/// Size parameters for [`Universe::generate`].
#[derive(Clone, Debug)]
pub struct UniverseConfig {
    pub individuals: usize,
    pub constants: usize,
    pub bases: usize,
    pub max_depth: usize,
    /// Truth values besides `∅` and `Π_u`.
    pub extra_values: usize,
    /// Random terms added to the pool.
    pub soup: usize,
    pub budget: usize,
}

impl Default for UniverseConfig {
    fn default() -> Self {
        UniverseConfig {
            individuals: 2,
            constants: 2,
            bases: 2,
            max_depth: 2,
            extra_values: 2,
            soup: 16,
            budget: 300,
        }
    }
}

/// Outcome of running one process against the pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    /// The budget ran out; counted as outside.
    Censored,
}

/// A predicate interpretation `P^k → values`, as a table indexed by the
/// argument tuple read in base `individuals`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interp {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Interp {
    pub fn constant(arity: usize, individuals: usize, value: usize) -> Interp {
        Interp {
            arity,
            table: vec![value; individuals.pow(arity as u32)],
        }
    }

    fn at(&self, args: &[usize], individuals: usize) -> usize {
        let ix = args.iter().fold(0, |acc, a| acc * individuals + a);
        self.table[ix]
    }
}

pub struct Universe {
    pub seed: u64,
    pub individuals: usize,
    pub constants: Vec<CTerm>,
    /// `Π_u`.
    pub stacks: Vec<Stack>,
    /// Truth values as indices into `stacks`; `values[0] = ∅`, `values[1] = Π_u`.
    pub values: Vec<Vec<usize>>,
    pub targets: HashSet<Process>,
    /// Predicate constants: `|R(p⃗)|` for every argument tuple.
    pub rels: BTreeMap<Name, BTreeMap<Vec<usize>, Vec<CTerm>>>,
    pub pool: Vec<CTerm>,
    pub budget: usize,
    interps: RefCell<HashMap<usize, Rc<Vec<Interp>>>>,
    cache: RefCell<HashMap<Process, Membership>>,
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("seed", &self.seed)
            .field("stacks", &self.stacks.len())
            .field("values", &self.values)
            .field("targets", &self.targets.len())
            .field("pool", &self.pool.len())
            .finish()
    }
}

/// The most interpretations enumerated for one predicate quantifier.
const MAX_INTERPS: usize = 64;
/// The largest falsity value computed before giving up.
const MAX_FALSITY: usize = 50_000;

fn all_stacks(consts: &[CTerm], bases: usize, depth: usize) -> Vec<Stack> {
    let mut layer: Vec<Stack> = (0..bases).map(|i| Stack::empty(&format!("π{i}"))).collect();
    let mut out = layer.clone();
    for _ in 0..depth {
        layer = layer
            .iter()
            .flat_map(|s| {
                consts.iter().map(move |c| {
                    let mut t = s.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A random term: combinators, universe constants, continuations over
/// universe stacks and small numerals, combined by application.
pub fn sample_term(rng: &mut impl Rng, consts: &[CTerm], stacks: &[Stack], depth: usize) -> CTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        const ATOMS: [Atom; 7] = [
            Atom::I,
            Atom::K,
            Atom::E,
            Atom::W,
            Atom::C,
            Atom::B,
            Atom::Cc,
        ];
        match rng.gen_range(0..10) {
            0..=4 => ATOMS[rng.gen_range(0..ATOMS.len())].into(),
            5..=7 => consts[rng.gen_range(0..consts.len())].clone(),
            8 => CTerm::cont(stacks[rng.gen_range(0..stacks.len())].clone()),
            _ => CTerm::Num(rng.gen_range(0..=5)),
        }
    } else {
        CTerm::app(
            sample_term(rng, consts, stacks, depth - 1),
            sample_term(rng, consts, stacks, depth - 1),
        )
    }
}

impl Universe {
    pub fn generate(seed: u64, cfg: &UniverseConfig) -> Universe {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let constants: Vec<CTerm> = (0..cfg.constants)
            .map(|i| CTerm::cst(&format!("c{i}")))
            .collect();
        let stacks = all_stacks(&constants, cfg.bases, cfg.max_depth);
        let mut values = vec![vec![], (0..stacks.len()).collect::<Vec<_>>()];
        for _ in 0..cfg.extra_values {
            values.push((0..stacks.len()).filter(|_| rng.gen_bool(0.5)).collect());
        }
        let mut targets = HashSet::new();
        for c in &constants {
            for s in &stacks {
                if rng.gen_bool(0.5) {
                    targets.insert(Process::new(c.clone(), s.clone()));
                }
            }
        }
        let mut pool: Vec<CTerm> = [
            Atom::I,
            Atom::K,
            Atom::E,
            Atom::W,
            Atom::C,
            Atom::B,
            Atom::Cc,
        ]
        .into_iter()
        .map(CTerm::from)
        .collect();
        pool.extend(constants.iter().cloned());
        pool.extend(stacks.iter().map(|s| CTerm::cont(s.clone())));
        pool.extend(
            constants
                .iter()
                .map(|c| CTerm::app(Atom::K.into(), c.clone())),
        );
        for _ in 0..cfg.soup {
            let t = sample_term(&mut rng, &constants, &stacks, 3);
            if !pool.contains(&t) {
                pool.push(t);
            }
        }
        let mut rels = BTreeMap::new();
        let tuples: Vec<Vec<usize>> = (0..cfg.individuals).map(|d| vec![d]).collect();
        let menu: Vec<CTerm> = vec![Atom::I.into(), Atom::K.into(), constants[0].clone()];
        // `R`: arbitrary finite sets. `R1`: nonempty only if it contains I.
        let mut r = BTreeMap::new();
        let mut r1 = BTreeMap::new();
        for t in &tuples {
            let set: Vec<CTerm> = menu.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            let mut set1 = set.clone();
            if !set1.is_empty() && !set1.contains(&Atom::I.into()) {
                set1.push(Atom::I.into());
            }
            r.insert(t.clone(), set);
            r1.insert(t.clone(), set1);
        }
        rels.insert(name("R"), r);
        rels.insert(name("R1"), r1);
        Universe {
            seed,
            individuals: cfg.individuals,
            constants,
            stacks,
            values,
            targets,
            rels,
            pool,
            budget: cfg.budget,
            interps: RefCell::new(HashMap::new()),
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// Runs `p` and decides membership in the pole.
    pub fn membership(&self, p: &Process) -> Membership {
        if let Some(m) = self.cache.borrow().get(p) {
            return *m;
        }
        let (end, status, _) = run_quiet(p.clone(), self.budget, &mut FirstSeenCodec::new());
        let m = match status {
            Status::BudgetExhausted => Membership::Censored,
            _ if self.targets.contains(&end) => Membership::In,
            _ => Membership::Out,
        };
        self.cache.borrow_mut().insert(p.clone(), m);
        m
    }

    pub fn in_pole(&self, p: &Process) -> bool {
        self.membership(p) == Membership::In
    }

    pub fn value_stacks(&self, v: usize) -> Vec<Stack> {
        self.values[v]
            .iter()
            .map(|&i| self.stacks[i].clone())
            .collect()
    }

    /// Interpretations a predicate quantifier of arity `k` ranges over: all
    /// of them when there are at most [`MAX_INTERPS`], else a seeded sample.
    pub fn interps(&self, k: usize) -> Rc<Vec<Interp>> {
        if let Some(v) = self.interps.borrow().get(&k) {
            return v.clone();
        }
        let cells = self.individuals.pow(k as u32);
        let nv = self.values.len();
        let total = (nv as f64).powi(cells as i32);
        let v: Vec<Interp> = if total <= MAX_INTERPS as f64 {
            (0..total as usize)
                .map(|mut code| {
                    let table = (0..cells)
                        .map(|_| {
                            let d = code % nv;
                            code /= nv;
                            d
                        })
                        .collect();
                    Interp { arity: k, table }
                })
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (0x5eed << k));
            let mut out: Vec<Interp> = (0..nv)
                .map(|v| Interp::constant(k, self.individuals, v))
                .collect();
            while out.len() < MAX_INTERPS {
                out.push(Interp {
                    arity: k,
                    table: (0..cells).map(|_| rng.gen_range(0..nv)).collect(),
                });
            }
            out
        };
        let v = Rc::new(v);
        self.interps.borrow_mut().insert(k, v.clone());
        v
    }

    fn value_name(&self, v: usize) -> String {
        match v {
            0 => "∅".into(),
            1 => "Π".into(),
            _ => format!("v{v}"),
        }
    }
}

/// Assignments for the free variables of a formula.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub ind: BTreeMap<Name, usize>,
    pub preds: BTreeMap<(Name, bool), Interp>,
    /// Predicate constants added to, or replacing, those of the universe.
    pub rels: BTreeMap<Name, BTreeMap<Vec<usize>, Vec<CTerm>>>,
}

impl Env {
    pub fn with_ind(mut self, x: &str, d: usize) -> Env {
        self.ind.insert(name(x), d);
        self
    }

    pub fn with_pred(mut self, x: &str, i: Interp) -> Env {
        self.preds.insert((name(x), false), i);
        self
    }

    pub fn with_rel(mut self, r: &str, table: BTreeMap<Vec<usize>, Vec<CTerm>>) -> Env {
        self.rels.insert(name(r), table);
        self
    }

    fn describe(&self, u: &Universe) -> String {
        let mut parts: Vec<String> = self
            .preds
            .iter()
            .map(|((x, _), i)| {
                let vs: Vec<String> = i.table.iter().map(|&v| u.value_name(v)).collect();
                format!("{x}:={}", vs.join("|"))
            })
            .collect();
        parts.extend(self.ind.iter().map(|(x, d)| format!("{x}:={d}")));
        parts.join(" ")
    }
}

/// An element of a falsity value with the instantiation that produced it.
#[derive(Clone, Debug)]
struct Falsum {
    stack: Stack,
    path: Rc<str>,
}

fn eval(t: &ITerm, env: &Env, u: &Universe) -> Result<usize, PoleError> {
    Ok(match t {
        ITerm::Var(x) => *env
            .ind
            .get(x)
            .ok_or_else(|| PoleError::Unbound(x.to_string()))?,
        ITerm::Zero => 0,
        ITerm::One => 1 % u.individuals,
        ITerm::Succ(a) => (eval(a, env, u)? + 1) % u.individuals,
        other => return Err(PoleError::Unsupported(other.to_string())),
    })
}

fn push_all(
    out: &mut Vec<Falsum>,
    seen: &mut HashSet<Stack>,
    items: Vec<Falsum>,
) -> Result<(), PoleError> {
    for f in items {
        if seen.insert(f.stack.clone()) {
            out.push(f);
        }
    }
    if out.len() > MAX_FALSITY {
        return Err(PoleError::TooLarge(out.len()));
    }
    Ok(())
}

fn falsity(f: &Formula, env: &Env, u: &Universe) -> Result<Vec<Falsum>, PoleError> {
    let here = || -> Rc<str> { env.describe(u).into() };
    match f {
        Formula::Atom(p, args) => {
            let i = env
                .preds
                .get(&(p.name.clone(), p.param))
                .ok_or_else(|| PoleError::Unbound(p.to_string()))?;
            if i.arity != args.len() {
                return Err(PoleError::Arity {
                    pred: p.to_string(),
                    expected: i.arity,
                    found: args.len(),
                });
            }
            let args = args
                .iter()
                .map(|a| eval(a, env, u))
                .collect::<Result<Vec<_>, _>>()?;
            let path = here();
            Ok(u.value_stacks(i.at(&args, u.individuals))
                .into_iter()
                .map(|stack| Falsum {
                    stack,
                    path: path.clone(),
                })
                .collect())
        }
        Formula::Imp(a, b) => {
            let ra = realizers(a, env, u)?;
            prepend(&ra, falsity(b, env, u)?)
        }
        Formula::ForallInd(x, a) => {
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            for d in 0..u.individuals {
                let mut e = env.clone();
                e.ind.insert(x.clone(), d);
                push_all(&mut out, &mut seen, falsity(a, &e, u)?)?;
            }
            Ok(out)
        }
        Formula::ForallPred(x, k, a) => {
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            for i in u.interps(*k).iter() {
                let mut e = env.clone();
                e.preds.insert((x.name.clone(), x.param), i.clone());
                push_all(&mut out, &mut seen, falsity(a, &e, u)?)?;
            }
            Ok(out)
        }
        Formula::RelArrow(r, args, b) => {
            let set = rel(r, args, env, u)?;
            prepend(&set, falsity(b, env, u)?)
        }
        Formula::RelMaps(r, args, b) => {
            if rel(r, args, env, u)?.contains(&Atom::I.into()) {
                falsity(b, env, u)
            } else {
                Ok(vec![])
            }
        }
        Formula::EqMaps(t1, t2, b) => {
            if eval(t1, env, u)? == eval(t2, env, u)? {
                falsity(b, env, u)
            } else {
                Ok(vec![])
            }
        }
        Formula::Top => Ok(vec![]),
        Formula::Cond(..) | Formula::Eps(..) => Err(PoleError::Unsupported(f.to_string())),
    }
}

fn rel(r: &Name, args: &[ITerm], env: &Env, u: &Universe) -> Result<Vec<CTerm>, PoleError> {
    let args = args
        .iter()
        .map(|a| eval(a, env, u))
        .collect::<Result<Vec<_>, _>>()?;
    let table = env
        .rels
        .get(r)
        .or_else(|| u.rels.get(r))
        .ok_or_else(|| PoleError::Unbound(r.to_string()))?;
    Ok(table.get(&args).cloned().unwrap_or_default())
}

fn prepend(terms: &[CTerm], rest: Vec<Falsum>) -> Result<Vec<Falsum>, PoleError> {
    let n = terms.len() * rest.len();
    if n > MAX_FALSITY {
        return Err(PoleError::TooLarge(n));
    }
    Ok(terms
        .iter()
        .flat_map(|t| {
            rest.iter().map(move |f| {
                let mut s = f.stack.clone();
                s.push(t.clone());
                Falsum {
                    stack: s,
                    path: f.path.clone(),
                }
            })
        })
        .collect())
}

/// Pool terms realizing `f` against its computed falsity value.
fn realizers(f: &Formula, env: &Env, u: &Universe) -> Result<Vec<CTerm>, PoleError> {
    let fs = falsity(f, env, u)?;
    Ok(u.pool
        .iter()
        .filter(|t| {
            fs.iter()
                .all(|x| u.in_pole(&Process::new((*t).clone(), x.stack.clone())))
        })
        .cloned()
        .collect())
}

/// The computed falsity value `∥F∥`, as plain stacks.
pub fn falsity_value(f: &Formula, env: &Env, u: &Universe) -> Result<Vec<Stack>, PoleError> {
    Ok(falsity(f, env, u)?.into_iter().map(|x| x.stack).collect())
}

/// The pool terms that realize `f`.
pub fn pool_realizers(f: &Formula, env: &Env, u: &Universe) -> Result<Vec<CTerm>, PoleError> {
    realizers(f, env, u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `censored` counts trials whose run exhausted the budget. They are
    /// neither confirmed members of the pole nor counterexamples.
    NoCounterexample { trials: usize, censored: usize },
    /// A process that halts outside the pole.
    Counterexample { witness: Process, path: String },
}

impl Verdict {
    pub fn is_clean(&self) -> bool {
        matches!(self, Verdict::NoCounterexample { .. })
    }

    pub fn censored(&self) -> usize {
        match self {
            Verdict::NoCounterexample { censored, .. } => *censored,
            Verdict::Counterexample { .. } => 0,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoCounterexample { trials, censored } => {
                write!(f, "no counterexample in {trials} trials")?;
                if *censored > 0 {
                    write!(f, " ({censored} budget-censored)")?;
                }
                Ok(())
            }
            Verdict::Counterexample { witness, path } => {
                write!(f, "counterexample {witness} [{path}]")
            }
        }
    }
}

/// Tests `ξ ⋆ π ∈ ⊥⊥` for up to `trials` elements `π` of the computed `∥F∥`.
/// All of `∥F∥` is used when it has at most `trials` elements.
///
/// The step budget makes the computed pole slightly smaller than the true
/// one: a run that needs more steps than the budget is not known to halt.
/// Such trials are counted as censored. Inside realizer computations they
/// count as outside the pole, which only shrinks realizer sets.
pub fn falsify(
    xi: &CTerm,
    f: &Formula,
    env: &Env,
    u: &Universe,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<Verdict, PoleError> {
    let fs = falsity(f, env, u)?;
    let picks: Vec<usize> = if fs.len() <= trials {
        (0..fs.len()).collect()
    } else {
        let mut v = sample(rng, fs.len(), trials).into_vec();
        v.sort_unstable();
        v
    };
    let mut censored = 0;
    for &i in &picks {
        let p = Process::new(xi.clone(), fs[i].stack.clone());
        match u.membership(&p) {
            Membership::In => {}
            Membership::Censored => censored += 1,
            Membership::Out => {
                return Ok(Verdict::Counterexample {
                    witness: p,
                    path: fs[i].path.to_string(),
                })
            }
        }
    }
    Ok(Verdict::NoCounterexample {
        trials: picks.len(),
        censored,
    })
}

/// Re-runs a counterexample from scratch; true when it halts outside the pole.
pub fn replay_counterexample(u: &Universe, witness: &Process) -> bool {
    let (end, status, _) = run_quiet(witness.clone(), u.budget, &mut FirstSeenCodec::new());
    status != Status::BudgetExhausted && !u.targets.contains(&end)
}

fn term(src: &str) -> CTerm {
    compile(&parse_lterm(src).unwrap_or_else(|e| panic!("{src}: {e}")))
}

fn formula(src: &str) -> Formula {
    parse_formula(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// One realizability claim checked by [`check_eq_props`].
#[derive(Clone, Debug)]
pub struct PropCheck {
    pub name: &'static str,
    pub realizer: CTerm,
    pub verdicts: Vec<Verdict>,
}

impl PropCheck {
    pub fn is_clean(&self) -> bool {
        self.verdicts.iter().all(Verdict::is_clean)
    }

    pub fn trials(&self) -> usize {
        self.verdicts
            .iter()
            .map(|v| match v {
                Verdict::NoCounterexample { trials, .. } => *trials,
                Verdict::Counterexample { .. } => 1,
            })
            .sum()
    }

    pub fn censored(&self) -> usize {
        self.verdicts.iter().map(Verdict::censored).sum()
    }

    pub fn first_counterexample(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.is_clean())
    }
}

/// The claims exercised by the harness.
pub const CLAIMS: [&str; 9] = [
    "peirce",
    "continuation",
    "rel-to-maps",
    "maps-to-rel",
    "eq-to-maps",
    "maps-to-eq",
    "negation-left",
    "negation-right",
    "peirce-with-K",
];

/// Runs every claim in [`CLAIMS`] on `u`, with `trials` sampled stacks per
/// instantiation. The last claim is a deliberately broken variant and is
/// expected to fail on some universes.
pub fn check_eq_props(u: &Universe, trials: usize) -> Result<Vec<PropCheck>, PoleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(u.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let empty = Env::default();
    let mut out = Vec::new();
    let single = |name: &'static str, realizer: CTerm, f: &str, rng: &mut ChaCha8Rng| {
        let v = falsify(&realizer, &formula(f), &empty, u, trials, rng)?;
        Ok::<_, PoleError>(PropCheck {
            name,
            realizer,
            verdicts: vec![v],
        })
    };
    let peirce = "forall2 X/0 Y/0. (((X -> Y) -> X) -> X)";
    out.push(single("peirce", Atom::Cc.into(), peirce, &mut rng)?);

    // k_π ⊩ X → Y for every value X, every π in it, and every value Y.
    let mut continuations = Vec::new();
    let xy = formula("X -> Y");
    for x in 0..u.values.len() {
        for y in 0..u.values.len() {
            let env = Env::default()
                .with_pred("X", Interp::constant(0, u.individuals, x))
                .with_pred("Y", Interp::constant(0, u.individuals, y));
            for s in u.value_stacks(x) {
                continuations.push(falsify(&CTerm::cont(s), &xy, &env, u, trials, &mut rng)?);
            }
        }
    }
    out.push(PropCheck {
        name: "continuation",
        realizer: CTerm::cst("k_π"),
        verdicts: continuations,
    });

    out.push(single(
        "rel-to-maps",
        term("\\x (x) I"),
        "forall2 X/0. forall x. ((@R(x) -> X) -> @R(x) |-> X)",
        &mut rng,
    )?);
    out.push(single(
        "maps-to-rel",
        Atom::K.into(),
        "forall2 X/0. forall x. ((@R1(x) |-> X) -> @R1(x) -> X)",
        &mut rng,
    )?);
    out.push(single(
        "eq-to-maps",
        term("\\x (x) I"),
        "forall2 X/0. forall x y. ((x = y -> X) -> x = y |-> X)",
        &mut rng,
    )?);
    out.push(single(
        "maps-to-eq",
        term("\\x \\y (y) x"),
        "forall2 X/0. forall x y. ((x = y |-> X), x = y -> X)",
        &mut rng,
    )?);

    // N_A for A ≡ X(x), one table per interpretation of X.
    let mut negation = (Vec::new(), Vec::new());
    for i in u.interps(1).iter() {
        let mut n = BTreeMap::new();
        for d in 0..u.individuals {
            let ks = u
                .value_stacks(i.at(&[d], u.individuals))
                .into_iter()
                .map(CTerm::cont)
                .collect();
            n.insert(vec![d], ks);
        }
        let env = Env::default().with_pred("X", i.clone()).with_rel("N", n);
        negation.0.push(falsify(
            &Atom::I.into(),
            &formula("forall x. (@N(x) -> X(x) -> bot)"),
            &env,
            u,
            trials,
            &mut rng,
        )?);
        negation.1.push(falsify(
            &Atom::Cc.into(),
            &formula("forall x. ((@N(x) -> bot) -> X(x))"),
            &env,
            u,
            trials,
            &mut rng,
        )?);
    }
    out.push(PropCheck {
        name: "negation-left",
        realizer: Atom::I.into(),
        verdicts: negation.0,
    });
    out.push(PropCheck {
        name: "negation-right",
        realizer: Atom::Cc.into(),
        verdicts: negation.1,
    });

    out.push(single("peirce-with-K", Atom::K.into(), peirce, &mut rng)?);
    Ok(out)
}

/// Totals for one claim of [`CLAIMS`] over a range of universes.
#[derive(Clone, Debug)]
pub struct ClaimTally {
    pub name: &'static str,
    pub universes: usize,
    pub clean: usize,
    pub trials: usize,
    pub censored: usize,
    /// Seed of the first failing universe with its witness.
    pub first_failure: Option<(u64, Process)>,
}

impl ClaimTally {
    /// The broken variant is expected to fail somewhere; every other claim
    /// is expected to hold everywhere.
    pub fn as_expected(&self) -> bool {
        if self.name == BROKEN_CLAIM {
            self.first_failure.is_some()
        } else {
            self.first_failure.is_none()
        }
    }
}

/// Name of the deliberately unsound claim in [`CLAIMS`].
pub const BROKEN_CLAIM: &str = "peirce-with-K";

/// Runs [`check_eq_props`] on every universe generated from `seeds`.
pub fn survey(
    seeds: std::ops::Range<u64>,
    cfg: &UniverseConfig,
    trials: usize,
) -> Result<Vec<ClaimTally>, PoleError> {
    let mut tallies: Vec<ClaimTally> = CLAIMS
        .iter()
        .map(|&name| ClaimTally {
            name,
            universes: 0,
            clean: 0,
            trials: 0,
            censored: 0,
            first_failure: None,
        })
        .collect();
    for seed in seeds {
        let u = Universe::generate(seed, cfg);
        for c in check_eq_props(&u, trials)? {
            let t = tallies
                .iter_mut()
                .find(|t| t.name == c.name)
                .expect("check_eq_props only reports CLAIMS");
            t.universes += 1;
            t.trials += c.trials();
            t.censored += c.censored();
            if c.is_clean() {
                t.clean += 1;
            } else if t.first_failure.is_none() {
                if let Some(Verdict::Counterexample { witness, .. }) = c.first_counterexample() {
                    t.first_failure = Some((seed, witness.clone()));
                }
            }
        }
    }
    Ok(tallies)
}
