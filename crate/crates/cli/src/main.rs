use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kamforce::arith::{self, Outcome};
use kamforce::balg::{
    check_chain, g_case, lifted_combinator_cases, application_case, run_j, storage_s_case,
    storage_t_case, translate,
};
use kamforce::corpus::{self, Origin};
use kamforce::kam::{run, FirstSeenCodec, Process, Status, DEFAULT_BUDGET};
use kamforce::logic::{
    force, nd_check, parse_formula, parse_iterm, synth_chi, synth_delta, Derivation, Formula,
};
use kamforce::pole::{falsify, replay_counterexample, survey, Env, Universe, UniverseConfig, Verdict};
use kamforce::term::{compile, name, parse_cterm, parse_lterm, parse_stack, Stack};
use kamforce::wedge::{format_chain, gamma_table, parse_wedge, synth_project};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "kamforce", version, about = "Krivine machine, forcing conditions and realizer corpus")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Maximum number of machine steps per run.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,
    #[arg(long, global = true, value_enum, default_value_t = TraceMode::Final)]
    trace: TraceMode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceMode {
    None,
    Final,
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile a λ-term to combinators.
    Compile { source: String },
    /// Run the machine on a c-term.
    Run {
        term: String,
        /// Dot-separated items, top first; the base `π0` is implicit.
        #[arg(long, default_value = "")]
        stack: String,
    },
    /// C-expressions between ∧-terms.
    Gamma {
        #[command(subcommand)]
        cmd: GammaCmd,
    },
    /// Forcing transform and the χ/δ terms.
    Force {
        #[command(subcommand)]
        cmd: ForceCmd,
    },
    /// Falsification of realizability claims in finite universes.
    Pole {
        #[command(subcommand)]
        cmd: PoleCmd,
    },
    /// Lifted (B-algebra) chains and translation.
    Balg {
        #[command(subcommand)]
        cmd: BalgCmd,
    },
    /// Arithmetic catalog.
    Arith {
        #[command(subcommand)]
        cmd: ArithCmd,
    },
    /// Named realizers and their replayable claims.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
    /// Natural deduction checker.
    Nd {
        /// JSON derivation file, or `-` for stdin.
        file: String,
        /// Hypothesis `x:FORMULA`; may be repeated.
        #[arg(long = "hyp")]
        hyps: Vec<String>,
    },
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Synthesize γ :: FROM ⇒ TO and check it.
    Synth {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Check the built-in γ table.
    Table,
}

#[derive(Subcommand)]
enum ForceCmd {
    /// Print `p ⊩ F`.
    Transform {
        #[arg(long)]
        cond: String,
        #[arg(long)]
        formula: String,
    },
    /// Print χ_F and χ′_F.
    Chi {
        #[arg(long)]
        formula: String,
    },
    /// Print δ_F and δ′_F.
    Delta {
        #[arg(long)]
        formula: String,
    },
}

#[derive(Subcommand)]
enum PoleCmd {
    /// Look for a counterexample to `TERM ⊩ FORMULA` in one universe.
    Falsify {
        #[arg(long)]
        term: String,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Check the built-in claims over universes `seed .. seed+universes`.
    Claims {
        #[arg(long, default_value_t = 200)]
        universes: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum BalgCmd {
    /// Replay the lifted combinator, storage and g chains.
    Chains,
    /// Translate an elementary term to the lifted model.
    Translate { term: String },
    /// Run j on a numeral and compare with its translation.
    J { n: u64 },
}

#[derive(Subcommand)]
enum ArithCmd {
    List,
    /// Run a catalog term on numerals.
    Eval { name: String, args: Vec<u64> },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    /// Print an entry's source, compiled form and claims.
    Show { name: String },
    /// Replay an entry, or `all`.
    Replay { name: String },
}

/// Rows printed as aligned columns, or tab-separated with `--output tsv`.
struct Table {
    mode: OutputMode,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(mode: OutputMode) -> Table {
        Table {
            mode,
            rows: Vec::new(),
        }
    }

    fn row<S: ToString>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows
            .push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    fn print(&self) {
        match self.mode {
            OutputMode::Tsv => {
                for r in &self.rows {
                    println!("{}", r.join("\t"));
                }
            }
            OutputMode::Text => {
                let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
                let width: Vec<usize> = (0..cols)
                    .map(|i| {
                        self.rows
                            .iter()
                            .filter_map(|r| r.get(i))
                            .map(|c| c.chars().count())
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                for r in &self.rows {
                    let mut line = String::new();
                    for (i, c) in r.iter().enumerate() {
                        line.push_str(c);
                        if i + 1 < r.len() {
                            let pad = width[i] - c.chars().count() + 2;
                            line.extend(std::iter::repeat(' ').take(pad));
                        }
                    }
                    println!("{line}");
                }
            }
        }
    }
}

fn shell_quote(s: &str) -> String {
    if !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_./=:".contains(c))
    {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

fn print_replay_hint() {
    let args: Vec<String> = std::env::args().skip(1).map(|a| shell_quote(&a)).collect();
    println!("replay: kamforce {}", args.join(" "));
}

fn parse_cli_stack(text: &str) -> Result<Stack> {
    let text = text.trim();
    let full = if text.is_empty() {
        "π0".to_string()
    } else {
        format!("{text}.π0")
    };
    parse_stack(&full).with_context(|| format!("bad stack {text:?}"))
}

fn cmd_run(g: &Global, term: &str, stack: &str) -> Result<bool> {
    let head = parse_cterm(term).with_context(|| format!("bad term {term:?}"))?;
    let p = Process::new(head, parse_cli_stack(stack)?);
    let tr = run(p, g.budget as usize, &mut FirstSeenCodec::new());
    match g.trace {
        TraceMode::Full => {
            for l in tr.lines() {
                println!("{l}");
            }
        }
        TraceMode::Final => println!("{}", tr.last()),
        TraceMode::None => {}
    }
    println!("{} after {} steps", tr.status, tr.steps.len());
    Ok(matches!(tr.status, Status::Done(_)))
}

fn cmd_gamma(g: &Global, cmd: &GammaCmd) -> Result<bool> {
    match cmd {
        GammaCmd::Synth { from, to } => {
            let t = parse_wedge(from).with_context(|| format!("bad ∧-term {from:?}"))?;
            let u = parse_wedge(to).with_context(|| format!("bad ∧-term {to:?}"))?;
            let e = synth_project(&t, &u)?;
            println!("{e}");
            let ch = e.chain(&t)?;
            println!("{}", format_chain(&t, &ch));
            let end = ch.last().map_or(&t, |s| &s.1);
            if *end == u {
                println!("VERIFIED");
                Ok(true)
            } else {
                println!("MISMATCH: reached {end}");
                Ok(false)
            }
        }
        GammaCmd::Table => {
            let mut table = Table::new(g.output);
            let mut ok = true;
            for s in gamma_table() {
                let verdict = match s.expr.apply_to(&s.from) {
                    Ok(c) if c == s.to => "verified".to_string(),
                    Ok(c) => {
                        ok = false;
                        format!("reached {c}")
                    }
                    Err(e) => {
                        ok = false;
                        e.to_string()
                    }
                };
                table.row([
                    s.name.to_string(),
                    format!("{} ⇒ {}", s.from, s.to),
                    s.expr.len_prims().to_string(),
                    verdict,
                ]);
            }
            table.print();
            Ok(ok)
        }
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse_formula(text).with_context(|| format!("bad formula {text:?}"))
}

fn cmd_force(cmd: &ForceCmd) -> Result<bool> {
    match cmd {
        ForceCmd::Transform { cond, formula: f } => {
            let p = parse_iterm(cond).with_context(|| format!("bad condition {cond:?}"))?;
            println!("{}", force(&p, &formula(f)?)?);
        }
        ForceCmd::Chi { formula: f } => {
            let (chi, chi2) = synth_chi(&formula(f)?);
            println!("χ  = {chi}");
            println!("χ′ = {chi2}");
        }
        ForceCmd::Delta { formula: f } => {
            let (d, d2) = synth_delta(&formula(f)?)?;
            println!("δ  = {d}");
            println!("δ′ = {d2}");
        }
    }
    Ok(true)
}

fn universe_config(g: &Global) -> UniverseConfig {
    UniverseConfig {
        budget: (g.budget as usize).min(UniverseConfig::default().budget),
        ..UniverseConfig::default()
    }
}

fn cmd_pole(g: &Global, cmd: &PoleCmd) -> Result<bool> {
    println!("seed: {}", g.seed);
    let cfg = universe_config(g);
    match cmd {
        PoleCmd::Falsify {
            term,
            formula: f,
            trials,
        } => {
            let xi = parse_cterm(term).with_context(|| format!("bad term {term:?}"))?;
            let f = formula(f)?;
            let u = Universe::generate(g.seed, &cfg);
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let v = falsify(&xi, &f, &Env::default(), &u, *trials, &mut rng)?;
            println!("{v}");
            if let Verdict::Counterexample { witness, .. } = &v {
                println!(
                    "witness replays outside the pole: {}",
                    replay_counterexample(&u, witness)
                );
            }
            Ok(v.is_clean())
        }
        PoleCmd::Claims { universes, trials } => {
            let tallies = survey(g.seed..g.seed + universes, &cfg, *trials)?;
            let mut table = Table::new(g.output);
            table.row(["claim", "clean", "trials", "censored", "first failure", "status"]);
            for t in &tallies {
                let fail = t
                    .first_failure
                    .as_ref()
                    .map_or("-".to_string(), |(s, w)| format!("seed {s}: {w}"));
                table.row([
                    t.name.to_string(),
                    format!("{}/{}", t.clean, t.universes),
                    t.trials.to_string(),
                    t.censored.to_string(),
                    fail,
                    if t.as_expected() { "ok" } else { "UNEXPECTED" }.to_string(),
                ]);
            }
            table.print();
            Ok(tallies.iter().all(|t| t.as_expected()))
        }
    }
}

fn cmd_balg(g: &Global, cmd: &BalgCmd) -> Result<bool> {
    let budget = g.budget as usize;
    match cmd {
        BalgCmd::Chains => {
            let mut cases = lifted_combinator_cases();
            cases.push(application_case());
            cases.extend((0..=6).map(storage_s_case));
            cases.push(storage_t_case());
            cases.extend((0..=6).map(g_case));
            let mut table = Table::new(g.output);
            let mut ok = true;
            for case in &cases {
                let origin = if case.derived { "derived" } else { "stated" };
                match check_chain(case, budget) {
                    Ok(r) => table.row([
                        case.name.clone(),
                        "pass".into(),
                        format!("{} steps", r.steps),
                        origin.into(),
                        r.condition.to_string(),
                    ]),
                    Err(e) => {
                        ok = false;
                        table.row([case.name.clone(), "FAIL".into(), e.to_string(), origin.into(), "-".into()]);
                    }
                }
            }
            table.print();
            Ok(ok)
        }
        BalgCmd::Translate { term } => {
            let t = parse_cterm(term).with_context(|| format!("bad term {term:?}"))?;
            println!("{}", translate(&t)?);
            Ok(true)
        }
        BalgCmd::J { n } => {
            let expected = translate(&arith::numeral(*n))?.term;
            match run_j(*n, budget) {
                Some(t) if t == expected => {
                    println!("{t}");
                    println!("equal to the translation of {n}");
                    Ok(true)
                }
                Some(t) => {
                    println!("{t}");
                    println!("differs from the translation {expected}");
                    Ok(false)
                }
                None => {
                    println!("j did not return within {budget} steps");
                    Ok(false)
                }
            }
        }
    }
}

fn cmd_arith(g: &Global, cmd: &ArithCmd) -> Result<bool> {
    match cmd {
        ArithCmd::List => {
            let mut table = Table::new(g.output);
            for e in arith::catalog() {
                table.row([e.name, e.summary]);
            }
            table.print();
            Ok(true)
        }
        ArithCmd::Eval { name, args } => {
            let e = arith::arith_entry(name)?;
            let (got, steps) = e.evaluate(args, g.budget as usize)?;
            let want = e.expected(args);
            let show = |o: &Outcome| match o {
                Outcome::Value(n) => format!("value {n}"),
                Outcome::Branch(i) => format!("branch ξ{i}"),
            };
            println!("{} after {steps} steps", show(&got));
            if got == want {
                Ok(true)
            } else {
                println!("expected {}", show(&want));
                Ok(false)
            }
        }
    }
}

fn cmd_corpus(g: &Global, cmd: &CorpusCmd) -> Result<bool> {
    match cmd {
        CorpusCmd::List => {
            let mut table = Table::new(g.output);
            for e in corpus::catalog() {
                let claims = if e.claims.is_empty() {
                    "constructed".to_string()
                } else if e.claims.len() == 1 {
                    "1 claim".to_string()
                } else {
                    format!("{} claims", e.claims.len())
                };
                table.row([e.name, e.topic, &claims]);
            }
            table.print();
            Ok(true)
        }
        CorpusCmd::Show { name } => {
            let e = corpus::entry(name)?;
            println!("name:     {}", e.name);
            println!("topic:    {}", e.topic);
            println!("source:   {}", e.source);
            for (s, t) in &e.slots {
                println!("slot {s} = {t}");
            }
            if !e.params.is_empty() {
                println!("params:   {}", e.params.join(", "));
            }
            println!("compiled: {}", e.compiled);
            for c in &e.claims {
                let origin = match c.origin {
                    Origin::Stated => "stated".to_string(),
                    Origin::Derived(o) => format!("derived: {o}"),
                };
                println!("claim:    {} ({origin})", c.label);
            }
            Ok(true)
        }
        CorpusCmd::Replay { name } => {
            let budget = g.budget as usize;
            let reports = if name == "all" {
                corpus::replay_all(budget)
            } else {
                vec![corpus::replay(name, budget)?]
            };
            let mut table = Table::new(g.output);
            for r in &reports {
                for l in r.lines() {
                    table.row(l.split('\t'));
                }
            }
            table.print();
            let mut ok = true;
            for r in &reports {
                ok &= r.passed();
                if g.trace == TraceMode::None {
                    continue;
                }
                for o in &r.outcomes {
                    if let Err(tail) = &o.result {
                        println!("-- {} / {}", r.name, o.label);
                        for l in tail {
                            println!("   {l}");
                        }
                    }
                }
            }
            Ok(ok)
        }
    }
}

/// Reads a derivation from JSON. Each node is an object with one key:
/// `{"hyp": "x"}`, `{"app": [D, D]}`, `{"lam": ["x", "A", D]}`,
/// `{"gen": ["x", D]}`, `{"genp": ["X", k, D]}`, `{"inst": ["t", D]}`,
/// `{"instp": ["F", ["y"], D]}`, `{"cc": ["A", "B"]}`, `{"claim": ["F", D]}`.
fn derivation(v: &Value) -> Result<Derivation> {
    let obj = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| anyhow!("expected an object with one key, got {v}"))?;
    let (k, a) = obj.iter().next().expect("one key");
    let arr = |n: usize| -> Result<&Vec<Value>> {
        a.as_array()
            .filter(|x| x.len() == n)
            .ok_or_else(|| anyhow!("{k} takes an array of {n} elements"))
    };
    let s = |v: &Value| -> Result<String> {
        v.as_str()
            .map(str::to_string)
            .ok_or_else(|| anyhow!("expected a string in {k}, got {v}"))
    };
    Ok(match k.as_str() {
        "hyp" => Derivation::hyp(&s(a)?),
        "app" => {
            let x = arr(2)?;
            Derivation::app(derivation(&x[0])?, derivation(&x[1])?)
        }
        "lam" => {
            let x = arr(3)?;
            Derivation::lam(&s(&x[0])?, formula(&s(&x[1])?)?, derivation(&x[2])?)
        }
        "gen" => {
            let x = arr(2)?;
            Derivation::gen(&s(&x[0])?, derivation(&x[1])?)
        }
        "genp" => {
            let x = arr(3)?;
            let k = x[1]
                .as_u64()
                .ok_or_else(|| anyhow!("genp arity must be a number"))?;
            Derivation::gen_pred(&s(&x[0])?, k as usize, derivation(&x[2])?)
        }
        "inst" => {
            let x = arr(2)?;
            let t = s(&x[0])?;
            let t = parse_iterm(&t).with_context(|| format!("bad term {t:?}"))?;
            Derivation::inst_ind(t, derivation(&x[1])?)
        }
        "instp" => {
            let x = arr(3)?;
            let params: Vec<String> = x[1]
                .as_array()
                .ok_or_else(|| anyhow!("instp parameters must be an array"))?
                .iter()
                .map(s)
                .collect::<Result<_>>()?;
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            Derivation::inst_pred(formula(&s(&x[0])?)?, &params, derivation(&x[2])?)
        }
        "cc" => {
            let x = arr(2)?;
            Derivation::Peirce {
                a: formula(&s(&x[0])?)?,
                b: formula(&s(&x[1])?)?,
            }
        }
        "claim" => {
            let x = arr(2)?;
            Derivation::claim(formula(&s(&x[0])?)?, derivation(&x[1])?)
        }
        other => bail!("unknown derivation rule {other:?}"),
    })
}

fn cmd_nd(file: &str, hyps: &[String]) -> Result<bool> {
    let text = if file == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?
    };
    let v: Value = serde_json::from_str(&text).context("derivation is not valid JSON")?;
    let d = derivation(&v)?;
    let ctx = hyps
        .iter()
        .map(|h| {
            let (x, f) = h
                .split_once(':')
                .ok_or_else(|| anyhow!("hypothesis {h:?} is not of the form x:FORMULA"))?;
            Ok((name(x.trim()), formula(f)?))
        })
        .collect::<Result<Vec<_>>>()?;
    match nd_check(&ctx, &d) {
        Ok(j) => {
            println!("{j}");
            println!("compiled: {}", j.compiled());
            Ok(true)
        }
        Err(e) => {
            println!("rejected {e}");
            Ok(false)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Compile { source } => {
            let t = parse_lterm(source).with_context(|| format!("bad λ-term {source:?}"))?;
            println!("{}", compile(&t));
            Ok(true)
        }
        Cmd::Run { term, stack } => cmd_run(g, term, stack),
        Cmd::Gamma { cmd } => cmd_gamma(g, cmd),
        Cmd::Force { cmd } => cmd_force(cmd),
        Cmd::Pole { cmd } => cmd_pole(g, cmd),
        Cmd::Balg { cmd } => cmd_balg(g, cmd),
        Cmd::Arith { cmd } => cmd_arith(g, cmd),
        Cmd::Corpus { cmd } => cmd_corpus(g, cmd),
        Cmd::Nd { file, hyps } => cmd_nd(file, hyps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            print_replay_hint();
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            print_replay_hint();
            ExitCode::from(2)
        }
    }
}
