//! Command-line front end.
//!
//! Exit status: 0 when the analysis ran (whatever the verdict), 1 when a
//! self-check failed, 2 on parse or validation errors, 3 when a bound was
//! hit and a definite answer was required.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tmdensity::alphabet::Alphabet;
use tmdensity::compile::compile;
use tmdensity::density::{is_dense_regular, is_dense_tm, Sizes};
use tmdensity::gadgets::{build_halting_dpda, build_unary_gadget};
use tmdensity::nfa::Nfa;
use tmdensity::store::{store_language_of, verify_store_against_oracle};
use tmdensity::text::{parse_file, write, Machine};
use tmdensity::tm::{Limits, Outcome, WorktapeTm};

#[derive(Parser)]
#[command(name = "tmdensity", version, about = "Density of reversal-bounded worktape machines")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Step limit for bounded search.
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    /// Worktape cell limit for bounded search.
    #[arg(long, default_value_t = 1_000)]
    max_cells: usize,
}

impl Bounds {
    fn limits(self) -> Limits {
        Limits::new(self.max_steps, self.max_cells)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Runs a machine on one input word.
    Run {
        file: PathBuf,
        /// Input word; `λ` or omitted for the empty word.
        word: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        json: bool,
    },
    /// Builds the store-language automaton.
    Store {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare against bounded enumeration.
        #[arg(long)]
        verify: bool,
        /// Longest automaton word looked up during verification.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Decides density.
    Density {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compiles an auxiliary-store machine to a worktape machine.
    Compile {
        file: PathBuf,
        #[arg(long, default_value = "worktape-tm")]
        to: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists accepted words up to a length by bounded search.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        json: bool,
    },
    /// Builds a reduction gadget.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Prints a serialized automaton in readable form.
    NfaDump {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ReduceKind {
    /// Halting-problem gadget for a simple deterministic machine.
    Halting {
        file: PathBuf,
        /// Map every input symbol to `a`.
        #[arg(long)]
        unary: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Fail {
    Check(String),
    Invalid(String),
    Bound(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Check(_) => 1,
            Fail::Invalid(_) => 2,
            Fail::Bound(_) => 3,
        }
    }
}

type Res<T> = Result<T, Fail>;

fn invalid(path: &Path, e: impl std::fmt::Display) -> Fail {
    Fail::Invalid(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Res<Machine> {
    parse_file(path).map_err(Fail::Invalid)
}

/// Worktape view of a machine file, compiling auxiliary stores.
fn load_worktape(path: &Path) -> Res<WorktapeTm> {
    match load(path)? {
        Machine::Worktape(m) => Ok(m),
        Machine::Aux(m) => compile(&m).map_err(|e| invalid(path, e)),
        Machine::Dtm(_) => Err(invalid(path, "simple-dtm has no worktape language")),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| invalid(p, e)),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn word_text(a: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "λ".into()
    } else {
        a.concat(w)
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Accepted => "accepted",
        Outcome::RejectedWithinBounds => "rejected",
        Outcome::BoundExceeded => "bound-exceeded",
    }
}

#[derive(Serialize)]
struct RunDoc<'a> {
    outcome: &'a str,
    word: String,
}

fn run(file: &Path, word: Option<String>, bounds: Bounds, json: bool) -> Res<()> {
    let text = word.unwrap_or_default();
    let (outcome, shown) = match load(file)? {
        Machine::Worktape(m) => {
            let w = m.input.parse_word(&text).map_err(|e| invalid(file, e))?;
            (m.accepts_bounded(&w, bounds.limits()), word_text(&m.input, &w))
        }
        Machine::Aux(m) => {
            let w = m.input.parse_word(&text).map_err(|e| invalid(file, e))?;
            let o = m
                .accepts_bounded_aux(&w, bounds.limits())
                .map_err(|e| invalid(file, e))?;
            (o, word_text(&m.input, &w))
        }
        Machine::Dtm(z) => {
            let r = z.run(bounds.max_steps);
            if !r.halted {
                return Err(Fail::Bound(format!(
                    "no halt within {} steps",
                    bounds.max_steps
                )));
            }
            println!("halted after {} moves", r.ids.len() - 1);
            return Ok(());
        }
    };
    if json {
        let doc = RunDoc {
            outcome: outcome_name(outcome),
            word: shown,
        };
        println!("{}", serde_json::to_string(&doc).expect("serializable"));
    } else {
        println!("{}", outcome_name(outcome));
    }
    if outcome == Outcome::BoundExceeded {
        return Err(Fail::Bound("search bounds exceeded".into()));
    }
    Ok(())
}

fn store(file: &Path, out: &Option<PathBuf>, verify: bool, max_len: usize, bounds: Bounds) -> Res<()> {
    let m = load_worktape(file)?;
    let s = store_language_of(&m).map_err(|e| invalid(file, e))?;
    emit(out, &s.to_json())?;
    if verify {
        let report = verify_store_against_oracle(&m, &s, bounds.limits(), max_len);
        for line in report.lines(&m) {
            println!("{line}");
        }
        if !report.sound() {
            return Err(Fail::Check("store automaton misses enumerated words".into()));
        }
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DensityDoc {
    dense: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplified: Option<String>,
    states: usize,
    reversal_bound: Option<usize>,
    sizes: Sizes,
}

fn density(file: &Path, json: bool) -> Res<()> {
    let m = load_worktape(file)?;
    let v = is_dense_tm(&m).map_err(|e| invalid(file, e))?;
    if json {
        let doc = DensityDoc {
            dense: v.dense,
            witness: v.witness.as_ref().map(|w| v.render(w)),
            amplified: v.amplified.as_ref().map(|w| v.render(w)),
            states: m.states.len(),
            reversal_bound: m.reversal_bound,
            sizes: v.sizes.clone(),
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("{}", v.line());
    }
    Ok(())
}

fn compile_cmd(file: &Path, to: &str, out: &Option<PathBuf>) -> Res<()> {
    if to != "worktape-tm" {
        return Err(invalid(file, format!("cannot compile to `{to}`; only worktape-tm")));
    }
    let m = load_worktape(file)?;
    emit(out, &write(&Machine::Worktape(m)))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OracleDoc {
    max_len: usize,
    accepted: Vec<String>,
    bound_exceeded: Vec<String>,
}

fn oracle(file: &Path, max_len: usize, bounds: Bounds, json: bool) -> Res<()> {
    let m = load(file)?;
    let input = match &m {
        Machine::Worktape(t) => t.input.clone(),
        Machine::Aux(a) => a.input.clone(),
        Machine::Dtm(_) => return Err(invalid(file, "simple-dtm reads no input")),
    };
    let mut doc = OracleDoc {
        max_len,
        accepted: Vec::new(),
        bound_exceeded: Vec::new(),
    };
    for w in tmdensity::alphabet::words_up_to(&input, max_len) {
        let o = match &m {
            Machine::Worktape(t) => t.accepts_bounded(&w, bounds.limits()),
            Machine::Aux(a) => a
                .accepts_bounded_aux(&w, bounds.limits())
                .map_err(|e| invalid(file, e))?,
            Machine::Dtm(_) => unreachable!(),
        };
        match o {
            Outcome::Accepted => doc.accepted.push(word_text(&input, &w)),
            Outcome::BoundExceeded => doc.bound_exceeded.push(word_text(&input, &w)),
            Outcome::RejectedWithinBounds => {}
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        for w in &doc.accepted {
            println!("accepted {w}");
        }
        for w in &doc.bound_exceeded {
            println!("bound-exceeded {w}");
        }
        println!(
            "accepted {} of the words up to length {max_len}, {} undecided",
            doc.accepted.len(),
            doc.bound_exceeded.len()
        );
    }
    Ok(())
}

fn reduce(kind: ReduceKind) -> Res<()> {
    let ReduceKind::Halting { file, unary, out } = kind;
    let z = match load(&file)? {
        Machine::Dtm(z) => z,
        other => {
            return Err(invalid(
                &file,
                format!("expected a simple-dtm, found {}", other.model()),
            ))
        }
    };
    let g = if unary {
        build_unary_gadget(&z)
    } else {
        build_halting_dpda(&z)
    }
    .map_err(|e| invalid(&file, e))?;
    emit(&out, &write(&Machine::Aux(g)))
}

fn nfa_dump(file: &Path, json: bool) -> Res<()> {
    let text = std::fs::read_to_string(file).map_err(|e| invalid(file, e))?;
    let a = Nfa::from_json(&text).map_err(|e| invalid(file, e))?;
    if json {
        println!("{}", a.to_json());
        return Ok(());
    }
    let doc = a.to_doc();
    println!("alphabet {}", doc.alphabet.join(" "));
    println!("states {}", doc.states);
    println!("initial {}", join_ids(&doc.initials));
    println!("final {}", join_ids(&doc.finals));
    for (p, l, q) in &doc.edges {
        let l = if l.is_empty() { "ε" } else { l.as_str() };
        println!("{p} -{l}-> {q}");
    }
    let u = a.is_universal();
    match &u.witness {
        None => println!("universal"),
        Some(w) => println!("not universal, witness={}", word_text(a.alphabet(), w)),
    }
    let v = is_dense_regular(&a);
    match &v.witness {
        None => println!("dense"),
        Some(w) => println!("not dense, witness={}", word_text(a.alphabet(), w)),
    }
    Ok(())
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Run { file, word, bounds, json } => run(&file, word, bounds, json),
        Cmd::Store { file, out, verify, max_len, bounds } => store(&file, &out, verify, max_len, bounds),
        Cmd::Density { file, json } => density(&file, json),
        Cmd::Compile { file, to, out } => compile_cmd(&file, &to, &out),
        Cmd::Oracle { file, max_len, bounds, json } => oracle(&file, max_len, bounds, json),
        Cmd::Reduce { kind } => reduce(kind),
        Cmd::NfaDump { file, json } => nfa_dump(&file, json),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Fail::Check(m) | Fail::Invalid(m) | Fail::Bound(m) => m,
            };
            eprintln!("tmdensity: {msg}");
            ExitCode::from(f.code())
        }
    }
}
