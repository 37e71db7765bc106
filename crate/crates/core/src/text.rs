//! Line-oriented machine descriptions.
//!
//! ```text
//! # a^n b^n with one reversal
//! model worktape-tm
//! reversals 1
//! input a b
//! tape X
//! states q0 qa qb qf
//! initial q0
//! final qf
//! t q0 a _ X R qa
//! ```
//!
//! Header keys: `model` (`worktape-tm`, `pda`, `queue`, `stack`,
//! `flip-pda`, `multi-stack`, `simple-dtm`), `reversals`, `flips`, `stacks`,
//! `deterministic yes|no`, `realtime yes|no`, `input`, `tape`, `stack`,
//! `queue`, `states`, `initial`, `final`, `halting`. `_` is the blank, `-`
//! is λ and a line whose first character is `#` is a comment (`#` on its
//! own is an ordinary symbol elsewhere).
//!
//! Rule lines by model:
//!
//! - worktape-tm: `t <from> <input|-> <read> <write> <L|S|R> <to>`
//! - pda, flip-pda: `t <from> <input|-> <pop|-> <push|-> <to>`; flip-pda
//!   also `flip <from> [<input|->] <to>`
//! - queue: `t <from> <input|-> <dequeue|-> <enqueue|-> <to>`
//! - stack: `t <from> <input|-> <read|_> <push:X|pop|read-left|read-right|stay> <to>`
//! - multi-stack: `t <from> <input|-> <pop1> <push1> ... <popN> <pushN> <to>`
//! - simple-dtm: `t <from> <read> <write> <L|R> <to>`
//!
//! Pushed words are written top-first, queue words in enqueue order; a word
//! is one symbol per character or comma-separated.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::alphabet::{Alphabet, Sym};
use crate::aux::{AuxMachine, Op, StackMove, Variant};
use crate::error::{Error, Result};
use crate::gadgets::SimpleDtm;
use crate::tm::{Move, WorktapeTm};
use crate::BLANK;

#[derive(Clone, Debug)]
pub enum Machine {
    Worktape(WorktapeTm),
    Aux(AuxMachine),
    Dtm(SimpleDtm),
}

impl Machine {
    pub fn model(&self) -> &'static str {
        match self {
            Machine::Worktape(_) => "worktape-tm",
            Machine::Aux(m) => m.variant.name(),
            Machine::Dtm(_) => "simple-dtm",
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Attaches a line number to errors raised while building a rule.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => perr(line, other.to_string()),
    })
}

struct Header {
    fields: HashMap<String, (usize, Vec<String>)>,
}

impl Header {
    fn list(&self, key: &str) -> Vec<String> {
        self.fields.get(key).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    fn line(&self, key: &str) -> usize {
        self.fields.get(key).map_or(0, |(l, _)| *l)
    }

    fn one(&self, key: &str) -> Result<String> {
        match self.fields.get(key) {
            Some((_, v)) if v.len() == 1 => Ok(v[0].clone()),
            Some((l, _)) => Err(perr(*l, format!("`{key}` takes exactly one value"))),
            None => Err(perr(0, format!("missing `{key}` line"))),
        }
    }

    fn number(&self, key: &str) -> Result<Option<usize>> {
        match self.fields.get(key) {
            None => Ok(None),
            Some((l, _)) => {
                let v = self.one(key)?;
                v.parse()
                    .map(Some)
                    .map_err(|_| perr(*l, format!("`{key}` expects a number, got `{v}`")))
            }
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.fields.get(key) {
            None => Ok(false),
            Some((l, _)) => match self.one(key)?.as_str() {
                "yes" | "true" => Ok(true),
                "no" | "false" => Ok(false),
                v => Err(perr(*l, format!("`{key}` expects yes or no, got `{v}`"))),
            },
        }
    }
}

const HEADER_KEYS: &[&str] = &[
    "model",
    "reversals",
    "flips",
    "stacks",
    "deterministic",
    "realtime",
    "input",
    "tape",
    "stack",
    "queue",
    "states",
    "initial",
    "final",
    "halting",
];

pub fn parse(text: &str) -> Result<Machine> {
    let mut header = Header {
        fields: HashMap::new(),
    };
    let mut rules: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace().map(str::to_string);
        let key = tokens.next().unwrap();
        let rest: Vec<String> = tokens.collect();
        if key == "t" || key == "flip" {
            let mut all = vec![key];
            all.extend(rest);
            rules.push((line, all));
        } else if HEADER_KEYS.contains(&key.as_str()) {
            if header.fields.insert(key.clone(), (line, rest)).is_some() {
                return Err(perr(line, format!("duplicate `{key}` line")));
            }
        } else {
            return Err(perr(line, format!("unknown directive `{key}`")));
        }
    }
    let model = header.one("model")?;
    let states = header.list("states");
    if states.is_empty() {
        return Err(perr(header.line("states"), "no states declared"));
    }
    let initial = header.one("initial")?;
    let input = at(header.line("input"), Alphabet::user(header.list("input")))?;
    match model.as_str() {
        "worktape-tm" => parse_worktape(&header, states, input, &initial, &rules).map(Machine::Worktape),
        "simple-dtm" => parse_dtm(&header, states, &initial, &rules).map(Machine::Dtm),
        other => match Variant::parse(other) {
            Some(v) => parse_aux(&header, v, states, input, &initial, &rules).map(Machine::Aux),
            None => Err(perr(header.line("model"), format!("unknown model `{other}`"))),
        },
    }
}

fn symbols_without_blank(list: Vec<String>) -> Vec<String> {
    list.into_iter().filter(|s| s != BLANK).collect()
}

fn lambda(tok: &str) -> Option<&str> {
    (tok != "-").then_some(tok)
}

fn parse_worktape(
    h: &Header,
    states: Vec<String>,
    input: Alphabet,
    initial: &str,
    rules: &[(usize, Vec<String>)],
) -> Result<WorktapeTm> {
    let tape = at(h.line("tape"), Alphabet::new(symbols_without_blank(h.list("tape"))))?;
    let finals = h.list("final");
    let finals: Vec<&str> = finals.iter().map(String::as_str).collect();
    let mut m = at(h.line("states"), WorktapeTm::new(states, input, tape, initial, &finals))?;
    m.reversal_bound = h.number("reversals")?;
    for (line, t) in rules {
        if t.len() != 7 || t[0] != "t" {
            return Err(perr(*line, "expected `t <from> <input|-> <read> <write> <L|S|R> <to>`"));
        }
        let mv = Move::parse(&t[5]).ok_or_else(|| perr(*line, format!("bad move `{}`", t[5])))?;
        at(*line, m.add_rule(&t[1], lambda(&t[2]), &t[3], &t[4], mv, &t[6]))?;
    }
    Ok(m)
}

fn parse_dtm(h: &Header, states: Vec<String>, initial: &str, rules: &[(usize, Vec<String>)]) -> Result<SimpleDtm> {
    let tape = at(h.line("tape"), Alphabet::new(symbols_without_blank(h.list("tape"))))?;
    let halting = h.list("halting");
    let halting: Vec<&str> = halting.iter().map(String::as_str).collect();
    let mut m = at(h.line("states"), SimpleDtm::new(states, tape, initial, &halting))?;
    for (line, t) in rules {
        if t.len() != 6 || t[0] != "t" {
            return Err(perr(*line, "expected `t <from> <read> <write> <L|R> <to>`"));
        }
        let mv = Move::parse(&t[4]).ok_or_else(|| perr(*line, format!("bad move `{}`", t[4])))?;
        at(*line, m.add_rule(&t[1], &t[2], &t[3], mv, &t[5]))?;
    }
    Ok(m)
}

fn parse_aux(
    h: &Header,
    variant: Variant,
    states: Vec<String>,
    input: Alphabet,
    initial: &str,
    rules: &[(usize, Vec<String>)],
) -> Result<AuxMachine> {
    let store_key = if variant == Variant::Queue { "queue" } else { "stack" };
    let store = at(h.line(store_key), Alphabet::new(h.list(store_key)))?;
    let finals = h.list("final");
    let finals: Vec<&str> = finals.iter().map(String::as_str).collect();
    let mut m = at(h.line("states"), AuxMachine::new(variant, states, input, store, initial, &finals))?;
    m.reversal_bound = h.number("reversals")?;
    m.flip_bound = h.number("flips")?.unwrap_or(0);
    m.stacks = h.number("stacks")?.unwrap_or(1);
    m.deterministic = h.flag("deterministic")?;
    m.realtime = h.flag("realtime")?;
    if m.stacks == 0 {
        return Err(perr(h.line("stacks"), "at least one stack is required"));
    }
    let sym = |m: &AuxMachine, line: usize, tok: &str| -> Result<Option<Sym>> {
        lambda(tok).map(|s| at(line, m.store.sym(s))).transpose()
    };
    for (line, t) in rules {
        let line = *line;
        if t[0] == "flip" {
            let (from, inp, to) = match t.len() {
                3 => (&t[1], None, &t[2]),
                4 => (&t[1], lambda(&t[2]), &t[3]),
                _ => return Err(perr(line, "expected `flip <from> [<input|->] <to>`")),
            };
            at(line, m.add_rule(from, inp, Op::Flip, to))?;
            continue;
        }
        let n = t.len();
        let op = match variant {
            Variant::Pda | Variant::FlipPda if n == 6 => {
                Op::Stacks(vec![(sym(&m, line, &t[3])?, at(line, m.store_word(&t[4]))?)])
            }
            Variant::MultiStack if n == 4 + 2 * m.stacks => {
                let mut groups = Vec::new();
                for i in 0..m.stacks {
                    let pop = sym(&m, line, &t[3 + 2 * i])?;
                    let push = at(line, m.store_word(&t[4 + 2 * i]))?;
                    groups.push((pop, push));
                }
                Op::Stacks(groups)
            }
            Variant::Queue if n == 6 => Op::Queue {
                dequeue: sym(&m, line, &t[3])?,
                enqueue: at(line, m.store_word(&t[4]))?,
            },
            Variant::Stack if n == 6 => {
                let read = if t[3] == BLANK {
                    None
                } else {
                    Some(at(line, m.store.sym(&t[3]))?)
                };
                let mv = match t[4].as_str() {
                    "pop" => StackMove::Pop,
                    "read-left" => StackMove::ReadLeft,
                    "read-right" => StackMove::ReadRight,
                    "stay" => StackMove::Stay,
                    other => match other.strip_prefix("push:") {
                        Some(x) => StackMove::Push(at(line, m.store.sym(x))?),
                        None => return Err(perr(line, format!("bad stack move `{other}`"))),
                    },
                };
                Op::Cursor { read, mv }
            }
            _ => return Err(perr(line, format!("wrong number of fields for a {variant} rule"))),
        };
        at(line, m.add_rule(&t[1], lambda(&t[2]), op, &t[n - 1]))?;
    }
    Ok(m)
}

/// Reads and parses a machine file. Errors name the file.
pub fn parse_file(path: &Path) -> std::result::Result<Machine, String> {
    let name = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| format!("{name}: {e}"))?;
    parse(&text).map_err(|e| format!("{name}: {e}"))
}

fn join(items: &[String]) -> String {
    items.join(" ")
}

fn state_list(names: &[String], ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter().map(|i| names[i].clone()).collect::<Vec<_>>().join(" ")
}

fn word_text(a: &Alphabet, w: &[Sym]) -> String {
    if w.is_empty() {
        "-".to_string()
    } else if w.iter().all(|&s| a.name(s).chars().count() == 1) {
        a.concat(w)
    } else {
        w.iter().map(|&s| a.name(s)).collect::<Vec<_>>().join(",")
    }
}

pub fn write_worktape(m: &WorktapeTm) -> String {
    let mut out = String::from("model worktape-tm\n");
    if let Some(k) = m.reversal_bound {
        let _ = writeln!(out, "reversals {k}");
    }
    let _ = writeln!(out, "input {}", join(m.input.symbols()));
    let _ = writeln!(out, "tape {}", join(m.tape.symbols()));
    let _ = writeln!(out, "states {}", join(&m.states));
    let _ = writeln!(out, "initial {}", m.states[m.initial]);
    let _ = writeln!(out, "final {}", state_list(&m.states, m.finals.iter().copied()));
    for r in &m.rules {
        let _ = writeln!(
            out,
            "t {} {} {} {} {} {}",
            m.states[r.from],
            r.input.map_or("-", |a| m.input.name(a)),
            m.tape.name(r.read),
            m.tape.name(r.write),
            r.mv.as_str(),
            m.states[r.to]
        );
    }
    out
}

pub fn write_aux(m: &AuxMachine) -> String {
    let mut out = format!("model {}\n", m.variant);
    if let Some(k) = m.reversal_bound {
        let _ = writeln!(out, "reversals {k}");
    }
    if m.variant == Variant::FlipPda {
        let _ = writeln!(out, "flips {}", m.flip_bound);
    }
    if m.variant == Variant::MultiStack {
        let _ = writeln!(out, "stacks {}", m.stacks);
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    if m.deterministic {
        let _ = writeln!(out, "deterministic {}", yn(m.deterministic));
    }
    if m.realtime {
        let _ = writeln!(out, "realtime {}", yn(m.realtime));
    }
    let _ = writeln!(out, "input {}", join(m.input.symbols()));
    let key = if m.variant == Variant::Queue { "queue" } else { "stack" };
    let _ = writeln!(out, "{key} {}", join(m.store.symbols()));
    let _ = writeln!(out, "states {}", join(&m.states));
    let _ = writeln!(out, "initial {}", m.states[m.initial]);
    let _ = writeln!(out, "final {}", state_list(&m.states, m.finals.iter().copied()));
    let opt = |s: Option<Sym>, blank: &'static str| s.map_or(blank.to_string(), |s| m.store.name(s).to_string());
    for r in &m.rules {
        let from = &m.states[r.from];
        let to = &m.states[r.to];
        let inp = r.input.map_or("-", |a| m.input.name(a));
        let line = match &r.op {
            Op::Flip => format!("flip {from} {inp} {to}"),
            Op::Stacks(groups) => {
                let fields: Vec<String> = groups
                    .iter()
                    .map(|(pop, push)| format!("{} {}", opt(*pop, "-"), word_text(&m.store, push)))
                    .collect();
                format!("t {from} {inp} {} {to}", fields.join(" "))
            }
            Op::Queue { dequeue, enqueue } => format!(
                "t {from} {inp} {} {} {to}",
                opt(*dequeue, "-"),
                word_text(&m.store, enqueue)
            ),
            Op::Cursor { read, mv } => {
                let mv = match mv {
                    StackMove::Push(x) => format!("push:{}", m.store.name(*x)),
                    StackMove::Pop => "pop".into(),
                    StackMove::ReadLeft => "read-left".into(),
                    StackMove::ReadRight => "read-right".into(),
                    StackMove::Stay => "stay".into(),
                };
                format!("t {from} {inp} {} {mv} {to}", opt(*read, "_"))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_dtm(m: &SimpleDtm) -> String {
    let mut out = String::from("model simple-dtm\n");
    let _ = writeln!(out, "tape {}", join(m.tape.symbols()));
    let _ = writeln!(out, "states {}", join(&m.states));
    let _ = writeln!(out, "initial {}", m.states[m.initial]);
    let _ = writeln!(out, "halting {}", state_list(&m.states, m.halting.iter().copied()));
    for r in &m.rules {
        let _ = writeln!(
            out,
            "t {} {} {} {} {}",
            m.states[r.from],
            m.tape.name(r.read),
            m.tape.name(r.write),
            r.mv.as_str(),
            m.states[r.to]
        );
    }
    out
}

pub fn write(m: &Machine) -> String {
    match m {
        Machine::Worktape(m) => write_worktape(m),
        Machine::Aux(m) => write_aux(m),
        Machine::Dtm(m) => write_dtm(m),
    }
}
