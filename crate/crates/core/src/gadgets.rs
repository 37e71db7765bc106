//! Reduction gadgets: two-stack deterministic pushdown automata that check
//! halting computations of a simple DTM, the unary nondeterministic
//! variant, and right-marked concatenation.
//!
//! # Computation format
//!
//! A configuration (ID) of the machine is written `[ u q v`: an opening
//! bracket, the cells left of the head, the state, then the scanned cell
//! and the cells to its right. All IDs of one encoding share the same
//! cells, namely every cell the run ever visits, so consecutive IDs have
//! equal length. The blank is written `□` since `_` is reserved in input
//! alphabets. A halting computation `ID_1 ⊢ … ⊢ ID_2k` is encoded as
//!
//! ```text
//! ID_1 # ID_3 # … # ID_2k-1 $ ID_2k^R # … # ID_4^R # ID_2^R
//! ```
//!
//! The machine is first padded (see [`pad_parity`]) so that every halting
//! computation has an even number of at least four IDs.
//!
//! # Checking
//!
//! Both stacks push the odd IDs before `$` (stack 2 skips `ID_1`) and pop
//! them after it, so each makes one reversal. Stack 1 pairs `ID_2j-1` with
//! the block `ID_2j^R`; stack 2 pairs the block `ID_2j^R` with `ID_2j+1`,
//! starting at the second block. A pair is compared position by position
//! on the reversed words: away from the head both agree, and around it a
//! window of two or three positions must match one rule. The bracket of the
//! first ID pushed on each stack is stored as `⟦` so that the control knows
//! when a stack has been emptied. A failed check leaves no applicable rule,
//! so the run stops there; that blocked configuration plays the role of
//! the rejecting state.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Alphabet, Sym, Word};
use crate::aux::{AuxMachine, AuxRule, Op, Variant};
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::tm::Move;
use crate::BLANK;

/// Input name of the blank inside encodings.
pub const BLANK_CELL: &str = "□";
pub const OPEN: &str = "[";
pub const BOTTOM_OPEN: &str = "⟦";
pub const SEP: &str = "#";
pub const MID: &str = "$";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DtmRule {
    pub from: usize,
    pub read: Sym,
    pub write: Sym,
    pub mv: Move,
    pub to: usize,
}

/// Deterministic single-tape machine started on a blank tape. It halts
/// when it enters a halting state; it is stuck when no rule applies.
#[derive(Clone, Debug)]
pub struct SimpleDtm {
    pub states: Vec<String>,
    pub tape: Alphabet,
    pub rules: Vec<DtmRule>,
    pub initial: usize,
    pub halting: BTreeSet<usize>,
}

impl SimpleDtm {
    pub fn new(states: Vec<String>, tape: Alphabet, initial: &str, halting: &[&str]) -> Result<SimpleDtm> {
        let tape = if tape.contains(BLANK) {
            tape
        } else {
            Alphabet::new([BLANK])?.union(&tape)
        };
        let find = |n: &str| {
            states
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{n}`")))
        };
        let initial = find(initial)?;
        let halting = halting.iter().map(|h| find(h)).collect::<Result<_>>()?;
        Ok(SimpleDtm {
            states,
            tape,
            rules: Vec::new(),
            initial,
            halting,
        })
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{name}`")))
    }

    pub fn add_rule(&mut self, from: &str, read: &str, write: &str, mv: Move, to: &str) -> Result<()> {
        if mv == Move::S {
            return Err(Error::InvalidMachine("simple DTM rules move L or R".into()));
        }
        let rule = DtmRule {
            from: self.state(from)?,
            read: self.tape.sym(read)?,
            write: self.tape.sym(write)?,
            mv,
            to: self.state(to)?,
        };
        if self.halting.contains(&rule.from) {
            return Err(Error::InvalidMachine(format!("halting state `{from}` has a rule")));
        }
        if self.rule_for(rule.from, rule.read).is_some() {
            return Err(Error::Nondeterministic(from.to_string()));
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn rule_for(&self, state: usize, read: Sym) -> Option<&DtmRule> {
        self.rules.iter().find(|r| r.from == state && r.read == read)
    }
}

/// One configuration: state, visited cells, head index into them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtmId {
    pub state: usize,
    pub cells: Vec<Sym>,
    pub head: usize,
}

/// IDs of a run on the blank tape over the cells it visits.
#[derive(Clone, Debug)]
pub struct DtmRun {
    pub ids: Vec<DtmId>,
    pub halted: bool,
}

impl SimpleDtm {
    pub fn is_halting(&self, s: usize) -> bool {
        self.halting.contains(&s)
    }

    pub fn blank(&self) -> Sym {
        self.tape.get(BLANK).expect("tape alphabet holds the blank")
    }

    /// Runs at most `max_steps` moves. The run halts when it enters a
    /// halting state and stops early when no rule applies.
    pub fn run(&self, max_steps: usize) -> DtmRun {
        let blank = self.blank();
        let mut tape: HashMap<i64, Sym> = HashMap::new();
        let (mut state, mut pos) = (self.initial, 0i64);
        let mut trace = vec![(state, pos, tape.clone())];
        let (mut lo, mut hi) = (0i64, 0i64);
        let mut halted = self.is_halting(state);
        while !halted && trace.len() <= max_steps {
            let read = *tape.get(&pos).unwrap_or(&blank);
            let Some(r) = self.rule_for(state, read) else { break };
            tape.insert(pos, r.write);
            pos += if r.mv == Move::R { 1 } else { -1 };
            state = r.to;
            lo = lo.min(pos);
            hi = hi.max(pos);
            trace.push((state, pos, tape.clone()));
            halted = self.is_halting(state);
        }
        let ids = trace
            .into_iter()
            .map(|(state, pos, tape)| DtmId {
                state,
                cells: (lo..=hi).map(|i| *tape.get(&i).unwrap_or(&blank)).collect(),
                head: (pos - lo) as usize,
            })
            .collect();
        DtmRun { ids, halted }
    }
}

/// Padding class: moves made so far, saturated as 0, 1, 2, odd ≥ 3, even ≥ 4.
fn next_class(c: usize) -> usize {
    match c {
        0 => 1,
        1 => 2,
        2 | 4 => 3,
        _ => 4,
    }
}

/// Extra moves needed on halting so that the ID count is even and ≥ 4.
fn extra_moves(c: usize) -> usize {
    [3, 2, 1, 0, 1][c]
}

/// Equivalent machine whose halting computations have an even number of
/// IDs, at least four. States become `q.c` with `c` the padding class;
/// on halting with the wrong class it makes extra moves (right, left,
/// right, …, rewriting the scanned symbol) through states `q.c+j`.
pub fn pad_parity(z: &SimpleDtm) -> SimpleDtm {
    let name = |q: usize, c: usize| format!("{}.{}", z.states[q], c);
    let mut states: Vec<String> = Vec::new();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::from([(z.initial, 0)]);
    ids.insert((z.initial, 0), 0);
    states.push(name(z.initial, 0));
    let mut rules = Vec::new();
    let mut halting = BTreeSet::new();
    let intern = |states: &mut Vec<String>, n: String| {
        states.push(n);
        states.len() - 1
    };
    while let Some((q, c)) = queue.pop_front() {
        let from = ids[&(q, c)];
        if z.is_halting(q) {
            let x = extra_moves(c);
            let mut cur = from;
            for j in 1..=x {
                let next = intern(&mut states, format!("{}+{}", name(q, c), j));
                for s in 0..z.tape.len() {
                    let mv = if j % 2 == 1 { Move::R } else { Move::L };
                    rules.push(DtmRule { from: cur, read: s, write: s, mv, to: next });
                }
                cur = next;
            }
            halting.insert(cur);
            continue;
        }
        for r in z.rules.iter().filter(|r| r.from == q) {
            let key = (r.to, next_class(c));
            let to = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = intern(&mut states, name(key.0, key.1));
                    ids.insert(key, id);
                    queue.push_back(key);
                    id
                }
            };
            rules.push(DtmRule { from, read: r.read, write: r.write, mv: r.mv, to });
        }
    }
    SimpleDtm {
        states,
        tape: z.tape.clone(),
        rules,
        initial: 0,
        halting,
    }
}

/// Names of the symbols that may occur inside an ID.
fn cell_names(z: &SimpleDtm) -> Vec<String> {
    let mut names = vec![OPEN.to_string()];
    names.extend(z.tape.symbols().iter().map(|t| if t == BLANK { BLANK_CELL.to_string() } else { t.clone() }));
    names.extend(z.states.iter().cloned());
    names
}

fn gadget_alphabets(z: &SimpleDtm) -> Result<(Alphabet, Alphabet)> {
    let cells = cell_names(z);
    let clash = |e: Error| Error::InvalidMachine(format!("gadget symbols clash: {e}"));
    let mut input = cells.clone();
    input.extend([SEP.to_string(), MID.to_string()]);
    let mut store = cells;
    store.push(BOTTOM_OPEN.to_string());
    Ok((Alphabet::user(input).map_err(clash)?, Alphabet::new(store).map_err(clash)?))
}

/// Token list of one ID, optionally reversed.
fn id_tokens(z: &SimpleDtm, id: &DtmId, reversed: bool) -> Vec<String> {
    let cell = |s: Sym| {
        let n = z.tape.name(s);
        if n == BLANK { BLANK_CELL.to_string() } else { n.to_string() }
    };
    let mut out = vec![OPEN.to_string()];
    out.extend(id.cells[..id.head].iter().map(|&s| cell(s)));
    out.push(z.states[id.state].clone());
    out.extend(id.cells[id.head..].iter().map(|&s| cell(s)));
    if reversed {
        out.reverse();
    }
    out
}

/// Encoding of the halting computation of the padded machine, when it
/// halts within `max_steps` moves.
pub fn halting_encoding(z: &SimpleDtm, max_steps: usize) -> Option<Vec<String>> {
    let p = pad_parity(z);
    let run = p.run(max_steps);
    if !run.halted {
        return None;
    }
    let ids = &run.ids;
    let k = ids.len() / 2;
    let mut out = Vec::new();
    for j in 0..k {
        if j > 0 {
            out.push(SEP.to_string());
        }
        out.extend(id_tokens(&p, &ids[2 * j], false));
    }
    out.push(MID.to_string());
    for j in (0..k).rev() {
        out.extend(id_tokens(&p, &ids[2 * j + 1], true));
        if j > 0 {
            out.push(SEP.to_string());
        }
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Cell {
    Open,
    Tape(Sym),
    State(usize),
}

/// Position-by-position successor check on reversed IDs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Chk {
    /// Before the head window; the previous pair of tape cells, and
    /// whether they differed.
    Pre(Option<(Sym, Sym, bool)>),
    RWait(Sym, usize),
    LWait(usize, Sym),
    Done,
    Ended,
}

fn feed(z: &SimpleDtm, chk: Chk, old: Cell, new: Cell) -> Option<Chk> {
    use Cell::*;
    match (chk, old, new) {
        (Chk::Pre(last), Tape(o), Tape(n)) => {
            if last.is_some_and(|(_, _, differ)| differ) {
                return None;
            }
            Some(Chk::Pre(Some((o, n, o != n))))
        }
        (Chk::Pre(last), Tape(c), State(p)) if !last.is_some_and(|l| l.2) => Some(Chk::RWait(c, p)),
        (Chk::Pre(Some((c, d, _))), State(q), Tape(e)) => {
            let r = z.rule_for(q, c)?;
            (r.mv == Move::L && r.write == d).then_some(Chk::LWait(r.to, e))
        }
        (Chk::RWait(c, p), State(q), Tape(d)) => {
            let r = z.rule_for(q, c)?;
            (r.mv == Move::R && r.to == p && r.write == d).then_some(Chk::Done)
        }
        (Chk::LWait(p, e), Tape(o), State(n)) if o == e && n == p => Some(Chk::Done),
        (Chk::Done, Tape(o), Tape(n)) if o == n => Some(Chk::Done),
        (Chk::Done, Open, Open) => Some(Chk::Ended),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum PreFmt {
    Open,
    Left,
    State,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum PostFmt {
    Begin,
    Tape,
    AfterState,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Ctl {
    /// `idx`: 0 while reading `ID_1`, 1 for `ID_3`, 2 afterwards.
    Pre { idx: u8, fmt: PreFmt },
    Post {
        first: bool,
        fmt: PostFmt,
        c1: Chk,
        c2: Option<Chk>,
        b1: bool,
        b2: bool,
        /// stack 2 received at least one ID
        s2: bool,
    },
}

impl Ctl {
    fn accepting(&self) -> bool {
        match *self {
            Ctl::Post { fmt, c1, c2, b1, b2, s2, first } => {
                fmt == PostFmt::Closed
                    && c1 == Chk::Ended
                    && b1
                    && match c2 {
                        None => first && !s2,
                        Some(c) => c == Chk::Ended && b2,
                    }
            }
            Ctl::Pre { .. } => false,
        }
    }
}

enum Tok {
    Cell(Cell),
    Sep,
    Mid,
}

struct Builder<'a> {
    z: &'a SimpleDtm,
    input: Alphabet,
    store: Alphabet,
    open: Sym,
    bottom: Sym,
}

impl Builder<'_> {
    fn tok(&self, a: Sym) -> Tok {
        let name = self.input.name(a);
        match name {
            SEP => Tok::Sep,
            MID => Tok::Mid,
            _ => Tok::Cell(self.cell_of(self.store.sym(name).unwrap())),
        }
    }

    fn cell_of(&self, s: Sym) -> Cell {
        let n = self.z.tape.len();
        if s == self.open || s == self.bottom {
            Cell::Open
        } else if s <= n {
            Cell::Tape(s - 1)
        } else {
            Cell::State(s - 1 - n)
        }
    }

    fn store_of(&self, c: Cell) -> Sym {
        match c {
            Cell::Open => self.open,
            Cell::Tape(t) => 1 + t,
            Cell::State(q) => 1 + self.z.tape.len() + q,
        }
    }

    /// Successors of `ctl` on input `a`: stack operations and next control.
    fn step(&self, ctl: Ctl, a: Sym) -> Vec<(Vec<(Option<Sym>, Word)>, Ctl)> {
        let z = self.z;
        let tok = self.tok(a);
        let keep = || (None, Vec::new());
        match ctl {
            Ctl::Pre { idx, fmt } => {
                let next = match (&tok, fmt) {
                    (Tok::Cell(Cell::Open), PreFmt::Open) => PreFmt::Left,
                    (Tok::Cell(Cell::Tape(t)), PreFmt::Left | PreFmt::State | PreFmt::Right) => {
                        if idx == 0 && *t != z.blank() {
                            return vec![];
                        }
                        if fmt == PreFmt::Left { PreFmt::Left } else { PreFmt::Right }
                    }
                    (Tok::Cell(Cell::State(q)), PreFmt::Left) => {
                        if idx == 0 && *q != z.initial {
                            return vec![];
                        }
                        PreFmt::State
                    }
                    (Tok::Sep, PreFmt::Right) => {
                        return vec![(vec![keep(), keep()], Ctl::Pre { idx: (idx + 1).min(2), fmt: PreFmt::Open })];
                    }
                    (Tok::Mid, PreFmt::Right) => {
                        return vec![(
                            vec![keep(), keep()],
                            Ctl::Post {
                                first: true,
                                fmt: PostFmt::Begin,
                                c1: Chk::Pre(None),
                                c2: None,
                                b1: false,
                                b2: false,
                                s2: idx >= 1,
                            },
                        )];
                    }
                    _ => return vec![],
                };
                let Tok::Cell(c) = tok else { unreachable!() };
                let sym = self.store_of(c);
                let first_open = |i: u8| if c == Cell::Open && idx == i { self.bottom } else { sym };
                let push1 = (None, vec![first_open(0)]);
                let push2 = if idx >= 1 { (None, vec![first_open(1)]) } else { keep() };
                vec![(vec![push1, push2], Ctl::Pre { idx, fmt: next })]
            }
            Ctl::Post { first, fmt, c1, c2, b1, b2, s2 } => {
                let cell = match tok {
                    Tok::Mid => return vec![],
                    Tok::Sep => {
                        let ok = fmt == PostFmt::Closed
                            && c1 == Chk::Ended
                            && !b1
                            && c2.map_or(true, |c| c == Chk::Ended && !b2);
                        if !ok {
                            return vec![];
                        }
                        return vec![(
                            vec![keep(), keep()],
                            Ctl::Post {
                                first: false,
                                fmt: PostFmt::Begin,
                                c1: Chk::Pre(None),
                                c2: Some(Chk::Pre(None)),
                                b1: false,
                                b2: false,
                                s2,
                            },
                        )];
                    }
                    Tok::Cell(c) => c,
                };
                let fmt = match (cell, fmt) {
                    (Cell::Tape(_), PostFmt::Begin | PostFmt::Tape) => PostFmt::Tape,
                    (Cell::Tape(_), PostFmt::AfterState) => PostFmt::AfterState,
                    (Cell::State(q), PostFmt::Tape) if !first || z.is_halting(q) => PostFmt::AfterState,
                    (Cell::Open, PostFmt::AfterState) => PostFmt::Closed,
                    _ => return vec![],
                };
                let mut out = Vec::new();
                for p1 in 0..self.store.len() {
                    let o1 = self.cell_of(p1);
                    let Some(n1) = feed(z, c1, o1, cell) else { continue };
                    let nb1 = b1 || p1 == self.bottom;
                    let op1 = (Some(p1), Vec::new());
                    match c2 {
                        None => out.push((
                            vec![op1, keep()],
                            Ctl::Post { first, fmt, c1: n1, c2, b1: nb1, b2, s2 },
                        )),
                        Some(c2) => {
                            for p2 in 0..self.store.len() {
                                let Some(n2) = feed(z, c2, cell, self.cell_of(p2)) else { continue };
                                out.push((
                                    vec![op1.clone(), (Some(p2), Vec::new())],
                                    Ctl::Post {
                                        first,
                                        fmt,
                                        c1: n1,
                                        c2: Some(n2),
                                        b1: nb1,
                                        b2: b2 || p2 == self.bottom,
                                        s2,
                                    },
                                ));
                            }
                        }
                    }
                }
                out
            }
        }
    }
}

/// Real-time deterministic two-stack automaton, each stack one-reversal,
/// accepting exactly the encoding of the halting computation of `z` (after
/// [`pad_parity`]); see the module docs for the format.
pub fn build_halting_dpda(z: &SimpleDtm) -> Result<AuxMachine> {
    let p = pad_parity(z);
    let (input, store) = gadget_alphabets(&p)?;
    let b = Builder {
        z: &p,
        open: store.sym(OPEN)?,
        bottom: store.sym(BOTTOM_OPEN)?,
        input: input.clone(),
        store: store.clone(),
    };
    let init = Ctl::Pre { idx: 0, fmt: PreFmt::Open };
    let mut ids: HashMap<Ctl, usize> = HashMap::from([(init, 0)]);
    let mut ctls = vec![init];
    let mut rules = Vec::new();
    let mut i = 0;
    while i < ctls.len() {
        for a in 0..input.len() {
            for (ops, next) in b.step(ctls[i], a) {
                let to = *ids.entry(next).or_insert_with(|| {
                    ctls.push(next);
                    ctls.len() - 1
                });
                rules.push(AuxRule { from: i, input: Some(a), op: Op::Stacks(ops), to });
            }
        }
        i += 1;
    }
    let names: Vec<String> = (0..ctls.len())
        .map(|i| if ctls[i].accepting() { format!("h{i}") } else { format!("s{i}") })
        .collect();
    let finals: Vec<&str> = (0..ctls.len()).filter(|&i| ctls[i].accepting()).map(|i| names[i].as_str()).collect();
    let mut m = AuxMachine::new(Variant::MultiStack, names.clone(), input, store, &names[0], &finals)?
        .with_reversal_bound(1);
    m.stacks = 2;
    m.deterministic = true;
    m.realtime = true;
    m.rules = rules;
    Ok(m)
}

/// Unary real-time two-stack automaton: simulates `m` reading `a` for
/// every move while guessing `m`'s input, and once `m` accepts keeps
/// accepting every longer unary word.
pub fn build_unary_npda(m: &AuxMachine) -> Result<AuxMachine> {
    let mut states = m.states.clone();
    let acc = "acc".to_string();
    if states.contains(&acc) {
        return Err(Error::InvalidMachine("state name `acc` is taken".into()));
    }
    states.push(acc.clone());
    let finals: Vec<&str> = m
        .finals
        .iter()
        .map(|&f| m.states[f].as_str())
        .chain([acc.as_str()])
        .collect();
    let mut u = AuxMachine::new(
        Variant::MultiStack,
        states.clone(),
        Alphabet::user(["a"])?,
        m.store.clone(),
        &m.states[m.initial],
        &finals,
    )?;
    u.reversal_bound = m.reversal_bound;
    u.stacks = m.stacks;
    u.realtime = true;
    let mut seen = std::collections::HashSet::new();
    for r in &m.rules {
        let r = AuxRule { input: Some(0), ..r.clone() };
        if seen.insert(r.clone()) {
            u.rules.push(r);
        }
    }
    let idle = Op::Stacks(vec![(None, Vec::new()); m.stacks]);
    let acc_id = states.len() - 1;
    for &f in &m.finals {
        u.rules.push(AuxRule { from: f, input: Some(0), op: idle.clone(), to: acc_id });
    }
    u.rules.push(AuxRule { from: acc_id, input: Some(0), op: idle, to: acc_id });
    Ok(u)
}

/// Halting gadget of `z` in its unary form.
pub fn build_unary_gadget(z: &SimpleDtm) -> Result<AuxMachine> {
    build_unary_npda(&build_halting_dpda(z)?)
}

/// `L(a) · marker · (Σ ∪ {marker})*`: dense iff `L(a)` is nonempty.
pub fn marked_concat_universe(a: &Nfa, marker: &str) -> Result<Nfa> {
    if a.alphabet().contains(marker) {
        return Err(Error::DuplicateSymbol(marker.to_string()));
    }
    let sigma = a.alphabet().union(&Alphabet::new([marker])?);
    let m = sigma.sym(marker)?;
    let left = a.embed(&sigma)?;
    let mark = Nfa::from_words(sigma.clone(), &[vec![m]]);
    left.concat(&mark)?.concat(&Nfa::universe(sigma))
}

/// Every string in the computation format of length at most `max_len`
/// over the padded machine's symbols: an even number of IDs, each of any
/// width, with odd IDs forward before `$` and even IDs reversed after it.
/// Successor, initial and halting conditions are not imposed.
pub fn well_formed_strings(z: &SimpleDtm, max_len: usize) -> Vec<Vec<String>> {
    let p = pad_parity(z);
    let cells: Vec<String> = cell_names(&p)[1..=p.tape.len()].to_vec();
    // all IDs by length
    let mut ids: Vec<Vec<Vec<String>>> = vec![Vec::new(); max_len + 1];
    let mut tapes: Vec<Vec<String>> = vec![Vec::new()];
    for w in 1..=max_len.saturating_sub(2) {
        tapes = tapes
            .iter()
            .flat_map(|t| cells.iter().map(move |c| [t.clone(), vec![c.clone()]].concat()))
            .collect();
        for t in &tapes {
            for q in &p.states {
                for head in 0..w {
                    let mut id = vec![OPEN.to_string()];
                    id.extend(t[..head].iter().cloned());
                    id.push(q.clone());
                    id.extend(t[head..].iter().cloned());
                    ids[w + 2].push(id);
                }
            }
        }
    }
    let mut out = Vec::new();
    // sequences of IDs, tracked with their positions
    fn extend(
        ids: &[Vec<Vec<String>>],
        chosen: &mut Vec<Vec<String>>,
        used: usize,
        max_len: usize,
        out: &mut Vec<Vec<String>>,
    ) {
        let n = chosen.len();
        if n >= 2 && n % 2 == 0 {
            let k = n / 2;
            let mut s = Vec::new();
            for j in 0..k {
                if j > 0 {
                    s.push(SEP.to_string());
                }
                s.extend(chosen[2 * j].iter().cloned());
            }
            s.push(MID.to_string());
            for j in (0..k).rev() {
                s.extend(chosen[2 * j + 1].iter().rev().cloned());
                if j > 0 {
                    s.push(SEP.to_string());
                }
            }
            out.push(s);
        }
        for len in 3..ids.len() {
            if used + len + 1 > max_len + usize::from(n == 0) {
                break;
            }
            for id in &ids[len] {
                chosen.push(id.clone());
                extend(ids, chosen, used + len + usize::from(n > 0), max_len, out);
                chosen.pop();
            }
        }
    }
    extend(&ids, &mut Vec::new(), 0, max_len, &mut out);
    out
}

/// Halts after two moves: right, then left.
pub fn z_halt2() -> SimpleDtm {
    let mut z = SimpleDtm::new(
        vec!["a".into(), "b".into(), "h".into()],
        Alphabet::new([BLANK]).unwrap(),
        "a",
        &["h"],
    )
    .unwrap();
    z.add_rule("a", BLANK, BLANK, Move::R, "b").unwrap();
    z.add_rule("b", BLANK, BLANK, Move::L, "h").unwrap();
    z
}

/// Moves right forever.
pub fn z_loop() -> SimpleDtm {
    let mut z = SimpleDtm::new(
        vec!["l".into(), "h".into()],
        Alphabet::new([BLANK]).unwrap(),
        "l",
        &["h"],
    )
    .unwrap();
    z.add_rule("l", BLANK, BLANK, Move::R, "l").unwrap();
    z
}
