//! Translations of the auxiliary storage models into worktape machines.
//!
//! Every compiler emits the worktape reversal bound it guarantees:
//!
//! | source            | layout on the worktape                         | bound       |
//! |-------------------|------------------------------------------------|-------------|
//! | pda (r)           | `⊥` then the stack, head on the top cell       | r           |
//! | stack (r)         | as pda, top cell marked, head on the cursor    | r           |
//! | queue (r)         | front to back, head at back or front by mode   | r + 1       |
//! | flip-pda (r, k)   | as pda, growing right or left by orientation   | r + 4k      |
//!
//! In the queue encoding only a switch from enqueueing to dequeueing moves
//! the head backwards (one left sweep, then right again), and the first
//! such switch may happen before any right move. In the flip encoding each
//! flip walks one cell outward, sweeps to the far end and steps back, so
//! it can add at most four direction changes.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Sym};
use crate::aux::{AuxMachine, Op, StackMove, Variant};
use crate::error::{Error, Result};
use crate::tm::{Move, WorktapeTm};
use crate::BLANK;

const BOTTOM: &str = "⊥";

struct Builder {
    states: Vec<String>,
    index: HashMap<String, usize>,
    rules: Vec<(String, Option<String>, String, String, Move, String)>,
    fresh: usize,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            states: Vec::new(),
            index: HashMap::new(),
            rules: Vec::new(),
            fresh: 0,
        }
    }

    fn state(&mut self, name: &str) -> String {
        if !self.index.contains_key(name) {
            self.index.insert(name.to_string(), self.states.len());
            self.states.push(name.to_string());
        }
        name.to_string()
    }

    fn fresh(&mut self, base: &str) -> String {
        self.fresh += 1;
        let name = format!("{base}~{}", self.fresh);
        self.state(&name)
    }

    fn rule(&mut self, from: &str, input: Option<&str>, read: &str, write: &str, mv: Move, to: &str) {
        self.state(from);
        self.state(to);
        self.rules.push((
            from.to_string(),
            input.map(str::to_string),
            read.to_string(),
            write.to_string(),
            mv,
            to.to_string(),
        ));
    }

    fn finish(
        self,
        input: &Alphabet,
        tape: Vec<String>,
        initial: &str,
        finals: &[String],
        bound: usize,
    ) -> Result<WorktapeTm> {
        let finals: Vec<&str> = finals
            .iter()
            .filter(|f| self.index.contains_key(f.as_str()))
            .map(String::as_str)
            .collect();
        let mut m = WorktapeTm::new(
            self.states.clone(),
            input.clone(),
            Alphabet::new(tape)?,
            initial,
            &finals,
        )?
        .with_reversal_bound(bound);
        for (from, input, read, write, mv, to) in &self.rules {
            m.add_rule(from, input.as_deref(), read, write, *mv, to)?;
        }
        Ok(m)
    }
}

/// Emits rules that, entered from `entry` with the first rule carrying
/// `input`, consume one rule of the source machine.
struct Chain<'a> {
    b: &'a mut Builder,
    entry: String,
    input: Option<String>,
}

impl Chain<'_> {
    fn emit(&mut self, from: &str, read: &str, write: &str, mv: Move, to: &str) {
        let input = if from == self.entry {
            self.input.clone()
        } else {
            None
        };
        self.b.rule(from, input.as_deref(), read, write, mv, to);
    }
}

fn names(a: &Alphabet, syms: &[Sym]) -> Vec<String> {
    syms.iter().map(|&s| a.name(s).to_string()).collect()
}

fn bound_of(m: &AuxMachine) -> Result<usize> {
    m.reversal_bound.ok_or(Error::MissingReversalBound)
}

fn expect(m: &AuxMachine, variants: &[Variant]) -> Result<()> {
    if variants.contains(&m.variant) {
        Ok(())
    } else {
        Err(Error::InvalidMachine(format!(
            "cannot compile a {} machine with this compiler",
            m.variant
        )))
    }
}

fn init_state(m: &AuxMachine) -> String {
    let mut name = "init".to_string();
    while m.states.contains(&name) {
        name.push('\'');
    }
    name
}

/// Orientation of the pushdown on the tape: growing to the right or left.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}

impl Side {
    fn after(flips: usize) -> Side {
        if flips % 2 == 0 {
            Side::Right
        } else {
            Side::Left
        }
    }

    fn out(self) -> Move {
        match self {
            Side::Right => Move::R,
            Side::Left => Move::L,
        }
    }

    fn back(self) -> Move {
        match self {
            Side::Right => Move::L,
            Side::Left => Move::R,
        }
    }
}

/// Control state `q` after `flips` flips.
fn flipped(q: &str, flips: usize) -> String {
    if flips == 0 {
        q.to_string()
    } else {
        format!("{q}|{flips}")
    }
}

/// Pop `pop` (if any) and push `push` (top-first) with the stack growing
/// towards `side`, ending in `to`.
fn stack_chain(
    c: &mut Chain<'_>,
    tape: &[String],
    side: Side,
    pop: Option<&str>,
    push: &[String],
    to: &str,
) {
    let from = c.entry.clone();
    let reads: Vec<String> = match pop {
        Some(x) => vec![x.to_string()],
        None => tape.iter().filter(|t| *t != BLANK).cloned().collect(),
    };
    // symbols written bottom to top
    let order: Vec<String> = push.iter().rev().cloned().collect();
    match (pop, order.is_empty()) {
        (Some(x), true) => c.emit(&from, x, BLANK, side.back(), to),
        (None, true) => {
            for t in &reads {
                c.emit(&from, t, t, Move::S, to);
            }
        }
        (Some(x), false) => {
            let mut cur = from.clone();
            let mut read = x.to_string();
            for (i, w) in order.iter().enumerate() {
                let last = i + 1 == order.len();
                let next = if last { to.to_string() } else { c.b.fresh(&from) };
                c.emit(&cur, &read, w, if last { Move::S } else { side.out() }, &next);
                cur = next;
                read = BLANK.to_string();
            }
        }
        (None, false) => {
            let step = c.b.fresh(&from);
            for t in &reads {
                c.emit(&from, t, t, side.out(), &step);
            }
            let mut cur = step;
            for (i, w) in order.iter().enumerate() {
                let last = i + 1 == order.len();
                let next = if last { to.to_string() } else { c.b.fresh(&from) };
                c.emit(&cur, BLANK, w, if last { Move::S } else { side.out() }, &next);
                cur = next;
            }
        }
    }
}

/// Pushdown automaton: the stack sits right of a bottom marker with the
/// head on its top cell; pushes move right, pops erase and move left.
pub fn compile_pda(m: &AuxMachine) -> Result<WorktapeTm> {
    expect(m, &[Variant::Pda])?;
    compile_pushdown(m, bound_of(m)?)
}

/// Flip-pushdown automaton: the pushdown encoding of [`compile_pda`], with
/// the number of flips so far (and with it the growth direction) kept in
/// the control. A flip writes a new bottom
/// marker just past the top, sweeps back to the old marker, erases it and
/// steps onto the new top.
pub fn compile_flip(m: &AuxMachine) -> Result<WorktapeTm> {
    expect(m, &[Variant::FlipPda])?;
    compile_pushdown(m, bound_of(m)? + 4 * m.flip_bound)
}

fn compile_pushdown(m: &AuxMachine, bound: usize) -> Result<WorktapeTm> {
    let mut tape = vec![BLANK.to_string(), BOTTOM.to_string()];
    tape.extend(m.store.symbols().iter().cloned());
    let max_flips = if m.variant == Variant::FlipPda {
        m.flip_bound
    } else {
        0
    };
    let mut b = Builder::new();
    let init = init_state(m);
    b.state(&init);
    b.rule(&init, None, BLANK, BOTTOM, Move::S, &m.states[m.initial]);
    for f in 0..=max_flips {
        let side = Side::after(f);
        for r in &m.rules {
            let from = flipped(&m.states[r.from], f);
            let input = r.input.map(|a| m.input.name(a).to_string());
            let mut c = Chain {
                b: &mut b,
                entry: from.clone(),
                input,
            };
            match &r.op {
                Op::Stacks(groups) => {
                    let (pop, push) = &groups[0];
                    let pop = pop.map(|p| m.store.name(p));
                    let to = flipped(&m.states[r.to], f);
                    stack_chain(&mut c, &tape, side, pop, &names(&m.store, push), &to);
                }
                Op::Flip if f < max_flips => {
                    let to = flipped(&m.states[r.to], f + 1);
                    let mark = c.b.fresh(&from);
                    let sweep = c.b.fresh(&from);
                    for t in tape.iter().filter(|t| *t != BLANK) {
                        c.emit(&from, t, t, side.out(), &mark);
                    }
                    c.emit(&mark, BLANK, BOTTOM, side.back(), &sweep);
                    for t in m.store.symbols() {
                        c.emit(&sweep, t, t, side.back(), &sweep);
                    }
                    c.emit(&sweep, BOTTOM, BLANK, side.out(), &to);
                }
                Op::Flip => {}
                _ => unreachable!("checked when the rule was added"),
            }
        }
    }
    let finals: Vec<String> = (0..=max_flips)
        .flat_map(|f| m.finals.iter().map(move |&q| flipped(&m.states[q], f)))
        .collect();
    b.finish(&m.input, tape, &init, &finals, bound)
}

/// Queue automaton: the queue occupies a contiguous block, front at the
/// left. While enqueueing the head waits on the blank after the back; while
/// dequeueing it sits on the front cell. Dequeued cells are erased.
pub fn compile_queue(m: &AuxMachine) -> Result<WorktapeTm> {
    expect(m, &[Variant::Queue])?;
    let bound = bound_of(m)? + 1;
    let mut tape = vec![BLANK.to_string()];
    tape.extend(m.store.symbols().iter().cloned());
    let store = m.store.symbols().to_vec();
    let name = |q: usize, deq: bool| {
        if deq {
            format!("{}|deq", m.states[q])
        } else {
            m.states[q].clone()
        }
    };
    let mut b = Builder::new();
    b.state(&m.states[m.initial]);
    for r in &m.rules {
        let Op::Queue { dequeue, enqueue } = &r.op else {
            unreachable!("checked when the rule was added")
        };
        for deq_mode in [false, true] {
            let entry = name(r.from, deq_mode);
            let input = r.input.map(|a| m.input.name(a).to_string());
            let mut c = Chain {
                b: &mut b,
                entry: entry.clone(),
                input,
            };
            let mut cur = entry.clone();
            let mut mode = deq_mode;
            if let Some(x) = dequeue {
                if !mode {
                    let sweep = c.b.fresh(&entry);
                    let front = c.b.fresh(&entry);
                    c.emit(&cur, BLANK, BLANK, Move::L, &sweep);
                    for y in &store {
                        c.emit(&sweep, y, y, Move::L, &sweep);
                    }
                    c.emit(&sweep, BLANK, BLANK, Move::R, &front);
                    cur = front;
                    mode = true;
                }
                let next = if enqueue.is_empty() {
                    name(r.to, true)
                } else {
                    c.b.fresh(&entry)
                };
                c.emit(&cur, m.store.name(*x), BLANK, Move::R, &next);
                cur = next;
            }
            if enqueue.is_empty() {
                if dequeue.is_none() {
                    for t in &tape {
                        c.emit(&cur, t, t, Move::S, &name(r.to, mode));
                    }
                }
                continue;
            }
            let mut at_back = vec![cur.clone()];
            if mode {
                let sweep = c.b.fresh(&entry);
                for y in &store {
                    c.emit(&cur, y, y, Move::R, &sweep);
                    c.emit(&sweep, y, y, Move::R, &sweep);
                }
                at_back.push(sweep);
            }
            let word = names(&m.store, enqueue);
            for (i, w) in word.iter().enumerate() {
                let next = if i + 1 == word.len() {
                    name(r.to, false)
                } else {
                    c.b.fresh(&entry)
                };
                for s in &at_back {
                    c.emit(s, BLANK, w, Move::R, &next);
                }
                at_back = vec![next];
            }
        }
    }
    let finals: Vec<String> = m
        .finals
        .iter()
        .flat_map(|&f| [name(f, false), name(f, true)])
        .collect();
    b.finish(&m.input, tape, &m.states[m.initial], &finals, bound)
}

fn marked(s: &str) -> String {
    format!("{s}'")
}

/// Stack automaton: the pushdown layout of [`compile_pda`] with the top
/// cell (or the bottom marker of an empty stack) in a marked variant, so
/// the head can leave the top and still recognise it.
pub fn compile_stack(m: &AuxMachine) -> Result<WorktapeTm> {
    expect(m, &[Variant::Stack])?;
    let bound = bound_of(m)?;
    let mut cells = vec![BOTTOM.to_string()];
    cells.extend(m.store.symbols().iter().cloned());
    let mut tape = vec![BLANK.to_string()];
    for s in &cells {
        tape.push(s.clone());
        tape.push(marked(s));
    }
    let mut b = Builder::new();
    let init = init_state(m);
    b.state(&init);
    b.rule(&init, None, BLANK, &marked(BOTTOM), Move::S, &m.states[m.initial]);
    for r in &m.rules {
        let Op::Cursor { read, mv } = &r.op else {
            unreachable!("checked when the rule was added")
        };
        let from = m.states[r.from].clone();
        let to = m.states[r.to].clone();
        let plain = read.map_or(BOTTOM.to_string(), |s| m.store.name(s).to_string());
        let top = marked(&plain);
        let mut c = Chain {
            b: &mut b,
            entry: from.clone(),
            input: r.input.map(|a| m.input.name(a).to_string()),
        };
        match mv {
            StackMove::Push(y) => {
                let t1 = c.b.fresh(&from);
                c.emit(&from, &top, &plain, Move::R, &t1);
                c.emit(&t1, BLANK, &marked(m.store.name(*y)), Move::S, &to);
            }
            StackMove::Pop if read.is_some() => {
                let t1 = c.b.fresh(&from);
                c.emit(&from, &top, BLANK, Move::L, &t1);
                for z in &cells {
                    c.emit(&t1, z, &marked(z), Move::S, &to);
                }
            }
            StackMove::ReadLeft if read.is_some() => {
                c.emit(&from, &plain, &plain, Move::L, &to);
                c.emit(&from, &top, &top, Move::L, &to);
            }
            StackMove::ReadRight => c.emit(&from, &plain, &plain, Move::R, &to),
            StackMove::Stay => {
                c.emit(&from, &plain, &plain, Move::S, &to);
                c.emit(&from, &top, &top, Move::S, &to);
            }
            _ => {}
        }
    }
    let finals: Vec<String> = m.finals.iter().map(|&f| m.states[f].clone()).collect();
    b.finish(&m.input, tape, &init, &finals, bound)
}

/// Dispatches on the machine model.
pub fn compile(m: &AuxMachine) -> Result<WorktapeTm> {
    match m.variant {
        Variant::Pda => compile_pda(m),
        Variant::Queue => compile_queue(m),
        Variant::Stack => compile_stack(m),
        Variant::FlipPda => compile_flip(m),
        Variant::MultiStack => Err(Error::InvalidMachine(
            "multi-stack machines have no worktape compilation".into(),
        )),
    }
}
