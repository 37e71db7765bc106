//! Auxiliary storage models: reversal-bounded pushdown, queue, stack and
//! flip-pushdown automata, and deterministic multi-stack pushdown automata.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::tm::{Limits, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Pda,
    Queue,
    Stack,
    FlipPda,
    MultiStack,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Pda => "pda",
            Variant::Queue => "queue",
            Variant::Stack => "stack",
            Variant::FlipPda => "flip-pda",
            Variant::MultiStack => "multi-stack",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        [
            Variant::Pda,
            Variant::Queue,
            Variant::Stack,
            Variant::FlipPda,
            Variant::MultiStack,
        ]
        .into_iter()
        .find(|v| v.name() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cursor moves of a stack automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StackMove {
    Push(Sym),
    Pop,
    ReadLeft,
    ReadRight,
    Stay,
}

/// Store operation of a rule. Pushed words are written top-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// Pop `pop` (or inspect nothing) and push `push`; one entry per stack.
    Stacks(Vec<(Option<Sym>, Word)>),
    /// Dequeue `dequeue` (or nothing), then enqueue `enqueue` in order.
    Queue { dequeue: Option<Sym>, enqueue: Word },
    /// Read the symbol under the cursor (`None` at the bottom) and move.
    Cursor { read: Option<Sym>, mv: StackMove },
    /// Reverse the pushdown.
    Flip,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AuxRule {
    pub from: usize,
    pub input: Option<Sym>,
    pub op: Op,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct AuxMachine {
    pub variant: Variant,
    pub states: Vec<String>,
    pub input: Alphabet,
    pub store: Alphabet,
    pub rules: Vec<AuxRule>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    /// Bound on reversals of each store.
    pub reversal_bound: Option<usize>,
    pub flip_bound: usize,
    pub stacks: usize,
    pub deterministic: bool,
    pub realtime: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Up,
    Down,
}

/// Configuration of an auxiliary machine. Stacks keep their top at the end
/// of the vector; a queue keeps its front at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AuxConfig {
    pub state: usize,
    pub pos: usize,
    pub stores: Vec<Word>,
    /// Stack automaton cursor: number of symbols at or below it (0 = bottom).
    pub cursor: usize,
    pub flips: usize,
    pub reversals: Vec<usize>,
    pub last: Vec<Option<Dir>>,
}

impl AuxMachine {
    pub fn new(
        variant: Variant,
        states: Vec<String>,
        input: Alphabet,
        store: Alphabet,
        initial: &str,
        finals: &[&str],
    ) -> Result<AuxMachine> {
        let mut seen = HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        let find = |n: &str| {
            states
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{n}`")))
        };
        let initial = find(initial)?;
        let finals = finals.iter().map(|f| find(f)).collect::<Result<_>>()?;
        Ok(AuxMachine {
            variant,
            states,
            input,
            store,
            rules: Vec::new(),
            initial,
            finals,
            reversal_bound: None,
            flip_bound: 0,
            stacks: 1,
            deterministic: false,
            realtime: false,
        })
    }

    pub fn with_reversal_bound(mut self, r: usize) -> Self {
        self.reversal_bound = Some(r);
        self
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{name}`")))
    }

    /// Parses a store word written top-first (or in enqueue order): comma
    /// separated, space separated, or one character per symbol; `-` is λ.
    pub fn store_word(&self, text: &str) -> Result<Word> {
        if text == "-" {
            return Ok(Vec::new());
        }
        if text.contains(',') {
            return text.split(',').map(|t| self.store.sym(t.trim())).collect();
        }
        self.store.parse_word(text)
    }

    pub fn add_rule(&mut self, from: &str, input: Option<&str>, op: Op, to: &str) -> Result<()> {
        let rule = AuxRule {
            from: self.state(from)?,
            input: input.map(|a| self.input.sym(a)).transpose()?,
            op,
            to: self.state(to)?,
        };
        self.check_rule(&rule)?;
        self.rules.push(rule);
        Ok(())
    }

    fn check_rule(&self, r: &AuxRule) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidMachine(msg.to_string()));
        if self.realtime && r.input.is_none() {
            return bad("real-time machine has a λ-input rule");
        }
        match (&r.op, self.variant) {
            (Op::Stacks(groups), Variant::Pda | Variant::FlipPda) if groups.len() == 1 => Ok(()),
            (Op::Stacks(groups), Variant::MultiStack) if groups.len() == self.stacks => Ok(()),
            (Op::Queue { .. }, Variant::Queue) => Ok(()),
            (Op::Cursor { .. }, Variant::Stack) => Ok(()),
            (Op::Flip, Variant::FlipPda) => Ok(()),
            _ => bad("rule form does not match the machine model"),
        }
    }

    pub fn initial_config(&self) -> AuxConfig {
        let n = if self.variant == Variant::MultiStack {
            self.stacks
        } else {
            1
        };
        AuxConfig {
            state: self.initial,
            pos: 0,
            stores: vec![Vec::new(); n],
            cursor: 0,
            flips: 0,
            reversals: vec![0; n],
            last: vec![None; n],
        }
    }

    /// Successors of `c` on input `word`. Configurations exceeding the
    /// reversal or flip bound are dropped. For deterministic machines more
    /// than one applicable rule is an error.
    pub fn step_aux(&self, word: &[Sym], c: &AuxConfig) -> Result<Vec<AuxConfig>> {
        if c.state >= self.states.len()
            || c.pos > word.len()
            || c.stores.iter().flatten().any(|&s| s >= self.store.len())
            || (self.variant == Variant::Stack && c.cursor > c.stores[0].len())
        {
            return Err(Error::MalformedConfiguration(
                "reference to an undeclared state, symbol or position".into(),
            ));
        }
        let next = word.get(c.pos).copied();
        let mut out = Vec::new();
        let mut applicable = 0;
        for r in self.rules.iter().filter(|r| r.from == c.state) {
            let pos = match r.input {
                None => c.pos,
                Some(a) if Some(a) == next => c.pos + 1,
                Some(_) => continue,
            };
            let Some(mut succ) = self.apply_op(c, &r.op) else {
                continue;
            };
            applicable += 1;
            succ.state = r.to;
            succ.pos = pos;
            let within = self.reversal_bound.map_or(true, |b| succ.reversals.iter().all(|&n| n <= b))
                && succ.flips <= self.flip_bound;
            if within && !out.contains(&succ) {
                out.push(succ);
            }
        }
        if self.deterministic && applicable > 1 {
            return Err(Error::Nondeterministic(self.states[c.state].clone()));
        }
        Ok(out)
    }

    fn apply_op(&self, c: &AuxConfig, op: &Op) -> Option<AuxConfig> {
        let mut n = c.clone();
        match op {
            Op::Stacks(groups) => {
                for (i, (pop, push)) in groups.iter().enumerate() {
                    let st = &mut n.stores[i];
                    if let Some(p) = pop {
                        if st.last() != Some(p) {
                            return None;
                        }
                        st.pop();
                    }
                    st.extend(push.iter().rev());
                    let delta = push.len() as isize - isize::from(pop.is_some());
                    let dir = match delta.signum() {
                        1 => Some(Dir::Up),
                        -1 => Some(Dir::Down),
                        _ => None,
                    };
                    record(&mut n, i, dir);
                }
            }
            Op::Queue { dequeue, enqueue } => {
                let q = &mut n.stores[0];
                if let Some(d) = dequeue {
                    if q.first() != Some(d) {
                        return None;
                    }
                    q.remove(0);
                }
                q.extend_from_slice(enqueue);
                if dequeue.is_some() {
                    record(&mut n, 0, Some(Dir::Down));
                }
                if !enqueue.is_empty() {
                    record(&mut n, 0, Some(Dir::Up));
                }
            }
            Op::Cursor { read, mv } => {
                let st = &mut n.stores[0];
                let under = if n.cursor == 0 {
                    None
                } else {
                    Some(st[n.cursor - 1])
                };
                if under != *read {
                    return None;
                }
                let top = n.cursor == st.len();
                let dir = match mv {
                    StackMove::Push(x) if top => {
                        st.push(*x);
                        n.cursor += 1;
                        Some(Dir::Up)
                    }
                    StackMove::Pop if top && n.cursor > 0 => {
                        st.pop();
                        n.cursor -= 1;
                        Some(Dir::Down)
                    }
                    StackMove::ReadLeft if n.cursor > 0 => {
                        n.cursor -= 1;
                        Some(Dir::Down)
                    }
                    StackMove::ReadRight if !top => {
                        n.cursor += 1;
                        Some(Dir::Up)
                    }
                    StackMove::Stay => None,
                    _ => return None,
                };
                record(&mut n, 0, dir);
            }
            Op::Flip => {
                n.stores[0].reverse();
                n.flips += 1;
            }
        }
        Some(n)
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals.contains(&s)
    }

    /// Breadth-first acceptance by final state with the input consumed.
    /// `max_cells` bounds the total store size.
    pub fn accepts_bounded_aux(&self, word: &[Sym], limits: Limits) -> Result<Outcome> {
        let start = self.initial_config();
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut layer = vec![start];
        let mut truncated = false;
        let mut depth = 0;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for c in &layer {
                if c.pos == word.len() && self.is_final(c.state) {
                    return Ok(Outcome::Accepted);
                }
                for s in self.step_aux(word, c)? {
                    if seen.contains(&s) {
                        continue;
                    }
                    let cells: usize = s.stores.iter().map(Vec::len).sum();
                    if depth >= limits.max_steps || cells > limits.max_cells {
                        truncated = true;
                        continue;
                    }
                    seen.insert(s.clone());
                    next.push(s);
                }
            }
            layer = next;
            depth += 1;
        }
        Ok(if truncated {
            Outcome::BoundExceeded
        } else {
            Outcome::RejectedWithinBounds
        })
    }

    /// Runs a deterministic machine on `word`, returning the configuration
    /// sequence (which ends when no rule applies or after `max_steps`).
    pub fn run_deterministic(&self, word: &[Sym], max_steps: usize) -> Result<Vec<AuxConfig>> {
        let mut trace = vec![self.initial_config()];
        for _ in 0..max_steps {
            let cur = trace.last().unwrap();
            let succ = self.step_aux(word, cur)?;
            match succ.len() {
                0 => break,
                1 => trace.push(succ.into_iter().next().unwrap()),
                _ => return Err(Error::Nondeterministic(self.states[cur.state].clone())),
            }
        }
        Ok(trace)
    }

    pub fn render_store(&self, w: &[Sym]) -> String {
        self.store.concat(w)
    }
}

fn record(c: &mut AuxConfig, i: usize, dir: Option<Dir>) {
    let Some(d) = dir else { return };
    if let Some(prev) = c.last[i] {
        if prev != d {
            c.reversals[i] += 1;
        }
    }
    c.last[i] = Some(d);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pda_pop_on_empty_stack_has_no_successor() {
        let mut m = AuxMachine::new(
            Variant::Pda,
            vec!["p".into()],
            Alphabet::user(["a"]).unwrap(),
            Alphabet::new(["X"]).unwrap(),
            "p",
            &[],
        )
        .unwrap();
        m.add_rule("p", None, Op::Stacks(vec![(Some(0), vec![])]), "p").unwrap();
        assert!(m.step_aux(&[], &m.initial_config()).unwrap().is_empty());
    }

    #[test]
    fn queue_is_fifo() {
        let m = fixtures::queue_ab();
        let mut c = m.initial_config();
        c.stores[0] = m.store_word("AB").unwrap();
        let mut m2 = m.clone();
        m2.rules.clear();
        let a = m.store.sym("A").unwrap();
        m2.add_rule("q0", None, Op::Queue { dequeue: Some(a), enqueue: vec![] }, "q0")
            .unwrap();
        let succ = m2.step_aux(&[], &c).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(m.render_store(&succ[0].stores[0]), "B");
    }

    #[test]
    fn flip_reverses_and_counts() {
        let mut m = AuxMachine::new(
            Variant::FlipPda,
            vec!["p".into(), "r".into()],
            Alphabet::user(["a"]).unwrap(),
            Alphabet::new(["X", "Y", "Z"]).unwrap(),
            "p",
            &[],
        )
        .unwrap();
        m.flip_bound = 1;
        m.add_rule("p", None, Op::Flip, "r").unwrap();
        let mut c = m.initial_config();
        // top-first "XYZ" is stored bottom-to-top
        c.stores[0] = m.store_word("XYZ").unwrap().into_iter().rev().collect();
        let succ = m.step_aux(&[], &c).unwrap();
        assert_eq!(succ.len(), 1);
        let top_first: Word = succ[0].stores[0].iter().rev().copied().collect();
        assert_eq!(m.render_store(&top_first), "ZYX");
        assert_eq!(succ[0].flips, 1);
    }

    #[test]
    fn reversal_bound_is_enforced() {
        let m = fixtures::pda_anbn();
        let a = m.input.sym("a").unwrap();
        let b = m.input.sym("b").unwrap();
        let lim = Limits::new(100, 100);
        assert_eq!(m.accepts_bounded_aux(&[a, a, b, b], lim).unwrap(), Outcome::Accepted);
        assert_eq!(m.accepts_bounded_aux(&[a, b, a, b], lim).unwrap(), Outcome::RejectedWithinBounds);
    }

    #[test]
    fn determinism_violation_is_reported() {
        let mut m = AuxMachine::new(
            Variant::MultiStack,
            vec!["p".into()],
            Alphabet::user(["a"]).unwrap(),
            Alphabet::new(["X"]).unwrap(),
            "p",
            &[],
        )
        .unwrap();
        m.stacks = 2;
        m.deterministic = true;
        let x = vec![(None, vec![0]), (None, vec![])];
        let y = vec![(None, vec![]), (None, vec![0])];
        m.add_rule("p", Some("a"), Op::Stacks(x), "p").unwrap();
        m.add_rule("p", Some("a"), Op::Stacks(y), "p").unwrap();
        let err = m.step_aux(&[0], &m.initial_config()).unwrap_err();
        assert!(matches!(err, Error::Nondeterministic(_)));
    }

    #[test]
    fn stack_automaton_reads_inside() {
        let m = fixtures::stack_anbncn();
        let lim = Limits::new(200, 100);
        for (w, ok) in [("abc", true), ("aabbcc", true), ("aabbc", false), ("abcc", false)] {
            let w = m.input.parse_word(w).unwrap();
            let got = m.accepts_bounded_aux(&w, lim).unwrap();
            assert_eq!(got == Outcome::Accepted, ok);
        }
    }

    fn accepted(m: &AuxMachine, w: &str) -> bool {
        let w = m.input.parse_word(w).unwrap();
        m.accepts_bounded_aux(&w, Limits::new(200, 100)).unwrap() == Outcome::Accepted
    }

    #[test]
    fn fixture_languages() {
        let q = fixtures::queue_anban();
        assert!(accepted(&q, "b") && accepted(&q, "aabaa"));
        assert!(!accepted(&q, "aaba") && !accepted(&q, "abab"));
        let f = fixtures::flip_copy();
        assert!(accepted(&f, "c") && accepted(&f, "abcab") && accepted(&f, "bacba"));
        assert!(!accepted(&f, "abcba") && !accepted(&f, "abca"));
        let ab = fixtures::queue_ab();
        assert!(accepted(&ab, "ab") && !accepted(&ab, "a") && !accepted(&ab, "abab"));
    }
}
