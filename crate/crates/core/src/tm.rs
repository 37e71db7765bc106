//! The worktape machine: one-way read-only input, bi-infinite read/write
//! worktape whose contents are kept as a canonical word with a head marker.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::{BLANK, HEAD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    pub fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "S" => Some(Move::S),
            "R" => Some(Move::R),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::S => "S",
            Move::R => "R",
        }
    }
}

/// One element of δ: in `from`, reading `input` (or λ) and tape symbol
/// `read`, go to `to`, write `write`, move `mv`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub from: usize,
    pub input: Option<Sym>,
    pub read: Sym,
    pub write: Sym,
    pub mv: Move,
    pub to: usize,
}

/// Worktape contents `left ^ scanned right` in canonical form: `left` has no
/// leading blank and `right` no trailing blank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tape {
    pub left: Word,
    pub scanned: Sym,
    pub right: Word,
}

impl Tape {
    pub fn blank(blank: Sym) -> Tape {
        Tape {
            left: Vec::new(),
            scanned: blank,
            right: Vec::new(),
        }
    }

    pub fn cells(&self) -> usize {
        self.left.len() + 1 + self.right.len()
    }

    pub fn is_canonical(&self, blank: Sym) -> bool {
        self.left.first() != Some(&blank) && self.right.last() != Some(&blank)
    }

    /// Applies a write-and-move exactly as the step relation prescribes,
    /// including blank materialization and trimming at either edge.
    pub fn apply(&self, write: Sym, mv: Move, blank: Sym) -> Tape {
        match mv {
            Move::S => Tape {
                left: self.left.clone(),
                scanned: write,
                right: self.right.clone(),
            },
            Move::R => {
                let mut left = self.left.clone();
                if !(self.left.is_empty() && write == blank) {
                    left.push(write);
                }
                let (scanned, right) = match self.right.split_first() {
                    None => (blank, Vec::new()),
                    Some((&c, rest)) => (c, rest.to_vec()),
                };
                Tape {
                    left,
                    scanned,
                    right,
                }
            }
            Move::L => {
                let mut left = self.left.clone();
                let scanned = left.pop().unwrap_or(blank);
                let mut right = Vec::with_capacity(self.right.len() + 1);
                if !(self.right.is_empty() && write == blank) {
                    right.push(write);
                }
                right.extend_from_slice(&self.right);
                Tape {
                    left,
                    scanned,
                    right,
                }
            }
        }
    }

    /// Tape word over Γ0 ∪ {^}, with `head` the index of the marker.
    pub fn word(&self, head: Sym) -> Word {
        let mut w = self.left.clone();
        w.push(head);
        w.push(self.scanned);
        w.extend_from_slice(&self.right);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    pub remaining: Word,
    pub tape: Tape,
}

/// Search limits for the bounded engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: usize,
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: 100_000,
            max_cells: 1_000,
        }
    }
}

impl Limits {
    pub fn new(max_steps: usize, max_cells: usize) -> Limits {
        Limits {
            max_steps,
            max_cells,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Accepted,
    RejectedWithinBounds,
    BoundExceeded,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Accepted => "accepted",
            Outcome::RejectedWithinBounds => "rejected-within-bounds",
            Outcome::BoundExceeded => "bound-exceeded",
        })
    }
}

#[derive(Clone, Debug)]
pub struct WorktapeTm {
    pub states: Vec<String>,
    pub input: Alphabet,
    /// Γ0: the tape alphabet without the head marker; always contains `_`.
    pub tape: Alphabet,
    pub rules: Vec<Rule>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    pub reversal_bound: Option<usize>,
    /// Phase index of every state, present once phases are annotated.
    pub phases: Option<Vec<usize>>,
    /// Name of the source state each state was derived from.
    pub origin: Vec<String>,
    /// Stay-write still owed to the scanned cell, per state (only after
    /// stay normalization). The scanned cell shows this symbol.
    pub pending: Vec<Option<Sym>>,
}

impl WorktapeTm {
    /// Builds a machine without rules. The blank is added to the tape
    /// alphabet when missing; the head marker may not appear in it.
    pub fn new(
        states: Vec<String>,
        input: Alphabet,
        tape: Alphabet,
        initial: &str,
        finals: &[&str],
    ) -> Result<WorktapeTm> {
        if tape.contains(HEAD) {
            return Err(Error::ReservedSymbol(HEAD.to_string()));
        }
        let tape = if tape.contains(BLANK) {
            tape
        } else {
            Alphabet::new([BLANK])?.union(&tape)
        };
        for s in input.symbols() {
            if s == BLANK || s == HEAD {
                return Err(Error::ReservedSymbol(s.clone()));
            }
        }
        let mut seen = HashSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
            if tape.contains(s) || s == HEAD {
                return Err(Error::InvalidMachine(format!(
                    "state `{s}` clashes with a tape symbol"
                )));
            }
        }
        let find = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{name}`")))
        };
        let initial = find(initial)?;
        let finals = finals.iter().map(|f| find(f)).collect::<Result<_>>()?;
        Ok(WorktapeTm {
            origin: states.clone(),
            pending: vec![None; states.len()],
            states,
            input,
            tape,
            rules: Vec::new(),
            initial,
            finals,
            reversal_bound: None,
            phases: None,
        })
    }

    pub fn with_reversal_bound(mut self, k: usize) -> Self {
        self.reversal_bound = Some(k);
        self
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{name}`")))
    }

    /// Adds a rule given by names; `input` of `None` is λ.
    pub fn add_rule(
        &mut self,
        from: &str,
        input: Option<&str>,
        read: &str,
        write: &str,
        mv: Move,
        to: &str,
    ) -> Result<usize> {
        if read == HEAD || write == HEAD {
            return Err(Error::ReservedSymbol(HEAD.to_string()));
        }
        let rule = Rule {
            from: self.state(from)?,
            input: input.map(|a| self.input.sym(a)).transpose()?,
            read: self.tape.sym(read)?,
            write: self.tape.sym(write)?,
            mv,
            to: self.state(to)?,
        };
        self.rules.push(rule);
        Ok(self.rules.len() - 1)
    }

    pub fn blank(&self) -> Sym {
        self.tape.get(BLANK).expect("tape alphabet holds the blank")
    }

    pub fn initial_tape(&self) -> Tape {
        Tape::blank(self.blank())
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals.contains(&s)
    }

    /// Every stay rule leaves the scanned symbol unchanged.
    pub fn is_normalized(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.mv != Move::S || r.write == r.read)
    }

    pub fn phase(&self, s: usize) -> Option<usize> {
        self.phases.as_ref().map(|p| p[s])
    }

    /// Number of phase blocks, when annotated.
    pub fn phase_count(&self) -> Option<usize> {
        self.phases
            .as_ref()
            .map(|p| p.iter().copied().max().map_or(1, |m| m + 1))
    }

    /// Alphabet of store words: state names, then Γ0, then the head marker.
    pub fn store_alphabet(&self) -> Alphabet {
        let mut symbols: Vec<String> = self.states.clone();
        symbols.extend(self.tape.symbols().iter().cloned());
        symbols.push(HEAD.to_string());
        Alphabet::new(symbols).expect("states and tape symbols are disjoint")
    }

    /// Γ = Γ0 ∪ {^}.
    pub fn tape_alphabet_with_head(&self) -> Alphabet {
        let mut symbols = self.tape.symbols().to_vec();
        symbols.push(HEAD.to_string());
        Alphabet::new(symbols).expect("marker not in Γ0")
    }

    /// Store word `q · left ^ scanned right` over [`Self::store_alphabet`].
    pub fn store_word(&self, state: usize, tape: &Tape) -> Word {
        let n = self.states.len();
        let head = n + self.tape.len();
        let mut w = vec![state];
        w.extend(tape.left.iter().map(|&s| s + n));
        w.push(head);
        w.push(tape.scanned + n);
        w.extend(tape.right.iter().map(|&s| s + n));
        w
    }

    pub fn render_tape(&self, tape: &Tape) -> String {
        let mut s: String = tape.left.iter().map(|&c| self.tape.name(c)).collect();
        s.push_str(HEAD);
        s.push_str(self.tape.name(tape.scanned));
        s.extend(tape.right.iter().map(|&c| self.tape.name(c)));
        s
    }

    pub fn render_config(&self, c: &Configuration) -> String {
        format!(
            "({}, {}, {})",
            self.states[c.state],
            if c.remaining.is_empty() {
                "λ".to_string()
            } else {
                self.input.render(&c.remaining)
            },
            self.render_tape(&c.tape)
        )
    }

    fn check_config(&self, c: &Configuration) -> Result<()> {
        let k = self.tape.len();
        let ok_syms = c.tape.left.iter().chain(c.tape.right.iter()).all(|&s| s < k)
            && c.tape.scanned < k
            && c.remaining.iter().all(|&a| a < self.input.len());
        if c.state >= self.states.len() || !ok_syms {
            return Err(Error::MalformedConfiguration(
                "reference to an undeclared state or symbol".into(),
            ));
        }
        if !c.tape.is_canonical(self.blank()) {
            return Err(Error::MalformedConfiguration(format!(
                "tape `{}` is not in canonical form",
                self.render_tape(&c.tape)
            )));
        }
        Ok(())
    }

    /// Successor tapes of `(state, tape)` with the next input letter
    /// `next`, as `(rule index, consumes input, target state, tape)`.
    fn moves<'a>(
        &'a self,
        state: usize,
        tape: &'a Tape,
        next: Option<Sym>,
    ) -> impl Iterator<Item = (usize, bool, usize, Tape)> + 'a {
        let blank = self.blank();
        self.rules.iter().enumerate().filter_map(move |(i, r)| {
            if r.from != state || r.read != tape.scanned {
                return None;
            }
            let consumes = match r.input {
                None => false,
                Some(a) if Some(a) == next => true,
                Some(_) => return None,
            };
            Some((i, consumes, r.to, tape.apply(r.write, r.mv, blank)))
        })
    }

    /// All configurations reachable in one step.
    pub fn step(&self, c: &Configuration) -> Result<Vec<Configuration>> {
        self.check_config(c)?;
        let mut out: Vec<Configuration> = Vec::new();
        for (_, consumes, to, tape) in self.moves(c.state, &c.tape, c.remaining.first().copied()) {
            let remaining = if consumes {
                c.remaining[1..].to_vec()
            } else {
                c.remaining.clone()
            };
            let next = Configuration {
                state: to,
                remaining,
                tape,
            };
            if !out.contains(&next) {
                out.push(next);
            }
        }
        Ok(out)
    }

    pub fn initial_config(&self, word: &[Sym]) -> Configuration {
        Configuration {
            state: self.initial,
            remaining: word.to_vec(),
            tape: self.initial_tape(),
        }
    }

    /// Breadth-first search of the configuration graph on `word`.
    pub fn accepts_bounded(&self, word: &[Sym], limits: Limits) -> Outcome {
        self.accepting_run(word, limits).0
    }

    /// Like [`Self::accepts_bounded`], also returning the rule sequence of a
    /// shortest accepting run.
    pub fn accepting_run(&self, word: &[Sym], limits: Limits) -> (Outcome, Option<Vec<usize>>) {
        type Key = (usize, usize, Tape);
        let start: Key = (self.initial, 0, self.initial_tape());
        let mut parent: HashMap<Key, Option<(Key, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut layer = vec![start];
        let mut truncated = false;
        let mut depth = 0;
        while !layer.is_empty() {
            let mut next_layer = Vec::new();
            for key in &layer {
                let (state, pos, tape) = key;
                if *pos == word.len() && self.is_final(*state) {
                    let mut run = Vec::new();
                    let mut cur = key.clone();
                    while let Some(Some((prev, rule))) = parent.get(&cur).cloned() {
                        run.push(rule);
                        cur = prev;
                    }
                    run.reverse();
                    return (Outcome::Accepted, Some(run));
                }
                for (rule, consumes, to, t) in self.moves(*state, tape, word.get(*pos).copied()) {
                    let succ: Key = (to, pos + usize::from(consumes), t);
                    if parent.contains_key(&succ) {
                        continue;
                    }
                    if depth >= limits.max_steps || succ.2.cells() > limits.max_cells {
                        truncated = true;
                        continue;
                    }
                    parent.insert(succ.clone(), Some((key.clone(), rule)));
                    next_layer.push(succ);
                }
            }
            layer = next_layer;
            depth += 1;
        }
        if truncated {
            (Outcome::BoundExceeded, None)
        } else {
            (Outcome::RejectedWithinBounds, None)
        }
    }

    /// Replays a rule sequence from the initial configuration on `word`,
    /// returning the visited configurations when every step is legal.
    pub fn replay(&self, word: &[Sym], rules: &[usize]) -> Option<Vec<Configuration>> {
        let mut cur = self.initial_config(word);
        let mut trace = vec![cur.clone()];
        for &i in rules {
            let r = self.rules.get(i)?;
            if r.from != cur.state || r.read != cur.tape.scanned {
                return None;
            }
            let remaining = match r.input {
                None => cur.remaining.clone(),
                Some(a) if cur.remaining.first() == Some(&a) => cur.remaining[1..].to_vec(),
                Some(_) => return None,
            };
            cur = Configuration {
                state: r.to,
                remaining,
                tape: cur.tape.apply(r.write, r.mv, self.blank()),
            };
            trace.push(cur.clone());
        }
        Some(trace)
    }

    /// Finite under-approximation of the store language: every `q·x` on a
    /// computation from the initial configuration that reaches a final state,
    /// with the input chosen freely, found within `limits`.
    pub fn enumerate_store_bounded(&self, limits: Limits) -> StoreSample {
        let graph = InputFreeGraph::explore(self, limits);
        let coreach = graph.coreachable(self);
        let mut words = BTreeMap::new();
        for (id, &(state, ref tape)) in graph.nodes.iter().enumerate() {
            if coreach[id].is_some() {
                words.insert(self.store_word(state, tape), id);
            }
        }
        StoreSample {
            words,
            graph,
            coreach,
        }
    }

    /// Searches, within `limits`, for an accepting computation (input chosen
    /// freely) making more worktape reversals than the declared bound.
    /// Returns its rule sequence.
    pub fn find_reversal_violation(&self, limits: Limits) -> Result<Option<Vec<usize>>> {
        let k = self.reversal_bound.ok_or(Error::MissingReversalBound)?;
        // node: (state, tape, reversals capped at k+1, last direction)
        type Key = (usize, Tape, usize, Option<Move>);
        let start: Key = (self.initial, self.initial_tape(), 0, None);
        let mut parent: HashMap<Key, Option<(Key, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((key, depth)) = queue.pop_front() {
            let (state, tape, revs, last) = &key;
            if *revs > k && self.is_final(*state) {
                let mut run = Vec::new();
                let mut cur = key.clone();
                while let Some(Some((prev, rule))) = parent.get(&cur).cloned() {
                    run.push(rule);
                    cur = prev;
                }
                run.reverse();
                return Ok(Some(run));
            }
            if depth >= limits.max_steps {
                continue;
            }
            for (rule, _, to, t) in self.moves_any_input(*state, tape) {
                if t.cells() > limits.max_cells {
                    continue;
                }
                let mv = self.rules[rule].mv;
                let (revs2, last2) = match (mv, last) {
                    (Move::S, _) => (*revs, *last),
                    (m, Some(l)) if m != *l => ((revs + 1).min(k + 1), Some(m)),
                    (m, _) => (*revs, Some(m)),
                };
                let succ: Key = (to, t, revs2, last2);
                if !parent.contains_key(&succ) {
                    parent.insert(succ.clone(), Some((key.clone(), rule)));
                    queue.push_back((succ, depth + 1));
                }
            }
        }
        Ok(None)
    }

    /// Moves ignoring the input letter (every rule is enabled).
    fn moves_any_input<'a>(
        &'a self,
        state: usize,
        tape: &'a Tape,
    ) -> impl Iterator<Item = (usize, bool, usize, Tape)> + 'a {
        let blank = self.blank();
        self.rules.iter().enumerate().filter_map(move |(i, r)| {
            (r.from == state && r.read == tape.scanned)
                .then(|| (i, r.input.is_some(), r.to, tape.apply(r.write, r.mv, blank)))
        })
    }

    /// Input word consumed by a rule sequence.
    pub fn input_of(&self, rules: &[usize]) -> Word {
        rules.iter().filter_map(|&i| self.rules[i].input).collect()
    }
}

/// Configuration graph of `(state, tape)` pairs explored with the input
/// letters chosen freely.
#[derive(Clone, Debug)]
pub struct InputFreeGraph {
    pub nodes: Vec<(usize, Tape)>,
    /// Breadth-first tree edge `(parent, rule)` for every node but the root.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Every explored edge `(target, rule)`.
    pub succ: Vec<Vec<(usize, usize)>>,
    pub truncated: bool,
}

impl InputFreeGraph {
    pub fn explore(m: &WorktapeTm, limits: Limits) -> InputFreeGraph {
        let mut ids: HashMap<(usize, Tape), usize> = HashMap::new();
        let root = (m.initial, m.initial_tape());
        ids.insert(root.clone(), 0);
        let mut g = InputFreeGraph {
            nodes: vec![root],
            parent: vec![None],
            succ: vec![Vec::new()],
            truncated: false,
        };
        let mut depth = vec![0usize];
        let mut i = 0;
        while i < g.nodes.len() {
            let (state, tape) = g.nodes[i].clone();
            for (rule, _, to, t) in m.moves_any_input(state, &tape) {
                let key = (to, t);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        if depth[i] >= limits.max_steps || key.1.cells() > limits.max_cells {
                            g.truncated = true;
                            continue;
                        }
                        let id = g.nodes.len();
                        ids.insert(key.clone(), id);
                        g.nodes.push(key);
                        g.parent.push(Some((i, rule)));
                        g.succ.push(Vec::new());
                        depth.push(depth[i] + 1);
                        id
                    }
                };
                g.succ[i].push((id, rule));
            }
            i += 1;
        }
        g
    }

    /// For every node that reaches a final state inside the explored graph,
    /// the next edge `(target, rule)` on a shortest such path (or
    /// `Some(None)` at a final node).
    #[allow(clippy::type_complexity)]
    pub fn coreachable(&self, m: &WorktapeTm) -> Vec<Option<Option<(usize, usize)>>> {
        let n = self.nodes.len();
        let mut rev: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (p, es) in self.succ.iter().enumerate() {
            for &(q, rule) in es {
                rev[q].push((p, rule));
            }
        }
        let mut next: Vec<Option<Option<(usize, usize)>>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (id, (state, _)) in self.nodes.iter().enumerate() {
            if m.is_final(*state) {
                next[id] = Some(None);
                queue.push_back(id);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &(p, rule) in &rev[q] {
                if next[p].is_none() {
                    next[p] = Some(Some((q, rule)));
                    queue.push_back(p);
                }
            }
        }
        next
    }
}

/// Result of [`WorktapeTm::enumerate_store_bounded`].
#[derive(Clone, Debug)]
pub struct StoreSample {
    /// Store words, each mapped to a graph node realizing it.
    pub words: BTreeMap<Word, usize>,
    pub graph: InputFreeGraph,
    #[allow(clippy::type_complexity)]
    coreach: Vec<Option<Option<(usize, usize)>>>,
}

impl StoreSample {
    pub fn contains(&self, word: &[Sym]) -> bool {
        self.words.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// A complete accepting rule sequence passing through the snapshot, and
    /// the index in that sequence at which the snapshot occurs.
    pub fn witness(&self, word: &[Sym]) -> Option<(Vec<usize>, usize)> {
        let &node = self.words.get(word)?;
        let mut prefix = Vec::new();
        let mut cur = node;
        while let Some((p, rule)) = self.graph.parent[cur] {
            prefix.push(rule);
            cur = p;
        }
        prefix.reverse();
        let at = prefix.len();
        let mut cur = node;
        while let Some(Some((q, rule))) = self.coreach[cur] {
            prefix.push(rule);
            cur = q;
        }
        Some((prefix, at))
    }
}

/// Derived machine in which no stay rule writes: a pending write is kept in
/// the finite control and flushed by the next moving rule.
pub fn normalize_stays(m: &WorktapeTm) -> WorktapeTm {
    if m.is_normalized() {
        return m.clone();
    }
    let k = m.tape.len();
    type Node = (usize, Option<Sym>);
    let name = |(q, p): Node| match p {
        None => m.states[q].clone(),
        Some(s) => format!("{}[{}]", m.states[q], m.tape.name(s)),
    };
    let mut ids: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = vec![(m.initial, None)];
    ids.insert((m.initial, None), 0);
    let mut rules = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (q, pending) = nodes[i];
        for r in m.rules.iter().filter(|r| r.from == q) {
            // (shown symbol, write, move, target pending)
            let mut emitted: Vec<(Sym, Sym, Move, Option<Sym>)> = Vec::new();
            match pending {
                None => match r.mv {
                    Move::S if r.write != r.read => {
                        emitted.push((r.read, r.read, Move::S, Some(r.write)))
                    }
                    Move::S => emitted.push((r.read, r.read, Move::S, None)),
                    mv => emitted.push((r.read, r.write, mv, None)),
                },
                Some(p) if p == r.read => {
                    for shown in 0..k {
                        match r.mv {
                            Move::S => {
                                let pend = (r.write != shown).then_some(r.write);
                                emitted.push((shown, shown, Move::S, pend));
                            }
                            mv => emitted.push((shown, r.write, mv, None)),
                        }
                    }
                }
                Some(_) => {}
            }
            for (read, write, mv, pend) in emitted {
                let node = (r.to, pend);
                let to = *ids.entry(node).or_insert_with(|| {
                    nodes.push(node);
                    nodes.len() - 1
                });
                let rule = Rule {
                    from: i,
                    input: r.input,
                    read,
                    write,
                    mv,
                    to,
                };
                if !rules.contains(&rule) {
                    rules.push(rule);
                }
            }
        }
        i += 1;
    }
    WorktapeTm {
        states: nodes.iter().map(|&n| name(n)).collect(),
        origin: nodes.iter().map(|&(q, _)| m.origin[q].clone()).collect(),
        pending: nodes.iter().map(|&(_, p)| p).collect(),
        input: m.input.clone(),
        tape: m.tape.clone(),
        rules,
        initial: 0,
        finals: (0..nodes.len())
            .filter(|&i| m.is_final(nodes[i].0))
            .collect(),
        reversal_bound: m.reversal_bound,
        phases: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum PhaseTag {
    /// No worktape move yet.
    Fresh,
    /// Phase index; the flag records that the first move went left, which
    /// shifts phase numbering by one without costing a reversal.
    Phase(usize, bool),
}

/// Product with a phase counter: even phases move right (or stay), odd
/// phases move left (or stay), and the phase advances exactly at reversals.
/// Computations needing more reversals than the bound die.
///
/// A first move to the left does not count as a reversal, so such
/// computations run through phases `1..=k+1`; all others use `0..=k`.
pub fn annotate_phases(m: &WorktapeTm) -> Result<WorktapeTm> {
    let k = m.reversal_bound.ok_or(Error::MissingReversalBound)?;
    type Node = (usize, PhaseTag);
    let phase_of = |t: PhaseTag| match t {
        PhaseTag::Fresh => 0,
        PhaseTag::Phase(p, _) => p,
    };
    let advance = |tag: PhaseTag, mv: Move| -> Option<PhaseTag> {
        match (tag, mv) {
            (t, Move::S) => Some(t),
            (PhaseTag::Fresh, Move::R) => Some(PhaseTag::Phase(0, false)),
            (PhaseTag::Fresh, Move::L) => Some(PhaseTag::Phase(1, true)),
            (PhaseTag::Phase(p, ls), mv) => {
                let going_right = p % 2 == 0;
                if (mv == Move::R) == going_right {
                    Some(tag)
                } else if p + 1 <= k + usize::from(ls) {
                    Some(PhaseTag::Phase(p + 1, ls))
                } else {
                    None
                }
            }
        }
    };
    let mut ids: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = vec![(m.initial, PhaseTag::Fresh)];
    ids.insert(nodes[0], 0);
    let mut rules = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (q, tag) = nodes[i];
        for r in m.rules.iter().filter(|r| r.from == q) {
            let Some(next) = advance(tag, r.mv) else {
                continue;
            };
            let node = (r.to, next);
            let to = *ids.entry(node).or_insert_with(|| {
                nodes.push(node);
                nodes.len() - 1
            });
            rules.push(Rule {
                from: i,
                to,
                ..r.clone()
            });
        }
        i += 1;
    }
    let states: Vec<String> = nodes
        .iter()
        .map(|&(q, tag)| match tag {
            PhaseTag::Fresh => m.states[q].clone(),
            PhaseTag::Phase(p, false) => format!("{}@{p}", m.states[q]),
            PhaseTag::Phase(p, true) => format!("{}@{p}'", m.states[q]),
        })
        .collect();
    let mut seen = HashSet::new();
    for s in &states {
        if !seen.insert(s) || m.tape.contains(s) {
            return Err(Error::InvalidMachine(format!(
                "annotated state name `{s}` is ambiguous; rename source states"
            )));
        }
    }
    Ok(WorktapeTm {
        origin: nodes.iter().map(|&(q, _)| m.origin[q].clone()).collect(),
        pending: nodes.iter().map(|&(q, _)| m.pending[q]).collect(),
        finals: (0..nodes.len())
            .filter(|&i| m.is_final(nodes[i].0))
            .collect(),
        phases: Some(nodes.iter().map(|&(_, t)| phase_of(t)).collect()),
        states,
        input: m.input.clone(),
        tape: m.tape.clone(),
        rules,
        initial: 0,
        reversal_bound: m.reversal_bound,
    })
}

/// `normalize_stays` followed by `annotate_phases`.
pub fn prepare(m: &WorktapeTm) -> Result<WorktapeTm> {
    annotate_phases(&normalize_stays(m))
}
