//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's language operations; automata are simulated from their
//! serialized form and machines are explored rule by rule.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::Rng;
use tmdensity::alphabet::{Alphabet, Sym, Word};
use tmdensity::nfa::NfaDoc;
use tmdensity::tm::{Move, Tape, WorktapeTm};
use tmdensity::Nfa;

/// Automaton read back from its serialized form.
pub struct Raw {
    pub n: usize,
    pub initials: Vec<usize>,
    pub finals: Vec<bool>,
    /// (from, symbol or None, to)
    pub edges: Vec<(usize, Option<Sym>, usize)>,
}

impl Raw {
    pub fn of(a: &Nfa) -> Raw {
        let doc: NfaDoc = a.to_doc();
        let index = |name: &str| doc.alphabet.iter().position(|s| s == name).unwrap();
        let mut finals = vec![false; doc.states];
        for &f in &doc.finals {
            finals[f] = true;
        }
        Raw {
            n: doc.states,
            initials: doc.initials.clone(),
            finals,
            edges: doc
                .edges
                .iter()
                .map(|(p, l, q)| (*p, (!l.is_empty()).then(|| index(l)), *q))
                .collect(),
        }
    }

    fn close(&self, set: &mut Vec<bool>) {
        let mut changed = true;
        while changed {
            changed = false;
            for &(p, l, q) in &self.edges {
                if l.is_none() && set[p] && !set[q] {
                    set[q] = true;
                    changed = true;
                }
            }
        }
    }

    pub fn start(&self) -> Vec<bool> {
        let mut set = vec![false; self.n];
        for &i in &self.initials {
            set[i] = true;
        }
        self.close(&mut set);
        set
    }

    pub fn read(&self, set: &[bool], w: &[Sym]) -> Vec<bool> {
        let mut cur = set.to_vec();
        for &a in w {
            let mut next = vec![false; self.n];
            for &(p, l, q) in &self.edges {
                if l == Some(a) && cur[p] {
                    next[q] = true;
                }
            }
            self.close(&mut next);
            cur = next;
        }
        cur
    }

    pub fn accepts(&self, w: &[Sym]) -> bool {
        self.read(&self.start(), w)
            .iter()
            .zip(&self.finals)
            .any(|(&s, &f)| s && f)
    }
}

/// All words of length at most `n` over `k` symbols, shortest first, then
/// in symbol order.
pub fn words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k {
                let mut v: Word = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_nfa<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Nfa {
    let mut a = Nfa::new(alphabet.clone());
    let n = rng.gen_range(1..=max_states);
    for _ in 0..n {
        let f = rng.gen_bool(0.3);
        a.add_state(f);
    }
    a.set_initial(0);
    if n > 1 && rng.gen_bool(0.2) {
        a.set_initial(rng.gen_range(1..n));
    }
    let edges = rng.gen_range(0..=2 * n + 2);
    for _ in 0..edges {
        let p = rng.gen_range(0..n);
        let q = rng.gen_range(0..n);
        let label = if rng.gen_bool(0.15) {
            None
        } else {
            Some(rng.gen_range(0..alphabet.len()))
        };
        a.add_edge(p, label, q);
    }
    a
}

/// Small regular expressions over space-separated symbol names:
/// concatenation, `|`, postfix `*` and `+`, parentheses, `()` for λ.
pub fn re(alphabet: &Alphabet, pattern: &str) -> Nfa {
    let spaced = pattern
        .replace('(', " ( ")
        .replace(')', " ) ")
        .replace('|', " | ");
    let mut toks: Vec<String> = Vec::new();
    for t in spaced.split_whitespace() {
        let mut t = t;
        let mut post = Vec::new();
        while t.len() > 1 && (t.ends_with('*') || t.ends_with('+')) {
            post.push(t[t.len() - 1..].to_string());
            t = &t[..t.len() - 1];
        }
        toks.push(t.to_string());
        toks.extend(post.into_iter().rev());
    }
    let mut b = Thompson {
        nfa: Nfa::new(alphabet.clone()),
        alphabet: alphabet.clone(),
        toks,
        pos: 0,
    };
    let (s, f) = b.alt();
    assert_eq!(b.pos, b.toks.len(), "trailing tokens in `{pattern}`");
    b.nfa.set_initial(s);
    b.nfa.set_final(f, true);
    b.nfa
}

struct Thompson {
    nfa: Nfa,
    alphabet: Alphabet,
    toks: Vec<String>,
    pos: usize,
}

impl Thompson {
    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|s| s.as_str())
    }

    fn alt(&mut self) -> (usize, usize) {
        let mut parts = vec![self.seq()];
        while self.peek() == Some("|") {
            self.pos += 1;
            parts.push(self.seq());
        }
        if parts.len() == 1 {
            return parts[0];
        }
        let s = self.nfa.add_state(false);
        let f = self.nfa.add_state(false);
        for (ps, pf) in parts {
            self.nfa.add_edge(s, None, ps);
            self.nfa.add_edge(pf, None, f);
        }
        (s, f)
    }

    fn seq(&mut self) -> (usize, usize) {
        let s = self.nfa.add_state(false);
        let mut end = s;
        while let Some(t) = self.peek() {
            if t == "|" || t == ")" {
                break;
            }
            let (ps, pf) = self.postfix();
            self.nfa.add_edge(end, None, ps);
            end = pf;
        }
        (s, end)
    }

    fn postfix(&mut self) -> (usize, usize) {
        let (mut s, mut f) = self.atom();
        while let Some(op) = self.peek() {
            if op != "*" && op != "+" {
                break;
            }
            let star = op == "*";
            self.pos += 1;
            let ns = self.nfa.add_state(false);
            let nf = self.nfa.add_state(false);
            self.nfa.add_edge(ns, None, s);
            self.nfa.add_edge(f, None, nf);
            self.nfa.add_edge(f, None, s);
            if star {
                self.nfa.add_edge(ns, None, nf);
            }
            s = ns;
            f = nf;
        }
        (s, f)
    }

    fn atom(&mut self) -> (usize, usize) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        if t == "(" {
            let r = self.alt();
            assert_eq!(self.peek(), Some(")"));
            self.pos += 1;
            return r;
        }
        let s = self.nfa.add_state(false);
        let f = self.nfa.add_state(false);
        let sym = self.alphabet.sym(&t).unwrap_or_else(|_| panic!("unknown symbol `{t}`"));
        self.nfa.add_edge(s, Some(sym), f);
        (s, f)
    }
}

/// Configuration graph of a worktape machine with the input left free:
/// edges carry the input letter a rule consumes, if any.
pub struct ConfigGraph {
    pub nodes: Vec<(usize, Tape)>,
    pub edges: Vec<Vec<(Option<Sym>, usize)>>,
    /// False when a cell or node limit cut the exploration.
    pub complete: bool,
    pub coreach: Vec<bool>,
}

impl ConfigGraph {
    pub fn explore(m: &WorktapeTm, max_cells: usize, max_nodes: usize) -> ConfigGraph {
        let blank = m.tape.get("_").unwrap();
        let mut index: HashMap<(usize, Tape), usize> = HashMap::new();
        let mut nodes = vec![(m.initial, Tape::blank(blank))];
        let mut edges: Vec<Vec<(Option<Sym>, usize)>> = vec![Vec::new()];
        index.insert(nodes[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut complete = true;
        while let Some(id) = queue.pop_front() {
            let (state, tape) = nodes[id].clone();
            for r in &m.rules {
                if r.from != state || r.read != tape.scanned {
                    continue;
                }
                let next = apply(&tape, r.write, r.mv, blank);
                if next.left.len() + 1 + next.right.len() > max_cells {
                    complete = false;
                    continue;
                }
                let key = (r.to, next);
                let to = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if nodes.len() >= max_nodes {
                            complete = false;
                            continue;
                        }
                        let t = nodes.len();
                        nodes.push(key.clone());
                        edges.push(Vec::new());
                        index.insert(key, t);
                        queue.push_back(t);
                        t
                    }
                };
                edges[id].push((r.input, to));
            }
        }
        let mut coreach: Vec<bool> = nodes.iter().map(|(s, _)| m.finals.contains(s)).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..nodes.len() {
                if !coreach[p] && edges[p].iter().any(|&(_, q)| coreach[q]) {
                    coreach[p] = true;
                    changed = true;
                }
            }
        }
        ConfigGraph {
            nodes,
            edges,
            complete,
            coreach,
        }
    }

    /// Nodes reachable from `from` by reading exactly `w`, λ-rules allowed
    /// anywhere.
    pub fn read(&self, from: impl IntoIterator<Item = usize>, w: &[Sym]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut stack: Vec<(usize, usize)> = from.into_iter().map(|n| (n, 0)).collect();
        let mut out = BTreeSet::new();
        while let Some((n, i)) = stack.pop() {
            if !seen.insert((n, i)) {
                continue;
            }
            if i == w.len() {
                out.insert(n);
            }
            for &(l, t) in &self.edges[n] {
                match l {
                    None => stack.push((t, i)),
                    Some(a) if i < w.len() && w[i] == a => stack.push((t, i + 1)),
                    Some(_) => {}
                }
            }
        }
        out
    }

    /// Some accepting computation reads `w` as a contiguous block.
    pub fn has_infix(&self, w: &[Sym]) -> bool {
        self.read(0..self.nodes.len(), w).iter().any(|&n| self.coreach[n])
    }

    /// Some accepting computation is in `q` before and after reading `w`.
    pub fn between_visits(&self, q: usize, w: &[Sym]) -> bool {
        let starts = (0..self.nodes.len()).filter(|&n| self.nodes[n].0 == q);
        self.read(starts, w)
            .iter()
            .any(|&n| self.nodes[n].0 == q && self.coreach[n])
    }
}

/// The step relation on tapes, written out case by case.
pub fn apply(t: &Tape, write: Sym, mv: Move, blank: Sym) -> Tape {
    let mut left = t.left.clone();
    let mut right = t.right.clone();
    match mv {
        Move::S => Tape {
            left,
            scanned: write,
            right,
        },
        Move::R => {
            if !left.is_empty() || write != blank {
                left.push(write);
            }
            let scanned = if right.is_empty() { blank } else { right.remove(0) };
            Tape {
                left,
                scanned,
                right,
            }
        }
        Move::L => {
            if !right.is_empty() || write != blank {
                right.insert(0, write);
            }
            let scanned = left.pop().unwrap_or(blank);
            Tape {
                left,
                scanned,
                right,
            }
        }
    }
}

/// Random machine whose states are split into phase groups `0..=k`:
/// group `g` moves right when `g` is even and left when odd, and a rule
/// may only enter the next group by moving in that group's direction, so
/// no run exceeds `k` reversals.
pub fn random_bounded_tm<R: Rng>(rng: &mut R, k: usize, max_states: usize) -> WorktapeTm {
    let n = rng.gen_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut group = vec![0usize; n];
    for i in 1..n {
        group[i] = (group[i - 1] + rng.gen_range(0..=1)).min(k);
    }
    let finals: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| *i == n - 1 || rng.gen_bool(0.25))
        .map(|(_, s)| s.as_str())
        .collect();
    let mut m = WorktapeTm::new(
        names.clone(),
        Alphabet::user(["a", "b"]).unwrap(),
        Alphabet::new(["_", "X"]).unwrap(),
        "s0",
        &finals,
    )
    .unwrap()
    .with_reversal_bound(k);
    let dir = |g: usize| if g.is_multiple_of(2) { Move::R } else { Move::L };
    let rules = rng.gen_range(2..=3 * n + 1);
    for _ in 0..rules {
        let p = rng.gen_range(0..n);
        let targets: Vec<usize> = (0..n).filter(|&q| group[q] == group[p] || group[q] == group[p] + 1).collect();
        let q = targets[rng.gen_range(0..targets.len())];
        let mv = if group[q] > group[p] {
            dir(group[q])
        } else if rng.gen_bool(0.3) {
            Move::S
        } else {
            dir(group[p])
        };
        let input = match rng.gen_range(0..3) {
            0 => None,
            1 => Some("a"),
            _ => Some("b"),
        };
        let read = if rng.gen_bool(0.5) { "_" } else { "X" };
        let write = if rng.gen_bool(0.5) { "_" } else { "X" };
        m.add_rule(&names[p], input, read, write, mv, &names[q]).unwrap();
    }
    m
}
