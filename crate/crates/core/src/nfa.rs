//! Finite automata with ε-edges over an explicit [`Alphabet`].
//!
//! Every operation is a pure function returning a freshly numbered automaton;
//! state ids carry no meaning across operations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};

pub type StateId = usize;
/// Edge label; `None` is ε.
pub type Label = Option<Sym>;

/// Outcome of a decision procedure together with its witness word, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Word>,
}

#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    edges: Vec<Vec<(Label, StateId)>>,
    initials: BTreeSet<StateId>,
    finals: Vec<bool>,
}

impl Nfa {
    /// An automaton with no states (empty language).
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            edges: Vec::new(),
            initials: BTreeSet::new(),
            finals: Vec::new(),
        }
    }

    pub fn empty_language(alphabet: Alphabet) -> Self {
        Self::new(alphabet)
    }

    /// Accepts exactly the empty word.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        let mut a = Self::new(alphabet);
        let s = a.add_state(true);
        a.set_initial(s);
        a
    }

    /// Accepts `alphabet*`.
    pub fn universe(alphabet: Alphabet) -> Self {
        let mut a = Self::epsilon(alphabet);
        for s in 0..a.alphabet.len() {
            a.add_edge(0, Some(s), 0);
        }
        a
    }

    /// Accepts `symbols*` for the given subset of the alphabet.
    pub fn star_of(alphabet: Alphabet, symbols: &[Sym]) -> Self {
        let mut a = Self::epsilon(alphabet);
        for &s in symbols {
            a.add_edge(0, Some(s), 0);
        }
        a
    }

    /// Accepts exactly the given finite set of words.
    pub fn from_words(alphabet: Alphabet, words: &[Word]) -> Self {
        let mut a = Self::new(alphabet);
        let init = a.add_state(false);
        a.set_initial(init);
        for w in words {
            let mut cur = init;
            for &s in w {
                let next = a.add_state(false);
                a.add_edge(cur, Some(s), next);
                cur = next;
            }
            a.finals[cur] = true;
        }
        a
    }

    /// Builds an automaton from raw parts, validating every index and label.
    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        initials: &[StateId],
        finals: &[StateId],
        edges: &[(StateId, Label, StateId)],
    ) -> Result<Self> {
        let mut a = Self::new(alphabet);
        for _ in 0..states {
            a.add_state(false);
        }
        let check = |s: StateId| {
            if s < states {
                Ok(s)
            } else {
                Err(Error::InvalidMachine(format!("state index {s} out of range")))
            }
        };
        for &i in initials {
            a.initials.insert(check(i)?);
        }
        for &f in finals {
            a.finals[check(f)?] = true;
        }
        for &(p, l, q) in edges {
            check(p)?;
            check(q)?;
            if let Some(s) = l {
                if s >= a.alphabet.len() {
                    return Err(Error::UnknownSymbol(format!("#{s}")));
                }
            }
            a.edges[p].push((l, q));
        }
        Ok(a)
    }

    pub fn add_state(&mut self, is_final: bool) -> StateId {
        self.edges.push(Vec::new());
        self.finals.push(is_final);
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: StateId, label: Label, to: StateId) {
        debug_assert!(from < self.edges.len() && to < self.edges.len());
        debug_assert!(label.map_or(true, |s| s < self.alphabet.len()));
        if !self.edges[from].contains(&(label, to)) {
            self.edges[from].push((label, to));
        }
    }

    pub fn set_initial(&mut self, s: StateId) {
        self.initials.insert(s);
    }

    pub fn set_final(&mut self, s: StateId, is_final: bool) {
        self.finals[s] = is_final;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initials(&self) -> impl Iterator<Item = StateId> + '_ {
        self.initials.iter().copied()
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.finals.len()).filter(|&s| self.finals[s])
    }

    pub fn edges_from(&self, s: StateId) -> &[(Label, StateId)] {
        &self.edges[s]
    }

    pub fn edges(&self) -> impl Iterator<Item = (StateId, Label, StateId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(p, es)| es.iter().map(move |&(l, q)| (p, l, q)))
    }

    pub fn has_epsilon(&self) -> bool {
        self.edges().any(|(_, l, _)| l.is_none())
    }

    /// ε-closure of a set of states, returned sorted.
    pub fn closure<I: IntoIterator<Item = StateId>>(&self, states: I) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<StateId> = Vec::new();
        for s in states {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(s) = stack.pop() {
            for &(l, t) in &self.edges[s] {
                if l.is_none() && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        (0..seen.len()).filter(|&s| seen[s]).collect()
    }

    /// Closed successor set of a closed set under one symbol.
    pub fn step_set(&self, set: &[StateId], sym: Sym) -> Vec<StateId> {
        let mut next = Vec::new();
        for &s in set {
            for &(l, t) in &self.edges[s] {
                if l == Some(sym) {
                    next.push(t);
                }
            }
        }
        self.closure(next)
    }

    pub fn accepts(&self, word: &[Sym]) -> bool {
        let mut cur = self.closure(self.initials.iter().copied());
        for &s in word {
            if cur.is_empty() {
                return false;
            }
            cur = self.step_set(&cur, s);
        }
        cur.iter().any(|&s| self.finals[s])
    }

    /// Membership for a word given as symbol names.
    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.parse_word(word)?))
    }

    fn same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// Language-equivalent automaton without ε-edges over the same states.
    pub fn remove_epsilons(&self) -> Nfa {
        if !self.has_epsilon() {
            return self.clone();
        }
        let mut out = Nfa::new(self.alphabet.clone());
        for _ in 0..self.num_states() {
            out.add_state(false);
        }
        out.initials = self.initials.clone();
        for p in 0..self.num_states() {
            for q in self.closure([p]) {
                if self.finals[q] {
                    out.finals[p] = true;
                }
                for &(l, r) in &self.edges[q] {
                    if l.is_some() {
                        out.add_edge(p, l, r);
                    }
                }
            }
        }
        out
    }

    fn reachable_from<I: IntoIterator<Item = StateId>>(&self, start: I, reverse: bool) -> Vec<bool> {
        let n = self.num_states();
        let mut adj: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (p, _, q) in self.edges() {
            if reverse {
                adj[q].push(p);
            } else {
                adj[p].push(q);
            }
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<StateId> = start.into_iter().collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &t in &adj[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Restriction to states that are both accessible and co-accessible.
    pub fn trim(&self) -> Nfa {
        let acc = self.reachable_from(self.initials.iter().copied(), false);
        let coacc = self.reachable_from(self.finals(), true);
        let keep: Vec<bool> = (0..self.num_states()).map(|s| acc[s] && coacc[s]).collect();
        self.keep_states(&keep)
    }

    fn keep_states(&self, keep: &[bool]) -> Nfa {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Nfa::new(self.alphabet.clone());
        for s in 0..self.num_states() {
            if keep[s] {
                map[s] = out.add_state(self.finals[s]);
            }
        }
        for (p, l, q) in self.edges() {
            if keep[p] && keep[q] {
                out.add_edge(map[p], l, map[q]);
            }
        }
        for &i in &self.initials {
            if keep[i] {
                out.initials.insert(map[i]);
            }
        }
        out
    }

    /// Copies `other` into `self`, returning the offset of its states.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.num_states();
        for s in 0..other.num_states() {
            self.add_state(other.finals[s]);
        }
        for (p, l, q) in other.edges() {
            self.add_edge(p + off, l, q + off);
        }
        off
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        let off = out.absorb(other);
        for i in other.initials() {
            out.initials.insert(i + off);
        }
        Ok(out)
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut out = self.clone();
        for s in 0..out.num_states() {
            out.finals[s] = false;
        }
        let off = out.absorb(other);
        for f in self.finals() {
            for i in other.initials() {
                out.add_edge(f, None, i + off);
            }
        }
        Ok(out)
    }

    /// Product automaton accepting `L(self) ∩ L(other)`.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let a = self.remove_epsilons();
        let b = other.remove_epsilons();
        let mut out = Nfa::new(self.alphabet.clone());
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in a.initials() {
            for j in b.initials() {
                let id = out.add_state(a.finals[i] && b.finals[j]);
                out.initials.insert(id);
                ids.insert((i, j), id);
                queue.push_back((i, j));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let from = ids[&(p, q)];
            for &(l, p2) in &a.edges[p] {
                for &(m, q2) in &b.edges[q] {
                    if l != m {
                        continue;
                    }
                    let to = *ids.entry((p2, q2)).or_insert_with(|| {
                        queue.push_back((p2, q2));
                        out.add_state(a.finals[p2] && b.finals[q2])
                    });
                    out.add_edge(from, l, to);
                }
            }
        }
        Ok(out)
    }

    pub fn reverse(&self) -> Nfa {
        let mut out = Nfa::new(self.alphabet.clone());
        for s in 0..self.num_states() {
            out.add_state(self.initials.contains(&s));
        }
        for (p, l, q) in self.edges() {
            out.add_edge(q, l, p);
        }
        for f in self.finals() {
            out.initials.insert(f);
        }
        out
    }

    /// Subset construction; the result is complete (it may contain a sink).
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let start = self.closure(self.initials.iter().copied());
        let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta: Vec<Vec<StateId>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(k);
            for sym in 0..k {
                let next = self.step_set(&sets[i], sym);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        ids.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = sets
            .iter()
            .map(|set| set.iter().any(|&s| self.finals[s]))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            finals,
        }
    }

    /// Deterministic, complete and minimal automaton for the same language.
    pub fn determinize_minimize(&self) -> Nfa {
        self.determinize().minimize().to_nfa()
    }

    /// Complete DFA accepting `alphabet* \ L(self)`.
    pub fn complement(&self) -> Nfa {
        let mut d = self.determinize();
        for f in d.finals.iter_mut() {
            *f = !*f;
        }
        d.to_nfa()
    }

    /// Universality with a shortest, then lexicographically least,
    /// counterexample.
    pub fn is_universal(&self) -> Decision {
        let start = self.closure(self.initials.iter().copied());
        let mut parent: HashMap<Vec<StateId>, Option<(Vec<StateId>, Sym)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(set) = queue.pop_front() {
            if !set.iter().any(|&s| self.finals[s]) {
                let mut word = Vec::new();
                let mut cur = set;
                while let Some(Some((prev, sym))) = parent.get(&cur).cloned() {
                    word.push(sym);
                    cur = prev;
                }
                word.reverse();
                return Decision {
                    holds: false,
                    witness: Some(word),
                };
            }
            for sym in 0..self.alphabet.len() {
                let next = self.step_set(&set, sym);
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((set.clone(), sym)));
                    queue.push_back(next);
                }
            }
        }
        Decision {
            holds: true,
            witness: None,
        }
    }

    /// Emptiness with a shortest, then lexicographically least, accepted word.
    pub fn is_empty(&self) -> Decision {
        let n = self.num_states();
        // distance (in symbols) from each state to some final state
        let mut dist = vec![usize::MAX; n];
        let mut rev: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); n];
        for (p, l, q) in self.edges() {
            rev[q].push((l, p));
        }
        let mut deque = VecDeque::new();
        for f in self.finals() {
            dist[f] = 0;
            deque.push_back(f);
        }
        while let Some(s) = deque.pop_front() {
            for &(l, p) in &rev[s] {
                let cost = if l.is_some() { 1 } else { 0 };
                if dist[s] + cost < dist[p] {
                    dist[p] = dist[s] + cost;
                    if cost == 0 {
                        deque.push_front(p);
                    } else {
                        deque.push_back(p);
                    }
                }
            }
        }
        let best = |set: &[StateId]| set.iter().map(|&s| dist[s]).min().unwrap_or(usize::MAX);
        let mut cur = self.closure(self.initials.iter().copied());
        let mut remaining = best(&cur);
        if remaining == usize::MAX {
            return Decision {
                holds: true,
                witness: None,
            };
        }
        let mut word = Vec::new();
        while remaining > 0 {
            let (sym, next) = (0..self.alphabet.len())
                .map(|sym| (sym, self.step_set(&cur, sym)))
                .find(|(_, next)| best(next) == remaining - 1)
                .expect("distance labelling is consistent");
            word.push(sym);
            cur = next;
            remaining -= 1;
        }
        Decision {
            holds: false,
            witness: Some(word),
        }
    }

    /// `inf(L)`: every state of the trimmed automaton becomes initial and final.
    pub fn infix_closure(&self) -> Nfa {
        let mut t = self.trim();
        for s in 0..t.num_states() {
            t.initials.insert(s);
            t.finals[s] = true;
        }
        t
    }

    /// `{ y | s·y ∈ L }` for a symbol given by name.
    pub fn left_quotient_symbol(&self, name: &str) -> Result<Nfa> {
        let sym = self.alphabet.sym(name)?;
        Ok(self.left_quotient(sym))
    }

    pub fn left_quotient(&self, sym: Sym) -> Nfa {
        let start = self.closure(self.initials.iter().copied());
        let next = self.step_set(&start, sym);
        let mut out = self.clone();
        out.initials = next.into_iter().collect();
        out
    }

    /// `{ y | y·s ∈ L }`.
    pub fn right_quotient(&self, sym: Sym) -> Nfa {
        self.reverse().left_quotient(sym).reverse()
    }

    /// Image under a homomorphism given by symbol names.
    pub fn word_homomorphism(
        &self,
        target: &Alphabet,
        map: &BTreeMap<String, Vec<String>>,
    ) -> Result<Nfa> {
        let mut images = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.symbols() {
            let image = map
                .get(name)
                .ok_or_else(|| Error::MissingMapping(name.clone()))?;
            images.push(
                image
                    .iter()
                    .map(|s| target.sym(s))
                    .collect::<Result<Word>>()?,
            );
        }
        Ok(self.homomorphism(target, &images))
    }

    /// Image under a homomorphism given by one target word per symbol.
    /// Erased symbols become ε-edges and longer images become chains.
    pub fn homomorphism(&self, target: &Alphabet, images: &[Word]) -> Nfa {
        let mut out = Nfa::new(target.clone());
        for s in 0..self.num_states() {
            out.add_state(self.finals[s]);
        }
        out.initials = self.initials.clone();
        for (p, l, q) in self.edges() {
            let image: &[Sym] = match l {
                None => &[],
                Some(s) => &images[s],
            };
            match image.len() {
                0 => out.add_edge(p, None, q),
                1 => out.add_edge(p, Some(image[0]), q),
                _ => {
                    let mut cur = p;
                    for (i, &t) in image.iter().enumerate() {
                        let next = if i + 1 == image.len() {
                            q
                        } else {
                            out.add_state(false)
                        };
                        out.add_edge(cur, Some(t), next);
                        cur = next;
                    }
                }
            }
        }
        out
    }

    /// Re-expresses the automaton over a superset alphabet.
    pub fn embed(&self, target: &Alphabet) -> Result<Nfa> {
        let map: Vec<Sym> = self
            .alphabet
            .symbols()
            .iter()
            .map(|s| target.sym(s))
            .collect::<Result<_>>()?;
        Ok(self.relabel(target, |s| Some(map[s])))
    }

    /// Keeps only edges whose labels belong to `target`:
    /// `L(result) = L(self) ∩ target*`.
    pub fn restrict(&self, target: &Alphabet) -> Nfa {
        let map: Vec<Option<Sym>> = self
            .alphabet
            .symbols()
            .iter()
            .map(|s| target.get(s))
            .collect();
        self.relabel(target, |s| map[s])
    }

    fn relabel(&self, target: &Alphabet, f: impl Fn(Sym) -> Option<Sym>) -> Nfa {
        let mut out = Nfa::new(target.clone());
        for s in 0..self.num_states() {
            out.add_state(self.finals[s]);
        }
        out.initials = self.initials.clone();
        for (p, l, q) in self.edges() {
            match l {
                None => out.add_edge(p, None, q),
                Some(s) => {
                    if let Some(t) = f(s) {
                        out.add_edge(p, Some(t), q)
                    }
                }
            }
        }
        out
    }

    /// A word in the symmetric difference, or `None` when the languages agree.
    pub fn difference_witness(&self, other: &Nfa) -> Result<Option<Word>> {
        let left = self.intersect(&other.complement())?.is_empty();
        let right = other.intersect(&self.complement())?.is_empty();
        Ok(match (left.witness, right.witness) {
            (Some(a), Some(b)) => Some(if (b.len(), &b) < (a.len(), &a) { b } else { a }),
            (a, b) => a.or(b),
        })
    }

    pub fn equivalent(&self, other: &Nfa) -> Result<bool> {
        Ok(self.difference_witness(other)?.is_none())
    }

    /// Accepted words of length at most `max_len`, shortest-then-lexicographic.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut layer = vec![(Vec::new(), self.closure(self.initials.iter().copied()))];
        for len in 0..=max_len {
            for (w, set) in &layer {
                if set.iter().any(|&s| self.finals[s]) && seen.insert(w.clone()) {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, set) in &layer {
                for sym in 0..self.alphabet.len() {
                    let n = self.step_set(set, sym);
                    if !n.is_empty() {
                        let mut v = w.clone();
                        v.push(sym);
                        next.push((v, n));
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn to_doc(&self) -> NfaDoc {
        let mut edges: Vec<(StateId, Label, StateId)> = self.edges().collect();
        edges.sort_by_key(|&(p, l, q)| (p, l.map_or(0, |s| s + 1), q));
        NfaDoc {
            alphabet: self.alphabet.symbols().to_vec(),
            states: self.num_states(),
            initials: self.initials.iter().copied().collect(),
            finals: self.finals().collect(),
            edges: edges
                .into_iter()
                .map(|(p, l, q)| (p, l.map_or(String::new(), |s| self.alphabet.name(s).to_string()), q))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_doc(doc: &NfaDoc) -> Result<Nfa> {
        let alphabet = Alphabet::new(doc.alphabet.iter().cloned())?;
        let edges = doc
            .edges
            .iter()
            .map(|(p, l, q)| {
                let label = if l.is_empty() {
                    None
                } else {
                    Some(alphabet.sym(l)?)
                };
                Ok((*p, label, *q))
            })
            .collect::<Result<Vec<_>>>()?;
        Nfa::from_parts(alphabet, doc.states, &doc.initials, &doc.finals, &edges)
    }

    pub fn from_json(text: &str) -> Result<Nfa> {
        Self::from_doc(&serde_json::from_str(text)?)
    }
}

/// Serialized form of an [`Nfa`]. Indices are 0-based; an empty label is ε.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfaDoc {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initials: Vec<StateId>,
    pub finals: Vec<StateId>,
    pub edges: Vec<(StateId, String, StateId)>,
}

/// Complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn next(&self, s: StateId, sym: Sym) -> StateId {
        self.delta[s][sym]
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s]
    }

    pub fn run(&self, from: StateId, word: &[Sym]) -> StateId {
        word.iter().fold(from, |s, &sym| self.delta[s][sym])
    }

    pub fn accepts(&self, word: &[Sym]) -> bool {
        self.finals[self.run(self.initial, word)]
    }

    /// States from which some final state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (p, row) in self.delta.iter().enumerate() {
            for &q in row {
                rev[q].push(p);
            }
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<StateId> = (0..n).filter(|&s| live[s]).collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Moore partition refinement followed by canonical renumbering.
    pub fn minimize(&self) -> Dfa {
        let n = self.num_states();
        let mut class: Vec<usize> = self.finals.iter().map(|&f| usize::from(f)).collect();
        let mut count = class.iter().collect::<HashSet<_>>().len();
        loop {
            let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for s in 0..n {
                let mut sig = Vec::with_capacity(self.alphabet.len() + 1);
                sig.push(class[s]);
                sig.extend(self.delta[s].iter().map(|&t| class[t]));
                let fresh = sigs.len();
                next[s] = *sigs.entry(sig).or_insert(fresh);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut delta = vec![Vec::new(); count];
        let mut finals = vec![false; count];
        for s in 0..n {
            let c = class[s];
            if delta[c].is_empty() {
                delta[c] = self.delta[s].iter().map(|&t| class[t]).collect();
            }
            finals[c] = self.finals[s];
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: class[self.initial],
            finals,
        }
        .canonical()
    }

    /// Renumbers reachable states in breadth-first order from the initial
    /// state, visiting symbols in alphabet order. Two minimal DFAs for the
    /// same language become structurally equal.
    pub fn canonical(&self) -> Dfa {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial];
        map[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.delta[order[i]] {
                if map[t] == usize::MAX {
                    map[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta: order
                .iter()
                .map(|&s| self.delta[s].iter().map(|&t| map[t]).collect())
                .collect(),
            initial: 0,
            finals: order.iter().map(|&s| self.finals[s]).collect(),
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut out = Nfa::new(self.alphabet.clone());
        for s in 0..self.num_states() {
            out.add_state(self.finals[s]);
        }
        out.set_initial(self.initial);
        for (p, row) in self.delta.iter().enumerate() {
            for (sym, &q) in row.iter().enumerate() {
                out.add_edge(p, Some(sym), q);
            }
        }
        out
    }

    /// Reads an NFA that happens to be deterministic and complete.
    pub fn from_nfa(nfa: &Nfa) -> Option<Dfa> {
        if nfa.has_epsilon() || nfa.initials.len() != 1 {
            return None;
        }
        let k = nfa.alphabet.len();
        let mut delta = vec![vec![usize::MAX; k]; nfa.num_states()];
        for (p, l, q) in nfa.edges() {
            let s = l?;
            if delta[p][s] != usize::MAX {
                return None;
            }
            delta[p][s] = q;
        }
        if delta.iter().flatten().any(|&t| t == usize::MAX) {
            return None;
        }
        Some(Dfa {
            alphabet: nfa.alphabet.clone(),
            delta,
            initial: *nfa.initials.iter().next()?,
            finals: nfa.finals.clone(),
        })
    }

    /// True when no two distinct states accept the same language.
    pub fn is_minimal(&self) -> bool {
        self.minimize().num_states() == self.canonical().num_states()
    }
}
