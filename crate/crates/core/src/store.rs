//! Store languages: the regular set of all `q · x` snapshots (state, then
//! canonical worktape word) that occur on accepting computations.
//!
//! The automaton reads a store word cell by cell and guesses, at every
//! boundary between adjacent cells, the *crossing sequence*: the states the
//! head carries across that boundary over the whole computation, in time
//! order. Directions alternate at a boundary and each return costs a
//! reversal, so with phases annotated the phase strictly increases along a
//! crossing sequence and its length is at most the number of phases. Each
//! sequence is also split at the snapshot time into crossings before and
//! after it.
//!
//! Per cell the automaton replays the visits of the head: entries from the
//! left consume the left sequence, exits to the right extend the right
//! sequence, and so on. Stay rules never write (the machine is normalized),
//! so a cell's content changes only when the head leaves it. The snapshot
//! either falls inside one visit (the head cell) or while the head is
//! elsewhere; in both cases the cell contributes its content at that time.
//! Cells outside the canonical window are blank at the snapshot and
//! contribute nothing.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::alphabet::{Sym, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::tm::{normalize_stays, annotate_phases, Limits, Move, WorktapeTm};
use crate::{BLANK, HEAD};

/// Store language over the machine's store alphabet (state names, then
/// tape symbols, then the head marker).
#[derive(Clone, Debug)]
pub struct StoreNfa {
    pub nfa: Nfa,
}

impl StoreNfa {
    pub fn accepts(&self, word: &[Sym]) -> bool {
        self.nfa.accepts(word)
    }

    /// Left quotient by the state symbol `q`: the tape words paired with
    /// `q`, over Γ0 ∪ {^}.
    pub fn quotient(&self, m: &WorktapeTm, q: usize) -> Nfa {
        let gamma = m.tape_alphabet_with_head();
        self.nfa.left_quotient(q).restrict(&gamma)
    }
}

/// `Q · Γ0* · ^ · Γ0+` restricted to canonical tape words.
pub fn canonical_shape(m: &WorktapeTm) -> Nfa {
    let alpha = m.store_alphabet();
    let n = m.states.len();
    let blank = n + m.blank();
    let head = alpha.sym(HEAD).unwrap();
    let tape: Vec<Sym> = (n..n + m.tape.len()).collect();
    let mut a = Nfa::new(alpha);
    let s0 = a.add_state(false);
    let s1 = a.add_state(false);
    let left = a.add_state(false);
    let marked = a.add_state(false);
    let scanned = a.add_state(true);
    let pending = a.add_state(false);
    a.set_initial(s0);
    for q in 0..n {
        a.add_edge(s0, Some(q), s1);
    }
    a.add_edge(s1, Some(head), marked);
    a.add_edge(left, Some(head), marked);
    for &c in &tape {
        if c != blank {
            a.add_edge(s1, Some(c), left);
            a.add_edge(scanned, Some(c), scanned);
            a.add_edge(pending, Some(c), scanned);
        }
        a.add_edge(left, Some(c), left);
        a.add_edge(marked, Some(c), scanned);
    }
    a.add_edge(scanned, Some(blank), pending);
    a.add_edge(pending, Some(blank), pending);
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Region {
    Before,
    Window,
    After,
}

/// Automaton state between two cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Boundary {
    q: usize,
    crossings: Vec<usize>,
    pre: usize,
    start_seen: bool,
    head_seen: bool,
    end_seen: bool,
    region: Region,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Pos {
    Left,
    Right,
    In(usize),
}

/// Replay state inside one cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Walk {
    ia: usize,
    b: Vec<usize>,
    b_pre: Option<usize>,
    pos: Pos,
    content: Sym,
    post: bool,
    at_snapshot: Option<Sym>,
    head_here: bool,
    start_here: bool,
    end_here: bool,
    done: bool,
}

/// Result of replaying one cell: right crossing sequence, its split, the
/// content at the snapshot and which global events happened here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CellResult {
    b: Vec<usize>,
    b_pre: usize,
    content: Sym,
    head_here: bool,
    start_here: bool,
    end_here: bool,
}

struct Ctx<'a> {
    m: &'a WorktapeTm,
    phases: &'a [usize],
    odd_states: Vec<usize>,
    show_pending: bool,
}

impl Ctx<'_> {
    fn can_push(&self, b: &[usize], s: usize) -> bool {
        b.last().map_or(true, |&l| self.phases[s] > self.phases[l])
    }

    fn cell(&self, x: &Boundary) -> BTreeSet<CellResult> {
        let blank = self.m.blank();
        let mut starts = Vec::new();
        let base = Walk {
            ia: 0,
            b: Vec::new(),
            b_pre: None,
            pos: if x.start_seen { Pos::Left } else { Pos::Right },
            content: blank,
            post: false,
            at_snapshot: None,
            head_here: false,
            start_here: false,
            end_here: false,
            done: false,
        };
        if !x.start_seen {
            starts.push(Walk {
                pos: Pos::In(self.m.initial),
                start_here: true,
                ..base.clone()
            });
        }
        starts.push(base);
        let mut seen: HashSet<Walk> = HashSet::new();
        let mut stack = starts;
        let mut out = BTreeSet::new();
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            if w.done {
                out.insert(CellResult {
                    b: w.b.clone(),
                    b_pre: w.b_pre.unwrap(),
                    content: w.at_snapshot.unwrap(),
                    head_here: w.head_here,
                    start_here: w.start_here,
                    end_here: w.end_here,
                });
                continue;
            }
            self.successors(x, &w, &mut stack);
        }
        out
    }

    fn crossing_allowed(&self, x: &Boundary, w: &Walk) -> bool {
        if w.post {
            w.ia >= x.pre
        } else {
            w.ia < x.pre
        }
    }

    fn successors(&self, x: &Boundary, w: &Walk, out: &mut Vec<Walk>) {
        let a = &x.crossings;
        match w.pos {
            Pos::Left | Pos::Right => {
                let left = w.pos == Pos::Left;
                // the snapshot happens while the head is elsewhere
                if !w.post && w.ia == x.pre && x.head_seen == left {
                    out.push(Walk {
                        post: true,
                        b_pre: Some(w.b.len()),
                        at_snapshot: Some(w.content),
                        ..w.clone()
                    });
                }
                // the computation ends elsewhere
                if w.post && w.ia == a.len() && x.end_seen == left {
                    out.push(Walk {
                        done: true,
                        ..w.clone()
                    });
                }
                if left {
                    if w.ia < a.len() && self.phases[a[w.ia]] % 2 == 0 && self.crossing_allowed(x, w) {
                        out.push(Walk {
                            ia: w.ia + 1,
                            pos: Pos::In(a[w.ia]),
                            ..w.clone()
                        });
                    }
                } else {
                    for &s in &self.odd_states {
                        if self.can_push(&w.b, s) {
                            let mut b = w.b.clone();
                            b.push(s);
                            out.push(Walk {
                                b,
                                pos: Pos::In(s),
                                ..w.clone()
                            });
                        }
                    }
                }
            }
            Pos::In(s) => {
                if !w.post && w.ia == x.pre && s == x.q && !x.head_seen {
                    let shown = match self.m.pending[s] {
                        Some(p) if self.show_pending => p,
                        _ => w.content,
                    };
                    out.push(Walk {
                        post: true,
                        b_pre: Some(w.b.len()),
                        at_snapshot: Some(shown),
                        head_here: true,
                        ..w.clone()
                    });
                }
                if w.post && w.ia == a.len() && !x.end_seen && self.m.is_final(s) {
                    out.push(Walk {
                        done: true,
                        end_here: true,
                        ..w.clone()
                    });
                }
                for r in self.m.rules.iter().filter(|r| r.from == s && r.read == w.content) {
                    match r.mv {
                        Move::S => out.push(Walk {
                            pos: Pos::In(r.to),
                            ..w.clone()
                        }),
                        Move::R => {
                            if self.phases[r.to] % 2 == 0 && self.can_push(&w.b, r.to) {
                                let mut b = w.b.clone();
                                b.push(r.to);
                                out.push(Walk {
                                    b,
                                    pos: Pos::Right,
                                    content: r.write,
                                    ..w.clone()
                                });
                            }
                        }
                        Move::L => {
                            if w.ia < a.len() && a[w.ia] == r.to && self.crossing_allowed(x, w) {
                                out.push(Walk {
                                    ia: w.ia + 1,
                                    pos: Pos::Left,
                                    content: r.write,
                                    ..w.clone()
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Builds the store language of a normalized, phase-annotated machine.
pub fn store_language(m: &WorktapeTm) -> Result<StoreNfa> {
    build(m, false)
}

fn build(m: &WorktapeTm, show_pending: bool) -> Result<StoreNfa> {
    if !m.is_normalized() {
        return Err(Error::NotPrepared("normalized with normalize_stays"));
    }
    let phases = m
        .phases
        .as_ref()
        .ok_or(Error::NotPrepared("phase-annotated with annotate_phases"))?;
    let ctx = Ctx {
        m,
        phases,
        odd_states: (0..m.states.len()).filter(|&s| phases[s] % 2 == 1).collect(),
        show_pending,
    };
    let alpha = m.store_alphabet();
    let n = m.states.len();
    let head = alpha.sym(HEAD).unwrap();
    let blank = m.blank();
    let mut nfa = Nfa::new(alpha);
    let init = nfa.add_state(false);
    nfa.set_initial(init);
    let mut ids: HashMap<Boundary, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for q in 0..n {
        let b = Boundary {
            q,
            crossings: Vec::new(),
            pre: 0,
            start_seen: false,
            head_seen: false,
            end_seen: false,
            region: Region::Before,
        };
        let id = nfa.add_state(false);
        ids.insert(b.clone(), id);
        nfa.add_edge(init, Some(q), id);
        queue.push_back(b);
    }
    let mut cache: HashMap<(Vec<usize>, usize, bool, bool, bool, usize), BTreeSet<CellResult>> =
        HashMap::new();
    while let Some(x) = queue.pop_front() {
        let from = ids[&x];
        if x.crossings.is_empty() && x.start_seen && x.head_seen && x.end_seen {
            nfa.set_final(from, true);
        }
        let key = (
            x.crossings.clone(),
            x.pre,
            x.start_seen,
            x.head_seen,
            x.end_seen,
            x.q,
        );
        let results = cache.entry(key).or_insert_with(|| ctx.cell(&x)).clone();
        for res in results {
            for region in match x.region {
                Region::Before => vec![Region::Before, Region::Window],
                Region::Window => vec![Region::Window, Region::After],
                Region::After => vec![Region::After],
            } {
                let emitted: Word = if region == Region::Window {
                    let mut e = Vec::new();
                    if res.head_here {
                        e.push(head);
                    }
                    e.push(n + res.content);
                    e
                } else if res.head_here || res.content != blank {
                    continue;
                } else {
                    Vec::new()
                };
                let y = Boundary {
                    q: x.q,
                    crossings: res.b.clone(),
                    pre: res.b_pre,
                    start_seen: x.start_seen || res.start_here,
                    head_seen: x.head_seen || res.head_here,
                    end_seen: x.end_seen || res.end_here,
                    region,
                };
                let to = match ids.get(&y) {
                    Some(&id) => id,
                    None => {
                        let id = nfa.add_state(false);
                        ids.insert(y.clone(), id);
                        queue.push_back(y);
                        id
                    }
                };
                let mut cur = from;
                for (i, &sym) in emitted.iter().enumerate() {
                    let next = if i + 1 == emitted.len() { to } else { nfa.add_state(false) };
                    nfa.add_edge(cur, Some(sym), next);
                    cur = next;
                }
                if emitted.is_empty() && from != to {
                    nfa.add_edge(from, None, to);
                }
            }
        }
    }
    let shaped = nfa.trim().intersect(&canonical_shape(m))?;
    Ok(StoreNfa {
        nfa: shaped.trim(),
    })
}

/// Prepares `m` (stay normalization, then phase annotation) and returns
/// both the prepared machine and its store language.
pub fn prepared_store_language(m: &WorktapeTm) -> Result<(WorktapeTm, StoreNfa)> {
    let p = annotate_phases(&normalize_stays(m))?;
    let s = store_language(&p)?;
    Ok((p, s))
}

/// Store language of `m` itself, over `m`'s store alphabet: the store
/// language of the prepared machine with every derived state renamed back
/// to the state it came from. A stay-write the prepared machine still
/// owes is shown on the scanned cell, as in `m`.
pub fn store_language_of(m: &WorktapeTm) -> Result<Nfa> {
    let p = annotate_phases(&normalize_stays(m))?;
    let s = build(&p, true)?;
    let target = m.store_alphabet();
    let source = p.store_alphabet();
    let images: Vec<Word> = (0..source.len())
        .map(|i| {
            let name = if i < p.states.len() {
                p.origin[i].as_str()
            } else {
                source.name(i)
            };
            vec![target.sym(name).expect("origin names are source states")]
        })
        .collect();
    Ok(s.nfa.homomorphism(&target, &images).trim())
}

/// Outcome of checking a store automaton against the bounded engine.
#[derive(Clone, Debug, Default)]
pub struct StoreReport {
    /// Words found by bounded search but rejected by the automaton.
    pub missing: Vec<Word>,
    /// Automaton words confirmed by a witnessing run.
    pub confirmed: usize,
    /// Automaton words for which no run was found within the limits.
    pub unconfirmed: Vec<Word>,
    pub oracle_size: usize,
}

impl StoreReport {
    pub fn sound(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn lines(&self, m: &WorktapeTm) -> Vec<String> {
        let a = m.store_alphabet();
        let mut out = vec![format!(
            "oracle words: {}, missing from automaton: {}",
            self.oracle_size,
            self.missing.len()
        )];
        for w in &self.missing {
            out.push(format!("MISSING {}", a.concat(w)));
        }
        out.push(format!("confirmed automaton words: {}", self.confirmed));
        for w in &self.unconfirmed {
            out.push(format!("unconfirmed (bounds) {}", a.concat(w)));
        }
        out
    }
}

/// Compares `s` (over `m`'s store alphabet) with bounded enumeration:
/// every enumerated word must be accepted, and every automaton word of
/// length at most `max_len` is looked up among the enumerated ones.
pub fn verify_store_against_oracle(m: &WorktapeTm, s: &Nfa, limits: Limits, max_len: usize) -> StoreReport {
    let sample = m.enumerate_store_bounded(limits);
    let mut report = StoreReport {
        oracle_size: sample.len(),
        ..Default::default()
    };
    for w in sample.words.keys() {
        if !s.accepts(w) {
            report.missing.push(w.clone());
        }
    }
    for w in s.words_up_to(max_len) {
        if sample.contains(&w) {
            report.confirmed += 1;
        } else {
            report.unconfirmed.push(w);
        }
    }
    report
}

/// Renders the blank-free shape check used in tests and the CLI.
pub fn is_canonical_store_word(m: &WorktapeTm, w: &[Sym]) -> bool {
    let n = m.states.len();
    let head = n + m.tape.len();
    let blank = n + m.tape.get(BLANK).unwrap();
    if w.len() < 3 || w[0] >= n || w.iter().filter(|&&c| c == head).count() != 1 {
        return false;
    }
    let at = w.iter().position(|&c| c == head).unwrap();
    at + 1 < w.len()
        && w[1..].iter().all(|&c| c >= n)
        && (at == 1 || w[1] != blank)
        && (at + 2 == w.len() || *w.last().unwrap() != blank)
}
