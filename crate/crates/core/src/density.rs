//! The density decision for reversal-bounded worktape machines.
//!
//! For every state `q`, `L^q` collects the input words readable between two
//! visits of `q` on one accepting computation. With `R^q` the tape words that
//! `q` sees in the store language, `L^q` is the input image of label
//! sequences `y` from `q` back to `q` such that both the tape before `y` and
//! the tape after `y` lie in `R^q`. All membership checks go through
//! [`pad_closure`], since reconstructed tape words can differ from canonical
//! ones by boundary blanks.
//!
//! `L(M)` is dense iff `inf(L')` is universal, where `L'` is the union of
//! all `L^q` (plus `λ` when `L(M)` is nonempty). When it is not, a word
//! `w ∉ inf(L')` repeated `|Q|+1` times is not an infix of `L(M)`: any
//! computation reading it visits some state twice at copy boundaries.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::nfa::{Dfa, Nfa};
use crate::store::{store_language, StoreNfa};
use crate::tm::{prepare, Move, WorktapeTm};
use crate::{BLANK, HEAD};

/// A sequence of rule indices of one machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelWord {
    pub labels: Vec<usize>,
}

impl LabelWord {
    pub fn new(labels: Vec<usize>) -> Self {
        LabelWord { labels }
    }
}

/// `y` starts in `q`, ends in `q`, chains states, and a stay reading `d`
/// is followed by a rule reading `d`.
pub fn is_valid_for_state(m: &WorktapeTm, y: &LabelWord, q: usize) -> bool {
    let Some(&first) = y.labels.first() else {
        return false;
    };
    if y.labels.iter().any(|&t| t >= m.rules.len()) {
        return false;
    }
    let rules = &m.rules;
    if rules[first].from != q || rules[*y.labels.last().unwrap()].to != q {
        return false;
    }
    y.labels.windows(2).all(|w| {
        let (a, b) = (&rules[w[0]], &rules[w[1]]);
        a.to == b.from && (a.mv != Move::S || a.read == b.read)
    })
}

fn checked(m: &WorktapeTm, y: &LabelWord) -> Result<()> {
    match y.labels.first() {
        Some(&t) if t < m.rules.len() && is_valid_for_state(m, y, m.rules[t].from) => Ok(()),
        _ => Err(Error::InvalidLabelSequence),
    }
}

/// The first rule's read symbol, then the symbol read right after each
/// moving rule that is not the last one.
pub fn trace_read(m: &WorktapeTm, y: &LabelWord) -> Result<Word> {
    checked(m, y)?;
    let r = &m.rules;
    let mut out = vec![r[y.labels[0]].read];
    for w in y.labels.windows(2) {
        if r[w[0]].mv != Move::S {
            out.push(r[w[1]].read);
        }
    }
    Ok(out)
}

/// Symbols written by the moving rules, in order.
pub fn trace_written(m: &WorktapeTm, y: &LabelWord) -> Result<Word> {
    checked(m, y)?;
    Ok(y.labels
        .iter()
        .map(|&t| &m.rules[t])
        .filter(|r| r.mv != Move::S)
        .map(|r| r.write)
        .collect())
}

/// Empty when the last rule moves, else the symbol it reads.
pub fn trace_dot(m: &WorktapeTm, y: &LabelWord) -> Result<Word> {
    checked(m, y)?;
    let last = &m.rules[*y.labels.last().unwrap()];
    Ok(if last.mv == Move::S { vec![last.read] } else { Vec::new() })
}

/// Words whose canonical form lies in `r`. The alphabet of `r` must hold
/// the blank and the head marker; canonicalization strips blanks left of
/// the leftmost meaningful cell and right of the scanned cell, and
/// supplies a scanned blank when nothing follows the marker.
pub fn pad_closure(r: &Nfa) -> Result<Nfa> {
    let alpha = r.alphabet().clone();
    let blank = alpha.sym(BLANK)?;
    let head = alpha.sym(HEAD)?;
    let blanks = Nfa::star_of(alpha.clone(), &[blank]);
    let padded = blanks.concat(r)?.concat(&blanks)?;
    // words ending in `^_` may also drop that scanned blank
    let mut ends = Nfa::new(alpha.clone());
    let e0 = ends.add_state(false);
    let e1 = ends.add_state(false);
    let e2 = ends.add_state(true);
    ends.set_initial(e0);
    for c in 0..alpha.len() {
        if c != head {
            ends.add_edge(e0, Some(c), e0);
        }
    }
    ends.add_edge(e0, Some(head), e1);
    ends.add_edge(e1, Some(blank), e2);
    let cut = blanks.concat(&r.intersect(&ends)?.right_quotient(blank))?;
    Ok(padded.union(&cut)?.trim())
}

/// Γ0 followed by one label per rule.
pub fn label_alphabet(m: &WorktapeTm) -> Alphabet {
    let mut names: Vec<String> = m.tape.symbols().to_vec();
    names.extend((0..m.rules.len()).map(|i| format!("τ{i}")));
    Alphabet::new(names).expect("labels do not clash with tape symbols")
}

/// Breadth-first construction of an automaton from a successor function.
fn explore<K: Clone + Eq + Hash>(
    alphabet: Alphabet,
    init: K,
    succ: impl Fn(&K) -> Vec<(Option<Sym>, K)>,
    is_final: impl Fn(&K) -> bool,
) -> Nfa {
    let mut a = Nfa::new(alphabet);
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let s0 = a.add_state(is_final(&init));
    a.set_initial(s0);
    ids.insert(init.clone(), s0);
    queue.push_back(init);
    while let Some(k) = queue.pop_front() {
        let from = ids[&k];
        for (l, next) in succ(&k) {
            let to = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = a.add_state(is_final(&next));
                    ids.insert(next.clone(), id);
                    queue.push_back(next);
                    id
                }
            };
            a.add_edge(from, l, to);
        }
    }
    a.trim()
}

/// Deterministic view of `pad_closure(R^q)` with its live states.
struct Tracker {
    dfa: Dfa,
    live: Vec<bool>,
    head: Sym,
    blank: Sym,
}

impl Tracker {
    fn new(rq: &Nfa) -> Result<Tracker> {
        let dfa = pad_closure(rq)?.determinize().minimize();
        let live = dfa.live_states();
        let alpha = dfa.alphabet().clone();
        Ok(Tracker {
            live,
            head: alpha.sym(HEAD)?,
            blank: alpha.sym(BLANK)?,
            dfa,
        })
    }

    fn feed(&self, d: usize, word: &[Sym]) -> Option<usize> {
        let d = self.dfa.run(d, word);
        self.live[d].then_some(d)
    }

    fn accepts(&self, d: usize) -> bool {
        self.dfa.is_final(d)
    }
}

fn phase_rules(m: &WorktapeTm, q: usize, banned: Move) -> Vec<usize> {
    let phases = m.phases.as_ref().expect("annotated");
    (0..m.rules.len())
        .filter(|&i| {
            let r = &m.rules[i];
            r.mv != banned && phases[r.from] == phases[q] && phases[r.to] == phases[q]
        })
        .collect()
}

fn check_phase(m: &WorktapeTm, q: usize, want_even: bool) -> Result<usize> {
    if !m.is_normalized() {
        return Err(Error::NotPrepared("normalized with normalize_stays"));
    }
    let phase = m
        .phase(q)
        .ok_or(Error::NotPrepared("phase-annotated with annotate_phases"))?;
    if (phase % 2 == 0) != want_even {
        return Err(Error::WrongPhase {
            state: m.states[q].clone(),
            phase,
            hint: if want_even {
                "odd phases are handled by build_lq_odd"
            } else {
                "even phases are handled by build_lq_even"
            },
        });
    }
    Ok(phase)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Even {
    Mu(usize, usize),
    Y {
        d1: usize,
        d2: usize,
        at: usize,
        // a stay reading this symbol was the previous label
        stay: Option<Sym>,
        read_next: bool,
    },
    Nu(usize, usize),
}

/// `L_1^q` for an even-phase state: words `μ·y·ν` with `y` valid for `q`,
/// `μ ^ trace_read(y) ν` and `μ trace_written(y) ^ trace_dot(y) ν` both in
/// `pad_closure(R^q)`. `rq` is over Γ0 ∪ {^}.
pub fn build_lq_even(m: &WorktapeTm, q: usize, rq: &Nfa) -> Result<Nfa> {
    check_phase(m, q, true)?;
    let alpha = label_alphabet(m);
    let g = m.tape.len();
    if rq.is_empty().holds {
        return Ok(Nfa::empty_language(alpha));
    }
    let tr = Tracker::new(rq)?;
    let labels = phase_rules(m, q, Move::L);
    let d0 = tr.dfa.initial();
    let apply = |d1: usize, d2: usize, t: usize| -> Option<Even> {
        let r = &m.rules[t];
        Some(match r.mv {
            Move::S => Even::Y {
                d1,
                d2,
                at: r.to,
                stay: Some(r.read),
                read_next: false,
            },
            _ => Even::Y {
                d1,
                d2: tr.feed(d2, &[r.write])?,
                at: r.to,
                stay: None,
                read_next: true,
            },
        })
    };
    let succ = |k: &Even| -> Vec<(Option<Sym>, Even)> {
        let mut out = Vec::new();
        match *k {
            Even::Mu(d1, d2) => {
                for c in 0..g {
                    if let (Some(a), Some(b)) = (tr.feed(d1, &[c]), tr.feed(d2, &[c])) {
                        out.push((Some(c), Even::Mu(a, b)));
                    }
                }
                for &t in labels.iter().filter(|&&t| m.rules[t].from == q) {
                    let Some(a) = tr.feed(d1, &[tr.head, m.rules[t].read]) else {
                        continue;
                    };
                    if let Some(next) = apply(a, d2, t) {
                        out.push((Some(g + t), next));
                    }
                }
            }
            Even::Y {
                d1,
                d2,
                at,
                stay,
                read_next,
            } => {
                if at == q {
                    let mut tail = vec![tr.head];
                    tail.extend(stay);
                    if let Some(b) = tr.feed(d2, &tail) {
                        out.push((None, Even::Nu(d1, b)));
                    }
                }
                for &t in &labels {
                    let r = &m.rules[t];
                    if r.from != at || stay.is_some_and(|d| d != r.read) {
                        continue;
                    }
                    let a = if read_next { tr.feed(d1, &[r.read]) } else { Some(d1) };
                    if let Some(next) = a.and_then(|a| apply(a, d2, t)) {
                        out.push((Some(g + t), next));
                    }
                }
            }
            Even::Nu(d1, d2) => {
                for c in 0..g {
                    if let (Some(a), Some(b)) = (tr.feed(d1, &[c]), tr.feed(d2, &[c])) {
                        out.push((Some(c), Even::Nu(a, b)));
                    }
                }
            }
        }
        out
    };
    let fin = |k: &Even| matches!(*k, Even::Nu(a, b) if tr.accepts(a) && tr.accepts(b));
    Ok(explore(alpha, Even::Mu(d0, d0), succ, fin))
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Odd {
    Mu {
        d1: usize,
        d2: usize,
        // the head marker has been placed before the last letter of μ
        marked: bool,
        empty: bool,
    },
    Y {
        d1: usize,
        d2: usize,
        expect: usize,
        cell: Sym,
        prev_read: Sym,
    },
    Nu(usize, usize),
}

/// `L_2^q` for an odd-phase state. The label part `y` lists the rules in
/// reverse time order, so `y` read left to right walks the tape cells left
/// to right. Before `y` the head sits on the rightmost cell of the visited
/// block; afterwards on its leftmost cell when the earliest-in-`y` rule is
/// a stay, and otherwise on the cell to its left (the last letter of `μ`,
/// or a fresh blank when `μ` is empty).
pub fn build_lq_odd(m: &WorktapeTm, q: usize, rq: &Nfa) -> Result<Nfa> {
    check_phase(m, q, false)?;
    let alpha = label_alphabet(m);
    let g = m.tape.len();
    if rq.is_empty().holds {
        return Ok(Nfa::empty_language(alpha));
    }
    let tr = Tracker::new(rq)?;
    let labels = phase_rules(m, q, Move::R);
    let d0 = tr.dfa.initial();
    let succ = |k: &Odd| -> Vec<(Option<Sym>, Odd)> {
        let mut out = Vec::new();
        match *k {
            Odd::Mu {
                d1,
                d2,
                marked,
                empty,
            } => {
                if !marked {
                    for c in 0..g {
                        let Some(a) = tr.feed(d1, &[c]) else { continue };
                        if let Some(b) = tr.feed(d2, &[c]) {
                            out.push((Some(c), Odd::Mu { d1: a, d2: b, marked: false, empty: false }));
                        }
                        if let Some(b) = tr.feed(d2, &[tr.head, c]) {
                            out.push((Some(c), Odd::Mu { d1: a, d2: b, marked: true, empty: false }));
                        }
                    }
                }
                for &t in labels.iter().filter(|&&t| m.rules[t].to == q) {
                    let r = &m.rules[t];
                    let prefix: Vec<Sym> = match r.mv {
                        Move::S if !marked => vec![tr.head, r.read],
                        Move::S => continue,
                        _ if marked => vec![r.write],
                        _ if empty => vec![tr.head, tr.blank, r.write],
                        _ => continue,
                    };
                    if let Some(b) = tr.feed(d2, &prefix) {
                        out.push((
                            Some(g + t),
                            Odd::Y {
                                d1,
                                d2: b,
                                expect: r.from,
                                cell: r.read,
                                prev_read: r.read,
                            },
                        ));
                    }
                }
            }
            Odd::Y {
                d1,
                d2,
                expect,
                cell,
                prev_read,
            } => {
                if expect == q {
                    if let Some(a) = tr.feed(d1, &[tr.head, cell]) {
                        out.push((None, Odd::Nu(a, d2)));
                    }
                }
                for &t in &labels {
                    let r = &m.rules[t];
                    if r.to != expect {
                        continue;
                    }
                    let next = if r.mv == Move::S {
                        if r.read != prev_read {
                            continue;
                        }
                        Some((d1, d2, cell))
                    } else {
                        tr.feed(d1, &[cell])
                            .zip(tr.feed(d2, &[r.write]))
                            .map(|(a, b)| (a, b, r.read))
                    };
                    if let Some((a, b, c)) = next {
                        out.push((
                            Some(g + t),
                            Odd::Y {
                                d1: a,
                                d2: b,
                                expect: r.from,
                                cell: c,
                                prev_read: r.read,
                            },
                        ));
                    }
                }
            }
            Odd::Nu(d1, d2) => {
                for c in 0..g {
                    if let (Some(a), Some(b)) = (tr.feed(d1, &[c]), tr.feed(d2, &[c])) {
                        out.push((Some(c), Odd::Nu(a, b)));
                    }
                }
            }
        }
        out
    };
    let fin = |k: &Odd| matches!(*k, Odd::Nu(a, b) if tr.accepts(a) && tr.accepts(b));
    let init = Odd::Mu {
        d1: d0,
        d2: d0,
        marked: false,
        empty: true,
    };
    Ok(explore(alpha, init, succ, fin))
}

/// `h_Σ`: tape symbols vanish, each label becomes its rule's input letter.
pub fn erase_labels(m: &WorktapeTm, a: &Nfa) -> Nfa {
    let g = m.tape.len();
    let images: Vec<Word> = (0..a.alphabet().len())
        .map(|s| if s < g { Vec::new() } else { m.rules[s - g].input.into_iter().collect() })
        .collect();
    a.homomorphism(&m.input, &images).trim()
}

/// `L^q` over Σ, through the even or odd construction. Contains `λ`
/// whenever `q` lies on an accepting computation.
pub fn lq(m: &WorktapeTm, s: &StoreNfa, q: usize) -> Result<Nfa> {
    let rq = s.quotient(m, q);
    let phase = m
        .phase(q)
        .ok_or(Error::NotPrepared("phase-annotated with annotate_phases"))?;
    let moved = if phase % 2 == 0 {
        erase_labels(m, &build_lq_even(m, q, &rq)?)
    } else {
        // labels were read in reverse time order
        erase_labels(m, &build_lq_odd(m, q, &rq)?).reverse()
    };
    // the zero-step computation from q to q reads λ
    if rq.is_empty().holds {
        Ok(moved)
    } else {
        moved.union(&Nfa::epsilon(m.input.clone()))
    }
}

/// `L' = ⋃_q L^q`, plus `λ` when the machine accepts anything.
pub fn language_prime(m: &WorktapeTm, s: &StoreNfa) -> Result<Nfa> {
    let mut acc = Nfa::empty_language(m.input.clone());
    if !s.nfa.is_empty().holds {
        acc = acc.union(&Nfa::epsilon(m.input.clone()))?;
    }
    for q in 0..m.states.len() {
        acc = acc.union(&lq(m, s, q)?)?;
    }
    Ok(acc.determinize_minimize())
}

/// Sizes of the intermediate automata, in states.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct Sizes {
    pub prepared_states: usize,
    pub store_language: usize,
    pub language_prime: usize,
    pub infix_closure: usize,
}

#[derive(Clone, Debug)]
pub struct DensityVerdict {
    pub dense: bool,
    /// Shortest, then least, word outside `inf(L')`.
    pub witness: Option<Word>,
    /// The witness repeated `|Q|+1` times (`Q` of the prepared machine).
    pub amplified: Option<Word>,
    pub alphabet: Alphabet,
    pub sizes: Sizes,
}

impl DensityVerdict {
    pub fn render(&self, w: &[Sym]) -> String {
        if w.is_empty() {
            "λ".to_string()
        } else {
            self.alphabet.concat(w)
        }
    }

    pub fn line(&self) -> String {
        match (&self.witness, &self.amplified) {
            (Some(w), Some(a)) if !self.dense => format!(
                "NOT DENSE, witness={}, amplified={}",
                self.render(w),
                self.render(a)
            ),
            (Some(w), None) if !self.dense => format!("NOT DENSE, witness={}", self.render(w)),
            _ => "DENSE".to_string(),
        }
    }
}

/// Decides whether `L(m)` is dense. Requires a declared reversal bound.
pub fn is_dense_tm(m: &WorktapeTm) -> Result<DensityVerdict> {
    if m.reversal_bound.is_none() {
        return Err(Error::MissingReversalBound);
    }
    let p = prepare(m)?;
    let s = store_language(&p)?;
    let lp = language_prime(&p, &s)?;
    let inf = lp.infix_closure().determinize_minimize();
    let d = inf.is_universal();
    let amplified = d
        .witness
        .as_ref()
        .map(|w| w.repeat(p.states.len() + 1));
    Ok(DensityVerdict {
        dense: d.holds,
        witness: d.witness,
        amplified,
        alphabet: m.input.clone(),
        sizes: Sizes {
            prepared_states: p.states.len(),
            store_language: s.nfa.num_states(),
            language_prime: lp.num_states(),
            infix_closure: inf.num_states(),
        },
    })
}

/// Density of a regular language: universality of its infix closure.
pub fn is_dense_regular(a: &Nfa) -> DensityVerdict {
    let inf = a.infix_closure();
    let d = inf.is_universal();
    DensityVerdict {
        dense: d.holds,
        witness: d.witness,
        amplified: None,
        alphabet: a.alphabet().clone(),
        sizes: Sizes {
            infix_closure: inf.num_states(),
            ..Default::default()
        },
    }
}
