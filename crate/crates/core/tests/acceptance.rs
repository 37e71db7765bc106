//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Tolerances are exact unless a
//! line says otherwise; time limits are checked as stated.

mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::{random_bounded_tm, random_nfa, re, words, ConfigGraph, Raw};
use tmdensity::alphabet::{Alphabet, Word};
use tmdensity::aux::AuxMachine;
use tmdensity::compile::compile;
use tmdensity::density::{is_dense_regular, is_dense_tm, language_prime, lq};
use tmdensity::fixtures;
use tmdensity::gadgets::{
    build_halting_dpda, build_unary_gadget, halting_encoding, marked_concat_universe,
    well_formed_strings, z_halt2, z_loop,
};
use tmdensity::store::{store_language, store_language_of};
use tmdensity::text::{parse, Machine};
use tmdensity::tm::{prepare, Configuration, Limits, Move, Outcome, Tape, WorktapeTm};
use tmdensity::Nfa;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(failures: &[String], summary: String) -> Verdict {
    let mut detail = summary;
    for f in failures.iter().take(5) {
        detail.push_str(&format!("\n    {f}"));
    }
    if failures.len() > 5 {
        detail.push_str(&format!("\n    ... {} more", failures.len() - 5));
    }
    Verdict {
        pass: failures.is_empty(),
        detail,
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn show(a: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "λ".into()
    } else {
        a.concat(w)
    }
}

// 1. language operations against their definitions

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let sigma = Alphabet::user(["a", "b"]).unwrap();
    let (a_sym, b_sym) = (0, 1);
    let ws = words(2, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut fails = Vec::new();
    let mut checks = 0usize;
    let nfas: Vec<Nfa> = (0..100).map(|_| random_nfa(&mut rng, &sigma, 6)).collect();
    for i in 0..nfas.len() {
        let a = &nfas[i];
        let b = &nfas[(i + 1) % nfas.len()];
        let ra = Raw::of(a);
        let rb = Raw::of(b);
        let mut check = |op: &str, result: &Nfa, def: &dyn Fn(&Word) -> bool| {
            let r = Raw::of(result);
            for w in &ws {
                checks += 1;
                if r.accepts(w) != def(w) {
                    fails.push(format!("nfa {i}: {op} disagrees on {}", show(&sigma, w)));
                    return;
                }
            }
        };
        check("union", &a.union(b).unwrap(), &|w| ra.accepts(w) || rb.accepts(w));
        check("intersect", &a.intersect(b).unwrap(), &|w| ra.accepts(w) && rb.accepts(w));
        check("concat", &a.concat(b).unwrap(), &|w| {
            (0..=w.len()).any(|k| ra.accepts(&w[..k]) && rb.accepts(&w[k..]))
        });
        check("complement", &a.complement(), &|w| !ra.accepts(w));
        check("reverse", &a.reverse(), &|w| {
            let r: Word = w.iter().rev().copied().collect();
            ra.accepts(&r)
        });
        check("remove_epsilons", &a.remove_epsilons(), &|w| ra.accepts(w));
        check("trim", &a.trim(), &|w| ra.accepts(w));
        check("determinize", &a.determinize().to_nfa(), &|w| ra.accepts(w));
        check("minimize", &a.determinize_minimize(), &|w| ra.accepts(w));
        check("left_quotient", &a.left_quotient(a_sym), &|w| {
            let mut v = vec![a_sym];
            v.extend_from_slice(w);
            ra.accepts(&v)
        });
        check("right_quotient", &a.right_quotient(b_sym), &|w| {
            let mut v = w.clone();
            v.push(b_sym);
            ra.accepts(&v)
        });
        // h(a) = b, h(b) = ab; a prefix code, so preimages are unique
        let images = vec![vec![b_sym], vec![a_sym, b_sym]];
        check("homomorphism", &a.homomorphism(&sigma, &images), &|w| {
            let mut x = Vec::new();
            let mut k = 0;
            while k < w.len() {
                if w[k] == b_sym {
                    x.push(a_sym);
                    k += 1;
                } else if k + 1 < w.len() && w[k + 1] == b_sym {
                    x.push(b_sym);
                    k += 2;
                } else {
                    return false;
                }
            }
            ra.accepts(&x)
        });
        // uwv with |u|, |v| bounded by the state count
        let n = a.num_states();
        let short = words(2, n);
        let mut prefix_sets: Vec<Vec<bool>> = short.iter().map(|u| ra.read(&ra.start(), u)).collect();
        prefix_sets.sort();
        prefix_sets.dedup();
        let tail_ok: Vec<bool> = (0..ra.n)
            .map(|p| {
                let mut s = vec![false; ra.n];
                s[p] = true;
                short.iter().any(|v| {
                    ra.read(&s, v).iter().zip(&ra.finals).any(|(&x, &f)| x && f)
                })
            })
            .collect();
        check("infix_closure", &a.infix_closure(), &|w| {
            prefix_sets
                .iter()
                .any(|s| ra.read(s, w).iter().enumerate().any(|(p, &x)| x && tail_ok[p]))
        });

        checks += 4;
        let accepted: Vec<&Word> = ws.iter().filter(|w| ra.accepts(w)).collect();
        let e = a.is_empty();
        if e.holds != accepted.is_empty() || e.witness.as_ref() != accepted.first().copied() {
            fails.push(format!("nfa {i}: is_empty or its witness"));
        }
        let u = a.is_universal();
        let first_rejected = ws.iter().find(|w| !ra.accepts(w));
        let universal_ok = match (&u.witness, first_rejected) {
            (None, None) => u.holds,
            (Some(w), Some(r)) => !u.holds && w == r,
            (Some(w), None) => !u.holds && w.len() > 6 && !ra.accepts(w),
            (None, Some(_)) => false,
        };
        if !universal_ok {
            fails.push(format!("nfa {i}: is_universal or its witness"));
        }
        let listed: BTreeSet<Word> = a.words_up_to(6).into_iter().collect();
        let brute: BTreeSet<Word> = accepted.into_iter().cloned().collect();
        if listed != brute {
            fails.push(format!("nfa {i}: words_up_to"));
        }
        if !a.equivalent(&a.determinize_minimize()).unwrap() {
            fails.push(format!("nfa {i}: equivalent to its minimal DFA"));
        }
    }
    let el = t.elapsed();
    if el > Duration::from_secs(60) {
        fails.push(format!("runtime {} exceeds 60s", secs(el)));
    }
    verdict(
        &fails,
        format!("100 random NFAs, 16 operations, {checks} membership checks on |w| <= 6, {}", secs(el)),
    )
}

// 2. one-step semantics

fn step_machine(rules: &[&str]) -> WorktapeTm {
    let mut m = WorktapeTm::new(
        vec!["p".into(), "q".into(), "r".into()],
        Alphabet::user(["a", "b"]).unwrap(),
        Alphabet::new(["_", "X", "Y"]).unwrap(),
        "p",
        &[],
    )
    .unwrap();
    for r in rules {
        let t: Vec<&str> = r.split_whitespace().collect();
        let input = (t[1] != "-").then_some(t[1]);
        m.add_rule(t[0], input, t[2], t[3], Move::parse(t[4]).unwrap(), t[5]).unwrap();
    }
    m
}

fn tape_of(m: &WorktapeTm, s: &str) -> Tape {
    let (l, r) = s.split_once('^').unwrap();
    let sym = |c: char| m.tape.sym(&c.to_string()).unwrap();
    let mut right: Vec<usize> = r.chars().map(sym).collect();
    let scanned = right.remove(0);
    Tape {
        left: l.chars().map(sym).collect(),
        scanned,
        right,
    }
}

fn criterion_2() -> Verdict {
    let t = Instant::now();
    // (rules, state, remaining input, tape, expected successors)
    let table: [(&[&str], &str, &str, &str, &[&str]); 25] = [
        (&["p - X Y S q"], "p", "", "^X", &["q||^Y"]),
        (&["p - X _ S q"], "p", "", "^X", &["q||^_"]),
        (&["p a X X S q"], "p", "ab", "Y^X", &["q|b|Y^X"]),
        (&["p - X Y R q"], "p", "", "Y^XX", &["q||YY^X"]),
        (&["p - X Y R q"], "p", "", "Y^X", &["q||YY^_"]),
        (&["p - X _ R q"], "p", "", "^XY", &["q||^Y"]),
        (&["p - _ _ R q"], "p", "", "^_", &["q||^_"]),
        (&["p - _ X R q"], "p", "", "^_", &["q||X^_"]),
        (&["p - X _ R q"], "p", "", "Y^XX", &["q||Y_^X"]),
        (&["p - X Y L q"], "p", "", "Y^XX", &["q||^YYX"]),
        (&["p - X Y L q"], "p", "", "^XX", &["q||^_YX"]),
        (&["p - X _ L q"], "p", "", "Y^X", &["q||^Y"]),
        (&["p - _ _ L q"], "p", "", "^_", &["q||^_"]),
        (&["p - X _ L q"], "p", "", "^XY", &["q||^__Y"]),
        (&["p - _ X L q"], "p", "", "Y^_", &["q||^YX"]),
        (&["p a X X R q"], "p", "b", "^X", &[]),
        (&["p a X X R q"], "p", "", "^X", &[]),
        (&["p - X X R q"], "p", "ab", "^X", &["q|ab|X^_"]),
        (&["p - Y Y R q"], "p", "", "^X", &[]),
        (&["q - X X R q"], "p", "", "^X", &[]),
        (&["p - X X R q", "p - X Y L r"], "p", "", "^X", &["q||X^_", "r||^_Y"]),
        (&["p a X X S q", "p - X X S r"], "p", "a", "^X", &["q||^X", "r|a|^X"]),
        (&["p - _ X R q"], "p", "", "Y^_Y", &["q||YX^Y"]),
        (&["p - _ _ L q"], "p", "", "Y^_Y", &["q||^Y_Y"]),
        (&["p - X _ R q"], "p", "", "^X_Y", &["q||^_Y"]),
    ];
    let mut fails = Vec::new();
    for (i, (rules, state, input, tape, expected)) in table.iter().enumerate() {
        let m = step_machine(rules);
        let c = Configuration {
            state: m.state(state).unwrap(),
            remaining: m.input.parse_word(input).unwrap(),
            tape: tape_of(&m, tape),
        };
        let got: BTreeSet<String> = m
            .step(&c)
            .unwrap()
            .iter()
            .map(|n| {
                format!(
                    "{}|{}|{}",
                    m.states[n.state],
                    m.input.concat(&n.remaining),
                    m.render_tape(&n.tape)
                )
            })
            .collect();
        let want: BTreeSet<String> = expected.iter().map(|s| s.to_string()).collect();
        if got != want {
            fails.push(format!("case {}: {rules:?} on {state},{input},{tape}: got {got:?}, want {want:?}", i + 1));
        }
    }
    verdict(&fails, format!("25-case successor table, exact match, {}", secs(t.elapsed())))
}

// 3. store languages

fn criterion_3() -> Verdict {
    let t = Instant::now();
    let mut fails = Vec::new();
    let analytic = [
        ("all", fixtures::all(), "q0 ^ _"),
        ("writer", fixtures::writer(), "q0 ^ _ | q X+ ^ _"),
        (
            "anbn",
            fixtures::anbn(),
            "q0 ^ _ | qa X+ ^ _ | qb X* ^ X X* | qb ^ _ X+ | qf ^ _ X+",
        ),
    ];
    for (name, m, pattern) in &analytic {
        let s = store_language_of(m).unwrap();
        let expected = re(&m.store_alphabet(), pattern);
        match s.difference_witness(&expected).unwrap() {
            None => {}
            Some(w) => fails.push(format!("{name}: differs on {}", m.store_alphabet().concat(&w))),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut sampled = 0;
    for i in 0..10 {
        let k = i % 3;
        let m = random_bounded_tm(&mut rng, k, 4);
        let s = store_language_of(&m).unwrap();
        let sample = m.enumerate_store_bounded(Limits::new(10_000, 10));
        sampled += sample.len();
        for w in sample.words.keys() {
            if !s.accepts(w) {
                fails.push(format!("random machine {i}: missing {}", m.store_alphabet().concat(w)));
            }
        }
    }
    verdict(
        &fails,
        format!(
            "all, writer, anbn equal their hand-derived S(M); 10 random machines (k <= 2, <= 4 states): {sampled} enumerated store words all accepted, {}",
            secs(t.elapsed())
        ),
    )
}

fn fixture_machines() -> Vec<(&'static str, WorktapeTm)> {
    let mut out = vec![
        ("all", fixtures::all()),
        ("writer", fixtures::writer()),
        ("anbn", fixtures::anbn()),
        ("two_reversals", fixtures::two_reversals()),
    ];
    let aux: [(&'static str, AuxMachine); 6] = [
        ("pda_anbn", fixtures::pda_anbn()),
        ("queue_ab", fixtures::queue_ab()),
        ("queue_anban", fixtures::queue_anban()),
        ("stack_single", fixtures::stack_single()),
        ("stack_anbncn", fixtures::stack_anbncn()),
        ("flip_copy", fixtures::flip_copy()),
    ];
    for (name, m) in aux {
        out.push((name, compile(&m).unwrap()));
    }
    out
}

// 4. per-state languages against the between-visits oracle

fn criterion_4() -> Verdict {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut states = 0;
    let mut checks = 0;
    let mut truncated = Vec::new();
    for (name, m) in fixture_machines() {
        let p = prepare(&m).unwrap();
        let s = store_language(&p).unwrap();
        let g = ConfigGraph::explore(&p, 10, 200_000);
        if !g.complete {
            truncated.push(name);
        }
        let ws = words(p.input.len(), 5);
        for q in 0..p.states.len() {
            states += 1;
            let l = Raw::of(&lq(&p, &s, q).unwrap());
            for w in &ws {
                checks += 1;
                let construction = l.accepts(w);
                let oracle = g.between_visits(q, w);
                if construction != oracle {
                    fails.push(format!(
                        "{name}, state {}: {} is {} by the construction, {} by search",
                        p.states[q],
                        show(&p.input, w),
                        if construction { "accepted" } else { "rejected" },
                        if oracle { "found" } else { "not found" },
                    ));
                }
            }
        }
    }
    let el = t.elapsed();
    if el > Duration::from_secs(300) {
        fails.push(format!("runtime {} exceeds 5 min", secs(el)));
    }
    verdict(
        &fails,
        format!(
            "{states} prepared states over {} machines, {checks} words |s| <= 5; search bound 10 cells (cut on: {}), {}",
            fixture_machines().len(),
            if truncated.is_empty() { "none".to_string() } else { truncated.join(", ") },
            secs(el)
        ),
    )
}

// 5. verdicts with known answers

fn pda_universe() -> AuxMachine {
    let text = "model pda\nreversals 1\ninput a b\nstack A\nstates q0 q1\ninitial q0\nfinal q1\n\
                t q0 a - A q0\nt q0 b - A q0\nt q0 - - - q1\nt q1 - A - q1\n";
    match parse(text).unwrap() {
        Machine::Aux(m) => m,
        _ => unreachable!(),
    }
}

fn criterion_5() -> Verdict {
    let mut fails = Vec::new();
    let mut notes = Vec::new();
    let cases: Vec<(&str, WorktapeTm, bool)> = vec![
        ("all", fixtures::all(), true),
        ("writer", fixtures::writer(), true),
        ("anbn", fixtures::anbn(), false),
        ("pda_anbn", compile(&fixtures::pda_anbn()).unwrap(), false),
        ("pda_universe", compile(&pda_universe()).unwrap(), true),
        ("queue_anban", compile(&fixtures::queue_anban()).unwrap(), false),
        ("stack_anbncn", compile(&fixtures::stack_anbncn()).unwrap(), false),
        ("flip_copy", compile(&fixtures::flip_copy()).unwrap(), false),
    ];
    let mut slowest = Duration::ZERO;
    for (name, m, dense) in &cases {
        let t = Instant::now();
        let v = is_dense_tm(m).unwrap();
        let el = t.elapsed();
        slowest = slowest.max(el);
        if el > Duration::from_secs(10) {
            fails.push(format!("{name}: decision took {}", secs(el)));
        }
        if v.dense != *dense {
            fails.push(format!("{name}: got {}", v.line()));
        }
    }

    // anbn: L' is a* + b*, so the least word outside inf(L') contains both letters
    let m = fixtures::anbn();
    let p = prepare(&m).unwrap();
    let s = store_language(&p).unwrap();
    let lp = language_prime(&p, &s).unwrap();
    let analytic = re(&m.input, "a* | b*");
    if !lp.equivalent(&analytic).unwrap() {
        fails.push("anbn: L' is not a* + b*".into());
    }
    let raw = Raw::of(&analytic);
    let expected = words(2, 4)
        .into_iter()
        .find(|w| {
            !words(2, 3).iter().any(|u| {
                words(2, 3).iter().any(|v| {
                    let mut x = u.clone();
                    x.extend(w);
                    x.extend(v);
                    raw.accepts(&x)
                })
            })
        })
        .unwrap();
    let v = is_dense_tm(&m).unwrap();
    if v.witness.as_ref() != Some(&expected) {
        fails.push(format!("anbn: witness {:?}, least word outside inf(L') is {}", v.witness, show(&m.input, &expected)));
    }
    let g = ConfigGraph::explore(&m, 12, 100_000);
    let ba = m.input.parse_word("ba").unwrap();
    if !g.has_infix(&ba) && !analytic.infix_closure().accepts(&ba) {
        notes.push(format!(
            "anbn witness={} (least word outside inf(L')); \"ba\" also lies outside both inf(L) and inf(L') but is not the least such word",
            show(&m.input, v.witness.as_deref().unwrap_or(&[]))
        ));
    } else {
        fails.push("anbn: \"ba\" unexpectedly an infix".into());
    }
    let mut summary = format!(
        "{} verdicts exact (3 dense, 5 not dense, 5 via compilation), slowest decision {}",
        cases.len(),
        secs(slowest)
    );
    for n in notes {
        summary.push_str(&format!("\n    note: {n}"));
    }
    verdict(&fails, summary)
}

// 6. the two halves of the main equivalence

fn criterion_6() -> Verdict {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut parts = Vec::new();
    let mut machines = fixture_machines();
    machines.push(("pda_universe", compile(&pda_universe()).unwrap()));
    for (name, m) in machines {
        let v = is_dense_tm(&m).unwrap();
        if v.dense {
            let g = ConfigGraph::explore(&m, 12, 100_000);
            let missing: Vec<Word> = words(m.input.len(), 5).into_iter().filter(|w| !g.has_infix(w)).collect();
            if let Some(w) = missing.first() {
                fails.push(format!("{name}: dense, but {} is not an infix within bounds", show(&m.input, w)));
            }
            parts.push(format!("{name} dense"));
        } else {
            let amp = v.amplified.clone().unwrap();
            let g = ConfigGraph::explore(&m, amp.len() + 6, 100_000);
            if g.has_infix(&amp) {
                fails.push(format!("{name}: amplified witness {} found as an infix", show(&m.input, &amp)));
            }
            parts.push(format!("{name} |w^(|Q|+1)|={}", amp.len()));
        }
    }
    verdict(
        &fails,
        format!("{}; search up to 10^5 configurations, {}", parts.join(", "), secs(t.elapsed())),
    )
}

// 7. compilers preserve the language

fn criterion_7() -> Verdict {
    let t = Instant::now();
    let mut fails = Vec::new();
    let groups: [(&str, [AuxMachine; 3]); 4] = [
        ("pda", [fixtures::pda_anbn(), fixtures::pda_lambda(), fixtures::pda_empty()]),
        ("queue", [fixtures::queue_ab(), fixtures::queue_anban(), fixtures::queue_empty()]),
        ("stack", [fixtures::stack_anbncn(), fixtures::stack_single(), fixtures::stack_empty()]),
        ("flip", [fixtures::flip_copy(), fixtures::flip_zero(), fixtures::flip_empty()]),
    ];
    let mut checks = 0;
    for (kind, machines) in groups {
        for (i, src) in machines.iter().enumerate() {
            let dst = compile(src).unwrap();
            for w in words(src.input.len(), 6) {
                checks += 1;
                let a = src.accepts_bounded_aux(&w, Limits::default()).unwrap();
                let b = dst.accepts_bounded(&w, Limits::default());
                if a == Outcome::BoundExceeded || b == Outcome::BoundExceeded || a != b {
                    fails.push(format!("{kind} fixture {i} on {}: source {a}, compiled {b}", show(&src.input, &w)));
                }
            }
        }
    }
    verdict(
        &fails,
        format!("4 compilers x 3 fixtures, {checks} words |w| <= 6, no bound exceeded, {}", secs(t.elapsed())),
    )
}

// 8. reduction gadgets

fn dpda_accepts(m: &AuxMachine, toks: &[String]) -> bool {
    let w: Vec<usize> = toks.iter().map(|t| m.input.sym(t).unwrap()).collect();
    m.accepts_bounded_aux(&w, Limits::new(10_000, 1_000)).unwrap() == Outcome::Accepted
}

fn criterion_8() -> Verdict {
    let t = Instant::now();
    let mut fails = Vec::new();

    let z = z_halt2();
    let g = build_halting_dpda(&z).unwrap();
    let enc = halting_encoding(&z, 100).unwrap();
    let strings = well_formed_strings(&z, enc.len());
    let accepted: Vec<&Vec<String>> = strings.iter().filter(|s| dpda_accepts(&g, s)).collect();
    if accepted != vec![&enc] {
        fails.push(format!("z_halt2: {} accepted well-formed strings", accepted.len()));
    }

    let z = z_loop();
    let g = build_halting_dpda(&z).unwrap();
    let loop_strings = well_formed_strings(&z, 12);
    if loop_strings.iter().any(|s| dpda_accepts(&g, s)) {
        fails.push("z_loop: accepts a string of length <= 12".into());
    }

    let lim = Limits::new(100_000, 1_000);
    let u = build_unary_gadget(&z_halt2()).unwrap();
    let outcome = |u: &AuxMachine, n: usize| u.accepts_bounded_aux(&vec![0; n], lim).unwrap();
    let first = (0..=30).find(|&n| outcome(&u, n) == Outcome::Accepted);
    match first {
        Some(n) if outcome(&u, n + 1) == Outcome::Accepted && outcome(&u, n + 2) == Outcome::Accepted => {}
        other => fails.push(format!("unary z_halt2: first accepted {other:?}, or a successor rejected")),
    }
    let u = build_unary_gadget(&z_loop()).unwrap();
    for n in 0..=15 {
        if outcome(&u, n) != Outcome::RejectedWithinBounds {
            fails.push(format!("unary z_loop: a^{n} is not rejected"));
        }
    }

    let sigma = Alphabet::user(["a", "b"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut nonempty = 0;
    for i in 0..50 {
        let a = random_nfa(&mut rng, &sigma, 5);
        let raw = Raw::of(&a);
        let has_word = words(2, a.num_states()).iter().any(|w| raw.accepts(w));
        nonempty += has_word as usize;
        let bridged = is_dense_regular(&marked_concat_universe(&a, "#").unwrap());
        if bridged.dense != has_word {
            fails.push(format!("bridge nfa {i}: marked density {} but nonempty {has_word}", bridged.dense));
        }
    }
    verdict(
        &fails,
        format!(
            "z_halt2 encoding ({} symbols) is the only accepted one of {} well-formed strings; z_loop rejects {} strings <= 12; unary z_halt2 accepts from a^{}; unary z_loop rejects a^0..a^15; bridge holds on 50 NFAs ({nonempty} nonempty), {}",
            enc.len(),
            strings.len(),
            loop_strings.len(),
            first.map_or("?".into(), |n| n.to_string()),
            secs(t.elapsed())
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("automata-core oracle suite", criterion_1),
        ("step-semantics conformance", criterion_2),
        ("store-language exactness", criterion_3),
        ("per-state language equalities", criterion_4),
        ("density verdicts", criterion_5),
        ("main-theorem halves", criterion_6),
        ("compiler equivalence", criterion_7),
        ("reduction gadgets", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!(
            "criterion {} ({name}): {} {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += (!v.pass) as usize;
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
