//! Small machines with analytically known languages, store languages and
//! density verdicts.

use crate::alphabet::Alphabet;
use crate::aux::{AuxMachine, Op, StackMove, Variant};
use crate::tm::{Move, WorktapeTm};

fn tm(states: &[&str], input: &[&str], tape: &[&str], finals: &[&str]) -> WorktapeTm {
    WorktapeTm::new(
        states.iter().map(|s| s.to_string()).collect(),
        Alphabet::user(input.iter().copied()).unwrap(),
        Alphabet::new(tape.iter().copied()).unwrap(),
        states[0],
        finals,
    )
    .unwrap()
}

/// Accepts `{a,b}*` with a single final state and stay rules only.
pub fn all() -> WorktapeTm {
    let mut m = tm(&["q0"], &["a", "b"], &["_"], &["q0"]).with_reversal_bound(0);
    m.add_rule("q0", Some("a"), "_", "_", Move::S, "q0").unwrap();
    m.add_rule("q0", Some("b"), "_", "_", Move::S, "q0").unwrap();
    m
}

/// Writes one `X` per input `a` while sweeping right; accepts `a+`.
pub fn writer() -> WorktapeTm {
    let mut m = tm(&["q0", "q"], &["a"], &["_", "X"], &["q"]).with_reversal_bound(0);
    m.add_rule("q0", Some("a"), "_", "X", Move::R, "q").unwrap();
    m.add_rule("q", Some("a"), "_", "X", Move::R, "q").unwrap();
    m
}

/// One-reversal machine for `{a^n b^n : n >= 1}`: marks each `a` going
/// right, then walks back over one mark per `b`.
pub fn anbn() -> WorktapeTm {
    let mut m = tm(&["q0", "qa", "qb", "qf"], &["a", "b"], &["_", "X"], &["qf"])
        .with_reversal_bound(1);
    m.add_rule("q0", Some("a"), "_", "X", Move::R, "qa").unwrap();
    m.add_rule("qa", Some("a"), "_", "X", Move::R, "qa").unwrap();
    m.add_rule("qa", None, "_", "_", Move::L, "qb").unwrap();
    m.add_rule("qb", Some("b"), "X", "X", Move::L, "qb").unwrap();
    m.add_rule("qb", None, "_", "_", Move::S, "qf").unwrap();
    m
}

/// Accepts `a` only after two reversals (right, left, right).
pub fn two_reversals() -> WorktapeTm {
    let mut m = tm(&["s0", "s1", "s2", "s3"], &["a"], &["_", "X"], &["s3"])
        .with_reversal_bound(2);
    m.add_rule("s0", Some("a"), "_", "X", Move::R, "s1").unwrap();
    m.add_rule("s1", None, "_", "_", Move::L, "s2").unwrap();
    m.add_rule("s2", None, "X", "X", Move::R, "s3").unwrap();
    m
}

fn aux(
    variant: Variant,
    states: &[&str],
    input: &[&str],
    store: &[&str],
    finals: &[&str],
) -> AuxMachine {
    AuxMachine::new(
        variant,
        states.iter().map(|s| s.to_string()).collect(),
        Alphabet::user(input.iter().copied()).unwrap(),
        Alphabet::new(store.iter().copied()).unwrap(),
        states[0],
        finals,
    )
    .unwrap()
}

fn stack_op(m: &AuxMachine, pop: &str, push: &str) -> Op {
    let pop = (pop != "-").then(|| m.store.sym(pop).unwrap());
    Op::Stacks(vec![(pop, m.store_word(push).unwrap())])
}

/// One-reversal PDA for `{a^n b^n : n >= 1}` with a bottom marker `Z`.
pub fn pda_anbn() -> AuxMachine {
    let mut m = aux(Variant::Pda, &["q0", "s", "r", "f"], &["a", "b"], &["A", "Z"], &["f"])
        .with_reversal_bound(1);
    let ops = [
        ("q0", None, "-", "Z", "s"),
        ("s", Some("a"), "-", "A", "s"),
        ("s", Some("b"), "A", "-", "r"),
        ("r", Some("b"), "A", "-", "r"),
        ("r", None, "Z", "-", "f"),
    ];
    for (from, inp, pop, push, to) in ops {
        let op = stack_op(&m, pop, push);
        m.add_rule(from, inp, op, to).unwrap();
    }
    m
}

/// PDA with no rules whose initial state is final: accepts `{λ}`.
pub fn pda_lambda() -> AuxMachine {
    aux(Variant::Pda, &["q0"], &["a", "b"], &["A"], &["q0"]).with_reversal_bound(0)
}

/// PDA accepting nothing.
pub fn pda_empty() -> AuxMachine {
    let mut m = aux(Variant::Pda, &["q0", "f"], &["a", "b"], &["A"], &["f"])
        .with_reversal_bound(1);
    let op = stack_op(&m, "A", "-");
    m.add_rule("q0", Some("a"), op, "f").unwrap();
    m
}

fn queue_op(m: &AuxMachine, dequeue: &str, enqueue: &str) -> Op {
    Op::Queue {
        dequeue: (dequeue != "-").then(|| m.store.sym(dequeue).unwrap()),
        enqueue: m.store_word(enqueue).unwrap(),
    }
}

/// Accepts exactly `ab`: enqueue on `a`, dequeue on `b`.
pub fn queue_ab() -> AuxMachine {
    let mut m = aux(Variant::Queue, &["q0", "p", "f"], &["a", "b"], &["A", "B"], &["f"])
        .with_reversal_bound(1);
    let op = queue_op(&m, "-", "A");
    m.add_rule("q0", Some("a"), op, "p").unwrap();
    let op = queue_op(&m, "A", "-");
    m.add_rule("p", Some("b"), op, "f").unwrap();
    m
}

/// One-reversal queue machine for `{a^n b a^n : n >= 0}`; `#` marks the
/// end of the enqueued block.
pub fn queue_anban() -> AuxMachine {
    let mut m = aux(Variant::Queue, &["q0", "d", "f"], &["a", "b"], &["A", "#"], &["f"])
        .with_reversal_bound(1);
    let ops = [
        ("q0", Some("a"), "-", "A", "q0"),
        ("q0", Some("b"), "-", "#", "d"),
        ("d", Some("a"), "A", "-", "d"),
        ("d", None, "#", "-", "f"),
    ];
    for (from, inp, deq, enq, to) in ops {
        let op = queue_op(&m, deq, enq);
        m.add_rule(from, inp, op, to).unwrap();
    }
    m
}

/// Queue machine accepting nothing.
pub fn queue_empty() -> AuxMachine {
    let mut m = aux(Variant::Queue, &["q0", "f"], &["a", "b"], &["A"], &["f"])
        .with_reversal_bound(1);
    let op = queue_op(&m, "A", "-");
    m.add_rule("q0", Some("b"), op, "f").unwrap();
    m
}

fn cursor_op(m: &AuxMachine, read: &str, mv: &str) -> Op {
    let read = (read != "_").then(|| m.store.sym(read).unwrap());
    let mv = match mv {
        "pop" => StackMove::Pop,
        "read-left" => StackMove::ReadLeft,
        "read-right" => StackMove::ReadRight,
        "stay" => StackMove::Stay,
        push => StackMove::Push(m.store.sym(push.trim_start_matches("push:")).unwrap()),
    };
    Op::Cursor { read, mv }
}

/// Two-reversal stack automaton for `{a^n b^n c^n : n >= 1}`: pushes the
/// `a`s under a top marker, reads down over them with the `b`s and back up
/// with the `c`s.
pub fn stack_anbncn() -> AuxMachine {
    let mut m = aux(
        Variant::Stack,
        &["q0", "p", "t", "qb", "qc", "qd", "f"],
        &["a", "b", "c"],
        &["A", "T"],
        &["f"],
    )
    .with_reversal_bound(2);
    let ops = [
        ("q0", Some("a"), "_", "push:A", "p"),
        ("p", Some("a"), "A", "push:A", "p"),
        ("p", None, "A", "push:T", "t"),
        ("t", None, "T", "read-left", "qb"),
        ("qb", Some("b"), "A", "read-left", "qb"),
        ("qb", Some("c"), "_", "read-right", "qc"),
        ("qc", Some("c"), "A", "read-right", "qc"),
        ("qc", None, "A", "read-right", "qd"),
        ("qd", None, "T", "stay", "f"),
    ];
    for (from, inp, read, mv, to) in ops {
        let op = cursor_op(&m, read, mv);
        m.add_rule(from, inp, op, to).unwrap();
    }
    m
}

/// Stack automaton accepting exactly `a`.
pub fn stack_single() -> AuxMachine {
    let mut m = aux(Variant::Stack, &["q0", "f"], &["a"], &["A"], &["f"]).with_reversal_bound(0);
    let op = cursor_op(&m, "_", "stay");
    m.add_rule("q0", Some("a"), op, "f").unwrap();
    m
}

/// Stack automaton accepting nothing.
pub fn stack_empty() -> AuxMachine {
    let mut m = aux(Variant::Stack, &["q0", "f"], &["a"], &["A"], &["f"]).with_reversal_bound(0);
    let op = cursor_op(&m, "A", "stay");
    m.add_rule("q0", Some("a"), op, "f").unwrap();
    m
}

/// One-flip, one-reversal pushdown automaton for the copy language
/// `{w c w : w ∈ {a,b}*}`.
pub fn flip_copy() -> AuxMachine {
    let mut m = aux(
        Variant::FlipPda,
        &["q0", "s", "m0", "m", "r", "f"],
        &["a", "b", "c"],
        &["A", "B", "Y", "Z"],
        &["f"],
    )
    .with_reversal_bound(1);
    m.flip_bound = 1;
    let ops = [
        ("q0", None, "-", "Z", "s"),
        ("s", Some("a"), "-", "A", "s"),
        ("s", Some("b"), "-", "B", "s"),
        ("r", Some("a"), "A", "-", "r"),
        ("r", Some("b"), "B", "-", "r"),
        ("s", Some("c"), "-", "Y", "m0"),
        ("r", None, "Y", "-", "f"),
    ];
    for (from, inp, pop, push, to) in ops {
        let op = stack_op(&m, pop, push);
        m.add_rule(from, inp, op, to).unwrap();
    }
    // `Z` and `Y` delimit the pushed word; after the flip `Z` is on top
    m.add_rule("m0", None, Op::Flip, "m").unwrap();
    let op = stack_op(&m, "Z", "-");
    m.add_rule("m", None, op, "r").unwrap();
    m
}

/// The `{a^n b^n}` PDA viewed as a flip-pushdown automaton with no flips.
pub fn flip_zero() -> AuxMachine {
    let mut m = pda_anbn();
    m.variant = Variant::FlipPda;
    m
}

/// Flip-pushdown automaton accepting nothing.
pub fn flip_empty() -> AuxMachine {
    let mut m = aux(Variant::FlipPda, &["q0", "f"], &["a"], &["A"], &["f"]).with_reversal_bound(0);
    m.flip_bound = 1;
    m.add_rule("q0", Some("a"), Op::Flip, "q0").unwrap();
    m
}
