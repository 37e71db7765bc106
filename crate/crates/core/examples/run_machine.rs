//! Bounded execution of a worktape machine, with the accepting run replayed.

use tmdensity::fixtures::anbn;
use tmdensity::Limits;

fn main() -> tmdensity::Result<()> {
    let m = anbn();
    for text in ["ab", "aabb", "aab", ""] {
        let w = m.input.parse_word(text)?;
        println!("{:>5}: {}", if text.is_empty() { "λ" } else { text }, m.accepts_bounded(&w, Limits::default()));
    }

    let w = m.input.parse_word("aabb")?;
    let (_, rules) = m.accepting_run(&w, Limits::default());
    let run = m.replay(&w, &rules.expect("aabb is accepted")).expect("valid run");
    for c in &run {
        println!("{}", m.render_config(c));
    }
    Ok(())
}
