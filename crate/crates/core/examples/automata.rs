//! Regular-language toolkit: build, combine, decide.

use tmdensity::{Alphabet, Nfa};

fn main() -> tmdensity::Result<()> {
    let sigma = Alphabet::new(["a", "b"])?;
    let a = sigma.sym("a")?;
    let b = sigma.sym("b")?;

    // a* and b*
    let a_star = Nfa::star_of(sigma.clone(), &[a]);
    let b_star = Nfa::star_of(sigma.clone(), &[b]);
    let l = a_star.concat(&b_star)?;

    println!("a*b* accepts aabb: {}", l.accepts_str("aabb")?);
    println!("a*b* accepts ba: {}", l.accepts_str("ba")?);

    let u = l.is_universal();
    println!(
        "universal: {} (first missing word: {})",
        u.holds,
        u.witness.map(|w| sigma.concat(&w)).unwrap_or_default()
    );

    let inf = l.infix_closure();
    println!("infix closure equals a*b*: {}", inf.equivalent(&l)?);

    let min = l.union(&l.reverse())?.determinize_minimize();
    println!("a*b* + b*a* minimal DFA: {} states", min.num_states());
    for w in min.words_up_to(2) {
        println!("  {}", if w.is_empty() { "λ".into() } else { sigma.concat(&w) });
    }
    println!("{}", Nfa::from_words(sigma.clone(), &[vec![a, b]]).to_json());
    Ok(())
}
