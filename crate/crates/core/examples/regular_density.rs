//! Density of regular languages and the marked-concatenation bridge.

use tmdensity::density::is_dense_regular;
use tmdensity::gadgets::marked_concat_universe;
use tmdensity::{Alphabet, Nfa};

fn main() -> tmdensity::Result<()> {
    let sigma = Alphabet::new(["a", "b"])?;
    let a = sigma.sym("a")?;
    let b = sigma.sym("b")?;
    let cases = [
        ("a*", Nfa::star_of(sigma.clone(), &[a])),
        ("(a+b)*", Nfa::universe(sigma.clone())),
        ("{bab}", Nfa::from_words(sigma.clone(), &[vec![b, a, b]])),
        ("∅", Nfa::empty_language(sigma.clone())),
    ];
    for (name, l) in &cases {
        let v = is_dense_regular(l);
        let bridged = is_dense_regular(&marked_concat_universe(l, "#")?);
        println!("{name:>7}: {:<24} marked: {}", v.line(), bridged.line());
    }
    Ok(())
}
