//! Store language of a worktape machine, checked against bounded search.

use tmdensity::fixtures::writer;
use tmdensity::store::{store_language_of, verify_store_against_oracle};
use tmdensity::Limits;

fn main() -> tmdensity::Result<()> {
    let m = writer();
    let s = store_language_of(&m)?;
    println!("store automaton: {} states", s.num_states());
    let a = s.alphabet();
    for w in s.words_up_to(5) {
        println!("  {}", a.concat(&w));
    }
    let report = verify_store_against_oracle(&m, &s, Limits::new(2_000, 8), 5);
    for line in report.lines(&m) {
        println!("{line}");
    }
    Ok(())
}
