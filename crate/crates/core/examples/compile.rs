//! Compiling a queue machine to a worktape machine and comparing languages.

use tmdensity::alphabet::words_up_to;
use tmdensity::compile::compile;
use tmdensity::fixtures::queue_anban;
use tmdensity::text::{write, Machine};
use tmdensity::Limits;

fn main() -> tmdensity::Result<()> {
    let q = queue_anban();
    let m = compile(&q)?;
    print!("{}", write(&Machine::Worktape(m.clone())));

    let mut agree = 0;
    for w in words_up_to(&q.input, 5) {
        let src = q.accepts_bounded_aux(&w, Limits::default())?;
        let dst = m.accepts_bounded(&w, Limits::default());
        assert_eq!(src, dst, "{}", q.input.concat(&w));
        agree += 1;
    }
    println!("# languages agree on {agree} words");
    Ok(())
}
