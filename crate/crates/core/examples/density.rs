//! Density verdicts for worktape machines and for compiled store machines.

use tmdensity::compile::compile;
use tmdensity::density::is_dense_tm;
use tmdensity::fixtures;

fn main() -> tmdensity::Result<()> {
    let direct = [("all", fixtures::all()), ("writer", fixtures::writer()), ("anbn", fixtures::anbn())];
    for (name, m) in direct {
        println!("{name:>14}: {}", is_dense_tm(&m)?.line());
    }
    let compiled = [
        ("pda_anbn", fixtures::pda_anbn()),
        ("queue_anban", fixtures::queue_anban()),
        ("stack_anbncn", fixtures::stack_anbncn()),
        ("flip_copy", fixtures::flip_copy()),
    ];
    for (name, m) in compiled {
        let v = is_dense_tm(&compile(&m)?)?;
        println!("{name:>14}: {}  {:?}", v.line(), v.sizes);
    }
    Ok(())
}
