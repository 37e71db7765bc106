//! Halting-problem gadgets: the 2-stack DPDA and its unary image.

use tmdensity::gadgets::{build_halting_dpda, build_unary_gadget, halting_encoding, z_halt2, z_loop};
use tmdensity::Limits;

fn main() -> tmdensity::Result<()> {
    for (name, z) in [("z_halt2", z_halt2()), ("z_loop", z_loop())] {
        let g = build_halting_dpda(&z)?;
        println!("{name}: {} states, {} rules", g.states.len(), g.rules.len());
        match halting_encoding(&z, 100) {
            Some(enc) => {
                println!("  encoding ({} symbols): {}", enc.len(), enc.join(""));
                let w = enc.iter().map(|s| g.input.sym(s)).collect::<tmdensity::Result<Vec<_>>>()?;
                println!("  gadget: {}", g.accepts_bounded_aux(&w, Limits::default())?);
            }
            None => println!("  no halting run within 100 steps"),
        }
    }

    let u = build_unary_gadget(&z_halt2())?;
    let a = u.input.sym("a")?;
    let accepted: Vec<usize> = (0..=22)
        .filter(|&n| {
            u.accepts_bounded_aux(&vec![a; n], Limits::new(1_000_000, 1_000))
                .map(|o| o == tmdensity::Outcome::Accepted)
                .unwrap_or(false)
        })
        .collect();
    println!("unary z_halt2 accepts a^n for n in {accepted:?}");
    Ok(())
}
