use std::path::PathBuf;

use tmdensity::compile::compile;
use tmdensity::fixtures as f;
use tmdensity::gadgets::{z_halt2, z_loop};
use tmdensity::text::{parse, parse_file, write, Machine};

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.tm"))
}

#[test]
fn files_match_programmatic_fixtures() {
    let cases: Vec<(&str, Machine)> = vec![
        ("all", Machine::Worktape(f::all())),
        ("writer", Machine::Worktape(f::writer())),
        ("anbn", Machine::Worktape(f::anbn())),
        ("two_reversals", Machine::Worktape(f::two_reversals())),
        ("pda_anbn", Machine::Aux(f::pda_anbn())),
        ("queue_anban", Machine::Aux(f::queue_anban())),
        ("queue_ab", Machine::Aux(f::queue_ab())),
        ("stack_anbncn", Machine::Aux(f::stack_anbncn())),
        ("flip_copy", Machine::Aux(f::flip_copy())),
        ("z_halt2", Machine::Dtm(z_halt2())),
        ("z_loop", Machine::Dtm(z_loop())),
    ];
    for (name, m) in cases {
        let parsed = parse_file(&path(name)).unwrap();
        assert_eq!(parsed.model(), m.model(), "{name}");
        assert_eq!(write(&parsed), write(&m), "{name}");
    }
}

#[test]
fn compiled_machines_round_trip_through_text() {
    for m in [f::pda_anbn(), f::queue_anban(), f::stack_anbncn(), f::flip_copy()] {
        let w = Machine::Worktape(compile(&m).unwrap());
        let text = write(&w);
        assert_eq!(write(&parse(&text).unwrap()), text);
    }
}

#[test]
fn parse_errors_name_the_file() {
    let dir = std::env::temp_dir().join("tmdensity-fixture-files");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("broken.tm");
    std::fs::write(&p, "model worktape-tm\nstates q\ninitial r\n").unwrap();
    let e = parse_file(&p).unwrap_err();
    assert!(e.contains("broken.tm"), "{e}");
    let e = parse_file(&dir.join("absent.tm")).unwrap_err();
    assert!(e.contains("absent.tm"), "{e}");
}
