use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn tmdensity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmdensity")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tmdensity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn run_accepts_aabb() {
    let o = tmdensity(&["run", &fixture("anbn.tm"), "aabb"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "accepted");
    let o = tmdensity(&["run", &fixture("anbn.tm"), "aab"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "rejected");
}

#[test]
fn run_reports_exhausted_bounds() {
    let o = tmdensity(&["run", &fixture("z_loop.tm"), "--max-steps", "40"]);
    assert_eq!(o.status.code(), Some(3));
    let o = tmdensity(&["run", &fixture("z_halt2.tm")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "halted after 2 moves");
}

#[test]
fn density_json_for_all() {
    let o = tmdensity(&["density", &fixture("all.tm"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dense"], true);
    assert!(v.get("witness").is_none());
    assert_eq!(v["reversalBound"], 0);
    assert!(v["sizes"]["storeLanguage"].as_u64().unwrap() > 0);
}

#[test]
fn density_text_and_compiled_input() {
    let o = tmdensity(&["density", &fixture("anbn.tm")]);
    assert_eq!(stdout(&o).trim(), "NOT DENSE, witness=ab, amplified=ababababab");
    let o = tmdensity(&["density", &fixture("pda_anbn.tm"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dense"], false);
    assert_eq!(v["witness"], "ab");
}

#[test]
fn output_is_deterministic() {
    let a = tmdensity(&["density", &fixture("flip_copy.tm"), "--json"]);
    let b = tmdensity(&["density", &fixture("flip_copy.tm"), "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = tmdensity(&["store", &fixture("anbn.tm")]);
    let b = tmdensity(&["store", &fixture("anbn.tm")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_file_is_a_validation_error() {
    let o = tmdensity(&["density", "missing.tm"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.tm"));
}

#[test]
fn malformed_file_names_the_file() {
    let p = scratch("bad.tm");
    std::fs::write(&p, "model worktape-tm\nt q a _ _ Q q\n").unwrap();
    let o = tmdensity(&["store", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.tm"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let o = tmdensity(&["density", &fixture("all.tm"), "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn store_out_feeds_nfa_dump() {
    let p = scratch("all.json");
    let o = tmdensity(&["store", &fixture("all.tm"), "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["alphabet", "edges", "finals", "initials", "states"]);
    let o = tmdensity(&["nfa-dump", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 -q0-> 1"), "{text}");
    assert!(text.contains("not universal, witness=λ"), "{text}");
}

#[test]
fn store_verify_prints_report() {
    let o = tmdensity(&["store", &fixture("anbn.tm"), "--verify", "--max-steps", "2000", "--max-cells", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("missing from automaton: 0"), "{text}");
}

#[test]
fn compile_emits_parseable_worktape_machine() {
    let p = scratch("queue.tm");
    let o = tmdensity(&["compile", &fixture("queue_anban.tm"), "--to", "worktape-tm", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = tmdensity(&["run", p.to_str().unwrap(), "aabaa"]);
    assert_eq!(stdout(&o).trim(), "accepted");
    let o = tmdensity(&["compile", &fixture("queue_anban.tm"), "--to", "pda"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_lists_accepted_words() {
    let o = tmdensity(&["oracle", &fixture("queue_anban.tm"), "--max-len", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["accepted"], serde_json::json!(["b", "aba", "aabaa"]));
}

#[test]
fn reduce_halting_emits_gadgets() {
    let o = tmdensity(&["reduce", "halting", &fixture("z_halt2.tm")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("model multi-stack"), "{text}");
    let p = scratch("unary.tm");
    let o = tmdensity(&["reduce", "halting", &fixture("z_halt2.tm"), "--unary", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let unary = std::fs::read_to_string(&p).unwrap();
    assert!(unary.contains("\ninput a\n"), "{unary}");
    let o = tmdensity(&["reduce", "halting", &fixture("anbn.tm")]);
    assert_eq!(o.status.code(), Some(2));
}
