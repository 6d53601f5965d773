use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiralss")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn constant_object_collapses() {
    let o = run(&["pages", "--input", &data("constant.json"), "--max-page", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("collapses at page 1"), "{out}");
    // one column, s = 0
    assert!(out.lines().any(|l| l.trim() == "0"), "{out}");
}

#[test]
fn witness_matches_through_page_two() {
    let o = run(&["compare", "--stem-order", "1", "--input", &data("witness.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "match through page 2");
}

#[test]
fn broken_identity_exits_3() {
    let o = run(&["validate", "--input", &data("broken.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("s0"), "{}", stderr(&o));
}

#[test]
fn malformed_input_exits_2() {
    let dir = std::env::temp_dir().join(format!("spiralss-malformed-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.json");
    std::fs::write(&p, "{\"kind\": \"bicomplex\",\n \"entries\": [}").unwrap();
    let o = run(&["pages", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = run(&["pages", "--input", &data("missing.json")]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn outputs_are_deterministic() {
    for format in ["text", "svg", "json"] {
        let args = ["--format", format, "pages", "--input", &data("witness.json")];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn witness_chart_has_one_arrow() {
    let o = run(&["--format", "svg", "pages", "--input", &data("witness.json"), "--max-page", "2"]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<line").count(), 1);
    assert_eq!(svg.matches(">Z<").count(), 4);
}

#[test]
fn stem_document_truncates() {
    let dir = std::env::temp_dir().join(format!("spiralss-stem-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("stem.json");
    let o = run(&["--format", "json", "--output", p.to_str().unwrap(), "stem", "--stem-order", "1", "--input", &data("witness.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("order 1"));
    let o = run(&["obstruction", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("vanishes"));
    // a stem read back has no realization to compare with
    let o = run(&["compare", "--stem-order", "1", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn corpus_objects_agree_with_the_filtration() {
    let dir = std::env::temp_dir().join(format!("spiralss-corpus-{}", std::process::id()));
    let o = run(&["--seed", "11", "corpus", "--size", "3", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for line in stdout(&o).lines() {
        let o = run(&["compare", "--input", line]);
        assert_eq!(o.status.code(), Some(0), "{line}: {}", stderr(&o));
        let o = run(&["spiral", "--input", line, "--range", "3"]);
        assert_eq!(o.status.code(), Some(0), "{line}: {}", stderr(&o));
    }
    std::fs::remove_dir_all(&dir).ok();
}
