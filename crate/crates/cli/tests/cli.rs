use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_clarforce");

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CLARFORCE_INJECT_FAULT")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_single_square() {
    let ws = Workspace::new();
    let r = json(&["analyze", "--json", &ws.file("one.txt", "#\n")]);
    assert_eq!(r["clar_number"], 1);
    assert_eq!(r["max_forcing"], 1);
    assert_eq!(r["graph"]["vertex_count"], 4);
    assert_eq!(r["elementary"], true);
    assert!(r["timings_ms"].is_object());
}

#[test]
fn analyze_bar_of_three() {
    let ws = Workspace::new();
    let r = json(&[
        "analyze",
        "--json",
        "--no-timings",
        &ws.file("bar.txt", "###\n"),
    ]);
    assert_eq!(r["clar_number"], 2);
    assert_eq!(r["max_forcing"], 2);
    assert_eq!(
        r["witnesses"]["clar_cover"]["faces"],
        serde_json::json!([0, 2])
    );
    assert_eq!(
        r["witnesses"]["forcing_set"]["edges"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    assert!(r.get("timings_ms").is_none());
}

#[test]
fn analyze_ids_resolve() {
    let ws = Workspace::new();
    let r = json(&["analyze", "--json", &ws.file("ne.txt", "##\n####\n..##\n")]);
    let edges = r["graph"]["edges"].as_array().unwrap().len() as u64;
    let faces = r["graph"]["faces"].as_array().unwrap().len() as u64;
    let w = &r["witnesses"];
    for e in w["matching"]
        .as_array()
        .unwrap()
        .iter()
        .chain(w["clar_cover"]["edges"].as_array().unwrap())
    {
        assert!(e.as_u64().unwrap() < edges);
    }
    for f in w["clar_cover"]["faces"].as_array().unwrap() {
        assert!(f.as_u64().unwrap() < faces);
    }
    assert_eq!(r["components"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_text_and_hex_detection() {
    let ws = Workspace::new();
    let out = run(&["analyze", &ws.file("naph.txt", "# naphthalene\n0 0\n1 0\n")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("clar number: 1"));
    assert!(text.contains("max forcing number: 1"));
}

#[test]
fn analyze_error_codes() {
    let ws = Workspace::new();
    assert_eq!(
        run(&["analyze", &ws.file("block.txt", "##\n##\n")])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["analyze", &ws.file("bad.txt", "#x\n")]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", &ws.file("empty.txt", "")]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "/nonexistent/input.txt"]).status.code(),
        Some(2)
    );
    let fault = Command::new(BIN)
        .args(["analyze", &ws.file("one.txt", "#\n")])
        .env("CLARFORCE_INJECT_FAULT", "forcing-equals-clar")
        .output()
        .unwrap();
    assert_eq!(fault.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&fault.stderr).contains("forcing-equals-clar"));
}

#[test]
fn verify_prints_five_pass_lines() {
    let ws = Workspace::new();
    for body in ["#\n", "##\n#.\n"] {
        let out = run(&["verify", &ws.file("in.txt", body)]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    }
}

#[test]
fn verify_budget_one_skips() {
    let ws = Workspace::new();
    let out = run(&[
        "verify",
        "--budget-matchings",
        "1",
        &ws.file("one.txt", "#\n"),
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).contains("SKIPPED"));
}

#[test]
fn render_writes_svg() {
    let ws = Workspace::new();
    let out = ws.path("bar.svg");
    let code = run(&[
        "render",
        &ws.file("bar.txt", "###\n"),
        out.to_str().unwrap(),
    ])
    .status
    .code();
    assert_eq!(code, Some(0));
    let svg = std::fs::read_to_string(out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("fill=\"#f2b134\"").count(), 2);
}

#[test]
fn decompose_non_elementary() {
    let ws = Workspace::new();
    let r = json(&[
        "decompose",
        "--json",
        &ws.file("ne.txt", "##\n####\n..##\n"),
    ]);
    assert_eq!(r["elementary"], false);
    assert_eq!(r["components"].as_array().unwrap().len(), 2);
    let classes = r["bond_classes"].as_array().unwrap();
    assert_eq!(
        classes.len(),
        r["graph"]["edge_count"].as_u64().unwrap() as usize
    );
    assert!(classes.iter().any(|c| c == "fixed_single"));
}

#[test]
fn dump_lp_writes_model() {
    let ws = Workspace::new();
    let lp = ws.path("model.lp");
    let code = run(&[
        "analyze",
        "--dump-lp",
        lp.to_str().unwrap(),
        &ws.file("one.txt", "#\n"),
    ])
    .status
    .code();
    assert_eq!(code, Some(0));
    let text = std::fs::read_to_string(lp).unwrap();
    assert!(text.contains("Maximize"));
    assert!(text.contains(" obj: xF0"));
    assert!(text.contains(" v0: xF0 + yE0 + yE1 = 1"));
}

#[test]
fn corpus_counts() {
    let one = run(&["corpus", "1"]);
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).contains("1 instances: 1 passed"));

    // fixed trominoes: two bars and four L shapes, all matchable
    let three = stdout(&run(&["corpus", "3"]));
    assert!(three.contains("9 instances: 9 passed"), "{three}");

    let hex = stdout(&run(&["corpus", "2", "--format", "hex"]));
    assert_eq!(hex.lines().filter(|l| l.starts_with("PASS n=2")).count(), 3);

    assert_eq!(run(&["corpus", "9"]).status.code(), Some(2));
}

#[test]
fn corpus_aborts_on_failure() {
    let out = Command::new(BIN)
        .args(["corpus", "2"])
        .env("CLARFORCE_INJECT_FAULT", "decomposition")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("FAIL n=1"), "{text}");
}
