use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn catalog(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "catalog", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcr"))
        .args(args)
        .env_remove("GCR_MAX_DEGREE")
        .output()
        .expect("gcr runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_a1_prints_the_kernel() {
    let o = gcr(&["verify", "--scenario", "appendix-a1-kernel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("PASS: kernel equals ("), "{out}");
    for g in ["y2^2", "y1*y2", "y1^2", "c1*y1 - 2*y2"] {
        assert!(out.contains(g), "{out}");
    }
}

#[test]
fn verify_json_has_the_stable_schema() {
    let o = gcr(&["verify", "--scenario", "appendix-a3-kernel", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(sorted, ["actual", "expected", "millis", "scenario", "status", "witnesses"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["scenario"], "appendix-a3-kernel");
}

#[test]
fn verify_all_passes_and_text_agrees_with_json() {
    let text = gcr(&["verify", "--all"]);
    assert_eq!(text.status.code(), Some(0), "{}", stderr(&text));
    let json = gcr(&["verify", "--all", "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let arr = v.as_array().unwrap();
    let out = stdout(&text);
    assert_eq!(arr.len(), out.lines().filter(|l| l.contains(" PASS: ")).count());
    for item in arr {
        let name = item["scenario"].as_str().unwrap();
        assert_eq!(item["status"], "pass", "{name}");
        assert!(out.lines().any(|l| l.starts_with(name) && l.contains("PASS")), "{name}");
    }
}

#[test]
fn verify_all_output_is_deterministic() {
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .map(|l| l.rsplit_once("  (").map_or(l, |(a, _)| a).to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&gcr(&["verify", "--all"])), strip(&gcr(&["verify", "--all"])));
}

#[test]
fn dropped_term_fixture_fails_with_witness() {
    let o = gcr(&["verify", "--scenario", "steenrod-o2", "--override", &fixture("o2_dropped_term.gcr")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("FAIL"), "{out}");
    assert!(out.contains("witness:") && out.contains("Sq^1(s)"), "{out}");

    let j = gcr(&[
        "verify", "--scenario", "steenrod-o2", "--override", &fixture("o2_dropped_term.gcr"), "--format", "json",
    ]);
    assert_eq!(j.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn so3_as_printed_fails_instability() {
    let o = gcr(&["steenrod", &fixture("so3_as_printed.gcr"), "--sq", "SqSO3", "--max-degree", "12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Sq^2(w2)"), "{}", stdout(&o));
    let o = gcr(&["verify", "--scenario", "steenrod-so3", "--override", &fixture("so3_as_printed.gcr")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn wrong_expected_kernel_fails() {
    let o = gcr(&["verify", "--scenario", "appendix-a3-kernel", "--override", &fixture("wrong_kernel.gcr")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("w^3"), "{}", stdout(&o));
}

#[test]
fn catalog_actions_pass_from_files() {
    for (file, sq) in [
        ("orthogonal.gcr", "SqO2"),
        ("unitary.gcr", "SqU2"),
        ("unitary.gcr", "SqSU2"),
        ("so3.gcr", "SqSO3"),
    ] {
        let o = gcr(&["steenrod", &catalog(file), "--sq", sq, "--max-degree", "12"]);
        assert_eq!(o.status.code(), Some(0), "{sq}: {}", stdout(&o));
    }
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let o = gcr(&["kernel", &fixture("bad_syntax.gcr"), "--map", "f"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad_syntax.gcr:2:"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    let o = gcr(&["kernel", &fixture("arity.gcr"), "--map", "g"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("4 variables"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gcr(&[]).status.code(), Some(2));
    assert_eq!(gcr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gcr(&["verify"]).status.code(), Some(2));
    assert_eq!(gcr(&["verify", "--scenario", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(gcr(&["gb", &fixture("appendix_a1.gcr"), "--ideal", "Missing"]).status.code(), Some(2));
    assert_eq!(gcr(&["gb", "/nonexistent/file.gcr", "--ideal", "K"]).status.code(), Some(2));
    assert_eq!(gcr(&["hilton", "--spheres", "1,2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(gcr(&["hilton", "--spheres", "2", "--n", "40"]).status.code(), Some(2));
    assert_eq!(gcr(&["verify", "--all", "--deadline", "-1"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_gcr"))
        .args(["hilbert", &fixture("appendix_a1.gcr"), "--ring", "HU2F2"])
        .env("GCR_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expired_deadline_exits_one() {
    let o = gcr(&["verify", "--scenario", "appendix-a2-kernel", "--deadline", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("deadline"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let o = gcr(&["kernel", &catalog("appendix.gcr"), "--map", "A2f", "--deadline", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hilton_examples() {
    let o = gcr(&["hilton", "--spheres", "2,2,3", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Z^4 + (Z/2)^4");
    let o = gcr(&["hilton", "--spheres", "2", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"], "Z");
}

#[test]
fn hilton_accepts_a_user_table() {
    let dir = std::env::temp_dir().join(format!("gcr-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("extra.txt");
    std::fs::write(&path, "pi 11 2 = Z/2\npi 11 3 = Z/2\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let without = gcr(&["hilton", "--spheres", "3", "--n", "11"]);
    assert_eq!(without.status.code(), Some(2));
    let with = gcr(&["hilton", "--spheres", "3", "--n", "11", "--table", &p]);
    assert_eq!(with.status.code(), Some(0), "{}", stderr(&with));
    assert_eq!(stdout(&with).trim(), "Z/2");
    std::fs::write(&path, "pi 3 2 = Z/2\n").unwrap();
    assert_eq!(gcr(&["hilton", "--spheres", "2", "--n", "3", "--table", &p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ideal_subcommands() {
    let f = fixture("appendix_a1.gcr");
    let o = gcr(&["kernel", &f, "--map", "f"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c1*y1 - 2*y2"));

    let o = gcr(&["gb", &f, "--ideal", "K"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);

    assert_eq!(gcr(&["member", &f, "--ideal", "K", "--poly", "y1*c1 - 2*y2"]).status.code(), Some(0));
    assert_eq!(gcr(&["member", &f, "--ideal", "K", "--poly", "y1*c1"]).status.code(), Some(1));
    assert_eq!(gcr(&["member", &f, "--ideal", "K", "--poly", "y1*q"]).status.code(), Some(2));

    let o = gcr(&["nf", &f, "--ideal", "K", "--poly", "c1*y1 + c2"]);
    assert_eq!(stdout(&o).trim(), "2*y2 + c2");
}

#[test]
fn graded_subcommands() {
    let o = gcr(&["hilbert", &fixture("appendix_a1.gcr"), "--ring", "HU2F2", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1,0,1,0,3,0,3");

    let o = Command::new(env!("CARGO_BIN_EXE_gcr"))
        .args(["hilbert", &fixture("appendix_a1.gcr"), "--ring", "HU2F2"])
        .env("GCR_MAX_DEGREE", "4")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "1,0,1,0,3");

    let o = gcr(&["groups", &catalog("unitary.gcr"), "--ring", "HSU2", "--max-degree", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let slices: Vec<&str> = v["slices"].as_array().unwrap().iter().map(|s| s["group"].as_str().unwrap()).collect();
    assert_eq!(slices, ["Z", "0", "0", "0", "Z^2", "0", "Z/2", "0", "Z^2"]);
}
