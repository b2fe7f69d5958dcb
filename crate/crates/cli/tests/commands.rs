use std::fs;

use fdqe_cli::run;
use serde_json::Value;

fn fdqe(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fdqe").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn check_text_output() {
    let (code, out, _) = fdqe(&["check", "2", "--lang", "base"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "QE: yes"), "{out}");
    let (code, out, _) = fdqe(&["check", "3", "--lang", "base"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("QE: no") && out.contains("certificate: C = 1,1"),
        "{out}"
    );
}

#[test]
fn check_json_is_stable() {
    let (code, first, _) = fdqe(&["check", "3,2", "--lang", "min", "--json"]);
    assert_eq!(code, 0);
    let (_, second, _) = fdqe(&["check", "2,3", "--lang", "min", "--json"]);
    assert_eq!(first, second);
    assert_eq!(first.lines().count(), 1);
    let v = json(&first);
    assert_eq!(v["qe"], false);
    assert_eq!(v["language"], "min");
    assert!(v["certificate"]["e1"] != v["certificate"]["e2"]);
}

#[test]
fn default_language_is_star() {
    let (_, out, _) = fdqe(&["check", "2,1", "--json"]);
    assert_eq!(json(&out)["language"], "star");
    assert_eq!(json(&out)["qe"], true);
}

#[test]
fn check_dot_writes_certificate_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.dot");
    let (code, _, _) = fdqe(&[
        "check",
        "2,1",
        "--lang",
        "sim",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dot = fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("digraph bratteli").count(), 2);
    assert!(dot.contains("style=solid") && dot.contains("style=dashed"));
}

#[test]
fn embeddings_with_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.dot");
    let (code, out, _) = fdqe(&[
        "embeddings",
        "1,1",
        "2,1",
        "--lang",
        "sim",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last(), Some("count: 4"));
    let dot = fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("digraph bratteli {").count(), 4);
    assert_eq!(dot.matches("->").count(), 4 * 3);

    let (_, out, _) = fdqe(&["embeddings", "1,1,1,2", "3,2", "--lang", "min", "--json"]);
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["source"], serde_json::json!([2, 1, 1, 1]));
    assert_eq!(v["matrices"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_rows_match_check() {
    for lang in ["base", "min", "sim", "star"] {
        let (code, out, _) = fdqe(&["sweep", "--bound", "5", "--lang", lang, "--json"]);
        assert_eq!(code, 0);
        for line in out.lines() {
            let row = json(line);
            let name: Vec<String> = row["algebra"]
                .as_array()
                .unwrap()
                .iter()
                .map(|n| n.to_string())
                .collect();
            let (_, single, _) = fdqe(&["check", &name.join(","), "--lang", lang, "--json"]);
            assert_eq!(single.trim(), line);
        }
    }
}

#[test]
fn sweep_table_is_aligned() {
    let (code, out, _) = fdqe(&["sweep", "--bound", "3", "--lang", "base"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0].split_whitespace().collect::<Vec<_>>(),
        ["algebra", "verdict", "#candidates", "#matrices"]
    );
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    assert!(lines[1].starts_with("1 ") && lines[1].contains(" yes "));
}

#[test]
fn render_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(
        &path,
        r#"{"source":[1,1],"target":[1,2],"entries":[[1,0],[0,2]]}"#,
    )
    .unwrap();
    let (code, out, _) = fdqe(&["render", path.to_str().unwrap(), "--style", "dashed"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph bratteli {"));
    assert_eq!(out.matches("style=dashed").count(), 3);
    // canonical order puts M_2 first
    assert!(out.contains("A_1 [label=\"A_1:M2\"]"));
}

#[test]
fn predicates_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("x.json");
    fs::write(
        &one,
        r#"{"algebra":[2],"blocks":[[[[1,0],[0,0]],[[0,0],[0.5,0]]]]}"#,
    )
    .unwrap();
    let (code, out, _) = fdqe(&[
        "predicates",
        "--algebra",
        "2",
        "--op",
        "rho-min",
        "--input",
        one.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["predicate"], "rho_min");
    assert!((v["value"].as_f64().unwrap() - 0.5).abs() < 1e-6);

    let pair = dir.path().join("xy.json");
    fs::write(
        &pair,
        r#"[{"algebra":[1,1],"blocks":[[[[1,0]]],[[[0,0]]]]},{"algebra":[1,1],"blocks":[[[[0,0]]],[[[1,0]]]]}]"#,
    )
    .unwrap();
    let (code, out, _) = fdqe(&[
        "predicates",
        "--algebra",
        "1,1",
        "--op",
        "rho-sim",
        "--input",
        pair.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["predicate"], "rho_sim");
    assert!((v["lower"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((v["upper"].as_f64().unwrap() - 0.5).abs() < 1e-6);

    let (code, out, _) = fdqe(&[
        "predicates",
        "--algebra",
        "1,1",
        "--op",
        "rho-sim",
        "--input",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("rho_sim in [0.5"), "{out}");
}

#[test]
fn preserve_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, r#"{"source":[1],"target":[2],"entries":[[2]]}"#).unwrap();
    let args = [
        "preserve",
        "1",
        "2",
        "--matrix",
        path.to_str().unwrap(),
        "--predicate",
        "rho-min",
        "--samples",
        "3",
        "--json",
    ];
    let (code, first, _) = fdqe(&args);
    assert_eq!(code, 0);
    let v = json(&first);
    assert!(v["max_discrepancy"].as_f64().unwrap() >= 1.0 - 1e-6);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["embedding"]["entries"], serde_json::json!([[2]]));
    let (_, second, _) = fdqe(&args);
    assert_eq!(first, second);
}

#[test]
fn strict_mode_turns_non_convergence_into_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("xy.json");
    fs::write(
        &pair,
        r#"[{"algebra":[3],"blocks":[[[[1,0],[0,2],[0,0]],[[0,-2],[0,0],[1,1]],[[0,0],[1,1],[3,0]]]]},
            {"algebra":[3],"blocks":[[[[0,0],[1,0],[0,0]],[[1,0],[0,0],[2,0]],[[0,0],[2,0],[-1,0]]]]}]"#,
    )
    .unwrap();
    let base = [
        "predicates",
        "--algebra",
        "3",
        "--op",
        "rho-sim",
        "--input",
        pair.to_str().unwrap(),
        "--max-iterations",
        "1",
        "--restarts",
        "2",
    ];
    let (code, _, err) = fdqe(&base);
    assert_eq!(code, 0);
    assert!(err.contains("warning"), "{err}");
    let mut strict = base.to_vec();
    strict.push("--strict");
    let (code, out, err) = fdqe(&strict);
    assert_eq!(code, 2);
    assert!(!out.is_empty());
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn validation_errors_exit_one_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let bad_matrix = dir.path().join("bad.json");
    fs::write(
        &bad_matrix,
        r#"{"source":[1],"target":[2],"entries":[[1]]}"#,
    )
    .unwrap();
    let wrong_algebra = dir.path().join("x.json");
    fs::write(&wrong_algebra, r#"{"algebra":[1],"blocks":[[[[1,0]]]]}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "3,,2"],
        vec!["check", "0"],
        vec!["check", "2", "--lang", "plain"],
        vec!["sweep", "--bound", "0"],
        vec!["sweep"],
        vec!["embeddings", "1"],
        vec!["render", missing.to_str().unwrap()],
        vec!["render", bad_matrix.to_str().unwrap()],
        vec![
            "predicates",
            "--algebra",
            "2",
            "--op",
            "rho-min",
            "--input",
            wrong_algebra.to_str().unwrap(),
        ],
        vec![
            "predicates",
            "--algebra",
            "1",
            "--op",
            "rho-sim",
            "--input",
            wrong_algebra.to_str().unwrap(),
        ],
        vec![
            "predicates",
            "--algebra",
            "1",
            "--op",
            "rho-max",
            "--input",
            wrong_algebra.to_str().unwrap(),
        ],
        vec![
            "preserve",
            "1",
            "2",
            "--matrix",
            bad_matrix.to_str().unwrap(),
            "--predicate",
            "rho-min",
        ],
        vec![
            "preserve",
            "1",
            "3",
            "--matrix",
            bad_matrix.to_str().unwrap(),
            "--predicate",
            "rho-min",
        ],
        vec!["check", "2", "--restarts", "3"],
        vec![],
    ];
    for args in cases {
        let (code, out, err) = fdqe(&args);
        assert_eq!(code, 1, "{args:?}: {out}{err}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("fdqe: "));
    }
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(fdqe(&["--help"]).0, 0);
    assert_eq!(fdqe(&["check", "--help"]).0, 0);
    let (code, out, _) = fdqe(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("fdqe "));
}
