use std::path::PathBuf;

use hrsft_cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn hrsft(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["hrsft"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn verify_fs2_passes() {
    let f = data("fs2.json");
    let (code, out, _) = hrsft(&[
        "verify",
        &f,
        "--h3-p-bound",
        "2,2",
        "--h3-shape-bound",
        "3,3",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("H3: bounded-pass"));
    assert!(!out.contains("fail"));
}

#[test]
fn verify_json_schema() {
    let f = data("gm2.json");
    let (code, out, _) = hrsft(&["verify", &f, "--json"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert!(c["condition"].is_string());
        assert!(c["status"].is_string());
        assert!(c["params"].is_object());
        if c["status"] == "fail" {
            assert!(c.get("witness").is_some(), "{c}");
        }
    }
    let star2 = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["condition"] == "H3*[2]")
        .unwrap();
    assert_eq!(star2["status"], "fail");
    assert_eq!(star2["witness"]["set"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_jj_fails_h1b_and_skips() {
    let (code, out, _) = hrsft(&["verify", &data("jj.json")]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("H1b: fail ((M1 M2)(0,0) = 2)"), "{out}");
    assert!(out.contains("H3: skipped"));
}

#[test]
fn count_per_letter() {
    let (code, out, _) = hrsft(&["count", &data("gm2.json"), "--shape", "1,1", "--per-letter"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "00:4 01:2 10:2 11:1 total:9\n");
    let (_, out, _) = hrsft(&["count", &data("fs2.json"), "--shape", "1,1"]);
    assert_eq!(out, "total:16\n");
}

#[test]
fn bratteli_dot_and_json() {
    let (code, out, _) = hrsft(&[
        "bratteli",
        &data("gm.json"),
        "--upto",
        "2",
        "--format",
        "dot",
    ]);
    assert_eq!(code, EXIT_OK);
    for dims in ["dims (1,1)", "dims (2,1)", "dims (3,2)"] {
        assert!(out.contains(dims), "{out}");
    }
    let (_, out, _) = hrsft(&[
        "bratteli",
        &data("gm.json"),
        "--upto",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let dims: Vec<Vec<String>> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| {
            l["dims"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    assert_eq!(dims, vec![vec!["1", "1"], vec!["2", "1"], vec!["3", "2"]]);

    let (_, out, _) = hrsft(&[
        "bratteli",
        &data("gm2.json"),
        "--upto",
        "2,2",
        "--format",
        "json",
        "--diagonal",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["diagonal"]["levels"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["witness", "set-s", &data("gm2.json"), "--m", "1,1"].map(String::from);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let a = hrsft(&args);
    let b = hrsft(&args);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_OK);
}

#[test]
fn word_commands() {
    let gm = data("gm.json");
    let (_, out, _) = hrsft(&[
        "extend",
        &gm,
        "--word",
        "0,1",
        "--direction",
        "1",
        "--letter",
        "0",
    ]);
    assert_eq!(out, "0,1,0\n");
    let (_, out, _) = hrsft(&["product", &gm, "1,0", "0,1"]);
    assert_eq!(out, "1,0,1\n");
    let (code, _, err) = hrsft(&["product", &gm, "1,0", "1,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("terminus"));
    let (_, out, _) = hrsft(&["enumerate", &gm, "--shape", "2", "--origin", "0"]);
    assert_eq!(out, "0,0,0\n0,0,1\n0,1,0\n");
    let (_, out, _) = hrsft(&["enumerate", &gm, "--shape", "3", "--limit", "2"]);
    assert_eq!(out.lines().count(), 2);
    let gm2 = data("gm2.json");
    let (_, out, _) = hrsft(&[
        "extend",
        &gm2,
        "--word",
        "01;11",
        "--direction",
        "2",
        "--letter",
        "10",
    ]);
    assert_eq!(out, "01,00;11,10\n");
}

#[test]
fn witness_commands() {
    let gm = data("gm.json");
    let (_, out, _) = hrsft(&[
        "witness", "connect", &gm, "--from", "1", "--to", "1", "--min", "2",
    ]);
    assert_eq!(out, "(2) 1,0,1\n");
    let (_, out, _) = hrsft(&["witness", "distinct-pair", &gm]);
    assert_eq!(out, "(1) 0,0\n(1) 0,1\n");
    let (code, _, _) = hrsft(&["witness", "distinct-pair", &data("single.json")]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let (code, out, _) = hrsft(&[
        "witness",
        "nonperiodic",
        &data("fs2.json"),
        "--m",
        "1,1",
        "--letter",
        "00",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(" 00"));
    let (code, out, _) = hrsft(&["witness", "q-support", &data("fs2.json"), "--m", "1,1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().next().unwrap().ends_with("size 16"));
    assert_eq!(out.lines().count(), 17);
}

#[test]
fn tensor_and_redecorate_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("t.json");
    let o = out_path.to_string_lossy().into_owned();
    let (code, _, _) = hrsft(&["tensor", &data("full2.json"), &data("full2.json"), "-o", &o]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        std::fs::read_to_string(data("fs2.json")).unwrap()
    );

    let (code, out, _) = hrsft(&[
        "redecorate",
        &data("gm.json"),
        "--shape",
        "1",
        "--shape",
        "0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains(r#""names": ["0:0,0", "0:0,1", "1:1"]"#),
        "{out}"
    );
    assert!(out.contains(r#""delta": ["0", "1", "1"]"#), "{out}");

    let red = dir.path().join("r.json");
    std::fs::write(&red, &out).unwrap();
    let (_, out, _) = hrsft(&[
        "count",
        &red.to_string_lossy(),
        "--shape",
        "0",
        "--per-letter",
    ]);
    assert_eq!(out, "0:1 1:2 total:3\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"rank": 1, "alphabet": ["0", "1"], "matrices": [[[1, 2], [1, 0]]]}"#,
    )
    .unwrap();
    let (code, _, err) = hrsft(&["count", &bad.to_string_lossy(), "--shape", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("matrices[0][0][1]"), "{err}");

    let (code, _, _) = hrsft(&["count", "/nonexistent.json", "--shape", "1"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = hrsft(&["count", &data("gm.json"), "--shape", "1,1"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = hrsft(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, out, _) = hrsft(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn transpose_flag_reads_other_convention() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("gm_t.json");
    // the golden mean matrix is symmetric, so use a non-symmetric one
    std::fs::write(
        &f,
        r#"{"rank": 1, "alphabet": ["0", "1"], "matrices": [[[1, 1], [0, 1]]]}"#,
    )
    .unwrap();
    let f = f.to_string_lossy().into_owned();
    let (_, plain, _) = hrsft(&["enumerate", &f, "--shape", "1"]);
    let (_, tr, _) = hrsft(&["--transpose", "enumerate", &f, "--shape", "1"]);
    assert_eq!(plain, "0,0\n1,0\n1,1\n");
    assert_eq!(tr, "0,0\n0,1\n1,1\n");
}
