use std::process::Command;

use qheis::cli::{parse_args, run};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qheis").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(s: &str) -> Vec<serde_json::Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_qybe_two_parameter() {
    let (code, out, _) = run_args(&["verify-qybe", "--preset", "two-parameter", "--kh", "3", "--kw", "3"]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["residual_terms"], 0);
    assert_eq!(lines[0]["pass"], true);
}

#[test]
fn braid_invariant_reports_divergent_trace() {
    let (code, out, _) = run_args(&[
        "braid-invariant", "--braid", "B2: s1 s1 s1", "--h", "0.3", "--e", "1", "--n", "0", "--w", "0.2", "--cutoff", "14",
    ]);
    let v = &json_lines(&out)[0];
    for key in ["braid", "m", "writhe", "P", "D", "tail", "converged"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["m"], 2);
    assert_eq!(v["writhe"], 3);
    assert_eq!(v["D"], 14);
    // the truncated trace grows with D, so the computation does not converge
    assert_eq!(v["converged"], false);
    assert_eq!(code, 1);
}

#[test]
fn rmatrix_pi3_json() {
    let (code, out, _) = run_args(&["rmatrix", "--rep", "pi3", "--format", "json"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 9);
    assert_eq!(m[1][5], "2 * h^1");
    assert_eq!(m[1][7], "-2 * h^1");
    assert_eq!(m[4][5], "w^1");
    assert_eq!(m[4][7], "-w^1");
    assert_eq!(m[8][8], "1");
}

#[test]
fn rmatrix_fock_roundtrips_through_json() {
    let (code, out, _) = run_args(&["rmatrix", "--rep", "fock", "--cutoff", "4", "--h", "0.3", "--w", "0.2"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    let m = qheis::fock::matrix_from_json(&v["matrix"]).unwrap();
    let p = qheis::fock::RepParams::real(0.3, 0.2, 1.0, 0.0, 4).unwrap();
    let direct = qheis::fock::rmatrix_formula_matrix(&p, &p, qheis::fock::Reading::Corrected);
    assert!((m - direct).camax() < 1e-15);
}

#[test]
fn invalid_flags_exit_two() {
    assert_eq!(run_args(&["verify-qybe", "--kh", "0"]).0, 2);
    assert_eq!(run_args(&["verify-qybe", "--tolerance", "-1"]).0, 2);
    assert_eq!(run_args(&["no-such-command"]).0, 2);
    assert_eq!(run_args(&[]).0, 2);
    assert_eq!(run_args(&["braid-invariant"]).0, 2);
    assert_eq!(run_args(&["braid-invariant", "--braid", "B2: s3"]).0, 2);
    assert_eq!(run_args(&["turaev-check", "--cutoff", "1"]).0, 2);
    assert_eq!(run_args(&["turaev-check", "--h", "1+"]).0, 2);
}

#[test]
fn check_failure_exits_one() {
    // the spectral family fails off x_u x_v = 1
    let (code, out, _) = run_args(&["verify-qybe", "--preset", "two-parameter", "--spectral", "2,1"]);
    assert_eq!(code, 1);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["pass"], true);
    assert_eq!(lines[1]["pass"], false);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("qheis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# qybe run\ncommand=verify-qybe\npreset=standard-h\nkh=2\nkw=2\n").unwrap();
    let cfg = parse_args(["qheis", "--config", path.to_str().unwrap(), "--kh", "4"]).unwrap();
    assert_eq!(cfg.kh, 4);
    assert_eq!(cfg.kw, 2);
    let (code, out, _) = run_args(&["--config", path.to_str().unwrap(), "--kh", "3"]);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["preset"], "standard-h");
    assert_eq!(v["K_h"], 3);
    // a command on the line wins over the file's
    let cfg = parse_args(["qheis", "verify-cybe", "--config", path.to_str().unwrap()]).unwrap();
    assert_eq!(cfg.command, Some(qheis::cli::Command::VerifyCybe));
    std::fs::write(&path, "kh 3\n").unwrap();
    assert_eq!(run_args(&["verify-qybe", "--config", path.to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn compare_mode_is_byte_identical() {
    let args = ["verify-hopf", "--preset", "standard-h", "--kh", "3", "--kw", "3", "--compare"];
    let (c1, a, _) = run_args(&args);
    let (c2, b, _) = run_args(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(!a.contains("\"ms\""));
}

#[test]
fn csv_and_text_formats() {
    let (_, csv, _) = run_args(&["verify-hopf", "--preset", "standard-h", "--format", "csv", "--compare"]);
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("residual_terms") && header.contains("pass"));
    assert_eq!(lines.count(), 2);
    let (_, text, _) = run_args(&["verify-cybe", "--spectral", "1,1", "--format", "text"]);
    assert!(text.starts_with("PASS cybe"));
}

#[test]
fn ribbon_report_carries_conformal_weight() {
    let (_, out, _) = run_args(&["verify-ribbon", "--preset", "standard-h", "--n", "0.5", "--cutoff", "6"]);
    let lines = json_lines(&out);
    let spectrum = lines.last().unwrap();
    assert_eq!(spectrum["check"], "ribbon_spectrum");
    assert_eq!(spectrum["scalar"], true);
    let delta = spectrum["conformal_weight"].as_array().unwrap();
    assert!(delta[0].as_f64().unwrap().abs() < 1e-12);
    assert!(spectrum["conformal_weight_note"].as_str().unwrap().starts_with("interpretation"));
}

#[test]
fn binary_honours_seed_and_output_file() {
    let exe = env!("CARGO_BIN_EXE_qheis");
    let dir = std::env::temp_dir().join(format!("qheis-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("rtt.jsonl");
    let status = Command::new(exe)
        .args(["verify-rtt", "--kh", "2", "--kw", "2", "--samples", "8", "--compare", "--output"])
        .arg(&out)
        .env("QHEIS_SEED", "7")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let last = json_lines(&text).pop().unwrap();
    assert_eq!(last["check"], "rtt_confluence");
    assert!(last["notes"].as_array().unwrap().iter().any(|n| n == "8 words, seed 7"));
    let bad = Command::new(exe).args(["verify-rtt"]).env("QHEIS_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
