//! Process-level checks of the `prym` binary: flag handling, config
//! layering, output determinism, and error reporting.

use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

fn prym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn selftest_passes_quickly() {
    let start = Instant::now();
    let out = prym(&["selftest"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn sweep_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = prym(&[
            "sweep",
            "--p",
            "3",
            "--max-covers",
            "25",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "same seed must give identical bytes");
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.starts_with("q,g,NX,NY,D,delta,prym_order,thm2_lo,thm2_hi,weil_lo,weil_hi,"));
    assert_eq!(text.lines().count(), 26);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.conf");
    std::fs::write(&cfg, "seed=1\nmax-covers=8\ndeg1=4\ndeg2=2\np=3\n").unwrap();

    let run = |extra: &[&str], name: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let mut args = vec!["sweep", "--config", cfg.to_str().unwrap(), "--out"];
        args.push(path.to_str().unwrap());
        args.extend_from_slice(extra);
        let out = prym(&args);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
        std::fs::read(&path).unwrap()
    };

    let from_file = run(&[], "file.csv");
    let overridden = run(&["--seed", "2"], "flag.csv");
    let direct = {
        let path = dir.path().join("direct.csv");
        let out = prym(&[
            "sweep",
            "--p",
            "3",
            "--deg1",
            "4",
            "--deg2",
            "2",
            "--max-covers",
            "8",
            "--seed",
            "2",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
        std::fs::read(&path).unwrap()
    };
    assert_eq!(overridden, direct, "flag must override the file value");
    assert_ne!(from_file, overridden, "different seeds pick different subsets");
}

#[test]
fn bad_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "speed=1\n").unwrap();
    let out = prym(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unknown key"));
}

#[test]
fn analyze_cover_pretty_and_json() {
    let out = prym(&["analyze-cover", "--p", "5", "--f1", "1,1,0,0,1", "--f2", "2,0,1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("g(X) = 2"));
    assert!(text.contains("dim Pr = 1"));
    assert!(text.contains("sandwich: ok"));

    let out = prym(&[
        "analyze-cover",
        "--p",
        "5",
        "--f1",
        "1,1,0,0,1",
        "--f2",
        "2,0,1",
        "--format",
        "json",
        "--extension",
        "2",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["q"], 5);
    assert_eq!(v["g"], 2);
    assert_eq!(v["sandwich_ok"], true);
    assert_eq!(v["extensions"].as_array().unwrap().len(), 2);
}

#[test]
fn extension_flag_prints_orders() {
    let out = prym(&[
        "analyze-cover",
        "--p",
        "3",
        "--f1",
        "1,0,0,0,1",
        "--f2",
        "2,0,1",
        "--extension",
        "3",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    for n in 1..=3 {
        assert!(text.contains(&format!("#Pr(F_{{3^{n}}})")), "missing n = {n}:\n{text}");
    }
    assert!(text.contains("rel err"));
}

#[test]
fn rejections_name_the_hypothesis() {
    // f1 = (1+x)^2 is not squarefree
    let out = prym(&["analyze-cover", "--p", "3", "--f1", "1,2,1", "--f2", "2,0,1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("squarefree"), "stderr: {}", stderr(&out));

    // shared factor x
    let out = prym(&["analyze-cover", "--p", "3", "--f1", "0,1,0,1,1", "--f2", "0,1,1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("ramified"), "stderr: {}", stderr(&out));

    // even characteristic
    let out = prym(&["sweep", "--p", "2", "--max-covers", "1"]);
    assert!(!out.status.success());
}

#[test]
fn analyze_curve_reports_thm5() {
    let out = prym(&["analyze-curve", "--p", "5", "--f1", "1,1,0,0,0,0,1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("genus = 2"));
    assert!(text.contains("thm5 lower"));
    assert!(text.contains("thm5 sandwich: ok"));
}

#[test]
fn lemma_check_prints_the_table() {
    let out = prym(&["lemma-check", "--seed", "3", "--count", "6", "--resolution", "1/32"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("lemma3"));
    assert!(text.contains("lemma4"));
    assert_eq!(text.matches(" ok").count(), 6, "six verdict rows:\n{text}");
    assert!(text.contains("held on all 6 problems"));
}

#[test]
fn json_sweep_parses_and_mirrors_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let out = prym(&[
        "sweep",
        "--p",
        "3",
        "--max-covers",
        "6",
        "--seed",
        "4",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let obj = row.as_object().unwrap();
        assert_eq!(obj.len(), 18);
        assert_eq!(obj["q"], 3);
        assert!(obj["prym_order"].is_string());
    }
}

#[test]
fn golden_file_is_committed_not_generated() {
    // the golden lives in the repo so `selftest` checks drift, not identity
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/selftest.csv");
    let text = std::fs::read_to_string(golden).unwrap();
    assert!(text.starts_with("q,g,"));
    assert_eq!(text.lines().count(), 11, "header plus ten pinned rows");
}
