use std::path::Path;
use std::process::{Command, Output};

fn chaingreedy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaingreedy"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn alpha_reports_every_engine() {
    let out = chaingreedy(&["alpha", "--probs", "0.5,0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for engine in ["dp", "paper", "enumerate"] {
        assert!(text.contains(engine), "{text}");
    }
    // n = 3, p = 1/2: pmf (1/4, 1/2, 1/4)
    assert!(text.contains("alpha_p (dp) = 0.354167"), "{text}");
}

#[test]
fn alpha_csv_has_schema_line() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a.csv");
    let out = chaingreedy(&["alpha", "--probs", "1,1,1", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("# schema: alpha/v1"));
    assert_eq!(
        lines.next(),
        Some("engine,clique,weight,probability,alpha_p,abs_dev_vs_dp")
    );
    assert!(body.contains("dp,4,0.5,1,0.5,0"), "{body}");
}

#[test]
fn enumerate_lists_masks_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    let out = chaingreedy(&["enumerate", "--probs", "0.5,0.9", "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    let masks: Vec<&str> = body.lines().skip(2).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(masks, ["00", "01", "10", "11"]);
    assert!(body.contains("11,0.45,3"), "{body}");
}

#[test]
fn enumerate_over_cap_exits_3() {
    let out = chaingreedy(&["enumerate", "--probs", "0.5,0.5,0.5", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = chaingreedy(&["alpha", "--engine", "enumerate", "--probs", "0.5,0.5,0.5", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn alpha_over_cap_skips_enumeration() {
    let out = chaingreedy(&["alpha", "--probs", "0.5,0.5,0.5", "--cap", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("enumerate skipped"));
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(chaingreedy(&["alpha", "--probs", "1.5"]).status.code(), Some(2));
    assert_eq!(
        chaingreedy(&["alpha", "--probs", "0.5", "--engine", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(chaingreedy(&["alpha"]).status.code(), Some(2));
    assert_eq!(chaingreedy(&["simulate", "--iterations", "0"]).status.code(), Some(2));
    assert_eq!(
        chaingreedy(&["solve", "--instance", "/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "seed = 1\nunknown_key = 3\n").unwrap();
    let out = chaingreedy(&["alpha", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown_key"));
}

#[test]
fn reinforce_marks_best_edge() {
    let out = chaingreedy(&["reinforce", "--probs", "0.1,0.3,0.3,0.3", "--budget", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.212019*"), "{text}");
    assert!(text.contains("best edge e* = 3"), "{text}");
    assert!(text.contains("round 2:"), "{text}");
}

#[test]
fn generated_instance_round_trips_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let out = chaingreedy(&["generate", "--seed", "4", "--out", inst.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(Path::new(&inst).exists());

    let from_file = chaingreedy(&[
        "solve",
        "--seed",
        "4",
        "--instance",
        inst.to_str().unwrap(),
        "--mask",
        "1111111",
    ]);
    let generated = chaingreedy(&["solve", "--seed", "4", "--mask", "1111111"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&generated));
    let text = stdout(&from_file);
    assert!(text.contains("clique number: 8"), "{text}");
}

#[test]
fn solve_with_full_delivery_matches_sequential() {
    let out = chaingreedy(&["solve", "--seed", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value = |key: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .to_string()
    };
    assert_eq!(value("sequential value:"), value("decentralized value:"));
}

#[test]
fn solve_rejects_wrong_mask_length() {
    assert_eq!(chaingreedy(&["solve", "--mask", "101"]).status.code(), Some(2));
}

#[test]
fn simulate_relative_config_paths() {
    let dir = tempfile::tempdir().unwrap();
    let gen = chaingreedy(&[
        "generate",
        "--seed",
        "2",
        "--out",
        dir.path().join("i.json").to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    std::fs::write(
        dir.path().join("run.toml"),
        "seed = 3\niterations = 200\npermutations = [\"HGFEDCBA\"]\n\n[instance]\npath = \"i.json\"\n\n[output]\ncsv = \"sim.csv\"\n",
    )
    .unwrap();
    let out = chaingreedy(&["simulate", "--config", dir.path().join("run.toml").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(dir.path().join("sim.csv")).unwrap();
    assert!(body.starts_with("# schema: simulate/v1\n"));
    assert!(body.lines().nth(2).unwrap().starts_with("HGFEDCBA,"));
}
