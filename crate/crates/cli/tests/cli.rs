use frog_dynamics::hatted::{enumerate_hatted, HattedArrangement};
use frog_dynamics_cli::run;

fn frogs(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("frogs").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn gamma_line() {
    let (code, out, _) = frogs(&["gamma", "--k", "2", "--sigma", "2", "--rho", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "m=2 equality=false gamma=11/14 ≈ 0.785714");
}

#[test]
fn gamma_threshold_flags() {
    let (_, out, _) = frogs(&["gamma", "--k", "2", "--sigma", "2", "--rho", "5/3"]);
    assert!(out.starts_with("m=4 equality=true"), "{out}");
    let (_, out, _) = frogs(&[
        "gamma", "--k", "2", "--sigma", "2", "--rho", "0.1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["m"], 0);
    assert_eq!(v["sentinel"], true);
    assert_eq!(v["gamma"], "1/10");
}

#[test]
fn count_rows() {
    let (code, out, _) = frogs(&["count", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "f(4,2)=7"));
    assert!(out.lines().any(|l| l == "f(4,3)=6"));
    let (_, out, _) = frogs(&["count", "--k", "4"]);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().any(|l| l == "f(8,5)=80"));
}

#[test]
fn verify_passes_and_fails_cleanly() {
    let (code, out, _) = frogs(&["verify", "regular", "--k", "2", "--sigma", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    let (code, _, err) = frogs(&["verify", "regular", "--k", "3", "--sigma", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("sigma"));
    let (code, out, _) = frogs(&[
        "verify", "coupling", "--k", "2", "--trials", "200", "--seed", "1",
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, out, err) = frogs(&["gamma", "--k", "2", "--sigma", "2", "--rho", "1", "--bogus"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--bogus"));
    let (code, _, _) = frogs(&["verify", "nonsense", "--k", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = frogs(&["gamma", "--k", "2", "--sigma", "2", "--rho", "-1"]);
    assert_eq!(code, 2);
    let (code, _, _) = frogs(&["speeds", "--k", "2", "--sigma", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn enumerate_json_round_trips() {
    let (code, out, _) = frogs(&["enumerate", "--k", "2", "--m", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let states: Vec<HattedArrangement> = serde_json::from_str(&out).unwrap();
    assert_eq!(states, enumerate_hatted(2, 2).unwrap());
    let (_, out, _) = frogs(&[
        "enumerate",
        "--k",
        "2",
        "--m",
        "2",
        "--kind",
        "crowned",
        "--format",
        "json",
    ]);
    let crowned: Vec<frog_dynamics::crowned::CrownedArrangement> =
        serde_json::from_str(&out).unwrap();
    assert!(!crowned.is_empty());
}

#[test]
fn graph_edges() {
    let (code, out, _) = frogs(&[
        "graph", "--k", "2", "--m", "3", "--sigma", "2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("from,letter,to"));
    assert_eq!(lines.count(), 12);
    let (_, a, _) = frogs(&["graph", "--k", "2", "--m", "2", "--format", "json"]);
    let (_, b, _) = frogs(&[
        "graph",
        "--k",
        "2",
        "--m",
        "2",
        "--format",
        "json",
        "--workers",
        "2",
    ]);
    assert_eq!(a, b);
}

#[test]
fn exact_speed_table() {
    let (code, out, _) = frogs(&[
        "speeds", "--k", "2", "--sigma", "2", "--exact", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    let s: Vec<&str> = rows.iter().map(|r| r[3]).collect();
    assert_eq!(s, ["1/2", "9/14", "25/21", "5/3"]);
    let (_, out, _) = frogs(&[
        "speeds",
        "--k",
        "3",
        "--sigma",
        "3",
        "--exact",
        "--base",
        "increasing",
    ]);
    assert!(out.lines().next().unwrap().starts_with("m=1 s=1/3"));
}

#[test]
fn simulations_are_seeded() {
    let args = [
        "speeds", "--k", "2", "--sigma", "2", "--mc", "--n", "30000", "--format", "csv",
    ];
    let (code, a, err) = frogs(&args);
    assert_eq!(code, 0);
    assert!(err.contains("2024"));
    let (_, b, _) = frogs(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("run_id,k,sigma,rho,n,samples,statistic,value,stderr,seed"));
    let (code, out, _) = frogs(&[
        "lcs-sim",
        "--k",
        "2",
        "--sigma",
        "2",
        "--rho",
        "1",
        "--n",
        "200",
        "--samples",
        "5",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["gamma"], "11/14");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("frogs-count-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = frogs(&["count", "--k", "2", "--format", "csv", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("n,m,count\n4,0,1\n"));
}
