use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tcyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcyclic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn gen(dir: &Path, family: &str, r: usize) -> (String, String) {
    let path = dir.join(format!("{family}{r}.json"));
    let out = tcyclic(&["gen", "--family", family, "--r", &r.to_string(), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let ordering = dir.join(format!("{family}{r}.ordering.json"));
    assert!(ordering.exists());
    (path.to_string_lossy().into(), ordering.to_string_lossy().into())
}

#[test]
fn generated_orderings_check_out() {
    let dir = tempfile::tempdir().unwrap();
    let (m, o) = gen(dir.path(), "wheel", 4);
    let out = tcyclic(&["check-ordering", "--matroid", &m, "--ordering", &o]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["parity"], "odd");
    assert_eq!(v["cyclic_property"], true);

    let (m, o) = gen(dir.path(), "spike", 4);
    let v = json(&tcyclic(&["check-ordering", "--matroid", &m, "--ordering", &o]));
    assert_eq!(v["parity"], "even");
    // Not 3-cyclic.
    let out = tcyclic(&["check-ordering", "--matroid", &m, "--ordering", &o, "--t", "3"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn find_ordering_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (m, _) = gen(dir.path(), "whirl", 4);
    let out = tcyclic(&["find-ordering", "--matroid", &m, "--t", "3", "--mode", "t_cyclic"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["parity"], "odd");

    let u13 = dir.path().join("u13.json");
    let out = tcyclic(&["gen", "--family", "uniform", "--r", "1", "--n", "3", "--out", u13.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = tcyclic(&["find-ordering", "--matroid", u13.to_str().unwrap(), "--t", "2", "--mode", "property"]);
    assert_eq!(code(&out), 1);

    let out = tcyclic(&["find-ordering", "--matroid", &m, "--t", "3", "--mode", "sideways"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn flower_classification() {
    let dir = tempfile::tempdir().unwrap();
    for (family, want) in [("spike", "anemone"), ("swirl", "daisy")] {
        let (m, o) = gen(dir.path(), family, 5);
        let out = tcyclic(&[
            "flower", "--matroid", &m, "--ordering", &o, "--petal-sizes", "2,2,2,2,2", "--k", "3",
        ]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["verdict"], want);
    }
    let (m, o) = gen(dir.path(), "wheel", 5);
    let out = tcyclic(&["flower", "--matroid", &m, "--ordering", &o, "--petal-sizes", "1,9", "--k", "3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "not_a_flower");
    let out = tcyclic(&["flower", "--matroid", &m, "--ordering", &o, "--petal-sizes", "2,2", "--k", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn inflate_writes_matroid_ordering_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let (m, o) = gen(dir.path(), "wheel", 5);
    let out_path = dir.path().join("inflated.json");
    let out = tcyclic(&["inflate", "--matroid", &m, "--ordering", &o, "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let ordering = dir.path().join("inflated.ordering.json");
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("inflated.trace.json")).unwrap()).unwrap();
    assert_eq!(trace[0]["t_out"], 5);
    let v = json(&tcyclic(&[
        "check-ordering",
        "--matroid",
        out_path.to_str().unwrap(),
        "--ordering",
        ordering.to_str().unwrap(),
    ]));
    assert_eq!((v["t"].as_u64(), v["parity"].as_str()), (Some(5), Some("odd")));

    // At n = 8 = 2t - 2 both clauses hold; reported as even with the flag.
    let (m4, o4) = gen(dir.path(), "wheel", 4);
    let small = dir.path().join("small.json");
    assert_eq!(code(&tcyclic(&["inflate", "--matroid", &m4, "--ordering", &o4, "--out", small.to_str().unwrap()])), 0);
    let v = json(&tcyclic(&[
        "check-ordering",
        "--matroid",
        small.to_str().unwrap(),
        "--ordering",
        dir.path().join("small.ordering.json").to_str().unwrap(),
    ]));
    assert_eq!(v["both_clauses"], true);

    let (m3, o3) = gen(dir.path(), "wheel", 3);
    assert_eq!(code(&tcyclic(&["inflate", "--matroid", &m3, "--ordering", &o3])), 2);
}

#[test]
fn verify_reports_and_conversion() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let args = ["verify", "--suite", "evenflower", "--r-min", "3", "--r-max", "5"];
    let out = tcyclic(&[&args[..], &["--out", report.to_str().unwrap()]].concat());
    assert_eq!(code(&out), 0);
    let first: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    for key in ["suite_name", "instances_run", "passes", "failures", "checks", "wall_time_us"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    assert_eq!(first["passes"], first["instances_run"]);

    // Deterministic apart from timing.
    let mut second = json(&tcyclic(&args));
    let mut first = first;
    first["wall_time_us"] = 0.into();
    second["wall_time_us"] = 0.into();
    assert_eq!(first, second);

    let out = tcyclic(&["report", "--input", report.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("suite evenflower:"));
    assert!(text.lines().any(|l| l.contains("spike(5)") && l.contains("pass")));
}

#[test]
fn usage_and_cap_errors() {
    assert_eq!(code(&tcyclic(&["verify", "--suite", "basics", "--r-min", "3", "--r-max", "12"])), 2);
    assert_eq!(code(&tcyclic(&["verify", "--suite", "basics", "--r-max", "8", "--max-n", "12"])), 2);
    assert_eq!(code(&tcyclic(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&tcyclic(&["--seed", "7", "verify", "--suite", "basics"])), 2);
    assert_eq!(code(&tcyclic(&["gen", "--family", "spike", "--r", "2"])), 2);
}
