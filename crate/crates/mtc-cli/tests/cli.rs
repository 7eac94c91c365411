use std::path::Path;
use std::process::{Command, Output};

fn mtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtc")).args(args).env("MTC_THREADS", "2").output().expect("run mtc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(dir: &Path, spec: &str, name: &str) -> String {
    let out = dir.join(name);
    let o = mtc(&["construct", "--family", spec, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out.to_str().unwrap().to_string()
}

#[test]
fn construct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "ising:nu=1", "ising1.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["rank"], 3);
    let p = construct(dir.path(), "metaplectic:n=7,s=1,u=0", "m7.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["rank"], 7);
    let bad = dir.path().join("x.json");
    let o = mtc(&["construct", "--family", "ising:nu=2", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nu"));
    let o = mtc(&["construct", "--family", "ising;nu=1", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!bad.exists());
}

#[test]
fn verify_round_trip_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "ising:nu=1", "ising1.json");
    let o = mtc(&["verify", &p, "--strict"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // θ_ψ = −1 replaced by 1
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    v["T"][1] = serde_json::to_value(mtc::CycNumber::one()).unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = mtc(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("twist equation (σ,σ)"), "{}", stdout(&o));

    // θ_σ = ζ_8 passes the twist equation but not the anomaly checks; the
    // stale conductor field is reported too
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    v["T"][2] = serde_json::to_value(mtc::CycNumber::zeta(8, 1)).unwrap();
    let bad2 = dir.path().join("bad2.json");
    std::fs::write(&bad2, v.to_string()).unwrap();
    let o = mtc(&["verify", bad2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("FAIL conductor field") && s.contains("FAIL frobenius-schur indicator"), "{s}");

    let text = std::fs::read_to_string(&p).unwrap();
    let trunc = dir.path().join("trunc.json");
    std::fs::write(&trunc, &text[..text.len() / 3]).unwrap();
    assert_eq!(mtc(&["verify", trunc.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(mtc(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));

    let o = mtc(&["--json", "verify", bad.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn grid_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    for (i, spec) in [
        "pointed:z5:q=2/5",
        "pointed:z2xz2:q=0,0:b=1/2",
        "ising:nu=15",
        "metaplectic:n=3,s=-1,u=1",
        "metaplectic:n=11,s=1,u=3",
        "prod:[ising:nu=1|pointed:z3:q=1/3]",
    ]
    .iter()
    .enumerate()
    {
        let p = construct(dir.path(), spec, &format!("d{i}.json"));
        let o = mtc(&["verify", &p, "--strict"]);
        assert_eq!(o.status.code(), Some(0), "{spec}: {}", stdout(&o));
    }
}

#[test]
fn invariants_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ising = construct(dir.path(), "ising:nu=1", "ising1.json");
    let s = stdout(&mtc(&["invariants", &ising]));
    assert!(s.contains("FSexp 16"), "{s}");
    assert!(s.contains("anomaly ζ_8"), "{s}");

    let m7 = construct(dir.path(), "metaplectic:n=7,s=1,u=0", "m7.json");
    let o = mtc(&["--json", "invariants", &m7, "--prime", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cycles = v["support_cycles"][0]["cycles"].as_array().unwrap();
    let support: Vec<&serde_json::Value> = cycles.iter().filter(|c| c["is_support"] == true).collect();
    assert_eq!(support.len(), 1);
    let labels = support[0]["labels"].as_array().unwrap();
    assert_eq!(labels.len(), 3);
    for l in labels {
        assert_eq!(v["dims"][l.as_u64().unwrap() as usize], "2");
    }

    let semion = construct(dir.path(), "pointed:z2:q=1/4", "semion.json");
    let v: serde_json::Value = serde_json::from_slice(&mtc(&["--json", "invariants", &semion]).stdout).unwrap();
    assert_eq!(v["galois_order"], 1);
}

#[test]
fn classify_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("r7.jsonl");
    let o = mtc(&["--json", "classify", "--rank", "7", "--mode", "integral", "--certs", certs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["realized"].as_array().unwrap().len(), 1);
    assert_eq!(v["realized"][0]["squared_dims"], serde_json::json!([1, 1, 1, 1, 1, 1, 1]));
    let lines = std::fs::read_to_string(&certs).unwrap();
    assert_eq!(lines.lines().count(), v["profiles"].as_u64().unwrap() as usize);

    let o = mtc(&["classify", "--rank", "7", "--mode", "weakly-integral"]);
    let s = stdout(&o);
    assert!(s.contains("{1,1,4,4,4,7,7}") && s.contains("metaplectic:n=7"), "{s}");

    let o = mtc(&["--json", "classify", "--rank", "6", "--mode", "weakly-integral"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let strict: Vec<&serde_json::Value> = v["realized"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["squared_dims"].as_array().unwrap().iter().any(|x| x == 2 || x == 5))
        .collect();
    assert_eq!(strict.len(), 2);

    assert_eq!(mtc(&["classify", "--rank", "9", "--mode", "integral"]).status.code(), Some(2));
    assert_eq!(mtc(&["classify", "--rank", "7", "--mode", "both"]).status.code(), Some(2));
    assert_eq!(mtc(&["classify", "--mode", "integral"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = mtc(&["classify", "--rank", "6", "--mode", "weakly-integral"]);
    let b = Command::new(env!("CARGO_BIN_EXE_mtc"))
        .args(["classify", "--rank", "6", "--mode", "weakly-integral"])
        .env("MTC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}
