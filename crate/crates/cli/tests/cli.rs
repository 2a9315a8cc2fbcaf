use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lvcert(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lvcert")).args(args).current_dir(dir).env_remove("LV_JOBS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn frob_bound_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = lvcert(&["frob-bound", "--q", "2", "--n", "2", "--b", "1000"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["N"], 4);
    assert_eq!(v["bound"], "750000");
}

#[test]
fn com_fibers_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let out = lvcert(&["com-fibers", "--q", "3", "--s", "1"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["census"]["expected_fiber"], 6);
    assert_eq!(v["fiber_histogram"].as_object().unwrap().keys().collect::<Vec<_>>(), vec!["6"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&lvcert(&["no-such-command"], p)), 1);
    assert_eq!(code(&lvcert(&["com-fibers", "--q", "3"], p)), 1);
    assert_eq!(code(&lvcert(&["--help"], p)), 0);
    assert_eq!(code(&lvcert(&["frob-bound", "--q", "6", "--n", "2", "--b", "10"], p)), 2);
    assert_eq!(code(&lvcert(&["wpq", "--type", "A3", "--dp", "1,2", "--dq", "3", "--mu", "2,1,0,-3"], p)), 2);
    assert_eq!(code(&lvcert(&["frob-bound", "--q", "2", "--n", "2", "--b", "10", "--format", "csv"], p)), 2);
    assert_eq!(code(&lvcert(&["wpq", "--type", "A6"], p)), 3);
    assert_eq!(code(&lvcert(&["com-fibers", "--q", "7", "--s", "4"], p)), 3);
}

#[test]
fn spectrum_outside_hypotheses_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("spec.json"), r#"{"angles":[{"theta":"0","m":200}]}"#).unwrap();
    let out = lvcert(&["frob-bound", "--q", "2", "--n", "2", "--spectrum", "spec.json", "--j-max", "4"], dir.path());
    let v = json(&out);
    assert_eq!(v["spectrum"]["preconditions_hold"], false);
    assert_eq!(code(&out), 0);
}

#[test]
fn wpq_with_mu_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = lvcert(&["wpq", "--type", "A3", "--dp", "1,2", "--mu", "2,1,0,-3"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["dq"], serde_json::json!([]));
    assert!(v["elements"].as_array().unwrap().iter().all(|e| e["root_lemma"]["holds"] == true));
    let csv = lvcert(&["wpq", "--type", "C2", "--format", "csv"], dir.path());
    assert_eq!(code(&csv), 0);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 8);
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("vectors.csv"), "1,0,0,0\n0,0,1,0\n0,1,0,0\n0,0,0,1\n1,1,1,1\n").unwrap();
    let v = json(&lvcert(&["transvect-cert", "--vectors", "vectors.csv"], p));
    assert_eq!(v["full"], true);
    std::fs::write(p.join("tuple.json"), r#"{"d":1,"subspaces":[[[1,0]],[[0,1]],[["1/2",1]]]}"#).unwrap();
    assert_eq!(code(&lvcert(&["bad-lagrangian", "--tuple", "tuple.json"], p)), 3);
    let v = json(&lvcert(&["bad-lagrangian", "--tuple", "tuple.json", "--field", "5"], p));
    assert_eq!(v["field"], "F5");
    let v = json(&lvcert(&["bad-lagrangian", "--standard", "2", "--field", "5", "--brute-force"], p));
    assert_eq!(v["brute_force"]["agrees"], true);
    let v = json(&lvcert(&["bad-lagrangian", "--standard", "3"], p));
    assert_eq!(v["witness"], Value::Null);
    assert_eq!(v["method"], "structured");
    std::fs::write(p.join("phi.csv"), "2,0\n0,2\n").unwrap();
    let v = json(&lvcert(&["linalg-census", "--q", "3", "--d", "1", "--phi", "phi.csv"], p));
    assert_eq!(v["total_flags"], 4);
    std::fs::write(p.join("conn.json"), r#"[[["0"],["1"]],[["0"],["0"]]]"#).unwrap();
    let v = json(&lvcert(&["flat-solve", "--connection", "conn.json", "--order", "10", "--p", "3"], p));
    assert_eq!(v["residual_vanishes"], true);
    assert_eq!(v["valuation_bound_holds"], true);
    std::fs::write(p.join("series.json"), r#"[["1","0","0","0","0"],["0","1","0","0","0"],["0","0","1","0","0"]]"#).unwrap();
    let v = json(&lvcert(&["relations", "--series", "series.json", "--degree", "2"], p));
    assert_eq!(v["display"], serde_json::json!(["x0*x2 - x1^2"]));
}

#[test]
fn replay_roundtrip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let out = lvcert(&["centralizer", "--p", "3", "--e", "2", "--dim", "2", "--trials", "40", "--seed", "7", "--jobs", "1", "--out", "c.json"], p);
    assert_eq!(code(&out), 0);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(p.join("c.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["command"], "centralizer");
    for jobs in ["1", "3"] {
        let r = lvcert(&["replay", "c.manifest.json", "--jobs", jobs], p);
        assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
        assert_eq!(json(&r)["matches"], true);
    }
    // the manifest seed wins over a conflicting flag
    let r = lvcert(&["replay", "c.manifest.json", "--seed", "8"], p);
    assert_eq!(code(&r), 0);
    assert!(String::from_utf8_lossy(&r.stderr).contains("ignoring --seed 8"));
    let text = std::fs::read_to_string(p.join("c.json")).unwrap();
    std::fs::write(p.join("c.json"), text.replacen("\"seed\": 7", "\"seed\": 9", 1)).unwrap();
    let r = lvcert(&["replay", "c.manifest.json"], p);
    assert_eq!(code(&r), 4);
    let v = json(&r);
    assert_eq!(v["matches"], false);
    assert_eq!(v["diff"]["differing_lines"], 1);
}

#[test]
fn output_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for args in [
        vec!["hodge-scan", "--n-min", "2", "--n-max", "12", "--d-max", "60"],
        vec!["lw2-sweep", "--type", "A2", "--bound", "2"],
        vec!["centralizer", "--p", "2", "--e", "3", "--dim", "3", "--trials", "30", "--seed", "3"],
    ] {
        let outs: Vec<Vec<u8>> = ["1", "2", "4"]
            .iter()
            .map(|j| {
                let mut a = args.clone();
                a.extend(["--jobs", j]);
                lvcert(&a, p).stdout
            })
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn lv_jobs_env_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lvcert"))
        .args(["lw2-sweep", "--type", "C2", "--e", "1"])
        .env("LV_JOBS", "2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["violations"], 0);
}
