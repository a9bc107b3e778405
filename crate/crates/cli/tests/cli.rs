use std::process::{Command, Output};

use serde_json::Value;

fn atomforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomforge"))
        .args(args)
        .env_remove("ATOMFORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, String) {
    let out = atomforge(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn euclid_integers_prefix() {
    let (v, _) = json(&["euclid", "--ring", "z", "--count", "5", "--json"]);
    let selected: Vec<&str> = v["results"]["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["selected"]["payload"].as_str().unwrap())
        .collect();
    assert_eq!(selected, ["2", "3", "7", "43", "13"]);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 10);
    assert_eq!(v["verification"]["failed"], 0);
}

#[test]
fn atoms_census_matches_prediction() {
    let (v, _) = json(&["atoms", "--ring", "trunc:2:1:2:6", "--json"]);
    assert_eq!(v["results"]["orbits"].as_array().unwrap().len(), 4);
    assert_eq!(v["results"]["predicted"], "4");
}

#[test]
fn atoms_csv_has_header_and_rows() {
    let out = atomforge(&["atoms", "--ring", "trunc:2:1:2:6", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "representative,valuation,orbit_size");
    assert_eq!(rows.len(), 5);
}

fn strip_wall_time(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("wall_time_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["euclid", "--ring", "gauss", "--count", "4", "--json"][..],
        &["pollack", "--modulus", "8", "--subgroup", "1", "--count", "4", "--json"],
        &["atoms", "--ring", "trunc:3:1:2:6", "--json"],
    ] {
        let (_, a) = json(args);
        let (_, b) = json(args);
        assert_eq!(strip_wall_time(&a), strip_wall_time(&b));
    }
}

#[test]
fn emitted_reports_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("euclid.json", &["euclid", "--ring", "poly-fq:2", "--count", "5", "--json"][..]),
        ("pollack.json", &["pollack", "--modulus", "5", "--subgroup", "1,4", "--count", "3", "--json"]),
        ("radical.json", &["radical", "--ring", "trunc:2:1:2:6", "--json"]),
        ("divgroup.json", &["divgroup", "--grid", "3", "--json"]),
        ("topo.json", &["topo", "periodicity", "--primes", "2,3,5", "--radius", "300", "--json"]),
    ] {
        let (_, text) = json(args);
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = atomforge(&["verify", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn tampered_report_fails_verification() {
    let (mut v, _) = json(&["euclid", "--ring", "z", "--count", "4", "--json"]);
    v["certificates"][0]["u"]["payload"] = Value::String("12345".into());
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), serde_json::to_string(&v).unwrap()).unwrap();
    let out = atomforge(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_report_is_invalid_input() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), "{\"kind\": \"euclid\"").unwrap();
    let out = atomforge(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["euclid", "--ring", "trunc:2:1:2:6"][..],
        &["euclid", "--ring", "nonsense"],
        &["pollack", "--modulus", "8", "--subgroup", "3"],
        &["atoms", "--ring", "z"],
        &["atoms", "--ring", "trunc:6:1:2:6"],
        &["topo", "golomb", "--prime", "6", "--radius", "10"],
        &["topo", "periodicity", "--primes", "2,2", "--radius", "10"],
        &["topo", "member", "--x", "3", "--base", "2", "--modulus", "4"],
        &["radical", "--ring", "gauss", "--panel", "0"],
        &["radical", "--ring", "poly-fq:2", "--panel", "1:7"],
        &["divgroup", "--alpha", "2", "--beta", "1", "--gamma", "1"],
        &["polyprimes", "--poly", "1,x"],
        &["frobnicate"],
    ] {
        let out = atomforge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_env_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_atomforge"))
        .args(["atoms", "--ring", "trunc:2:1:2:6"])
        .env("ATOMFORGE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gaussian_panel_parses() {
    let (v, _) = json(&["radical", "--ring", "gauss", "--panel", "i,-i,3-4i,2+i,-7", "--json"]);
    assert_eq!(v["results"]["panel"].as_array().unwrap().len(), 5);
    assert_eq!(v["results"]["condition_e"], "holds-on-panel");
}
