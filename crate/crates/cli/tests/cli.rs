use std::process::{Command, Output};

use serde_json::Value;

fn nilorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilorbit"))
        .args(args)
        .env_remove("NILORBIT_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = nilorbit(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn dims(v: &Value) -> Vec<u64> {
    v["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["dim"].as_u64().unwrap())
        .collect()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn roots_reports() {
    let g2 = json(&["roots", "--type", "G2"]);
    assert_eq!(g2["num_roots"], 12);
    assert_eq!(g2["num_long_roots"], 6);
    assert_eq!(g2["xi"].as_array().unwrap().len(), 1);
    let a1 = json(&["roots", "--type", "A1"]);
    assert_eq!(a1["num_roots"], 2);
    assert!(a1["xi"].as_array().unwrap().is_empty());
}

#[test]
fn bad_type_is_a_usage_error() {
    let out = nilorbit(&["roots", "--type", "Z9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Z9"));
    assert!(out.stdout.is_empty());
}

#[test]
fn gkm_graph_shapes() {
    let a1 = json(&["gkm-graph", "--type", "A1", "--parabolic", "borel"]);
    assert_eq!(a1["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(a1["edges"].as_array().unwrap().len(), 1);
    for (t, n, deg) in [("B2", 4, 3), ("G2", 6, 5)] {
        let g = json(&["gkm-graph", "--type", t, "--parabolic", "xi"]);
        assert_eq!(g["vertices"].as_array().unwrap().len(), n, "{t}");
        assert_eq!(g["vertex_degree"], deg, "{t}");
        assert_eq!(g["edges"].as_array().unwrap().len(), n * deg / 2, "{t}");
        assert!(g["vertices"][0].get("long_root").is_some());
    }
    let explicit = json(&["gkm-graph", "--type", "B2", "--parabolic", "1"]);
    assert_eq!(explicit["parabolic"], serde_json::json!([1]));
}

#[test]
fn betti_tables() {
    assert_eq!(dims(&json(&["betti", "min-orbit", "--type", "A1"])), vec![1, 1, 0, 0, 0]);
    assert_eq!(
        dims(&json(&["betti", "reg-orbit", "--type", "A2", "--max-degree", "6"])),
        vec![1, 2, 2, 1]
    );
    assert_eq!(dims(&json(&["betti", "min-orbit", "--type", "B2"])), vec![1, 2, 3, 4, 4]);
    // equivariant Betti numbers of G/P_Xi for B2 are 1, 3, 6, 10, 14
    assert_eq!(dims(&json(&["betti", "flag", "--type", "B2"])), vec![1, 3, 6, 10, 14]);
}

#[test]
fn ring_reports() {
    let a1 = json(&["ring", "min-orbit", "--type", "A1", "--max-degree", "4"]);
    assert_eq!(strings(&a1["euler_class"]), vec!["x", "-x"]);
    let degrees = a1["degrees"].as_array().unwrap();
    assert_eq!(degrees[0]["dim"], 1);
    assert_eq!(strings(&degrees[0]["basis"][0]), vec!["1", "1"]);
    assert_eq!(degrees[1]["dim"], 1);
    assert_eq!(strings(&degrees[1]["basis"][0]), vec!["x", "0"]);
    assert_eq!(degrees[2]["dim"], 0);

    let b2 = json(&["ring", "flag-xi", "--type", "B2", "--max-degree", "4"]);
    let d4 = &b2["degrees"][2];
    assert_eq!(d4["degree"], 4);
    assert_eq!(d4["dim"], 6);
    assert_eq!(d4["basis"].as_array().unwrap().len(), 6);
}

#[test]
fn center_reports() {
    let a2 = json(&["center", "--type", "A2", "--max-degree", "4"]);
    assert_eq!(a2["invariant_factors"], serde_json::json!([3]));
    let groups: Vec<String> = a2["cohomology"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["group"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(groups, vec!["Z", "0", "Z/3", "0", "Z/3"]);
    let e8 = json(&["center", "--type", "E8"]);
    assert!(e8["invariant_factors"].as_array().unwrap().is_empty());
    assert_eq!(e8["order"], 1);
}

#[test]
fn polytope_report() {
    let g2 = json(&["polytope", "--type", "G2"]);
    assert_eq!(g2["num_vertices"], 6);
    assert_eq!(strings(&g2["squared_norms"]), vec!["2"]);
    assert_eq!(strings(&g2["inner_products"]), vec!["-2", "-1", "1", "2"]);
}

#[test]
fn selftest_exit_status() {
    let out = nilorbit(&["selftest", "--type", "B2", "--max-degree", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&["selftest", "--type", "G2", "--max-degree", "4"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: &[&[&str]] = &[
        &["roots", "--type", "G2"],
        &["gkm-graph", "--type", "G2"],
        &["betti", "min-orbit", "--type", "C3"],
        &["ring", "min-orbit", "--type", "B2", "--max-degree", "4"],
        &["polytope", "--type", "B3"],
        &["center", "--type", "D4"],
        &["selftest", "--type", "A2", "--max-degree", "4"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let out = nilorbit(&full);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(text, again, "{args:?}");
    }
}

#[test]
fn rationals_are_in_lowest_terms() {
    let v = json(&["gkm-graph", "--type", "B2", "--parabolic", "borel"]);
    let mut seen_fraction = false;
    for vertex in v["vertices"].as_array().unwrap() {
        for s in strings(&vertex["tag"]) {
            if let Some((p, q)) = s.split_once('/') {
                seen_fraction = true;
                let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
                assert!(q > 1);
                let gcd = (1..=p.abs().min(q)).rev().find(|d| p % d == 0 && q % d == 0).unwrap();
                assert_eq!(gcd, 1, "{s}");
            } else {
                s.parse::<i64>().unwrap();
            }
        }
    }
    assert!(seen_fraction);
}

#[test]
fn exit_codes() {
    let capped = nilorbit(&["gkm-graph", "--type", "E8", "--parabolic", "borel", "--cap", "1000"]);
    assert_eq!(capped.status.code(), Some(2));
    let env_capped = Command::new(env!("CARGO_BIN_EXE_nilorbit"))
        .args(["gkm-graph", "--type", "A3"])
        .env("NILORBIT_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(env_capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&env_capped.stderr).contains("cap"));

    for args in [
        &["betti", "min-orbit", "--type", "A2", "--max-degree", "3"][..],
        &["gkm-graph", "--type", "A2", "--parabolic", "4"],
        &["gkm-graph", "--type", "A2", "--parabolic", "one"],
        &["roots"],
        &["frobnicate", "--type", "A2"],
    ] {
        assert_eq!(nilorbit(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(nilorbit(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_independent_of_jobs() {
    let run = |jobs: &str| {
        nilorbit(&["ring", "flag-xi", "--type", "B2", "--max-degree", "6", "--format", "json", "--jobs", jobs]).stdout
    };
    assert_eq!(run("1"), run("4"));
}
