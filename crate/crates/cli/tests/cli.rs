use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealgraph"))
        .args(args)
        .env_remove("IDEALGRAPH_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_exit_codes() {
    let z12 = run(&["classify", "Z12"]);
    assert_eq!(z12.status.code(), Some(0));
    assert!(stdout(&z12).contains("hamiltonian"));

    let vs = run(&["classify", "vs(2,2)", "--format", "json"]);
    assert_eq!(vs.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&vs.stdout).unwrap();
    let ham = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "hamiltonian")
        .unwrap();
    assert_eq!(ham["agree"], false);
    assert!(ham["note"].as_str().unwrap().contains("open question"));

    assert_eq!(run(&["classify", "Zx"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn graph_outputs() {
    let dot = stdout(&run(&["graph", "Z12", "--dot"]));
    assert_eq!(dot.matches(" -- ").count(), 4);
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(stdout(&run(&["graph", "GF(2)"])), "graph \"GF(2)\" {\n}\n");

    let j: serde_json::Value =
        serde_json::from_slice(&run(&["graph", "Z16", "--json"]).stdout).unwrap();
    assert_eq!(j["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(j["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn hamiltonian_and_pancyclic() {
    let out = run(&["hamiltonian", "Z8 x Z8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["witness"]["length"], 14);
    assert_eq!(j["valid"], true);
    assert!(j["strategy"].as_str().unwrap().starts_with("grid+splice"));

    let out = run(&["hamiltonian", "GF(2) x GF(3)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("(1)"));

    let out = run(&["pancyclic", "GF(2)x GF(3)x GF(5)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let lengths: Vec<u64> = j["cycles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["length"].as_u64().unwrap())
        .collect();
    assert_eq!(lengths, [3, 4, 5, 6]);

    assert_eq!(run(&["pancyclic", "Z12"]).status.code(), Some(3));
}

#[test]
fn oracle_cap_flag_and_env() {
    // vs(2,3) has 15 vertices and is only decided by the oracle
    assert_eq!(run(&["hamiltonian", "vs(2,3)"]).status.code(), Some(0));
    assert_eq!(
        run(&["hamiltonian", "vs(2,3)", "--oracle-cap", "10"])
            .status
            .code(),
        Some(3)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_idealgraph"))
        .args(["hamiltonian", "vs(2,3)"])
        .env("IDEALGRAPH_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("oracle cap"));
}

#[test]
fn sweep_is_reproducible() {
    let args = ["sweep", "--max-vertices", "6", "--json", "--no-timestamp"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let j: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(j.get("generated_at").is_none());
    assert!(j["spec_count"].as_u64().unwrap() > 10);

    let stamped: serde_json::Value =
        serde_json::from_slice(&run(&["sweep", "--max-vertices", "6", "--json"]).stdout).unwrap();
    assert!(stamped["generated_at"].is_u64());
}

#[test]
fn max_vertices_caps_graph_building() {
    assert_eq!(
        run(&["graph", "Z8 x Z8", "--max-vertices", "10"])
            .status
            .code(),
        Some(1)
    );
}
