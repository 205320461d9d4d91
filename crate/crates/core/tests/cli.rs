use std::process::{Command, Output};

use serde_json::Value;

fn hgauss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgauss")).args(args).env_remove("HGAUSS_MAX_BASIS").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = hgauss(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn workspace(name: &str, src: &str) -> String {
    let dir = std::env::temp_dir().join(format!("hgauss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, src).unwrap();
    path.display().to_string()
}

#[test]
fn solve_su_q2_half() {
    let v = json(&["solve", "--algebra", "su_q2:1/2"]);
    assert_eq!(v["result"]["dimension"], 2);
    assert_eq!(v["result"]["eta_forced_zero"], serde_json::json!(["gamma", "gamma*"]));
    assert_eq!(v["result"]["phi_forced_zero"], serde_json::json!(["gamma", "gamma*"]));
    for key in ["command", "inputs", "config", "result", "warnings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn kinfty_on_z2() {
    let v = json(&["kinfty", "--algebra", "group:Z2", "--degree", "6", "--nmax", "6"]);
    assert_eq!(v["result"]["evidence"], "total-disconnection-evidence");
}

#[test]
fn heat_exp_state() {
    let v = json(&["exp-state", "--functional", "heat", "--t", "1", "--word", "u^3", "--order", "30"]);
    let re = v["result"]["re"].as_f64().unwrap();
    assert!((re - (-4.5f64).exp()).abs() < 1e-9);
}

#[test]
fn output_is_byte_identical() {
    let args = ["gaussian-part-dual", "--group", "F2", "--len", "1", "--json"];
    assert_eq!(hgauss(&args).stdout, hgauss(&args).stdout);
}

#[test]
fn workspace_items_are_usable() {
    let file = workspace(
        "ws.hga",
        "algebra A = su_q2(q = 1/2);\n\
         gaussian torus on A { drift alpha = (-1/2 + i); drift alpha* = (-1/2 - i); gram (alpha, alpha) = 1; gram (alpha*, alpha*) = 1; gram (alpha, alpha*) = -1; }\n\
         group F2 { gens a, b; rels; }\n\
         group H = class2_quotient(F2);\n",
    );
    let v = json(&["check-gaussian", "--file", &file, "--functional", "torus"]);
    assert_eq!(v["result"]["passed"], true, "{v}");
    let v = json(&["wick", "--file", &file, "--functional", "torus", "--poly", "alpha.alpha*"]);
    assert_eq!(v["result"]["agree"], true);
    let v = json(&["class2", "--file", &file, "--group", "F2"]);
    assert_eq!(v["result"]["commutator"]["rank"], 1);
    let v = json(&["gaussian-part-dual", "--file", &file, "--group", "H", "--len", "1"]);
    assert_eq!(v["result"]["center_values"], serde_json::json!(["-2i"]));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let file = workspace("bad.hga", "algebra A = su_q2(q = 1/2);\ngaussian g on B { }\n");
    let out = hgauss(&["solve", "--file", &file, "--algebra", "A"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:15") && err.contains("unknown reference `B`"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hgauss(&["solve"]).status.code(), Some(1));
    assert_eq!(hgauss(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(hgauss(&["solve", "--algebra", "nope:3"]).status.code(), Some(1));
}

#[test]
fn resource_cap_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_hgauss"))
        .args(["kinfty", "--algebra", "group:F2", "--degree", "4", "--nmax", "3"])
        .env("HGAUSS_MAX_BASIS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HGAUSS_MAX_BASIS"));
}

#[test]
fn every_subcommand_has_help_with_defaults() {
    let subcommands = [
        "eval",
        "wick",
        "check-gaussian",
        "check-drift",
        "check-classical",
        "solve",
        "exp-state",
        "positivity",
        "kn",
        "kinfty",
        "membership",
        "kac-gens",
        "scaling",
        "filtration",
        "o2plus-descent",
        "class2",
        "torsion-free",
        "gaussian-part-dual",
        "axioms",
    ];
    for s in subcommands {
        let out = hgauss(&[s, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{s}");
        assert!(!out.stdout.is_empty());
    }
    let help = String::from_utf8(hgauss(&["kinfty", "--help"]).stdout).unwrap();
    assert!(help.contains("[default: 6]"));
    let help = String::from_utf8(hgauss(&["exp-state", "--help"]).stdout).unwrap();
    assert!(help.contains("[default: 30]") && help.contains("--tol"));
}

#[test]
fn remaining_subcommands_complete() {
    let runs: [&[&str]; 9] = [
        &["eval", "--algebra", "su_q2:1/2", "--map", "coproduct", "--poly", "gamma"],
        &["check-drift", "--functional", "rotation"],
        &["check-classical", "--functional", "heat"],
        &["positivity", "--functional", "heat", "--t", "1/2", "--degree", "2"],
        &["kn", "--algebra", "group:Z2", "--n", "2", "--degree", "3"],
        &["membership", "--algebra", "group:F2", "--n", "2", "--degree", "4", "--poly", "g1.g2 - g2.g1"],
        &["filtration", "--algebra", "group:F2", "--n", "2", "--degree", "4"],
        &["o2plus-descent", "--degree", "4", "--nmax", "4"],
        &["axioms", "--algebra", "su_q2:1/2"],
    ];
    for args in runs {
        let v = json(args);
        assert!(v["result"].is_object(), "{args:?}");
    }
    let v = json(&["eval", "--algebra", "su_q2:1/2", "--map", "counit", "--poly", "alpha + gamma"]);
    assert_eq!(v["result"]["value"], "1");
    let v = json(&["membership", "--algebra", "group:F2", "--n", "2", "--degree", "4", "--poly", "g1.g2 - g2.g1"]);
    assert_eq!(v["result"]["verdict"], "certified_in");
    let v = json(&["torsion-free", "--group", "Z2*Z2"]);
    assert_eq!(v["result"]["abelian"]["rank"], 0);
    let v = json(&["scaling", "--algebra", "su_q2:1/2", "--t", "0"]);
    assert_eq!(v["result"]["s_squared"][0][1], "1/4");
}
