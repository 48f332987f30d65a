use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn geodiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodiscord"))
        .args(args)
        .env_remove("GEODISCORD_SEED")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = geodiscord(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    geodiscord(args).status.code().unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn write_matrix(path: &Path, n: usize, diag: f64) {
    let re: Vec<f64> = (0..n * n).map(|k| if k % (n + 1) == 0 { diag } else { 0.0 }).collect();
    let m = json!({ "rows": n, "cols": n, "re": re, "im": vec![0.0; n * n] });
    std::fs::write(path, m.to_string()).unwrap();
}

#[test]
fn discord_of_isotropic_state() {
    let v = ok_json(&["discord", "--family", "isotropic", "--param", "beta=0.5"]);
    let want = 32.0 / 243.0 * 0.25;
    assert!((num(&v, "value") - want).abs() < 1e-11);
    assert!((num(&v, "expected") - want).abs() < 1e-11);
    assert_eq!(v["engine"], "analytic");
}

#[test]
fn maximally_mixed_file_has_no_discord() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.json");
    write_matrix(&path, 9, 1.0 / 9.0);
    let p = path.to_str().unwrap();
    let v = ok_json(&["discord", "--file", p, "--dims", "3", "3"]);
    assert_eq!(num(&v, "value"), 0.0);
    let v = ok_json(&["classify", "--file", p]);
    assert_eq!(v["class"], "PPT");
}

#[test]
fn oracle_engine_agrees_with_formula_on_two_qubits() {
    // Werner state p|psi-><psi-| + (1-p) I/4 has discord p^2/2
    let p = 0.6;
    let mut re = vec![0.0; 16];
    for k in 0..4 {
        re[5 * k] = (1.0 - p) / 4.0;
    }
    re[5] += p / 2.0;
    re[10] += p / 2.0;
    re[6] = -p / 2.0;
    re[9] = -p / 2.0;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("werner.json");
    std::fs::write(&path, json!({ "rows": 4, "cols": 4, "re": re, "im": vec![0.0; 16] }).to_string()).unwrap();
    let f = path.to_str().unwrap();
    let analytic = num(&ok_json(&["discord", "--file", f]), "value");
    assert!((analytic - p * p / 2.0).abs() < 1e-11);
    let v = ok_json(&["discord", "--file", f, "--engine", "oracle", "--restarts", "24", "--seed", "3"]);
    assert!((num(&v, "value") - analytic).abs() < 1e-6, "{v}");
    assert!(v["oracle"]["converged_restarts"].as_u64().unwrap() > 0);
}

#[test]
fn keyrate_examples() {
    let v = ok_json(&["keyrate", "--family", "qkd_ex3"]);
    assert!((num(&v, "d1_sq") - 0.0252058).abs() < 1e-6);
    assert_eq!(v["feasibility"], "GuaranteedPositive");
    let v = ok_json(&["keyrate", "--family", "qkd_ex4", "--variant", "B_side"]);
    assert!((num(&v, "d1_sq") - 0.015625).abs() < 1e-9);
    assert!(num(&v, "kd_lower_bound") < 0.0);
}

#[test]
fn identical_shield_blocks_violate_o4() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..4)
        .map(|k| {
            let p = dir.path().join(format!("s{k}.json"));
            write_matrix(&p, 4, 0.25);
            p.to_str().unwrap().to_string()
        })
        .collect();
    let mut args = vec!["keyrate", "--files"];
    args.extend(paths.iter().map(String::as_str));
    assert_eq!(code(&args), 4);
    args.push("--allow-o4-violation");
    let v = ok_json(&args);
    assert_eq!(v["o4_satisfied"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["discord", "--family", "isotropic", "--param", "beta=7"]), 2);
    assert_eq!(code(&["discord", "--family", "isotropic", "--param", "beta=x"]), 2);
    assert_eq!(code(&["discord", "--family", "no_such_state"]), 5);
    assert_eq!(code(&["basis-dump", "--dim", "1"]), 3);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    write_matrix(&path, 6, 1.0 / 6.0);
    assert_eq!(code(&["discord", "--file", path.to_str().unwrap()]), 3);
    assert_eq!(code(&["discord", "--file", path.to_str().unwrap(), "--dims", "2", "2"]), 3);
}

#[test]
fn help_lists_flags() {
    let out = geodiscord(&["sweep", "--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in ["--family", "--grid", "--quantities", "--output", "--format", "--engine", "--config"] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "family = isotropic\nparam = beta=0.5\n").unwrap();
    let c = conf.to_str().unwrap();
    let from_file = num(&ok_json(&["--config", c, "discord"]), "value");
    assert!((from_file - 32.0 / 243.0 * 0.25).abs() < 1e-11);
    let overridden = num(&ok_json(&["--config", c, "discord", "--param", "beta=1"]), "value");
    assert!((overridden - 32.0 / 243.0).abs() < 1e-11);

    std::fs::write(&conf, "colour = blue\n").unwrap();
    assert_eq!(code(&["--config", c, "discord"]), 2);
}

#[test]
fn sweep_output_is_reproducible() {
    let args = [
        "sweep",
        "--family",
        "alpha",
        "--grid",
        "alpha=2:5:31",
        "--quantities",
        "discord,negativity,classification",
    ];
    let a = geodiscord(&args);
    let b = geodiscord(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "param,discord,negativity,classification");
    assert_eq!(text.lines().count(), 32);
}

#[test]
fn sweep_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/table.json");
    let o = out.to_str().unwrap();
    let res = geodiscord(&["sweep", "--family", "kd_bound", "--grid", "d1_sq=0:1:5", "--grid", "d2_sq=0:1:5", "--format", "json", "--output", o]);
    assert!(res.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 25);
    assert_eq!(v["columns"][4], "kd_bound");
}

#[test]
fn audit_is_deterministic() {
    let args = ["audit", "--dims", "2", "2", "--samples", "1", "--seed", "9", "--restarts", "8"];
    let a = ok_json(&args);
    assert_eq!(a, ok_json(&args));
    assert!(num(&a["summary"], "max_diff_a_side") < 1e-6);
}
