use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    spectra_with_env(args, &[])
}

fn spectra_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spectra"));
    cmd.args(args).env_remove("SPECTRA_BUDGET_PAIRS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn spectra")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn differential_spectrum_of_x24_over_f625() {
    let v = json(&spectra(&["ds", "--p", "5", "--m", "2", "--s", "1"]));
    assert_eq!(v["d"], 24);
    assert_eq!(v["spectrum"]["kind"], "differential");
    let entries = v["spectrum"]["entries"].as_object().unwrap();
    let pairs: Vec<(String, u64)> = entries.iter().map(|(k, f)| (k.clone(), f.as_u64().unwrap())).collect();
    assert_eq!(pairs, [("0".into(), 286), ("1".into(), 74), ("2".into(), 264), ("23".into(), 1)]);
    assert_eq!(v["uniformity"], 23);
    assert_eq!(v["locally_apn"], true);
}

#[test]
fn entries_are_in_numeric_order_in_the_raw_output() {
    let out = spectra(&["bs", "--p", "7", "--n", "4", "--d", "96"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (i0, i4, i94) = (text.find("\"0\"").unwrap(), text.find("\"4\"").unwrap(), text.find("\"94\"").unwrap());
    assert!(i0 < i4 && i4 < i94);
}

#[test]
fn verify_passes_on_worked_parameters() {
    let out = spectra(&["verify", "--p", "7", "--m", "2", "--s", "2", "--kind", "bs"]);
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["checks"][0]["branch"], "PG3_2tNotDiv");
    assert!(v["checks"][0]["diff"].as_array().unwrap().is_empty());

    let v = json(&spectra(&["verify", "--p", "5", "--m", "2", "--s", "1"]));
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert_eq!(v["match"], true);
}

#[test]
fn closed_form_reports_branch_and_rows() {
    let v = json(&spectra(&["bs-closed", "--p", "3", "--m", "4", "--s", "3"]));
    assert_eq!(v["branch"], "P3_2tDiv");
    assert_eq!(v["flags"]["t"], 1);
    let freqs: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["frequency"].as_u64().unwrap()).collect();
    assert_eq!(freqs, [3198, 80, 3120, 160, 2]);
    assert_eq!(v["spectrum"]["entries"]["0"], 3440);
    assert_eq!(v["spectrum"]["entries"]["2"], 3120);
}

#[test]
fn closed_form_refuses_outside_its_hypothesis() {
    let out = spectra(&["ds-closed", "--p", "2", "--m", "1", "--s", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("(p^m+1)/t = 3 ≤ 3"), "{}", stderr(&out));
    let out = spectra(&["verify", "--p", "2", "--m", "1", "--s", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn huge_frequencies_are_strings() {
    let v = json(&spectra(&["ds-closed", "--p", "65521", "--m", "2", "--s", "1"]));
    let zero = &v["spectrum"]["entries"]["0"];
    assert!(zero.is_string(), "{zero}");
    assert!(zero.as_str().unwrap().parse::<u128>().unwrap() > 1 << 53);
    assert!(v["spectrum"]["entries"]["1"].is_number());
}

#[test]
fn output_is_identical_across_thread_counts() {
    for args in [
        vec!["ds", "--p", "11", "--n", "4", "--d", "240"],
        vec!["bs", "--p", "5", "--n", "4", "--d", "24"],
        vec!["verify", "--p", "3", "--m", "3", "--s", "2"],
    ] {
        let one = spectra(&[args.as_slice(), &["--threads", "1"]].concat());
        let eight = spectra(&[args.as_slice(), &["--threads", "8"]].concat());
        assert_eq!(code(&one), 0);
        assert_eq!(one.stdout, eight.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["ds", "--n", "4", "--d", "3"],
        vec!["ds", "--p", "2", "--n", "4", "--m", "2", "--d", "3"],
        vec!["ds", "--p", "2", "--n", "4", "--d", "3", "--s", "1"],
        vec!["ds", "--p", "2", "--n", "4", "--s", "1"],
        vec!["ds", "--p", "2", "--n", "4", "--d", "0"],
        vec!["ds", "--p", "4", "--n", "2", "--d", "3"],
        vec!["ds", "--p", "2", "--n", "4", "--d", "3", "--threads", "0"],
        vec!["ds-closed", "--p", "5", "--n", "4", "--d", "24"],
        vec!["field-info", "--p", "2", "--n", "4", "--poly", "1,0,0,0,1"],
        vec!["field-info", "--p", "2", "--n", "4", "--psi", "1"],
        vec!["frobnicate"],
        vec![],
    ] {
        let out = spectra(&args);
        assert_eq!(code(&out), 1, "{args:?}: {}", stderr(&out));
    }
    let out = spectra(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("ds-closed"));
}

#[test]
fn budgets_exit_two() {
    let out = spectra_with_env(&["bs", "--p", "5", "--n", "2", "--d", "3"], &[("SPECTRA_BUDGET_PAIRS", "100")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("pair budget"));
    let out = spectra_with_env(
        &["bs", "--p", "5", "--n", "2", "--d", "3", "--max-pairs", "1000"],
        &[("SPECTRA_BUDGET_PAIRS", "100")],
    );
    assert_eq!(code(&out), 0);
    let out = spectra(&["ds", "--p", "2", "--n", "10", "--d", "3", "--max-elements", "512"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn config_file_supplies_defaults() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "p = 5\nm = 2\ns = 1\nformat = \"csv\"").unwrap();
    let path = file.path().to_str().unwrap();
    let out = spectra(&["ds", "--config", path]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "value,frequency\n0,286\n1,74\n2,264\n23,1\n");
    let out = spectra(&["ds", "--config", path, "--format", "json", "--s", "2"]);
    assert_eq!(json(&out)["d"], 48);
}

#[test]
fn curve_reports_case_and_both_counts() {
    let v = json(&spectra(&[
        "curve", "--p", "2", "--m", "2", "--n1", "5", "--n2", "5", "--alpha", "psi^1", "--beta", "psi^2",
    ]));
    assert_eq!((v["case"].as_str(), v["N"].as_u64(), v["bruteforce"].as_u64()), (Some("iv"), Some(25), Some(25)));
    assert_eq!(v["match"], true);

    let v = json(&spectra(&[
        "curve",
        "--p",
        "2",
        "--m",
        "1",
        "--k",
        "2",
        "--n1",
        "3",
        "--n2",
        "3",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--no-bruteforce",
    ]));
    assert_eq!(v["k"], 2);
    assert!(v["bruteforce"].is_null());

    let out = spectra(&["curve", "--p", "5", "--m", "1", "--n1", "2", "--n2", "6", "--alpha", "1", "--beta", "psi^2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no closed form covers"));
    let out = spectra(&["curve", "--p", "5", "--m", "1", "--n1", "4", "--n2", "1", "--alpha", "1", "--beta", "1"]);
    assert_eq!(code(&out), 2);
    let out = spectra(&["curve", "--p", "5", "--m", "1", "--n1", "2", "--n2", "2", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn partition_csv_and_json() {
    let out = spectra(&["partition", "--p", "2", "--m", "2", "--s", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j1,j2,size,delta0_count");
    assert_eq!(lines.len(), 1 + 25);
    assert_eq!(lines[1], "0,0,2,2");

    let v = json(&spectra(&["partition", "--p", "2", "--m", "2", "--s", "1"]));
    assert_eq!(v["field"]["psi"], 2);
    let cells = v["cells"].as_array().unwrap();
    assert!(cells.iter().all(|c| c["predicted"] == c["delta0_count"]));
    let total: u64 = cells.iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 14);
}

#[test]
fn field_info_round_trips_overrides() {
    let v = json(&spectra(&["field-info", "--p", "2", "--n", "4"]));
    assert_eq!(v["field"]["poly"], serde_json::json!([1, 1, 0, 0, 1]));
    assert_eq!(v["order"], 16);
    let v = json(&spectra(&["field-info", "--p", "2", "--n", "4", "--poly", "1,0,0,1,1", "--psi", "2"]));
    assert_eq!(v["field"]["poly"], serde_json::json!([1, 0, 0, 1, 1]));
}

#[test]
fn table_format() {
    let out = spectra(&["ds", "--p", "2", "--m", "2", "--s", "1", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("differential uniformity: 2"));
    assert!(text.contains("value  frequency"));
}
