use std::process::{Command, Output};

use modwb::curves::ApTable;
use modwb::forms::FormCoefficients;
use modwb::modcheck::{CompareReport, ModularityReport, TraceCheckReport, Verdict};
use modwb::siegel::SiegelExpansion;
use serde_json::Value;

fn modwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modwb"))
        .args(args)
        .env_remove("MODWB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ap_csv_rows() {
    let o = modwb(&["ap", "--curve", "0,-1,1,0,0", "--pmax", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,ap,bad");
    let primes: Vec<u64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    assert_eq!(lines[1], "2,-2,0");
    assert_eq!(lines[5], "11,1,1");
    let table = ApTable::from_csv("cli".into(), 20, &text).unwrap();
    assert_eq!(table.entries[&13], 4);
}

#[test]
fn ap_json_round_trip() {
    let o = modwb(&["ap", "--curve", "0,-1,1,0,0", "--pmax", "30", "--format", "json"]);
    let table: ApTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table.bound, 30);
    assert!(table.bad_primes.contains(&11));
}

#[test]
fn verify_level_11() {
    let o = modwb(&["verify", "--level", "11", "--pmax", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: ModularityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.verdict, Verdict::VerifiedToBound);
    assert!(rep.mismatches.is_empty());
    assert_eq!(rep.bound, 500);
}

#[test]
fn verify_refuted_exits_2() {
    let o = modwb(&["verify", "--level", "11", "--form-level", "14", "--pmax", "50"]);
    assert_eq!(o.status.code(), Some(2));
    let rep: ModularityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.verdict, Verdict::Refuted);
    let o = modwb(&["verify", "--level", "11", "--delta", "--pmax", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let rep: ModularityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.mismatches[0].p, 2);
    assert_eq!((rep.mismatches[0].lhs.as_str(), rep.mismatches[0].rhs.as_str()), ("-2", "-24"));
    assert!(!rep.notes.is_empty());
}

#[test]
fn spinor_g1_example() {
    let o = modwb(&["spinor", "--g", "1", "--k", "12", "--p", "2", "--ap", "-24"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!(["1", "24", "2048"]));
}

#[test]
fn spinor_g2_saito_kurokawa() {
    let o = modwb(&["spinor", "--g", "2", "--k", "10", "--p", "2", "--sk-ap", "-528", "--sk-ap2", "147712"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coeffs"][1], "-240");
    assert_eq!(v["coeffs"][4], (1u64 << 34).to_string());
    // a_{p^2} inconsistent with a_p
    let o = modwb(&["spinor", "--g", "2", "--k", "10", "--p", "2", "--sk-ap", "-528", "--sk-ap2", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn standard_g1_is_exact() {
    let o = modwb(&["standard", "--g", "1", "--k", "12", "--p", "2", "--ap", "-24"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // (1 - t)(1 - (576/2048 - 2) t + t^2)
    assert_eq!(v["coeffs"], serde_json::json!(["1", "23/32", "-23/32", "-1"]));
}

#[test]
fn form_coeffs_delta() {
    let o = modwb(&["form-coeffs", "--delta", "--precision", "6"]);
    let fc: FormCoefficients = serde_json::from_str(&stdout(&o)).unwrap();
    let got: Vec<String> = fc.coeffs.iter().map(|c| c.to_string()).collect();
    assert_eq!(got, vec!["0", "1", "-24", "252", "-1472", "4830", "-6048"]);
    let o = modwb(&["form-coeffs", "--delta", "--level", "11", "--precision", "6"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn igusa_round_trips() {
    let o = modwb(&["igusa", "--k", "10", "--det-bound", "6"]);
    let f = SiegelExpansion::from_json(&stdout(&o)).unwrap();
    assert_eq!(f.weight(), 10);
    assert_eq!(f.to_json().trim(), stdout(&o).trim());
    assert_eq!(modwb(&["igusa", "--k", "11", "--det-bound", "6"]).status.code(), Some(1));
}

#[test]
fn dseries_and_divergence() {
    let o = modwb(&["dseries", "--k", "10", "--det-bound", "40", "--s", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["value"][0].as_f64().unwrap() > 0.0);
    let o = modwb(&["dseries", "--k", "10", "--det-bound", "40", "--s", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_siegel_needs_upper_half_space() {
    let o = modwb(&["eval-siegel", "--k", "10", "--trace-bound", "12", "--im", "1.2,0.3,1.1", "--re", "0.1,0.2,-0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trace_bound"], 12);
    let o = modwb(&["eval-siegel", "--k", "10", "--trace-bound", "12", "--im", "1,2,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn genus2_polys_are_weil() {
    let o = modwb(&["genus2", "--f", "1,0,0,0,0,1,1", "--pmax", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for poly in v["polys"].as_array().unwrap() {
        let p = poly["p"].as_i64().unwrap();
        let c: Vec<i64> = poly["coeffs"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(c[4], p * p);
        assert_eq!(c[3], p * c[1]);
    }
}

#[test]
fn trace_check_verdicts() {
    let o = modwb(&["trace-check", "--level", "11", "--pmax", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: TraceCheckReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.verdict, Verdict::VerifiedToBound);
    let o = modwb(&["trace-check", "--level", "11", "--form-level", "15", "--pmax", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_modes() {
    let o = modwb(&["compare-l", "--level", "11", "--pmax", "100", "--mode", "spinor"]);
    let rep: CompareReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.verdict, Verdict::VerifiedToBound);
    let o = modwb(&["compare-l", "--level", "11", "--pmax", "100", "--mode", "maassD", "--s", "3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: CompareReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.verdict, Verdict::Refuted);
    for s in &rep.samples {
        assert!((s.l_value[0] / s.d_value[0] - 2.0).abs() < 0.05);
    }
    let o = modwb(&["compare-l", "--level", "11", "--pmax", "100", "--mode", "standard"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree mismatch"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(modwb(&[]).status.code(), Some(64));
    assert_eq!(modwb(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(modwb(&["ap", "--curve", "1,2", "--pmax", "5"]).status.code(), Some(64));
    assert_eq!(modwb(&["ap", "--curve", "0,0,0,1,0", "--pmax", "0"]).status.code(), Some(64));
    assert_eq!(modwb(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["igusa", "--k", "12", "--det-bound", "5"];
    assert_eq!(modwb(&args).stdout, modwb(&args).stdout);
    let args = ["verify", "--level", "14", "--pmax", "200"];
    assert_eq!(modwb(&args).stdout, modwb(&args).stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("delta.json");
    let o = modwb(&["form-coeffs", "--delta", "--precision", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let fc: FormCoefficients = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(fc.precision, 3);
}

#[test]
fn cache_is_content_addressed_and_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_modwb"))
            .args(args)
            .env("MODWB_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let args = ["ap", "--curve", "1,0,1,4,-6", "--pmax", "50"];
    let first = run(&args);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_string_lossy().to_string();
    assert_eq!(name.len(), 64 + ".json".len());
    assert!(name[..64].chars().all(|c| c.is_ascii_hexdigit()));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, modwb(&args).stdout);
    // A corrupted entry is recomputed silently.
    std::fs::write(&files[0], "not json").unwrap();
    let third = run(&args);
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(third.stdout, first.stdout);
}
