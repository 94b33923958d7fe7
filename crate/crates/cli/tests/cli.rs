use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bloch-rwa")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn out_path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn classical_path_writes_header_params_and_rwa_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_path(&dir, "path_w5.csv");
    let o = run(&["classical-path", "--omega", "5", "--t-end", "3.14159265", "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("# params: scenario=classical-path"));
    assert!(first.contains("omega=5") && first.contains("t-end=3.14159265") && first.contains("theta0=0"));
    let lines = data_lines(&text);
    assert_eq!(lines[0], "t,X,Y,Z,s,kappa,X_rwa,Y_rwa,Z_rwa,s_rwa,kappa_rwa");
    // grid points within ~1e-9 of the five cusps (2k+1)π/10
    let spikes = lines[1..].iter().filter(|l| l.split(',').nth(5).unwrap().parse::<f64>().unwrap() > 1e6).count();
    assert_eq!(spikes, 5);
    let last: Vec<f64> = lines.last().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!(last[4] > 2.0 * std::f64::consts::PI - 1e-6);
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["classical-path", "--omega", "2.5"],
        vec!["quantum-path", "--alpha", "2", "--samples-per-period", "32"],
        vec!["curvature", "--omega", "20", "--format", "json"],
    ] {
        let (a, b) = (out_path(&dir, "a.out"), out_path(&dir, "b.out"));
        for path in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--out", path.as_str()]);
            let o = run(&full);
            assert!(o.status.success(), "{}", stderr(&o));
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{args:?}");
    }
}

#[test]
fn invalid_omega_exits_2_naming_the_key() {
    let o = run(&["classical-path", "--omega", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("omega must be positive"));
}

#[test]
fn small_cutoff_exits_2() {
    let o = run(&["quantum-path", "--alpha", "5", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("n-max") && e.contains("tail mass"), "{e}");
}

#[test]
fn all_validation_errors_reported_at_once() {
    let o = run(&["curvature", "--omega", "-3", "--t-end", "x", "--samples-per-period", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    for key in ["omega", "t-end", "samples-per-period"] {
        assert!(e.contains(key), "{key} missing: {e}");
    }
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# classical run\nomega = 20\nt_end = 1.0\n").unwrap();
    let out = out_path(&dir, "p.csv");
    let o = run(&["arclength", "--config", cfg.to_str().unwrap(), "--omega", "10", "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let first = fs::read_to_string(&out).unwrap().lines().next().unwrap().to_string();
    assert!(first.contains("omega=10") && first.contains("t-end=1 "), "{first}");

    fs::write(&cfg, "omega = 5\ncolour = blue\n").unwrap();
    let o = run(&["arclength", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn table1_has_three_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_path(&dir, "table1.csv");
    let o = run(&["table1", "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let lines = data_lines(&text);
    assert!(lines[0].starts_with("alpha,theta0,t1,kappa_t1,t2,kappa_t2"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn delta_scan_reports_slope_last() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_path(&dir, "scan.csv");
    let o = run(&["delta-scan", "--model", "classical", "--omegas", "10,20,40,80,160", "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let last = text.lines().last().unwrap();
    let slope: f64 = last.strip_prefix("# fitted_loglog_slope: ").expect(last).parse().unwrap();
    assert!((-1.15..=-0.85).contains(&slope), "{slope}");
    assert_eq!(data_lines(&text).len(), 6);
}

#[test]
fn single_point_scan_flags_undefined_slope() {
    let o = run(&["delta-scan", "--omegas", "10", "--samples-per-period", "32"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("fitted_loglog_slope: undefined"));
}

#[test]
fn rotation_profile_and_cusps() {
    let o = run(&["rotation-profile", "--samples-per-period", "16"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines = data_lines(&text);
    assert_eq!(lines[0], "t,theta_dot,n_X,n_Y");
    assert_eq!(lines[1], "0,4,1,0");
    // the cusp sample has no axis
    assert!(lines.iter().any(|l| l.ends_with(",nan,nan")));

    let o = run(&["cusps", "--omega", "5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(data_lines(&text).len(), 6);

    let o = run(&["cusps", "--detuning", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("detuning"));
}

#[test]
fn quantum_path_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_path(&dir, "quantum.json");
    let o = run(&["quantum-path", "--alpha", "1", "--theta0", "3.141592653589793", "--samples-per-period", "32", "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["scenario"], "quantum-path");
    assert_eq!(v["params"]["alpha"], "1");
    assert_eq!(v["columns"][0], "t");
    assert_eq!(v["rows"].as_array().unwrap().len(), 81);
}

#[test]
fn unwritable_output_exits_2() {
    let o = run(&["cusps", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new("/nonexistent-dir/x.csv").exists());
}
