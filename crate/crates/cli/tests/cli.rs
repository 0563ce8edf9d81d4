use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use asymlab_cli::parse_config_file;
use tempfile::TempDir;

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn config(name: &str) -> PathBuf {
    configs_dir().join(name)
}

fn asymlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("scenario.toml");
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn shipped_configs_parse() {
    let mut n = 0;
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "toml") {
            parse_config_file(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            n += 1;
        }
    }
    assert!(n >= 5);
}

#[test]
fn sweep_writes_csv_and_report_and_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = config("initial_jump.toml");
    let o = asymlab(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("initial-jump_leg0.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "inner_x,inner_t,u_reference,u_asymptotic,abs_error"
    );
    assert_eq!(csv.lines().count(), 1 + 41 * 10);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    for key in [
        "scenario",
        "resolved_config",
        "rows",
        "slope",
        "residual",
        "pass",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert_eq!(report["pass"], true);
}

#[test]
fn sweep_csv_is_identical_sequential_and_parallel() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let cfg = config("fold.toml");
    let cfg = cfg.to_str().unwrap();
    let pa = asymlab(&["sweep", cfg, "--out-dir", a.path().to_str().unwrap()]);
    let pb = asymlab(&[
        "--sequential",
        "sweep",
        cfg,
        "--out-dir",
        b.path().to_str().unwrap(),
    ]);
    assert_eq!((code(&pa), code(&pb)), (0, 0));
    for i in 0..3 {
        let name = format!("fold_leg{i}.csv");
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn slope_outside_band_exits_2() {
    let dir = TempDir::new().unwrap();
    let cfg = config("large_gradient.toml");
    let o = asymlab(&[
        "sweep",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    let report = fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(report.contains("\"pass\": false"));
}

#[test]
fn malformed_config_exits_3_with_line_and_field() {
    let dir = TempDir::new().unwrap();
    let p = write_config(
        dir.path(),
        "[scenario]\nkind = \"cusp\"\n\n[flux]\nkind = \"burgers\"\n\n[sweep]\nepsilon = [0.1, 0.05, 0.025]\n",
    );
    let o = asymlab(&["sweep", p.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("kind"), "{err}");
}

#[test]
fn too_few_sweep_values_exit_3() {
    let dir = TempDir::new().unwrap();
    let p = write_config(
        dir.path(),
        "[scenario]\nkind = \"fold\"\n\n[flux]\nkind = \"burgers\"\n\n[sweep]\nepsilon = [0.01, 0.005]\n",
    );
    let o = asymlab(&["sweep", p.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    let rec: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(rec["exit_code"], 3);
}

#[test]
fn numerical_failure_exits_4_and_writes_error_record() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let text = format!(
        "[scenario]\nkind = \"fold\"\n\n[flux]\nkind = \"polynomial\"\ncoefficients = [0.0, 0.0, 0.5, 0.05]\ninterval = [-1.5, 1.5]\n\n\
         [initial]\nvariant = \"tanh\"\namplitude = -0.5\n\n[sweep]\nepsilon = [4e-2, 2e-2, 1e-2]\n\n\
         [grid]\nreference = \"solver\"\nnx = 256\nnt = 128\nhalf_width = 2.0\n\n[report]\nout_dir = {:?}\n",
        out.to_str().unwrap()
    );
    let p = write_config(dir.path(), &text);
    let o = asymlab(&["sweep", p.to_str().unwrap()]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
    let rec: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("error.json")).unwrap()).unwrap();
    assert_eq!(rec["exit_code"], 4);
    assert!(rec["message"].as_str().is_some_and(|m| !m.is_empty()));
}

#[test]
fn usage_errors_exit_3_and_help_exits_0() {
    assert_eq!(code(&asymlab(&["frobnicate"])), 3);
    assert_eq!(code(&asymlab(&["--help"])), 0);
}

#[test]
fn limit_writes_shock_curves() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("limit.csv");
    let cfg = config("collision.toml");
    let o = asymlab(&[
        "limit",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("\"Collision\""), "{stdout}");
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "curve,t,x,u_minus,u_plus");
    let curves: std::collections::BTreeSet<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(curves.len(), 3);
}

#[test]
fn solve_and_inner_fields_share_the_window() {
    let dir = TempDir::new().unwrap();
    let cfg = config("fold.toml");
    let (a, b) = (dir.path().join("ref.csv"), dir.path().join("inner.csv"));
    let cfg = cfg.to_str().unwrap();
    assert_eq!(
        code(&asymlab(&[
            "solve",
            cfg,
            "--leg",
            "1",
            "--out",
            a.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(
        code(&asymlab(&[
            "inner",
            cfg,
            "--leg",
            "1",
            "--out",
            b.to_str().unwrap()
        ])),
        0
    );
    let (ra, rb) = (
        fs::read_to_string(a).unwrap(),
        fs::read_to_string(b).unwrap(),
    );
    assert_eq!(
        ra.lines().next().unwrap(),
        "inner_x,inner_t,x,t,u_reference"
    );
    assert_eq!(rb.lines().next().unwrap(), "inner_x,inner_t,u_asymptotic");
    assert_eq!(ra.lines().count(), rb.lines().count());
}
