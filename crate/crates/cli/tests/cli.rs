use std::fs;
use std::path::Path;

use bolab::io::snapshot;
use bolab_cli::{cli_main, EXIT_BLOWUP, EXIT_INVALID, EXIT_OK};

fn bolab(args: &[&str]) -> i32 {
    cli_main(std::iter::once("bolab").chain(args.iter().copied()))
}

fn write_cfg(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    let out = dir.join("out");
    fs::write(&path, format!("{body}out.dir = {}\n", out.display())).unwrap();
    path.to_string_lossy().into_owned()
}

const BO: &str = "\
model = bo
grid.n = 128
grid.length = 40
time.dt = 0.01
time.t_final = 0.2
time.stride = 2
ic.kind = gaussian
ic.params = 1, 0, 2
";

#[test]
fn simulate_writes_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "bo.cfg", BO);
    assert_eq!(bolab(&["simulate", &cfg]), EXIT_OK);
    let out = tmp.path().join("out");
    let csv = fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("t,mass,l2,hamiltonian,hs_half,tail_fraction,sup_norm")
    );
    assert_eq!(lines.count(), 11);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("diagnostics.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 11);
    let last = snapshot::read(&out.join("snapshots/snap_000010.bofs")).unwrap();
    assert!((last.t - 0.2).abs() < 1e-12);
    assert!(out.join("run.cfg").is_file());

    assert_eq!(bolab(&["residual", out.to_str().unwrap()]), EXIT_OK);
    assert_eq!(
        bolab(&["residual", out.join("snapshots").to_str().unwrap()]),
        EXIT_OK
    );
}

#[test]
fn missing_or_invalid_config_is_exit_1() {
    assert_eq!(
        bolab(&["simulate", "/nonexistent/missing.cfg"]),
        EXIT_INVALID
    );
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "bad.cfg",
        &BO.replace("grid.n = 128", "grid.n = 127"),
    );
    assert_eq!(bolab(&["simulate", &cfg]), EXIT_INVALID);
    assert_eq!(bolab(&["frobnicate"]), EXIT_INVALID);
    assert_eq!(bolab(&["--help"]), EXIT_OK);
}

#[test]
fn blowup_is_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let body = "\
model = gbo
k = 5
grid.n = 64
grid.length = 10
time.dt = 0.01
time.t_final = 1
ic.kind = gaussian
ic.params = 50, 0, 1
";
    let cfg = write_cfg(tmp.path(), "gbo.cfg", body);
    assert_eq!(bolab(&["simulate", &cfg]), EXIT_BLOWUP);
    assert!(tmp.path().join("out/diagnostics.csv").is_file());
}

#[test]
fn limits_deep_writes_monotone_report() {
    let tmp = tempfile::tempdir().unwrap();
    let body = format!(
        "{}limits.deltas = 2, 4, 8\n",
        BO.replace("model = bo", "model = ilw\ndelta = 1")
    );
    let cfg = write_cfg(tmp.path(), "sweep.cfg", &body);
    assert_eq!(bolab(&["limits", "deep", &cfg]), EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(tmp.path().join("out/limit_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["pair"], "ilw_to_bo");
    assert_eq!(report["monotone"], true);
    assert_eq!(report["errors"].as_array().unwrap().len(), 3);

    let no_deltas = write_cfg(tmp.path(), "plain.cfg", BO);
    assert_eq!(bolab(&["limits", "shallow", &no_deltas]), EXIT_INVALID);
    let wrong_order = write_cfg(
        tmp.path(),
        "order.cfg",
        &format!("{BO}limits.deltas = 0.1, 0.2\n"),
    );
    assert_eq!(bolab(&["limits", "shallow", &wrong_order]), EXIT_INVALID);
}

#[test]
fn probe_reports_uniqueness_and_vanishing_order() {
    let tmp = tempfile::tempdir().unwrap();
    let body = "\
model = bo
grid.n = 2048
grid.length = 40
time.dt = 1e-3
time.t_final = 0
ic.kind = bump
ic.params = 1, 0, 1
probe.interval = 2, 3
probe.delta = 1
probe.x0 = 1
probe.radii = 0.4, 0.3, 0.2, 0.1
";
    let cfg = write_cfg(tmp.path(), "probe.cfg", body);
    assert_eq!(bolab(&["probe", &cfg]), EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(tmp.path().join("out/probe_report.json")).unwrap(),
    )
    .unwrap();
    let uc = report["unique_continuation"].as_array().unwrap();
    assert_eq!(uc.len(), 2);
    for r in uc {
        assert_eq!(r["verdict"], "consistent-with-uniqueness");
        assert!(r["inf_partner"].as_f64().unwrap() > 0.0);
    }
    assert_eq!(report["window_mass"], 0.0);
    // x0 = 1 is the edge of the support, so every ball still carries mass
    assert_eq!(
        report["vanishing_order"]["numerically_infinite_order"],
        false
    );

    let nothing = write_cfg(tmp.path(), "nothing.cfg", BO);
    assert_eq!(bolab(&["probe", &nothing]), EXIT_INVALID);
}
