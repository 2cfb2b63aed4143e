use std::fs;
use std::path::Path;
use std::process::Command;

use relaxflow_core::harness::{read_profile_csv, run_cli, Manifest, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> i32 {
    run_cli(std::iter::once("relaxflow").chain(args.iter().copied()))
}

fn only_file(dir: &Path, ext: &str) -> std::path::PathBuf {
    let mut hits: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    assert_eq!(hits.len(), 1, "{hits:?}");
    hits.pop().unwrap()
}

#[test]
fn list_succeeds() {
    assert_eq!(cli(&["list"]), EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_relaxflow");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["list"]), Some(0));
    assert_eq!(status(&["check-subchar", "--H", "0.5"]), Some(1));
    assert_eq!(status(&["no-such-command"]), Some(2));
}

#[test]
fn subchar_audit_exit_codes() {
    assert_eq!(cli(&["check-subchar", "--H", "1"]), EXIT_OK);
    assert_eq!(cli(&["check-subchar", "--H", "2", "--samples", "500"]), EXIT_OK);
    assert_eq!(cli(&["check-subchar", "--H", "0.5"]), EXIT_FAILURE);
    assert_eq!(cli(&["check-subchar", "--H=-1"]), EXIT_USAGE);
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(cli(&[]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--scenario", "nope"]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--case", "nope"]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--scheme", "upwind"]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--cells", "0"]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--cfl", "1.5"]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--H", "0"]), EXIT_USAGE);
    assert_eq!(cli(&["riemann", "--diagram", "/no/such/file.csv"]), EXIT_USAGE);
    assert_eq!(cli(&["layer", "--c", "0.2"]), EXIT_USAGE);
}

#[test]
fn riemann_run_writes_profile_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = cli(&["riemann", "--case", "shock", "--scheme", "relaxation", "--epsilon", "0.01", "--cells", "200", "--out", out]);
    assert_eq!(code, EXIT_OK);

    let csv = only_file(dir.path(), "csv");
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("x,rho,q,z\n"));
    let profile = read_profile_csv(&csv).unwrap();
    assert_eq!(profile.len(), 200);
    assert!((profile.x_lo - 0.0).abs() < 1e-9 && (profile.x_hi - 1.0).abs() < 1e-9);
    assert!(profile.rho.iter().zip(&profile.q).all(|(r, q)| *q >= 0.0 && q <= r));

    let manifest = Manifest::read(&only_file(dir.path(), "json")).unwrap();
    assert_eq!(manifest.scenario, "riemann-shock");
    assert_eq!(manifest.cells, 200);
    assert_eq!(manifest.epsilon, Some(0.01));
    assert_eq!(manifest.outputs, vec![csv.file_name().unwrap().to_str().unwrap().to_string()]);
}

#[test]
fn scalar_runs_omit_z() {
    let dir = tempfile::tempdir().unwrap();
    let code = cli(&["compare-schemes", "--case", "rarefaction", "--scheme", "godunov", "--cells", "100", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(only_file(dir.path(), "csv")).unwrap();
    assert!(text.starts_with("x,rho,q\n"));
}

#[test]
fn replay_is_bit_identical() {
    let first = tempfile::tempdir().unwrap();
    let code = cli(&[
        "cluster", "--case", "constrained", "--H", "0.5", "--cells", "150", "--out", first.path().to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let manifest = only_file(first.path(), "json");
    assert!(fs::read_to_string(&manifest).unwrap().contains("\"epsilon\": null"));

    let second = tempfile::tempdir().unwrap();
    let code = cli(&["replay", "--manifest", manifest.to_str().unwrap(), "--out", second.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let a = fs::read(only_file(first.path(), "csv")).unwrap();
    let b = fs::read(only_file(second.path(), "csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(fs::read(&manifest).unwrap(), fs::read(only_file(second.path(), "json")).unwrap());
}

#[test]
fn layer_profile_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("layer.csv");
    let code = cli(&[
        "layer", "--c", "0.21", "--rho0", "0.9", "--side", "left", "--x-max", "60", "--steps", "6000", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&path).unwrap();
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert!((last[1] - 0.7).abs() < 1e-8);
}

#[test]
fn sampled_diagram_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let diagram = dir.path().join("flux.csv");
    let mut text = String::from("rho,F\n");
    for i in 0..=50 {
        let r = i as f64 / 50.0;
        text.push_str(&format!("{r},{}\n", r * (1.0 - r)));
    }
    fs::write(&diagram, text).unwrap();
    let out = dir.path().join("out");
    let code = cli(&[
        "riemann", "--scenario", "riemann-rarefaction", "--scheme", "relaxed", "--cells", "100", "--diagram",
        diagram.to_str().unwrap(), "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(cli(&["check-subchar", "--H", "1", "--diagram", diagram.to_str().unwrap()]), EXIT_OK);
}
