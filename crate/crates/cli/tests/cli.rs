use std::path::Path;
use std::process::{Command, Output};

fn cusp(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusp"))
        .env("CUSP_OUT", out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn no_arguments_prints_usage() {
    let dir = tempfile::tempdir().unwrap();
    let o = cusp(dir.path(), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(
        cusp(dir.path(), &["no-such-command"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cusp(dir.path(), &["horn", "--m", "x"]).status.code(),
        Some(2)
    );
}

#[test]
fn dispersion_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = cusp(
        dir.path(),
        &["dispersion", "--lambda", "2", "--mu", "1", "--rho", "1"],
    );
    assert!(o.status.success());
    let t = text(&o);
    let mut lines = t.lines();
    assert_eq!(lines.next(), Some("c_p,c_s,c_r"));
    let v: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    // cP^2 = lambda + 2 mu, cS^2 = mu
    assert_eq!((v[0], v[1]), (2.0, 1.0));
    // the Rayleigh cubic for cS^2/cP^2 = 1/4 at x = (cR/cS)^2
    let x = v[2] * v[2];
    assert!((((x - 8.0) * x + 20.0) * x - 12.0).abs() < 1e-12);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn projections_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = cusp(dir.path(), &["projections", "--q", "1"]);
    assert!(o.status.success());
    let t = text(&o);
    let v: Vec<f64> = t
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((v[0] - 5.920160973).abs() < 1e-6 * 5.92);
    assert!((v[3] + 3.640899899).abs() < 1e-6 * 3.64);
    assert!((v[4] + 2.976857206).abs() < 1e-6 * 2.98);
}

#[test]
fn overlap_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = cusp(dir.path(), &["overlap"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        std::fs::read_to_string(dir.path().join("overlap.csv")).unwrap(),
        golden("overlap.csv")
    );
    assert_eq!(
        std::fs::read_to_string(dir.path().join("overlap.svg")).unwrap(),
        golden("overlap.svg")
    );
    let manifest = std::fs::read_to_string(dir.path().join("overlap.manifest")).unwrap();
    assert!(manifest.contains("outputs = overlap.csv overlap.svg"));
}

#[test]
fn reruns_and_replays_are_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = [
        "fem-ridge-free",
        "--rho",
        "0.04,0.028,0.02,0.014,0.01",
        "--refine-tol",
        "0",
    ];
    assert!(cusp(a.path(), &args).status.success());
    let manifest = a.path().join("fem-ridge-free.manifest");
    let replay = cusp(
        b.path(),
        &["--config", manifest.to_str().unwrap(), "fem-ridge-free"],
    );
    assert!(
        replay.status.success(),
        "{}",
        String::from_utf8_lossy(&replay.stderr)
    );
    for f in ["ridge_free.csv", "ridge_free.svg"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap()
        );
    }
    let ma = std::fs::read_to_string(&manifest).unwrap();
    let mb = std::fs::read_to_string(b.path().join("fem-ridge-free.manifest")).unwrap();
    let hash = |m: &str| {
        m.lines()
            .find(|l| l.starts_with("input_hash"))
            .unwrap()
            .to_owned()
    };
    assert_eq!(hash(&ma), hash(&mb));
    for name in ma
        .lines()
        .find(|l| l.starts_with("outputs"))
        .unwrap()
        .split('=')
        .nth(1)
        .unwrap()
        .split_whitespace()
    {
        assert!(a.path().join(name).is_file());
    }
}

#[test]
fn config_errors_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, "[overlap]\nm = 2.0\nradii = 1, 3, 10, 30, 100\n").unwrap();
    let out = dir.path().join("out");
    let o = cusp(
        &out,
        &["--config", cfg.to_str().unwrap(), "overlap", "--m", "2.8"],
    );
    assert!(o.status.success());
    let manifest = std::fs::read_to_string(out.join("overlap.manifest")).unwrap();
    assert!(manifest.contains("m = 2.8\n") && manifest.contains("radii = 1,3,10,30,100\n"));

    std::fs::write(&cfg, "[overlap]\nmm = 2.0\n").unwrap();
    let o = cusp(&out, &["--config", cfg.to_str().unwrap(), "overlap"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown keys: mm"));

    std::fs::write(&cfg, "not a pair\n").unwrap();
    assert_eq!(
        cusp(&out, &["--config", cfg.to_str().unwrap(), "overlap"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cusp(&out, &["--config", "/nonexistent.ini", "overlap"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn report_reads_tables_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = cusp(dir.path(), &["report"]);
    assert_eq!(o.status.code(), Some(1));
    let rows = "rho,percentile_stress,energy\n0.02,0.02,1\n0.014,0.014,1\n0.01,0.01,1\n0.007,0.007,1\n0.005,0.005,1\n";
    std::fs::write(dir.path().join("ridge_free.csv"), rows).unwrap();
    std::fs::write(dir.path().join("ridge_forced_m2.4.csv"), rows).unwrap();
    std::fs::write(
        dir.path().join("gorge_m2.4.csv"),
        "r,percentile_stress\n1,1\n4,0.5\n16,0.25\n64,0.125\n",
    )
    .unwrap();
    let o = cusp(dir.path(), &["report"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = std::fs::read_to_string(dir.path().join("summary.md")).unwrap();
    assert!(summary.contains("cut-off slope +1.00") && summary.contains("profile slope -0.500"));
    std::fs::write(dir.path().join("gorge_m2.4.csv"), "r,percentile_stress\n").unwrap();
    assert_eq!(cusp(dir.path(), &["report"]).status.code(), Some(1));
}
