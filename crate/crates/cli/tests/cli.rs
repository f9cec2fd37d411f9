use std::fs;
use std::process::{Command, Output};

fn dkp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn spectrum_rows_increase() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("unit.cfg");
    fs::write(&cfg, "M=1\nomega=1\nk=1\nm=1\nalpha=1\na=1\ndelta1=1\ndelta2=1\n").unwrap();
    let o = dkp(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--mode",
        "nu-standard",
        "--levels",
        "3",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let energies: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(energies.windows(2).all(|w| w[1] > w[0]), "{energies:?}");
    assert!(stderr(&o).contains("closed-timelike-curve"));
}

#[test]
fn no_advisory_without_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("flat.cfg");
    fs::write(&cfg, "a=0\ndelta2=0\n").unwrap();
    let o = dkp(&["spectrum", "--config", cfg.to_str().unwrap(), "--levels", "3"]);
    assert!(o.status.success());
    assert!(stderr(&o).is_empty());
    let e0: f64 = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((e0 - 3.0_f64.sqrt()).abs() < 1e-10);
}

#[test]
fn preset_sweep_to_file_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for (path, jobs) in [(&a, "1"), (&b, "2")] {
        let o = dkp(&[
            "sweep",
            "--preset",
            "fig1",
            "--out",
            path.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(
        text.lines().find(|l| !l.starts_with('#')),
        Some("param,value,n,E,residual")
    );
    assert_eq!(text.lines().filter(|l| l.starts_with("alpha,")).count(), 41 * 4);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn custom_sweep_to_stdout() {
    let o = dkp(&[
        "sweep", "--param", "delta2", "--from", "0", "--to", "1", "--steps", "3", "--levels", "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# mode=nu-standard"));
    assert_eq!(text.lines().filter(|l| l.starts_with("delta2,")).count(), 6);
}

#[test]
fn usage_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "alpha=0.5\nbeta=2\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["spectrum", "--config", bad.to_str().unwrap()],
        vec!["spectrum", "--config", "/nonexistent/params.cfg"],
        vec!["spectrum", "--mode", "exact"],
        vec!["sweep", "--param", "alpha", "--from", "0.5", "--to", "1.5"],
        vec!["sweep", "--param", "M", "--from", "0.5", "--to", "1"],
        vec!["sweep"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = dkp(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert!(!err.trim().is_empty(), "{args:?}");
    }
    let o = dkp(&["spectrum", "--config", bad.to_str().unwrap()]);
    assert_eq!(stderr(&o).trim().lines().count(), 1);
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn wavefunction_samples() {
    let o = dkp(&["wavefunction", "--levels", "2", "--samples", "50", "--r-max", "6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,phi,density"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[49][1], 6.0);
    // n = 1 changes sign once on the way out
    let flips = rows[50..]
        .windows(2)
        .filter(|w| w[0][2].signum() != w[1][2].signum())
        .count();
    assert_eq!(flips, 1);
    // the trapezoid sum of the density against alpha r dr is close to 1
    let h = 6.0 / 50.0;
    let mass: f64 = rows[..50].iter().map(|r| r[3] * r[1] * h).sum();
    assert!((mass - 1.0).abs() < 1e-2, "{mass}");
}

#[test]
fn validate_reports_the_adjudicated_mode() {
    let o = dkp(&["validate", "--trials", "20", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("adjudicated mode: nu-standard"));
    assert!(text.contains("mode paper-literal") && text.contains("mode nu-standard"));
    assert!(text.ends_with("result: PASS\n"));
}
