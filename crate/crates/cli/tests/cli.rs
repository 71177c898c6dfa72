use std::process::Command;

fn qtcorr(args: &[&str], dir: &std::path::Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qtcorr"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

#[test]
fn custom_sweep_writes_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtcorr(
        &[
            "--noise",
            "amplitude",
            "--coupling",
            "qutrit",
            "--p",
            "0.2",
            "--steps",
            "4",
            "--out",
            "s.csv",
            "--plot",
            "s.gp",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("qutrit-only,amplitude,0.2,0,0,"));
    assert!(dir.path().join("s.gp").exists());
}

#[test]
fn errors_are_one_line() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--p", "0.7"][..],
        &["--coupling", "qubit", "--fixed", "1"],
        &["--steps", "1"],
    ] {
        let out = qtcorr(args, dir.path());
        assert!(!out.status.success());
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(
            err.starts_with("error: ") && err.lines().count() == 1,
            "{args:?}: {err}"
        );
    }
    let out = qtcorr(&["--unknown"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn oracle_report_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = qtcorr(&["--oracle-report"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("N_reconc"));
    assert_eq!(text.lines().count(), 1 + 4 * 6);
}
