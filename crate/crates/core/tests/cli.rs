use std::process::Command;

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tunneltime"))
}

#[test]
fn scatter_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spectrum.csv");
    let status = cli()
        .args(["scatter", "--builtin", "free-space", "--output"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("drive_value_si,"));
    assert_eq!(text.lines().count(), 22);
}

#[test]
fn grid_override_is_applied() {
    let out = cli()
        .args([
            "phasetime",
            "--builtin",
            "free-space",
            "--grid-start",
            "3 GHz",
            "--grid-stop",
            "4 GHz",
        ])
        .args(["--grid-points", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 6);
}

#[test]
fn validation_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "name = \"x\"\nfield = \"electromagnetic\"\nanalyses = [\"scatter\"]\ncolour = 1\n",
    )
    .unwrap();
    let out = cli().args(["scatter", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("colour"));

    let out = cli()
        .args([
            "scatter",
            "--builtin",
            "free-space",
            "--grid-start",
            "2 GHz",
            "--grid-stop",
            "1 GHz",
        ])
        .args(["--grid-points", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_failures_exit_with_one() {
    // Leads below the waveguide cutoff cannot carry the incident wave.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cutoff.toml");
    std::fs::write(
        &cfg,
        "name = \"cutoff\"\nfield = \"electromagnetic\"\nanalyses = [\"scatter\"]\n\
         [grid]\nstart = \"1 GHz\"\nstop = \"2 GHz\"\npoints = 3\n\
         [left_lead]\nindex = 1.0\n[waveguide]\ncutoff = \"5 GHz\"\n",
    )
    .unwrap();
    let out = cli().args(["scatter", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cutoff"));
}

#[test]
fn table1_renders_ten_rows() {
    let out = cli().arg("table1").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn check_reports_virtual_modes() {
    let out = cli()
        .args(["check", "--builtin", "ftir-microwave"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total_reflection = true"));
    assert!(text.contains("virtual = true"));
}
