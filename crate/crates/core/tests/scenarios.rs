use tunneltime::scenarios::{
    builtin_names, builtin_scenario, emit_csv, load_scenario, run_scenario, Analysis,
};

#[test]
fn builtins_round_trip_through_si_text() {
    for name in builtin_names() {
        let cfg = builtin_scenario(name).unwrap();
        let text = cfg.to_toml();
        assert_eq!(load_scenario(&text).unwrap(), cfg, "{name}");
        assert_eq!(load_scenario(&text).unwrap().to_toml(), text, "{name}");
    }
}

#[test]
fn builtins_run_end_to_end() {
    for name in builtin_names() {
        let report = run_scenario(&builtin_scenario(name).unwrap()).unwrap();
        let tau = report.probe_tau().unwrap();
        assert!(tau.is_finite() && tau > 0.0, "{name}: {tau}");
    }
}

#[test]
fn ftir_microwave_within_factor_two_of_period() {
    let tau = run_scenario(&builtin_scenario("ftir-microwave").unwrap())
        .unwrap()
        .probe_tau()
        .unwrap();
    assert!((60e-12..=240e-12).contains(&tau), "{tau}");
}

#[test]
fn acoustic_stack_midgap_time() {
    let tau = run_scenario(&builtin_scenario("acoustic-1MHz").unwrap())
        .unwrap()
        .probe_tau()
        .unwrap();
    assert!((0.3e-6..=3e-6).contains(&tau), "{tau}");
}

#[test]
fn free_space_transmits_everything() {
    let csv = emit_csv(&run_scenario(&builtin_scenario("free-space").unwrap()).unwrap());
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "drive_value_si,re_t,im_t,abs_t_squared,abs_r_squared,phase_unwrapped_rad,tau_s"
    );
    for line in lines {
        assert_eq!(line.split(',').nth(3), Some("1.000000000000e0"), "{line}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for name in ["ftir-microwave", "electron-field-emission", "acoustic-1kHz"] {
        let cfg = builtin_scenario(name).unwrap();
        assert_eq!(
            emit_csv(&run_scenario(&cfg).unwrap()),
            emit_csv(&run_scenario(&cfg).unwrap())
        );
    }
}

#[test]
fn opaque_band_tau_is_flat() {
    // Far inside the forbidden region the phase time barely depends on energy.
    let text = r#"
name = "opaque"
field = "quantum"
analyses = ["phasetime"]

[grid]
start = "0.45 eV"
stop = "0.55 eV"
points = 21

[left_lead]
potential = "0 eV"
mass = "1 m_e"

[[layers]]
potential = "1 eV"
mass = "1 m_e"
thickness = "3 nm"
"#;
    let cfg = load_scenario(text).unwrap();
    assert_eq!(cfg.analyses, vec![Analysis::Phasetime]);
    let csv = emit_csv(&run_scenario(&cfg).unwrap());
    let taus: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(6).unwrap().parse().unwrap())
        .collect();
    let (lo, hi) = taus
        .iter()
        .fold((f64::MAX, 0.0f64), |(l, h), &t| (l.min(t), h.max(t)));
    assert!((hi - lo) / lo < 0.01, "spread {}", (hi - lo) / lo);
}
