//! Scenario execution and text/CSV report emission.

use std::fmt::Write as _;

use super::config::{Analysis, ScenarioConfig};
use crate::dispersion::FieldKind;
use crate::error::{Error, Result};
use crate::pulse::{pulse_experiment, synthesize, PulseRun};
use crate::scatter::{transmission_scan, ScatterSpectrum};
use crate::timing::{hartman_scan, timing_result, unwrap_phase, DriveAxis, HartmanScan, TimingResult};
use crate::virtuality::{evaluate, VirtualityReport};

/// Everything a scenario run produced. Sections not requested are `None`
/// (or empty for virtuality).
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub name: String,
    pub field_kind: FieldKind,
    /// Grid index of the probe drive.
    pub probe_index: usize,
    pub spectrum: Option<ScatterSpectrum>,
    /// Present whenever the spectrum has at least 3 points.
    pub timing: Option<TimingResult>,
    pub hartman: Option<HartmanScan>,
    pub pulse: Option<PulseRun>,
    /// One entry per layer, evaluated at the probe drive.
    pub virtuality: Vec<VirtualityReport>,
}

impl ScenarioReport {
    pub fn probe_drive(&self) -> Option<f64> {
        self.spectrum.as_ref().map(|s| s.grid[self.probe_index])
    }

    /// Phase time at the probe drive.
    pub fn probe_tau(&self) -> Option<f64> {
        self.timing.as_ref().map(|t| t.tau[self.probe_index])
    }

    /// A = τ·ν at the probe drive.
    pub fn probe_factor(&self) -> Option<f64> {
        self.timing.as_ref().map(|t| t.factor[self.probe_index])
    }
}

/// Runs the requested analyses in dependency order
/// (scatter, phase time, Hartman sweep, pulse; virtuality on its own).
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    run_inner(cfg).map_err(|e| Error::Scenario {
        name: cfg.name.clone(),
        source: Box::new(e),
    })
}

fn run_inner(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let grid = cfg.grid.values();
    let probe_index = cfg.grid.probe_index();
    let mut report = ScenarioReport {
        name: cfg.name.clone(),
        field_kind: cfg.field_kind,
        probe_index,
        spectrum: None,
        timing: None,
        hartman: None,
        pulse: None,
        virtuality: Vec::new(),
    };

    let wants_spectrum = cfg
        .analyses
        .iter()
        .any(|a| matches!(a, Analysis::Scatter | Analysis::Phasetime));
    if wants_spectrum {
        let spectrum = transmission_scan(&cfg.stack, &grid)?;
        if spectrum.len() >= 3 {
            report.timing = Some(timing_result(&spectrum)?);
        }
        report.spectrum = Some(spectrum);
    }
    if let (true, Some(h)) = (cfg.requests(Analysis::Hartman), cfg.hartman) {
        report.hartman = Some(hartman_scan(
            &cfg.stack,
            h.layer,
            &h.lengths(),
            &grid,
            Some(probe_index),
            h.threshold,
        )?);
    }
    if let (true, Some(p)) = (cfg.requests(Analysis::Pulse), cfg.pulse) {
        let pulse = synthesize(p.carrier, p.width, p.samples, p.span)?;
        report.pulse = Some(pulse_experiment(&cfg.stack, &pulse)?);
    }
    if cfg.requests(Analysis::Virtuality) {
        let ctx = cfg.stack.context(grid[probe_index])?;
        let layers = &cfg.stack.layers;
        for (i, layer) in layers.iter().enumerate() {
            let receiver = layers
                .get(i + 1)
                .map(|l| &l.medium)
                .unwrap_or(&cfg.stack.right_lead);
            let label = format!("{} layer {i}", cfg.name);
            report
                .virtuality
                .push(evaluate(&label, &layer.medium, &ctx, Some(receiver))?);
        }
    }
    Ok(report)
}

/// Fixed-precision float: 12 digits after the point, `-0` printed as `0`.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.12e}")
}

/// Spectrum CSV with columns
/// `drive_value_si,re_t,im_t,abs_t_squared,abs_r_squared,phase_unwrapped_rad,tau_s`.
///
/// Phase and τ columns hold `nan` when the grid is too short for them.
pub fn emit_csv(report: &ScenarioReport) -> String {
    let mut out =
        String::from("drive_value_si,re_t,im_t,abs_t_squared,abs_r_squared,phase_unwrapped_rad,tau_s\n");
    let Some(spec) = &report.spectrum else {
        return out;
    };
    let phase = match &report.timing {
        Some(t) => Some(t.phase.phase.clone()),
        None => unwrap_phase(
            &spec.grid,
            &spec.transmission_phases(),
            DriveAxis::for_field(spec.field_kind),
        )
        .ok()
        .map(|p| p.phase),
    };
    for (i, (x, a)) in spec.grid.iter().zip(&spec.amplitudes).enumerate() {
        let ph = phase.as_ref().map(|p| p[i]).unwrap_or(f64::NAN);
        let tau = report.timing.as_ref().map(|t| t.tau[i]).unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_num(*x),
            fmt_num(a.t.re),
            fmt_num(a.t.im),
            fmt_num(a.t.norm_sqr()),
            fmt_num(a.r.norm_sqr()),
            fmt_num(ph),
            fmt_num(tau)
        );
    }
    out
}

/// Complex-envelope time series of a pulse run.
pub fn emit_pulse_csv(run: &PulseRun) -> String {
    let mut out = String::from("time_s,re_transmitted,im_transmitted,re_reflected,im_reflected\n");
    let times = run.transmitted.times();
    for ((t, a), b) in times
        .iter()
        .zip(&run.transmitted.samples)
        .zip(&run.reflected.samples)
    {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(*t),
            fmt_num(a.re),
            fmt_num(a.im),
            fmt_num(b.re),
            fmt_num(b.im)
        );
    }
    out
}

/// Hartman sweep CSV: `length_m,opaqueness,tau_s,saturated`.
pub fn emit_hartman_csv(scan: &HartmanScan) -> String {
    let mut out = String::from("length_m,opaqueness,tau_s,saturated\n");
    for i in 0..scan.lengths.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_num(scan.lengths[i]),
            fmt_num(scan.opaqueness[i]),
            fmt_num(scan.tau[i]),
            scan.saturated[i]
        );
    }
    out
}

/// Key-value blocks for every virtuality entry, separated by blank lines.
pub fn emit_virtuality(report: &ScenarioReport) -> String {
    report
        .virtuality
        .iter()
        .map(|v| v.to_key_values())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Key-value arrival summary of a pulse run.
pub fn emit_pulse_summary(run: &PulseRun) -> String {
    let r = &run.report;
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_else(|| "n/a".into());
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("carrier_period_s", fmt_num(r.period));
    kv("input_peak_s", fmt_num(r.input.peak));
    kv("transmitted_peak_s", fmt_num(r.transmitted.peak));
    kv("transmitted_centroid_s", fmt_num(r.transmitted.centroid));
    kv("transmitted_xcorr_s", fmt_num(r.transmitted.cross_correlation));
    kv("reflected_peak_s", opt(r.reflected.map(|a| a.peak)));
    kv("transmitted_delay_s", fmt_num(r.transmitted_delay()));
    kv("reflected_delay_s", opt(r.reflected_delay()));
    kv("t_perp_s", opt(r.t_perp()));
    kv("reshaping", fmt_num(r.reshaping));
    kv("input_energy", fmt_num(r.input_energy));
    kv("transmitted_energy", fmt_num(r.transmitted_energy));
    kv("reflected_energy", fmt_num(r.reflected_energy));
    s
}
