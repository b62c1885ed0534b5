//! Measured traversal times against the reciprocal carrier frequency,
//! from phonons at 1 kHz to electrons at attosecond scales.

use std::fmt::Write as _;

use super::builtin::builtin_scenario;
use super::config::Analysis;
use super::run::run_scenario;

/// A printed time with its SI value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedTime {
    /// Text exactly as tabulated.
    pub text: &'static str,
    /// SI seconds; `None` when the table gives no number.
    pub seconds: Option<f64>,
    /// The value is an upper bound (`≤`).
    pub upper_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub label: &'static str,
    pub reference: &'static str,
    pub tau_measured: PrintedTime,
    /// T = 1/ν.
    pub period: PrintedTime,
    /// Builtin scenario standing in for the experiment, if any.
    pub scenario: Option<&'static str>,
    /// Phase time of that scenario at its probe drive.
    pub tau_simulated: Option<f64>,
    /// A = τ_measured / T, for rows with both numbers.
    pub factor: Option<f64>,
    /// τ_simulated / T.
    pub factor_simulated: Option<f64>,
}

impl Table1Row {
    pub fn is_complete(&self) -> bool {
        self.tau_measured.seconds.is_some() && self.period.seconds.is_some()
    }
}

const fn t(text: &'static str, seconds: f64) -> PrintedTime {
    PrintedTime {
        text,
        seconds: Some(seconds),
        upper_bound: false,
    }
}

const FTIR: &str = "frustrated total reflection at double prisms";
const LATTICE: &str = "photonic lattice";
const ACOUSTIC: &str = "acoustic (phonon) tunneling";

type Entry = (
    &'static str,
    &'static str,
    PrintedTime,
    PrintedTime,
    Option<&'static str>,
);

const ROWS: [Entry; 10] = [
    (
        FTIR,
        "Ref. 18",
        t("117 ps", 117e-12),
        t("120 ps", 120e-12),
        Some("ftir-microwave"),
    ),
    (
        FTIR,
        "Ref. 23",
        t("30 fs", 30e-15),
        t("11.3 fs", 11.3e-15),
        Some("ftir-infrared"),
    ),
    (
        FTIR,
        "Ref. 24",
        t("87 ps", 87e-12),
        t("100 ps", 100e-12),
        Some("ftir-microwave-10ghz"),
    ),
    (
        LATTICE,
        "Ref. 32",
        t("2.13 fs", 2.13e-15),
        t("2.34 fs", 2.34e-15),
        Some("photonic-lattice-702nm"),
    ),
    (
        LATTICE,
        "Ref. 37",
        t("2.7 fs", 2.7e-15),
        t("2.7 fs", 2.7e-15),
        Some("photonic-lattice-810nm"),
    ),
    (
        "undersized waveguide",
        "Ref. 28",
        t("130 ps", 130e-12),
        t("115 ps", 115e-12),
        Some("undersized-waveguide"),
    ),
    (
        "electron field-emission tunneling",
        "Ref. 36",
        t("7 fs", 7e-15),
        t("6 fs", 6e-15),
        Some("electron-field-emission"),
    ),
    (
        "electron ionization tunneling",
        "Ref. 19",
        PrintedTime {
            text: "≤ 6 as",
            seconds: Some(6e-18),
            upper_bound: true,
        },
        PrintedTime {
            text: "? as",
            seconds: None,
            upper_bound: false,
        },
        None,
    ),
    (
        ACOUSTIC,
        "Ref. 25",
        t("0.8 μs", 0.8e-6),
        t("1 μs", 1e-6),
        Some("acoustic-1MHz"),
    ),
    (
        ACOUSTIC,
        "Ref. 26",
        t("0.9ms", 0.9e-3),
        t("1ms", 1e-3),
        Some("acoustic-1kHz"),
    ),
];

/// Phase time of a builtin scenario at its probe drive, spectrum only.
fn simulated_tau(name: &str) -> Option<f64> {
    let mut cfg = builtin_scenario(name).ok()?;
    cfg.analyses = vec![Analysis::Scatter, Analysis::Phasetime];
    run_scenario(&cfg).ok()?.probe_tau()
}

/// The ten tabulated rows with A and the simulated phase times attached.
pub fn table1_report() -> Vec<Table1Row> {
    ROWS.iter()
        .map(|&(label, reference, tau_measured, period, scenario)| {
            let tau_simulated = scenario.and_then(simulated_tau);
            let factor = tau_measured.seconds.zip(period.seconds).map(|(a, b)| a / b);
            let factor_simulated = tau_simulated.zip(period.seconds).map(|(a, b)| a / b);
            Table1Row {
                label,
                reference,
                tau_measured,
                period,
                scenario,
                tau_simulated,
                factor,
                factor_simulated,
            }
        })
        .collect()
}

/// Fixed-width text rendering.
pub fn render_table1(rows: &[Table1Row]) -> String {
    let opt = |x: Option<f64>, f: &dyn Fn(f64) -> String| x.map(f).unwrap_or_else(|| "-".into());
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<46} {:<8} {:>9} {:>9} {:>6} {:>14} {:>6}",
        "barrier", "ref", "tau", "T=1/nu", "A", "tau_sim [s]", "A_sim"
    );
    let _ = writeln!(s, "{}", "-".repeat(104));
    for r in rows {
        let _ = writeln!(
            s,
            "{:<46} {:<8} {:>9} {:>9} {:>6} {:>14} {:>6}",
            r.label,
            r.reference,
            r.tau_measured.text,
            r.period.text,
            opt(r.factor, &|a| format!("{a:.3}")),
            opt(r.tau_simulated, &|t| format!("{t:.4e}")),
            opt(r.factor_simulated, &|a| format!("{a:.3}")),
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_rows_nine_complete() {
        let rows = table1_report();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows.iter().filter(|r| r.is_complete()).count(), 9);
        let ion = rows.iter().find(|r| r.reference == "Ref. 19").unwrap();
        assert_eq!(ion.period.text, "? as");
        assert!(ion.factor.is_none() && ion.tau_measured.upper_bound);
    }

    #[test]
    fn waveguide_and_field_emission_factors() {
        let rows = table1_report();
        let a = |r: &str| rows.iter().find(|x| x.reference == r).unwrap().factor.unwrap();
        assert!((a("Ref. 28") - 1.13).abs() < 0.005);
        assert!((a("Ref. 36") - 1.17).abs() < 0.005);
    }

    #[test]
    fn span_of_measured_times() {
        let rows = table1_report();
        let taus: Vec<f64> = rows.iter().filter_map(|r| r.tau_measured.seconds).collect();
        let (lo, hi) = taus
            .iter()
            .fold((f64::MAX, 0.0f64), |(l, h), &t| (l.min(t), h.max(t)));
        assert!(hi / lo >= 1e14);
    }

    #[test]
    fn rendering_is_stable() {
        let rows = table1_report();
        let a = render_table1(&rows);
        assert_eq!(a, render_table1(&table1_report()));
        assert_eq!(a.lines().count(), 12);
        assert!(a.contains("≤ 6 as") && a.contains("? as"));
    }
}
