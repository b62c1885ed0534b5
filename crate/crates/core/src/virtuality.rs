//! Predicates that mark evanescent and tunnelling modes as unobservable.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::constants::{HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::dispersion::{is_evanescent, wavenumber, FieldKind, Medium, WaveContext};
use crate::error::{Error, Result};

/// Tolerance for the `R = 1` total-reflection verdict.
pub const REFLECTANCE_TOL: f64 = 1e-12;

/// Electric energy density `u = ½ε₀ε_r E²`, J/m³.
pub fn energy_density(relative_permittivity: f64, field: f64) -> f64 {
    0.5 * VACUUM_PERMITTIVITY * relative_permittivity * field * field
}

/// `W = W_kin − U`, J.
pub fn total_energy(kinetic_energy: f64, potential: f64) -> f64 {
    kinetic_energy - potential
}

/// `R = |n₂ − n₁|² / |n₂ + n₁|²`.
pub fn interface_reflectance(n1: Complex64, n2: Complex64) -> Result<f64> {
    let sum = (n2 + n1).norm_sqr();
    if sum == 0.0 {
        return Err(Error::Domain(format!("degenerate indices n₁ = {n1}, n₂ = −n₁")));
    }
    Ok((n2 - n1).norm_sqr() / sum)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationBound {
    /// Δx = 1/κ, m.
    pub delta_x: f64,
    /// Δp_min = ħ/Δx = ħκ, kg·m/s.
    pub delta_p_min: f64,
}

impl LocalizationBound {
    /// Δp_min²/2m, which equals `U − W_kin`.
    pub fn energy_scale(&self, mass: f64) -> f64 {
        self.delta_p_min * self.delta_p_min / (2.0 * mass)
    }
}

/// Localisation length and minimal momentum spread needed to observe a
/// particle inside a forbidden region.
pub fn localization_bound(potential: f64, kinetic_energy: f64, mass: f64) -> Result<LocalizationBound> {
    if !(potential > kinetic_energy) {
        return Err(Error::Domain(format!(
            "no forbidden region: U = {potential:e} J, W_kin = {kinetic_energy:e} J"
        )));
    }
    let medium = Medium::quantum(potential, mass)?;
    let kappa = wavenumber(&medium, &WaveContext::quantum(kinetic_energy)?)?.im;
    let delta_x = 1.0 / kappa;
    Ok(LocalizationBound {
        delta_x,
        delta_p_min: HBAR / delta_x,
    })
}

/// `W² − Re((ħk)²)·c²`, J². Zero on the photon shell, positive for `k = iκ`.
pub fn einstein_residual(energy: f64, k: Complex64) -> f64 {
    let p = k * HBAR;
    energy * energy - (p * p).re * SPEED_OF_LIGHT * SPEED_OF_LIGHT
}

/// Per-configuration evaluation of every applicable predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualityReport {
    pub label: String,
    pub field_kind: FieldKind,
    pub wavenumber: Complex64,
    pub evanescent: bool,
    /// Effective ε_r = (kc/ω)², electromagnetic only.
    pub effective_permittivity: Option<f64>,
    /// u per unit E², electromagnetic only.
    pub energy_density: Option<f64>,
    /// Quantum only.
    pub total_energy: Option<f64>,
    /// Against the receiver medium, electromagnetic only.
    pub interface_reflectance: Option<f64>,
    pub localization: Option<LocalizationBound>,
    pub einstein_residual: f64,
}

impl VirtualityReport {
    pub fn negative_energy_density(&self) -> Option<bool> {
        self.energy_density.map(|u| u < 0.0)
    }

    pub fn negative_total_energy(&self) -> Option<bool> {
        self.total_energy.map(|w| w < 0.0)
    }

    pub fn total_reflection(&self) -> Option<bool> {
        self.interface_reflectance
            .map(|r| (r - 1.0).abs() <= REFLECTANCE_TOL)
    }

    pub fn off_shell(&self) -> bool {
        self.einstein_residual > 0.0
    }

    /// True when every applicable predicate agrees that the mode is virtual.
    pub fn is_virtual(&self) -> bool {
        self.evanescent
            && self.off_shell()
            && self.negative_energy_density().unwrap_or(true)
            && self.negative_total_energy().unwrap_or(true)
            && self.total_reflection().unwrap_or(true)
    }

    /// Flat `key = value` block, one entry per line.
    pub fn to_key_values(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.12e}")).unwrap_or_else(|| "n/a".into());
        let flag = |x: Option<bool>| x.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into());
        kv("label", self.label.clone());
        kv("field_kind", self.field_kind.to_string());
        kv("re_k", format!("{:.12e}", self.wavenumber.re));
        kv("im_k", format!("{:.12e}", self.wavenumber.im));
        kv("evanescent", self.evanescent.to_string());
        kv("effective_permittivity", opt(self.effective_permittivity));
        kv("energy_density_per_e2", opt(self.energy_density));
        kv("total_energy_j", opt(self.total_energy));
        kv("interface_reflectance", opt(self.interface_reflectance));
        kv("delta_x_m", opt(self.localization.map(|l| l.delta_x)));
        kv(
            "delta_p_min_kg_m_s",
            opt(self.localization.map(|l| l.delta_p_min)),
        );
        kv("einstein_residual_j2", format!("{:.12e}", self.einstein_residual));
        kv("negative_energy_density", flag(self.negative_energy_density()));
        kv("negative_total_energy", flag(self.negative_total_energy()));
        kv("total_reflection", flag(self.total_reflection()));
        kv("off_shell", self.off_shell().to_string());
        kv("virtual", self.is_virtual().to_string());
        s
    }
}

/// Evaluates the predicates for `medium` at `ctx`. For electromagnetic
/// fields `receiver` is the real-index medium the evanescent wave meets.
pub fn evaluate(
    label: &str,
    medium: &Medium,
    ctx: &WaveContext,
    receiver: Option<&Medium>,
) -> Result<VirtualityReport> {
    let k = wavenumber(medium, ctx)?;
    let mut report = VirtualityReport {
        label: label.to_string(),
        field_kind: ctx.field_kind,
        wavenumber: k,
        evanescent: is_evanescent(k),
        effective_permittivity: None,
        energy_density: None,
        total_energy: None,
        interface_reflectance: None,
        localization: None,
        einstein_residual: einstein_residual(ctx.drive.energy(), k),
    };
    match *medium {
        Medium::Electromagnetic { .. } => {
            let k0 = ctx.drive.value() / SPEED_OF_LIGHT;
            let n = k / k0;
            let eps = (n * n).re;
            report.effective_permittivity = Some(eps);
            report.energy_density = Some(energy_density(eps, 1.0));
            if let Some(rx) = receiver {
                let n2 = wavenumber(rx, ctx)? / k0;
                report.interface_reflectance = Some(interface_reflectance(n, n2)?);
            }
        }
        Medium::Quantum { potential, mass } => {
            let e = ctx.drive.value();
            report.total_energy = Some(total_energy(e, potential));
            if potential > e {
                report.localization = Some(localization_bound(potential, e, mass)?);
            }
        }
        Medium::Acoustic { .. } => {}
    }
    Ok(report)
}
