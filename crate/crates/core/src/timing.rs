//! Phase times, Hartman scans and the universal `τ ≈ 1/ν` comparison.
//!
//! With the `e^{+iωt − ikx}` convention a free region of length `L` has
//! transmission phase `−kL`, so the phase time is `τ = −∂φ/∂ω` for
//! frequency grids and `τ = −ħ ∂φ/∂W` for energy grids. Both give `+L/v_g`
//! for free propagation.

use std::f64::consts::PI;

use crate::constants::{HBAR, PLANCK};
use crate::dispersion::{is_evanescent, opaqueness, wavenumber, Drive, FieldKind, WaveContext};
use crate::error::{Error, Result};
use crate::scatter::{check_grid, transmission_scan, ScatterSpectrum, Stack};

/// Default relative spread below which a Hartman scan point counts as saturated.
pub const SATURATION_THRESHOLD: f64 = 0.01;

/// Sign convention shared by every phase in this crate.
pub const PHASE_CONVENTION: &str = "exp(+i*omega*t - i*k*x)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriveAxis {
    /// Grid in rad/s.
    AngularFrequency,
    /// Grid in joules.
    Energy,
}

impl DriveAxis {
    pub fn for_field(kind: FieldKind) -> Self {
        match kind {
            FieldKind::Quantum => DriveAxis::Energy,
            _ => DriveAxis::AngularFrequency,
        }
    }
}

/// Unwrapped phase over a drive grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpectrum {
    pub grid: Vec<f64>,
    pub phase: Vec<f64>,
    pub axis: DriveAxis,
    pub convention: &'static str,
}

fn principal(x: f64) -> f64 {
    let w = x.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Removes 2π jumps so consecutive differences lie in (−π, π).
///
/// The first sample is mapped to its principal value. A raw step of exactly
/// ±π is ambiguous and reported as [`Error::CoarseGrid`].
pub fn unwrap_phase(grid: &[f64], raw: &[f64], axis: DriveAxis) -> Result<PhaseSpectrum> {
    check_grid(grid)?;
    if grid.len() != raw.len() {
        return Err(Error::Config(format!(
            "grid has {} points but {} phases were given",
            grid.len(),
            raw.len()
        )));
    }
    let mut phase = Vec::with_capacity(raw.len());
    let mut acc = principal(raw[0]);
    phase.push(acc);
    for (index, w) in raw.windows(2).enumerate() {
        let step = principal(w[1] - w[0]);
        if step.abs() >= PI {
            return Err(Error::CoarseGrid { index });
        }
        acc += step;
        phase.push(acc);
    }
    Ok(PhaseSpectrum {
        grid: grid.to_vec(),
        phase,
        axis,
        convention: PHASE_CONVENTION,
    })
}

/// Unwrapped transmission phase of a scan.
pub fn transmission_phase(spectrum: &ScatterSpectrum) -> Result<PhaseSpectrum> {
    unwrap_phase(
        &spectrum.grid,
        &spectrum.transmission_phases(),
        DriveAxis::for_field(spectrum.field_kind),
    )
}

/// Second-order derivative on a possibly non-uniform grid: three-point
/// central stencil inside, three-point one-sided stencils at the ends.
pub fn derivative(grid: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let n = grid.len();
    if n < 3 || values.len() != n {
        return Err(Error::Config(format!(
            "differentiation needs at least 3 matching points, got {n} grid / {} values",
            values.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    {
        let (h1, h2) = (grid[1] - grid[0], grid[2] - grid[1]);
        out.push(
            -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * values[0] + (h1 + h2) / (h1 * h2) * values[1]
                - h1 / (h2 * (h1 + h2)) * values[2],
        );
    }
    for i in 1..n - 1 {
        let (h1, h2) = (grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
        out.push(
            -h2 / (h1 * (h1 + h2)) * values[i - 1]
                + (h2 - h1) / (h1 * h2) * values[i]
                + h1 / (h2 * (h1 + h2)) * values[i + 1],
        );
    }
    {
        let (h1, h2) = (grid[n - 2] - grid[n - 3], grid[n - 1] - grid[n - 2]);
        out.push(
            h2 / (h1 * (h1 + h2)) * values[n - 3] - (h1 + h2) / (h1 * h2) * values[n - 2]
                + (2.0 * h2 + h1) / (h2 * (h1 + h2)) * values[n - 1],
        );
    }
    Ok(out)
}

/// Phase time in seconds at every grid point.
pub fn phase_time(spec: &PhaseSpectrum) -> Result<Vec<f64>> {
    let d = derivative(&spec.grid, &spec.phase)?;
    let scale = match spec.axis {
        DriveAxis::AngularFrequency => -1.0,
        DriveAxis::Energy => -HBAR,
    };
    Ok(d.into_iter().map(|x| scale * x).collect())
}

/// Empirical universal time: `1/ν` for waves, `h/W_kin` for massive particles.
pub fn universal_time(ctx: &WaveContext) -> Result<f64> {
    match ctx.drive {
        Drive::AngularFrequency(w) if w > 0.0 => Ok(2.0 * PI / w),
        Drive::KineticEnergy(e) if e > 0.0 => Ok(PLANCK / e),
        d => Err(Error::Domain(format!(
            "universal time needs a positive drive, got {d:?}"
        ))),
    }
}

/// `A = τ·ν`.
pub fn traversal_factor(tau: f64, frequency: f64) -> Result<f64> {
    if !(frequency > 0.0) {
        return Err(Error::Domain(format!("frequency must be > 0, got {frequency}")));
    }
    Ok(tau * frequency)
}

/// Split of a barrier time into the front-interface part and the in-barrier part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub t_parallel: f64,
    pub t_perp: f64,
    /// `t_perp / τ`, zero when τ = 0.
    pub residual: f64,
}

impl Components {
    pub fn total(&self) -> f64 {
        self.t_parallel + self.t_perp
    }
}

/// `τ = t∥ + t⊥`; pass `t_perp = 0` for the zero-time result or a value
/// measured by the pulse experiment.
pub fn decompose_components(tau: f64, t_perp: f64) -> Result<Components> {
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!("barrier time must be >= 0, got {tau}")));
    }
    Ok(Components {
        t_parallel: tau - t_perp,
        t_perp,
        residual: if tau == 0.0 { 0.0 } else { t_perp / tau },
    })
}

/// Per-grid-point timing summary of a transmission scan.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingResult {
    pub phase: PhaseSpectrum,
    pub tau: Vec<f64>,
    /// T = 1/ν.
    pub period: Vec<f64>,
    /// 1/ν or h/W_kin.
    pub universal: Vec<f64>,
    /// A = τ·ν.
    pub factor: Vec<f64>,
    pub components: Vec<Components>,
}

/// Unwraps, differentiates and compares against `1/ν`.
pub fn timing_result(spectrum: &ScatterSpectrum) -> Result<TimingResult> {
    let phase = transmission_phase(spectrum)?;
    let tau = phase_time(&phase)?;
    let drive = |x: f64| match spectrum.field_kind {
        FieldKind::Quantum => Drive::KineticEnergy(x),
        _ => Drive::AngularFrequency(x),
    };
    let mut period = Vec::with_capacity(tau.len());
    let mut universal = Vec::with_capacity(tau.len());
    let mut factor = Vec::with_capacity(tau.len());
    let mut components = Vec::with_capacity(tau.len());
    for (&x, &t) in spectrum.grid.iter().zip(&tau) {
        let d = drive(x);
        let nu = d.frequency();
        period.push(1.0 / nu);
        universal.push(universal_time(&WaveContext::new(spectrum.field_kind, d)?)?);
        factor.push(traversal_factor(t, nu)?);
        components.push(Components {
            t_parallel: t,
            t_perp: 0.0,
            residual: 0.0,
        });
    }
    Ok(TimingResult {
        phase,
        tau,
        period,
        universal,
        factor,
        components,
    })
}

/// Phase time against barrier length at one probe drive.
#[derive(Debug, Clone, PartialEq)]
pub struct HartmanScan {
    pub lengths: Vec<f64>,
    pub opaqueness: Vec<f64>,
    pub tau: Vec<f64>,
    pub tau_saturated: f64,
    pub saturated: Vec<bool>,
    pub probe_drive: f64,
}

impl HartmanScan {
    /// (max − min)/τ_∞ over the points flagged saturated.
    pub fn saturated_spread(&self) -> f64 {
        let sat = self
            .tau
            .iter()
            .zip(&self.saturated)
            .filter(|(_, &s)| s)
            .map(|(t, _)| *t);
        let (lo, hi) = sat.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
            (lo.min(t), hi.max(t))
        });
        (hi - lo) / self.tau_saturated.abs()
    }
}

/// Varies the thickness of `layer_index` over `lengths` and records the
/// phase time at grid point `probe` (default: grid midpoint).
///
/// The saturation value is τ at the largest opaque (κd ≥ 1) length.
pub fn hartman_scan(
    template: &Stack,
    layer_index: usize,
    lengths: &[f64],
    grid: &[f64],
    probe: Option<usize>,
    threshold: f64,
) -> Result<HartmanScan> {
    check_grid(grid)?;
    if grid.len() < 3 {
        return Err(Error::Config(
            "Hartman scan needs a grid of at least 3 points".into(),
        ));
    }
    if lengths.is_empty() {
        return Err(Error::Config("Hartman scan needs at least one length".into()));
    }
    if lengths.windows(2).any(|w| w[1] < w[0]) || lengths.iter().any(|d| !(*d >= 0.0)) {
        return Err(Error::Config(
            "Hartman lengths must be non-negative and ascending".into(),
        ));
    }
    let probe = probe.unwrap_or(grid.len() / 2);
    if probe >= grid.len() {
        return Err(Error::Config(format!(
            "probe index {probe} outside grid of {}",
            grid.len()
        )));
    }
    let layer = template
        .layers
        .get(layer_index)
        .ok_or_else(|| Error::Config(format!("no layer with index {layer_index}")))?;
    let ctx = template.context(grid[probe])?;
    let k = wavenumber(&layer.medium, &ctx)?;
    if !is_evanescent(k) {
        return Err(Error::Domain(format!(
            "layer {layer_index} is not evanescent at the probe drive {:e} (k = {k})",
            grid[probe]
        )));
    }
    let start = probe.saturating_sub(1).min(grid.len() - 3);
    let local = &grid[start..start + 3];
    let offset = probe - start;

    let mut tau = Vec::with_capacity(lengths.len());
    let mut kd = Vec::with_capacity(lengths.len());
    for &d in lengths {
        let stack = template.with_layer_thickness(layer_index, d)?;
        let spectrum = transmission_scan(&stack, local)?;
        let t = phase_time(&transmission_phase(&spectrum)?)?;
        tau.push(t[offset]);
        kd.push(opaqueness(k, d)?);
    }
    let sat_index = kd
        .iter()
        .rposition(|&x| x >= 1.0)
        .ok_or_else(|| Error::Domain("no opaque (κd ≥ 1) length in the Hartman scan".into()))?;
    let tau_saturated = tau[sat_index];
    let saturated = tau
        .iter()
        .map(|t| ((t - tau_saturated) / tau_saturated).abs() < threshold)
        .collect();
    Ok(HartmanScan {
        lengths: lengths.to_vec(),
        opaqueness: kd,
        tau,
        tau_saturated,
        saturated,
        probe_drive: grid[probe],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ELECTRON_MASS, ELECTRON_VOLT, SPEED_OF_LIGHT};
    use crate::dispersion::Medium;
    use crate::scatter::{rectangular_barrier_amplitude, Layer};
    use approx::assert_relative_eq;

    fn lin(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn constant_phase_unchanged() {
        let g = lin(1.0, 2.0, 5);
        let p = unwrap_phase(&g, &[0.3; 5], DriveAxis::AngularFrequency).unwrap();
        assert_eq!(p.phase, vec![0.3; 5]);
    }

    #[test]
    fn sawtooth_recovers_line() {
        let g = lin(0.0, 10.0, 201);
        let line: Vec<f64> = g.iter().map(|x| 0.7 - 2.3 * x).collect();
        let wrapped: Vec<f64> = line.iter().map(|&x| principal(x)).collect();
        assert!(wrapped.iter().all(|w| w.abs() <= PI));
        let p = unwrap_phase(&g, &wrapped, DriveAxis::AngularFrequency).unwrap();
        for (a, b) in p.phase.iter().zip(&line) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn first_point_anchored_to_principal_value() {
        let p = unwrap_phase(&[0.0, 1.0], &[3.0 * PI, 3.0 * PI + 0.1], DriveAxis::Energy).unwrap();
        assert_relative_eq!(p.phase[0], PI, max_relative = 1e-15);
        assert_relative_eq!(p.phase[1], PI + 0.1, max_relative = 1e-14);
    }

    #[test]
    fn half_turn_step_is_ambiguous() {
        let err = unwrap_phase(&[0.0, 1.0, 2.0], &[0.0, 0.5, 0.5 + PI], DriveAxis::Energy).unwrap_err();
        assert_eq!(err, Error::CoarseGrid { index: 1 });
    }

    #[test]
    fn free_propagation_phase_time_is_length_over_c() {
        let l = 0.37;
        let g = lin(2.0 * PI * 8e9, 2.0 * PI * 9e9, 51);
        let raw: Vec<f64> = g.iter().map(|w| principal(-w * l / SPEED_OF_LIGHT)).collect();
        let p = unwrap_phase(&g, &raw, DriveAxis::AngularFrequency).unwrap();
        for t in phase_time(&p).unwrap() {
            assert_relative_eq!(t, l / SPEED_OF_LIGHT, max_relative = 1e-9);
        }
    }

    #[test]
    fn phase_time_needs_three_points() {
        let p = unwrap_phase(&[1.0, 2.0], &[0.0, 0.1], DriveAxis::AngularFrequency).unwrap();
        assert!(phase_time(&p).is_err());
    }

    #[test]
    fn second_order_convergence() {
        // φ(ω) = sin(ω): error at the ends and interior shrinks ~4× per halving.
        let err = |n: usize| {
            let g = lin(0.0, 1.0, n);
            let v: Vec<f64> = g.iter().map(|x| x.sin()).collect();
            let d = derivative(&g, &v).unwrap();
            d.iter()
                .zip(&g)
                .map(|(a, x)| (a - x.cos()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2, e3) = (err(21), err(41), err(81));
        assert!((3.5..4.5).contains(&(e1 / e2)), "{}", e1 / e2);
        assert!((3.5..4.5).contains(&(e2 / e3)), "{}", e2 / e3);
    }

    #[test]
    fn nonuniform_derivative_is_exact_for_quadratics() {
        let g = [0.0, 0.1, 0.35, 0.4, 0.9, 1.0];
        let v: Vec<f64> = g.iter().map(|x| 3.0 * x * x - x + 2.0).collect();
        for (d, x) in derivative(&g, &v).unwrap().iter().zip(g) {
            assert_relative_eq!(*d, 6.0 * x - 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn universal_time_examples() {
        let t = universal_time(&WaveContext::acoustic(2.0 * PI * 1e6).unwrap()).unwrap();
        assert_relative_eq!(t, 1e-6, max_relative = 1e-14);
        let t = universal_time(&WaveContext::quantum(0.7 * ELECTRON_VOLT).unwrap()).unwrap();
        assert_relative_eq!(t, 5.908e-15, max_relative = 1e-3);
        let t = universal_time(&WaveContext::quantum(54.39 * ELECTRON_VOLT).unwrap()).unwrap();
        assert_relative_eq!(t, 76.0e-18, max_relative = 2e-3);
        assert!(matches!(
            universal_time(&WaveContext::quantum(0.0).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn traversal_factor_examples() {
        assert_relative_eq!(traversal_factor(2e-9, 5e8).unwrap(), 1.0);
        assert_relative_eq!(
            traversal_factor(117e-12, 1.0 / 120e-12).unwrap(),
            0.975,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            traversal_factor(30e-15, 1.0 / 11.3e-15).unwrap(),
            2.6549,
            max_relative = 1e-4
        );
        assert!(traversal_factor(1.0, 0.0).is_err());
    }

    #[test]
    fn component_bookkeeping() {
        let c = decompose_components(117e-12, 0.0).unwrap();
        assert_eq!(c.t_parallel, 117e-12);
        assert_eq!(c.total(), 117e-12);
        let c = decompose_components(0.0, 0.0).unwrap();
        assert_eq!((c.t_parallel, c.t_perp), (0.0, 0.0));
        let tau = 80e-12;
        let c = decompose_components(tau, 0.003 * tau).unwrap();
        assert_relative_eq!(c.t_parallel, 0.997 * tau, max_relative = 1e-14);
        assert_relative_eq!(c.residual, 0.003, max_relative = 1e-12);
        assert!(decompose_components(-1.0, 0.0).is_err());
    }

    fn electron_template(u: f64) -> (Stack, f64) {
        let lead = Medium::quantum(0.0, ELECTRON_MASS).unwrap();
        let barrier = Medium::quantum(u, ELECTRON_MASS).unwrap();
        let kappa = (2.0 * ELECTRON_MASS * (u / 2.0)).sqrt() / HBAR;
        (
            Stack::single_barrier(lead, Layer::new(barrier, 1e-9).unwrap(), None).unwrap(),
            kappa,
        )
    }

    /// Central difference of the closed-form phase with a tiny step.
    fn oracle_tau(stack: &Stack, d: f64, e: f64) -> f64 {
        let h = e * 1e-5;
        let ph = |x: f64| {
            let ctx = stack.context(x).unwrap();
            let b = Layer::new(stack.layers[0].medium, d).unwrap();
            rectangular_barrier_amplitude(&b, &stack.left_lead, &ctx)
                .unwrap()
                .t
                .arg()
        };
        -HBAR * (ph(e + h) - ph(e - h)) / (2.0 * h)
    }

    #[test]
    fn opaque_barrier_phase_time_matches_oracle() {
        let u = 1.0 * ELECTRON_VOLT;
        let (stack, kappa) = electron_template(u);
        let d = 8.0 / kappa;
        let stack = stack.with_layer_thickness(0, d).unwrap();
        let e0 = u / 2.0;
        let grid = lin(e0 * (1.0 - 1e-4), e0 * (1.0 + 1e-4), 21);
        let tau =
            phase_time(&transmission_phase(&transmission_scan(&stack, &grid).unwrap()).unwrap()).unwrap();
        let expect = oracle_tau(&stack, d, e0);
        assert_relative_eq!(tau[10], expect, max_relative = 1e-6);
        // Saturated value ħ/sqrt(W(U − W)) for equal masses.
        assert_relative_eq!(tau[10], HBAR / (e0 * (u - e0)).sqrt(), max_relative = 1e-5);
    }

    #[test]
    fn hartman_saturation_and_thin_barrier() {
        let u = 1.0 * ELECTRON_VOLT;
        let (stack, kappa) = electron_template(u);
        let e0 = u / 2.0;
        let grid = lin(e0 * (1.0 - 1e-4), e0 * (1.0 + 1e-4), 11);
        let lengths: Vec<f64> = [0.1, 5.0, 7.5, 10.0, 12.5, 15.0, 15.0]
            .iter()
            .map(|x| x / kappa)
            .collect();
        let scan = hartman_scan(&stack, 0, &lengths, &grid, None, SATURATION_THRESHOLD).unwrap();
        assert!(!scan.saturated[0]);
        assert!(scan.saturated[1..].iter().all(|&s| s));
        assert_eq!(scan.tau[5], scan.tau[6]);
        assert!(scan.saturated_spread() < 0.01);
        for (i, &d) in lengths.iter().enumerate() {
            assert_relative_eq!(scan.tau[i], oracle_tau(&stack, d, e0), max_relative = 1e-6);
        }
    }

    #[test]
    fn hartman_rejects_propagating_probe() {
        let u = 1.0 * ELECTRON_VOLT;
        let (stack, _) = electron_template(u);
        let grid = lin(1.1 * u, 1.2 * u, 5);
        let err = hartman_scan(&stack, 0, &[1e-9], &grid, None, 0.01).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn timing_result_bookkeeping() {
        let (stack, kappa) = electron_template(1.0 * ELECTRON_VOLT);
        let stack = stack.with_layer_thickness(0, 6.0 / kappa).unwrap();
        let grid = lin(0.49 * ELECTRON_VOLT, 0.51 * ELECTRON_VOLT, 11);
        let r = timing_result(&transmission_scan(&stack, &grid).unwrap()).unwrap();
        for (i, &x) in grid.iter().enumerate() {
            assert_eq!(r.components[i].total(), r.tau[i]);
            assert_relative_eq!(r.universal[i], PLANCK / x, max_relative = 1e-14);
            assert_relative_eq!(r.factor[i] * r.period[i], r.tau[i], max_relative = 1e-14);
            assert!(r.tau[i] > 0.0);
        }
    }
}
