//! Reflection and transmission amplitudes of layered stacks.
//!
//! Conventions: time dependence `e^{+iωt}`, forward wave `e^{−ikx}`.
//! `t` is the transmitted amplitude at the right face of the stack relative
//! to the incident amplitude at the left face, so free propagation over a
//! length `L` gives `t = e^{−ikL}`. `r` is the amplitude of the `e^{+ikx}`
//! wave in the left lead, referred to the left face.
//!
//! Each region is matched through continuity of `ψ` and `(1/w)·∂ψ/∂x`, where
//! `w` is μ_r (TE electromagnetic), ρ (acoustic, ψ = pressure) or m
//! (Schrödinger). The resulting admittance `Y = q/w` is the only property of
//! a region the engine needs.
//!
//! Layers are composed as scattering matrices (Redheffer star product)
//! referenced to the left lead, so growing exponentials are never formed and
//! barriers with κd in the hundreds stay finite.

use num_complex::Complex64;

use crate::dispersion::{
    is_evanescent, is_propagating, wavenumber, Drive, FieldKind, Geometry, Medium, WaveContext,
    EVANESCENT_TOL,
};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A homogeneous layer of finite thickness (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub medium: Medium,
    pub thickness: f64,
}

impl Layer {
    pub fn new(medium: Medium, thickness: f64) -> Result<Self> {
        if !(thickness >= 0.0 && thickness.is_finite()) {
            return Err(Error::Config(format!(
                "layer thickness must be >= 0, got {thickness}"
            )));
        }
        Ok(Layer { medium, thickness })
    }
}

/// Finite layers between two semi-infinite leads.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack {
    pub left_lead: Medium,
    pub layers: Vec<Layer>,
    pub right_lead: Medium,
    pub field_kind: FieldKind,
    pub geometry: Option<Geometry>,
}

impl Stack {
    pub fn new(
        left_lead: Medium,
        layers: Vec<Layer>,
        right_lead: Medium,
        geometry: Option<Geometry>,
    ) -> Result<Self> {
        let field_kind = left_lead.field_kind();
        let all = std::iter::once(&right_lead).chain(layers.iter().map(|l| &l.medium));
        for (i, m) in all.enumerate() {
            if m.field_kind() != field_kind {
                let what = if i == 0 {
                    "right lead".to_string()
                } else {
                    format!("layer {}", i - 1)
                };
                return Err(Error::Config(format!(
                    "{what} is {} but the left lead is {field_kind}",
                    m.field_kind()
                )));
            }
        }
        for (i, l) in layers.iter().enumerate() {
            if !(l.thickness >= 0.0 && l.thickness.is_finite()) {
                return Err(Error::Config(format!(
                    "layer {i} has invalid thickness {}",
                    l.thickness
                )));
            }
        }
        if geometry.is_some() && field_kind != FieldKind::Electromagnetic {
            return Err(Error::Config(format!(
                "geometry is only meaningful for electromagnetic stacks, not {field_kind}"
            )));
        }
        Ok(Stack {
            left_lead,
            layers,
            right_lead,
            field_kind,
            geometry,
        })
    }

    /// Single barrier between identical leads.
    pub fn single_barrier(lead: Medium, barrier: Layer, geometry: Option<Geometry>) -> Result<Self> {
        Self::new(lead, vec![barrier], lead, geometry)
    }

    pub fn total_thickness(&self) -> f64 {
        self.layers.iter().map(|l| l.thickness).sum()
    }

    /// Mirror image: leads swapped and layer order reversed.
    pub fn reversed(&self) -> Self {
        Stack {
            left_lead: self.right_lead,
            layers: self.layers.iter().rev().copied().collect(),
            right_lead: self.left_lead,
            field_kind: self.field_kind,
            geometry: self.geometry,
        }
    }

    pub fn with_layer_thickness(&self, index: usize, thickness: f64) -> Result<Self> {
        let mut s = self.clone();
        let layer = s
            .layers
            .get_mut(index)
            .ok_or_else(|| Error::Config(format!("no layer with index {index}")))?;
        *layer = Layer::new(layer.medium, thickness)?;
        Ok(s)
    }

    /// Wave context for this stack at a drive value (rad/s or J).
    pub fn context(&self, drive_value: f64) -> Result<WaveContext> {
        let drive = match self.field_kind {
            FieldKind::Quantum => Drive::KineticEnergy(drive_value),
            _ => Drive::AngularFrequency(drive_value),
        };
        WaveContext::new(self.field_kind, drive)?.with_geometry(self.geometry)
    }

    fn resolve_context(&self, ctx: &WaveContext) -> Result<WaveContext> {
        if ctx.field_kind != self.field_kind {
            return Err(Error::Config(format!(
                "{} context applied to a {} stack",
                ctx.field_kind, self.field_kind
            )));
        }
        match (ctx.geometry, self.geometry) {
            (Some(a), Some(b)) if a != b => Err(Error::Config(
                "context geometry differs from the stack geometry".into(),
            )),
            (None, g) => ctx.with_geometry(g),
            _ => Ok(*ctx),
        }
    }
}

/// Complex amplitudes at one drive point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterAmplitudes {
    pub t: Complex64,
    pub r: Complex64,
    /// Ratio of right to left lead admittances; `flux_ratio·|t|² + |r|² = 1` when lossless.
    pub flux_ratio: f64,
}

impl ScatterAmplitudes {
    /// Transmitted flux fraction.
    pub fn transmittance(&self) -> f64 {
        self.flux_ratio * self.t.norm_sqr()
    }

    /// R = |r|².
    pub fn reflectance(&self) -> f64 {
        self.r.norm_sqr()
    }

    pub fn flux_balance(&self) -> f64 {
        self.transmittance() + self.reflectance()
    }
}

/// Wavenumber on the branch that decays (or propagates) towards +x under `e^{−iqx}`.
pub(crate) fn forward_wavenumber(k: Complex64) -> Complex64 {
    if k.im > 0.0 {
        -k
    } else {
        k
    }
}

/// Forward wavenumber and admittance `q/w` of one region.
fn region(medium: &Medium, ctx: &WaveContext) -> Result<(Complex64, Complex64)> {
    let q = forward_wavenumber(wavenumber(medium, ctx)?);
    Ok((q, q / medium.matching_weight()))
}

fn lead_admittance(medium: &Medium, ctx: &WaveContext, lead: &'static str) -> Result<f64> {
    let k = wavenumber(medium, ctx)?;
    let y = k / medium.matching_weight();
    if !is_propagating(k) || !(y.re > 0.0) || y.im.abs() > EVANESCENT_TOL * y.norm() {
        return Err(Error::EvanescentLead {
            lead,
            drive: ctx.drive.value(),
            k: format!("{k}"),
        });
    }
    Ok(y.re)
}

/// Single-interface amplitudes for a wave incident from `left`.
///
/// `r = (Y_l − Y_r)/(Y_l + Y_r)`, `t = 2Y_l/(Y_l + Y_r)`. For an EM wave at
/// normal incidence this is the Fresnel pair `(n₁ − n₂)/(n₁ + n₂)`; for
/// pressure waves `Y = ω/(ρ v_s)` so `r = (Z_r − Z_l)/(Z_r + Z_l)`.
pub fn interface_amplitudes(
    left: &Medium,
    right: &Medium,
    ctx: &WaveContext,
) -> Result<(Complex64, Complex64)> {
    let (_, yl) = region(left, ctx)?;
    let (_, yr) = region(right, ctx)?;
    let sum = yl + yr;
    if sum.norm() == 0.0 || !sum.re.is_finite() {
        return Err(Error::Config(format!(
            "interface matching undefined: admittances {yl} and {yr} cancel"
        )));
    }
    Ok(((yl - yr) / sum, 2.0 * yl / sum))
}

/// 2×2 scattering matrix: `[b_left, b_right] = S·[a_left, a_right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct SMatrix {
    r11: Complex64,
    t12: Complex64,
    t21: Complex64,
    r22: Complex64,
}

impl SMatrix {
    const IDENTITY: SMatrix = SMatrix {
        r11: Complex64::new(0.0, 0.0),
        t12: ONE,
        t21: ONE,
        r22: Complex64::new(0.0, 0.0),
    };

    /// Redheffer star product: `self` on the left, `next` on the right.
    fn star(&self, next: &SMatrix) -> SMatrix {
        let d = ONE - self.r22 * next.r11;
        SMatrix {
            r11: self.r11 + self.t12 * next.r11 * self.t21 / d,
            t12: self.t12 * next.t12 / d,
            t21: next.t21 * self.t21 / d,
            r22: next.r22 + next.t21 * self.r22 * next.t12 / d,
        }
    }

    fn interface(yl: Complex64, yr: Complex64) -> SMatrix {
        let s = yl + yr;
        SMatrix {
            r11: (yl - yr) / s,
            t12: 2.0 * yr / s,
            t21: 2.0 * yl / s,
            r22: (yr - yl) / s,
        }
    }

    /// A slab embedded in a zero-thickness reference medium of admittance `yg`.
    ///
    /// Every trigonometric factor carries the common scale `e^{−|Im qd|}`, so
    /// only bounded exponentials appear. `sin(qd)/q` falls back to its series
    /// near `q = 0`, which keeps band edges exact.
    fn slab(yg: Complex64, q: Complex64, weight: Complex64, d: f64) -> SMatrix {
        if d == 0.0 {
            return SMatrix::IDENTITY;
        }
        let a = q * d;
        let beta = a.im.abs();
        let scale = (-beta).exp();
        // q is on the decaying branch (Im a ≤ 0): e^{ia} is the large term.
        let large = Complex64::from_polar(1.0, a.re);
        let small = Complex64::from_polar((-2.0 * beta).exp(), -a.re);
        let cos_s = (large + small) * 0.5;
        let sin_s = (large - small) / (2.0 * I);
        let sinc_s = if a.norm() < 1e-4 {
            let a2 = a * a;
            (ONE - a2 / 6.0 + a2 * a2 / 120.0) * d * scale
        } else {
            sin_s / q
        };
        let s_over_y = weight * sinc_s;
        let y_s = q * sin_s / weight;
        let den = 2.0 * yg * cos_s + I * (yg * yg * s_over_y + y_s);
        let t = 2.0 * yg * scale / den;
        let r = I * (yg * yg * s_over_y - y_s) / den;
        SMatrix {
            r11: r,
            t12: t,
            t21: t,
            r22: r,
        }
    }
}

/// Amplitudes of a layered stack at one drive point.
pub fn stack_scatter(stack: &Stack, ctx: &WaveContext) -> Result<ScatterAmplitudes> {
    let ctx = stack.resolve_context(ctx)?;
    let yl = lead_admittance(&stack.left_lead, &ctx, "left")?;
    let yr = lead_admittance(&stack.right_lead, &ctx, "right")?;
    let yg = Complex64::new(yl, 0.0);

    let mut s = SMatrix::IDENTITY;
    for layer in &stack.layers {
        let q = forward_wavenumber(wavenumber(&layer.medium, &ctx)?);
        let slab = SMatrix::slab(yg, q, layer.medium.matching_weight(), layer.thickness);
        s = s.star(&slab);
    }
    s = s.star(&SMatrix::interface(yg, Complex64::new(yr, 0.0)));

    Ok(ScatterAmplitudes {
        t: s.t21,
        r: s.r11,
        flux_ratio: yr / yl,
    })
}

/// Closed-form amplitudes of one homogeneous barrier between identical leads.
///
/// Independent of the S-matrix engine. Opaque barriers use
/// `t = sech κd / (1 + i g tanh κd)`, `r = i h tanh κd / (1 + i g tanh κd)`
/// with `g = (Y² − κ̂²)/(2Yκ̂)`, `h = (Y² + κ̂²)/(2Yκ̂)` and `κ̂ = κ/w`.
pub fn rectangular_barrier_amplitude(
    barrier: &Layer,
    leads: &Medium,
    ctx: &WaveContext,
) -> Result<ScatterAmplitudes> {
    if barrier.medium.field_kind() != leads.field_kind() {
        return Err(Error::Config(
            "barrier and leads have different field kinds".into(),
        ));
    }
    let y = lead_admittance(leads, ctx, "left")?;
    let d = barrier.thickness;
    if d == 0.0 {
        return Ok(ScatterAmplitudes {
            t: ONE,
            r: Complex64::new(0.0, 0.0),
            flux_ratio: 1.0,
        });
    }
    let k = wavenumber(&barrier.medium, ctx)?;
    let w = barrier.medium.matching_weight();

    let (t, r) = if is_evanescent(k) && w.im == 0.0 {
        let kappa = k.im;
        let kh = kappa / w.re;
        let x = kappa * d;
        let g = (y * y - kh * kh) / (2.0 * y * kh);
        let h = (y * y + kh * kh) / (2.0 * y * kh);
        let e2 = (-2.0 * x).exp();
        let sech = 2.0 * (-x).exp() / (1.0 + e2);
        let tanh = (1.0 - e2) / (1.0 + e2);
        let den = Complex64::new(1.0, g * tanh);
        (
            Complex64::new(sech, 0.0) / den,
            Complex64::new(0.0, h * tanh) / den,
        )
    } else {
        let yb = k / w;
        let a = k * d;
        let sinc = if a.norm() < 1e-4 {
            let a2 = a * a;
            (ONE - a2 / 6.0 + a2 * a2 / 120.0) * d
        } else {
            a.sin() / k
        };
        // (Y/Y_b + Y_b/Y)/2 · sin a and (Y/Y_b − Y_b/Y)/2 · sin a, finite at k = 0
        let gs = 0.5 * (y * w * sinc + yb * a.sin() / y);
        let hs = 0.5 * (y * w * sinc - yb * a.sin() / y);
        let den = a.cos() + I * gs;
        (ONE / den, I * hs / den)
    };
    Ok(ScatterAmplitudes {
        t,
        r,
        flux_ratio: 1.0,
    })
}

/// Amplitudes over an ordered drive grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSpectrum {
    pub field_kind: FieldKind,
    /// Drive values in SI: rad/s, or J for quantum stacks.
    pub grid: Vec<f64>,
    pub amplitudes: Vec<ScatterAmplitudes>,
}

impl ScatterSpectrum {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Principal-value transmission phases `arg t`.
    pub fn transmission_phases(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.t.arg()).collect()
    }

    pub fn reflection_phases(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.r.arg()).collect()
    }

    pub fn is_energy_grid(&self) -> bool {
        self.field_kind == FieldKind::Quantum
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Config(format!(
            "grid needs at least 2 points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::Config("grid contains non-finite values".into()));
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!(
            "grid must be strictly increasing (index {} -> {})",
            i,
            i + 1
        )));
    }
    Ok(())
}

/// Evaluates `stack_scatter` at every grid point, in order.
pub fn transmission_scan(stack: &Stack, grid: &[f64]) -> Result<ScatterSpectrum> {
    check_grid(grid)?;
    let amplitudes = grid
        .iter()
        .enumerate()
        .map(|(index, &x)| {
            stack
                .context(x)
                .and_then(|ctx| stack_scatter(stack, &ctx))
                .map_err(|e| Error::ScanPoint {
                    index,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScatterSpectrum {
        field_kind: stack.field_kind,
        grid: grid.to_vec(),
        amplitudes,
    })
}
