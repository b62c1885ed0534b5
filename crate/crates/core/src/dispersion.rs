//! Field kinds, homogeneous media and their complex wavenumbers.
//!
//! Every supported configuration (dielectric, FTIR gap, hollow waveguide,
//! elastic medium, Schrödinger potential step) reduces to a single complex
//! wavenumber per region and drive point. The downstream scattering engine
//! only ever sees that wavenumber and a matching weight.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{HBAR, PLANCK, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Relative tolerance below which the real part of a wavenumber counts as zero.
pub const EVANESCENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Electromagnetic,
    Acoustic,
    Quantum,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Electromagnetic => "electromagnetic",
            FieldKind::Acoustic => "acoustic",
            FieldKind::Quantum => "quantum",
        }
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One homogeneous region for one field kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    /// Relative permittivity and permeability; `n = sqrt(εμ)`.
    Electromagnetic {
        permittivity: Complex64,
        permeability: Complex64,
    },
    /// Sound speed (m/s) and mass density (kg/m³).
    Acoustic { sound_speed: f64, density: f64 },
    /// Potential energy (J) and particle mass (kg).
    Quantum { potential: f64, mass: f64 },
}

impl Medium {
    pub fn electromagnetic(permittivity: Complex64, permeability: Complex64) -> Result<Self> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(permittivity) || !finite(permeability) {
            return Err(Error::Config(
                "permittivity and permeability must be finite".into(),
            ));
        }
        if permeability == Complex64::new(0.0, 0.0) {
            return Err(Error::Config("relative permeability must be non-zero".into()));
        }
        Ok(Medium::Electromagnetic {
            permittivity,
            permeability,
        })
    }

    /// Non-magnetic lossless dielectric of real refractive index `n`.
    pub fn dielectric(index: f64) -> Self {
        Medium::Electromagnetic {
            permittivity: Complex64::new(index * index, 0.0),
            permeability: Complex64::new(1.0, 0.0),
        }
    }

    pub fn vacuum() -> Self {
        Self::dielectric(1.0)
    }

    pub fn acoustic(sound_speed: f64, density: f64) -> Result<Self> {
        if !(sound_speed > 0.0 && sound_speed.is_finite()) {
            return Err(Error::Config(format!(
                "sound speed must be > 0, got {sound_speed}"
            )));
        }
        if !(density > 0.0 && density.is_finite()) {
            return Err(Error::Config(format!("mass density must be > 0, got {density}")));
        }
        Ok(Medium::Acoustic { sound_speed, density })
    }

    pub fn quantum(potential: f64, mass: f64) -> Result<Self> {
        if !potential.is_finite() {
            return Err(Error::Config("potential must be finite".into()));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Config(format!("particle mass must be > 0, got {mass}")));
        }
        Ok(Medium::Quantum { potential, mass })
    }

    pub fn field_kind(&self) -> FieldKind {
        match self {
            Medium::Electromagnetic { .. } => FieldKind::Electromagnetic,
            Medium::Acoustic { .. } => FieldKind::Acoustic,
            Medium::Quantum { .. } => FieldKind::Quantum,
        }
    }

    /// `n = sqrt(εμ)` on the same branch as [`wavenumber`]. `None` for non-EM media.
    pub fn refractive_index(&self) -> Option<Complex64> {
        match *self {
            Medium::Electromagnetic {
                permittivity,
                permeability,
            } => Some(branch_sqrt(permittivity * permeability)),
            _ => None,
        }
    }

    /// Coefficient `w` in the matched flux `(1/w)·∂ψ/∂x`: μ_r (TE), ρ, or m.
    pub(crate) fn matching_weight(&self) -> Complex64 {
        match *self {
            Medium::Electromagnetic { permeability, .. } => permeability,
            Medium::Acoustic { density, .. } => Complex64::new(density, 0.0),
            Medium::Quantum { mass, .. } => Complex64::new(mass, 0.0),
        }
    }
}

/// The quantity that drives a stationary scattering problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    /// ω in rad/s, for electromagnetic and acoustic fields.
    AngularFrequency(f64),
    /// W_kin in joules, for quantum fields.
    KineticEnergy(f64),
}

impl Drive {
    /// Raw SI value (rad/s or J).
    pub fn value(self) -> f64 {
        match self {
            Drive::AngularFrequency(w) | Drive::KineticEnergy(w) => w,
        }
    }

    pub fn with_value(self, value: f64) -> Self {
        match self {
            Drive::AngularFrequency(_) => Drive::AngularFrequency(value),
            Drive::KineticEnergy(_) => Drive::KineticEnergy(value),
        }
    }

    /// ν in Hz: ω/2π, or W/h for a matter wave.
    pub fn frequency(self) -> f64 {
        match self {
            Drive::AngularFrequency(w) => w / (2.0 * PI),
            Drive::KineticEnergy(e) => e / PLANCK,
        }
    }

    /// Quantum energy h·ν associated with the drive.
    pub fn energy(self) -> f64 {
        match self {
            Drive::AngularFrequency(w) => HBAR * w,
            Drive::KineticEnergy(e) => e,
        }
    }
}

/// Double-prism frustrated total internal reflection geometry.
///
/// With `pinned_frequency = None` the incidence angle is held fixed as the
/// frequency varies. With `Some(ω_ref)` the tangential wavenumber is held at
/// its value `n₁ sin α · ω_ref / c`, which models a beam with a fixed
/// transverse profile; at `ω = ω_ref` the two agree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtirGeometry {
    pub incidence_angle: f64,
    pub prism_index: f64,
    pub gap_index: f64,
    pub pinned_frequency: Option<f64>,
}

impl FtirGeometry {
    pub fn new(incidence_angle: f64, prism_index: f64, gap_index: f64) -> Result<Self> {
        if !(0.0..PI / 2.0).contains(&incidence_angle) {
            return Err(Error::Config(format!(
                "incidence angle must lie in [0, π/2), got {incidence_angle}"
            )));
        }
        if !(prism_index > 0.0 && prism_index.is_finite()) {
            return Err(Error::Config(format!(
                "prism index must be > 0, got {prism_index}"
            )));
        }
        if !(gap_index > 0.0 && gap_index.is_finite()) {
            return Err(Error::Config(format!("gap index must be > 0, got {gap_index}")));
        }
        Ok(FtirGeometry {
            incidence_angle,
            prism_index,
            gap_index,
            pinned_frequency: None,
        })
    }

    pub fn pinned_at(mut self, angular_frequency: f64) -> Result<Self> {
        if !(angular_frequency > 0.0 && angular_frequency.is_finite()) {
            return Err(Error::Config("pinning frequency must be > 0".into()));
        }
        self.pinned_frequency = Some(angular_frequency);
        Ok(self)
    }

    /// (n₁/n₂)·sin α; total reflection when this exceeds 1.
    pub fn snell_ratio(&self) -> f64 {
        self.prism_index / self.gap_index * self.incidence_angle.sin()
    }

    /// Refraction angle β from `n₁ sin α = n₂ sin β`, or `None` in the
    /// total-reflection regime.
    pub fn refraction_angle(&self) -> Option<f64> {
        let s = self.snell_ratio();
        (s <= 1.0).then(|| s.asin())
    }

    pub fn critical_angle(&self) -> Option<f64> {
        (self.gap_index < self.prism_index).then(|| (self.gap_index / self.prism_index).asin())
    }

    /// Conserved wavenumber component along the interfaces, rad/m.
    pub fn tangential_wavenumber(&self, angular_frequency: f64) -> f64 {
        let w = self.pinned_frequency.unwrap_or(angular_frequency);
        self.prism_index * self.incidence_angle.sin() * w / SPEED_OF_LIGHT
    }
}

/// Hollow metallic guide, dominant mode with cutoff ω_c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideGeometry {
    pub cutoff: f64,
}

impl WaveguideGeometry {
    pub fn new(cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(Error::Config(format!(
                "waveguide cutoff must be > 0, got {cutoff}"
            )));
        }
        Ok(WaveguideGeometry { cutoff })
    }

    /// Dominant TE₁₀ mode of a guide of broad width `a`: ω_c = πc/a.
    pub fn from_width(width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Config(format!("waveguide width must be > 0, got {width}")));
        }
        Self::new(PI * SPEED_OF_LIGHT / width)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Ftir(FtirGeometry),
    Waveguide(WaveguideGeometry),
}

/// Field kind, drive point and optional transverse geometry of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveContext {
    pub field_kind: FieldKind,
    pub drive: Drive,
    pub geometry: Option<Geometry>,
}

impl WaveContext {
    pub fn new(field_kind: FieldKind, drive: Drive) -> Result<Self> {
        let ctx = WaveContext {
            field_kind,
            drive,
            geometry: None,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn electromagnetic(angular_frequency: f64) -> Result<Self> {
        Self::new(
            FieldKind::Electromagnetic,
            Drive::AngularFrequency(angular_frequency),
        )
    }

    pub fn acoustic(angular_frequency: f64) -> Result<Self> {
        Self::new(FieldKind::Acoustic, Drive::AngularFrequency(angular_frequency))
    }

    pub fn quantum(kinetic_energy: f64) -> Result<Self> {
        Self::new(FieldKind::Quantum, Drive::KineticEnergy(kinetic_energy))
    }

    pub fn with_geometry(mut self, geometry: Option<Geometry>) -> Result<Self> {
        self.geometry = geometry;
        self.validate()?;
        Ok(self)
    }

    /// Same context at a different drive value.
    pub fn at(&self, value: f64) -> Result<Self> {
        let ctx = WaveContext {
            drive: self.drive.with_value(value),
            ..*self
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn frequency(&self) -> f64 {
        self.drive.frequency()
    }

    fn validate(&self) -> Result<()> {
        match (self.field_kind, self.drive) {
            (FieldKind::Quantum, Drive::KineticEnergy(e)) => {
                if !(e >= 0.0 && e.is_finite()) {
                    return Err(Error::Config(format!("kinetic energy must be >= 0, got {e}")));
                }
            }
            (FieldKind::Electromagnetic | FieldKind::Acoustic, Drive::AngularFrequency(w)) => {
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::Config(format!("angular frequency must be > 0, got {w}")));
                }
            }
            (kind, drive) => {
                return Err(Error::Config(format!(
                    "{kind} field cannot be driven by {drive:?}"
                )))
            }
        }
        if self.geometry.is_some() && self.field_kind != FieldKind::Electromagnetic {
            return Err(Error::Config(format!(
                "FTIR and waveguide geometries apply to electromagnetic fields only, not {}",
                self.field_kind
            )));
        }
        Ok(())
    }
}

/// Square root with `Im ≥ 0`, and `Re ≥ 0` when the result is real.
pub fn branch_sqrt(k2: Complex64) -> Complex64 {
    let mut k = if k2.im == 0.0 {
        if k2.re >= 0.0 {
            Complex64::new(k2.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-k2.re).sqrt())
        }
    } else {
        k2.sqrt()
    };
    if k.im < 0.0 {
        k = -k;
    }
    if k.re == 0.0 {
        k.re = 0.0;
    }
    k
}

/// The squared wavenumber k² of a medium at a drive point, before the square root.
pub fn wavenumber_squared(medium: &Medium, ctx: &WaveContext) -> Result<Complex64> {
    if medium.field_kind() != ctx.field_kind {
        return Err(Error::Config(format!(
            "{} medium evaluated in a {} context",
            medium.field_kind(),
            ctx.field_kind
        )));
    }
    let k2 = match (*medium, ctx.drive) {
        (
            Medium::Electromagnetic {
                permittivity,
                permeability,
            },
            Drive::AngularFrequency(w),
        ) => {
            let k0 = w / SPEED_OF_LIGHT;
            let bulk = permittivity * permeability * (k0 * k0);
            match ctx.geometry {
                None => bulk,
                Some(Geometry::Ftir(g)) => {
                    let kt = g.tangential_wavenumber(w);
                    bulk - kt * kt
                }
                Some(Geometry::Waveguide(g)) => {
                    let kc = g.cutoff / SPEED_OF_LIGHT;
                    bulk - kc * kc
                }
            }
        }
        (
            Medium::Acoustic {
                sound_speed,
                density: _,
            },
            Drive::AngularFrequency(w),
        ) => {
            let k = w / sound_speed;
            Complex64::new(k * k, 0.0)
        }
        (Medium::Quantum { potential, mass }, Drive::KineticEnergy(e)) => {
            Complex64::new(2.0 * mass * (e - potential) / (HBAR * HBAR), 0.0)
        }
        (m, d) => {
            return Err(Error::Config(format!(
                "drive {d:?} is inconsistent with {} medium",
                m.field_kind()
            )))
        }
    };
    Ok(k2)
}

/// Complex wavenumber of `medium` at `ctx`, rad/m, on the `Im(k) ≥ 0` branch.
///
/// A purely imaginary result marks an evanescent (tunnelling) region.
pub fn wavenumber(medium: &Medium, ctx: &WaveContext) -> Result<Complex64> {
    wavenumber_squared(medium, ctx).map(branch_sqrt)
}

/// Component of the transmitted wave vector normal to the prism faces.
///
/// `k_x = (ω/c)·sqrt(n₂² − n₁² sin²α)` for a fixed angle, or
/// `sqrt(n₂²ω²/c² − k_t²)` when the tangential wavenumber is pinned.
pub fn ftir_transverse_wavenumber(geom: &FtirGeometry, angular_frequency: f64) -> Complex64 {
    let k0 = angular_frequency / SPEED_OF_LIGHT;
    let kt = geom.tangential_wavenumber(angular_frequency);
    let n2 = geom.gap_index;
    branch_sqrt(Complex64::new((n2 * k0) * (n2 * k0) - kt * kt, 0.0))
}

/// `k = sqrt(ω² − ω_c²)/c`, imaginary below cutoff.
pub fn waveguide_wavenumber(geom: &WaveguideGeometry, angular_frequency: f64) -> Complex64 {
    let w = angular_frequency / SPEED_OF_LIGHT;
    let wc = geom.cutoff / SPEED_OF_LIGHT;
    branch_sqrt(Complex64::new((w - wc) * (w + wc), 0.0))
}

/// True when `k` is purely imaginary to within [`EVANESCENT_TOL`] relative.
pub fn is_evanescent(k: Complex64) -> bool {
    k.im != 0.0 && k.re.abs() <= EVANESCENT_TOL * k.norm()
}

/// True when `k` is real, non-zero and carries flux.
pub fn is_propagating(k: Complex64) -> bool {
    k.re > 0.0 && k.im.abs() <= EVANESCENT_TOL * k.norm()
}

/// Opaqueness κd of an evanescent region of length `d`.
pub fn opaqueness(k: Complex64, length: f64) -> Result<f64> {
    if length == 0.0 {
        return Ok(0.0);
    }
    if !is_evanescent(k) {
        return Err(Error::Domain(format!("wavenumber {k} is not evanescent")));
    }
    if length < 0.0 {
        return Err(Error::Domain(format!("length must be >= 0, got {length}")));
    }
    Ok(k.im * length)
}

/// Classification threshold κd ≥ 1.
pub fn is_opaque(k: Complex64, length: f64) -> bool {
    opaqueness(k, length).map(|x| x >= 1.0).unwrap_or(false)
}
