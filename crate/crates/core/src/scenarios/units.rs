//! Unit-suffixed quantities such as `"40 cm"` or `"8.33 GHz"`.

use std::f64::consts::PI;

use crate::constants::{ELECTRON_MASS, ELECTRON_VOLT};
use crate::error::{Error, Result};

/// Physical dimension of a configuration value, with its SI target unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
    /// Ordinary frequency, stored in Hz.
    Frequency,
    /// Angular frequency, stored in rad/s.
    AngularFrequency,
    Energy,
    Angle,
    Speed,
    Density,
    Mass,
}

impl Dimension {
    /// Unit written when serialising back to SI.
    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Time => "s",
            Dimension::Frequency => "Hz",
            Dimension::AngularFrequency => "rad/s",
            Dimension::Energy => "J",
            Dimension::Angle => "rad",
            Dimension::Speed => "m/s",
            Dimension::Density => "kg/m3",
            Dimension::Mass => "kg",
        }
    }

    fn factor(self, unit: &str) -> Option<f64> {
        let hz = |f: f64| match self {
            Dimension::Frequency => f,
            _ => 2.0 * PI * f,
        };
        let f = match (self, unit) {
            (Dimension::Length, "m") => 1.0,
            (Dimension::Length, "km") => 1e3,
            (Dimension::Length, "cm") => 1e-2,
            (Dimension::Length, "mm") => 1e-3,
            (Dimension::Length, "um" | "µm" | "μm") => 1e-6,
            (Dimension::Length, "nm") => 1e-9,
            (Dimension::Length, "pm") => 1e-12,
            (Dimension::Time, "s") => 1.0,
            (Dimension::Time, "ms") => 1e-3,
            (Dimension::Time, "us" | "µs" | "μs") => 1e-6,
            (Dimension::Time, "ns") => 1e-9,
            (Dimension::Time, "ps") => 1e-12,
            (Dimension::Time, "fs") => 1e-15,
            (Dimension::Time, "as") => 1e-18,
            (Dimension::Frequency | Dimension::AngularFrequency, u) => match u {
                "Hz" => hz(1.0),
                "kHz" => hz(1e3),
                "MHz" => hz(1e6),
                "GHz" => hz(1e9),
                "THz" => hz(1e12),
                "PHz" => hz(1e15),
                "rad/s" if self == Dimension::AngularFrequency => 1.0,
                "rad/s" => 1.0 / (2.0 * PI),
                _ => return None,
            },
            (Dimension::Energy, "J") => 1.0,
            (Dimension::Energy, "eV") => ELECTRON_VOLT,
            (Dimension::Energy, "meV") => 1e-3 * ELECTRON_VOLT,
            (Dimension::Energy, "keV") => 1e3 * ELECTRON_VOLT,
            (Dimension::Angle, "rad") => 1.0,
            (Dimension::Angle, "deg") => PI / 180.0,
            (Dimension::Speed, "m/s") => 1.0,
            (Dimension::Speed, "km/s") => 1e3,
            (Dimension::Density, "kg/m3") => 1.0,
            (Dimension::Density, "g/cm3") => 1e3,
            (Dimension::Mass, "kg") => 1.0,
            (Dimension::Mass, "m_e") => ELECTRON_MASS,
            _ => return None,
        };
        Some(f)
    }

    fn accepted(self) -> &'static str {
        match self {
            Dimension::Length => "m, km, cm, mm, um, nm, pm",
            Dimension::Time => "s, ms, us, ns, ps, fs, as",
            Dimension::Frequency | Dimension::AngularFrequency => "Hz, kHz, MHz, GHz, THz, PHz, rad/s",
            Dimension::Energy => "J, eV, meV, keV",
            Dimension::Angle => "rad, deg",
            Dimension::Speed => "m/s, km/s",
            Dimension::Density => "kg/m3, g/cm3",
            Dimension::Mass => "kg, m_e",
        }
    }
}

/// Parses `"<number> <unit>"` into SI. `field` names the key for diagnostics.
pub fn parse_quantity(field: &str, text: &str, dim: Dimension) -> Result<f64> {
    let err = |message: String| Error::Unit {
        field: field.to_string(),
        message,
    };
    let mut parts = text.split_whitespace();
    let (Some(number), Some(unit), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(err(format!(
            "expected \"<number> <unit>\", got {text:?} (units: {})",
            dim.accepted()
        )));
    };
    let value: f64 = number
        .parse()
        .map_err(|_| err(format!("{number:?} is not a number")))?;
    if !value.is_finite() {
        return Err(err(format!("{number:?} is not finite")));
    }
    let factor = dim.factor(unit).ok_or_else(|| {
        err(format!(
            "unknown unit {unit:?}; expected one of {}",
            dim.accepted()
        ))
    })?;
    Ok(value * factor)
}

/// SI text that [`parse_quantity`] reads back to the identical value.
pub fn format_si(value: f64, dim: Dimension) -> String {
    format!("{value:e} {}", dim.si_unit())
}
