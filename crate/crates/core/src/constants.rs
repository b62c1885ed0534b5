//! CODATA 2018 physical constants, SI units.

use std::f64::consts::PI;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Elementary charge, C. Also the joule value of one electronvolt.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// One electronvolt in joules.
pub const ELECTRON_VOLT: f64 = ELEMENTARY_CHARGE;
/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, N/A².
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_constants_are_consistent() {
        let c = 1.0 / (VACUUM_PERMITTIVITY * VACUUM_PERMEABILITY).sqrt();
        assert!((c - SPEED_OF_LIGHT).abs() / SPEED_OF_LIGHT < 1e-9);
    }

    #[test]
    fn hbar_matches_codata() {
        assert!((HBAR - 1.054_571_817e-34).abs() / HBAR < 1e-9);
    }
}
