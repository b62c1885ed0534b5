//! Unified 1D barrier scattering for electromagnetic, acoustic and quantum waves.
//!
//! The crate maps each physical set-up onto a complex wavenumber per region
//! ([`dispersion`]), composes layered stacks into transmission and reflection
//! amplitudes ([`scatter`]), turns transmission phases into phase times
//! ([`timing`]), checks them against time-domain pulses ([`pulse`]), evaluates
//! the evanescent-mode predicates ([`virtuality`]) and drives everything from
//! scenario files ([`scenarios`]).

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dispersion;
pub mod error;
pub mod pulse;
pub mod scatter;
pub mod scenarios;
pub mod timing;
pub mod virtuality;

pub use dispersion::{
    ftir_transverse_wavenumber, is_evanescent, opaqueness, waveguide_wavenumber, wavenumber, Drive,
    FieldKind, FtirGeometry, Geometry, Medium, WaveContext, WaveguideGeometry,
};
pub use error::{Error, Result};
pub use scatter::{
    interface_amplitudes, rectangular_barrier_amplitude, stack_scatter, transmission_scan, Layer,
    ScatterAmplitudes, ScatterSpectrum, Stack,
};
