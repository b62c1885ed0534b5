//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use tunneltime::constants::{ELECTRON_MASS, ELECTRON_VOLT, HBAR, SPEED_OF_LIGHT};
use tunneltime::{wavenumber, Layer, Medium, Stack, WaveContext};

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// k² and matching weight of a medium, computed from scratch.
fn k2_and_weight(m: &Medium, drive: f64) -> (Complex64, Complex64) {
    match *m {
        Medium::Electromagnetic {
            permittivity,
            permeability,
        } => (
            permittivity * permeability * (drive / SPEED_OF_LIGHT).powi(2),
            permeability,
        ),
        Medium::Acoustic { sound_speed, density } => (
            Complex64::new((drive / sound_speed).powi(2), 0.0),
            Complex64::new(density, 0.0),
        ),
        Medium::Quantum { potential, mass } => (
            Complex64::new(2.0 * mass * (drive - potential) / (HBAR * HBAR), 0.0),
            Complex64::new(mass, 0.0),
        ),
    }
}

/// Plain transfer-matrix product on (ψ, ψ'/w), for stacks without geometry
/// and with propagating leads. Overflows for very opaque layers, which is
/// why the engine does not work this way.
pub fn transfer_matrix_amplitudes(stack: &Stack, drive: f64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let mut m = [[one, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), one]];
    for layer in &stack.layers {
        let (k2, w) = k2_and_weight(&layer.medium, drive);
        let k = k2.sqrt();
        let kd = k * layer.thickness;
        let (c, s) = (kd.cos(), kd.sin());
        let sk = if k.norm() == 0.0 {
            Complex64::new(layer.thickness, 0.0)
        } else {
            s / k
        };
        let l = [[c, w * sk], [-(k * k) * sk / w, c]];
        m = [
            [
                l[0][0] * m[0][0] + l[0][1] * m[1][0],
                l[0][0] * m[0][1] + l[0][1] * m[1][1],
            ],
            [
                l[1][0] * m[0][0] + l[1][1] * m[1][0],
                l[1][0] * m[0][1] + l[1][1] * m[1][1],
            ],
        ];
    }
    let admittance = |lead: &Medium| {
        let (k2, w) = k2_and_weight(lead, drive);
        assert!(k2.re > 0.0 && k2.im == 0.0, "oracle needs propagating leads");
        Complex64::new(k2.re.sqrt(), 0.0) / w
    };
    let (yl, yr) = (admittance(&stack.left_lead), admittance(&stack.right_lead));
    let [[m11, m12], [m21, m22]] = m;
    let a = m11 - I * yl * m12;
    let b = m11 + I * yl * m12;
    let c = m21 - I * yl * m22;
    let d = m21 + I * yl * m22;
    let den = d + I * yr * b;
    let r = -(I * yr * a + c) / den;
    let t = 2.0 * I * yl * (m11 * m22 - m12 * m21) / den;
    (t, r)
}

/// Drive value for a field kind: angular frequency or kinetic energy.
pub fn context(stack: &Stack, drive: f64) -> WaveContext {
    stack.context(drive).unwrap()
}

fn em_medium() -> impl Strategy<Value = Medium> {
    (-6.0f64..6.0, 0.5f64..2.0).prop_map(|(eps, mu)| {
        Medium::electromagnetic(Complex64::new(eps, 0.0), Complex64::new(mu, 0.0)).unwrap()
    })
}

fn em_lead() -> impl Strategy<Value = Medium> {
    (0.2f64..6.0, 0.5f64..2.0).prop_map(|(eps, mu)| {
        Medium::electromagnetic(Complex64::new(eps, 0.0), Complex64::new(mu, 0.0)).unwrap()
    })
}

fn acoustic_medium() -> impl Strategy<Value = Medium> {
    (100.0f64..8000.0, 0.5f64..20000.0).prop_map(|(v, rho)| Medium::acoustic(v, rho).unwrap())
}

fn quantum_medium(max_ev: f64) -> impl Strategy<Value = Medium> {
    (0.0f64..max_ev, 0.05f64..3.0)
        .prop_map(|(u, m)| Medium::quantum(u * ELECTRON_VOLT, m * ELECTRON_MASS).unwrap())
}

/// Lossless multi-layer stacks with propagating leads, mixing propagating and
/// evanescent layers. Returns the stack and a drive value.
pub fn lossless_stack() -> impl Strategy<Value = (Stack, f64)> {
    let em = (
        em_lead(),
        em_lead(),
        prop::collection::vec((em_medium(), 0.0f64..3.0), 0..8),
        1e9f64..1e10,
    )
        .prop_map(|(l, r, layers, f)| {
            let w = 2.0 * PI * f;
            let lambda = SPEED_OF_LIGHT / f;
            let layers = layers
                .into_iter()
                .map(|(m, d)| Layer::new(m, d * lambda).unwrap())
                .collect();
            (Stack::new(l, layers, r, None).unwrap(), w)
        });
    let ac = (
        acoustic_medium(),
        acoustic_medium(),
        prop::collection::vec((acoustic_medium(), 0.0f64..3.0), 0..8),
        1e3f64..1e6,
    )
        .prop_map(|(l, r, layers, f)| {
            let w = 2.0 * PI * f;
            let layers = layers
                .into_iter()
                .map(|(m, d)| {
                    let Medium::Acoustic { sound_speed, .. } = m else {
                        unreachable!()
                    };
                    Layer::new(m, d * sound_speed / f).unwrap()
                })
                .collect();
            (Stack::new(l, layers, r, None).unwrap(), w)
        });
    let qm = (
        quantum_medium(0.5),
        quantum_medium(0.5),
        prop::collection::vec((quantum_medium(4.0), 0.0f64..3.0), 0..8),
        0.6f64..3.0,
    )
        .prop_map(|(l, r, layers, e)| {
            let layers = layers
                .into_iter()
                .map(|(m, d)| Layer::new(m, d * 1e-9).unwrap())
                .collect();
            (Stack::new(l, layers, r, None).unwrap(), e * ELECTRON_VOLT)
        });
    prop_oneof![em, ac, qm]
}

/// Single barrier between identical propagating leads with a target
/// opaqueness `κd ∈ [0.1, 50]`. Acoustic media never go evanescent, so for
/// them the same range is applied to the propagating phase `kd`.
pub fn single_barrier() -> impl Strategy<Value = (Layer, Medium, WaveContext)> {
    let em = (em_lead(), -8.0f64..-0.05, 0.5f64..2.0, 1e9f64..1e10, 0.1f64..50.0).prop_map(
        |(lead, eps, mu, f, kd)| {
            let m = Medium::electromagnetic(Complex64::new(eps, 0.0), Complex64::new(mu, 0.0)).unwrap();
            let ctx = WaveContext::electromagnetic(2.0 * PI * f).unwrap();
            let kappa = wavenumber(&m, &ctx).unwrap().im;
            (Layer::new(m, kd / kappa).unwrap(), lead, ctx)
        },
    );
    let ac =
        (acoustic_medium(), acoustic_medium(), 1e3f64..1e6, 0.1f64..50.0).prop_map(|(lead, m, f, kd)| {
            let ctx = WaveContext::acoustic(2.0 * PI * f).unwrap();
            let k = wavenumber(&m, &ctx).unwrap().re;
            (Layer::new(m, kd / k).unwrap(), lead, ctx)
        });
    let qm = (0.05f64..3.0, 0.05f64..0.95, 0.1f64..5.0, 0.1f64..50.0).prop_map(|(mass, frac, u, kd)| {
        let mass = mass * ELECTRON_MASS;
        let u = u * ELECTRON_VOLT;
        let lead = Medium::quantum(0.0, mass).unwrap();
        let m = Medium::quantum(u, mass).unwrap();
        let ctx = WaveContext::quantum(frac * u).unwrap();
        let kappa = wavenumber(&m, &ctx).unwrap().im;
        (Layer::new(m, kd / kappa).unwrap(), lead, ctx)
    });
    prop_oneof![em, ac, qm]
}

/// |a − b| relative to the larger of the two amplitudes `scale`.
pub fn rel_err(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale
}
