mod common;

use common::{context, lossless_stack, rel_err, single_barrier, transfer_matrix_amplitudes};
use num_complex::Complex64;
use proptest::prelude::*;
use tunneltime::constants::{ELECTRON_MASS, ELECTRON_VOLT};
use tunneltime::dispersion::{branch_sqrt, wavenumber_squared};
use tunneltime::virtuality::{interface_reflectance, localization_bound};
use tunneltime::{rectangular_barrier_amplitude, stack_scatter, wavenumber, Medium, WaveContext};

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1000,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn flux_is_conserved((stack, drive) in lossless_stack()) {
        let a = stack_scatter(&stack, &context(&stack, drive)).unwrap();
        prop_assert!((a.flux_balance() - 1.0).abs() < 1e-10, "balance {}", a.flux_balance());
    }

    #[test]
    fn transmittance_is_reciprocal((stack, drive) in lossless_stack()) {
        let fwd = stack_scatter(&stack, &context(&stack, drive)).unwrap();
        let rev = stack.reversed();
        let back = stack_scatter(&rev, &context(&rev, drive)).unwrap();
        prop_assert!((fwd.transmittance() - back.transmittance()).abs() < 1e-10);
        if stack.left_lead == stack.right_lead {
            prop_assert!(rel_err(fwd.t, back.t, fwd.t.norm().max(1e-300)) < 1e-9);
        }
    }

    #[test]
    fn matches_closed_form((barrier, lead, ctx) in single_barrier()) {
        let stack = tunneltime::Stack::single_barrier(lead, barrier, None).unwrap();
        let a = stack_scatter(&stack, &ctx).unwrap();
        let b = rectangular_barrier_amplitude(&barrier, &lead, &ctx).unwrap();
        let scale = b.t.norm().max(b.r.norm());
        prop_assert!(rel_err(a.t, b.t, b.t.norm()) < 1e-10, "t {} vs {}", a.t, b.t);
        prop_assert!(rel_err(a.r, b.r, scale) < 1e-10, "r {} vs {}", a.r, b.r);
    }

    #[test]
    fn matches_transfer_matrices((stack, drive) in lossless_stack()) {
        // The naive product loses precision with opacity and impedance contrast.
        let ctx = context(&stack, drive);
        let opaque: f64 = stack.layers.iter().map(|l| wavenumber(&l.medium, &ctx).unwrap().im * l.thickness).sum();
        prop_assume!(opaque < 4.0);
        let a = stack_scatter(&stack, &ctx).unwrap();
        let (t, r) = transfer_matrix_amplitudes(&stack, drive);
        prop_assert!(rel_err(a.t, t, t.norm()) < 1e-6, "t {} vs {}", a.t, t);
        prop_assert!(rel_err(a.r, r, 1.0) < 1e-6, "r {} vs {}", a.r, r);
    }

    #[test]
    fn reflectance_symmetric(a in -5.0f64..5.0, b in 0.1f64..5.0, c in 0.1f64..5.0, d in -5.0f64..5.0) {
        let n1 = Complex64::new(a, b);
        let n2 = Complex64::new(c, d);
        let r12 = interface_reflectance(n1, n2).unwrap();
        let r21 = interface_reflectance(n2, n1).unwrap();
        prop_assert!((r12 - r21).abs() <= 1e-12 * r12.max(1.0));
    }

    #[test]
    fn imaginary_against_real_reflects_totally(kappa in 1e-3f64..1e3, n in 1e-3f64..1e3) {
        let r = interface_reflectance(Complex64::new(0.0, kappa), Complex64::new(n, 0.0)).unwrap();
        prop_assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn localization_identity(u in 0.01f64..100.0, frac in 0.0f64..0.999, m in 0.01f64..10.0) {
        let (u, w, m) = (u * ELECTRON_VOLT, frac * u * ELECTRON_VOLT, m * ELECTRON_MASS);
        let b = localization_bound(u, w, m).unwrap();
        prop_assert!((b.energy_scale(m) - (u - w)).abs() <= 1e-12 * (u - w));
    }

    #[test]
    fn branch_is_consistent(eps_re in -10.0f64..10.0, eps_im in 0.0f64..5.0, f in 1e6f64..1e15) {
        let m = Medium::electromagnetic(Complex64::new(eps_re, eps_im), Complex64::new(1.0, 0.0)).unwrap();
        let ctx = WaveContext::electromagnetic(2.0 * std::f64::consts::PI * f).unwrap();
        let k = wavenumber(&m, &ctx).unwrap();
        let k2 = wavenumber_squared(&m, &ctx).unwrap();
        prop_assert!(k.im >= 0.0);
        if k.im == 0.0 { prop_assert!(k.re >= 0.0); }
        prop_assert!((k * k - k2).norm() <= 1e-12 * k2.norm());
        prop_assert_eq!(branch_sqrt(k2), k);
    }
}
