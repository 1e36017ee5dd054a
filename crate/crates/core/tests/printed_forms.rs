//! Literal published closed forms compared against the authoritative evaluators.
//!
//! Each test pins down what the literal expression does, so a change in either
//! side shows up as a failure.

use std::f64::consts::PI;

use coupler_core::coupler::{evolution_coefficients, CouplerParams, EvolutionCoefficients};
use coupler_core::quasi::printed::{
    printed_coherent_joint, printed_coherent_single, printed_fock_single, printed_thermal_char_single,
    printed_thermal_joint, printed_thermal_single, CoherentQuasiKernel, FockSingleKernel, ThermalKernels,
};
use coupler_core::quasi::{char_fn, quasi_closed_form};
use coupler_core::state::{InputState, Mode, Selection};
use num_complex::Complex64 as C64;

const ONE: Selection = Selection::Single(Mode::One);

fn points() -> [C64; 4] {
    [C64::new(0.3, -0.2), C64::new(-0.5, 0.4), C64::new(0.1, 0.7), C64::new(0.6, 0.1)]
}

fn coeffs(t: f64) -> EvolutionCoefficients {
    evolution_coefficients(&CouplerParams::preset_a(), t).unwrap()
}

#[test]
fn fock_envelope_uses_unrooted_tau() {
    for t in [0.5, 1.0, PI / 2.0] {
        let c = coeffs(t);
        let vac = InputState::fock(0, 0);
        let (mut plain, mut root) = (0.0f64, 0.0f64);
        for a in points() {
            let exact = quasi_closed_form(&c, &vac, ONE, 0.0, &[a]).unwrap();
            let k = FockSingleKernel::new(&c, 0.0, a);
            plain = plain.max((printed_fock_single(&k, 0, 0, a, false) - exact).norm());
            let k = FockSingleKernel::with_tau_root(&c, 0.0, a);
            root = root.max((printed_fock_single(&k, 0, 0, a, true) - exact).norm());
        }
        assert!(plain < 1e-12, "t={t}: {plain:e}");
        assert!(root > 1e-2, "t={t}: {root:e}");
    }
}

#[test]
fn fock_kernel_identities() {
    let c = coeffs(0.9);
    let k = FockSingleKernel::new(&c, -1.0, C64::new(0.2, 0.1));
    assert!((k.psi - (c.k1 * c.l1 + c.n1 * c.m1)).norm() < 1e-15);
    let z2 = (1.0 - 2.0 * (k.eta_plus.norm_sqr() + k.eta_minus.norm_sqr()))
        * (1.0 - 2.0 * (k.zeta_plus.norm_sqr() + k.zeta_minus.norm_sqr()));
    assert!((k.z * k.z - z2).norm() < 1e-12);
    assert!((k.tau_root * k.tau_root - k.tau).abs() < 1e-12);
}

#[test]
fn fock_multi_sum_does_not_reproduce_transform() {
    // The literal sum, with its subscripted brackets read as powers, misses the
    // exact single-mode Fock field already for n = 1.
    let c = coeffs(0.5);
    let state = InputState::fock(1, 0);
    let mut worst = 0.0f64;
    for a in points() {
        let exact = quasi_closed_form(&c, &state, ONE, 0.0, &[a]).unwrap();
        let k = FockSingleKernel::new(&c, 0.0, a);
        worst = worst.max((printed_fock_single(&k, 1, 0, a, false) - exact).norm());
    }
    assert!(worst > 1e-2, "{worst:e}");
}

#[test]
fn coherent_single_needs_sign_flip() {
    let coh = InputState::coherent(C64::new(0.5, 0.2), C64::new(-0.3, 0.4));
    for t in [0.3, 1.0, PI / 2.0] {
        let c = coeffs(t);
        for s in [0.0, -1.0] {
            let (mut literal, mut flipped) = (0.0f64, 0.0f64);
            for a in points() {
                let exact = quasi_closed_form(&c, &coh, ONE, s, &[a]).unwrap();
                let k = CoherentQuasiKernel::new(&c, &coh, s, [a, C64::new(0.0, 0.0)]).unwrap();
                literal = literal.max((printed_coherent_single(&c, &k, a) - exact).norm());
                let aa = 0.5 * (1.0 - s) + c.l1.norm_sqr() + c.n1.norm_sqr();
                let b = k.b1.norm();
                let den = aa * aa - b * b;
                let e = k.alpha_bar_1 - a;
                let e1 = k.e1;
                let v = (-aa * e.norm_sqr() / den + 0.5 * b * (e1 * e1 + e1.conj() * e1.conj()).re / den).exp()
                    / (PI * den.sqrt());
                flipped = flipped.max((v - exact).abs());
            }
            assert!(literal > 1e-3, "t={t} s={s}: {literal:e}");
            assert!(flipped < 1e-12, "t={t} s={s}: {flipped:e}");
        }
    }
}

#[test]
fn thermal_single_needs_conjugated_negated_u() {
    let th = InputState::thermal(0.7, 0.3);
    for t in [0.3, 1.0, PI / 2.0] {
        let c = coeffs(t);
        for s in [0.0, -1.0] {
            let (mut literal, mut fixed) = (0.0f64, 0.0f64);
            for a in points() {
                let exact = quasi_closed_form(&c, &th, ONE, s, &[a]).unwrap();
                let k = ThermalKernels::new(&c, &th, s, a).unwrap();
                literal = literal.max((printed_thermal_single(&k, a) - exact).norm());
                let mut k2 = k;
                k2.u = -k.u.conj();
                fixed = fixed.max((printed_thermal_single(&k2, a) - exact).norm());
            }
            assert!(literal > 1e-3, "t={t} s={s}: {literal:e}");
            assert!(fixed < 1e-12, "t={t} s={s}: {fixed:e}");
        }
    }
}

#[test]
fn thermal_single_char_fn_has_swapped_conjugation() {
    let th = InputState::thermal(0.7, 0.3);
    let c = coeffs(1.0);
    let (mut literal, mut swapped) = (0.0f64, 0.0f64);
    for z in points() {
        let exact = char_fn(&c, &th, ONE, 0.0, &[z]).unwrap();
        let k = ThermalKernels::new(&c, &th, 0.0, C64::new(0.0, 0.0)).unwrap();
        literal = literal.max((printed_thermal_char_single(&k, z) - exact).norm());
        let mut k2 = k;
        k2.u = k.u.conj();
        swapped = swapped.max((printed_thermal_char_single(&k2, z) - exact).norm());
    }
    assert!(literal > 1e-3, "{literal:e}");
    assert!(swapped < 1e-14, "{swapped:e}");
}

#[test]
fn printed_joint_forms_fail_before_interaction() {
    let c = EvolutionCoefficients::identity(0.0);
    let a = [C64::new(0.3, -0.2), C64::new(-0.4, 0.1)];
    let th = InputState::thermal(0.7, 0.3);
    let exact = quasi_closed_form(&c, &th, Selection::Joint, 0.0, &a).unwrap();
    let k = ThermalKernels::new(&c, &th, 0.0, a[0]).unwrap();
    assert!((printed_thermal_joint(&k, a) - exact).norm() > 1e-3);

    // The coherent joint prefactor divides by |L1|² + |N1|² − |B1|², which is zero here.
    let coh = InputState::coherent(C64::new(0.5, 0.0), C64::new(0.0, 0.3));
    let k = CoherentQuasiKernel::new(&c, &coh, 0.0, a).unwrap();
    assert!(!printed_coherent_joint(&c, &k).is_finite());
}

#[test]
fn printed_p_flags_agree_with_covariance_margin() {
    use coupler_core::quasi::p_representable;
    let c = coeffs(1.0);
    let coh = InputState::coherent(C64::new(0.5, 0.0), C64::new(0.0, 0.0));
    let k = CoherentQuasiKernel::new(&c, &coh, 1.0, [C64::new(0.0, 0.0); 2]).unwrap();
    let rep = p_representable(&c, &coh, ONE).unwrap();
    assert_eq!(k.p_flag_single, rep.representable);
    let th = InputState::thermal(2.0, 2.0);
    let k = ThermalKernels::new(&c, &th, 1.0, C64::new(0.0, 0.0)).unwrap();
    let rep = p_representable(&c, &th, ONE).unwrap();
    assert_eq!(k.p_flag_single, rep.representable);
}
