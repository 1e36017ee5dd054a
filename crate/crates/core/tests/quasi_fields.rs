use std::f64::consts::{FRAC_PI_2, PI};

use coupler_core::coupler::{evolution_coefficients, CouplerParams, EvolutionCoefficients};
use coupler_core::oracle::{evolve_state, oracle_char_fn, oracle_wigner};
use coupler_core::quasi::polynomials::laguerre;
use coupler_core::quasi::{
    char_fn, moments_from_field, quasi_closed_field, quasi_closed_form, quasi_transform, ModeGrid, PhaseSpaceGrid,
};
use coupler_core::state::{InputState, Mode, Selection};
use coupler_core::stats::mean_photon;
use num_complex::Complex64 as C64;

const ONE: Selection = Selection::Single(Mode::One);

fn sample_points(count: usize, radius: f64) -> Vec<C64> {
    // Deterministic spiral so failures reproduce exactly.
    (0..count)
        .map(|k| {
            let f = (k as f64 + 0.5) / count as f64;
            C64::from_polar(radius * f.sqrt(), 2.399963 * k as f64)
        })
        .collect()
}

#[test]
fn fock_limits_at_zero_time() {
    let c = evolution_coefficients(&CouplerParams::preset_a(), 0.0).unwrap();
    for n in 0..4 {
        let state = InputState::fock(n, 2);
        for z in sample_points(20, 2.5) {
            let x = z.norm_sqr();
            for s in [1.0, 0.0, -1.0] {
                let got = char_fn(&c, &state, ONE, s, &[z]).unwrap();
                let want = (0.5 * (s - 1.0) * x).exp() * laguerre(n, x);
                assert!((got - want).norm() < 1e-12, "char n={n} s={s} ζ={z}");
            }
        }
        for a in sample_points(20, 2.0) {
            let x = a.norm_sqr();
            let w = quasi_closed_form(&c, &state, ONE, 0.0, &[a]).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let want = 2.0 / PI * sign * (-2.0 * x).exp() * laguerre(n, 4.0 * x);
            assert!((w - want).abs() < 1e-12, "W n={n} α={a}: {w} vs {want}");
            let q = quasi_closed_form(&c, &state, ONE, -1.0, &[a]).unwrap();
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let want = x.powi(n as i32) * (-x).exp() / (PI * fact);
            assert!((q - want).abs() < 1e-12, "Q n={n} α={a}: {q} vs {want}");
        }
    }
}

#[test]
fn joint_vacuum_wigner_at_origin() {
    let c = EvolutionCoefficients::identity(0.0);
    let w = quasi_closed_form(&c, &InputState::fock(0, 0), Selection::Joint, 0.0, &[C64::new(0.0, 0.0); 2]).unwrap();
    assert!((w - 4.0 / (PI * PI)).abs() < 1e-14);
}

#[test]
fn closed_forms_match_transform_single_mode() {
    let p = CouplerParams::preset_a();
    let grid = PhaseSpaceGrid::single(ModeGrid::square(3.0, 41));
    let gaussian = [InputState::coherent(C64::new(0.5, 0.2), C64::new(-0.3, 0.4)), InputState::thermal(0.5, 0.3)];
    for t in [0.4, 1.3] {
        let c = evolution_coefficients(&p, t).unwrap();
        for mode in [Mode::One, Mode::Two] {
            let sel = Selection::Single(mode);
            for s in [0.0, -1.0] {
                for state in gaussian {
                    let cf = quasi_closed_field(&c, &state, sel, s, &grid).unwrap();
                    let tf = quasi_transform(&c, &state, sel, s, &grid).unwrap();
                    let d = cf.max_abs_diff(&tf);
                    assert!(d < 1e-6, "{state:?} {mode:?} s={s} t={t}: {d:e}");
                }
                for (n, m) in [(1, 0), (0, 1), (2, 1), (2, 2)] {
                    let state = InputState::fock(n, m);
                    let cf = quasi_closed_field(&c, &state, sel, s, &grid).unwrap();
                    let tf = quasi_transform(&c, &state, sel, s, &grid).unwrap();
                    let d = cf.max_abs_diff(&tf);
                    assert!(d < 1e-5, "{state:?} {mode:?} s={s} t={t}: {d:e}");
                }
            }
        }
    }
}

#[test]
fn closed_forms_match_transform_joint() {
    let c = evolution_coefficients(&CouplerParams::preset_a(), 0.8).unwrap();
    let grid = PhaseSpaceGrid::joint(ModeGrid::square(1.5, 5), ModeGrid::square(1.5, 5));
    for state in [
        InputState::coherent(C64::new(0.3, 0.1), C64::new(0.0, -0.2)),
        InputState::thermal(0.4, 0.2),
        InputState::fock(1, 1),
    ] {
        let cf = quasi_closed_field(&c, &state, Selection::Joint, 0.0, &grid).unwrap();
        let tf = quasi_transform(&c, &state, Selection::Joint, 0.0, &grid).unwrap();
        let d = cf.max_abs_diff(&tf);
        let tol = if state.is_gaussian() { 1e-6 } else { 1e-5 };
        assert!(d < tol, "{state:?}: {d:e}");
    }
}

#[test]
fn fields_are_normalized_and_reproduce_means() {
    let p = CouplerParams::preset_a();
    let grid = PhaseSpaceGrid::single(ModeGrid::square(6.0, 121));
    let c = evolution_coefficients(&p, 1.0).unwrap();
    for state in [
        InputState::coherent(C64::new(0.5, 0.0), C64::new(0.3, 0.0)),
        InputState::fock(1, 0),
        InputState::fock(2, 1),
        InputState::thermal(0.5, 0.5),
    ] {
        for mode in [Mode::One, Mode::Two] {
            for s in [0.0, -1.0] {
                let f = quasi_closed_field(&c, &state, Selection::Single(mode), s, &grid).unwrap();
                assert!(f.is_normalized(), "{state:?} {mode:?} s={s}: {}", f.meta.normalization);
                let m = moments_from_field(&f, &[(1, 1)]).unwrap();
                let want = mean_photon(&c, &state, mode) + 0.5 * (1.0 - s);
                assert!((m.re - want).abs() < 1e-3 && m.im.abs() < 1e-3, "{state:?} {mode:?} s={s}: {m} vs {want}");
            }
        }
    }
    let c0 = EvolutionCoefficients::identity(0.0);
    let coh = InputState::coherent(C64::new(0.8, -0.4), C64::new(0.0, 0.0));
    let f = quasi_closed_field(&c0, &coh, ONE, 0.0, &grid).unwrap();
    let m = moments_from_field(&f, &[(1, 1)]).unwrap();
    assert!((m.re - (0.8f64.powi(2) + 0.4f64.powi(2) + 0.5)).abs() < 1e-3);
}

#[test]
fn husimi_is_nonnegative() {
    let p = CouplerParams::preset_a();
    let grid = PhaseSpaceGrid::single(ModeGrid::square(4.0, 61));
    for t in [PI / 100.0, FRAC_PI_2, PI] {
        let c = evolution_coefficients(&p, t).unwrap();
        for state in [InputState::fock(1, 0), InputState::fock(2, 2), InputState::fock(0, 3)] {
            for mode in [Mode::One, Mode::Two] {
                let f = quasi_closed_field(&c, &state, Selection::Single(mode), -1.0, &grid).unwrap();
                assert!(f.min() >= -1e-12, "{state:?} t={t}: {}", f.min());
            }
        }
    }
}

#[test]
fn wigner_matches_fock_simulation() {
    let p = CouplerParams::preset_a();
    let t = 1.0;
    let c = evolution_coefficients(&p, t).unwrap();
    for state in [InputState::fock(1, 0), InputState::coherent(C64::new(0.5, 0.0), C64::new(0.3, 0.0))] {
        let os = evolve_state(&p, &state, t, 40).unwrap();
        for (k, a) in sample_points(12, 1.5).into_iter().enumerate() {
            let w = quasi_closed_form(&c, &state, ONE, 0.0, &[a]).unwrap();
            let o = oracle_wigner(&os, ONE, &[a]).unwrap();
            assert!((w - o).abs() < 1e-4, "{state:?} single α={a}: {w} vs {o}");
            let b = C64::new(-0.2, 0.3) * (k as f64 / 6.0);
            let w = quasi_closed_form(&c, &state, Selection::Joint, 0.0, &[a * 0.6, b]).unwrap();
            let o = oracle_wigner(&os, Selection::Joint, &[a * 0.6, b]).unwrap();
            assert!((w - o).abs() < 1e-4, "{state:?} joint: {w} vs {o}");
        }
    }
}

#[test]
fn thermal_joint_char_fn_matches_fock_simulation() {
    let p = CouplerParams::preset_a();
    let state = InputState::thermal(1.0, 0.5);
    let c = evolution_coefficients(&p, 1.0).unwrap();
    let os = evolve_state(&p, &state, 1.0, 60).unwrap();
    let zeta = [C64::new(0.3, 0.0), C64::new(0.0, 0.2)];
    for s in [0.0, -1.0] {
        let a = char_fn(&c, &state, Selection::Joint, s, &zeta).unwrap();
        let o = oracle_char_fn(&os, zeta, s).unwrap();
        assert!((a - o).norm() < 1e-5, "s={s}: {a} vs {o}");
    }
}
