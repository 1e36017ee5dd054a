//! Quadrature squeezing, photon-number moments and `g⁽²⁾`.
//!
//! Mode-2 quantities are mode-1 formulas evaluated on swapped coefficients and
//! swapped input data.

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::moments::output_moments;
use crate::state::{InputState, Mode};

/// Below this mean photon number `g⁽²⁾` is refused.
pub const MIN_INTENSITY: f64 = 1e-30;

/// Kernels `V1..V7` of one output mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsKernels {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub v4: C64,
    pub v5: C64,
    pub v6: C64,
    pub v7: C64,
}

impl StatsKernels {
    /// `V1 + V2 − 1 − 2 V3`, zero for exact coefficients.
    pub fn sum_rule_residual(&self) -> f64 {
        self.v1 + self.v2 - 1.0 - 2.0 * self.v3
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub s1: f64,
    pub q1: f64,
    pub s2: f64,
    pub q2: f64,
}

impl QuadratureReport {
    /// `[S1, Q1, S2, Q2] < 0`.
    pub fn squeezed(&self) -> [bool; 4] {
        [self.s1 < 0.0, self.q1 < 0.0, self.s2 < 0.0, self.q2 < 0.0]
    }

    pub fn mode(&self, mode: Mode) -> (f64, f64) {
        match mode {
            Mode::One => (self.s1, self.q1),
            Mode::Two => (self.s2, self.q2),
        }
    }

    /// `(S_j + 1)(Q_j + 1)` for each mode; bounded below by one.
    pub fn uncertainty_products(&self) -> [f64; 2] {
        [(self.s1 + 1.0) * (self.q1 + 1.0), (self.s2 + 1.0) * (self.q2 + 1.0)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonStatistics {
    pub mean: f64,
    pub variance: f64,
    pub g2: f64,
}

fn oriented(c: &EvolutionCoefficients, state: &InputState, mode: Mode) -> (EvolutionCoefficients, InputState) {
    match mode {
        Mode::One => (*c, *state),
        Mode::Two => (c.swapped(), state.swapped()),
    }
}

pub fn stats_kernels(c: &EvolutionCoefficients, mode: Mode) -> StatsKernels {
    let m = c.mode(mode);
    let (k, l, mm, n) = (m.k, m.l, m.m, m.n);
    StatsKernels {
        v1: k.norm_sqr() + l.norm_sqr(),
        v2: mm.norm_sqr() + n.norm_sqr(),
        v3: n.norm_sqr() + l.norm_sqr(),
        v4: k.conj() * l,
        v5: mm.conj() * n,
        v6: k * n.conj() + l.conj() * mm,
        v7: mm * k.conj() + n.conj() * l,
    }
}

pub fn mean_photon(c: &EvolutionCoefficients, state: &InputState, mode: Mode) -> f64 {
    let (c, state) = oriented(c, state, mode);
    let v = stats_kernels(&c, Mode::One);
    match state {
        InputState::Coherent { alpha1: a, alpha2: b } => {
            let cross = a * a * v.v4.conj() + b * b * v.v5.conj() + a.conj() * b * v.v7 + a * b * v.v6;
            a.norm_sqr() * v.v1 + b.norm_sqr() * v.v2 + v.v3 + 2.0 * cross.re
        }
        InputState::Fock { n, m } => n as f64 * v.v1 + m as f64 * v.v2 + v.v3,
        InputState::Thermal { nbar1, nbar2 } => nbar1 * v.v1 + nbar2 * v.v2 + v.v3,
    }
}

/// Photon-number variance of a coherent input, term by term in the kernels.
fn coherent_variance(v: &StatsKernels, a: C64, b: C64) -> f64 {
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let real_part = (v.v1 * v.v1 + 4.0 * v.v4.norm_sqr()) * na
        + (v.v2 * v.v2 + 4.0 * v.v5.norm_sqr()) * nb
        + (v.v7.norm_sqr() + v.v6.norm_sqr()) * (na + nb)
        + v.v6.norm_sqr()
        + 2.0 * v.v4.norm_sqr()
        + 2.0 * v.v5.norm_sqr();
    let bracket = a * a * (v.v4.conj() * (2.0 * v.v1) + v.v7.conj() * v.v6)
        + b * b * (v.v5.conj() * (2.0 * v.v2) + v.v7 * v.v6)
        + a * b * (v.v6 * v.v1 + v.v4.conj() * v.v7 * 2.0 + v.v5.conj() * v.v7.conj() * 2.0 + v.v6 * v.v2)
        + a.conj() * b * (v.v7 * v.v1 + v.v4 * v.v6 * 2.0 + v.v5.conj() * v.v6.conj() * 2.0 + v.v7 * v.v2);
    real_part + 2.0 * bracket.re
}

/// Photon-number variance of a Fock input `|n, m⟩`.
///
/// Includes the vacuum contribution `|V6|²`, which a Fock-basis simulation
/// requires (at `n = m = 0` this must equal the coherent vacuum value).
fn fock_variance(v: &StatsKernels, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    2.0 * v.v4.norm_sqr() * (n * n + n + 1.0)
        + 2.0 * v.v5.norm_sqr() * (m * m + m + 1.0)
        + (v.v6.norm_sqr() + v.v7.norm_sqr()) * (n + m + 2.0 * m * n)
        + v.v6.norm_sqr()
}

/// Variance of `a†a` for a Gaussian state, via the moment theorem:
/// `|d|²(2N+1) + 2 Re(d*² W) + N(N+1) + |W|²`.
pub fn gaussian_number_variance(mean: C64, n: f64, w: C64) -> f64 {
    mean.norm_sqr() * (2.0 * n + 1.0) + 2.0 * (mean.conj() * mean.conj() * w).re + n * (n + 1.0) + w.norm_sqr()
}

pub fn photon_variance(c: &EvolutionCoefficients, state: &InputState, mode: Mode) -> f64 {
    let (c, state) = oriented(c, state, mode);
    let v = stats_kernels(&c, Mode::One);
    let var = match state {
        InputState::Coherent { alpha1, alpha2 } => coherent_variance(&v, alpha1, alpha2),
        InputState::Fock { n, m } => fock_variance(&v, n, m),
        InputState::Thermal { .. } => {
            let mo = output_moments(&c, &state);
            gaussian_number_variance(mo.mean[0], mo.normal[0][0].re, mo.anomalous[0][0])
        }
    };
    var.max(0.0)
}

pub fn g2(c: &EvolutionCoefficients, state: &InputState, mode: Mode) -> Result<f64> {
    let mean = mean_photon(c, state, mode);
    if mean < MIN_INTENSITY {
        return Err(Error::ZeroIntensity { mean });
    }
    let var = photon_variance(c, state, mode);
    Ok(1.0 + (var - mean) / (mean * mean))
}

pub fn photon_statistics(c: &EvolutionCoefficients, state: &InputState, mode: Mode) -> Result<PhotonStatistics> {
    let mean = mean_photon(c, state, mode);
    let variance = photon_variance(c, state, mode);
    if mean < MIN_INTENSITY {
        return Err(Error::ZeroIntensity { mean });
    }
    Ok(PhotonStatistics { mean, variance, g2: 1.0 + (variance - mean) / (mean * mean) })
}

/// `(S, Q)` of mode 1 for fluctuation occupations `(n̄1, n̄2)`:
/// `S = 2N + 2 Re⟨δa²⟩`, `Q = 2N − 2 Re⟨δa²⟩`.
fn mode_one_squeezing(c: &EvolutionCoefficients, nbar: [f64; 2]) -> (f64, f64) {
    let (k, l, m, n) = (c.k1, c.l1, c.m1, c.n1);
    let base = 2.0 * nbar[0] * (l.norm_sqr() + k.norm_sqr())
        + 2.0 * nbar[1] * (n.norm_sqr() + m.norm_sqr())
        + 2.0 * l.norm_sqr()
        + 2.0 * n.norm_sqr();
    // [z + c.c.] = 2 Re z
    let pairs = (2.0 * nbar[0] + 1.0) * 2.0 * (l * k).re + (2.0 * nbar[1] + 1.0) * 2.0 * (m * n).re;
    (base + pairs, base - pairs)
}

/// Squeezing measures of both modes.
///
/// Coherent inputs use zero occupation. Fock inputs use `n̄ ← n`, which is exact
/// because both families share the same quadrature second moments.
pub fn squeezing(c: &EvolutionCoefficients, state: &InputState) -> QuadratureReport {
    let nbar = state.occupations();
    let (s1, q1) = mode_one_squeezing(c, nbar);
    let (s2, q2) = mode_one_squeezing(&c.swapped(), [nbar[1], nbar[0]]);
    QuadratureReport { s1, q1, s2, q2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupler::{evolution_coefficients, CouplerParams};

    fn coeffs(t: f64) -> EvolutionCoefficients {
        evolution_coefficients(&CouplerParams::preset_c(), t).unwrap()
    }

    #[test]
    fn kernels_at_zero_time() {
        let v = stats_kernels(&EvolutionCoefficients::identity(0.0), Mode::One);
        assert_eq!((v.v1, v.v2, v.v3), (1.0, 0.0, 0.0));
        assert_eq!(v.v4.norm() + v.v5.norm() + v.v6.norm() + v.v7.norm(), 0.0);
    }

    #[test]
    fn sum_rule() {
        let c = evolution_coefficients(&CouplerParams::preset_a(), 1.0).unwrap();
        for mode in [Mode::One, Mode::Two] {
            assert!(stats_kernels(&c, mode).sum_rule_residual().abs() < 1e-12);
        }
        let v = stats_kernels(&c, Mode::One);
        assert!((v.v4 - c.k1.conj() * c.l1).norm() < 1e-16);
    }

    #[test]
    fn coherent_variance_matches_gaussian_moments() {
        let c = coeffs(0.7);
        let state = InputState::coherent(C64::new(1.2, -0.4), C64::new(-0.3, 0.9));
        for mode in [Mode::One, Mode::Two] {
            let mo = output_moments(&c, &state);
            let i = mode.index();
            let direct = gaussian_number_variance(mo.mean[i], mo.normal[i][i].re, mo.anomalous[i][i]);
            assert!((photon_variance(&c, &state, mode) - direct).abs() < 1e-12);
            let mean = mo.mean[i].norm_sqr() + mo.normal[i][i].re;
            assert!((mean_photon(&c, &state, mode) - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn fock_vacuum_matches_coherent_vacuum() {
        let c = coeffs(1.9);
        let zero = C64::new(0.0, 0.0);
        for mode in [Mode::One, Mode::Two] {
            let a = photon_variance(&c, &InputState::fock(0, 0), mode);
            let b = photon_variance(&c, &InputState::coherent(zero, zero), mode);
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn initial_values() {
        let c = EvolutionCoefficients::identity(0.0);
        let coh = InputState::coherent(C64::new(20.0, 0.0), C64::new(5.0, 0.0));
        assert_eq!(mean_photon(&c, &coh, Mode::One), 400.0);
        assert_eq!(photon_variance(&c, &coh, Mode::One), 400.0);
        assert_eq!(g2(&c, &coh, Mode::One).unwrap(), 1.0);
        assert_eq!(g2(&c, &InputState::thermal(0.5, 0.7), Mode::Two).unwrap(), 2.0);
        assert_eq!(g2(&c, &InputState::fock(5, 3), Mode::One).unwrap(), 0.8);
        assert_eq!(photon_variance(&c, &InputState::fock(5, 3), Mode::Two), 0.0);
        assert_eq!(squeezing(&c, &InputState::thermal(0.5, 0.2)).s1, 1.0);
        let r = squeezing(&c, &coh);
        assert_eq!([r.s1, r.q1, r.s2, r.q2], [0.0; 4]);
    }

    #[test]
    fn vacuum_g2_is_refused() {
        let c = EvolutionCoefficients::identity(0.0);
        assert!(matches!(g2(&c, &InputState::fock(0, 0), Mode::One), Err(Error::ZeroIntensity { .. })));
    }

    #[test]
    fn squeezing_matches_covariance() {
        let c = coeffs(2.3);
        let state = InputState::thermal(0.5, 1.5);
        let r = squeezing(&c, &state);
        let mo = output_moments(&c, &state);
        for (i, (s, q)) in [(r.s1, r.q1), (r.s2, r.q2)].into_iter().enumerate() {
            let n = mo.normal[i][i].re;
            let w = mo.anomalous[i][i].re;
            assert!((s - (2.0 * n + 2.0 * w)).abs() < 1e-12);
            assert!((q - (2.0 * n - 2.0 * w)).abs() < 1e-12);
        }
    }
}
