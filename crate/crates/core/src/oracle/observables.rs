//! Observables computed directly from truncated Fock-space states.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::state::OracleState;
use crate::error::{Error, Result};
use crate::numeric::ln_factorial;
use crate::quasi::polynomials::generalized_laguerre_all;
use crate::state::{Mode, Selection};
use crate::stats::MIN_INTENSITY;

/// Single-mode observables of an oracle state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleMoments {
    pub mean: f64,
    pub variance: f64,
    /// `None` when the mode is (numerically) empty.
    pub g2: Option<f64>,
    /// `4⟨(ΔX)²⟩ − 1` with `X = (a + a†)/2`.
    pub s: f64,
    /// `4⟨(ΔY)²⟩ − 1` with `Y = (a − a†)/2i`.
    pub q: f64,
    pub amplitude: C64,
}

/// Reduced density matrix `ρ[k][l] = ⟨k|ρ_j|l⟩` of one mode.
pub fn reduced_density(state: &OracleState, mode: Mode) -> Vec<Vec<C64>> {
    let side = state.side();
    let mut rho = vec![vec![C64::new(0.0, 0.0); side]; side];
    let at = |psi: &[C64], own: usize, other: usize| match mode {
        Mode::One => psi[own * side + other],
        Mode::Two => psi[other * side + own],
    };
    for (w, psi) in &state.components {
        for (k, row) in rho.iter_mut().enumerate() {
            for (l, v) in row.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..side {
                    acc += at(psi, k, j) * at(psi, l, j).conj();
                }
                *v += acc * *w;
            }
        }
    }
    rho
}

pub fn oracle_moments(state: &OracleState, mode: Mode) -> Result<OracleMoments> {
    state.ensure_reliable()?;
    let rho = reduced_density(state, mode);
    let side = rho.len();
    let mut n1 = 0.0;
    let mut n2 = 0.0;
    let mut a = C64::new(0.0, 0.0);
    let mut a2 = C64::new(0.0, 0.0);
    for k in 0..side {
        let kf = k as f64;
        n1 += kf * rho[k][k].re;
        n2 += kf * kf * rho[k][k].re;
        if k >= 1 {
            a += rho[k][k - 1] * kf.sqrt();
        }
        if k >= 2 {
            a2 += rho[k][k - 2] * (kf * (kf - 1.0)).sqrt();
        }
    }
    let variance = n2 - n1 * n1;
    let g2 = (n1 >= MIN_INTENSITY).then(|| (n2 - n1) / (n1 * n1));
    Ok(OracleMoments {
        mean: n1,
        variance,
        g2,
        s: 2.0 * a2.re + 2.0 * n1 - 4.0 * a.re * a.re,
        q: -2.0 * a2.re + 2.0 * n1 - 4.0 * a.im * a.im,
        amplitude: a,
    })
}

/// Matrix `D[m][n] = ⟨m|D(β)|n⟩` of the displacement operator on `0..side`.
pub fn displacement_matrix(beta: C64, side: usize) -> Vec<Vec<C64>> {
    let mut d = vec![vec![C64::new(0.0, 0.0); side]; side];
    let x = beta.norm_sqr();
    if x == 0.0 {
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        return d;
    }
    let ln_r = beta.norm().ln();
    let phase = beta.arg();
    for k in 0..side {
        // L_n^{(k)}(x) for n = 0..side-1-k, entries (m, n) = (n + k, n) and the transpose.
        let lag = generalized_laguerre_all(side - 1 - k, k as f64, x);
        for (n, l) in lag.iter().enumerate() {
            let m = n + k;
            let mag = (0.5 * (ln_factorial(n) - ln_factorial(m)) + k as f64 * ln_r - 0.5 * x).exp() * l;
            let below = C64::from_polar(mag, k as f64 * phase);
            d[m][n] = below;
            if k > 0 {
                // ⟨n|D|m⟩ = (−β*)^k ... = (−1)^k conj of the β^k phase.
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                d[n][m] = below.conj() * sign;
            }
        }
    }
    d
}

fn parity_displacement(alpha: C64, side: usize) -> Vec<Vec<C64>> {
    let mut d = displacement_matrix(alpha * 2.0, side);
    for row in d.iter_mut() {
        for (n, v) in row.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    d
}

/// `Σ_w w ⟨ψ| A ⊗ B |ψ⟩` for single-mode operator matrices `A`, `B`.
fn product_expectation(state: &OracleState, a: &[Vec<C64>], b: &[Vec<C64>]) -> C64 {
    let side = state.side();
    let mut total = C64::new(0.0, 0.0);
    let mut tmp = vec![C64::new(0.0, 0.0); side * side];
    for (w, psi) in &state.components {
        // tmp = Ψ Bᵀ
        for n1 in 0..side {
            for m2 in 0..side {
                let mut acc = C64::new(0.0, 0.0);
                for n2 in 0..side {
                    acc += psi[n1 * side + n2] * b[m2][n2];
                }
                tmp[n1 * side + m2] = acc;
            }
        }
        let mut value = C64::new(0.0, 0.0);
        for m1 in 0..side {
            for m2 in 0..side {
                let mut acc = C64::new(0.0, 0.0);
                for n1 in 0..side {
                    acc += a[m1][n1] * tmp[n1 * side + m2];
                }
                value += psi[m1 * side + m2].conj() * acc;
            }
        }
        total += value * *w;
    }
    total
}

fn identity(side: usize) -> Vec<Vec<C64>> {
    let mut d = vec![vec![C64::new(0.0, 0.0); side]; side];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    d
}

/// Wigner function by displaced parity. `point` holds one amplitude for a
/// single-mode selection and `(α1, α2)` for the joint one.
pub fn oracle_wigner(state: &OracleState, selection: Selection, point: &[C64]) -> Result<f64> {
    state.ensure_reliable()?;
    let side = state.side();
    match selection {
        Selection::Single(mode) => {
            let alpha = *point.first().ok_or_else(|| Error::InvalidInput("missing phase-space point".into()))?;
            let rho = reduced_density(state, mode);
            let dp = parity_displacement(alpha, side);
            let mut acc = C64::new(0.0, 0.0);
            for (n, row) in rho.iter().enumerate() {
                for (m, r) in row.iter().enumerate() {
                    acc += r * dp[m][n];
                }
            }
            Ok(2.0 / PI * acc.re)
        }
        Selection::Joint => {
            if point.len() < 2 {
                return Err(Error::InvalidInput("joint Wigner needs two amplitudes".into()));
            }
            let a = parity_displacement(point[0], side);
            let b = parity_displacement(point[1], side);
            Ok(4.0 / (PI * PI) * product_expectation(state, &a, &b).re)
        }
    }
}

/// `exp(s(|ζ1|² + |ζ2|²)/2) Tr[ρ D1(ζ1) D2(ζ2)]`.
pub fn oracle_char_fn(state: &OracleState, zeta: [C64; 2], s: f64) -> Result<C64> {
    state.ensure_reliable()?;
    let side = state.side();
    let a = if zeta[0] == C64::new(0.0, 0.0) { identity(side) } else { displacement_matrix(zeta[0], side) };
    let b = if zeta[1] == C64::new(0.0, 0.0) { identity(side) } else { displacement_matrix(zeta[1], side) };
    let weight = (0.5 * s * (zeta[0].norm_sqr() + zeta[1].norm_sqr())).exp();
    Ok(product_expectation(state, &a, &b) * weight)
}
