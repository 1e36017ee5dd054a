//! Literal evaluations of the published closed-form quasiprobabilities.
//!
//! These are diagnostics. The fields produced by [`crate::quasi::closed`] and
//! [`crate::quasi::transform`] are authoritative; the functions here exist so
//! the published expressions can be compared against them term by term.
//! Each returns a complex value because several of the printed expressions are
//! not manifestly real.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::moments::output_moments;
use crate::numeric::factorial;
use crate::quasi::polynomials::jacobi;
use crate::state::InputState;

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// `q^k H_k(x / q)` written through `q²`, so it stays finite as `q → 0`.
fn scaled_hermite(k: usize, x: C64, q2: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..=k / 2 {
        let coeff = factorial(k) / (factorial(i) * factorial(k - 2 * i));
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += (2.0 * x).powu((k - 2 * i) as u32) * q2.powu(i as u32) * (sign * coeff);
    }
    acc
}

/// Kernel quantities of the single-mode Fock quasiprobability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockSingleKernel {
    pub s: f64,
    /// `|K1|² + |L1|² + |M1|² + |N1|²`.
    pub tau: f64,
    /// Positive square root of `tau`.
    pub tau_root: f64,
    pub psi: C64,
    /// Phase of `psi`.
    pub epsilon: f64,
    pub eta_plus: C64,
    pub eta_minus: C64,
    pub zeta_plus: C64,
    pub zeta_minus: C64,
    pub x_arg: C64,
    pub y_arg: C64,
    pub z: C64,
}

impl FockSingleKernel {
    /// Builds the kernel at `alpha` using `tau_used` in the denominators.
    fn build(c: &EvolutionCoefficients, s: f64, alpha: C64, root: bool) -> Self {
        let tau = c.k1.norm_sqr() + c.l1.norm_sqr() + c.m1.norm_sqr() + c.n1.norm_sqr();
        let tau_root = tau.sqrt();
        let t = if root { tau_root } else { tau };
        let psi = c.k1 * c.l1 + c.n1 * c.m1;
        let epsilon = psi.arg();
        let half = C64::from_polar(1.0, 0.5 * epsilon);
        let dp = (2.0 * (t - s + 2.0 * psi.norm())).sqrt();
        let dm = real(2.0 * (t - s - 2.0 * psi.norm())).sqrt();
        let eta_plus = (c.k1.conj() * half + c.l1 * half.conj()) / dp;
        let eta_minus = (c.k1.conj() * half - c.l1 * half.conj()) / dm;
        let zeta_plus = (c.m1.conj() * half + c.n1 * half.conj()) / dp;
        let zeta_minus = (c.m1.conj() * half - c.n1 * half.conj()) / dm;
        let plus = alpha * half.conj() + alpha.conj() * half;
        let minus = alpha * half.conj() - alpha.conj() * half;
        let x_arg = eta_plus * plus / dp + eta_minus * minus / dm;
        let y_arg = zeta_plus * plus / dp + zeta_minus * minus / dm;
        let z = (real(1.0 - 2.0 * (eta_plus.norm_sqr() + eta_minus.norm_sqr()))
            * (1.0 - 2.0 * (zeta_plus.norm_sqr() + zeta_minus.norm_sqr())))
        .sqrt();
        Self { s, tau, tau_root, psi, epsilon, eta_plus, eta_minus, zeta_plus, zeta_minus, x_arg, y_arg, z }
    }

    pub fn new(c: &EvolutionCoefficients, s: f64, alpha: C64) -> Self {
        Self::build(c, s, alpha, false)
    }

    /// Same kernel with `sqrt(tau)` in every denominator.
    pub fn with_tau_root(c: &EvolutionCoefficients, s: f64, alpha: C64) -> Self {
        Self::build(c, s, alpha, true)
    }

    fn tau_used(&self, root: bool) -> f64 {
        if root {
            self.tau_root
        } else {
            self.tau
        }
    }
}

/// The published multi-sum for the single-mode Fock quasiprobability, with the
/// subscripted brackets read as plain powers.
///
/// Terms whose factorial arguments go negative are dropped. `root` selects
/// whether the kernel was built with `sqrt(tau)`.
pub fn printed_fock_single(k: &FockSingleKernel, n: usize, m: usize, alpha: C64, root: bool) -> C64 {
    let tau = k.tau_used(root);
    let s = k.s;
    let half = C64::from_polar(1.0, 0.5 * k.epsilon);
    let plus = alpha * half.conj() + alpha.conj() * half;
    let minus = alpha * half.conj() - alpha.conj() * half;
    let ap = 2.0 * (tau - s + 2.0 * k.psi.norm());
    let am = 2.0 * (tau - s - 2.0 * k.psi.norm());
    let gauss = (minus * minus / am - plus * plus / ap).exp();
    let norm = real((tau - s).powi(2) - 4.0 * k.psi.norm_sqr()).sqrt();
    let pre = gauss * 2.0 * factorial(n) * factorial(m) / (PI * norm);

    let (ep, em, zp, zm) = (k.eta_plus, k.eta_minus, k.zeta_plus, k.zeta_minus);
    let qe2 = ep * ep - em * em;
    let qe2c = ep.conj() * ep.conj() - em.conj() * em.conj();
    let qz2 = zp * zp - zm * zm;
    let qz2c = zp.conj() * zp.conj() - zm.conj() * zm.conj();
    let cross1 = em * zm.conj() + ep * zp.conj();
    let cross2 = em.conj() * zm + ep.conj() * zp;
    let w = ep * zp - em * zm;
    let bz = real(1.0 - 2.0 * (zp.norm_sqr() + zm.norm_sqr()));
    let be = real(1.0 - 2.0 * (ep.norm_sqr() + em.norm_sqr()));
    let z2 = k.z * k.z;
    let g = 4.0 * (zm * em - zp * ep).norm_sqr();
    let jac_arg = (z2 - g) / (z2 + g);
    let (n_i, m_i) = (n as i64, m as i64);

    let fact = |v: i64| if v < 0 { None } else { Some(factorial(v as usize)) };
    let mut acc = C64::new(0.0, 0.0);
    for l1 in 0..=n {
        for n1 in 0..=l1 {
            for l2 in 0..=n {
                for m1 in 0..=l2 {
                    let r = n1.min(m1);
                    let k1_max = m_i + l2 as i64 - n_i;
                    let k2_max = m_i + l1 as i64 - n_i;
                    if k1_max < 0 || k2_max < 0 {
                        continue;
                    }
                    for k1 in 0..=k1_max as usize {
                        for k2 in 0..=k2_max as usize {
                            let (l1i, n1i, l2i, m1i, k1i, k2i, ri) =
                                (l1 as i64, n1 as i64, l2 as i64, m1 as i64, k1 as i64, k2 as i64, r as i64);
                            let Some(num) = fact(m_i - n_i + m1i + l2i - k1i - ri) else { continue };
                            let (Some(d1), Some(d2)) = (fact(m_i - n_i + l2i - k1i), fact(m_i - n_i + l1i - k2i))
                            else {
                                continue;
                            };
                            let root_den = (factorial(n1) * factorial(m1) * d1 * d2).sqrt();
                            let den = factorial(k1)
                                * factorial(k2)
                                * factorial(l1 - n1)
                                * factorial(l2 - m1)
                                * factorial(n - l1)
                                * factorial(n - l2);
                            let e2 = 2 * n_i - 2 * ri + m1i + n1i - l1i - l2i;
                            let mut term = real((-2.0f64).powi(e2 as i32) * factorial(r) * num / (root_den * den));
                            term *= scaled_hermite(l1 - n1, k.x_arg, qe2)
                                * scaled_hermite(l2 - m1, k.x_arg.conj(), qe2c)
                                * scaled_hermite(k1, k.y_arg, qz2)
                                * scaled_hermite(k2, k.y_arg.conj(), qz2c);
                            term *= cross1.powu((n - l1) as u32) * cross2.powu((n - l2) as u32);
                            term *= (w.conj() / k.z).powu((m1 - r) as u32) * (w / k.z).powu((n1 - r) as u32);
                            let pz = 2 * m_i - 2 * n_i + l1i + l2i - k1i - k2i;
                            term *= bz.sqrt().powi(pz as i32) * be.sqrt().powu((n1 + m1) as u32);
                            term *= (1.0 - g / z2).powu(r as u32);
                            let jc = (m1i - n1i).abs() as f64;
                            let jd = (n1i + n_i + k1i - m_i - l2i).abs() as f64;
                            term *= jacobi(r, jc, jd, jac_arg);
                            acc += term;
                        }
                    }
                }
            }
        }
    }
    pre * acc
}

/// Kernel quantities of the coherent-input quasiprobabilities at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentQuasiKernel {
    pub s: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: C64,
    pub b2: C64,
    /// Half-phases of `b1`, `b2`.
    pub delta1: f64,
    pub delta2: f64,
    pub d: C64,
    pub chi: f64,
    pub cbar: C64,
    pub gamma: f64,
    pub e1: C64,
    pub e2: C64,
    pub f_plus: f64,
    pub f_minus: f64,
    pub r_plus: f64,
    pub r_minus: f64,
    pub s_plus: f64,
    pub s_minus: f64,
    pub t_cross: f64,
    pub x_plus: C64,
    pub x_minus: C64,
    pub alpha_bar_1: C64,
    pub alpha_bar_2: C64,
    /// Printed two-mode P-existence condition `|A_j| > |B_j|`.
    pub p_flag_joint: bool,
    /// Printed single-mode P-existence condition `|L1|² + |N1|² > |B1|`.
    pub p_flag_single: bool,
}

impl CoherentQuasiKernel {
    pub fn new(c: &EvolutionCoefficients, state: &InputState, s: f64, point: [C64; 2]) -> Result<Self> {
        if !matches!(state, InputState::Coherent { .. }) {
            return Err(Error::UnsupportedState(format!(
                "coherent kernel needs a coherent input, got {}",
                state.family()
            )));
        }
        let means = output_moments(c, state).mean;
        let a1 = 0.5 * (1.0 - s + 2.0 * c.l1.norm_sqr() + 2.0 * c.n1.norm_sqr());
        let a2 = 0.5 * (1.0 - s + 2.0 * c.l2.norm_sqr() + 2.0 * c.n2.norm_sqr());
        let b1 = c.n1.conj() * c.m1.conj() + c.l1.conj() * c.k1.conj();
        let b2 = c.n2.conj() * c.m2.conj() + c.l2.conj() * c.k2.conj();
        let (delta1, delta2) = (0.5 * b1.arg(), 0.5 * b2.arg());
        let d = c.k1.conj() * c.n2.conj() + c.m1.conj() * c.l2.conj();
        let cbar = c.l2.conj() * c.n1 + c.n2.conj() * c.l1;
        let (chi, gamma) = (d.arg(), cbar.arg());
        let e1 = (means[0] - point[0]) * C64::from_polar(1.0, delta1);
        let e2 = (means[1] - point[1]) * C64::from_polar(1.0, delta2);
        let (sa, sb) = ((delta1 + delta2 - chi).sin(), (delta1 - delta2 + gamma).sin());
        let (ca, cb) = ((delta1 + delta2 - chi).cos(), (delta1 - delta2 + gamma).cos());
        let (dn, cn) = (d.norm(), cbar.norm());
        let f_plus = dn * sa + cn * sb;
        let f_minus = dn * sa - cn * sb;
        let r_plus = dn * ca + cn * cb;
        let r_minus = dn * ca - cn * cb;
        let lo = a1 - b1.norm();
        let hi = a1 + b1.norm();
        let s_plus = a2 + b2.norm() - f_plus * f_plus / lo - r_plus * r_plus / hi;
        let s_minus = a2 - b2.norm() - r_minus * r_minus / lo - f_minus * f_minus / hi;
        let t_cross = r_minus * f_plus / lo - r_plus * f_minus / hi;
        let i = C64::new(0.0, 1.0);
        let x_plus = i * (e2 + e2.conj()) + f_plus * (e1.conj() - e1) / lo - i * r_plus * (e1.conj() + e1) / hi;
        let x_minus = (e2.conj() - e2) + r_minus * (e1.conj() - e1) / lo + i * f_minus * (e1.conj() + e1) / hi;
        Ok(Self {
            s,
            a1,
            a2,
            b1,
            b2,
            delta1,
            delta2,
            d,
            chi,
            cbar,
            gamma,
            e1,
            e2,
            f_plus,
            f_minus,
            r_plus,
            r_minus,
            s_plus,
            s_minus,
            t_cross,
            x_plus,
            x_minus,
            alpha_bar_1: means[0],
            alpha_bar_2: means[1],
            p_flag_joint: a1.abs() > b1.norm() && a2.abs() > b2.norm(),
            p_flag_single: c.l1.norm_sqr() + c.n1.norm_sqr() > b1.norm(),
        })
    }
}

/// Published two-mode coherent quasiprobability, literally.
pub fn printed_coherent_joint(c: &EvolutionCoefficients, k: &CoherentQuasiKernel) -> C64 {
    let ln = c.l1.norm_sqr() + c.n1.norm_sqr();
    let b = k.b1.norm();
    let det = k.s_plus * k.s_minus - k.t_cross * k.t_cross;
    let pre = c_sqrt_inv((ln - b * b) * det) / (PI * PI);
    let e1 =
        (k.s_minus * k.x_plus * k.x_plus + k.s_plus * k.x_minus * k.x_minus + 2.0 * k.x_minus * k.x_plus * k.t_cross)
            / det;
    let e2 = (0.5 * b * (k.e1 * k.e1 + k.e1.conj() * k.e1.conj()) - ln * k.e1.norm_sqr()) / (ln - b * b);
    pre * (e1 + e2).exp()
}

/// Published single-mode coherent quasiprobability, literally.
pub fn printed_coherent_single(c: &EvolutionCoefficients, k: &CoherentQuasiKernel, alpha: C64) -> C64 {
    let a = 0.5 * (1.0 - k.s) + c.l1.norm_sqr() + c.n1.norm_sqr();
    let b = k.b1.norm();
    let den = a * a - b * b;
    let pre = c_sqrt_inv(real(den)) / PI;
    let e1 = k.alpha_bar_1 - alpha;
    let first = -a * e1.norm_sqr() / den;
    let second = -0.5 * b * (k.e1 * k.e1 + k.e1.conj() * k.e1.conj()) / den;
    pre * (second + first).exp()
}

fn c_sqrt_inv(v: impl Into<C64>) -> C64 {
    1.0 / v.into().sqrt()
}

/// Kernel quantities of the thermal-input quasiprobabilities at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalKernels {
    pub s: f64,
    pub abar1: f64,
    pub abar2: f64,
    pub c1: C64,
    pub c2: C64,
    pub dcal: C64,
    pub l1: C64,
    pub l2: C64,
    pub u: C64,
    pub jq: f64,
    /// Printed two-mode P-existence condition `|Ā_j| > |C_j|`.
    pub p_flag_joint: bool,
    /// Printed single-mode condition `(J − s/2)² > |U|²`.
    pub p_flag_single: bool,
}

impl ThermalKernels {
    pub fn new(c: &EvolutionCoefficients, state: &InputState, s: f64, alpha1: C64) -> Result<Self> {
        let InputState::Thermal { nbar1, nbar2 } = *state else {
            return Err(Error::UnsupportedState(format!(
                "thermal kernels need a thermal input, got {}",
                state.family()
            )));
        };
        let (h1, h2) = (nbar1 + 0.5, nbar2 + 0.5);
        let abar1 = h1 * (c.l1.norm_sqr() + c.k1.norm_sqr()) + h2 * (c.m1.norm_sqr() + c.n1.norm_sqr()) - 0.5 * s;
        let abar2 = h1 * (c.m2.norm_sqr() + c.n2.norm_sqr()) + h2 * (c.k2.norm_sqr() + c.l2.norm_sqr()) - 0.5 * s;
        let c1 = 2.0 * (h1 * c.l1.conj() * c.k1.conj() + h2 * c.m1.conj() * c.n1.conj());
        let l1 = (nbar1 + nbar2 + 1.0) * (c.l1.conj() * c.m2.conj() + c.k1.conj() * c.n2.conj());
        let l2 = h1 * (c.l1.conj() * c.n2.conj() + c.k1.conj() * c.m2.conj())
            + h2 * (c.m1.conj() * c.k2 + c.n1.conj() * c.l2);
        let g1 = abar1 * abar1 - c1.norm_sqr();
        let c2 = (c1 * l1.conj() * l1.conj() + c1.conj() * l2 * l2 - 2.0 * abar1 * l1.conj() * l2) / g1
            + 2.0 * (h2 * c.l2 * c.k2 + h1 * c.m2 * c.n2);
        let dcal = (abar1 * (alpha1 * l1 + alpha1.conj() * l2.conj())
            - alpha1 * l2.conj() * c1
            - alpha1.conj() * l1 * c1.conj())
            / g1;
        let u = c.l1.conj() * c.k1.conj() * (2.0 * nbar1 + 1.0) + c.m1.conj() * c.n1.conj() * (2.0 * nbar2 + 1.0);
        let jq = (c.l1.norm_sqr() + c.k1.norm_sqr()) * nbar1
            + (c.m1.norm_sqr() + c.n1.norm_sqr()) * nbar2
            + 0.5
            + c.l1.norm_sqr()
            + c.n1.norm_sqr();
        Ok(Self {
            s,
            abar1,
            abar2,
            c1,
            c2,
            dcal,
            l1,
            l2,
            u,
            jq,
            p_flag_joint: abar1.abs() > c1.norm() && abar2.abs() > c2.norm(),
            p_flag_single: (jq - 0.5 * s).powi(2) > u.norm_sqr(),
        })
    }
}

/// Published two-mode thermal quasiprobability, literally.
pub fn printed_thermal_joint(k: &ThermalKernels, alpha: [C64; 2]) -> C64 {
    let g1 = k.abar1 * k.abar1 - k.c1.norm_sqr();
    let g2 = real(k.abar2 * k.abar2) - k.c2.norm_sqr();
    let pre = c_sqrt_inv(g1 * g2) / (PI * PI);
    let [a1, a2] = alpha;
    let dd = k.dcal - a2;
    let first = (k.c1 * a1 * a1 + k.c1.conj() * a2 * a2) / (2.0 * g1) - dd.norm_sqr() / g2;
    let second = (k.c2.conj() * dd * dd + k.c2 * (k.dcal.conj() - a1.conj()).powu(2)) / (2.0 * g2);
    pre * (first + second).exp()
}

/// Published single-mode thermal quasiprobability, literally.
pub fn printed_thermal_single(k: &ThermalKernels, alpha: C64) -> C64 {
    let a = k.jq - 0.5 * k.s;
    let den = a * a - k.u.norm_sqr();
    let num = -alpha.norm_sqr() * a - 0.5 * (k.u * alpha.conj() * alpha.conj() + k.u.conj() * alpha * alpha);
    c_sqrt_inv(real(den)) / PI * (num / den).exp()
}

/// Published single-mode thermal characteristic function, literally.
pub fn printed_thermal_char_single(k: &ThermalKernels, zeta: C64) -> C64 {
    (-zeta.norm_sqr() * (k.jq - 0.5 * k.s) + zeta.conj() * zeta.conj() * k.u / 2.0 + zeta * zeta * k.u.conj() / 2.0)
        .exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_hermite_matches_direct() {
        let x = C64::new(0.3, -0.7);
        let q = C64::new(1.1, 0.4);
        for k in 0..6 {
            let direct = crate::quasi::polynomials::hermite(k, x / q) * q.powu(k as u32);
            assert!((scaled_hermite(k, x, q * q) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn printed_forms_reduce_at_identity() {
        let c = EvolutionCoefficients::identity(0.0);
        let th = InputState::thermal(0.7, 0.2);
        let alpha = C64::new(0.4, -0.3);
        let k = ThermalKernels::new(&c, &th, 0.0, alpha).unwrap();
        let exact = (-alpha.norm_sqr() / 1.2).exp() / (PI * 1.2);
        assert!((printed_thermal_single(&k, alpha).re - exact).abs() < 1e-14);
        let coh = InputState::coherent(C64::new(0.5, 0.1), C64::new(0.0, 0.0));
        let k = CoherentQuasiKernel::new(&c, &coh, 0.0, [alpha, C64::new(0.0, 0.0)]).unwrap();
        let exact = 2.0 / PI * (-2.0 * (alpha - C64::new(0.5, 0.1)).norm_sqr()).exp();
        assert!((printed_coherent_single(&c, &k, alpha).re - exact).abs() < 1e-14);
    }
}
