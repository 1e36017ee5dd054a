//! Closed-form quasiprobabilities for Fock inputs.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial};
use crate::quasi::gaussian::DEFINITENESS_TOL;
use crate::quasi::polynomials::laguerre;
use crate::state::Mode;

/// Joint Wigner function of a Fock input `|n, m⟩`, obtained by evaluating the
/// input Wigner function at the pre-image `Λ(α1, α2)` of the output point.
pub fn fock_joint_wigner(c: &EvolutionCoefficients, n: usize, m: usize, alpha: [C64; 2]) -> f64 {
    let [a1, a2] = alpha;
    let lam1 = a1 * c.k1.conj() - a1.conj() * c.l1 + a2 * c.m2.conj() - a2.conj() * c.n2;
    let lam2 = a1 * c.m1.conj() - a1.conj() * c.n1 + a2 * c.k2.conj() - a2.conj() * c.l2;
    let (x1, x2) = (lam1.norm_sqr(), lam2.norm_sqr());
    let sign = if (n + m).is_multiple_of(2) { 1.0 } else { -1.0 };
    4.0 / (PI * PI) * sign * laguerre(n, 4.0 * x1) * laguerre(m, 4.0 * x2) * (-2.0 * (x1 + x2)).exp()
}

/// Dense bivariate polynomial `Σ c[a][b] x^a y^b` with `a, b < side`.
#[derive(Debug, Clone, PartialEq)]
struct Poly2 {
    side: usize,
    c: Vec<C64>,
}

impl Poly2 {
    fn zero(side: usize) -> Self {
        Self { side, c: vec![C64::new(0.0, 0.0); side * side] }
    }

    fn constant(side: usize, v: C64) -> Self {
        let mut p = Self::zero(side);
        p.c[0] = v;
        p
    }

    fn at(&self, a: usize, b: usize) -> C64 {
        self.c[a * self.side + b]
    }

    fn add_to(&mut self, a: usize, b: usize, v: C64) {
        assert!(a < self.side && b < self.side, "polynomial degree exceeds storage");
        self.c[a * self.side + b] += v;
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.c.iter().enumerate().filter(|(_, v)| v.norm() != 0.0).map(move |(i, v)| (i / self.side, i % self.side, *v))
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.side);
        for (a, b, v) in self.terms() {
            for (c, d, w) in other.terms() {
                out.add_to(a + c, b + d, v * w);
            }
        }
        out
    }

    fn add_scaled(&mut self, other: &Self, k: C64) {
        for (a, b, v) in other.terms() {
            self.add_to(a, b, v * k);
        }
    }

    fn d_first(&self) -> Self {
        let mut out = Self::zero(self.side);
        for (a, b, v) in self.terms() {
            if a > 0 {
                out.add_to(a - 1, b, v * a as f64);
            }
        }
        out
    }

    fn d_second(&self) -> Self {
        let mut out = Self::zero(self.side);
        for (a, b, v) in self.terms() {
            if b > 0 {
                out.add_to(a, b - 1, v * b as f64);
            }
        }
        out
    }

    fn eval(&self, x: f64, y: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut xa = 1.0;
        for a in 0..self.side {
            let mut row = C64::new(0.0, 0.0);
            let mut yb = 1.0;
            for b in 0..self.side {
                row += self.at(a, b) * yb;
                yb *= y;
            }
            acc += row * xa;
            xa *= x;
        }
        acc
    }
}

/// `L_n(Q)` for a bivariate polynomial `Q`.
fn laguerre_of(n: usize, q: &Poly2) -> Poly2 {
    let side = q.side;
    let mut out = Poly2::zero(side);
    let mut power = Poly2::constant(side, C64::new(1.0, 0.0));
    for k in 0..=n {
        let coef = if k % 2 == 0 { 1.0 } else { -1.0 } * binomial(n as f64, k) / factorial(k);
        out.add_scaled(&power, C64::new(coef, 0.0));
        if k < n {
            power = power.mul(q);
        }
    }
    out
}

/// `|u p + v q|²` as a polynomial in `(u, v)`.
fn modulus_squared(side: usize, p: C64, q: C64) -> Poly2 {
    let mut out = Poly2::zero(side);
    out.add_to(2, 0, C64::new(p.norm_sqr(), 0.0));
    out.add_to(0, 2, C64::new(q.norm_sqr(), 0.0));
    out.add_to(1, 1, C64::new(2.0 * (p * q.conj()).re, 0.0));
    out
}

/// Exact single-mode s-parametrized quasiprobability of a Fock input.
///
/// The characteristic function is a polynomial in `ζ = u + iv` times a
/// Gaussian `exp(−½ wᵀ A w)`, so its Fourier transform is the same polynomial
/// acting as `(−i∂_k)` on `2π/√det A · exp(−½ kᵀ A⁻¹ k)` with `k = (2y, −2x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSingleQuasi {
    pub s: f64,
    /// Envelope matrix `A` (row-major 2×2).
    pub envelope: [[f64; 2]; 2],
    inverse: [[f64; 2]; 2],
    prefactor: f64,
    /// `Σ c_ab (−i)^{a+b} ∂1^a ∂2^b exp(−½kᵀBk) / exp(−½kᵀBk)` as a polynomial in `k`.
    profile: Poly2,
}

impl FockSingleQuasi {
    pub fn new(c: &EvolutionCoefficients, n: usize, m: usize, mode: Mode, s: f64) -> Result<Self> {
        let (c, n, m) = match mode {
            Mode::One => (*c, n, m),
            Mode::Two => (c.swapped(), m, n),
        };
        let tau = c.k1.norm_sqr() + c.l1.norm_sqr() + c.m1.norm_sqr() + c.n1.norm_sqr();
        let psi = c.k1 * c.l1 + c.m1 * c.n1;
        let (a, b) = (psi.re, psi.im);
        let envelope = [[tau - s - 2.0 * a, -2.0 * b], [-2.0 * b, tau - s + 2.0 * a]];
        let lowest = tau - s - 2.0 * psi.norm();
        if lowest <= 2.0 * DEFINITENESS_TOL {
            return Err(Error::PNotRepresentable { margin: 0.5 * lowest });
        }
        let det = envelope[0][0] * envelope[1][1] - envelope[0][1] * envelope[1][0];
        let inverse = [[envelope[1][1] / det, -envelope[0][1] / det], [-envelope[1][0] / det, envelope[0][0] / det]];

        let degree = 2 * (n + m);
        let side = degree.max(2) + 1;
        let nu1 = modulus_squared(side, c.k1.conj() - c.l1, C64::new(0.0, 1.0) * (c.k1.conj() + c.l1));
        let nu2 = modulus_squared(side, c.m1.conj() - c.n1, C64::new(0.0, 1.0) * (c.m1.conj() + c.n1));
        let poly = laguerre_of(n, &nu1).mul(&laguerre_of(m, &nu2));

        // Linear forms (Bk)_1 and (Bk)_2.
        let mut bk1 = Poly2::zero(side);
        bk1.add_to(1, 0, C64::new(inverse[0][0], 0.0));
        bk1.add_to(0, 1, C64::new(inverse[0][1], 0.0));
        let mut bk2 = Poly2::zero(side);
        bk2.add_to(1, 0, C64::new(inverse[1][0], 0.0));
        bk2.add_to(0, 1, C64::new(inverse[1][1], 0.0));

        // h[a][b] with h_{a+1,b} = ∂1 h − (Bk)_1 h and h_{a,b+1} = ∂2 h − (Bk)_2 h.
        let mut h: Vec<Vec<Poly2>> = Vec::with_capacity(side);
        for a in 0..side {
            let mut row = Vec::with_capacity(side);
            let first = if a == 0 {
                Poly2::constant(side, C64::new(1.0, 0.0))
            } else {
                let prev: &Poly2 = &h[a - 1][0];
                let mut next = prev.d_first();
                next.add_scaled(&bk1.mul(prev), C64::new(-1.0, 0.0));
                next
            };
            row.push(first);
            for bb in 1..side.saturating_sub(a) {
                let prev: &Poly2 = &row[bb - 1];
                let mut next = prev.d_second();
                next.add_scaled(&bk2.mul(prev), C64::new(-1.0, 0.0));
                row.push(next);
            }
            h.push(row);
        }

        let mut profile = Poly2::zero(side);
        let minus_i = C64::new(0.0, -1.0);
        for (a, b, v) in poly.terms() {
            profile.add_scaled(&h[a][b], v * minus_i.powu((a + b) as u32));
        }

        Ok(Self { s, envelope, inverse, prefactor: 2.0 / (PI * det.sqrt()), profile })
    }

    pub fn value(&self, alpha: C64) -> f64 {
        let k = [2.0 * alpha.im, -2.0 * alpha.re];
        let b = &self.inverse;
        let q = k[0] * (b[0][0] * k[0] + b[0][1] * k[1]) + k[1] * (b[1][0] * k[0] + b[1][1] * k[1]);
        self.prefactor * (-0.5 * q).exp() * self.profile.eval(k[0], k[1]).re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_photon_at_origin() {
        let c = EvolutionCoefficients::identity(0.0);
        let w = FockSingleQuasi::new(&c, 1, 0, Mode::One, 0.0).unwrap();
        assert!((w.value(C64::new(0.0, 0.0)) + 2.0 / PI).abs() < 1e-14);
        assert!((fock_joint_wigner(&c, 1, 0, [C64::new(0.0, 0.0); 2]) + 4.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn p_function_of_fock_state_is_refused() {
        let c = EvolutionCoefficients::identity(0.0);
        assert!(matches!(FockSingleQuasi::new(&c, 1, 0, Mode::One, 1.0), Err(Error::PNotRepresentable { .. })));
    }

    #[test]
    fn husimi_of_number_state() {
        let c = EvolutionCoefficients::identity(0.0);
        let q = FockSingleQuasi::new(&c, 3, 1, Mode::One, -1.0).unwrap();
        let a = C64::new(0.7, -1.1);
        let x = a.norm_sqr();
        let want = x.powi(3) / 6.0 * (-x).exp() / PI;
        assert!((q.value(a) - want).abs() < 1e-14);
        let q2 = FockSingleQuasi::new(&c, 3, 1, Mode::Two, -1.0).unwrap();
        assert!((q2.value(a) - x * (-x).exp() / PI).abs() < 1e-14);
    }
}
