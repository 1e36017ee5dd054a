//! Laguerre, Hermite and Jacobi polynomials by recurrence or finite sum.

use num_complex::Complex64 as C64;

use crate::numeric::binomial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolynomialKind {
    /// Generalized Laguerre `L_n^{(a)}`; `a = 0` gives the ordinary one.
    Laguerre { alpha: f64 },
    /// Physicists' Hermite `H_n`.
    Hermite,
    /// Jacobi `P_n^{(c, d)}`.
    Jacobi { c: f64, d: f64 },
}

/// Evaluates a polynomial of the given family and degree at a complex argument.
pub fn special_polynomial(kind: PolynomialKind, degree: usize, x: C64) -> C64 {
    match kind {
        PolynomialKind::Laguerre { alpha } => laguerre_complex(degree, alpha, x),
        PolynomialKind::Hermite => hermite(degree, x),
        PolynomialKind::Jacobi { c, d } => jacobi(degree, c, d, x),
    }
}

/// `L_n(x)`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    generalized_laguerre(n, 0.0, x)
}

/// `L_n^{(a)}(x)` for real argument.
pub fn generalized_laguerre(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_0^{(a)}(x) ..= L_n^{(a)}(x)`.
pub fn generalized_laguerre_all(n: usize, a: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(1.0 + a - x);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * out[k] - (kf + a) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

fn laguerre_complex(n: usize, a: f64, x: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = -x + (1.0 + a);
    for k in 1..n {
        let k = k as f64;
        let next = (cur * (-x + (2.0 * k + 1.0 + a)) - prev * (k + a)) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n(z)` with `H_{k+1} = 2z H_k − 2k H_{k−1}`.
pub fn hermite(n: usize, z: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = z * 2.0;
    for k in 1..n {
        let next = z * cur * 2.0 - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_r^{(c,d)}(x) = Σ_k (−1)^{r−k} C(r+d, r−k) C(r+k+c+d, k) ((x+1)/2)^k`.
pub fn jacobi(r: usize, c: f64, d: f64, x: C64) -> C64 {
    let y = (x + 1.0) * 0.5;
    let mut acc = C64::new(0.0, 0.0);
    let mut yk = C64::new(1.0, 0.0);
    for k in 0..=r {
        let sign = if (r - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += yk * (sign * binomial(r as f64 + d, r - k) * binomial((r + k) as f64 + c + d, k));
        yk *= y;
    }
    acc
}
