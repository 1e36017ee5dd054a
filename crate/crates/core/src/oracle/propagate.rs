//! Chebyshev propagation `ψ ↦ exp(−iHt) ψ`.

use num_complex::Complex64 as C64;

use super::hamiltonian::EffectiveHamiltonian;

/// Largest `r·dt` handled in a single Chebyshev expansion.
const MAX_SPAN: f64 = 40.0;

/// Bessel functions `J_0(x) ..= J_kmax(x)` for `x >= 0` by Miller's backward recurrence.
pub fn bessel_j_all(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let start = {
        let m = (kmax as f64).max(x);
        let n = (m + 30.0 + (40.0 * m).sqrt()).ceil() as usize;
        n + n % 2
    };
    let mut j_next = 0.0;
    let mut j_cur = 1e-300;
    let mut norm = 0.0;
    let mut vals = vec![0.0; start + 1];
    vals[start] = j_cur;
    for k in (1..=start).rev() {
        let j_prev = 2.0 * k as f64 / x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        vals[k - 1] = j_cur;
        if j_cur.abs() > 1e250 {
            for v in vals[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
            j_cur *= 1e-250;
            j_next *= 1e-250;
        }
    }
    for (k, v) in vals.iter().enumerate() {
        if k == 0 {
            norm += v;
        } else if k % 2 == 0 {
            norm += 2.0 * v;
        }
    }
    for (o, v) in out.iter_mut().zip(vals.iter()) {
        *o = v / norm;
    }
    out
}

/// Applies `exp(−iHt)` in place.
pub fn propagate(h: &EffectiveHamiltonian, psi: &mut [C64], t: f64) {
    if t == 0.0 {
        return;
    }
    let (lo, hi) = h.spectral_bounds();
    let center = 0.5 * (hi + lo);
    let radius = (0.5 * (hi - lo)).max(1e-300);
    let pieces = ((radius * t.abs()) / MAX_SPAN).ceil().max(1.0) as usize;
    let dt = t / pieces as f64;
    for _ in 0..pieces {
        chebyshev_step(h, psi, dt, center, radius);
    }
}

fn chebyshev_step(h: &EffectiveHamiltonian, psi: &mut [C64], dt: f64, center: f64, radius: f64) {
    let x = radius * dt.abs();
    let kmax = (x + 20.0 + 4.0 * x.sqrt()).ceil() as usize + 10;
    let bessel = bessel_j_all(kmax, x);
    let last = bessel.iter().enumerate().rposition(|(k, j)| k as f64 <= x || j.abs() > 1e-18).unwrap_or(0);
    // (−i sgn t)^k
    let unit = C64::new(0.0, -dt.signum());
    let dim = psi.len();
    let mut prev = psi.to_vec();
    let mut cur = vec![C64::new(0.0, 0.0); dim];
    let mut next = vec![C64::new(0.0, 0.0); dim];
    let mut acc: Vec<C64> = prev.iter().map(|v| v * bessel[0]).collect();
    let scaled_apply = |src: &[C64], out: &mut [C64]| {
        h.apply(src, out);
        for (o, s) in out.iter_mut().zip(src) {
            *o = (*o - s * center) / radius;
        }
    };
    if last >= 1 {
        scaled_apply(&prev, &mut cur);
        let coef = unit * (2.0 * bessel[1]);
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c * coef;
        }
        let mut phase = unit;
        for b in bessel.iter().take(last + 1).skip(2) {
            scaled_apply(&cur, &mut next);
            for (n, p) in next.iter_mut().zip(&prev) {
                *n = *n * 2.0 - p;
            }
            phase *= unit;
            let coef = phase * (2.0 * b);
            for (a, n) in acc.iter_mut().zip(&next) {
                *a += n * coef;
            }
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
        }
    }
    let global = C64::from_polar(1.0, -center * dt);
    for (p, a) in psi.iter_mut().zip(acc) {
        *p = a * global;
    }
}
