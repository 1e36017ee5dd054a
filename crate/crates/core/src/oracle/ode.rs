//! Adaptive Dormand–Prince 5(4) integration and the numerically integrated
//! Heisenberg coefficients.

use num_complex::Complex64 as C64;

use crate::coupler::{CouplerParams, EvolutionCoefficients};
use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Step-control settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-13, atol: 1e-15, max_steps: 2_000_000 }
    }
}

/// Integrates `y' = f(t, y)` from `0` to `t_end` (either sign).
pub fn integrate<F>(f: F, y0: &[C64], t_end: f64, opts: OdeOptions) -> Result<Vec<C64>>
where
    F: Fn(f64, &[C64], &mut [C64]),
{
    let dim = y0.len();
    let mut y = y0.to_vec();
    if t_end == 0.0 {
        return Ok(y);
    }
    let dir = t_end.signum();
    let span = t_end.abs();
    let mut t = 0.0;
    let mut h = (span * 1e-3).min(1e-2);
    let mut k = vec![vec![C64::new(0.0, 0.0); dim]; 7];
    let mut stage = vec![C64::new(0.0, 0.0); dim];
    let mut y_new = vec![C64::new(0.0, 0.0); dim];
    f(0.0, &y, &mut k[0]);

    for _ in 0..opts.max_steps {
        if t >= span {
            return Ok(y);
        }
        if span - t < h {
            h = span - t;
        }
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    if A[s][j] != 0.0 {
                        acc += kj[i] * (h * dir * A[s][j]);
                    }
                }
                stage[i] = acc;
            }
            f(dir * (t + C[s] * h), &stage, &mut k[s]);
            if s == 6 {
                y_new.copy_from_slice(&stage);
            }
        }
        let mut err_sq = 0.0;
        for i in 0..dim {
            let mut e = C64::new(0.0, 0.0);
            for s in 0..7 {
                e += k[s][i] * (B5[s] - B4[s]);
            }
            let e = e.norm() * h;
            let scale = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
            err_sq += (e / scale).powi(2);
        }
        let err = (err_sq / dim as f64).sqrt();
        if err <= 1.0 {
            t += h;
            y.copy_from_slice(&y_new);
            // First-same-as-last: the seventh stage is the derivative at the new point.
            let last = k[6].clone();
            k[0] = last;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < 1e-14 * span.max(1.0) {
            return Err(Error::IntegratorFailure(format!("step size underflow at t = {}", dir * t)));
        }
    }
    Err(Error::IntegratorFailure(format!("exceeded {} steps", opts.max_steps)))
}

/// Coefficients obtained by integrating the 4×4 Heisenberg system from the identity.
pub fn ode_coefficients(params: &CouplerParams, t: f64) -> Result<EvolutionCoefficients> {
    ode_coefficients_with(params, t, OdeOptions::default())
}

pub fn ode_coefficients_with(params: &CouplerParams, t: f64, opts: OdeOptions) -> Result<EvolutionCoefficients> {
    params.validate()?;
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("time must be finite, got {t}")));
    }
    let m = params.generator();
    let mut y0 = vec![C64::new(0.0, 0.0); 16];
    for i in 0..4 {
        y0[i * 4 + i] = C64::new(1.0, 0.0);
    }
    // Row-major E with E' = M E.
    let rhs = |_t: f64, y: &[C64], dy: &mut [C64]| {
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for (l, mil) in m[i].iter().enumerate() {
                    acc += mil * y[l * 4 + j];
                }
                dy[i * 4 + j] = acc;
            }
        }
    };
    let e = integrate(rhs, &y0, t, opts)?;
    let at = |i: usize, j: usize| e[i * 4 + j];
    Ok(EvolutionCoefficients {
        t,
        k1: at(0, 0),
        l1: at(0, 1),
        m1: at(0, 2),
        n1: at(0, 3),
        k2: at(2, 2),
        l2: at(2, 3),
        m2: at(2, 0),
        n2: at(2, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_and_rotation() {
        let f = |_t: f64, y: &[C64], dy: &mut [C64]| {
            dy[0] = -y[0];
            dy[1] = C64::new(0.0, 1.0) * y[1];
        };
        let y = integrate(f, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)], 2.0, OdeOptions::default()).unwrap();
        assert!((y[0].re - (-2.0f64).exp()).abs() < 1e-12);
        assert!((y[1] - C64::new(2.0f64.cos(), 2.0f64.sin())).norm() < 1e-12);
        let back = integrate(f, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)], -1.0, OdeOptions::default()).unwrap();
        assert!((back[0].re - 1.0f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn zero_time_gives_identity() {
        let c = ode_coefficients(&CouplerParams::preset_a(), 0.0).unwrap();
        assert_eq!(c, EvolutionCoefficients::identity(0.0));
    }
}
