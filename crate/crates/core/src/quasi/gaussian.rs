//! Covariance representation of coherent and thermal outputs.
//!
//! Real coordinates are ordered `(x1, y1, x2, y2)` with `α_j = x_j + i y_j`.
//! The s-ordered quasiprobability of a Gaussian state is a normal density with
//! covariance `Σ_N + (1 − s)/4 · I`, where `Σ_N` holds the normally ordered
//! quadrature covariances.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::moments::output_moments;
use crate::state::{InputState, Selection};

/// Eigenvalue slack used when testing positive (semi)definiteness.
pub const DEFINITENESS_TOL: f64 = 1e-12;

pub(crate) fn selected_modes(selection: Selection) -> Vec<usize> {
    match selection {
        Selection::Single(m) => vec![m.index()],
        Selection::Joint => vec![0, 1],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianQuasi {
    pub s: f64,
    pub mean: DVector<f64>,
    /// Normally ordered covariance `Σ_N`.
    pub normal_cov: DMatrix<f64>,
    /// `Σ_N + (1 − s)/4 · I`.
    pub cov: DMatrix<f64>,
    inverse: Option<DMatrix<f64>>,
    norm: f64,
}

impl GaussianQuasi {
    pub fn new(c: &EvolutionCoefficients, state: &InputState, selection: Selection, s: f64) -> Result<Self> {
        if !state.is_gaussian() {
            return Err(Error::UnsupportedState(format!("{} input is not Gaussian", state.family())));
        }
        state.validate()?;
        let mo = output_moments(c, state);
        let modes = selected_modes(selection);
        let dim = 2 * modes.len();
        let mut mean = DVector::zeros(dim);
        let mut normal_cov = DMatrix::zeros(dim, dim);
        for (a, &i) in modes.iter().enumerate() {
            mean[2 * a] = mo.mean[i].re;
            mean[2 * a + 1] = mo.mean[i].im;
            for (b, &j) in modes.iter().enumerate() {
                let n = mo.normal[i][j];
                let m = mo.anomalous[i][j];
                normal_cov[(2 * a, 2 * b)] = 0.5 * (m.re + n.re);
                normal_cov[(2 * a + 1, 2 * b + 1)] = 0.5 * (n.re - m.re);
                normal_cov[(2 * a, 2 * b + 1)] = 0.5 * (m.im + n.im);
                normal_cov[(2 * a + 1, 2 * b)] = 0.5 * (m.im - n.im);
            }
        }
        // Symmetrize away rounding in the off-diagonal blocks.
        let normal_cov = (&normal_cov + normal_cov.transpose()) * 0.5;
        let cov = &normal_cov + DMatrix::identity(dim, dim) * (0.25 * (1.0 - s));
        let mut out = Self { s, mean, normal_cov, cov, inverse: None, norm: 0.0 };
        if out.margin() > DEFINITENESS_TOL {
            let chol = out.cov.clone().cholesky().expect("positive definite covariance");
            let det = chol.l().diagonal().iter().map(|d| d * d).product::<f64>();
            out.norm = 1.0 / ((2.0 * PI).powi(modes.len() as i32) * det.sqrt());
            out.inverse = Some(chol.inverse());
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// `2 λ_min(Σ_N + (1 − s)/4 · I)`; positive when the s-ordered density exists.
    pub fn margin(&self) -> f64 {
        2.0 * min_eigenvalue(&self.cov)
    }

    /// Margin of the Glauber P function, `2 λ_min(Σ_N)`.
    pub fn p_margin(&self) -> f64 {
        2.0 * min_eigenvalue(&self.normal_cov)
    }

    /// Principal variances of the s-ordered density, ascending.
    pub fn principal_variances(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.cov.clone()).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Density at `point` (one amplitude per selected mode).
    pub fn density(&self, point: &[C64]) -> Result<f64> {
        let inv = self.inverse.as_ref().ok_or(Error::PNotRepresentable { margin: self.margin() })?;
        let modes = self.dim() / 2;
        if point.len() < modes {
            return Err(Error::InvalidInput(format!("expected {modes} phase-space amplitudes")));
        }
        let mut d = DVector::zeros(self.dim());
        for a in 0..modes {
            d[2 * a] = point[a].re - self.mean[2 * a];
            d[2 * a + 1] = point[a].im - self.mean[2 * a + 1];
        }
        let q = d.dot(&(inv * &d));
        Ok(self.norm * (-0.5 * q).exp())
    }
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 2 {
        let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
        let half_tr = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        return half_tr - disc;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupler::{evolution_coefficients, CouplerParams};
    use crate::state::Mode;

    #[test]
    fn vacuum_wigner_peak() {
        let c = EvolutionCoefficients::identity(0.0);
        let zero = C64::new(0.0, 0.0);
        let g = GaussianQuasi::new(&c, &InputState::coherent(zero, zero), Selection::Single(Mode::One), 0.0).unwrap();
        assert!((g.density(&[zero]).unwrap() - 2.0 / PI).abs() < 1e-15);
        let joint = GaussianQuasi::new(&c, &InputState::coherent(zero, zero), Selection::Joint, 0.0).unwrap();
        assert!((joint.density(&[zero, zero]).unwrap() - 4.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn thermal_single_mode_at_zero_time() {
        let c = EvolutionCoefficients::identity(0.0);
        let g = GaussianQuasi::new(&c, &InputState::thermal(0.7, 0.2), Selection::Single(Mode::One), 0.0).unwrap();
        let a = C64::new(0.4, -0.9);
        let want = 1.0 / (PI * 1.2) * (-a.norm_sqr() / 1.2).exp();
        assert!((g.density(&[a]).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn single_mode_margin_matches_closed_expression() {
        let c = evolution_coefficients(&CouplerParams::preset_a(), 1.7).unwrap();
        let state = InputState::thermal(0.4, 0.9);
        let g = GaussianQuasi::new(&c, &state, Selection::Single(Mode::One), 1.0).unwrap();
        let mo = output_moments(&c, &state);
        let want = mo.normal[0][0].re - mo.anomalous[0][0].norm();
        assert!((g.p_margin() - want).abs() < 1e-13);
        assert!((g.margin() - want).abs() < 1e-13);
    }

    #[test]
    fn fock_is_rejected() {
        let c = EvolutionCoefficients::identity(0.0);
        let r = GaussianQuasi::new(&c, &InputState::fock(1, 0), Selection::Joint, 0.0);
        assert!(matches!(r, Err(Error::UnsupportedState(_))));
    }
}
