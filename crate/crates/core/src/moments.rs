//! First and second moments of the output field.
//!
//! Every input family has `⟨δc_k δc_k⟩ = 0` and `⟨δc_k† δc_k⟩ = n̄_k` for its
//! fluctuation operators, so the linear map fixes all output second moments.

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::state::InputState;

/// Output means and fluctuation moments, indexed by output mode `0, 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputMoments {
    /// `⟨a_i⟩`.
    pub mean: [C64; 2],
    /// `⟨δa_i† δa_j⟩`.
    pub normal: [[C64; 2]; 2],
    /// `⟨δa_i δa_j⟩`.
    pub anomalous: [[C64; 2]; 2],
}

/// `(u, v)` with `a_i = Σ_k u_ik c_k + v_ik c_k†`.
pub fn mixing_blocks(c: &EvolutionCoefficients) -> ([[C64; 2]; 2], [[C64; 2]; 2]) {
    ([[c.k1, c.m1], [c.m2, c.k2]], [[c.l1, c.n1], [c.n2, c.l2]])
}

pub fn output_moments(c: &EvolutionCoefficients, state: &InputState) -> OutputMoments {
    let (u, v) = mixing_blocks(c);
    let alpha = state.amplitudes();
    let nbar = state.occupations();
    let zero = C64::new(0.0, 0.0);
    let mut mean = [zero; 2];
    let mut normal = [[zero; 2]; 2];
    let mut anomalous = [[zero; 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            mean[i] += u[i][k] * alpha[k] + v[i][k] * alpha[k].conj();
        }
        for j in 0..2 {
            for k in 0..2 {
                normal[i][j] += u[i][k].conj() * u[j][k] * nbar[k] + v[i][k].conj() * v[j][k] * (nbar[k] + 1.0);
                anomalous[i][j] += u[i][k] * v[j][k] * (nbar[k] + 1.0) + v[i][k] * u[j][k] * nbar[k];
            }
        }
    }
    OutputMoments { mean, normal, anomalous }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupler::{evolution_coefficients, CouplerParams};

    #[test]
    fn identity_map_reproduces_input_moments() {
        let c = EvolutionCoefficients::identity(0.0);
        let m = output_moments(&c, &InputState::thermal(0.4, 1.5));
        assert_eq!(m.normal[0][0].re, 0.4);
        assert_eq!(m.normal[1][1].re, 1.5);
        assert_eq!(m.anomalous[0][0], C64::new(0.0, 0.0));
    }

    #[test]
    fn normal_moments_are_hermitian() {
        let c = evolution_coefficients(&CouplerParams::preset_a(), 0.9).unwrap();
        let m = output_moments(&c, &InputState::thermal(0.3, 0.8));
        assert!((m.normal[0][1] - m.normal[1][0].conj()).norm() < 1e-14);
        assert!((m.anomalous[0][1] - m.anomalous[1][0]).norm() < 1e-13);
    }
}
