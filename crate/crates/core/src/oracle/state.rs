//! Truncated two-mode Fock-space states and their time evolution.

use num_complex::Complex64 as C64;

use super::hamiltonian::EffectiveHamiltonian;
use super::propagate::propagate;
use crate::coupler::CouplerParams;
use crate::error::{Error, Result};
use crate::state::InputState;

/// Results are refused once the top two levels of either mode hold more than this.
pub const MAX_TAIL_MASS: f64 = 1e-8;
/// Thermal weights are added until the discarded remainder drops below this.
pub const THERMAL_REMAINDER: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Pure,
    /// Weighted mixture of pure states; equivalent to a density matrix.
    Ensemble,
}

/// State on `n1, n2 ≤ cutoff`. Amplitudes are stored row-major, index `n1·(cutoff+1) + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleState {
    pub cutoff: usize,
    pub t: f64,
    pub components: Vec<(f64, Vec<C64>)>,
    /// Probability in the top two levels of either mode.
    pub tail_mass: f64,
    /// Input weight dropped by the truncation of a mixed state.
    pub discarded_weight: f64,
}

impl OracleState {
    pub fn representation(&self) -> Representation {
        if self.components.len() == 1 {
            Representation::Pure
        } else {
            Representation::Ensemble
        }
    }

    pub fn side(&self) -> usize {
        self.cutoff + 1
    }

    pub fn trace(&self) -> f64 {
        self.components.iter().map(|(w, psi)| w * psi.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum()
    }

    pub fn is_reliable(&self) -> bool {
        self.tail_mass <= MAX_TAIL_MASS
    }

    /// Fails with `CutoffExceeded` unless the tail mass is acceptable.
    pub fn ensure_reliable(&self) -> Result<()> {
        if self.is_reliable() {
            Ok(())
        } else {
            Err(Error::CutoffExceeded { cutoff: self.cutoff, tail_mass: self.tail_mass })
        }
    }

    fn refresh_tail(&mut self) {
        let side = self.side();
        let edge = side.saturating_sub(2);
        let mut mass = 0.0;
        for (w, psi) in &self.components {
            for n1 in 0..side {
                for n2 in 0..side {
                    if n1 >= edge || n2 >= edge {
                        mass += w * psi[n1 * side + n2].norm_sqr();
                    }
                }
            }
        }
        self.tail_mass = mass;
    }
}

fn coherent_amplitudes(alpha: C64, side: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(side);
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..side {
        out.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    out
}

fn bose_einstein(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    (nbar / (nbar + 1.0)).powi(n as i32) / (nbar + 1.0)
}

/// Discretizes an input state at `t = 0`.
pub fn initial_state(state: &InputState, cutoff: usize) -> Result<OracleState> {
    state.validate()?;
    if cutoff < 2 {
        return Err(Error::InvalidInput("oracle cutoff must be at least 2".into()));
    }
    let side = cutoff + 1;
    let basis = |n1: usize, n2: usize| {
        let mut v = vec![C64::new(0.0, 0.0); side * side];
        v[n1 * side + n2] = C64::new(1.0, 0.0);
        v
    };
    let (components, discarded_weight) = match *state {
        InputState::Fock { n, m } => {
            if n > cutoff || m > cutoff {
                return Err(Error::CutoffExceeded { cutoff, tail_mass: 1.0 });
            }
            (vec![(1.0, basis(n, m))], 0.0)
        }
        InputState::Coherent { alpha1, alpha2 } => {
            let a = coherent_amplitudes(alpha1, side);
            let b = coherent_amplitudes(alpha2, side);
            let mut v: Vec<C64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|z| *z /= norm);
            (vec![(1.0, v)], 0.0)
        }
        InputState::Thermal { nbar1, nbar2 } => {
            let mut weights: Vec<(f64, usize, usize)> = (0..side)
                .flat_map(|n1| (0..side).map(move |n2| (bose_einstein(nbar1, n1) * bose_einstein(nbar2, n2), n1, n2)))
                .filter(|w| w.0 > 0.0)
                .collect();
            weights.sort_by(|a, b| b.0.total_cmp(&a.0));
            let mut kept = Vec::new();
            let mut total = 0.0;
            for (w, n1, n2) in weights {
                if 1.0 - total < THERMAL_REMAINDER {
                    break;
                }
                total += w;
                kept.push((w, basis(n1, n2)));
            }
            (kept, (1.0 - total).max(0.0))
        }
    };
    let mut s = OracleState { cutoff, t: 0.0, components, tail_mass: 0.0, discarded_weight };
    s.refresh_tail();
    Ok(s)
}

/// Evolves `state` to time `t` under the truncated effective Hamiltonian.
pub fn evolve_state(params: &CouplerParams, state: &InputState, t: f64, cutoff: usize) -> Result<OracleState> {
    evolve_state_times(params, state, &[t], cutoff).map(|mut v| v.remove(0))
}

/// Evolves to each of `times` (ascending), reusing the previous result as the
/// starting point. Fails on the first time whose tail mass is too large.
pub fn evolve_state_times(
    params: &CouplerParams,
    state: &InputState,
    times: &[f64],
    cutoff: usize,
) -> Result<Vec<OracleState>> {
    params.validate()?;
    if times.windows(2).any(|w| w[1] < w[0]) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidInput("oracle times must be finite and ascending".into()));
    }
    let h = EffectiveHamiltonian::new(params, cutoff);
    let mut current = initial_state(state, cutoff)?;
    current.ensure_reliable()?;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let dt = t - current.t;
        for (_, psi) in current.components.iter_mut() {
            propagate(&h, psi, dt);
        }
        current.t = t;
        current.refresh_tail();
        current.ensure_reliable()?;
        out.push(current.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beam_splitter_keeps_vacuum() {
        let p = CouplerParams::resonant(0.0, 0.0, 1.3, 0.0);
        let s = evolve_state(&p, &InputState::fock(0, 0), 2.7, 6).unwrap();
        assert!((s.components[0].1[0].norm() - 1.0).abs() < 1e-13);
        assert_eq!(s.representation(), Representation::Pure);
    }

    #[test]
    fn thermal_ensemble_remainder() {
        let s = initial_state(&InputState::thermal(0.5, 0.5), 40).unwrap();
        assert_eq!(s.representation(), Representation::Ensemble);
        assert!(s.discarded_weight < THERMAL_REMAINDER);
        assert!((s.trace() - 1.0).abs() < THERMAL_REMAINDER);
    }

    #[test]
    fn norm_is_conserved() {
        let s =
            evolve_state(&CouplerParams::preset_a(), &InputState::fock(1, 0), std::f64::consts::FRAC_PI_2, 40).unwrap();
        assert!((s.trace() - 1.0).abs() < 1e-12);
        assert!(s.tail_mass < 1e-10);
    }

    #[test]
    fn amplifier_exhausts_cutoff() {
        let r = evolve_state(&CouplerParams::preset_amplifier(), &InputState::fock(1, 0), 6.0, 30);
        assert!(matches!(r, Err(Error::CutoffExceeded { .. })));
    }
}
