//! s-parametrized characteristic functions of the output field.

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::quasi::polynomials::laguerre;
use crate::state::{InputState, Mode, Selection};

/// Expands a selection-specific `ζ` slice into the pair `(ζ1, ζ2)`.
pub(crate) fn zeta_pair(selection: Selection, zeta: &[C64]) -> Result<[C64; 2]> {
    let zero = C64::new(0.0, 0.0);
    match selection {
        Selection::Single(mode) => {
            let z = *zeta.first().ok_or_else(|| Error::InvalidInput("missing ζ".into()))?;
            Ok(match mode {
                Mode::One => [z, zero],
                Mode::Two => [zero, z],
            })
        }
        Selection::Joint => {
            if zeta.len() < 2 {
                return Err(Error::InvalidInput("joint selection needs (ζ1, ζ2)".into()));
            }
            Ok([zeta[0], zeta[1]])
        }
    }
}

/// Input-mode arguments `(η1, η2)` obtained by pulling `Σ_j ζ_j a_j† − ζ_j* a_j`
/// back through the linear map.
pub fn pullback(c: &EvolutionCoefficients, zeta: [C64; 2]) -> [C64; 2] {
    let [z1, z2] = zeta;
    [
        z1 * c.k1.conj() - z1.conj() * c.l1 + z2 * c.m2.conj() - z2.conj() * c.n2,
        z1 * c.m1.conj() - z1.conj() * c.n1 + z2 * c.k2.conj() - z2.conj() * c.l2,
    ]
}

/// Symmetric-order characteristic function `Tr[ρ_in D(η1) D(η2)]` of the input state.
pub fn input_weyl_char(state: &InputState, eta: [C64; 2]) -> C64 {
    match *state {
        InputState::Fock { n, m } => {
            let (x1, x2) = (eta[0].norm_sqr(), eta[1].norm_sqr());
            C64::new((-0.5 * (x1 + x2)).exp() * laguerre(n, x1) * laguerre(m, x2), 0.0)
        }
        InputState::Coherent { alpha1, alpha2 } => {
            let mut acc = C64::new(0.0, 0.0);
            for (e, a) in eta.iter().zip([alpha1, alpha2]) {
                acc += -0.5 * e.norm_sqr() + e * a.conj() - e.conj() * a;
            }
            acc.exp()
        }
        InputState::Thermal { nbar1, nbar2 } => {
            let v = -(nbar1 + 0.5) * eta[0].norm_sqr() - (nbar2 + 0.5) * eta[1].norm_sqr();
            C64::new(v.exp(), 0.0)
        }
    }
}

/// `C(ζ, s) = exp(s Σ|ζ_j|²/2) Tr[ρ exp(Σ ζ_j a_j†(t) − ζ_j* a_j(t))]`.
///
/// `zeta` holds `ζ` for a single-mode selection and `(ζ1, ζ2)` for the joint one.
pub fn char_fn(
    c: &EvolutionCoefficients,
    state: &InputState,
    selection: Selection,
    s: f64,
    zeta: &[C64],
) -> Result<C64> {
    let z = zeta_pair(selection, zeta)?;
    let weight = (0.5 * s * (z[0].norm_sqr() + z[1].norm_sqr())).exp();
    Ok(input_weyl_char(state, pullback(c, z)) * weight)
}
