//! Dispatch to the analytic quasiprobability evaluators.

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::quasi::field::{Method, PhaseSpaceGrid, QuasiField};
use crate::quasi::fock::{fock_joint_wigner, FockSingleQuasi};
use crate::quasi::gaussian::{GaussianQuasi, DEFINITENESS_TOL};
use crate::state::{InputState, Selection};

/// A prepared analytic evaluator for one `(state, selection, s)` combination.
#[derive(Debug, Clone)]
pub enum ClosedForm {
    Gaussian(GaussianQuasi),
    FockSingle(Box<FockSingleQuasi>),
    FockJointWigner { coeffs: EvolutionCoefficients, n: usize, m: usize },
}

impl ClosedForm {
    pub fn new(c: &EvolutionCoefficients, state: &InputState, selection: Selection, s: f64) -> Result<Self> {
        state.validate()?;
        if !s.is_finite() || s > 1.0 {
            return Err(Error::InvalidInput(format!("ordering parameter s = {s} must lie in (−∞, 1]")));
        }
        match (*state, selection) {
            (InputState::Fock { n, m }, Selection::Single(mode)) => {
                Ok(Self::FockSingle(Box::new(FockSingleQuasi::new(c, n, m, mode, s)?)))
            }
            (InputState::Fock { n, m }, Selection::Joint) => {
                if s != 0.0 {
                    return Err(Error::UnsupportedClosedForm(format!(
                        "joint closed form for Fock inputs exists only at s = 0, got s = {s}"
                    )));
                }
                Ok(Self::FockJointWigner { coeffs: *c, n, m })
            }
            _ => {
                let g = GaussianQuasi::new(c, state, selection, s)?;
                if g.margin() <= DEFINITENESS_TOL {
                    return Err(Error::PNotRepresentable { margin: g.margin() });
                }
                Ok(Self::Gaussian(g))
            }
        }
    }

    /// Value at one amplitude per selected mode.
    pub fn eval(&self, point: &[C64]) -> Result<f64> {
        match self {
            Self::Gaussian(g) => g.density(point),
            Self::FockSingle(f) => {
                let a = point.first().ok_or_else(|| Error::InvalidInput("missing α".into()))?;
                Ok(f.value(*a))
            }
            Self::FockJointWigner { coeffs, n, m } => {
                if point.len() < 2 {
                    return Err(Error::InvalidInput("joint selection needs (α1, α2)".into()));
                }
                Ok(fock_joint_wigner(coeffs, *n, *m, [point[0], point[1]]))
            }
        }
    }
}

/// Single-point convenience wrapper around [`ClosedForm`].
pub fn quasi_closed_form(
    c: &EvolutionCoefficients,
    state: &InputState,
    selection: Selection,
    s: f64,
    point: &[C64],
) -> Result<f64> {
    ClosedForm::new(c, state, selection, s)?.eval(point)
}

/// Closed-form field sampled on `grid`.
pub fn quasi_closed_field(
    c: &EvolutionCoefficients,
    state: &InputState,
    selection: Selection,
    s: f64,
    grid: &PhaseSpaceGrid,
) -> Result<QuasiField> {
    grid.validate_for(selection)?;
    let cf = ClosedForm::new(c, state, selection, s)?;
    let values = grid.points().iter().map(|p| cf.eval(p)).collect::<Result<Vec<_>>>()?;
    Ok(QuasiField::assemble(grid.clone(), values, *state, selection, s, c.t, Method::ClosedForm))
}

/// Whether the Glauber P function exists as a non-singular density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PRepresentability {
    pub representable: bool,
    /// `2 λ_min(Σ_N)`; negative when some quadrature is squeezed below vacuum.
    pub margin: f64,
}

/// P-representability of a Gaussian output. Fock inputs are refused since their
/// P function is never a regular density.
pub fn p_representable(
    c: &EvolutionCoefficients,
    state: &InputState,
    selection: Selection,
) -> Result<PRepresentability> {
    let g = GaussianQuasi::new(c, state, selection, 1.0)?;
    let margin = g.p_margin();
    Ok(PRepresentability { representable: margin >= -DEFINITENESS_TOL, margin })
}
