use thiserror::Error;

/// Errors raised by the coupler library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Closed-form coefficients violate the commutator identities; the caller
    /// may fall back to the numerically integrated coefficients.
    #[error("branch ambiguity: symplectic residual {residual:e} exceeds {tolerance:e}")]
    BranchAmbiguity { residual: f64, tolerance: f64 },

    #[error("mean photon number {mean:e} is too small for a normalized correlation")]
    ZeroIntensity { mean: f64 },

    /// The Glauber P-function is not an ordinary function for this state.
    #[error("P-function not representable (margin {margin:e})")]
    PNotRepresentable { margin: f64 },

    #[error("no closed form available: {0}")]
    UnsupportedClosedForm(String),

    #[error("unsupported state: {0}")]
    UnsupportedState(String),

    /// The characteristic function does not decay inside the admissible
    /// integration domain.
    #[error("characteristic function not decayed: |C| = {boundary_value:e} at extent {extent}")]
    TruncatedTransform { boundary_value: f64, extent: f64 },

    #[error("integrator failure: {0}")]
    IntegratorFailure(String),

    #[error("Fock cutoff {cutoff} exceeded: tail mass {tail_mass:e}")]
    CutoffExceeded { cutoff: usize, tail_mass: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
