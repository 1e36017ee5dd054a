//! Exact dynamics and quantum statistics of a two-waveguide coupler with linear
//! and parametric exchange, together with brute-force reference solvers.

pub mod coupler;
pub mod error;
pub mod moments;
pub mod numeric;
pub mod oracle;
pub mod quasi;
pub mod state;
pub mod stats;

pub use coupler::{
    basis_functions, check_symplectic, classify_regime, derive_spectral, evolution_coefficients, CouplerParams,
    EvolutionCoefficients, Regime, RegimeKind, SpectralData,
};
pub use error::{Error, Result};
pub use state::{InputState, Mode, Selection};
