//! Brute-force reference solvers that use no closed-form result.

pub mod hamiltonian;
pub mod observables;
pub mod ode;
pub mod propagate;
pub mod state;

pub use hamiltonian::EffectiveHamiltonian;
pub use observables::{oracle_char_fn, oracle_moments, oracle_wigner, OracleMoments};
pub use ode::ode_coefficients;
pub use state::{evolve_state, evolve_state_times, OracleState, Representation};
