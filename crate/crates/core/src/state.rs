//! Input states and mode selection.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    pub fn index(self) -> usize {
        match self {
            Mode::One => 0,
            Mode::Two => 1,
        }
    }

    pub fn other(self) -> Mode {
        match self {
            Mode::One => Mode::Two,
            Mode::Two => Mode::One,
        }
    }

    pub fn from_number(n: u8) -> Result<Mode> {
        match n {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            _ => Err(Error::InvalidInput(format!("mode must be 1 or 2, got {n}"))),
        }
    }
}

/// Which part of the two-mode field a quasiprobability describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selection {
    Single(Mode),
    Joint,
}

/// Product input state of the two waveguides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputState {
    Coherent { alpha1: C64, alpha2: C64 },
    Fock { n: usize, m: usize },
    Thermal { nbar1: f64, nbar2: f64 },
}

impl InputState {
    pub fn coherent(alpha1: C64, alpha2: C64) -> Self {
        InputState::Coherent { alpha1, alpha2 }
    }

    pub fn fock(n: usize, m: usize) -> Self {
        InputState::Fock { n, m }
    }

    pub fn thermal(nbar1: f64, nbar2: f64) -> Self {
        InputState::Thermal { nbar1, nbar2 }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InputState::Coherent { alpha1, alpha2 } => {
                if !(alpha1.is_finite() && alpha2.is_finite()) {
                    return Err(Error::InvalidInput("coherent amplitudes must be finite".into()));
                }
            }
            InputState::Fock { .. } => {}
            InputState::Thermal { nbar1, nbar2 } => {
                if !(nbar1.is_finite() && nbar2.is_finite() && nbar1 >= 0.0 && nbar2 >= 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "thermal means must be finite and nonnegative, got ({nbar1}, {nbar2})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exchanges the data of the two input modes.
    pub fn swapped(&self) -> Self {
        match *self {
            InputState::Coherent { alpha1, alpha2 } => InputState::Coherent { alpha1: alpha2, alpha2: alpha1 },
            InputState::Fock { n, m } => InputState::Fock { n: m, m: n },
            InputState::Thermal { nbar1, nbar2 } => InputState::Thermal { nbar1: nbar2, nbar2: nbar1 },
        }
    }

    /// Mean displacement `⟨c_k⟩` of each input mode.
    pub fn amplitudes(&self) -> [C64; 2] {
        match *self {
            InputState::Coherent { alpha1, alpha2 } => [alpha1, alpha2],
            _ => [C64::new(0.0, 0.0); 2],
        }
    }

    /// Fluctuation occupation `⟨δc† δc⟩` of each input mode. For Fock inputs this
    /// is the photon number, which reproduces every second moment exactly.
    pub fn occupations(&self) -> [f64; 2] {
        match *self {
            InputState::Coherent { .. } => [0.0, 0.0],
            InputState::Fock { n, m } => [n as f64, m as f64],
            InputState::Thermal { nbar1, nbar2 } => [nbar1, nbar2],
        }
    }

    pub fn is_gaussian(&self) -> bool {
        !matches!(self, InputState::Fock { .. })
    }

    pub fn family(&self) -> &'static str {
        match self {
            InputState::Coherent { .. } => "coherent",
            InputState::Fock { .. } => "fock",
            InputState::Thermal { .. } => "thermal",
        }
    }
}
