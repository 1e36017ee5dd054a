//! Cross-checks between the closed forms and the independent reference solvers.

use std::f64::consts::PI;

use coupler_core::numeric::linspace;
use coupler_core::oracle::{evolve_state, ode_coefficients, oracle_moments};
use coupler_core::quasi::{quasi_closed_field, quasi_transform, ModeGrid, PhaseSpaceGrid};
use coupler_core::stats::{g2, mean_photon, photon_variance, squeezing};
use coupler_core::{
    check_symplectic, evolution_coefficients, CouplerParams, Error, EvolutionCoefficients, InputState, Mode, Selection,
};
use num_complex::Complex64 as C64;

use crate::config::{RunConfig, Suite};
use crate::CliError;

fn short(state: &InputState) -> String {
    match *state {
        InputState::Coherent { alpha1, alpha2 } => format!("coherent({alpha1}, {alpha2})"),
        InputState::Fock { n, m } => format!("fock({n}, {m})"),
        InputState::Thermal { nbar1, nbar2 } => format!("thermal({nbar1}, {nbar2})"),
    }
}

pub const SYMPLECTIC_TOL: f64 = 1e-9;
pub const ODE_TOL: f64 = 1e-8;
pub const TRANSFORM_TOL: f64 = 1e-5;
pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub suite: Suite,
    pub label: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub entries: Vec<Entry>,
    pub strict: bool,
}

impl VerifyReport {
    pub fn failed(&self) -> usize {
        self.entries.iter().filter(|e| e.status == Status::Fail).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, Status::Skipped(_))).count()
    }

    pub fn exit_code(&self) -> u8 {
        if self.failed() > 0 {
            2
        } else if self.strict && self.skipped() > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let head = match &e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped(_) => "SKIP",
            };
            out.push_str(&format!("{head} {} [{}]: ", e.suite.name(), e.label));
            match &e.status {
                Status::Skipped(why) => out.push_str(why),
                _ => out.push_str(&format!("max residual {:.3e} (tol {:.0e})", e.residual, e.tolerance)),
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "verify: {} checks, {} failed, {} skipped{}\n",
            self.entries.len(),
            self.failed(),
            self.skipped(),
            if self.strict { " (strict)" } else { "" }
        ));
        out
    }
}

fn named_presets() -> Vec<(&'static str, CouplerParams)> {
    vec![
        ("preset_a", CouplerParams::preset_a()),
        ("preset_b", CouplerParams::preset_b()),
        ("preset_c", CouplerParams::preset_c()),
        ("preset_amplifier", CouplerParams::preset_amplifier()),
    ]
}

/// Closed-form coefficients, optionally perturbed off the symplectic manifold.
fn analytic(p: &CouplerParams, t: f64, corrupt: bool) -> Result<EvolutionCoefficients, Error> {
    let mut c = evolution_coefficients(p, t)?;
    if corrupt {
        c.k1 *= 1.0 + 1e-3;
        c.n2 += C64::new(1e-3, 0.0);
    }
    Ok(c)
}

fn entry(suite: Suite, label: String, residual: f64, tolerance: f64) -> Entry {
    let status = if residual < tolerance { Status::Pass } else { Status::Fail };
    Entry { suite, label, status, residual, tolerance }
}

fn symplectic(sets: &[(&str, CouplerParams)], corrupt: bool) -> Result<Vec<Entry>, CliError> {
    let times = linspace(0.0, 10.0, 201);
    let mut out = Vec::new();
    for (name, p) in sets {
        let mut worst: f64 = 0.0;
        for &t in &times {
            worst = worst.max(check_symplectic(&analytic(p, t, corrupt)?).max_relative());
        }
        out.push(entry(Suite::Symplectic, format!("{name}, {} times on [0, 10]", times.len()), worst, SYMPLECTIC_TOL));
    }
    Ok(out)
}

fn against_ode(sets: &[(&str, CouplerParams)], corrupt: bool) -> Result<Vec<Entry>, CliError> {
    let times = linspace(0.0, PI, 41);
    let mut out = Vec::new();
    for (name, p) in sets {
        let mut worst: f64 = 0.0;
        for &t in &times {
            worst = worst.max(analytic(p, t, corrupt)?.max_abs_diff(&ode_coefficients(p, t)?));
        }
        out.push(entry(Suite::CoefficientsVsOde, format!("{name}, {} times on [0, π]", times.len()), worst, ODE_TOL));
    }
    Ok(out)
}

fn closed_vs_transform(corrupt: bool) -> Result<Vec<Entry>, CliError> {
    let p = CouplerParams::preset_a();
    let grid = PhaseSpaceGrid::single(ModeGrid::square(3.0, 21));
    let one = Selection::Single(Mode::One);
    let cases = [
        (InputState::fock(1, 0), 0.0),
        (InputState::fock(1, 0), -1.0),
        (InputState::coherent(C64::new(1.0, 0.5), C64::new(0.5, 0.0)), 0.0),
        (InputState::thermal(0.5, 0.5), -1.0),
    ];
    let mut out = Vec::new();
    for t in [PI / 100.0, PI / 2.0] {
        for (state, s) in &cases {
            let closed = quasi_closed_field(&analytic(&p, t, corrupt)?, state, one, *s, &grid)?;
            let numeric = quasi_transform(&evolution_coefficients(&p, t)?, state, one, *s, &grid)?;
            let label = format!("preset_a {} s={s} t={t:.4}", short(state));
            out.push(entry(Suite::ClosedVsTransform, label, closed.max_abs_diff(&numeric), TRANSFORM_TOL));
        }
    }
    Ok(out)
}

fn oracle_case(p: &CouplerParams, state: &InputState, t: f64, cutoff: usize, corrupt: bool) -> Result<f64, Error> {
    let os = evolve_state(p, state, t, cutoff)?;
    let c = analytic(p, t, corrupt)?;
    let q = squeezing(&c, state);
    let mut worst: f64 = 0.0;
    for mode in [Mode::One, Mode::Two] {
        let o = oracle_moments(&os, mode)?;
        let (s, qq) = q.mode(mode);
        let scale = |v: f64| v.abs().max(1.0);
        worst = worst
            .max((o.mean - mean_photon(&c, state, mode)).abs() / scale(o.mean))
            .max((o.variance - photon_variance(&c, state, mode)).abs() / scale(o.variance))
            .max((o.s - s).abs() / scale(o.s))
            .max((o.q - qq).abs() / scale(o.q));
        if let Some(og) = o.g2 {
            worst = worst.max((og - g2(&c, state, mode)?).abs());
        }
    }
    Ok(worst)
}

fn analytic_vs_oracle(cutoff: usize, corrupt: bool) -> Result<Vec<Entry>, CliError> {
    let cases = [
        (
            "preset_a",
            CouplerParams::preset_a(),
            InputState::coherent(C64::new(0.6, 0.3), C64::new(-0.4, 0.0)),
            [0.4, 1.2],
        ),
        ("preset_a", CouplerParams::preset_a(), InputState::fock(1, 0), [0.4, 1.2]),
        ("preset_c", CouplerParams::preset_c(), InputState::thermal(0.3, 0.2), [0.4, 1.2]),
        (
            "preset_amplifier",
            CouplerParams::preset_amplifier(),
            InputState::coherent(C64::new(0.5, 0.0), C64::new(0.3, 0.0)),
            [0.2, 3.0],
        ),
    ];
    let mut out = Vec::new();
    for (name, p, state, times) in &cases {
        for &t in times {
            let label = format!("{name} {} t={t} cutoff={cutoff}", short(state));
            match oracle_case(p, state, t, cutoff, corrupt) {
                Ok(r) => out.push(entry(Suite::AnalyticVsOracle, label, r, ORACLE_TOL)),
                Err(e @ Error::CutoffExceeded { .. }) => out.push(Entry {
                    suite: Suite::AnalyticVsOracle,
                    label,
                    status: Status::Skipped(e.to_string()),
                    residual: f64::NAN,
                    tolerance: ORACLE_TOL,
                }),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(out)
}

pub fn run_verify(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let v = &cfg.verify;
    let mut sets = named_presets();
    if cfg.params.is_some() {
        sets.push(("config", cfg.params()?));
    }
    let mut entries = Vec::new();
    for suite in &v.suites {
        entries.extend(match suite {
            Suite::Symplectic => symplectic(&sets, v.corrupt)?,
            Suite::CoefficientsVsOde => against_ode(&sets, v.corrupt)?,
            Suite::ClosedVsTransform => closed_vs_transform(v.corrupt)?,
            Suite::AnalyticVsOracle => analytic_vs_oracle(v.cutoff, v.corrupt)?,
        });
    }
    Ok(VerifyReport { entries, strict: v.strict })
}
