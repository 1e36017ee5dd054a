//! Run configuration read from TOML, with dotted `section.key=value` overrides.

use std::path::PathBuf;

use coupler_core::{CouplerParams, InputState, Mode, Selection};
use num_complex::Complex64 as C64;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: Option<ParamsSection>,
    pub state: Option<StateSection>,
    pub time: Option<TimeSection>,
    #[serde(default)]
    pub observables: ObservablesSection,
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub verify: VerifySection,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    #[serde(default)]
    pub omega1: f64,
    #[serde(default)]
    pub omega2: f64,
    #[serde(default)]
    pub mu1: f64,
    #[serde(default)]
    pub mu2: f64,
}

impl ParamsSection {
    pub fn to_params(self) -> CouplerParams {
        CouplerParams {
            lambda1: self.lambda1,
            lambda2: self.lambda2,
            lambda3: self.lambda3,
            lambda4: self.lambda4,
            omega1: self.omega1,
            omega2: self.omega2,
            mu1: self.mu1,
            mu2: self.mu2,
        }
    }
}

/// Complex amplitudes are written as `[re, im]`.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSection {
    Coherent { alpha1: [f64; 2], alpha2: [f64; 2] },
    Fock { n: usize, m: usize },
    Thermal { nbar1: f64, nbar2: f64 },
}

impl StateSection {
    pub fn to_state(self) -> InputState {
        match self {
            StateSection::Coherent { alpha1, alpha2 } => {
                InputState::coherent(C64::new(alpha1[0], alpha1[1]), C64::new(alpha2[0], alpha2[1]))
            }
            StateSection::Fock { n, m } => InputState::fock(n, m),
            StateSection::Thermal { nbar1, nbar2 } => InputState::thermal(nbar1, nbar2),
        }
    }
}

/// `steps` intervals on `[start, stop]`, so `steps + 1` rows.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl TimeSection {
    pub fn times(&self) -> Vec<f64> {
        coupler_core::numeric::linspace(self.start, self.stop, self.steps + 1)
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    Squeezing,
    Mean,
    Variance,
    G2,
    Coeffs,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ObservablesSection {
    pub list: Vec<Observable>,
}

impl Default for ObservablesSection {
    fn default() -> Self {
        Self { list: vec![Observable::Squeezing, Observable::Mean, Observable::G2] }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SelectionKey {
    Mode1,
    Mode2,
    Joint,
}

impl SelectionKey {
    pub fn to_selection(self) -> Selection {
        match self {
            SelectionKey::Mode1 => Selection::Single(Mode::One),
            SelectionKey::Mode2 => Selection::Single(Mode::Two),
            SelectionKey::Joint => Selection::Joint,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum MethodKey {
    #[default]
    Auto,
    ClosedForm,
    Transform,
}

/// Square phase-space window `[−extent, extent]²` per mode.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t: f64,
    /// 0 Wigner, −1 Husimi Q, 1 Glauber P.
    #[serde(default)]
    pub s: f64,
    #[serde(default = "default_selection")]
    pub selection: SelectionKey,
    pub extent: f64,
    pub points: usize,
    #[serde(default)]
    pub method: MethodKey,
    /// Emit the lines `Im α = 0` and `Re α = 0` instead of the full field.
    #[serde(default)]
    pub cut: bool,
}

fn default_selection() -> SelectionKey {
    SelectionKey::Mode1
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Matrix,
}

#[derive(Debug, Clone, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Symplectic,
    CoefficientsVsOde,
    ClosedVsTransform,
    AnalyticVsOracle,
}

impl Suite {
    pub const ALL: [Suite; 4] =
        [Suite::Symplectic, Suite::CoefficientsVsOde, Suite::ClosedVsTransform, Suite::AnalyticVsOracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Symplectic => "symplectic",
            Suite::CoefficientsVsOde => "coefficients_vs_ode",
            Suite::ClosedVsTransform => "closed_vs_transform",
            Suite::AnalyticVsOracle => "analytic_vs_oracle",
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default = "all_suites")]
    pub suites: Vec<Suite>,
    /// Perturbs the closed-form coefficients before checking (negative control).
    #[serde(default)]
    pub corrupt: bool,
    /// Treat oracle cutoff refusals as errors instead of skips.
    #[serde(default)]
    pub strict: bool,
    #[serde(default = "default_cutoff")]
    pub cutoff: usize,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self { suites: all_suites(), corrupt: false, strict: false, cutoff: default_cutoff() }
    }
}

fn all_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

fn default_cutoff() -> usize {
    40
}

impl RunConfig {
    /// Parses `text` and applies `overrides` (`section.key=value`, value in TOML syntax
    /// or a bare string).
    pub fn parse(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        if overrides.is_empty() {
            return toml::from_str(text).map_err(|e| CliError::Config(e.to_string()));
        }
        let mut table: toml::Table = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        Self::deserialize(table).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn params(&self) -> Result<CouplerParams, CliError> {
        let p = self.params.ok_or_else(|| missing("params"))?.to_params();
        p.validate().map_err(|e| CliError::Config(format!("[params]: {e}")))?;
        Ok(p)
    }

    pub fn state(&self) -> Result<InputState, CliError> {
        let s = self.state.ok_or_else(|| missing("state"))?.to_state();
        s.validate().map_err(|e| CliError::Config(format!("[state]: {e}")))?;
        Ok(s)
    }

    pub fn time(&self) -> Result<TimeSection, CliError> {
        let t = self.time.ok_or_else(|| missing("time"))?;
        if !(t.start.is_finite() && t.stop.is_finite()) || t.stop <= t.start {
            return Err(CliError::Config("field `time.stop`: must be finite and greater than `time.start`".into()));
        }
        if t.steps == 0 {
            return Err(CliError::Config("field `time.steps`: must be at least 1".into()));
        }
        Ok(t)
    }

    pub fn grid(&self) -> Result<GridSection, CliError> {
        let g = self.grid.ok_or_else(|| missing("grid"))?;
        if !g.t.is_finite() {
            return Err(CliError::Config("field `grid.t`: must be finite".into()));
        }
        if !g.s.is_finite() || g.s > 1.0 {
            return Err(CliError::Config("field `grid.s`: must be finite and at most 1".into()));
        }
        if !(g.extent.is_finite() && g.extent > 0.0) {
            return Err(CliError::Config("field `grid.extent`: must be positive".into()));
        }
        if g.points < 2 {
            return Err(CliError::Config("field `grid.points`: must be at least 2".into()));
        }
        if g.cut && g.selection == SelectionKey::Joint {
            return Err(CliError::Config("field `grid.cut`: only single-mode fields can be cut".into()));
        }
        Ok(g)
    }
}

fn missing(section: &str) -> CliError {
    CliError::Config(format!("missing section [{section}]"))
}

fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), CliError> {
    let (path, raw) =
        spec.split_once('=').ok_or_else(|| CliError::Config(format!("override `{spec}`: expected key=value")))?;
    let keys: Vec<&str> = path.trim().split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Config(format!("override `{spec}`: empty key")));
    }
    let value = match toml::from_str::<toml::Table>(&format!("v = {}", raw.trim())) {
        Ok(mut t) => t.remove("v").expect("parsed key"),
        Err(_) => toml::Value::String(raw.trim().to_string()),
    };
    let (last, parents) = keys.split_last().expect("non-empty path");
    let mut node = table;
    for k in parents {
        let entry = node.entry(k.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("override `{spec}`: `{k}` is not a section")))?;
    }
    node.insert(last.to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[params]
lambda1 = 0.25
lambda2 = 0.25
lambda3 = 1.0
lambda4 = 0.25

[state]
kind = "fock"
n = 1
m = 0

[time]
start = 0.0
stop = 1.0
steps = 10
"#;

    #[test]
    fn overrides_replace_and_insert() {
        let c = RunConfig::parse(BASE, &["params.lambda4=2".into(), "output.format=matrix".into()]).unwrap();
        assert_eq!(c.params.unwrap().lambda4, 2.0);
        assert_eq!(c.output.format, Some(Format::Matrix));
        assert_eq!(c.params().unwrap().omega1, 0.0);
    }

    #[test]
    fn unknown_field_is_reported_with_its_name() {
        let err = RunConfig::parse(&format!("{BASE}\n[grid]\nt = 1.0\nextent = 3.0\npoints = 5\nwidth = 2\n"), &[])
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("width") && msg.contains("line"), "{msg}");
    }

    #[test]
    fn descending_time_grid_is_rejected() {
        let c = RunConfig::parse(BASE, &["time.stop=-1.0".into()]).unwrap();
        assert!(matches!(c.time(), Err(CliError::Config(_))));
    }

    #[test]
    fn state_kind_selects_variant() {
        let c =
            RunConfig::parse(BASE, &["state.kind=thermal".into(), "state.nbar1=0.5".into(), "state.nbar2=1.5".into()]);
        // n and m are left over from the Fock table.
        assert!(c.is_err());
    }
}
