//! `scan`, `grid` and `coeffs`.

use coupler_core::quasi::gaussian::GaussianQuasi;
use coupler_core::quasi::{quasi_closed_field, quasi_transform, ClosedForm, ModeGrid, PhaseSpaceGrid, QuasiField};
use coupler_core::stats::{g2, mean_photon, photon_variance, squeezing};
use coupler_core::{
    check_symplectic, classify_regime, derive_spectral, evolution_coefficients, CouplerParams, Error, InputState, Mode,
    Selection,
};
use rayon::prelude::*;

use crate::config::{MethodKey, Observable, RunConfig, SelectionKey};
use crate::format::{csv, num, MatrixFile};
use crate::{CliError, Format};

const COEFF_NAMES: [&str; 8] = ["K1", "L1", "M1", "N1", "K2", "L2", "M2", "N2"];

fn scan_columns(list: &[Observable]) -> (Vec<Observable>, Vec<String>) {
    let mut obs = list.to_vec();
    obs.sort();
    obs.dedup();
    let mut cols = vec!["t".to_string()];
    for o in &obs {
        match o {
            Observable::Squeezing => cols.extend(["S1", "Q1", "S2", "Q2"].map(String::from)),
            Observable::Mean => cols.extend(["n1_mean", "n2_mean"].map(String::from)),
            Observable::Variance => cols.extend(["n1_var", "n2_var"].map(String::from)),
            Observable::G2 => cols.extend(["g2_1", "g2_2"].map(String::from)),
            Observable::Coeffs => cols.extend(COEFF_NAMES.iter().flat_map(|n| [format!("{n}_re"), format!("{n}_im")])),
        }
    }
    (obs, cols)
}

fn scan_row(p: &CouplerParams, state: &InputState, obs: &[Observable], t: f64) -> Result<Vec<f64>, CliError> {
    let c = evolution_coefficients(p, t)?;
    let mut row = vec![t];
    for o in obs {
        match o {
            Observable::Squeezing => {
                let q = squeezing(&c, state);
                row.extend([q.s1, q.q1, q.s2, q.q2]);
            }
            Observable::Mean => row.extend([Mode::One, Mode::Two].map(|m| mean_photon(&c, state, m))),
            Observable::Variance => row.extend([Mode::One, Mode::Two].map(|m| photon_variance(&c, state, m))),
            Observable::G2 => {
                row.push(g2(&c, state, Mode::One)?);
                row.push(g2(&c, state, Mode::Two)?);
            }
            Observable::Coeffs => row.extend(c.values().iter().flat_map(|z| [z.re, z.im])),
        }
    }
    Ok(row)
}

fn params_meta(p: &CouplerParams) -> Vec<(String, String)> {
    [
        ("lambda1", p.lambda1),
        ("lambda2", p.lambda2),
        ("lambda3", p.lambda3),
        ("lambda4", p.lambda4),
        ("omega1", p.omega1),
        ("omega2", p.omega2),
        ("mu1", p.mu1),
        ("mu2", p.mu2),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), num(*v)))
    .collect()
}

pub fn describe_state(state: &InputState) -> String {
    match *state {
        InputState::Coherent { alpha1, alpha2 } => format!(
            "coherent alpha1=({}, {}) alpha2=({}, {})",
            num(alpha1.re),
            num(alpha1.im),
            num(alpha2.re),
            num(alpha2.im)
        ),
        InputState::Fock { n, m } => format!("fock n={n} m={m}"),
        InputState::Thermal { nbar1, nbar2 } => format!("thermal nbar1={} nbar2={}", num(nbar1), num(nbar2)),
    }
}

/// One row per time sample; rows are computed in parallel and emitted in order.
pub fn run_scan(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let p = cfg.params()?;
    let state = cfg.state()?;
    let times = cfg.time()?.times();
    if cfg.observables.list.is_empty() {
        return Err(CliError::Config("field `observables.list`: nothing to compute".into()));
    }
    let (obs, cols) = scan_columns(&cfg.observables.list);
    let rows = times.par_iter().map(|&t| scan_row(&p, &state, &obs, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Csv => csv(&cols, &rows),
        Format::Matrix => {
            let mut meta =
                vec![("kind".to_string(), "scan".to_string()), ("state".to_string(), describe_state(&state))];
            meta.extend(params_meta(&p));
            meta.push(("columns".to_string(), cols[1..].join(" ")));
            MatrixFile {
                meta,
                axes: vec![("t".to_string(), times)],
                rows: rows.into_iter().map(|r| r[1..].to_vec()).collect(),
            }
            .render()
        }
    })
}

/// Coefficients and the symplectic residual per time sample, with spectral data
/// in the metadata.
pub fn run_coeffs(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let p = cfg.params()?;
    let times = cfg.time()?.times();
    let spec = derive_spectral(&p);
    let regime = classify_regime(&spec);
    let mut meta = vec![("kind".to_string(), "coefficients".to_string())];
    meta.extend(params_meta(&p));
    for (k, v) in [
        ("g1", spec.g1),
        ("g2", spec.g2),
        ("theta_re", spec.theta.re),
        ("theta_im", spec.theta.im),
        ("omega_bar_1_sq_re", spec.omega_bar_1_sq().re),
        ("omega_bar_1_sq_im", spec.omega_bar_1_sq().im),
        ("omega_bar_2_sq_re", spec.omega_bar_2_sq().re),
        ("omega_bar_2_sq_im", spec.omega_bar_2_sq().im),
    ] {
        meta.push((k.to_string(), num(v)));
    }
    meta.push(("regime".to_string(), format!("{:?}", regime.tag).to_lowercase()));

    let mut cols = vec!["t".to_string()];
    cols.extend(COEFF_NAMES.iter().flat_map(|n| [format!("{n}_re"), format!("{n}_im")]));
    cols.push("symplectic_residual".to_string());
    let rows = times
        .par_iter()
        .map(|&t| {
            let c = evolution_coefficients(&p, t)?;
            let mut row = vec![t];
            row.extend(c.values().iter().flat_map(|z| [z.re, z.im]));
            row.push(check_symplectic(&c).max_relative());
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(match format {
        Format::Csv => {
            let mut out: String = meta.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect();
            out.push_str(&csv(&cols, &rows));
            out
        }
        Format::Matrix => {
            meta.push(("columns".to_string(), cols[1..].join(" ")));
            MatrixFile {
                meta,
                axes: vec![("t".to_string(), times)],
                rows: rows.into_iter().map(|r| r[1..].to_vec()).collect(),
            }
            .render()
        }
    })
}

/// Field on the configured grid. `Auto` uses the closed form when one exists.
pub fn compute_field(cfg: &RunConfig) -> Result<(QuasiField, Option<Vec<f64>>), CliError> {
    let p = cfg.params()?;
    let state = cfg.state()?;
    let g = cfg.grid()?;
    let c = evolution_coefficients(&p, g.t)?;
    let selection = g.selection.to_selection();
    let square = ModeGrid::square(g.extent, g.points);
    let grid = match g.selection {
        SelectionKey::Joint => PhaseSpaceGrid::joint(square, square),
        _ => PhaseSpaceGrid::single(square),
    };
    let field = match g.method {
        MethodKey::ClosedForm => quasi_closed_field(&c, &state, selection, g.s, &grid)?,
        MethodKey::Transform => quasi_transform(&c, &state, selection, g.s, &grid)?,
        MethodKey::Auto => match ClosedForm::new(&c, &state, selection, g.s) {
            Ok(_) => quasi_closed_field(&c, &state, selection, g.s, &grid)?,
            Err(Error::UnsupportedClosedForm(_)) => quasi_transform(&c, &state, selection, g.s, &grid)?,
            Err(e) => return Err(e.into()),
        },
    };
    let widths = if state.is_gaussian() {
        Some(GaussianQuasi::new(&c, &state, selection, g.s)?.principal_variances())
    } else {
        None
    };
    Ok((field, widths))
}

fn selection_name(selection: Selection) -> &'static str {
    match selection {
        Selection::Single(Mode::One) => "mode1",
        Selection::Single(Mode::Two) => "mode2",
        Selection::Joint => "joint",
    }
}

fn field_meta(
    cfg: &RunConfig,
    field: &QuasiField,
    widths: &Option<Vec<f64>>,
    kind: &str,
) -> Result<Vec<(String, String)>, CliError> {
    let m = &field.meta;
    let mut meta = vec![
        ("kind".to_string(), kind.to_string()),
        ("state".to_string(), describe_state(&m.state)),
        ("selection".to_string(), selection_name(m.selection).to_string()),
        ("s".to_string(), num(m.s)),
        ("t".to_string(), num(m.t)),
        ("method".to_string(), m.method.name().to_string()),
        ("normalization".to_string(), num(m.normalization)),
        ("normalization_tol".to_string(), num(m.normalization_tol)),
        ("normalized".to_string(), field.is_normalized().to_string()),
        ("min".to_string(), num(field.min())),
        ("max".to_string(), num(field.max())),
        ("shape".to_string(), field.grid.shape().iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")),
    ];
    for (k, v) in
        [("transform_extent", m.extent), ("transform_step", m.step), ("transform_error_estimate", m.error_estimate)]
    {
        if let Some(v) = v {
            meta.push((k.to_string(), num(v)));
        }
    }
    if let Some(w) = widths {
        meta.push(("principal_variances".to_string(), w.iter().map(|&v| num(v)).collect::<Vec<_>>().join(" ")));
    }
    meta.extend(params_meta(&cfg.params()?));
    Ok(meta)
}

pub fn field_matrix(cfg: &RunConfig, field: &QuasiField, widths: &Option<Vec<f64>>) -> Result<MatrixFile, CliError> {
    let names = ["re1", "im1", "re2", "im2"];
    let axes: Vec<(String, Vec<f64>)> =
        field.grid.axes().into_iter().enumerate().map(|(i, a)| (names[i].to_string(), a)).collect();
    let shape = field.grid.shape();
    let width: usize = shape[shape.len() / 2..].iter().product();
    let rows = field.values.chunks(width).map(<[f64]>::to_vec).collect();
    Ok(MatrixFile { meta: field_meta(cfg, field, widths, "quasi_field")?, axes, rows })
}

pub fn run_grid(cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let (field, widths) = compute_field(cfg)?;
    let g = cfg.grid()?;
    if g.cut {
        if g.points % 2 == 0 {
            return Err(CliError::Config(
                "field `grid.points`: a cut needs an odd count so the axes pass through 0".into(),
            ));
        }
        let n = g.points;
        let mid = n / 2;
        let x = field.grid.axes()[0].clone();
        // Storage is row-major in (re, im).
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![field.values[i * n + mid], field.values[mid * n + i]]).collect();
        return Ok(match format {
            Format::Csv => {
                let full: Vec<Vec<f64>> = x.iter().zip(&rows).map(|(&x, r)| vec![x, r[0], r[1]]).collect();
                csv(&["x".into(), "along_re".into(), "along_im".into()], &full)
            }
            Format::Matrix => {
                let mut meta = field_meta(cfg, &field, &widths, "quasi_cut")?;
                meta.push(("columns".to_string(), "along_re along_im".to_string()));
                MatrixFile { meta, axes: vec![("x".to_string(), x)], rows }.render()
            }
        });
    }
    Ok(match format {
        Format::Matrix => field_matrix(cfg, &field, &widths)?.render(),
        Format::Csv => {
            let modes = field.grid.modes.len();
            let mut cols: Vec<String> =
                ["re1", "im1", "re2", "im2"][..2 * modes].iter().map(|s| s.to_string()).collect();
            cols.push("value".into());
            let rows: Vec<Vec<f64>> = field
                .grid
                .points()
                .iter()
                .zip(&field.values)
                .map(|(p, &v)| {
                    let mut r: Vec<f64> = p.iter().flat_map(|z| [z.re, z.im]).collect();
                    r.push(v);
                    r
                })
                .collect();
            csv(&cols, &rows)
        }
    })
}
