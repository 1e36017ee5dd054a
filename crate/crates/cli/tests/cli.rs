use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coupler_cli::config::RunConfig;
use coupler_cli::format::axis_step;
use coupler_cli::run::{compute_field, field_matrix, run_grid, run_scan};
use coupler_cli::verify::run_verify;
use coupler_cli::{Format, MatrixFile};

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn bundled(name: &str, overrides: &[&str]) -> RunConfig {
    let text = std::fs::read_to_string(config_path(name)).unwrap();
    let o: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
    RunConfig::parse(&text, &o).unwrap()
}

fn coupler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coupler")).args(args).output().unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

fn recomputed_normalization(m: &MatrixFile) -> f64 {
    let cell: f64 = m.axes.iter().map(|(_, a)| axis_step(a)).product();
    m.values().sum::<f64>() * cell
}

#[test]
fn coherent_scan_shows_squeezing() {
    let out = run_scan(&bundled("squeezing_coherent_a.toml", &[]), Format::Csv).unwrap();
    assert!(out.starts_with("t,S1,Q1,S2,Q2\n"));
    let s1 = column(&out, "S1");
    assert_eq!(s1.len(), 401);
    assert!(s1.iter().any(|&v| v < 0.0));
}

#[test]
fn intensities_cross_when_linear_coupling_dominates() {
    let out = run_scan(&bundled("intensity_switch.toml", &[]), Format::Csv).unwrap();
    let (n1, n2) = (column(&out, "n1_mean"), column(&out, "n2_mean"));
    let diff: Vec<f64> = n1.iter().zip(&n2).map(|(a, b)| a - b).collect();
    assert!(diff.windows(2).filter(|w| w[0].signum() != w[1].signum()).count() >= 2);
}

#[test]
fn amplifier_g2_with_real_amplitudes_stays_at_or_above_one() {
    // The model keeps g2 >= 1 here; a dip below one needs a phase on the first
    // amplitude (0.5 rad below).
    let out = run_scan(&bundled("g2_coherent_amplifier.toml", &[]), Format::Csv).unwrap();
    let g = column(&out, "g2_1");
    assert!(g.iter().all(|&v| v >= 1.0 - 1e-12));
    let phased = run_scan(
        &bundled("g2_coherent_amplifier.toml", &["state.alpha1=[17.551651237807455, 9.588510772084060]"]),
        Format::Csv,
    )
    .unwrap();
    assert!(column(&phased, "g2_1").iter().any(|&v| v < 1.0));
}

#[test]
fn fock_fields_carry_their_extrema() {
    let w = MatrixFile::parse(&run_grid(&bundled("wigner_fock.toml", &[]), Format::Matrix).unwrap()).unwrap();
    assert!(w.meta("min").unwrap().parse::<f64>().unwrap() < 0.0);
    assert_eq!(w.meta("method"), Some("closed_form"));
    let q = MatrixFile::parse(&run_grid(&bundled("husimi_fock.toml", &[]), Format::Matrix).unwrap()).unwrap();
    assert!(q.meta("min").unwrap().parse::<f64>().unwrap() >= -1e-12);
}

#[test]
fn thermal_cut_is_an_ellipse_centred_at_origin() {
    let cut = MatrixFile::parse(&run_grid(&bundled("wigner_thermal_cut.toml", &[]), Format::Matrix).unwrap()).unwrap();
    let v: Vec<f64> = cut.meta("principal_variances").unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    assert!(v[1] / v[0] > 1.5);
    let x = cut.axis("x").unwrap();
    let mid = x.len() / 2;
    assert_eq!(x[mid], 0.0);
    // Both cuts peak at the origin and are even in x.
    for col in 0..2 {
        let line: Vec<f64> = cut.rows.iter().map(|r| r[col]).collect();
        let peak = line.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(line[mid], peak);
        assert!((line[mid - 7] - line[mid + 7]).abs() < 1e-15);
    }
}

#[test]
fn emitted_fields_round_trip_their_normalization() {
    for (name, overrides) in [
        ("wigner_fock.toml", vec![]),
        ("husimi_fock.toml", vec!["grid.t=1.5707963267948966"]),
        ("wigner_coherent.toml", vec!["grid.selection=joint", "grid.points=9"]),
        ("wigner_fock.toml", vec!["grid.selection=joint", "grid.points=9", "grid.t=0.7"]),
    ] {
        let cfg = bundled(name, &overrides);
        let (field, widths) = compute_field(&cfg).unwrap();
        let text = field_matrix(&cfg, &field, &widths).unwrap().render();
        let back = MatrixFile::parse(&text).unwrap();
        let recorded: f64 = back.meta("normalization").unwrap().parse().unwrap();
        assert!((recomputed_normalization(&back) - recorded).abs() < 1e-12, "{name} {overrides:?}");
        assert_eq!(back.values().count(), field.values.len());
    }
}

#[test]
fn transform_method_records_its_settings() {
    let cfg = bundled("wigner_fock.toml", &["grid.method=transform", "grid.points=11"]);
    let m = MatrixFile::parse(&run_grid(&cfg, Format::Matrix).unwrap()).unwrap();
    assert_eq!(m.meta("method"), Some("transform"));
    assert!(m.meta("transform_extent").is_some() && m.meta("transform_error_estimate").is_some());
}

#[test]
fn corrupted_coefficients_fail_the_symplectic_suite() {
    let cfg = bundled("verify.toml", &["verify.suites=[\"symplectic\"]", "verify.corrupt=true"]);
    let report = run_verify(&cfg).unwrap();
    assert!(report.failed() > 0);
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn amplifier_oracle_at_late_time_is_skipped() {
    let report = run_verify(&bundled("verify.toml", &["verify.suites=[\"analytic_vs_oracle\"]"])).unwrap();
    assert_eq!(report.failed(), 0);
    assert_eq!(report.skipped(), 1);
    assert!(report.render().contains("SKIP analytic_vs_oracle [preset_amplifier"));
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn binary_output_is_deterministic() {
    let cfg = config_path("g2_fock_switch.toml");
    let a = coupler(&["scan", "--config", cfg.to_str().unwrap()]);
    let b = coupler(&["scan", "--config", cfg.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn binary_writes_files_and_applies_overrides() {
    let dir = std::env::temp_dir().join(format!("coupler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.txt");
    let cfg = config_path("intensity_switch.toml");
    let out = coupler(&[
        "coeffs",
        "--config",
        cfg.to_str().unwrap(),
        "--override",
        "params.lambda4=2",
        "--override",
        "time.steps=4",
        "--format",
        "matrix",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = MatrixFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m.meta("lambda4"), Some("2.0000000000000000e0"));
    assert_eq!(m.meta("regime"), Some("amplifying"));
    assert_eq!(m.rows.len(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let fock = config_path("wigner_fock.toml");
    let fock = fock.to_str().unwrap();
    let verify = config_path("verify.toml");
    let verify = verify.to_str().unwrap();

    let bad = coupler(&["scan", "--config", fock, "--override", "time.start=1.0"]);
    assert_eq!(bad.status.code(), Some(1), "missing [time] stop/steps");
    assert_eq!(coupler(&["scan", "--bogus"]).status.code(), Some(1));
    assert_eq!(coupler(&["grid", "--config", "/nonexistent.toml"]).status.code(), Some(1));

    let corrupt = coupler(&[
        "verify",
        "--config",
        verify,
        "--override",
        "verify.suites=[\"symplectic\"]",
        "--override",
        "verify.corrupt=true",
    ]);
    assert_eq!(corrupt.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&corrupt.stdout).contains("FAIL symplectic"));

    let p = coupler(&["grid", "--config", fock, "--override", "grid.s=1.0"]);
    assert_eq!(p.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&p.stderr).contains("P-function not representable"));

    let strict = coupler(&[
        "verify",
        "--config",
        verify,
        "--override",
        "verify.suites=[\"analytic_vs_oracle\"]",
        "--override",
        "verify.strict=true",
    ]);
    assert_eq!(strict.status.code(), Some(3));
}
