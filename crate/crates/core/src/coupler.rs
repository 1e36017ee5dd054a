//! Model parameters, spectral data and the exact input–output coefficients.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numeric::{sin_over, sinc};
use crate::state::Mode;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Tolerance used by [`evolution_coefficients`] on the relative symplectic residual.
pub const SYMPLECTIC_TOL: f64 = 1e-9;

/// Physical constants of the coupler.
///
/// The effective detunings `Δ_j = ω_j + μ_j/2` are always derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl CouplerParams {
    /// Couplings at exact pump resonance (`ω = μ = 0`).
    pub fn resonant(lambda1: f64, lambda2: f64, lambda3: f64, lambda4: f64) -> Self {
        Self { lambda1, lambda2, lambda3, lambda4, omega1: 0.0, omega2: 0.0, mu1: 0.0, mu2: 0.0 }
    }

    /// Sets the detunings directly by choosing `ω_j = Δ_j` and `μ_j = 0`.
    pub fn with_detunings(mut self, delta1: f64, delta2: f64) -> Self {
        self.omega1 = delta1;
        self.omega2 = delta2;
        self.mu1 = 0.0;
        self.mu2 = 0.0;
        self
    }

    /// `λ1 = λ2 = λ4 = 0.25`, `λ3 = 1`.
    pub fn preset_a() -> Self {
        Self::resonant(0.25, 0.25, 1.0, 0.25)
    }

    /// `λ1 = λ2 = λ4 = 0.2`, `λ3 = 1`.
    pub fn preset_b() -> Self {
        Self::resonant(0.2, 0.2, 1.0, 0.2)
    }

    /// `λ1 = 0.17`, `λ2 = λ4 = 0.2`, `λ3 = 1`.
    pub fn preset_c() -> Self {
        Self::resonant(0.17, 0.2, 1.0, 0.2)
    }

    /// Same as [`preset_c`](Self::preset_c) but with `λ4 = 2 > λ3`, which amplifies.
    pub fn preset_amplifier() -> Self {
        Self::resonant(0.17, 0.2, 1.0, 2.0)
    }

    pub fn delta1(&self) -> f64 {
        self.omega1 + 0.5 * self.mu1
    }

    pub fn delta2(&self) -> f64 {
        self.omega2 + 0.5 * self.mu2
    }

    /// Pump phases `(φ1, φ2) = ((μ2−μ1)t/2, (μ2+μ1)t/2)`.
    pub fn phases(&self, t: f64) -> (f64, f64) {
        (0.5 * (self.mu2 - self.mu1) * t, 0.5 * (self.mu2 + self.mu1) * t)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("lambda3", self.lambda3),
            ("lambda4", self.lambda4),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("mu1", self.mu1),
            ("mu2", self.mu2),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Relabels the two waveguides.
    pub fn swapped(&self) -> Self {
        Self {
            lambda1: self.lambda2,
            lambda2: self.lambda1,
            lambda3: self.lambda3,
            lambda4: self.lambda4,
            omega1: self.omega2,
            omega2: self.omega1,
            mu1: self.mu2,
            mu2: self.mu1,
        }
    }

    /// Heisenberg generator `M` with `d/dt (A, A†, B, B†)ᵀ = M (A, A†, B, B†)ᵀ`.
    pub fn generator(&self) -> [[C64; 4]; 4] {
        let (d1, d2) = (self.delta1(), self.delta2());
        let (l1, l2, l3, l4) = (self.lambda1, self.lambda2, self.lambda3, self.lambda4);
        let c = |re: f64, im: f64| C64::new(re, im);
        [
            [c(0.0, -d1), c(0.0, -2.0 * l1), c(0.0, -l3), c(0.0, -l4)],
            [c(0.0, 2.0 * l1), c(0.0, d1), c(0.0, l4), c(0.0, l3)],
            [c(0.0, -l3), c(0.0, -l4), c(0.0, -d2), c(0.0, -2.0 * l2)],
            [c(0.0, l4), c(0.0, l3), c(0.0, 2.0 * l2), c(0.0, d2)],
        ]
    }
}

/// Combination constants and dressed frequencies of the coupler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    pub j_plus: f64,
    pub j_minus: f64,
    pub g1: f64,
    pub g2: f64,
    /// Mixing angle; complex when `g1 g2 < 0`.
    pub theta: C64,
    pub omega1_sq: f64,
    pub omega2_sq: f64,
    pub omega_bar_1: C64,
    pub omega_bar_2: C64,
    /// `Ω̄2² − Ω̄1²`, kept separately to avoid recomputing it from the roots.
    pub split: C64,
}

impl SpectralData {
    pub fn omega_bar_1_sq(&self) -> C64 {
        self.omega_bar_1 * self.omega_bar_1
    }

    pub fn omega_bar_2_sq(&self) -> C64 {
        self.omega_bar_2 * self.omega_bar_2
    }

    /// `Ω2² − Ω1²`.
    pub fn gap(&self) -> f64 {
        self.omega2_sq - self.omega1_sq
    }
}

pub fn derive_spectral(params: &CouplerParams) -> SpectralData {
    let (d1, d2) = (params.delta1(), params.delta2());
    let lambda_plus = params.lambda3 + params.lambda4;
    let lambda_minus = params.lambda3 - params.lambda4;
    let k_plus = d1 + 2.0 * params.lambda1;
    let k_minus = d1 - 2.0 * params.lambda1;
    let j_plus = d2 + 2.0 * params.lambda2;
    let j_minus = d2 - 2.0 * params.lambda2;
    let g1 = k_minus * lambda_plus + lambda_minus * j_plus;
    let g2 = k_plus * lambda_minus + lambda_plus * j_minus;
    let lpm = lambda_minus * lambda_plus;
    let omega1_sq = lpm + k_minus * k_plus;
    let omega2_sq = lpm + j_minus * j_plus;
    let x = omega2_sq - omega1_sq;
    let gg = g1 * g2;

    let (rho, two_theta) = if gg >= 0.0 {
        let rho = gg.sqrt();
        (C64::new(rho, 0.0), C64::new((2.0 * rho).atan2(x), 0.0))
    } else {
        let rho = C64::new(0.0, (-gg).sqrt());
        let tt = if x == 0.0 { C64::new(FRAC_PI_2, 0.0) } else { (rho * 2.0 / x).atan() };
        (rho, tt)
    };

    // The angle fixes which root is labelled 1 and which 2; the magnitude is
    // taken from the square root, which does not suffer from cancellation.
    let from_angle = two_theta.cos() * x + two_theta.sin() * rho * 2.0;
    let root = C64::new(x * x + 4.0 * gg, 0.0).sqrt();
    let split =
        if !from_angle.is_finite() || (root - from_angle).norm() <= (root + from_angle).norm() { root } else { -root };

    let mean = 0.5 * (omega1_sq + omega2_sq);
    let omega_bar_1 = (mean - split * 0.5).sqrt();
    let omega_bar_2 = (mean + split * 0.5).sqrt();

    SpectralData {
        lambda_plus,
        lambda_minus,
        k_plus,
        k_minus,
        j_plus,
        j_minus,
        g1,
        g2,
        theta: two_theta * 0.5,
        omega1_sq,
        omega2_sq,
        omega_bar_1,
        omega_bar_2,
        split,
    }
}

/// The time-dependent functions `F1, F2, G1, G2, C, S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisFunctions {
    pub t: f64,
    pub f1: C64,
    pub f2: C64,
    pub g1fn: C64,
    pub g2fn: C64,
    pub cfn: C64,
    pub sfn: C64,
    /// `(cos Ω̄2 t − cos Ω̄1 t)/(Ω̄2² − Ω̄1²)`.
    pub cos_dd: C64,
    /// `(sin Ω̄2 t/Ω̄2 − sin Ω̄1 t/Ω̄1)/(Ω̄2² − Ω̄1²)`.
    pub sin_dd: C64,
}

/// `(cos a t − cos b t)/(a² − b²)` written as a product of sincs so that it
/// stays accurate when the two frequencies coincide.
fn cos_divided_difference(w1: C64, w2: C64, split: C64, t: f64) -> C64 {
    let b = if (w2 + w1).norm() >= (w2 - w1).norm() { w1 } else { -w1 };
    let sum = w2 + b;
    let diff = if sum.norm() > 0.0 { split / sum } else { ZERO };
    -sinc(sum * (0.5 * t)) * sinc(diff * (0.5 * t)) * (0.5 * t * t)
}

/// Derivative of `μ ↦ sin(√μ t)/√μ`.
fn sin_over_derivative(mu: C64, t: f64) -> C64 {
    let z = mu.sqrt() * t;
    if z.norm() < 0.5 {
        let z2 = z * z;
        let mut term_pow = ONE;
        let mut fact = 6.0; // (2k+1)! at k = 1
        let mut acc = ZERO;
        for k in 1..=14usize {
            let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
            acc += term_pow * (sign * k as f64 / fact);
            term_pow *= z2;
            fact *= ((2 * k + 2) * (2 * k + 3)) as f64;
        }
        acc * t.powi(3)
    } else {
        (z.cos() - z.sin() / z) * t / (mu * 2.0)
    }
}

fn sin_divided_difference(spec: &SpectralData, s1: C64, s2: C64, t: f64) -> C64 {
    let split = spec.split;
    if split.norm() * t * t > 1.3e-4 {
        (s2 - s1) / split
    } else {
        let mid = (spec.omega_bar_1_sq() + spec.omega_bar_2_sq()) * 0.5;
        sin_over_derivative(mid, t)
    }
}

pub fn basis_functions(spec: &SpectralData, t: f64) -> BasisFunctions {
    let (w1, w2) = (spec.omega_bar_1, spec.omega_bar_2);
    let c1 = (w1 * t).cos();
    let c2 = (w2 * t).cos();
    let s1 = sin_over(w1, t);
    let s2 = sin_over(w2, t);
    let cos_dd = cos_divided_difference(w1, w2, spec.split, t);
    let sin_dd = sin_divided_difference(spec, s1, s2, t);
    let half_gap = 0.5 * spec.gap();
    let avg_c = (c1 + c2) * 0.5;
    let avg_s = (s1 + s2) * 0.5;
    BasisFunctions {
        t,
        f1: avg_c - cos_dd * half_gap,
        f2: avg_c + cos_dd * half_gap,
        g1fn: avg_s - sin_dd * half_gap,
        g2fn: avg_s + sin_dd * half_gap,
        cfn: cos_dd * spec.g1,
        sfn: sin_dd * spec.g1,
        cos_dd,
        sin_dd,
    }
}

/// Coefficients of the linear input–output map
/// `A(t) = K1 A + L1 A† + M1 B + N1 B†`, `B(t) = K2 B + L2 B† + M2 A + N2 A†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionCoefficients {
    pub t: f64,
    pub k1: C64,
    pub l1: C64,
    pub m1: C64,
    pub n1: C64,
    pub k2: C64,
    pub l2: C64,
    pub m2: C64,
    pub n2: C64,
}

/// The four coefficients that feed one output mode: own-mode `k, l` and
/// cross-mode `m, n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients {
    pub k: C64,
    pub l: C64,
    pub m: C64,
    pub n: C64,
}

impl EvolutionCoefficients {
    pub fn identity(t: f64) -> Self {
        Self { t, k1: ONE, l1: ZERO, m1: ZERO, n1: ZERO, k2: ONE, l2: ZERO, m2: ZERO, n2: ZERO }
    }

    pub fn mode(&self, mode: Mode) -> ModeCoefficients {
        match mode {
            Mode::One => ModeCoefficients { k: self.k1, l: self.l1, m: self.m1, n: self.n1 },
            Mode::Two => ModeCoefficients { k: self.k2, l: self.l2, m: self.m2, n: self.n2 },
        }
    }

    /// Coefficients seen after relabelling the waveguides.
    pub fn swapped(&self) -> Self {
        Self {
            t: self.t,
            k1: self.k2,
            l1: self.l2,
            m1: self.m2,
            n1: self.n2,
            k2: self.k1,
            l2: self.l1,
            m2: self.m1,
            n2: self.n1,
        }
    }

    /// Transfer matrix acting on `(A, A†, B, B†)`.
    pub fn transfer_matrix(&self) -> [[C64; 4]; 4] {
        let c = |z: C64| z.conj();
        [
            [self.k1, self.l1, self.m1, self.n1],
            [c(self.l1), c(self.k1), c(self.n1), c(self.m1)],
            [self.m2, self.n2, self.k2, self.l2],
            [c(self.n2), c(self.m2), c(self.l2), c(self.k2)],
        ]
    }

    /// Inverse of [`transfer_matrix`](Self::transfer_matrix): rows give the input
    /// operators in terms of the outputs. Uses `T⁻¹ = G T† G` with `G = diag(1,−1,1,−1)`.
    pub fn inverse_transfer_matrix(&self) -> [[C64; 4]; 4] {
        let t = self.transfer_matrix();
        let sign = [1.0, -1.0, 1.0, -1.0];
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = t[j][i].conj() * (sign[i] * sign[j]);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values().iter().zip(other.values().iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn values(&self) -> [C64; 8] {
        [self.k1, self.l1, self.m1, self.n1, self.k2, self.l2, self.m2, self.n2]
    }

    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|z| z.is_finite())
    }
}

/// Evaluates the closed form without any consistency check.
pub fn closed_form_coefficients(spec: &SpectralData, t: f64) -> EvolutionCoefficients {
    let b = basis_functions(spec, t);
    let (lp, lm) = (spec.lambda_plus, spec.lambda_minus);
    let (kp, km) = (spec.k_plus, spec.k_minus);
    let (jp, jm) = (spec.j_plus, spec.j_minus);
    let (g1, g2) = (spec.g1, spec.g2);
    let (dc, ds) = (b.cos_dd, b.sin_dd);
    let half_i = I * 0.5;

    let k1 = b.f1 - half_i * (b.g1fn * (kp + km) + ds * (lp * g2 + lm * g1));
    let l1 = -half_i * (b.g1fn * (kp - km) + ds * (lp * g2 - lm * g1));
    let m1 = (dc * (g1 + g2) - I * (b.g1fn * (lp + lm) + ds * (jp * g2 + jm * g1))) * 0.5;
    let n1 = (dc * (g1 - g2) - I * (b.g1fn * (lp - lm) + ds * (jp * g2 - jm * g1))) * 0.5;

    let k2 = b.f2 - half_i * (b.g2fn * (jp + jm) + ds * (lp * g1 + lm * g2));
    let l2 = -half_i * (b.g2fn * (jp - jm) + ds * (lp * g1 - lm * g2));
    let m2 = (dc * (g1 + g2) - I * (b.g2fn * (lp + lm) + ds * (kp * g1 + km * g2))) * 0.5;
    let n2 = (dc * (g2 - g1) - I * (b.g2fn * (lp - lm) + ds * (kp * g1 - km * g2))) * 0.5;

    EvolutionCoefficients { t, k1, l1, m1, n1, k2, l2, m2, n2 }
}

/// Exact coefficients at time `t`, refused if they fail the symplectic check.
pub fn evolution_coefficients(params: &CouplerParams, t: f64) -> Result<EvolutionCoefficients> {
    params.validate()?;
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("time must be finite, got {t}")));
    }
    let spec = derive_spectral(params);
    let coeffs = closed_form_coefficients(&spec, t);
    let residual = check_symplectic(&coeffs).max_relative();
    // A NaN residual must also fail.
    if !coeffs.is_finite() || residual.is_nan() || residual > SYMPLECTIC_TOL {
        return Err(Error::BranchAmbiguity { residual, tolerance: SYMPLECTIC_TOL });
    }
    Ok(coeffs)
}

/// Residuals of the three commutator-preservation identities.
///
/// `absolute` holds `|lhs − rhs|`. `relative` divides by the magnitude of the
/// largest term entering each identity (floored at one), which is the meaningful
/// measure once the coefficients grow exponentially.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticResidual {
    pub absolute: [f64; 3],
    pub relative: [f64; 3],
}

impl SymplecticResidual {
    pub fn max_absolute(&self) -> f64 {
        self.absolute.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_relative(&self) -> f64 {
        self.relative.iter().copied().fold(0.0, f64::max)
    }
}

pub fn check_symplectic(c: &EvolutionCoefficients) -> SymplecticResidual {
    let norm_identity = |k: C64, l: C64, m: C64, n: C64| {
        let terms = [k.norm_sqr(), m.norm_sqr(), l.norm_sqr(), n.norm_sqr()];
        let value = terms[0] + terms[1] - terms[2] - terms[3] - 1.0;
        (value.abs(), terms.iter().sum::<f64>())
    };
    let (r1, s1) = norm_identity(c.k1, c.l1, c.m1, c.n1);
    let (r2, s2) = norm_identity(c.k2, c.l2, c.m2, c.n2);
    let (ra, sa) = (r1.max(r2), s1.max(s2));

    let tb = [c.k1 * c.n2, c.m1 * c.l2, c.n1 * c.k2, c.l1 * c.m2];
    let rb = (tb[0] + tb[1] - tb[2] - tb[3]).norm();
    let sb: f64 = tb.iter().map(|z| z.norm()).sum();

    let tc = [c.k1 * c.m2.conj(), c.m1 * c.k2.conj(), c.l1 * c.n2.conj(), c.n1 * c.l2.conj()];
    let rc = (tc[0] + tc[1] - tc[2] - tc[3]).norm();
    let sc: f64 = tc.iter().map(|z| z.norm()).sum();

    SymplecticResidual { absolute: [ra, rb, rc], relative: [ra / sa.max(1.0), rb / sb.max(1.0), rc / sc.max(1.0)] }
}

/// Residual of `T G T† = G`, `G = diag(1,−1,1,−1)`, relative to `max(1, ‖T‖²)`.
pub fn transfer_metric_residual(c: &EvolutionCoefficients) -> f64 {
    let t = c.transfer_matrix();
    let sign = [1.0, -1.0, 1.0, -1.0];
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = ZERO;
            let mut mag = 0.0;
            for k in 0..4 {
                let term = t[i][k] * t[j][k].conj() * sign[k];
                acc += term;
                mag += term.norm();
            }
            let target = if i == j { sign[i] } else { 0.0 };
            worst = worst.max((acc - target).norm());
            scale = scale.max(mag);
        }
    }
    worst / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    Oscillatory,
    Amplifying,
    Mixed,
}

/// Character of one squared dressed frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    RealNonNegative,
    RealNegative,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regime {
    pub tag: RegimeKind,
    /// Classification of `Ω̄1²` and `Ω̄2²`.
    pub detail: [BranchKind; 2],
}

fn branch_kind(mu: C64) -> BranchKind {
    if mu.im.abs() > 1e-12 * mu.norm().max(1.0) {
        BranchKind::Complex
    } else if mu.re < 0.0 {
        BranchKind::RealNegative
    } else {
        BranchKind::RealNonNegative
    }
}

pub fn classify_regime(spec: &SpectralData) -> Regime {
    let detail = [branch_kind(spec.omega_bar_1_sq()), branch_kind(spec.omega_bar_2_sq())];
    let tag = if detail.iter().all(|b| *b == BranchKind::RealNonNegative) {
        RegimeKind::Oscillatory
    } else if detail.contains(&BranchKind::RealNegative) {
        RegimeKind::Amplifying
    } else {
        RegimeKind::Mixed
    };
    Regime { tag, detail }
}
