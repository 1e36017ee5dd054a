//! Phase-space grids, sampled quasiprobability fields and their moments.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numeric::linspace;
use crate::state::{InputState, Selection};

/// Default tolerance on the Riemann-sum normalization of an emitted field.
pub const NORMALIZATION_TOL: f64 = 1e-3;

/// Rectangle of one mode's phase space, sampled uniformly including its edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub n_re: usize,
    pub n_im: usize,
}

impl ModeGrid {
    /// `[−extent, extent]²` with `n` points per axis.
    pub fn square(extent: f64, n: usize) -> Self {
        Self { re_min: -extent, re_max: extent, im_min: -extent, im_max: extent, n_re: n, n_im: n }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !finite || self.re_max <= self.re_min || self.im_max <= self.im_min {
            return Err(Error::InvalidInput("grid bounds must be finite and increasing".into()));
        }
        if self.n_re < 2 || self.n_im < 2 {
            return Err(Error::InvalidInput("grid needs at least two samples per axis".into()));
        }
        Ok(())
    }

    pub fn re_axis(&self) -> Vec<f64> {
        linspace(self.re_min, self.re_max, self.n_re)
    }

    pub fn im_axis(&self) -> Vec<f64> {
        linspace(self.im_min, self.im_max, self.n_im)
    }

    pub fn cell_area(&self) -> f64 {
        (self.re_max - self.re_min) / (self.n_re - 1) as f64 * (self.im_max - self.im_min) / (self.n_im - 1) as f64
    }

    /// Largest `|α|` on the rectangle.
    pub fn radius(&self) -> f64 {
        let x = self.re_min.abs().max(self.re_max.abs());
        let y = self.im_min.abs().max(self.im_max.abs());
        x.hypot(y)
    }
}

/// One rectangle per selected mode. Values on the grid are stored row-major in
/// `(re1, im1[, re2, im2])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    pub modes: Vec<ModeGrid>,
}

impl PhaseSpaceGrid {
    pub fn single(grid: ModeGrid) -> Self {
        Self { modes: vec![grid] }
    }

    pub fn joint(first: ModeGrid, second: ModeGrid) -> Self {
        Self { modes: vec![first, second] }
    }

    pub fn validate_for(&self, selection: Selection) -> Result<()> {
        let want = match selection {
            Selection::Single(_) => 1,
            Selection::Joint => 2,
        };
        if self.modes.len() != want {
            return Err(Error::InvalidInput(format!(
                "selection needs {want} grid rectangle(s), got {}",
                self.modes.len()
            )));
        }
        self.modes.iter().try_for_each(ModeGrid::validate)
    }

    /// Axis samples in storage order `re1, im1[, re2, im2]`.
    pub fn axes(&self) -> Vec<Vec<f64>> {
        self.modes.iter().flat_map(|g| [g.re_axis(), g.im_axis()]).collect()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.modes.iter().flat_map(|g| [g.n_re, g.n_im]).collect()
    }

    pub fn len(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.modes.iter().map(ModeGrid::cell_area).product()
    }

    /// Phase-space amplitudes of every sample, in storage order.
    pub fn points(&self) -> Vec<Vec<C64>> {
        let axes = self.axes();
        let shape = self.shape();
        let total: usize = shape.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..total {
            let p = (0..self.modes.len())
                .map(|m| C64::new(axes[2 * m][idx[2 * m]], axes[2 * m + 1][idx[2 * m + 1]]))
                .collect();
            out.push(p);
            for d in (0..shape.len()).rev() {
                idx[d] += 1;
                if idx[d] < shape[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Transform,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Transform => "transform",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldMeta {
    pub state: InputState,
    pub selection: Selection,
    pub s: f64,
    pub t: f64,
    pub method: Method,
    /// Riemann sum of the values times the cell volume.
    pub normalization: f64,
    pub normalization_tol: f64,
    /// Transform only: extent of the ζ box and final step.
    pub extent: Option<f64>,
    pub step: Option<f64>,
    /// Transform only: last grid-refinement change in the values.
    pub error_estimate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiField {
    pub grid: PhaseSpaceGrid,
    pub values: Vec<f64>,
    pub meta: FieldMeta,
}

impl QuasiField {
    pub(crate) fn assemble(
        grid: PhaseSpaceGrid,
        values: Vec<f64>,
        state: InputState,
        selection: Selection,
        s: f64,
        t: f64,
        method: Method,
    ) -> Self {
        let normalization = values.iter().sum::<f64>() * grid.cell_volume();
        let meta = FieldMeta {
            state,
            selection,
            s,
            t,
            method,
            normalization,
            normalization_tol: NORMALIZATION_TOL,
            extent: None,
            step: None,
            error_estimate: None,
        };
        Self { grid, values, meta }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_normalized(&self) -> bool {
        (self.meta.normalization - 1.0).abs() <= self.meta.normalization_tol
    }

    pub fn max_abs_diff(&self, other: &QuasiField) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// `∫ W Π_j α_j*^{m_j} α_j^{n_j}` by Riemann sum; `orders[j] = (m_j, n_j)`.
///
/// The result is the s-ordered moment of the field's ordering parameter. For
/// `(1, 1)` it equals `⟨a†a⟩ + (1 − s)/2`.
pub fn moments_from_field(field: &QuasiField, orders: &[(u32, u32)]) -> Result<C64> {
    if orders.len() != field.grid.modes.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} order pairs, got {}",
            field.grid.modes.len(),
            orders.len()
        )));
    }
    let mut acc = C64::new(0.0, 0.0);
    for (p, w) in field.grid.points().iter().zip(&field.values) {
        let mut term = C64::new(*w, 0.0);
        for (a, &(m, n)) in p.iter().zip(orders) {
            term *= a.conj().powu(m) * a.powu(n);
        }
        acc += term;
    }
    Ok(acc * field.grid.cell_volume())
}

/// Converts an s-ordered `⟨a†a⟩` moment to the normally ordered photon number.
pub fn normal_ordered_number(s_ordered: f64, s: f64) -> f64 {
    s_ordered - 0.5 * (1.0 - s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_follow_storage_order() {
        let g = PhaseSpaceGrid::joint(ModeGrid::square(1.0, 2), ModeGrid::square(2.0, 3));
        let p = g.points();
        assert_eq!(p.len(), 36);
        assert_eq!(p[0], vec![C64::new(-1.0, -1.0), C64::new(-2.0, -2.0)]);
        assert_eq!(p[1], vec![C64::new(-1.0, -1.0), C64::new(-2.0, 0.0)]);
        assert_eq!(p[3], vec![C64::new(-1.0, -1.0), C64::new(0.0, -2.0)]);
        assert_eq!(p[9], vec![C64::new(-1.0, 1.0), C64::new(-2.0, -2.0)]);
    }

    #[test]
    fn grid_validation() {
        let g = PhaseSpaceGrid::single(ModeGrid::square(1.0, 1));
        assert!(g.validate_for(Selection::Single(crate::state::Mode::One)).is_err());
        let g = PhaseSpaceGrid::single(ModeGrid::square(1.0, 5));
        assert!(g.validate_for(Selection::Joint).is_err());
        assert!((g.cell_volume() - 0.25).abs() < 1e-15);
    }
}
