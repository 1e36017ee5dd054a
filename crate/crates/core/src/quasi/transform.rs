//! Quasiprobabilities by direct numerical Fourier transform of the
//! characteristic function.
//!
//! `W(α) = π^{-M} ∫ C(ζ) Π_j exp(α_j ζ_j* − α_j* ζ_j) d²ζ_j`, evaluated with the
//! trapezoid rule on a symmetric box. Writing `ζ = u + i v`, `α = x + i y`, the
//! kernel factorizes as `exp(2i y u) exp(−2i x v)`, so each axis is contracted
//! separately.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::coupler::EvolutionCoefficients;
use crate::error::{Error, Result};
use crate::quasi::charfn::{char_fn, zeta_pair};
use crate::quasi::field::{Method, PhaseSpaceGrid, QuasiField};
use crate::state::{InputState, Selection};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformOptions {
    /// Largest `|C|` tolerated on the boundary of the `ζ` box.
    pub boundary_tol: f64,
    pub initial_extent: f64,
    pub max_extent: f64,
    /// Initial trapezoid step; halved until successive fields agree.
    pub initial_step: f64,
    pub max_refinements: usize,
    /// Stop refining once successive fields differ by less than this.
    pub convergence_tol: f64,
}

impl TransformOptions {
    pub fn for_selection(selection: Selection) -> Self {
        match selection {
            Selection::Single(_) => Self {
                boundary_tol: 1e-10,
                initial_extent: 2.0,
                max_extent: 40.0,
                initial_step: 0.2,
                max_refinements: 4,
                convergence_tol: 1e-10,
            },
            Selection::Joint => Self {
                boundary_tol: 1e-10,
                initial_extent: 2.0,
                max_extent: 12.0,
                initial_step: 0.4,
                max_refinements: 2,
                convergence_tol: 1e-8,
            },
        }
    }
}

/// Samples `|C|` on the faces of the box `[−z, z]^{2M}`.
fn boundary_max(f: &dyn Fn(&[C64]) -> C64, dims: usize, z: f64) -> f64 {
    let per_axis: usize = if dims == 2 { 81 } else { 11 };
    let nodes: Vec<f64> = (0..per_axis).map(|i| -z + 2.0 * z * i as f64 / (per_axis - 1) as f64).collect();
    let mut worst: f64 = 0.0;
    let mut coord = vec![0.0; dims];
    for face in 0..dims {
        for side in [-z, z] {
            let free = dims - 1;
            let total = per_axis.pow(free as u32);
            for idx in 0..total {
                let mut rem = idx;
                let mut k = 0;
                for (d, c) in coord.iter_mut().enumerate() {
                    if d == face {
                        *c = side;
                    } else {
                        *c = nodes[rem % per_axis];
                        rem /= per_axis;
                        k += 1;
                    }
                }
                debug_assert_eq!(k, free);
                let zeta: Vec<C64> = coord.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
                let v = f(&zeta).norm();
                worst = if v.is_finite() { worst.max(v) } else { f64::INFINITY };
            }
        }
    }
    worst
}

/// Kernel matrix `K[o][i] = exp(sign · 2i · out_o · node_i)`, row-major.
fn kernel(out: &[f64], nodes: &[f64], sign: f64) -> Vec<C64> {
    let mut k = Vec::with_capacity(out.len() * nodes.len());
    for &o in out {
        for &t in nodes {
            k.push(C64::from_polar(1.0, sign * 2.0 * o * t));
        }
    }
    k
}

/// Contracts `c[v][u]` (both of length `n`) to `w[x][y]` for one mode.
fn contract_mode(c: &[C64], n: usize, kx: &[C64], nx: usize, ky: &[C64], ny: usize, out: &mut [C64]) {
    let mut tmp = vec![C64::new(0.0, 0.0); n * ny];
    for v in 0..n {
        let row = &c[v * n..(v + 1) * n];
        for y in 0..ny {
            let krow = &ky[y * n..(y + 1) * n];
            tmp[v * ny + y] = row.iter().zip(krow).map(|(a, b)| a * b).sum();
        }
    }
    for x in 0..nx {
        let krow = &kx[x * n..(x + 1) * n];
        for y in 0..ny {
            out[x * ny + y] = (0..n).map(|v| krow[v] * tmp[v * ny + y]).sum();
        }
    }
}

/// One trapezoid evaluation on `[−z, z]` with `n` nodes per axis.
fn trapezoid(f: &dyn Fn(&[C64]) -> C64, grid: &PhaseSpaceGrid, z: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * z / (n - 1) as f64;
    let nodes: Vec<f64> = (0..n).map(|i| -z + h * i as f64).collect();
    let axes = grid.axes();
    let kernels: Vec<(Vec<C64>, Vec<C64>)> = (0..grid.modes.len())
        .map(|m| (kernel(&axes[2 * m], &nodes, -1.0), kernel(&axes[2 * m + 1], &nodes, 1.0)))
        .collect();
    let shape = grid.shape();
    // Trapezoid end weights of one half.
    let weight = |i: usize| if i == 0 || i == n - 1 { 0.5 } else { 1.0 };

    match grid.modes.len() {
        1 => {
            let mut c = vec![C64::new(0.0, 0.0); n * n];
            for v in 0..n {
                for u in 0..n {
                    c[v * n + u] = f(&[C64::new(nodes[u], nodes[v])]) * (weight(u) * weight(v));
                }
            }
            let mut out = vec![C64::new(0.0, 0.0); shape[0] * shape[1]];
            contract_mode(&c, n, &kernels[0].0, shape[0], &kernels[0].1, shape[1], &mut out);
            let scale = h * h / (PI * PI);
            out.iter().map(|w| w.re * scale).collect()
        }
        _ => {
            let inner = shape[2] * shape[3];
            // partial[v1][u1][x2·ny2 + y2]
            let mut partial = vec![C64::new(0.0, 0.0); n * n * inner];
            let mut slice = vec![C64::new(0.0, 0.0); n * n];
            for v1 in 0..n {
                for u1 in 0..n {
                    let z1 = C64::new(nodes[u1], nodes[v1]);
                    let w1 = weight(u1) * weight(v1);
                    for v2 in 0..n {
                        for u2 in 0..n {
                            slice[v2 * n + u2] =
                                f(&[z1, C64::new(nodes[u2], nodes[v2])]) * (w1 * weight(u2) * weight(v2));
                        }
                    }
                    let dst = &mut partial[(v1 * n + u1) * inner..(v1 * n + u1 + 1) * inner];
                    contract_mode(&slice, n, &kernels[1].0, shape[2], &kernels[1].1, shape[3], dst);
                }
            }
            let (kx, ky) = &kernels[0];
            let (nx, ny) = (shape[0], shape[1]);
            let mut tmp = vec![C64::new(0.0, 0.0); n * ny * inner];
            for v1 in 0..n {
                for y in 0..ny {
                    let dst = &mut tmp[(v1 * ny + y) * inner..(v1 * ny + y + 1) * inner];
                    for u1 in 0..n {
                        let k = ky[y * n + u1];
                        let src = &partial[(v1 * n + u1) * inner..(v1 * n + u1 + 1) * inner];
                        dst.iter_mut().zip(src).for_each(|(d, s)| *d += k * s);
                    }
                }
            }
            let mut out = vec![C64::new(0.0, 0.0); nx * ny * inner];
            for x in 0..nx {
                for v1 in 0..n {
                    let k = kx[x * n + v1];
                    for y in 0..ny {
                        let src = &tmp[(v1 * ny + y) * inner..(v1 * ny + y + 1) * inner];
                        let dst = &mut out[(x * ny + y) * inner..(x * ny + y + 1) * inner];
                        dst.iter_mut().zip(src).for_each(|(d, s)| *d += k * s);
                    }
                }
            }
            let scale = (h * h / (PI * PI)).powi(2);
            out.iter().map(|w| w.re * scale).collect()
        }
    }
}

/// Transforms an arbitrary characteristic function onto `grid`.
///
/// Returns the values, the box half-width, the final step and the last
/// refinement change.
pub fn transform_char_fn(
    f: &dyn Fn(&[C64]) -> C64,
    grid: &PhaseSpaceGrid,
    opts: &TransformOptions,
) -> Result<(Vec<f64>, f64, f64, f64)> {
    let dims = 2 * grid.modes.len();
    let mut z = opts.initial_extent;
    loop {
        let edge = boundary_max(f, dims, z);
        if edge < opts.boundary_tol {
            break;
        }
        if z >= opts.max_extent {
            return Err(Error::TruncatedTransform { boundary_value: edge, extent: z });
        }
        z = (z * 1.25).min(opts.max_extent);
    }
    let mut n = ((2.0 * z / opts.initial_step).ceil() as usize).max(8) + 1;
    let mut prev = trapezoid(f, grid, z, n);
    let mut change = f64::INFINITY;
    for _ in 0..opts.max_refinements {
        n = 2 * n - 1;
        let next = trapezoid(f, grid, z, n);
        change = prev.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prev = next;
        if change < opts.convergence_tol {
            break;
        }
    }
    Ok((prev, z, 2.0 * z / (n - 1) as f64, change))
}

/// s-parametrized quasiprobability of the output field by numerical transform.
pub fn quasi_transform(
    c: &EvolutionCoefficients,
    state: &InputState,
    selection: Selection,
    s: f64,
    grid: &PhaseSpaceGrid,
) -> Result<QuasiField> {
    quasi_transform_with(c, state, selection, s, grid, &TransformOptions::for_selection(selection))
}

pub fn quasi_transform_with(
    c: &EvolutionCoefficients,
    state: &InputState,
    selection: Selection,
    s: f64,
    grid: &PhaseSpaceGrid,
    opts: &TransformOptions,
) -> Result<QuasiField> {
    state.validate()?;
    grid.validate_for(selection)?;
    if !s.is_finite() || s > 1.0 {
        return Err(Error::InvalidInput(format!("ordering parameter s = {s} must lie in (−∞, 1]")));
    }
    zeta_pair(selection, &[C64::new(0.0, 0.0); 2])?;
    let f = |zeta: &[C64]| char_fn(c, state, selection, s, zeta).unwrap_or(C64::new(f64::NAN, 0.0));
    let (values, z, h, change) = transform_char_fn(&f, grid, opts)?;
    let mut field = QuasiField::assemble(grid.clone(), values, *state, selection, s, c.t, Method::Transform);
    field.meta.extent = Some(z);
    field.meta.step = Some(h);
    field.meta.error_estimate = Some(change);
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::field::ModeGrid;
    use crate::state::Mode;

    #[test]
    fn vacuum_wigner_is_gaussian() {
        let c = EvolutionCoefficients::identity(0.0);
        let grid = PhaseSpaceGrid::single(ModeGrid::square(2.0, 9));
        let f = quasi_transform(&c, &InputState::fock(0, 0), Selection::Single(Mode::One), 0.0, &grid).unwrap();
        for (p, w) in grid.points().iter().zip(&f.values) {
            let exact = 2.0 / PI * (-2.0 * p[0].norm_sqr()).exp();
            assert!((w - exact).abs() < 1e-10, "{w} vs {exact}");
        }
    }

    #[test]
    fn p_function_of_vacuum_is_truncated() {
        let c = EvolutionCoefficients::identity(0.0);
        let grid = PhaseSpaceGrid::single(ModeGrid::square(2.0, 5));
        let err = quasi_transform(&c, &InputState::fock(0, 0), Selection::Single(Mode::One), 1.0, &grid).unwrap_err();
        assert!(matches!(err, Error::TruncatedTransform { .. }));
    }
}
