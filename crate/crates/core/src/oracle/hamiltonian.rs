//! Effective Hamiltonian on the truncated two-mode Fock space.

use num_complex::Complex64 as C64;

use crate::coupler::CouplerParams;

/// `Δ1 n1 + Δ2 n2 + λ1(a1†² + a1²) + λ2(a2†² + a2²) + λ3(a1†a2 + a1a2†) + λ4(a1†a2† + a1a2)`
/// restricted to `n1, n2 ≤ cutoff`, stored row-wise. All matrix elements are real.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveHamiltonian {
    pub cutoff: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl EffectiveHamiltonian {
    pub fn new(params: &CouplerParams, cutoff: usize) -> Self {
        let side = cutoff + 1;
        let idx = |n1: usize, n2: usize| n1 * side + n2;
        let mut rows = vec![Vec::new(); side * side];
        let (d1, d2) = (params.delta1(), params.delta2());
        let sq = |x: usize| (x as f64).sqrt();
        let mut push = |r: usize, c: usize, v: f64| {
            if v != 0.0 {
                rows[r].push((c, v));
                if r != c {
                    rows[c].push((r, v));
                }
            }
        };
        for n1 in 0..side {
            for n2 in 0..side {
                let here = idx(n1, n2);
                push(here, here, d1 * n1 as f64 + d2 * n2 as f64);
                // Raising terms; the Hermitian partner is added by `push`.
                if n1 + 2 < side {
                    push(idx(n1 + 2, n2), here, params.lambda1 * sq((n1 + 1) * (n1 + 2)));
                }
                if n2 + 2 < side {
                    push(idx(n1, n2 + 2), here, params.lambda2 * sq((n2 + 1) * (n2 + 2)));
                }
                if n1 + 1 < side && n2 >= 1 {
                    push(idx(n1 + 1, n2 - 1), here, params.lambda3 * sq((n1 + 1) * n2));
                }
                if n1 + 1 < side && n2 + 1 < side {
                    push(idx(n1 + 1, n2 + 1), here, params.lambda4 * sq((n1 + 1) * (n2 + 1)));
                }
            }
        }
        for row in &mut rows {
            row.sort_by_key(|e| e.0);
        }
        Self { cutoff, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * (self.cutoff + 1) + n2
    }

    /// `out = H x`.
    pub fn apply(&self, x: &[C64], out: &mut [C64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(c, v)| x[c] * v).sum();
        }
    }

    pub fn element(&self, r: usize, c: usize) -> f64 {
        self.rows[r].iter().find(|e| e.0 == c).map_or(0.0, |e| e.1)
    }

    /// Spectral enclosure `[lo, hi]` from Gershgorin discs.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (r, row) in self.rows.iter().enumerate() {
            let mut diag = 0.0;
            let mut radius = 0.0;
            for &(c, v) in row {
                if c == r {
                    diag = v;
                } else {
                    radius += v.abs();
                }
            }
            lo = lo.min(diag - radius);
            hi = hi.max(diag + radius);
        }
        (lo, hi)
    }
}
