//! Small complex-analysis helpers shared by the closed-form evaluators.

use num_complex::Complex64 as C64;

/// Threshold on `|x|` below which `sin(x)/x` switches to its Taylor series.
pub const SINC_GUARD: f64 = 1e-4;

/// `sin(x)/x` for complex `x`, with a three-term series near the origin.
pub fn sinc(x: C64) -> C64 {
    if x.norm() < SINC_GUARD {
        let x2 = x * x;
        C64::new(1.0, 0.0) - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `sin(w t)/w`, equal to `t` at `w = 0`.
pub fn sin_over(w: C64, t: f64) -> C64 {
    sinc(w * t) * t
}

/// Evenly spaced points including both ends.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { end } else { start + step * i as f64 }).collect()
        }
    }
}

/// Natural log of `n!`.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Generalized binomial coefficient `C(a, k)` for real `a` and integer `k >= 0`.
pub fn binomial(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a - i as f64) / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_series_matches_direct_form_near_guard() {
        let x = C64::new(1.1e-4, 0.3e-4);
        let direct = x.sin() / x;
        assert!((sinc(x) - direct).norm() < 1e-15);
        assert_eq!(sin_over(C64::new(0.0, 0.0), 2.0), C64::new(2.0, 0.0));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        assert_eq!(binomial(6.0, 2), 15.0);
        assert_eq!(binomial(4.0, 0), 1.0);
        assert_eq!(binomial(3.0, 5), 0.0);
        assert!((factorial(5) - 120.0).abs() < 1e-12);
        assert!((ln_factorial(10) - factorial(10).ln()).abs() < 1e-12);
    }

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace(0.0, 1.0, 5);
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
    }
}
