//! Closed-form root sets of `f_{j,k}` on `[0, pi]`, plus a bisection root
//! finder used to cross-check them.

use std::f64::consts::PI;

use super::{check_j, eval_f, facet_functional};
use crate::angle::Angle;
use crate::curve::cosine_coords;
use crate::error::Result;

/// The `2k-3` roots of `f_{j,k}` in `[0, pi]`, sorted ascending.
///
/// For `j = 0`: the nodes `theta_1..theta_{k-1}` together with
/// `(2i-1)pi/(2k-3)`, `i = 1..k-2`. For `j >= 1`: `pi/2` together with
/// `i*pi/(2k-1)` for `i` in `1..=2k-2` except `2j` and `2k-1-2j`.
pub fn f_root_set(k: usize, j: usize) -> Result<Vec<Angle>> {
    check_j(k, j)?;
    let k = k as i64;
    let j = j as i64;
    let mut roots = Vec::new();
    if j == 0 {
        for i in 1..k {
            roots.push(Angle::rational(2 * i, 2 * k - 1)?);
        }
        for i in 1..k - 1 {
            roots.push(Angle::rational(2 * i - 1, 2 * k - 3)?);
        }
    } else {
        roots.push(Angle::rational(1, 2)?);
        for i in 1..=2 * k - 2 {
            if i != 2 * j && i != 2 * k - 1 - 2 * j {
                roots.push(Angle::rational(i, 2 * k - 1)?);
            }
        }
    }
    roots.sort_by(|a, b| a.to_radians().total_cmp(&b.to_radians()));
    Ok(roots)
}

/// Roots of `f` on `[lo, hi]` found by sign changes over `grid` intervals,
/// each refined by bisection until the bracket is narrower than `xtol`.
pub fn bisection_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid: usize, xtol: f64) -> Vec<f64> {
    let step = (hi - lo) / grid as f64;
    let positive = |v: f64| v >= 0.0;
    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=grid {
        let b = if i == grid { hi } else { lo + step * i as f64 };
        let fb = f(b);
        if positive(fa) != positive(fb) {
            let (mut x0, mut x1, mut f0) = (a, b, fa);
            while x1 - x0 > xtol {
                let mid = 0.5 * (x0 + x1);
                let fm = f(mid);
                if positive(fm) == positive(f0) {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            roots.push(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    roots
}

/// Central-difference derivative.
pub fn derivative_fd<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Cross-check of one closed-form root list against the bisection oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCheck {
    pub k: usize,
    pub j: usize,
    pub closed_form: Vec<Angle>,
    pub oracle: Vec<f64>,
    /// Largest `|f_{j,k}(r)|` over the closed-form roots.
    pub max_value: f64,
    /// Largest distance between matched closed-form and oracle roots
    /// (infinite when the counts differ).
    pub max_mismatch: f64,
    /// Smallest `|f'_{j,k}(r)|` by central differences.
    pub min_abs_derivative: f64,
}

impl RootCheck {
    pub fn run(k: usize, j: usize) -> Result<Self> {
        let closed_form = f_root_set(k, j)?;
        let h = facet_functional(k, j)?;
        let f = |t: f64| h.eval(&cosine_coords(k - 1, &Angle::Real(t)));
        let oracle = bisection_roots(f, 0.0, PI, 10_000, 1e-12);
        let mut max_value = 0.0f64;
        let mut min_abs_derivative = f64::INFINITY;
        for r in &closed_form {
            max_value = max_value.max(eval_f(k, j, r)?.abs());
            min_abs_derivative = min_abs_derivative.min(derivative_fd(f, r.to_radians(), 1e-6).abs());
        }
        let max_mismatch = if oracle.len() == closed_form.len() {
            closed_form
                .iter()
                .zip(&oracle)
                .map(|(c, o)| (c.to_radians() - o).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        Ok(RootCheck { k, j, closed_form, oracle, max_value, max_mismatch, min_abs_derivative })
    }

    pub fn passed(&self, tol_match: f64, tol_value: f64, tol_derivative: f64) -> bool {
        self.closed_form.len() == 2 * self.k - 3
            && self.max_mismatch < tol_match
            && self.max_value < tol_value
            && self.min_abs_derivative > tol_derivative
    }
}
