//! The symmetric trigonometric moment curve `SM_2k` and its cosine
//! projection `C_k`.

use crate::angle::Angle;
use crate::error::{invalid, Result};

/// Which curve produced a [`CurvePoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// `C_k(theta) = (cos theta, cos 3theta, ..., cos (2k-1)theta)` in `R^k`.
    Cosine(usize),
    /// `SM_2k(theta)`: the `k` odd cosines followed by the `k` odd sines.
    Symmetric(usize),
}

impl CurveKind {
    pub fn dimension(&self) -> usize {
        match *self {
            CurveKind::Cosine(k) => k,
            CurveKind::Symmetric(k) => 2 * k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub coords: Vec<f64>,
    pub source_angle: Angle,
    pub curve: CurveKind,
}

impl CurvePoint {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

fn odd(l: usize) -> i64 {
    2 * l as i64 - 1
}

/// Coordinates of `C_k(theta)`; `k = 0` yields the empty vector.
pub fn cosine_coords(k: usize, theta: &Angle) -> Vec<f64> {
    (1..=k).map(|l| theta.cos_mul(odd(l))).collect()
}

/// Coordinates of `C_k'(theta)`, component `l` is `-(2l-1) sin((2l-1)theta)`.
pub fn cosine_derivative(k: usize, theta: &Angle) -> Vec<f64> {
    (1..=k)
        .map(|l| -(odd(l) as f64) * theta.sin_mul(odd(l)))
        .collect()
}

/// Coordinates of `SM_2k(theta)`.
pub fn symmetric_coords(k: usize, theta: &Angle) -> Vec<f64> {
    let mut v = cosine_coords(k, theta);
    v.extend((1..=k).map(|l| theta.sin_mul(odd(l))));
    v
}

/// Evaluates `C_k` at `theta`.
///
/// `k = 1` is accepted because the facet geometry of `B_4` lives on `C_1`.
pub fn eval_c(k: usize, theta: &Angle) -> Result<CurvePoint> {
    if k == 0 {
        return Err(invalid("curve order k must be at least 1"));
    }
    Ok(CurvePoint {
        coords: cosine_coords(k, theta),
        source_angle: *theta,
        curve: CurveKind::Cosine(k),
    })
}

pub fn eval_c_prime(k: usize, theta: &Angle) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(invalid("curve order k must be at least 1"));
    }
    Ok(cosine_derivative(k, theta))
}

pub fn eval_sm(k: usize, theta: &Angle) -> Result<CurvePoint> {
    if k == 0 {
        return Err(invalid("curve order k must be at least 1"));
    }
    Ok(CurvePoint {
        coords: symmetric_coords(k, theta),
        source_angle: *theta,
        curve: CurveKind::Symmetric(k),
    })
}

/// Uniform grid `i*pi/m` for `i = 0..=m` as exact angles.
pub fn half_circle_grid(m: usize) -> Vec<Angle> {
    (0..=m)
        .map(|i| Angle::rational(i as i64, m as i64).expect("m > 0"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn cosine_curve_examples() {
        let half = Angle::rational(1, 2).unwrap();
        assert_eq!(eval_c(2, &half).unwrap().coords, vec![0.0, 0.0]);
        assert_eq!(eval_c(3, &Angle::zero()).unwrap().coords, vec![1.0, 1.0, 1.0]);
        let node = Angle::rational(2, 5).unwrap();
        let c = eval_c(2, &node).unwrap();
        assert!(close(&c.coords, &[0.309_017, -0.809_017], 1e-6));
        assert_eq!(c.curve, CurveKind::Cosine(2));
        assert!(eval_c(0, &node).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(eval_c_prime(2, &Angle::zero()).unwrap(), vec![0.0, 0.0]);
        let half = Angle::rational(1, 2).unwrap();
        assert_eq!(eval_c_prime(2, &half).unwrap(), vec![-1.0, 3.0]);
    }

    #[test]
    fn derivative_matches_central_difference_at_node() {
        let h = 1e-4;
        let t = 2.0 * std::f64::consts::PI / 5.0;
        let plus = cosine_coords(3, &Angle::radians(t + h).unwrap());
        let minus = cosine_coords(3, &Angle::radians(t - h).unwrap());
        let fd: Vec<f64> = plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect();
        let exact = eval_c_prime(3, &Angle::rational(2, 5).unwrap()).unwrap();
        let err = fd.iter().zip(&exact).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        assert!(err < 1e-6, "err = {err}");
    }

    #[test]
    fn symmetric_curve_examples() {
        let p = eval_sm(2, &Angle::zero()).unwrap();
        assert_eq!(p.coords, vec![1.0, 1.0, 0.0, 0.0]);
        assert_eq!(p.curve.dimension(), 4);
        let half = Angle::rational(1, 2).unwrap();
        assert_eq!(eval_sm(2, &half).unwrap().coords, vec![0.0, 0.0, 1.0, -1.0]);
    }

    proptest! {
        #[test]
        fn midpoint_identity(k in 1usize..=20, theta in 0.0f64..TAU) {
            let a = Angle::radians(theta).unwrap();
            let plus = symmetric_coords(k, &a);
            let minus = symmetric_coords(k, &a.neg());
            let c = cosine_coords(k, &a);
            for l in 0..k {
                prop_assert!((0.5 * plus[l] + 0.5 * minus[l] - c[l]).abs() < 1e-14);
                prop_assert!((0.5 * plus[k + l] + 0.5 * minus[k + l]).abs() < 1e-14);
            }
        }

        #[test]
        fn cosine_curve_is_bounded(k in 1usize..=30, theta in -100.0f64..100.0) {
            let c = cosine_coords(k, &Angle::radians(theta).unwrap());
            prop_assert!(c.iter().all(|x| x.abs() <= 1.0));
        }

        #[test]
        fn derivative_has_second_order_error(k in 1usize..=10, theta in 0.0f64..TAU) {
            let exact = cosine_derivative(k, &Angle::radians(theta).unwrap());
            let bound_scale = ((2 * k - 1) as f64).powi(3);
            for h in [1e-3, 1e-4] {
                let plus = cosine_coords(k, &Angle::radians(theta + h).unwrap());
                let minus = cosine_coords(k, &Angle::radians(theta - h).unwrap());
                for l in 0..k {
                    let fd = (plus[l] - minus[l]) / (2.0 * h);
                    prop_assert!((fd - exact[l]).abs() < 10.0 * h * h * bound_scale);
                }
            }
        }
    }
}
