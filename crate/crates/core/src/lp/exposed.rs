//! Exposing functionals for chords of `SM_2k`.

use std::f64::consts::TAU;

use super::program::{lp_solve, LinearProgram, LpStatus, Relation};
use crate::angle::Angle;
use crate::curve::symmetric_coords;
use crate::error::{invalid, Error, Result};
use crate::tolerances::CERTIFICATE_MARGIN;

/// A supporting hyperplane `h.x = level` touching `SM_2k` at both chord
/// endpoints, with every retained sample at least `margin` below it.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCertificate {
    pub normal: Vec<f64>,
    pub level: f64,
    pub margin: f64,
    pub samples_used: usize,
}

impl EdgeCertificate {
    /// `level - normal.x`; nonnegative on the curve for a valid certificate.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.level - self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
    }
}

/// Searches for an exposing functional of the chord `[SM(alpha), SM(beta)]`.
///
/// Maximizes the smallest slack `level - h.SM(t_i)` over `num_samples`
/// uniform samples on the circle, subject to `h.SM(alpha) = h.SM(beta) =
/// level`, zero slope and nonpositive curvature of `h.SM` at both
/// endpoints, and `|h_i| <= 1`. Samples within ten sample spacings of either
/// endpoint are left out. Returns `None` unless the optimal margin exceeds
/// `1e-7` and the functional stays below `level` on a grid eight times finer.
pub fn exposed_edge_certificate(
    k: usize,
    alpha: &Angle,
    beta: &Angle,
    num_samples: usize,
) -> Result<Option<EdgeCertificate>> {
    if k < 1 {
        return Err(invalid("k must be positive"));
    }
    if alpha == beta || alpha.arc_to(beta) < 1e-12 {
        return Err(invalid("chord endpoints must differ"));
    }
    if num_samples < 100 {
        return Err(invalid(format!("need at least 100 samples, got {num_samples}")));
    }
    let dim = 2 * k;
    let exclusion = 10.0 * TAU / num_samples as f64;
    let samples: Vec<Vec<f64>> = (0..num_samples)
        .map(|i| Angle::rational(2 * i as i64, num_samples as i64).expect("n > 0"))
        .filter(|t| t.arc_to(alpha) > exclusion && t.arc_to(beta) > exclusion)
        .map(|t| symmetric_coords(k, &t))
        .collect();
    if samples.is_empty() {
        return Err(invalid("exclusion zones cover every sample"));
    }

    // variables: h (dim), level, margin
    let mut obj = vec![0.0; dim + 2];
    obj[dim + 1] = 1.0;
    let mut lp = LinearProgram::maximize(obj);
    for i in 0..dim {
        lp.set_bound(i, -1.0, 1.0);
    }
    for end in [alpha, beta] {
        let mut row = symmetric_coords(k, end);
        row.push(-1.0);
        row.push(0.0);
        lp.add_constraint(row, Relation::Eq, 0.0);
        // t -> h.SM(t) peaks at the endpoint: zero slope, nonpositive curvature
        let (first, second) = symmetric_derivatives(k, end);
        lp.add_constraint([first, vec![0.0, 0.0]].concat(), Relation::Eq, 0.0);
        lp.add_constraint([second, vec![0.0, 0.0]].concat(), Relation::Le, 0.0);
    }
    for s in &samples {
        let mut row = s.clone();
        row.push(-1.0);
        row.push(1.0);
        lp.add_constraint(row, Relation::Le, 0.0);
    }
    let cert = lp_solve(&lp)?;
    if cert.status != LpStatus::Optimal {
        return Err(Error::Numerical(format!("edge LP ended {:?}", cert.status)));
    }
    let margin = cert.primal[dim + 1];
    if margin <= CERTIFICATE_MARGIN {
        return Ok(None);
    }
    let certificate = EdgeCertificate {
        normal: cert.primal[..dim].to_vec(),
        level: cert.primal[dim],
        margin,
        samples_used: samples.len(),
    };
    // The excluded windows are only covered by the endpoint conditions, so
    // the functional is re-checked on a grid eight times finer.
    let fine = 8 * num_samples as i64;
    let supports = (0..fine).all(|i| {
        let t = Angle::rational(2 * i, fine).expect("fine > 0");
        certificate.slack(&symmetric_coords(k, &t)) >= -VERIFY_SLACK
    });
    Ok(supports.then_some(certificate))
}

const VERIFY_SLACK: f64 = 1e-9;

/// First and second derivatives of `SM_2k` at `theta`.
fn symmetric_derivatives(k: usize, theta: &Angle) -> (Vec<f64>, Vec<f64>) {
    let mut first = Vec::with_capacity(2 * k);
    let mut second = Vec::with_capacity(2 * k);
    for l in 1..=k {
        let d = 2 * l as i64 - 1;
        first.push(-(d as f64) * theta.sin_mul(d));
        second.push(-((d * d) as f64) * theta.cos_mul(d));
    }
    for l in 1..=k {
        let d = 2 * l as i64 - 1;
        first.push(d as f64 * theta.cos_mul(d));
        second.push(-((d * d) as f64) * theta.sin_mul(d));
    }
    (first, second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn r(v: f64) -> Angle {
        Angle::radians(v).unwrap()
    }

    #[test]
    fn edge_regime_has_certificate() {
        let h = PI / 3.0 - 0.05;
        let c = exposed_edge_certificate(2, &r(-h), &r(h), 2000).unwrap().unwrap();
        assert!(c.margin > CERTIFICATE_MARGIN);
        assert!(c.normal.iter().all(|v| v.abs() <= 1.0 + 1e-12));
        let half = (4.0 * PI / 5.0 - 0.1) / 2.0;
        assert!(exposed_edge_certificate(3, &r(-half), &r(half), 2000).unwrap().is_some());
    }

    #[test]
    fn non_edge_regime_has_none() {
        let h = PI / 3.0 + 0.05;
        assert!(exposed_edge_certificate(2, &r(-h), &r(h), 2000).unwrap().is_none());
    }

    #[test]
    fn symmetric_in_endpoints() {
        let (a, b) = (r(0.4), r(2.0));
        let ab = exposed_edge_certificate(2, &a, &b, 1000).unwrap();
        let ba = exposed_edge_certificate(2, &b, &a, 1000).unwrap();
        assert_eq!(ab.is_some(), ba.is_some());
        assert!(ab.is_some());
    }

    #[test]
    fn preconditions() {
        assert!(exposed_edge_certificate(2, &r(0.0), &r(0.0), 1000).is_err());
        assert!(exposed_edge_certificate(2, &r(0.0), &r(1.0), 99).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let k = 3;
        let t = 0.7;
        let (d1, d2) = symmetric_derivatives(k, &r(t));
        let h = 1e-5;
        let p = symmetric_coords(k, &r(t + h));
        let m = symmetric_coords(k, &r(t - h));
        let c = symmetric_coords(k, &r(t));
        for i in 0..2 * k {
            assert!((d1[i] - (p[i] - m[i]) / (2.0 * h)).abs() < 1e-7);
            assert!((d2[i] - (p[i] - 2.0 * c[i] + m[i]) / (h * h)).abs() < 1e-3);
        }
    }
}
