//! Geometry of the facet `{x_k = 1}` of `conv(C_k)`.
//!
//! The facet is the simplex `P_k`, spanned by `C_{k-1}` at `0` and at the
//! nodes `theta_j = 2j*pi/(2k-1)`. Replacing the vertex at `0` by the origin
//! `C_{k-1}(pi/2)` gives the simplex `Q_k`, which has the explicit facet
//! functionals `h_{j,k}`. Everything here lives in `R^{k-1}`, the facet
//! coordinates with the frozen `x_k = 1` dropped.

mod identities;
mod roots;

pub use identities::{trig_identity_check, trig_identity_instances, TrigIdentity};
pub use roots::{bisection_roots, derivative_fd, f_root_set, RootCheck};

use crate::angle::Angle;
use crate::curve::{cosine_coords, CurveKind, CurvePoint};
use crate::error::{invalid, Result};
use crate::tolerances::{RECONSTRUCTION, SIGN_DEAD_ZONE};

/// `h(x) = constant + coeffs . x`
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFunctional {
    pub coeffs: Vec<f64>,
    pub constant: f64,
}

impl AffineFunctional {
    pub fn new(coeffs: Vec<f64>, constant: f64) -> Self {
        AffineFunctional { coeffs, constant }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.coeffs.len());
        self.constant + self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<f64>()
    }
}

/// Explicit convex weights over a list of points.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCombination {
    pub weights: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

impl ConvexCombination {
    pub fn new(weights: Vec<f64>, points: Vec<Vec<f64>>) -> Self {
        assert_eq!(weights.len(), points.len());
        ConvexCombination { weights, points }
    }

    pub fn reconstruct(&self) -> Vec<f64> {
        let d = self.points.first().map_or(0, Vec::len);
        let mut out = vec![0.0; d];
        for (w, p) in self.weights.iter().zip(&self.points) {
            for (o, v) in out.iter_mut().zip(p) {
                *o += w * v;
            }
        }
        out
    }

    /// Max-norm distance between the reconstruction and `target`.
    pub fn residual(&self, target: &[f64]) -> f64 {
        self.reconstruct()
            .iter()
            .zip(target)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_valid(&self, target: &[f64], tol: f64) -> bool {
        self.weights.iter().all(|&w| w >= -tol)
            && (self.weight_sum() - 1.0).abs() <= tol
            && self.residual(target) <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexKind {
    P,
    Q,
}

/// One of the two simplices `P_k`, `Q_k` in `R^{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexSpec {
    pub k: usize,
    pub which: SimplexKind,
    pub vertices: Vec<CurvePoint>,
    /// Facet functionals `h_{0,k}, ..., h_{k-1,k}`; empty for `P_k`.
    pub facets: Vec<AffineFunctional>,
}

impl SimplexSpec {
    pub fn vertex_coords(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| v.coords.clone()).collect()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn check_j(k: usize, j: usize) -> Result<()> {
    check_k(k)?;
    if j >= k {
        return Err(invalid(format!("facet index j = {j} out of range 0..{k}")));
    }
    Ok(())
}

/// `[pi/2, 2pi/(2k-1), 4pi/(2k-1), ..., 2(k-1)pi/(2k-1)]`; index 0 is `pi/2`.
pub fn theta_nodes(k: usize) -> Result<Vec<Angle>> {
    check_k(k)?;
    let q = 2 * k as i64 - 1;
    let mut nodes = vec![Angle::rational(1, 2)?];
    for j in 1..k as i64 {
        nodes.push(Angle::rational(2 * j, q)?);
    }
    Ok(nodes)
}

fn node(k: usize, j: usize) -> Angle {
    if j == 0 {
        Angle::rational(1, 2).expect("valid")
    } else {
        Angle::rational(2 * j as i64, 2 * k as i64 - 1).expect("valid")
    }
}

fn facet_point(k: usize, theta: Angle) -> CurvePoint {
    CurvePoint {
        coords: cosine_coords(k - 1, &theta),
        source_angle: theta,
        curve: CurveKind::Cosine(k - 1),
    }
}

/// The facet functional `h_{j,k}` of `Q_k`.
pub fn facet_functional(k: usize, j: usize) -> Result<AffineFunctional> {
    check_j(k, j)?;
    if j == 0 {
        return Ok(AffineFunctional::new(vec![1.0; k - 1], 0.5));
    }
    let t = node(k, j);
    let coeffs = (1..k).map(|l| t.cos_mul(2 * l as i64 - 1) - 1.0).collect();
    Ok(AffineFunctional::new(coeffs, 0.0))
}

/// `f_{j,k}(theta) = h_{j,k}(C_{k-1}(theta))`.
pub fn eval_f(k: usize, j: usize, theta: &Angle) -> Result<f64> {
    let h = facet_functional(k, j)?;
    Ok(h.eval(&cosine_coords(k - 1, theta)))
}

/// `P_k`: vertices `C_{k-1}` at `0, theta_1, ..., theta_{k-1}`.
pub fn simplex_p(k: usize) -> Result<SimplexSpec> {
    check_k(k)?;
    let mut vertices = vec![facet_point(k, Angle::zero())];
    vertices.extend((1..k).map(|j| facet_point(k, node(k, j))));
    Ok(SimplexSpec { k, which: SimplexKind::P, vertices, facets: Vec::new() })
}

/// `Q_k`: vertices `C_{k-1}` at `theta_0 = pi/2, theta_1, ..., theta_{k-1}`,
/// with facet functionals `h_{j,k}`.
pub fn simplex_q(k: usize) -> Result<SimplexSpec> {
    check_k(k)?;
    let vertices = (0..k).map(|j| facet_point(k, node(k, j))).collect();
    let facets = (0..k).map(|j| facet_functional(k, j)).collect::<Result<_>>()?;
    Ok(SimplexSpec { k, which: SimplexKind::Q, vertices, facets })
}

/// One entry of the incidence table `f_{j,k}(theta_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceCheck {
    pub j: usize,
    pub i: usize,
    pub value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacetReport {
    pub k: usize,
    pub tol: f64,
    pub checks: Vec<IncidenceCheck>,
    /// Largest `|f_{j,k}(theta_i)|` over the off-diagonal pairs.
    pub max_residual: f64,
    /// Smallest diagonal value `f_{j,k}(theta_j)`.
    pub min_diagonal: f64,
}

impl FacetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks that `f_{j,k}` vanishes at every node but `theta_j` and is
/// positive (above `tol`) there, for every `j`.
pub fn verify_facet_description(k: usize, tol: f64) -> Result<FacetReport> {
    check_k(k)?;
    let nodes = theta_nodes(k)?;
    let mut checks = Vec::with_capacity(k * k);
    let mut max_residual = 0.0f64;
    let mut min_diagonal = f64::INFINITY;
    for j in 0..k {
        let h = facet_functional(k, j)?;
        for (i, t) in nodes.iter().enumerate() {
            let value = h.eval(&cosine_coords(k - 1, t));
            let pass = if i == j {
                min_diagonal = min_diagonal.min(value);
                value > tol
            } else {
                max_residual = max_residual.max(value.abs());
                value.abs() < tol
            };
            checks.push(IncidenceCheck { j, i, value, pass });
        }
    }
    Ok(FacetReport { k, tol, checks, max_residual, min_diagonal })
}

/// Writes the origin `C_{k-1}(pi/2)` as a convex combination of the
/// vertices of `P_k`: weight `1/(2k-1)` on `C_{k-1}(0)` and `2/(2k-1)` on
/// each `C_{k-1}(theta_j)`. This is the containment `Q_k` in `P_k`.
pub fn origin_witness(k: usize) -> Result<ConvexCombination> {
    let p = simplex_p(k)?;
    let denom = (2 * k - 1) as f64;
    let mut weights = vec![2.0 / denom; k];
    weights[0] = 1.0 / denom;
    let w = ConvexCombination::new(weights, p.vertex_coords());
    debug_assert!(w.residual(&vec![0.0; k - 1]) < RECONSTRUCTION);
    Ok(w)
}

/// Sign of `f_{j,k}(theta)` with a dead zone of `1e-12` mapped to zero.
pub fn sign_profile(k: usize, j: usize, theta: &Angle) -> Result<i8> {
    let v = eval_f(k, j, theta)?;
    Ok(if v.abs() < SIGN_DEAD_ZONE {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    })
}

/// The sign of `f_{j,k}` predicted on the windows next to `pi/2`:
/// `+1` for `j = 0` everywhere in `((k-1)pi/(2k-1), kpi/(2k-1))`; for
/// `j >= 1`, `(-1)^(k-1)` left of `pi/2` and `(-1)^k` right of it.
pub fn predicted_sign(k: usize, j: usize, theta: f64) -> Option<i8> {
    use std::f64::consts::PI;
    let q = (2 * k - 1) as f64;
    let lo = (k - 1) as f64 * PI / q;
    let hi = k as f64 * PI / q;
    if !(theta > lo && theta < hi) || (j > 0 && theta == PI / 2.0) {
        return None;
    }
    if j == 0 {
        return Some(1);
    }
    let left = theta < PI / 2.0;
    let exponent = if left { k - 1 } else { k };
    Some(if exponent % 2 == 0 { 1 } else { -1 })
}
