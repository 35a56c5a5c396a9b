//! Convex-hull queries answered by linear programming.

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::program::{lp_solve, LinearProgram, LpCertificate, LpStatus, Relation};
use super::simplex::{solve_standard, StandardStatus};
use crate::error::{invalid, Error, Result};
use crate::geometry::{AffineFunctional, ConvexCombination};
use crate::tolerances::LP_FEASIBILITY;

/// A functional `h` with `h >= 0` on the hull and `h(query) = -margin`.
#[derive(Debug, Clone, PartialEq)]
pub struct Separator {
    pub functional: AffineFunctional,
    pub margin: f64,
}

/// Outcome of [`in_hull`]: interior and boundary points are both members.
#[derive(Debug, Clone, PartialEq)]
pub enum HullMembership {
    Member(ConvexCombination),
    Outside(Separator),
}

impl HullMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, HullMembership::Member(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HullVerdict {
    Interior(ConvexCombination),
    Boundary(ConvexCombination),
    Outside(Separator),
}

impl HullVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            HullVerdict::Interior(_) => "Interior",
            HullVerdict::Boundary(_) => "Boundary",
            HullVerdict::Outside(_) => "Outside",
        }
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, HullVerdict::Interior(_))
    }

    pub fn is_member(&self) -> bool {
        !matches!(self, HullVerdict::Outside(_))
    }
}

fn check_dims(query: &[f64], points: &[Vec<f64>]) -> Result<usize> {
    if points.is_empty() {
        return Err(invalid("point set is empty"));
    }
    let d = query.len();
    if d == 0 {
        return Err(invalid("query has dimension zero"));
    }
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
    }
    Ok(d)
}

/// Decides whether `query` is a convex combination of `points`.
///
/// Solves `min |r|_1` over `sum l_i p_i + r = query`, `sum l_i = 1`,
/// `l >= 0`. A residual at most `tol` yields the weights as witness; otherwise
/// the optimal dual multipliers form a separating functional whose margin
/// equals that residual.
pub fn in_hull(query: &[f64], points: &[Vec<f64>], tol: f64) -> Result<HullMembership> {
    let d = check_dims(query, points)?;
    let n = points.len();
    let cols = n + 2 * d;
    let mut a = vec![vec![0.0; cols]; d + 1];
    for (i, p) in points.iter().enumerate() {
        for r in 0..d {
            a[r][i] = p[r];
        }
        a[d][i] = 1.0;
    }
    for r in 0..d {
        a[r][n + r] = 1.0;
        a[r][n + d + r] = -1.0;
    }
    let mut b = query.to_vec();
    b.push(1.0);
    let mut c = vec![0.0; cols];
    for v in c.iter_mut().skip(n) {
        *v = 1.0;
    }
    let sol = solve_standard(&a, &b, &c)?;
    if sol.status != StandardStatus::Optimal {
        return Err(Error::Numerical(format!("hull LP ended {:?}", sol.status)));
    }
    if sol.objective <= tol {
        let mut weights = Vec::new();
        let mut support = Vec::new();
        for (i, &w) in sol.x[..n].iter().enumerate() {
            if w > 0.0 {
                weights.push(w);
                support.push(points[i].clone());
            }
        }
        return Ok(HullMembership::Member(ConvexCombination::new(weights, support)));
    }
    let g = &sol.y[..d];
    let g0 = sol.y[d];
    // g.p_i + g0 <= 0 on every point, g.query + g0 = residual.
    let functional = AffineFunctional::new(g.iter().map(|v| -v).collect(), -g0);
    let margin = -functional.eval(query);
    Ok(HullMembership::Outside(Separator { functional, margin }))
}

/// Affine rank of a point set (rank of the centered coordinate matrix).
pub fn affine_rank(points: &[Vec<f64>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let d = points[0].len();
    let base = &points[0];
    let m = DMatrix::from_fn(points.len() - 1, d, |i, j| points[i + 1][j] - base[j]);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-10 * max).count()
}

/// Classifies `query` against `conv(points)` by axis probes.
///
/// `Interior` iff `query +- delta*e_i` are members for every coordinate `i`;
/// `Boundary` iff `query` is a member but some probe is not.
pub fn interiority_probe(query: &[f64], points: &[Vec<f64>], delta: f64, tol: f64) -> Result<HullVerdict> {
    let d = check_dims(query, points)?;
    if !delta.is_finite() || delta <= 0.0 {
        return Err(invalid(format!("probe step must be positive, got {delta}")));
    }
    let rank = affine_rank(points);
    if rank < d {
        return Err(Error::Degenerate { rank, dim: d });
    }
    let witness = match in_hull(query, points, tol)? {
        HullMembership::Outside(sep) => return Ok(HullVerdict::Outside(sep)),
        HullMembership::Member(w) => w,
    };
    let probes: Vec<Vec<f64>> = (0..2 * d)
        .map(|i| {
            let mut p = query.to_vec();
            p[i / 2] += if i % 2 == 0 { delta } else { -delta };
            p
        })
        .collect();
    let inside: Vec<bool> = probes
        .par_iter()
        .map(|p| in_hull(p, points, tol).map(|m| m.is_member()))
        .collect::<Result<_>>()?;
    if inside.iter().all(|&b| b) {
        Ok(HullVerdict::Interior(witness))
    } else {
        Ok(HullVerdict::Boundary(witness))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentConeOutcome {
    pub interior: bool,
    /// Largest step `eps` with `vertex + eps*direction` in the facet.
    pub epsilon_star: f64,
    pub certificate: LpCertificate,
}

/// Tests whether `direction` lies in the relative interior of the tangent
/// cone of `conv(facet_vertices)` at `vertex`.
///
/// Maximizes `eps` such that `vertex + eps*direction` is a convex combination
/// of the facet vertices, then probes the point at `eps*/2` for interiority
/// inside the affine hull of the facet.
pub fn tangent_cone_interior(
    vertex: &[f64],
    direction: &[f64],
    facet_vertices: &[Vec<f64>],
) -> Result<TangentConeOutcome> {
    let d = check_dims(vertex, facet_vertices)?;
    if direction.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: direction.len() });
    }
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm.is_nan() || norm <= 1e-12 {
        return Err(invalid("direction must be nonzero"));
    }
    let on_facet = facet_vertices
        .iter()
        .any(|v| v.iter().zip(vertex).all(|(a, b)| (a - b).abs() <= LP_FEASIBILITY));
    if !on_facet {
        return Err(invalid("vertex is not among the facet vertices"));
    }

    let m = facet_vertices.len();
    let mut obj = vec![0.0; m + 1];
    obj[m] = 1.0;
    let mut lp = LinearProgram::maximize(obj);
    for j in 0..=m {
        lp.set_bound(j, 0.0, f64::INFINITY);
    }
    for r in 0..d {
        let mut row: Vec<f64> = facet_vertices.iter().map(|v| v[r]).collect();
        row.push(-direction[r]);
        lp.add_constraint(row, Relation::Eq, vertex[r]);
    }
    let mut ones = vec![1.0; m];
    ones.push(0.0);
    lp.add_constraint(ones, Relation::Eq, 1.0);
    let cert = lp_solve(&lp)?;
    if cert.status != LpStatus::Optimal {
        return Err(Error::Numerical(format!("tangent-cone LP ended {:?}", cert.status)));
    }
    let eps = cert.primal[m];
    if eps <= LP_FEASIBILITY {
        return Ok(TangentConeOutcome { interior: false, epsilon_star: eps, certificate: cert });
    }

    // Coordinates inside the affine hull of the facet.
    let base = &facet_vertices[0];
    let diffs = DMatrix::from_fn(m.saturating_sub(1).max(1), d, |i, j| {
        if m > 1 {
            facet_vertices[i + 1][j] - base[j]
        } else {
            0.0
        }
    });
    let svd = diffs.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let max_sv = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let basis: Vec<Vec<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| max_sv > 0.0 && s > 1e-10 * max_sv)
        .map(|(i, _)| v_t.row(i).iter().cloned().collect())
        .collect();
    if basis.is_empty() {
        return Ok(TangentConeOutcome { interior: false, epsilon_star: eps, certificate: cert });
    }
    let project = |p: &[f64]| -> Vec<f64> {
        basis
            .iter()
            .map(|u| u.iter().zip(p).zip(base).map(|((ui, pi), bi)| ui * (pi - bi)).sum())
            .collect()
    };
    let local: Vec<Vec<f64>> = facet_vertices.iter().map(|v| project(v)).collect();
    let probe_point: Vec<f64> = vertex
        .iter()
        .zip(direction)
        .map(|(v, dir)| v + 0.5 * eps * dir)
        .collect();
    let delta = 1e-4 * eps * norm;
    let verdict = interiority_probe(&project(&probe_point), &local, delta, 1e-3 * delta)?;
    Ok(TangentConeOutcome {
        interior: verdict.is_interior(),
        epsilon_star: eps,
        certificate: cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vec<f64>> {
        vec![vec![-1.0, -1.0], vec![1.0, -1.0], vec![1.0, 1.0], vec![-1.0, 1.0], vec![0.2, 0.3]]
    }

    #[test]
    fn outside_square_gets_coordinate_separator() {
        match in_hull(&[2.0, 0.0], &square(), LP_FEASIBILITY).unwrap() {
            HullMembership::Outside(sep) => {
                assert!((sep.margin - 1.0).abs() < 1e-12);
                let h = &sep.functional;
                assert!((h.constant - 1.0).abs() < 1e-12);
                assert!((h.coeffs[0] + 1.0).abs() < 1e-12);
                assert!(h.coeffs[1].abs() < 1e-12);
            }
            other => panic!("expected Outside, got {other:?}"),
        }
    }

    #[test]
    fn member_witness_reconstructs() {
        match in_hull(&[0.5, -0.25], &square(), LP_FEASIBILITY).unwrap() {
            HullMembership::Member(w) => {
                assert!(w.residual(&[0.5, -0.25]) < 1e-12);
                assert!((w.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
            other => panic!("expected member, got {other:?}"),
        }
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            in_hull(&[0.0, 0.0], &[vec![1.0]], 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(in_hull(&[0.0], &[], 1e-9).is_err());
    }

    #[test]
    fn probe_verdicts_on_square() {
        let pts = square();
        assert!(interiority_probe(&[0.0, 0.0], &pts, 1e-4, 1e-9).unwrap().is_interior());
        assert_eq!(interiority_probe(&[1.0, 0.0], &pts, 1e-4, 1e-9).unwrap().label(), "Boundary");
        assert_eq!(interiority_probe(&[1.5, 0.0], &pts, 1e-4, 1e-9).unwrap().label(), "Outside");
        let flat = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert!(matches!(
            interiority_probe(&[0.5, 0.5], &flat, 1e-4, 1e-9),
            Err(Error::Degenerate { rank: 1, dim: 2 })
        ));
        assert!(interiority_probe(&[0.0, 0.0], &pts, 0.0, 1e-9).is_err());
    }

    #[test]
    fn tangent_cone_in_triangle() {
        let tri = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let inside = tangent_cone_interior(&[0.0, 0.0], &[1.0, 1.0], &tri).unwrap();
        assert!(inside.interior);
        assert!((inside.epsilon_star - 0.5).abs() < 1e-12);
        // along an edge of the cone: boundary, not relative interior
        let edge = tangent_cone_interior(&[0.0, 0.0], &[1.0, 0.0], &tri).unwrap();
        assert!(!edge.interior);
        let out = tangent_cone_interior(&[0.0, 0.0], &[-1.0, 1.0], &tri).unwrap();
        assert!(!out.interior);
        assert!(out.epsilon_star <= LP_FEASIBILITY);
        assert!(tangent_cone_interior(&[0.0, 0.0], &[1e-15, 0.0], &tri).is_err());
        assert!(tangent_cone_interior(&[0.5, 0.5], &[1.0, 0.0], &tri).is_err());
    }

    #[test]
    fn tangent_cone_in_lower_dimensional_facet() {
        // a triangle sitting in the plane z = 1 of R^3
        let tri = vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]];
        assert!(tangent_cone_interior(&tri[0], &[1.0, 1.0, 0.0], &tri).unwrap().interior);
        assert!(!tangent_cone_interior(&tri[0], &[1.0, 1.0, 0.5], &tri).unwrap().interior);
    }
}
