//! CSV plot data. Every number is written with 17 significant digits.

use std::f64::consts::PI;

use clap::ValueEnum;

use crate::angle::Angle;
use crate::curve::cosine_coords;
use crate::edge::interiority_profile;
use crate::error::Result;
use crate::geometry::{eval_f, f_root_set, simplex_p, simplex_q, SimplexSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// `theta, x1..xk`: the cosine curve `C_k` on `[0, pi]`.
    Curve,
    /// `theta, f_0..f_{k-1}` on `[0, pi]`.
    FGraphs,
    /// `section, index, theta, x1..x_{k-1}`: samples of `C_{k-1}` and the
    /// vertices of `P_k` and `Q_k`.
    FacetProjection,
    /// `theta, arc, interior`: interiority of `C_k(theta)` on `(0, pi/2]`.
    ThresholdSweep,
}

impl PlotKind {
    pub fn label(&self) -> &'static str {
        match self {
            PlotKind::Curve => "curve",
            PlotKind::FGraphs => "f-graphs",
            PlotKind::FacetProjection => "facet-projection",
            PlotKind::ThresholdSweep => "threshold-sweep",
        }
    }
}

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn push_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let cells: Vec<String> = cells.into_iter().collect();
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn grid(points: usize) -> impl Iterator<Item = f64> {
    let last = (points - 1).max(1) as f64;
    (0..points).map(move |i| PI * i as f64 / last)
}

pub fn curve_csv(k: usize, points: usize) -> String {
    let mut out = String::new();
    push_row(&mut out, std::iter::once("theta".to_string()).chain((1..=k).map(|l| format!("x{l}"))));
    for t in grid(points) {
        let x = cosine_coords(k, &Angle::Real(t));
        push_row(&mut out, std::iter::once(num(t)).chain(x.into_iter().map(num)));
    }
    out
}

/// Sign changes of one sampled column, as brackets `(t_i, t_{i+1})`.
pub fn sign_change_brackets(ts: &[f64], vs: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 1..vs.len() {
        if (vs[i - 1] >= 0.0) != (vs[i] >= 0.0) {
            out.push((ts[i - 1], ts[i]));
        }
    }
    out
}

pub struct FGraphs {
    pub csv: String,
    /// For each `j`: whether the sampled sign changes pair up one-to-one
    /// with the closed-form roots.
    pub crossings_match: Vec<bool>,
}

pub fn f_graphs(k: usize, points: usize) -> Result<FGraphs> {
    let ts: Vec<f64> = grid(points).collect();
    let mut columns = Vec::with_capacity(k);
    for j in 0..k {
        let col = ts
            .iter()
            .map(|&t| eval_f(k, j, &Angle::Real(t)))
            .collect::<Result<Vec<f64>>>()?;
        columns.push(col);
    }
    let mut crossings_match = Vec::with_capacity(k);
    for (j, col) in columns.iter().enumerate() {
        let brackets = sign_change_brackets(&ts, col);
        let roots = f_root_set(k, j)?;
        let ok = brackets.len() == roots.len()
            && brackets.iter().zip(&roots).all(|(&(a, b), r)| {
                let x = r.to_radians();
                a <= x && x <= b
            });
        crossings_match.push(ok);
    }
    let mut csv = String::new();
    push_row(&mut csv, std::iter::once("theta".to_string()).chain((0..k).map(|j| format!("f_{j}"))));
    for (i, &t) in ts.iter().enumerate() {
        push_row(&mut csv, std::iter::once(num(t)).chain(columns.iter().map(|c| num(c[i]))));
    }
    Ok(FGraphs { csv, crossings_match })
}

pub fn facet_projection_csv(k: usize, points: usize) -> Result<String> {
    let dim = k - 1;
    let mut out = String::new();
    push_row(
        &mut out,
        ["section", "index", "theta"]
            .into_iter()
            .map(String::from)
            .chain((1..=dim).map(|l| format!("x{l}"))),
    );
    for (i, t) in grid(points).enumerate() {
        let x = cosine_coords(dim, &Angle::Real(t));
        push_row(
            &mut out,
            ["curve".to_string(), i.to_string(), num(t)].into_iter().chain(x.into_iter().map(num)),
        );
    }
    let vertices = |out: &mut String, name: &str, s: &SimplexSpec| {
        for (i, (t, x)) in s.vertices.iter().zip(s.vertex_coords()).enumerate() {
            push_row(
                out,
                [name.to_string(), i.to_string(), num(t.source_angle.to_radians())]
                    .into_iter()
                    .chain(x.into_iter().map(num)),
            );
        }
    };
    vertices(&mut out, "P", &simplex_p(k)?);
    vertices(&mut out, "Q", &simplex_q(k)?);
    Ok(out)
}

pub struct Sweep {
    pub csv: String,
    /// Number of interior/non-interior flips along the sweep.
    pub transitions: usize,
    /// Arc at the (first) flip, midway between the flanking samples.
    pub transition_arc: Option<f64>,
}

pub fn threshold_sweep(k: usize, samples: usize, points: usize, delta: f64) -> Result<Sweep> {
    let profile = interiority_profile(k, samples, points, delta)?;
    let mut csv = String::from("theta,arc,interior\n");
    for &(t, inside) in &profile {
        push_row(&mut csv, [num(t), num(2.0 * t), u8::from(inside).to_string()]);
    }
    let flips: Vec<usize> = (1..profile.len()).filter(|&i| profile[i].1 != profile[i - 1].1).collect();
    let transition_arc = flips.first().map(|&i| profile[i - 1].0 + profile[i].0);
    Ok(Sweep { csv, transitions: flips.len(), transition_arc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_header_and_rows() {
        let csv = curve_csv(3, 10);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("theta,x1,x2,x3"));
        assert_eq!(lines.count(), 10);
    }

    #[test]
    fn f_graph_crossings_match_roots() {
        let g = f_graphs(3, 2000).unwrap();
        assert_eq!(g.csv.lines().next(), Some("theta,f_0,f_1,f_2"));
        assert_eq!(g.csv.lines().count(), 2001);
        assert!(g.crossings_match.iter().all(|&b| b));
    }

    #[test]
    fn projection_sections() {
        let csv = facet_projection_csv(3, 50).unwrap();
        assert_eq!(csv.lines().filter(|l| l.starts_with("P,")).count(), 3);
        assert_eq!(csv.lines().filter(|l| l.starts_with("Q,")).count(), 3);
        assert_eq!(csv.lines().filter(|l| l.starts_with("curve,")).count(), 50);
    }

    #[test]
    fn numbers_have_17_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
    }
}
