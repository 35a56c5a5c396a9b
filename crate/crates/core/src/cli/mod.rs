//! Command-line front end. Each subcommand runs one family of checks and
//! returns a [`RunReport`]; the binary prints it and maps the status to an
//! exit code (0 pass, 1 check failure, 2 usage error).

pub mod plot;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::angle::Angle;
use crate::curve::symmetric_coords;
use crate::edge::{edge_verdict, estimate_threshold, lemma_face_check, Evidence};
use crate::edge_threshold;
use crate::error::{Error, Result};
use crate::geometry::{
    origin_witness, simplex_p, simplex_q, trig_identity_check, trig_identity_instances,
    verify_facet_description, RootCheck,
};
use crate::lp::{in_hull, HullMembership};
use crate::spectrahedron::{b2k_membership, Membership};
use crate::tolerances::{
    CERTIFICATE_MARGIN, DERIVATIVE_NONZERO, IDENTITY_RESIDUAL, LP_FEASIBILITY, PROBE_DELTA, RECONSTRUCTION,
    STRUCTURAL_ZERO,
};
pub use plot::PlotKind;
pub use report::{RunReport, Table, Value};

#[derive(Debug, Parser)]
#[command(name = "orbitope", version, about = "Edge checks for the symmetric trigonometric moment orbitope B_2k")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the report to this file (for `plot-data`, the CSV path).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct KArg {
    /// Half the ambient dimension of B_2k.
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residuals of the three node cosine-sum identities.
    Identities {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = IDENTITY_RESIDUAL)]
        tol: f64,
    },
    /// Vanishing pattern of the facet functionals of Q_k at the nodes.
    Facets {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = STRUCTURAL_ZERO)]
        tol: f64,
    },
    /// Closed-form roots of f_{j,k} against a bisection root finder.
    Roots {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = STRUCTURAL_ZERO)]
        tol: f64,
    },
    /// The origin as a convex combination of the vertices of P_k.
    Witness {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = RECONSTRUCTION)]
        tol: f64,
    },
    /// Facet entry of the curve at the touching angle t0.
    TangentCone {
        #[command(flatten)]
        k: KArg,
    },
    /// Empirical edge threshold by bisection on midpoint interiority.
    Threshold {
        #[command(flatten)]
        k: KArg,
        #[arg(long, default_value_t = 4000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
        /// Allowed deviation from 2pi(k-1)/(2k-1).
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
    },
    /// Edge verdict for the chord between SM_2k(alpha) and SM_2k(beta).
    Edge {
        #[command(flatten)]
        k: KArg,
        /// Radians, or exact forms like `2*pi/5`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Angle,
        #[arg(long, allow_hyphen_values = true)]
        beta: Angle,
        #[arg(long, default_value_t = 4000)]
        samples: usize,
    },
    /// Membership in B_2k through the Toeplitz spectrahedron.
    Membership {
        #[command(flatten)]
        k: KArg,
        /// Shorthand for the curve point SM_2k(theta).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "point")]
        theta: Option<Angle>,
        /// 2k comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "theta")]
        point: Option<Vec<f64>>,
        #[arg(long, default_value_t = 20_000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Writes CSV data for plotting to `--out`.
    PlotData {
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[command(flatten)]
        k: KArg,
        /// Grid points (or LP samples for `threshold-sweep`).
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

/// Runs a parsed command. Library errors are folded into a failing report;
/// the returned error flag says whether the failure was a usage error.
pub fn run(cli: &Cli) -> (RunReport, bool) {
    let start = Instant::now();
    let (mut report, usage) = match dispatch(cli) {
        Ok(r) => (r, false),
        Err(e) => {
            let usage = matches!(e, Error::InvalidArgument(_) | Error::DimensionMismatch { .. });
            let mut r = RunReport::new(command_name(&cli.command));
            r.passed = false;
            r.set("error", e.to_string());
            (r, usage)
        }
    };
    report.wall_time = start.elapsed().as_secs_f64();
    (report, usage)
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Identities { .. } => "identities",
        Command::Facets { .. } => "facets",
        Command::Roots { .. } => "roots",
        Command::Witness { .. } => "witness",
        Command::TangentCone { .. } => "tangent-cone",
        Command::Threshold { .. } => "threshold",
        Command::Edge { .. } => "edge",
        Command::Membership { .. } => "membership",
        Command::PlotData { .. } => "plot-data",
    }
}

fn dispatch(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::Identities { k, tol } => cmd_identities(k.k, *tol),
        Command::Facets { k, tol } => cmd_facets(k.k, *tol),
        Command::Roots { k, tol } => cmd_roots(k.k, *tol),
        Command::Witness { k, tol } => cmd_witness(k.k, *tol),
        Command::TangentCone { k } => cmd_tangent_cone(k.k),
        Command::Threshold { k, samples, resolution, tol } => cmd_threshold(k.k, *samples, *resolution, *tol),
        Command::Edge { k, alpha, beta, samples } => cmd_edge(k.k, alpha, beta, *samples),
        Command::Membership { k, theta, point, iters, tol } => {
            cmd_membership(k.k, theta.as_ref(), point.as_deref(), *iters, *tol)
        }
        Command::PlotData { kind, k, samples } => {
            let out = cli
                .out
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("plot-data needs --out".into()))?;
            cmd_plot_data(*kind, k.k, *samples, out)
        }
    }
}

fn require_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

pub fn cmd_identities(k: usize, tol: f64) -> Result<RunReport> {
    require_k(k)?;
    let mut r = RunReport::new("identities");
    r.param("k", k);
    r.param("tol", tol);
    let mut t = Table::new("residuals", &["identity", "family", "residual"]);
    let mut max = 0.0f64;
    let mut counts = [0usize; 3];
    for inst in trig_identity_instances(k) {
        let res = trig_identity_check(inst, k)?;
        max = max.max(res);
        counts[match inst.family() {
            "sum2" => 0,
            "sum" => 1,
            _ => 2,
        }] += 1;
        t.push(vec![inst.to_string().into(), inst.family().into(), res.into()]);
    }
    r.set("instances_sum2", counts[0]);
    r.set("instances_sum", counts[1]);
    r.set("instances_prodsum", counts[2]);
    r.set("max_residual", max);
    r.check("residuals", max < tol);
    r.tables.push(t);
    Ok(r)
}

pub fn cmd_facets(k: usize, tol: f64) -> Result<RunReport> {
    require_k(k)?;
    let rep = verify_facet_description(k, tol)?;
    let mut r = RunReport::new("facets");
    r.param("k", k);
    r.param("tol", tol);
    r.set("max_off_diagonal", rep.max_residual);
    r.set("min_diagonal", rep.min_diagonal);
    r.check("incidence", rep.passed());
    let mut t = Table::new("incidence", &["j", "i", "value", "pass"]);
    for c in &rep.checks {
        t.push(vec![c.j.into(), c.i.into(), c.value.into(), c.pass.into()]);
    }
    r.tables.push(t);
    for (name, s) in [("p_vertices", simplex_p(k)?), ("q_vertices", simplex_q(k)?)] {
        let mut t = Table::new(name, &["index", "angle", "coords"]);
        for (i, (a, x)) in s.vertices.iter().zip(s.vertex_coords()).enumerate() {
            let coords: Vec<String> = x.iter().map(|v| report::fmt_float(*v)).collect();
            t.push(vec![i.into(), a.source_angle.to_string().into(), coords.join(" ").into()]);
        }
        r.tables.push(t);
    }
    Ok(r)
}

pub fn cmd_roots(k: usize, tol: f64) -> Result<RunReport> {
    require_k(k)?;
    let mut r = RunReport::new("roots");
    r.param("k", k);
    r.param("tol", tol);
    let mut summary = Table::new("summary", &["j", "count", "max_mismatch", "max_abs_f", "min_abs_derivative", "pass"]);
    let mut roots = Table::new("roots", &["j", "root", "radians", "oracle"]);
    let mut all = true;
    for j in 0..k {
        let c = RootCheck::run(k, j)?;
        let ok = c.passed(tol, tol, DERIVATIVE_NONZERO);
        all &= ok;
        summary.push(vec![
            j.into(),
            c.closed_form.len().into(),
            c.max_mismatch.into(),
            c.max_value.into(),
            c.min_abs_derivative.into(),
            ok.into(),
        ]);
        for (i, a) in c.closed_form.iter().enumerate() {
            let oracle = c.oracle.get(i).copied().unwrap_or(f64::NAN);
            roots.push(vec![j.into(), a.to_string().into(), a.to_radians().into(), oracle.into()]);
        }
    }
    r.set("expected_count", 2 * k - 3);
    r.check("roots", all);
    r.tables.push(summary);
    r.tables.push(roots);
    Ok(r)
}

pub fn cmd_witness(k: usize, tol: f64) -> Result<RunReport> {
    require_k(k)?;
    let w = origin_witness(k)?;
    let origin = vec![0.0; k - 1];
    let mut r = RunReport::new("witness");
    r.param("k", k);
    r.param("tol", tol);
    let err = w.residual(&origin);
    r.set("reconstruction_error", err);
    r.set("weight_sum", w.weight_sum());
    r.check("reconstruction", err < tol && (w.weight_sum() - 1.0).abs() < tol);
    // Independent LP certificate that each vertex of Q_k lies in P_k.
    let p = simplex_p(k)?.vertex_coords();
    let mut lp_ok = true;
    let mut worst = 0.0f64;
    for v in simplex_q(k)?.vertex_coords() {
        match in_hull(&v, &p, LP_FEASIBILITY)? {
            HullMembership::Member(c) => worst = worst.max(c.residual(&v)),
            HullMembership::Outside(_) => lp_ok = false,
        }
    }
    r.set("lp_max_residual", worst);
    r.check("q_in_p_lp", lp_ok);
    let mut t = Table::new("weights", &["vertex", "angle", "weight"]);
    let p_spec = simplex_p(k)?;
    for (i, (a, wt)) in p_spec.vertices.iter().zip(&w.weights).enumerate() {
        t.push(vec![i.into(), a.source_angle.to_string().into(), (*wt).into()]);
    }
    r.tables.push(t);
    Ok(r)
}

pub fn cmd_tangent_cone(k: usize) -> Result<RunReport> {
    require_k(k)?;
    let rep = lemma_face_check(k)?;
    let mut r = RunReport::new("tangent-cone");
    r.param("k", k);
    r.set("t0", rep.t0.to_string());
    r.set("orientation", rep.orientation as i64);
    r.set("on_facet_residual", rep.on_facet_residual);
    r.set("on_facet", rep.on_facet.label());
    r.set("epsilon_star", rep.epsilon_star);
    r.set("tangent_cone", rep.tangent_cone.label());
    r.set("sign_clause", rep.sign_clause.label());
    r.check("clauses", rep.passed());
    let mut t = Table::new("signs", &["j", "sign", "predicted"]);
    for s in &rep.signs {
        t.push(vec![s.j.into(), (s.value_sign as i64).into(), (s.predicted as i64).into()]);
    }
    r.tables.push(t);
    Ok(r)
}

pub fn cmd_threshold(k: usize, samples: usize, resolution: f64, tol: f64) -> Result<RunReport> {
    require_k(k)?;
    let est = estimate_threshold(k, samples, resolution)?;
    let mut r = RunReport::new("threshold");
    r.param("k", k);
    r.param("samples", samples);
    r.param("resolution", resolution);
    r.param("tol", tol);
    r.set("psi_hat", est.psi_hat);
    r.set("bracket_lo", est.bracket.0);
    r.set("bracket_hi", est.bracket.1);
    r.set("expected", edge_threshold(k));
    r.set("deviation", est.deviation());
    r.set("samples_used", est.samples_used);
    r.set("probes", est.probes);
    r.check("threshold", est.deviation() < tol);
    Ok(r)
}

pub fn cmd_edge(k: usize, alpha: &Angle, beta: &Angle, samples: usize) -> Result<RunReport> {
    require_k(k)?;
    let mut r = RunReport::new("edge");
    r.param("k", k);
    r.param("alpha", alpha.to_string());
    r.param("beta", beta.to_string());
    r.param("samples", samples);
    r.set("threshold", edge_threshold(k));
    let v = match edge_verdict(k, alpha, beta, samples) {
        Ok(v) => v,
        Err(Error::Contradiction { arc, predicted, detail }) => {
            r.set("arc_length", arc);
            r.set("predicted", predicted);
            r.set("detail", detail);
            r.check("evidence_valid", false);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    r.set("arc_length", v.arc_length);
    r.set("verdict", v.verdict.label());
    match &v.evidence {
        Evidence::Certificate(c) => {
            r.set("evidence", "exposing functional");
            r.set("margin", c.margin);
            r.set("level", c.level);
            r.set("samples_used", c.samples_used);
            let mut t = Table::new("normal", &["index", "coefficient"]);
            for (i, h) in c.normal.iter().enumerate() {
                t.push(vec![i.into(), (*h).into()]);
            }
            r.tables.push(t);
            r.check("evidence_valid", c.margin > CERTIFICATE_MARGIN);
        }
        Evidence::Interiority(h) => {
            r.set("evidence", "interior midpoint");
            r.set("midpoint", h.label());
            r.check("evidence_valid", h.is_interior());
        }
        Evidence::None => {
            r.set("evidence", "none (within guard band)");
            r.check("evidence_valid", true);
        }
    }
    Ok(r)
}

pub fn cmd_membership(
    k: usize,
    theta: Option<&Angle>,
    point: Option<&[f64]>,
    iters: usize,
    tol: f64,
) -> Result<RunReport> {
    require_k(k)?;
    let mut r = RunReport::new("membership");
    r.param("k", k);
    let coords = match (theta, point) {
        (Some(t), None) => {
            r.param("theta", t.to_string());
            symmetric_coords(k, t)
        }
        (None, Some(p)) => {
            if p.len() != 2 * k {
                return Err(Error::DimensionMismatch { expected: 2 * k, found: p.len() });
            }
            let text: Vec<String> = p.iter().map(|v| report::fmt_float(*v)).collect();
            r.param("point", text.join(","));
            p.to_vec()
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --theta or --point".into())),
    };
    r.param("iters", iters);
    r.param("tol", tol);
    let v = b2k_membership(&coords, iters, tol)?;
    r.set("verdict", v.verdict.label());
    r.set("min_eigenvalue", v.min_eigenvalue);
    r.set("residual", v.residual);
    r.set("iterations", v.iterations_used);
    r.check("conclusive", v.verdict != Membership::Inconclusive);
    let mut t = Table::new("witness", &["d", "re", "im"]);
    for (i, z) in v.witness().iter().enumerate() {
        t.push(vec![(2 * i + 2).into(), z.re.into(), z.im.into()]);
    }
    r.tables.push(t);
    Ok(r)
}

pub fn cmd_plot_data(kind: PlotKind, k: usize, samples: usize, out: &Path) -> Result<RunReport> {
    require_k(k)?;
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let mut r = RunReport::new("plot-data");
    r.param("kind", kind.label());
    r.param("k", k);
    r.param("samples", samples);
    r.param("out", out.display().to_string());
    let csv = match kind {
        PlotKind::Curve => plot::curve_csv(k, samples),
        PlotKind::FGraphs => {
            let g = plot::f_graphs(k, samples)?;
            r.check("crossings_match_roots", g.crossings_match.iter().all(|&b| b));
            g.csv
        }
        PlotKind::FacetProjection => plot::facet_projection_csv(k, samples)?,
        PlotKind::ThresholdSweep => {
            let s = plot::threshold_sweep(k, samples, 128, PROBE_DELTA)?;
            r.set("transitions", s.transitions);
            r.set("transition_arc", s.transition_arc.unwrap_or(f64::NAN));
            r.check("single_transition", s.transitions == 1);
            s.csv
        }
    };
    std::fs::write(out, &csv)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", out.display())))?;
    r.set("rows", csv.lines().count().saturating_sub(1));
    Ok(r)
}
