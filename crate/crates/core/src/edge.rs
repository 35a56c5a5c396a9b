//! Edge verdicts for chords of `SM_2k` and empirical recovery of the
//! threshold arc.
//!
//! The chord `[SM(-theta), SM(theta)]` has midpoint `(C_k(theta), 0)`. When
//! that midpoint is interior to `conv(C_k)` the chord passes through the
//! interior of `B_2k` and cannot be an edge; below the threshold an exposing
//! functional certifies the edge directly.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use crate::angle::Angle;
use crate::curve::{cosine_coords, cosine_derivative};
use crate::edge_threshold;
use crate::error::{invalid, Error, Result};
use crate::geometry::{predicted_sign, simplex_p, sign_profile};
use crate::lp::{exposed_edge_certificate, interiority_probe, tangent_cone_interior, EdgeCertificate, HullVerdict};
use crate::tolerances::{FACE_CHECK_OFFSET, GUARD_BAND, LP_FEASIBILITY, PROBE_DELTA};

/// Points of `C_k` on a uniform grid `i*pi/m` of `[0, pi]`, with `m` the
/// smallest multiple of `2k-1` not below `num_samples - 1`, so that every
/// `j*pi/(2k-1)` is a grid point. `C_k` on `[pi, 2pi]` retraces `[0, pi]`.
pub fn cosine_samples(k: usize, num_samples: usize) -> Vec<Vec<f64>> {
    let q = 2 * k - 1;
    let m = num_samples.saturating_sub(1).div_ceil(q).max(1) * q;
    (0..=m)
        .map(|i| cosine_coords(k, &Angle::rational(i as i64, m as i64).expect("m > 0")))
        .collect()
}

/// Interiority of `C_k(theta)` in `conv(C_k)` with the default probe step.
pub fn midpoint_interiority(k: usize, theta: &Angle, num_samples: usize) -> Result<HullVerdict> {
    midpoint_interiority_with(k, theta, num_samples, PROBE_DELTA)
}

/// As [`midpoint_interiority`] with an explicit probe step. The query point
/// itself is added to the samples (it lies on the curve).
pub fn midpoint_interiority_with(k: usize, theta: &Angle, num_samples: usize, delta: f64) -> Result<HullVerdict> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    if num_samples < 500 {
        return Err(invalid(format!("need at least 500 samples, got {num_samples}")));
    }
    let query = cosine_coords(k, theta);
    let mut points = cosine_samples(k, num_samples);
    if !points.contains(&query) {
        points.push(query.clone());
    }
    interiority_probe(&query, &points, delta, LP_FEASIBILITY)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdEstimate {
    pub k: usize,
    pub psi_hat: f64,
    /// Arc-length bracket `(lo, hi)` around the transition.
    pub bracket: (f64, f64),
    pub samples_used: usize,
    pub probes: usize,
}

impl ThresholdEstimate {
    pub fn deviation(&self) -> f64 {
        (self.psi_hat - edge_threshold(self.k)).abs()
    }
}

/// Locates the arc `2 theta` at which `C_k(theta)` turns from boundary to
/// interior, by bisection over `theta` in `(0, pi/2]`.
///
/// The probe step shrinks with the requested resolution: near the
/// transition the curve leaves the facet `x_k = +-1` only quadratically, so
/// a fixed step would bias the estimate upward.
pub fn estimate_threshold(k: usize, num_samples: usize, resolution: f64) -> Result<ThresholdEstimate> {
    let guess = edge_threshold(k) / 2.0;
    bisect_threshold(k, num_samples, resolution, ((guess - 0.15).max(1e-3), (guess + 0.15).min(FRAC_PI_2)))
}

/// As [`estimate_threshold`] but starting from an arbitrary `theta`
/// bracket in `(0, pi/2]`. If the verdicts at its ends do not differ the
/// whole interval is scanned instead.
pub fn bisect_threshold(
    k: usize,
    num_samples: usize,
    resolution: f64,
    theta_bracket: (f64, f64),
) -> Result<ThresholdEstimate> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    if resolution.is_nan() || resolution < 1e-4 {
        return Err(invalid(format!("resolution must be at least 1e-4, got {resolution}")));
    }
    if num_samples < 1000 {
        return Err(invalid(format!("need at least 1000 samples, got {num_samples}")));
    }
    let (mut lo, mut hi) = theta_bracket;
    if !(0.0 < lo && lo < hi && hi <= FRAC_PI_2) {
        return Err(invalid(format!("bracket ({lo}, {hi}) is not inside (0, pi/2]")));
    }
    let delta = (resolution * resolution / 32.0).min(PROBE_DELTA);
    let mut scanned = 0usize;
    let mut probes = 0usize;
    let mut interior = |theta: f64| -> Result<bool> {
        probes += 1;
        Ok(midpoint_interiority_with(k, &Angle::radians(theta)?, num_samples, delta)?.is_interior())
    };
    if interior(lo)? || !interior(hi)? {
        (lo, hi) = scan_for_transition(k, num_samples, delta)?;
        scanned = 64;
    }
    // bracket width in arc length is 2 (hi - lo)
    while 2.0 * (hi - lo) >= resolution {
        let mid = 0.5 * (lo + hi);
        if interior(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdEstimate {
        k,
        psi_hat: lo + hi,
        bracket: (2.0 * lo, 2.0 * hi),
        samples_used: cosine_samples(k, num_samples).len(),
        probes: probes + scanned,
    })
}

/// Interior/not-interior verdicts of `C_k(theta)` on `n` evenly spaced
/// `theta` in `(0, pi/2]`.
pub fn interiority_profile(k: usize, num_samples: usize, n: usize, delta: f64) -> Result<Vec<(f64, bool)>> {
    (1..=n)
        .into_par_iter()
        .map(|i| {
            let theta = FRAC_PI_2 * i as f64 / n as f64;
            let v = midpoint_interiority_with(k, &Angle::radians(theta)?, num_samples, delta)?;
            Ok((theta, v.is_interior()))
        })
        .collect()
}

fn scan_for_transition(k: usize, num_samples: usize, delta: f64) -> Result<(f64, f64)> {
    let profile = interiority_profile(k, num_samples, 64, delta)?;
    let flips: Vec<usize> = (1..profile.len())
        .filter(|&i| profile[i].1 != profile[i - 1].1)
        .collect();
    match flips.as_slice() {
        [i] if profile[*i].1 => Ok((profile[i - 1].0, profile[*i].0)),
        [] => Err(Error::TransitionNotFound { k }),
        _ => Err(Error::Numerical(format!(
            "interiority changes {} times on (0, pi/2] for k = {k}",
            flips.len()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Edge,
    NotEdge,
    NearThreshold,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Edge => "Edge",
            Verdict::NotEdge => "NotEdge",
            Verdict::NearThreshold => "NearThreshold",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Certificate(EdgeCertificate),
    Interiority(HullVerdict),
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeVerdict {
    pub verdict: Verdict,
    pub arc_length: f64,
    pub evidence: Evidence,
}

/// Decides whether `[SM_2k(alpha), SM_2k(beta)]` is an edge of `B_2k`.
///
/// The pair is rotated to `(-arc/2, arc/2)`, which preserves edges. Within
/// `0.02` of the threshold the answer is `NearThreshold`. Otherwise the
/// side of the threshold picks which evidence to compute, and evidence that
/// fails to confirm it is returned as [`Error::Contradiction`].
pub fn edge_verdict(k: usize, alpha: &Angle, beta: &Angle, num_samples: usize) -> Result<EdgeVerdict> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    let arc = alpha.arc_to(beta);
    if arc < 1e-12 {
        return Err(invalid("chord endpoints must differ"));
    }
    let threshold = edge_threshold(k);
    if (arc - threshold).abs() < GUARD_BAND {
        return Ok(EdgeVerdict { verdict: Verdict::NearThreshold, arc_length: arc, evidence: Evidence::None });
    }
    let half = Angle::radians(arc / 2.0)?;
    if arc < threshold {
        match exposed_edge_certificate(k, &half.neg(), &half, num_samples)? {
            Some(cert) => Ok(EdgeVerdict { verdict: Verdict::Edge, arc_length: arc, evidence: Evidence::Certificate(cert) }),
            None => Err(Error::Contradiction {
                arc,
                predicted: "Edge",
                detail: "no exposing functional with positive margin".into(),
            }),
        }
    } else {
        let v = midpoint_interiority(k, &half, num_samples)?;
        if v.is_interior() {
            Ok(EdgeVerdict { verdict: Verdict::NotEdge, arc_length: arc, evidence: Evidence::Interiority(v) })
        } else {
            Err(Error::Contradiction {
                arc,
                predicted: "NotEdge",
                detail: format!("midpoint classified {}", v.label()),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseStatus {
    Pass,
    TrivialPass,
    Fail,
}

impl ClauseStatus {
    pub fn ok(&self) -> bool {
        !matches!(self, ClauseStatus::Fail)
    }

    pub fn label(&self) -> &'static str {
        match self {
            ClauseStatus::Pass => "pass",
            ClauseStatus::TrivialPass => "trivial-pass",
            ClauseStatus::Fail => "fail",
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            ClauseStatus::Pass
        } else {
            ClauseStatus::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignCheck {
    pub j: usize,
    pub value_sign: i8,
    pub predicted: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceCheckReport {
    pub k: usize,
    pub t0: Angle,
    /// `+1` when the curve is followed forward from `t0` (odd `k`), `-1`
    /// when backward (even `k`).
    pub orientation: i8,
    pub on_facet_residual: f64,
    pub on_facet: ClauseStatus,
    pub epsilon_star: f64,
    pub tangent_cone: ClauseStatus,
    pub signs: Vec<SignCheck>,
    pub sign_clause: ClauseStatus,
}

impl FaceCheckReport {
    pub fn passed(&self) -> bool {
        self.on_facet.ok() && self.tangent_cone.ok() && self.sign_clause.ok()
    }
}

/// Checks, at the touching angle `t0` on the facet `{x_k = 1}`, that the
/// curve enters the facet simplex `P_k` through the relative interior of
/// its tangent cone and lands inside `Q_k`.
///
/// `t0 = (k-1)pi/(2k-1)` followed forward for odd `k`; `t0 = k pi/(2k-1)`
/// followed backward for even `k`.
pub fn lemma_face_check(k: usize) -> Result<FaceCheckReport> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    let q = 2 * k as i64 - 1;
    let (t0, orientation) = if k % 2 == 1 {
        (Angle::rational(k as i64 - 1, q)?, 1i8)
    } else {
        (Angle::rational(k as i64, q)?, -1i8)
    };

    let on_facet_residual = (t0.cos_mul(q) - 1.0).abs();
    let on_facet = ClauseStatus::from_bool(on_facet_residual < 1e-12);

    let p = simplex_p(k)?;
    let vertex = cosine_coords(k - 1, &t0);
    let direction: Vec<f64> = cosine_derivative(k - 1, &t0)
        .iter()
        .map(|v| orientation as f64 * v)
        .collect();
    let cone = tangent_cone_interior(&vertex, &direction, &p.vertex_coords())?;
    let tangent_cone = match (cone.interior, k) {
        (true, 2) => ClauseStatus::TrivialPass,
        (b, _) => ClauseStatus::from_bool(b),
    };

    let theta = t0.to_radians() + orientation as f64 * FACE_CHECK_OFFSET;
    let mut signs = Vec::with_capacity(k);
    let mut all = true;
    for j in 0..k {
        let value_sign = sign_profile(k, j, &Angle::radians(theta)?)?;
        let predicted = predicted_sign(k, j, theta).unwrap_or(0);
        all &= predicted != 0 && value_sign == predicted;
        signs.push(SignCheck { j, value_sign, predicted });
    }
    debug_assert!(theta > 0.0 && theta < PI);

    Ok(FaceCheckReport {
        k,
        t0,
        orientation,
        on_facet_residual,
        on_facet,
        epsilon_star: cone.epsilon_star,
        tangent_cone,
        signs,
        sign_clause: ClauseStatus::from_bool(all),
    })
}
