//! The tolerance ladder shared by every check in the crate.
//!
//! Tests and the CLI read these values instead of repeating literals, so a
//! threshold is changed in exactly one place.

/// Values that must vanish structurally (facet incidences, roots).
pub const STRUCTURAL_ZERO: f64 = 1e-10;

/// Reconstruction of a point from explicit convex weights.
pub const RECONSTRUCTION: f64 = 1e-12;

/// Lower bound on |f'| at a root for it to count as simple.
pub const DERIVATIVE_NONZERO: f64 = 1e-8;

/// Residual bound for the trigonometric sum identities.
pub const IDENTITY_RESIDUAL: f64 = 1e-12;

/// Dead zone inside which a sign is reported as zero.
pub const SIGN_DEAD_ZONE: f64 = 1e-12;

/// Two real angles closer than this are equal.
pub const ANGLE_EQ: f64 = 1e-12;

/// Slack allowed on |x| <= 1 for Chebyshev evaluation.
pub const CHEBYSHEV_DOMAIN: f64 = 1e-12;

/// Primal feasibility of LP solutions and hull witnesses.
pub const LP_FEASIBILITY: f64 = 1e-9;

/// Maximum primal/dual objective gap accepted for an optimal LP.
pub const DUALITY_GAP: f64 = 1e-8;

/// An exposing functional only counts if its margin exceeds this.
pub const CERTIFICATE_MARGIN: f64 = 1e-7;

/// Default axis-probe step for interiority tests.
pub const PROBE_DELTA: f64 = 1e-4;

/// Arc distance from the threshold inside which edge verdicts abstain.
pub const GUARD_BAND: f64 = 0.02;

/// Most negative eigenvalue tolerated for a spectrahedral member.
pub const PSD_EIGENVALUE: f64 = 1e-8;

/// Offset from the touching angle used by the sign clause of the face check.
pub const FACE_CHECK_OFFSET: f64 = 1e-3;
