//! Numerical realization of the edge structure of the Barvinok-Novik
//! orbitope `B_2k = conv(SM_2k)`.
//!
//! A chord `[SM_2k(a), SM_2k(b)]` is an exposed edge when the arc between
//! `a` and `b` is shorter than `2pi(k-1)/(2k-1)` and not an edge when it is
//! longer. The crate evaluates the curves, builds the facet simplices of
//! `conv(C_k)`, certifies both regimes with linear programs, estimates the
//! threshold empirically, and tests membership through the Hermitian
//! Toeplitz spectrahedron whose projection is `B_2k`.

pub mod angle;
pub mod cli;
pub mod curve;
pub mod edge;
pub mod error;
pub mod geometry;
pub mod lp;
pub mod spectrahedron;
pub mod tolerances;

pub use angle::{chebyshev_t, cos_at, sin_at, Angle};
pub use curve::{eval_c, eval_c_prime, eval_sm, CurveKind, CurvePoint};
pub use error::{Error, Result};

/// `2pi(k-1)/(2k-1)`, the arc length separating edges from non-edges.
pub fn edge_threshold(k: usize) -> f64 {
    std::f64::consts::TAU * (k as f64 - 1.0) / (2.0 * k as f64 - 1.0)
}
