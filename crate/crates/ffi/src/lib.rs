//! C ABI over the `orbitope` crate.
//!
//! Every fallible entry point returns an [`OrbStatus`]. On failure the
//! message is kept per thread and can be copied out with
//! [`orb_last_error_message`]. Angles cross the boundary as radians.
//! Heap objects are opaque handles released by their `_free` function.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use orbitope::edge::{self, Verdict};
use orbitope::geometry;
use orbitope::lp::{self, HullMembership};
use orbitope::spectrahedron::{self, Membership, MembershipVerdict};
use orbitope::{Angle, Error};

/// Result code of every fallible call. `ORB_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    MalformedLp = 4,
    Degenerate = 5,
    Numerical = 6,
    TransitionNotFound = 7,
    Contradiction = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbVerdict {
    Edge = 0,
    NotEdge = 1,
    NearThreshold = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbMembership {
    Member = 0,
    NonMemberLikely = 1,
    Inconclusive = 2,
}

/// A finite point set in `R^dim`, used as the vertex list of a hull query.
pub struct OrbPointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

/// The outcome of a spectrahedral membership test.
pub struct OrbMembershipResult {
    inner: MembershipVerdict,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> OrbStatus {
    match err {
        Error::InvalidArgument(_) => OrbStatus::InvalidArgument,
        Error::DimensionMismatch { .. } => OrbStatus::DimensionMismatch,
        Error::MalformedLp(_) => OrbStatus::MalformedLp,
        Error::Degenerate { .. } => OrbStatus::Degenerate,
        Error::Numerical(_) => OrbStatus::Numerical,
        Error::TransitionNotFound { .. } => OrbStatus::TransitionNotFound,
        Error::Contradiction { .. } => OrbStatus::Contradiction,
    }
}

struct Fail(OrbStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type Outcome = std::result::Result<(), Fail>;

/// Runs `body`, records any failure, and converts panics into `Panic`.
fn guard(body: impl FnOnce() -> Outcome) -> OrbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            OrbStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            OrbStatus::Panic
        }
    }
}

fn null(name: &str) -> Fail {
    Fail(OrbStatus::NullPointer, format!("{name} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(OrbStatus::InvalidArgument, msg.into())
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn input<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(slice::from_raw_parts(p, len))
}

/// Copies `values` into `buf` after checking capacity; `written` gets the
/// required length either way.
unsafe fn write_slice(values: &[f64], buf: *mut f64, cap: usize, written: *mut usize) -> Outcome {
    if let Some(w) = written.as_mut() {
        *w = values.len();
    }
    if cap < values.len() {
        return Err(Fail(
            OrbStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn angle(theta: f64) -> Result<Angle, Fail> {
    Ok(Angle::radians(theta)?)
}

/// Copies the last error message of this thread into `buf` as a
/// NUL-terminated string, truncating to `cap`. Returns the length the full
/// message needs, including the terminator.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn orb_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// The arc length `2pi(k-1)/(2k-1)` separating edges from non-edges.
#[no_mangle]
pub extern "C" fn orb_edge_threshold(k: usize) -> f64 {
    orbitope::edge_threshold(k)
}

/// Writes `C_k(theta)`, `k` values, into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` doubles; `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn orb_eval_c(k: usize, theta: f64, buf: *mut f64, cap: usize, written: *mut usize) -> OrbStatus {
    guard(|| {
        let p = orbitope::eval_c(k, &angle(theta)?)?;
        write_slice(&p.coords, buf, cap, written)
    })
}

/// Writes `SM_2k(theta)`, `2k` values, into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` doubles; `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn orb_eval_sm(k: usize, theta: f64, buf: *mut f64, cap: usize, written: *mut usize) -> OrbStatus {
    guard(|| {
        let p = orbitope::eval_sm(k, &angle(theta)?)?;
        write_slice(&p.coords, buf, cap, written)
    })
}

/// Evaluates the facet functional `f_{j,k}` on the curve at `theta`.
///
/// # Safety
/// `value` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn orb_eval_f(k: usize, j: usize, theta: f64, value: *mut f64) -> OrbStatus {
    guard(|| {
        let v = out(value, "value")?;
        *v = geometry::eval_f(k, j, &angle(theta)?)?;
        Ok(())
    })
}

/// Writes the `2k-3` roots of `f_{j,k}` in `[0, pi]`, ascending, in radians.
///
/// # Safety
/// `buf` must be valid for `cap` doubles; `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn orb_f_roots(k: usize, j: usize, buf: *mut f64, cap: usize, written: *mut usize) -> OrbStatus {
    guard(|| {
        let roots: Vec<f64> = geometry::f_root_set(k, j)?.iter().map(Angle::to_radians).collect();
        write_slice(&roots, buf, cap, written)
    })
}

/// Classifies the chord between `SM_2k(alpha)` and `SM_2k(beta)`.
/// `arc_length` may be null.
///
/// # Safety
/// `verdict` must be valid for writing; `arc_length` null or valid.
#[no_mangle]
pub unsafe extern "C" fn orb_edge_verdict(
    k: usize,
    alpha: f64,
    beta: f64,
    num_samples: usize,
    verdict: *mut OrbVerdict,
    arc_length: *mut f64,
) -> OrbStatus {
    guard(|| {
        let slot = out(verdict, "verdict")?;
        let v = edge::edge_verdict(k, &angle(alpha)?, &angle(beta)?, num_samples)?;
        *slot = match v.verdict {
            Verdict::Edge => OrbVerdict::Edge,
            Verdict::NotEdge => OrbVerdict::NotEdge,
            Verdict::NearThreshold => OrbVerdict::NearThreshold,
        };
        if let Some(a) = arc_length.as_mut() {
            *a = v.arc_length;
        }
        Ok(())
    })
}

/// Estimates the edge threshold from sampled hulls. `bracket_lo` and
/// `bracket_hi` may be null.
///
/// # Safety
/// `psi_hat` must be valid for writing; the bracket pointers null or valid.
#[no_mangle]
pub unsafe extern "C" fn orb_estimate_threshold(
    k: usize,
    num_samples: usize,
    resolution: f64,
    psi_hat: *mut f64,
    bracket_lo: *mut f64,
    bracket_hi: *mut f64,
) -> OrbStatus {
    guard(|| {
        let slot = out(psi_hat, "psi_hat")?;
        let e = edge::estimate_threshold(k, num_samples, resolution)?;
        *slot = e.psi_hat;
        if let Some(lo) = bracket_lo.as_mut() {
            *lo = e.bracket.0;
        }
        if let Some(hi) = bracket_hi.as_mut() {
            *hi = e.bracket.1;
        }
        Ok(())
    })
}

/// Builds a point set from `count` points of dimension `dim`, stored row
/// after row in `coords`.
///
/// # Safety
/// `coords` must be valid for `count * dim` doubles; `set` for writing.
#[no_mangle]
pub unsafe extern "C" fn orb_point_set_new(
    coords: *const f64,
    count: usize,
    dim: usize,
    set: *mut *mut OrbPointSet,
) -> OrbStatus {
    guard(|| {
        let slot = out(set, "set")?;
        if dim == 0 || count == 0 {
            return Err(invalid("point set needs positive count and dimension"));
        }
        let len = count.checked_mul(dim).ok_or_else(|| invalid("count * dim overflows"))?;
        let flat = input(coords, len, "coords")?;
        let points = flat.chunks_exact(dim).map(<[f64]>::to_vec).collect();
        *slot = Box::into_raw(Box::new(OrbPointSet { dim, points }));
        Ok(())
    })
}

/// The point set `C_k(2 pi i / n)`, `i = 0..n-1`.
///
/// # Safety
/// `set` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn orb_point_set_cosine_samples(k: usize, n: usize, set: *mut *mut OrbPointSet) -> OrbStatus {
    guard(|| {
        let slot = out(set, "set")?;
        if k < 2 || n == 0 {
            return Err(invalid(format!("need k >= 2 and n >= 1, got k = {k}, n = {n}")));
        }
        let points = edge::cosine_samples(k, n);
        *slot = Box::into_raw(Box::new(OrbPointSet { dim: k, points }));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orb_point_set_free(set: *mut OrbPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orb_point_set_len(set: *const OrbPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.points.len())
}

/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orb_point_set_dim(set: *const OrbPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.dim)
}

/// Tests whether `query` lies in the convex hull of `set`. On a miss,
/// `margin` receives the separation distance; on a hit it is zero.
///
/// # Safety
/// `set` must be a live handle, `query` valid for `dim` doubles, `member`
/// valid for writing, and `margin` null or valid.
#[no_mangle]
pub unsafe extern "C" fn orb_in_hull(
    set: *const OrbPointSet,
    query: *const f64,
    dim: usize,
    tol: f64,
    member: *mut bool,
    margin: *mut f64,
) -> OrbStatus {
    guard(|| {
        let s = set.as_ref().ok_or_else(|| null("set"))?;
        let slot = out(member, "member")?;
        let q = input(query, dim, "query")?;
        let (is_member, gap) = match lp::in_hull(q, &s.points, tol)? {
            HullMembership::Member(_) => (true, 0.0),
            HullMembership::Outside(sep) => (false, sep.margin),
        };
        *slot = is_member;
        if let Some(m) = margin.as_mut() {
            *m = gap;
        }
        Ok(())
    })
}

/// Tests membership of a point of `R^2k` in `B_2k` through its Toeplitz
/// spectrahedron. `len` must be even.
///
/// # Safety
/// `point` must be valid for `len` doubles and `result` for writing.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_new(
    point: *const f64,
    len: usize,
    max_iters: usize,
    tol: f64,
    result: *mut *mut OrbMembershipResult,
) -> OrbStatus {
    guard(|| {
        let slot = out(result, "result")?;
        let p = input(point, len, "point")?;
        let inner = spectrahedron::b2k_membership(p, max_iters, tol)?;
        *slot = Box::into_raw(Box::new(OrbMembershipResult { inner }));
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_free(result: *mut OrbMembershipResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_verdict(result: *const OrbMembershipResult) -> OrbMembership {
    match result.as_ref().map(|r| r.inner.verdict) {
        Some(Membership::Member) => OrbMembership::Member,
        Some(Membership::NonMemberLikely) => OrbMembership::NonMemberLikely,
        _ => OrbMembership::Inconclusive,
    }
}

/// Smallest eigenvalue of the final Toeplitz iterate; NaN for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_min_eigenvalue(result: *const OrbMembershipResult) -> f64 {
    result.as_ref().map_or(f64::NAN, |r| r.inner.min_eigenvalue)
}

/// Distance of the final iterate from the PSD cone; NaN for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_residual(result: *const OrbMembershipResult) -> f64 {
    result.as_ref().map_or(f64::NAN, |r| r.inner.residual)
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_iterations(result: *const OrbMembershipResult) -> usize {
    result.as_ref().map_or(0, |r| r.inner.iterations_used)
}

/// Writes the `k-1` even-diagonal witness entries as separate real and
/// imaginary parts.
///
/// # Safety
/// `result` must be a live handle; `re` and `im` valid for `cap` doubles;
/// `written` null or valid.
#[no_mangle]
pub unsafe extern "C" fn orb_membership_witness(
    result: *const OrbMembershipResult,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
    written: *mut usize,
) -> OrbStatus {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        let w = r.inner.witness();
        let (res, ims): (Vec<f64>, Vec<f64>) = w.iter().map(|z| (z.re, z.im)).unzip();
        write_slice(&res, re, cap, written)?;
        write_slice(&ims, im, cap, written)
    })
}
