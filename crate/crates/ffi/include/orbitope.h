#ifndef ORBITOPE_H
#define ORBITOPE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call. `ORB_STATUS_OK` is zero.
typedef enum OrbStatus {
  ORB_STATUS_OK = 0,
  ORB_STATUS_NULL_POINTER = 1,
  ORB_STATUS_INVALID_ARGUMENT = 2,
  ORB_STATUS_DIMENSION_MISMATCH = 3,
  ORB_STATUS_MALFORMED_LP = 4,
  ORB_STATUS_DEGENERATE = 5,
  ORB_STATUS_NUMERICAL = 6,
  ORB_STATUS_TRANSITION_NOT_FOUND = 7,
  ORB_STATUS_CONTRADICTION = 8,
  ORB_STATUS_BUFFER_TOO_SMALL = 9,
  ORB_STATUS_PANIC = 10,
} OrbStatus;

typedef enum OrbVerdict {
  ORB_VERDICT_EDGE = 0,
  ORB_VERDICT_NOT_EDGE = 1,
  ORB_VERDICT_NEAR_THRESHOLD = 2,
} OrbVerdict;

typedef enum OrbMembership {
  ORB_MEMBERSHIP_MEMBER = 0,
  ORB_MEMBERSHIP_NON_MEMBER_LIKELY = 1,
  ORB_MEMBERSHIP_INCONCLUSIVE = 2,
} OrbMembership;

// The outcome of a spectrahedral membership test.
typedef struct OrbMembershipResult OrbMembershipResult;

// A finite point set in `R^dim`, used as the vertex list of a hull query.
typedef struct OrbPointSet OrbPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` as a
// NUL-terminated string, truncating to `cap`. Returns the length the full
// message needs, including the terminator.
//
// # Safety
// `buf` must be null or valid for `cap` bytes.
size_t orb_last_error_message(char *buf, size_t cap);

// The arc length `2pi(k-1)/(2k-1)` separating edges from non-edges.
double orb_edge_threshold(size_t k);

// Writes `C_k(theta)`, `k` values, into `buf`.
//
// # Safety
// `buf` must be valid for `cap` doubles; `written` may be null.
enum OrbStatus orb_eval_c(size_t k, double theta, double *buf, size_t cap, size_t *written);

// Writes `SM_2k(theta)`, `2k` values, into `buf`.
//
// # Safety
// `buf` must be valid for `cap` doubles; `written` may be null.
enum OrbStatus orb_eval_sm(size_t k, double theta, double *buf, size_t cap, size_t *written);

// Evaluates the facet functional `f_{j,k}` on the curve at `theta`.
//
// # Safety
// `value` must be valid for writing.
enum OrbStatus orb_eval_f(size_t k, size_t j, double theta, double *value);

// Writes the `2k-3` roots of `f_{j,k}` in `[0, pi]`, ascending, in radians.
//
// # Safety
// `buf` must be valid for `cap` doubles; `written` may be null.
enum OrbStatus orb_f_roots(size_t k, size_t j, double *buf, size_t cap, size_t *written);

// Classifies the chord between `SM_2k(alpha)` and `SM_2k(beta)`.
// `arc_length` may be null.
//
// # Safety
// `verdict` must be valid for writing; `arc_length` null or valid.
enum OrbStatus orb_edge_verdict(size_t k,
                                double alpha,
                                double beta,
                                size_t num_samples,
                                enum OrbVerdict *verdict,
                                double *arc_length);

// Estimates the edge threshold from sampled hulls. `bracket_lo` and
// `bracket_hi` may be null.
//
// # Safety
// `psi_hat` must be valid for writing; the bracket pointers null or valid.
enum OrbStatus orb_estimate_threshold(size_t k,
                                      size_t num_samples,
                                      double resolution,
                                      double *psi_hat,
                                      double *bracket_lo,
                                      double *bracket_hi);

// Builds a point set from `count` points of dimension `dim`, stored row
// after row in `coords`.
//
// # Safety
// `coords` must be valid for `count * dim` doubles; `set` for writing.
enum OrbStatus orb_point_set_new(const double *coords,
                                 size_t count,
                                 size_t dim,
                                 struct OrbPointSet **set);

// The point set `C_k(2 pi i / n)`, `i = 0..n-1`.
//
// # Safety
// `set` must be valid for writing.
enum OrbStatus orb_point_set_cosine_samples(size_t k, size_t n, struct OrbPointSet **set);

// # Safety
// `set` must be null or a handle from this library not yet freed.
void orb_point_set_free(struct OrbPointSet *set);

// # Safety
// `set` must be null or a live handle.
size_t orb_point_set_len(const struct OrbPointSet *set);

// # Safety
// `set` must be null or a live handle.
size_t orb_point_set_dim(const struct OrbPointSet *set);

// Tests whether `query` lies in the convex hull of `set`. On a miss,
// `margin` receives the separation distance; on a hit it is zero.
//
// # Safety
// `set` must be a live handle, `query` valid for `dim` doubles, `member`
// valid for writing, and `margin` null or valid.
enum OrbStatus orb_in_hull(const struct OrbPointSet *set,
                           const double *query,
                           size_t dim,
                           double tol,
                           bool *member,
                           double *margin);

// Tests membership of a point of `R^2k` in `B_2k` through its Toeplitz
// spectrahedron. `len` must be even.
//
// # Safety
// `point` must be valid for `len` doubles and `result` for writing.
enum OrbStatus orb_membership_new(const double *point,
                                  size_t len,
                                  size_t max_iters,
                                  double tol,
                                  struct OrbMembershipResult **result);

// # Safety
// `result` must be null or a handle from this library not yet freed.
void orb_membership_free(struct OrbMembershipResult *result);

// # Safety
// `result` must be a live handle.
enum OrbMembership orb_membership_verdict(const struct OrbMembershipResult *result);

// Smallest eigenvalue of the final Toeplitz iterate; NaN for a null handle.
//
// # Safety
// `result` must be null or a live handle.
double orb_membership_min_eigenvalue(const struct OrbMembershipResult *result);

// Distance of the final iterate from the PSD cone; NaN for a null handle.
//
// # Safety
// `result` must be null or a live handle.
double orb_membership_residual(const struct OrbMembershipResult *result);

// # Safety
// `result` must be null or a live handle.
size_t orb_membership_iterations(const struct OrbMembershipResult *result);

// Writes the `k-1` even-diagonal witness entries as separate real and
// imaginary parts.
//
// # Safety
// `result` must be a live handle; `re` and `im` valid for `cap` doubles;
// `written` null or valid.
enum OrbStatus orb_membership_witness(const struct OrbMembershipResult *result,
                                      double *re,
                                      double *im,
                                      size_t cap,
                                      size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITOPE_H */
