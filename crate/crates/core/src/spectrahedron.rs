//! Hermitian Toeplitz lift of `B_2k`.
//!
//! A point `(x_1, x_3, ..., x_{2k-1}, y_1, ..., y_{2k-1})` lies in `B_2k`
//! iff there are complex `z_2, z_4, ..., z_{2k-2}` making the unit-diagonal
//! Hermitian Toeplitz matrix with `z_d` on the `d`-th superdiagonal
//! positive semidefinite, where `z_j = x_j + i y_j` for odd `j`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::tolerances::PSD_EIGENVALUE;

/// Size-`2k` Hermitian Toeplitz matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianToeplitz {
    k: usize,
    /// `z_1, ..., z_{2k-1}`
    diagonals: Vec<Complex64>,
}

impl HermitianToeplitz {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        2 * self.k
    }

    /// `z_d` for `d` in `1..=2k-1`.
    pub fn z(&self, d: usize) -> Complex64 {
        self.diagonals[d - 1]
    }

    pub fn diagonals(&self) -> &[Complex64] {
        &self.diagonals
    }

    /// Entry `(i, i+d)` is `z_d`, entry `(i+d, i)` is `conj(z_d)`.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(1.0, 0.0)
            } else if c > r {
                self.diagonals[c - r - 1]
            } else {
                self.diagonals[r - c - 1].conj()
            }
        })
    }

    /// Even-index entries `z_2, z_4, ..., z_{2k-2}`.
    pub fn even_entries(&self) -> Vec<Complex64> {
        (1..self.k).map(|m| self.z(2 * m)).collect()
    }
}

/// Builds the matrix from the odd entries `z_1, z_3, ..., z_{2k-1}` (`k` of
/// them) and even entries `z_2, ..., z_{2k-2}` (`k-1` of them).
pub fn toeplitz_assemble(odd: &[Complex64], even: &[Complex64]) -> Result<HermitianToeplitz> {
    let k = odd.len();
    if k < 2 {
        return Err(invalid(format!("need at least 2 odd entries, got {k}")));
    }
    if even.len() != k - 1 {
        return Err(Error::DimensionMismatch { expected: k - 1, found: even.len() });
    }
    let mut diagonals = Vec::with_capacity(2 * k - 1);
    for d in 1..2 * k {
        diagonals.push(if d % 2 == 1 { odd[d / 2] } else { even[d / 2 - 1] });
    }
    Ok(HermitianToeplitz { k, diagonals })
}

/// Odd entries `z_j = x_j + i y_j` of a point of `R^2k`.
pub fn odd_entries_of(point: &[f64]) -> Result<Vec<Complex64>> {
    if point.len() < 4 || !point.len().is_multiple_of(2) {
        return Err(invalid(format!("point dimension must be 2k with k >= 2, got {}", point.len())));
    }
    let k = point.len() / 2;
    Ok((0..k).map(|l| Complex64::new(point[l], point[k + l])).collect())
}

fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// All eigenvalues in ascending order.
pub fn spectrum(m: &HermitianToeplitz) -> Vec<f64> {
    eigenvalues(&m.to_matrix())
}

pub fn min_eigenvalue(m: &HermitianToeplitz) -> f64 {
    spectrum(m)[0]
}

/// Frobenius-nearest PSD matrix: negative eigenvalues clipped to zero.
pub fn project_psd(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > 0.0 {
            let v = eig.eigenvectors.column(i);
            out += v * v.adjoint() * Complex64::new(lambda, 0.0);
        }
    }
    // symmetrize away rounding
    (&out + out.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Frobenius-nearest unit-diagonal Hermitian Toeplitz matrix whose odd
/// diagonals are fixed: each even diagonal is averaged.
fn project_affine(m: &DMatrix<Complex64>, odd: &[Complex64]) -> HermitianToeplitz {
    let n = m.nrows();
    let k = n / 2;
    let even: Vec<Complex64> = (1..k)
        .map(|half| {
            let d = 2 * half;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n - d {
                acc += m[(i, i + d)] + m[(i + d, i)].conj();
            }
            acc / (2.0 * (n - d) as f64)
        })
        .collect();
    toeplitz_assemble(odd, &even).expect("consistent sizes")
}

/// Frobenius distance from the PSD cone: `sqrt(sum min(lambda, 0)^2)`.
fn psd_distance(eigs: &[f64]) -> f64 {
    eigs.iter().map(|&l| l.min(0.0).powi(2)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    NonMemberLikely,
    Inconclusive,
}

impl Membership {
    pub fn label(&self) -> &'static str {
        match self {
            Membership::Member => "Member",
            Membership::NonMemberLikely => "NonMemberLikely",
            Membership::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict {
    pub verdict: Membership,
    /// Final Toeplitz iterate; its even entries are the witness for `Member`.
    pub matrix: HermitianToeplitz,
    /// Distance of the final iterate from the PSD cone.
    pub residual: f64,
    pub min_eigenvalue: f64,
    pub iterations_used: usize,
}

impl MembershipVerdict {
    pub fn witness(&self) -> Vec<Complex64> {
        self.matrix.even_entries()
    }
}

/// Iterations without `1e-12` of progress before giving up as stagnant.
const STAGNATION_WINDOW: usize = 100;

/// Membership in `B_2k` by alternating projections between the PSD cone
/// and the affine set of admissible Toeplitz matrices.
///
/// `Member` once the Toeplitz iterate is within `tol` of the PSD cone;
/// `NonMemberLikely` when the residual stays above `10 tol` and stops
/// improving; `Inconclusive` when `max_iters` runs out first.
pub fn b2k_membership(point: &[f64], max_iters: usize, tol: f64) -> Result<MembershipVerdict> {
    let odd = odd_entries_of(point)?;
    if point.iter().any(|v| !v.is_finite()) {
        return Err(invalid("point has non-finite coordinates"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let k = odd.len();
    let zero = vec![Complex64::new(0.0, 0.0); k - 1];
    let mut current = toeplitz_assemble(&odd, &zero)?;
    let mut history: Vec<f64> = Vec::new();
    for iter in 0..=max_iters {
        let m = current.to_matrix();
        let eigs = eigenvalues(&m);
        let residual = psd_distance(&eigs);
        let finish = |verdict| MembershipVerdict {
            verdict,
            matrix: current.clone(),
            residual,
            min_eigenvalue: eigs[0],
            iterations_used: iter,
        };
        if residual < tol && eigs[0] >= -PSD_EIGENVALUE.max(tol) {
            return Ok(finish(Membership::Member));
        }
        history.push(residual);
        if iter >= STAGNATION_WINDOW && residual > 10.0 * tol {
            let before = history[iter - STAGNATION_WINDOW];
            if before - residual < 1e-12 {
                return Ok(finish(Membership::NonMemberLikely));
            }
        }
        if iter == max_iters {
            return Ok(finish(Membership::Inconclusive));
        }
        current = project_affine(&project_psd(&m), &odd);
    }
    unreachable!("loop returns on the last iteration")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::curve::symmetric_coords;

    fn cis(t: f64) -> Complex64 {
        Complex64::from_polar(1.0, t)
    }

    #[test]
    fn curve_matrix_is_outer_product() {
        let t = 0.7;
        let m = toeplitz_assemble(&[cis(t), cis(3.0 * t)], &[cis(2.0 * t)]).unwrap();
        let v = nalgebra::DVector::from_vec(vec![cis(3.0 * t), cis(2.0 * t), cis(t), cis(0.0)]);
        let outer = &v * v.adjoint();
        assert!((m.to_matrix() - outer).norm() < 1e-14);
        let ev = spectrum(&m);
        assert!(ev[0].abs() < 1e-10);
        assert!((ev[3] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn zero_entries_give_identity() {
        let z = Complex64::new(0.0, 0.0);
        let m = toeplitz_assemble(&[z, z], &[z]).unwrap();
        assert_eq!(m.to_matrix(), DMatrix::identity(4, 4));
        assert!((min_eigenvalue(&m) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn count_checks() {
        let z = Complex64::new(0.0, 0.0);
        assert!(toeplitz_assemble(&[z; 3], &[z; 2]).is_ok());
        assert!(toeplitz_assemble(&[z; 3], &[z; 3]).is_err());
        assert!(toeplitz_assemble(&[z; 1], &[]).is_err());
    }

    #[test]
    fn hermitian_by_construction() {
        let m = toeplitz_assemble(
            &[Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.4), Complex64::new(0.5, -0.6)],
            &[Complex64::new(0.7, 0.8), Complex64::new(-0.9, 0.15)],
        )
        .unwrap()
        .to_matrix();
        assert_eq!(m, m.adjoint());
    }

    #[test]
    fn scaled_curve_point_is_outside() {
        // |z_1| = 1.1 > 1 violates the leading 2x2 minor for any even entries.
        let t = 0.4;
        let odd = [cis(t) * 1.1, cis(3.0 * t) * 1.1];
        let best = toeplitz_assemble(&odd, &[cis(2.0 * t) * 1.1]).unwrap();
        assert!(min_eigenvalue(&best) < 0.0);
    }

    #[test]
    fn psd_projection_is_idempotent() {
        let m = toeplitz_assemble(
            &[Complex64::new(0.9, 0.3), Complex64::new(-0.5, 0.7)],
            &[Complex64::new(0.2, -0.8)],
        )
        .unwrap()
        .to_matrix();
        let p = project_psd(&m);
        let pp = project_psd(&p);
        assert!((&p - &pp).norm() < 1e-10);
        assert!(eigenvalues(&p)[0] > -1e-12);
    }

    #[test]
    fn membership_examples() {
        let origin = b2k_membership(&[0.0; 4], 100, 1e-9).unwrap();
        assert_eq!(origin.verdict, Membership::Member);
        assert!((origin.min_eigenvalue - 1.0).abs() < 1e-12);

        let p = symmetric_coords(2, &Angle::radians(1.0).unwrap());
        let v = b2k_membership(&p, 20_000, 1e-9).unwrap();
        assert_eq!(v.verdict, Membership::Member, "{v:?}");
        assert!(v.min_eigenvalue.abs() < 1e-8);
        assert!((v.witness()[0] - cis(2.0)).norm() < 1e-3);
    }

    #[test]
    fn far_point_is_rejected() {
        let v = b2k_membership(&[1.5, 0.0, 0.0, 0.0], 5_000, 1e-9).unwrap();
        assert_eq!(v.verdict, Membership::NonMemberLikely);
        assert!(b2k_membership(&[0.0; 3], 10, 1e-9).is_err());
    }
}
