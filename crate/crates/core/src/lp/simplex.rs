//! Dense two-phase revised simplex for `min c.x  s.t.  A x = b, x >= 0`.
//!
//! Entering columns are chosen by most negative reduced cost until the
//! objective stalls on degenerate pivots; from then on the phase runs
//! Bland's rule (lowest-index entering column, lowest-index basic variable
//! on ratio ties), which cannot cycle. The basis inverse is refactored from
//! the original data every few pivots so rounding does not accumulate.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerances::{DUALITY_GAP, LP_FEASIBILITY};

const TINY_PIVOT: f64 = 1e-12;
const HARRIS_SLACK: f64 = 1e-12;
const COST_EPS: f64 = 1e-10;
const REFACTOR_EVERY: usize = 32;
const STALL_PIVOTS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct StandardSolution {
    pub status: StandardStatus,
    pub x: Vec<f64>,
    /// Simplex multipliers: optimal duals when `Optimal`, a Farkas ray
    /// (`A^T y <= 0`, `b.y > 0`) when `Infeasible`.
    pub y: Vec<f64>,
    pub objective: f64,
    pub duality_gap: f64,
    pub iterations: usize,
}

/// Row-sign-normalized problem with `m` artificial identity columns
/// appended after the `n` structural ones.
struct Revised {
    m: usize,
    n: usize,
    /// Column-major structural matrix, `m` entries per column.
    cols: Vec<f64>,
    b: Vec<f64>,
    basis: Vec<usize>,
    binv: DMatrix<f64>,
    xb: Vec<f64>,
    iterations: usize,
    since_refactor: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Revised {
    fn column(&self, j: usize) -> DVector<f64> {
        if j < self.n {
            DVector::from_column_slice(&self.cols[j * self.m..(j + 1) * self.m])
        } else {
            let mut e = DVector::zeros(self.m);
            e[j - self.n] = 1.0;
            e
        }
    }

    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        let mut bm = DMatrix::zeros(m, m);
        for (k, &j) in self.basis.iter().enumerate() {
            bm.set_column(k, &self.column(j));
        }
        let lu = bm.lu();
        let singular = || Error::Numerical("singular simplex basis".into());
        // Basic values come from the LU solve, which keeps the residual small
        // even when the basis is badly conditioned.
        let xb = lu.solve(&DVector::from_column_slice(&self.b)).ok_or_else(singular)?;
        self.binv = lu.try_inverse().ok_or_else(singular)?;
        self.xb = xb.iter().map(|&v| if v.abs() < 1e-13 { 0.0 } else { v }).collect();
        self.since_refactor = 0;
        Ok(())
    }

    /// Multipliers `y = c_B^T B^-1` for the given full cost vector.
    fn multipliers(&self, cost: &[f64]) -> DVector<f64> {
        let cb = DVector::from_iterator(self.m, self.basis.iter().map(|&j| cost[j]));
        self.binv.tr_mul(&cb)
    }

    fn reduced_cost(&self, cost: &[f64], y: &DVector<f64>, j: usize) -> f64 {
        if j < self.n {
            let col = &self.cols[j * self.m..(j + 1) * self.m];
            cost[j] - col.iter().zip(y.iter()).map(|(a, b)| a * b).sum::<f64>()
        } else {
            cost[j] - y[j - self.n]
        }
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        self.basis.iter().zip(&self.xb).map(|(&j, x)| cost[j] * x).sum()
    }

    fn pivot(&mut self, r: usize, q: usize, u: &DVector<f64>) -> Result<()> {
        let m = self.m;
        let ur = u[r];
        let theta = self.xb[r].max(0.0) / ur;
        for i in 0..m {
            if i != r {
                self.xb[i] -= theta * u[i];
                if self.xb[i].abs() < 1e-13 {
                    self.xb[i] = 0.0;
                }
            }
        }
        self.xb[r] = theta;
        let pivot_row = self.binv.row(r).clone_owned() / ur;
        for i in 0..m {
            if i != r && u[i] != 0.0 {
                let f = u[i];
                for c in 0..m {
                    self.binv[(i, c)] -= f * pivot_row[c];
                }
            }
        }
        self.binv.set_row(r, &pivot_row);
        self.basis[r] = q;
        self.iterations += 1;
        self.since_refactor += 1;
        if self.since_refactor >= REFACTOR_EVERY {
            self.refactor()?;
        }
        Ok(())
    }

    /// Runs pivots over entering candidates `j` with `allowed(j)`.
    fn optimize(
        &mut self,
        cost: &[f64],
        allowed: impl Fn(usize) -> bool,
        pin_artificials: bool,
        max_iter: usize,
    ) -> Result<Outcome> {
        let total = self.n + self.m;
        let mut bland = false;
        let mut best_obj = self.objective(cost);
        let mut stalled = 0usize;
        loop {
            if self.iterations > max_iter {
                return Err(Error::Numerical(format!("simplex exceeded {max_iter} pivots")));
            }
            let y = self.multipliers(cost);
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..total {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let d = self.reduced_cost(cost, &y, j);
                if d < -COST_EPS {
                    if bland {
                        entering = Some((j, d));
                        break;
                    }
                    if entering.is_none_or(|(_, bd)| d < bd) {
                        entering = Some((j, d));
                    }
                }
            }
            let Some((q, _)) = entering else {
                return Ok(Outcome::Optimal);
            };
            let u = &self.binv * self.column(q);
            // Harris two-pass ratio test: bound the step with a small
            // feasibility allowance, then take the largest pivot under it
            // (lowest basic index once Bland's rule is active).
            let mut bound = f64::INFINITY;
            // A basic artificial left over from phase one sits at zero and
            // must stay there, so it blocks any step that would move it.
            if pin_artificials {
                let pinned = (0..self.m)
                    .filter(|&i| self.basis[i] >= self.n && u[i].abs() > TINY_PIVOT)
                    .max_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()));
                if let Some(r) = pinned {
                    self.pivot(r, q, &u)?;
                    continue;
                }
            }
            for i in 0..self.m {
                if u[i] > TINY_PIVOT {
                    bound = bound.min((self.xb[i].max(0.0) + HARRIS_SLACK) / u[i]);
                }
            }
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                if u[i] > TINY_PIVOT && self.xb[i].max(0.0) / u[i] <= bound {
                    let better = match leave {
                        None => true,
                        Some((bi, bu)) => {
                            if bland {
                                self.basis[i] < self.basis[bi]
                            } else {
                                u[i] > bu
                            }
                        }
                    };
                    if better {
                        leave = Some((i, u[i]));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Ok(Outcome::Unbounded);
            };
            self.pivot(r, q, &u)?;
            let obj = self.objective(cost);
            if obj < best_obj - 1e-12 * (1.0 + best_obj.abs()) {
                best_obj = obj;
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= STALL_PIVOTS {
                    bland = true;
                }
            }
        }
    }
}

/// Solves `min c.x` subject to `A x = b`, `x >= 0`.
///
/// `a` is row-major with `b.len()` rows of `c.len()` entries. Every optimal
/// answer is checked against its dual before it is returned.
pub fn solve_standard(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<StandardSolution> {
    let m = b.len();
    let n = c.len();
    if a.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::MalformedLp("constraint matrix shape".into()));
    }
    if a.iter().flatten().chain(b).chain(c).any(|v| !v.is_finite()) {
        return Err(Error::MalformedLp("non-finite coefficient".into()));
    }
    let max_iter = 50 * (m + n) + 10_000;

    // Row signs so the right-hand side is nonnegative.
    let sign: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    let mut cols = vec![0.0; m * n];
    for j in 0..n {
        for i in 0..m {
            cols[j * m + i] = sign[i] * a[i][j];
        }
    }
    let mut lp = Revised {
        m,
        n,
        cols,
        b: b.iter().zip(&sign).map(|(v, s)| v * s).collect(),
        basis: (n..n + m).collect(),
        binv: DMatrix::identity(m, m),
        xb: Vec::new(),
        iterations: 0,
        since_refactor: 0,
    };
    lp.refactor()?;
    let scale = 1.0 + b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));

    // Phase one: minimize the sum of artificials.
    let mut phase1 = vec![0.0; n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = 1.0;
    }
    lp.optimize(&phase1, |_| true, false, max_iter)?;
    lp.refactor()?;
    let infeasibility = lp.objective(&phase1);
    if infeasibility > LP_FEASIBILITY * scale {
        let y = lp.multipliers(&phase1);
        return Ok(StandardSolution {
            status: StandardStatus::Infeasible,
            x: vec![0.0; n],
            y: (0..m).map(|i| sign[i] * y[i]).collect(),
            objective: f64::NAN,
            duality_gap: f64::NAN,
            iterations: lp.iterations,
        });
    }

    // Drive basic artificials out; rows that cannot be cleared are redundant.
    for r in 0..m {
        if lp.basis[r] >= n {
            let row = lp.binv.row(r).clone_owned();
            let found = (0..n).filter(|j| !lp.basis.contains(j)).find(|&j| {
                let col = &lp.cols[j * m..(j + 1) * m];
                let v: f64 = col.iter().zip(row.iter()).map(|(a, b)| a * b).sum();
                v.abs() > 1e-7
            });
            if let Some(j) = found {
                let u = &lp.binv * lp.column(j);
                lp.pivot(r, j, &u)?;
            }
        }
    }
    lp.refactor()?;

    let mut cost = vec![0.0; n + m];
    cost[..n].copy_from_slice(c);
    match lp.optimize(&cost, |j| j < n, true, max_iter)? {
        Outcome::Unbounded => {
            return Ok(StandardSolution {
                status: StandardStatus::Unbounded,
                x: vec![0.0; n],
                y: vec![0.0; m],
                objective: f64::NEG_INFINITY,
                duality_gap: f64::NAN,
                iterations: lp.iterations,
            })
        }
        Outcome::Optimal => {}
    }
    lp.refactor()?;

    let mut x = vec![0.0; n];
    for (r, &j) in lp.basis.iter().enumerate() {
        if j < n {
            x[j] = lp.xb[r].max(0.0);
        }
    }
    let yf = lp.multipliers(&cost);
    let y: Vec<f64> = (0..m).map(|i| sign[i] * yf[i]).collect();
    let objective: f64 = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    let dual_objective: f64 = b.iter().zip(&y).map(|(bi, yi)| bi * yi).sum();
    let duality_gap = (objective - dual_objective).abs();

    // Independent check from the original data.
    let cscale = 1.0 + c.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for (i, row) in a.iter().enumerate() {
        let lhs: f64 = row.iter().zip(&x).map(|(aij, xj)| aij * xj).sum();
        if (lhs - b[i]).abs() > 10.0 * LP_FEASIBILITY * scale {
            return Err(Error::Numerical(format!(
                "primal residual {} on row {i}",
                (lhs - b[i]).abs()
            )));
        }
    }
    for j in 0..n {
        let reduced = c[j] - (0..m).map(|i| a[i][j] * y[i]).sum::<f64>();
        if reduced < -DUALITY_GAP * cscale * scale {
            return Err(Error::Numerical(format!(
                "dual infeasible reduced cost {reduced} at column {j}"
            )));
        }
    }
    if duality_gap > DUALITY_GAP * (1.0 + objective.abs()) {
        return Err(Error::Numerical(format!("duality gap {duality_gap}")));
    }
    Ok(StandardSolution {
        status: StandardStatus::Optimal,
        x,
        y,
        objective,
        duality_gap,
        iterations: lp.iterations,
    })
}
