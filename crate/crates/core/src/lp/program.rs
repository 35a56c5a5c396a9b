//! General linear programs and their reduction to standard form.

use super::simplex::{solve_standard, StandardStatus};
use crate::error::{Error, Result};
use crate::tolerances::LP_FEASIBILITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `optimize objective.x` subject to row constraints and per-variable bounds.
/// Bounds default to free, `(-inf, +inf)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); n],
        }
    }

    pub fn maximize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint(mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        self.add_constraint(coeffs, relation, rhs);
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn bound(mut self, var: usize, lo: f64, hi: f64) -> Self {
        self.set_bound(var, lo, hi);
        self
    }

    pub fn set_bound(&mut self, var: usize, lo: f64, hi: f64) {
        self.bounds[var] = (lo, hi);
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::MalformedLp("no variables".into()));
        }
        if self.bounds.len() != n {
            return Err(Error::MalformedLp("bounds length differs from objective".into()));
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::MalformedLp("non-finite objective".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedLp(format!(
                    "row {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
            if !c.rhs.is_finite() || c.coeffs.iter().any(|v| !v.is_finite()) {
                return Err(Error::MalformedLp(format!("row {i} has non-finite entries")));
            }
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(Error::MalformedLp(format!("bad bounds on variable {j}")));
            }
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (&(lo, hi), &v) in self.bounds.iter().zip(x) {
            worst = worst.max(lo - v).max(v - hi);
        }
        worst
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`lp_solve`]. `primal` and `objective_value` are meaningful
/// only when `status` is `Optimal`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpCertificate {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    pub objective_value: f64,
    /// Primal/dual objective gap of the underlying standard-form solve.
    pub duality_gap: f64,
    pub pivots: usize,
}

impl LpCertificate {
    fn without_solution(status: LpStatus, n: usize, pivots: usize) -> Self {
        LpCertificate {
            status,
            primal: vec![0.0; n],
            objective_value: f64::NAN,
            duality_gap: f64::NAN,
            pivots,
        }
    }
}

/// How variable `j` of the original program maps onto standard-form columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lo + x'`
    Lower { col: usize, lo: f64 },
    /// `x = hi - x'`
    Upper { col: usize, hi: f64 },
    /// `x = x+ - x-`
    Split { pos: usize, neg: usize },
}

/// Solves a linear program with the dense simplex.
///
/// The program is reduced either to standard form directly or, when it has
/// many more rows than columns, to the standard form of its dual; whichever
/// gives the smaller tableau. The result is deterministic for identical input.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpCertificate> {
    lp.validate()?;
    let n = lp.num_vars();
    let rows = lp.constraints.len()
        + lp.bounds.iter().filter(|(l, h)| l.is_finite() && h.is_finite()).count();
    let primal_cost = rows.max(1) * (2 * n + rows);
    let ineq_rows = lp
        .constraints
        .iter()
        .map(|c| if c.relation == Relation::Eq { 2 } else { 1 })
        .sum::<usize>()
        + lp.bounds.iter().map(|(l, h)| l.is_finite() as usize + h.is_finite() as usize).sum::<usize>();
    let dual_cost = n * ineq_rows.max(1);
    let cert = if dual_cost < primal_cost {
        solve_via_dual(lp)?
    } else {
        solve_primal(lp)?
    };
    if cert.status == LpStatus::Optimal {
        let viol = lp.max_violation(&cert.primal);
        if viol > 10.0 * LP_FEASIBILITY {
            return Err(Error::Numerical(format!("primal violation {viol}")));
        }
    }
    Ok(cert)
}

fn solve_primal(lp: &LinearProgram) -> Result<LpCertificate> {
    let n = lp.num_vars();
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut upper_rows: Vec<(usize, f64)> = Vec::new();
    for &(lo, hi) in &lp.bounds {
        if lo.is_finite() {
            maps.push(VarMap::Lower { col: ncols, lo });
            if hi.is_finite() {
                upper_rows.push((ncols, hi - lo));
            }
            ncols += 1;
        } else if hi.is_finite() {
            maps.push(VarMap::Upper { col: ncols, hi });
            ncols += 1;
        } else {
            maps.push(VarMap::Split { pos: ncols, neg: ncols + 1 });
            ncols += 2;
        }
    }
    let slack_count = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count()
        + upper_rows.len();
    let width = ncols + slack_count;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut slack = ncols;
    for c in &lp.constraints {
        let mut row = vec![0.0; width];
        let mut rhs = c.rhs;
        for (j, &coef) in c.coeffs.iter().enumerate() {
            match maps[j] {
                VarMap::Lower { col, lo } => {
                    row[col] += coef;
                    rhs -= coef * lo;
                }
                VarMap::Upper { col, hi } => {
                    row[col] -= coef;
                    rhs -= coef * hi;
                }
                VarMap::Split { pos, neg } => {
                    row[pos] += coef;
                    row[neg] -= coef;
                }
            }
        }
        match c.relation {
            Relation::Le => {
                row[slack] = 1.0;
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -1.0;
                slack += 1;
            }
            Relation::Eq => {}
        }
        a.push(row);
        b.push(rhs);
    }
    for &(col, range) in &upper_rows {
        let mut row = vec![0.0; width];
        row[col] = 1.0;
        row[slack] = 1.0;
        slack += 1;
        a.push(row);
        b.push(range);
    }
    let flip = if lp.sense == Sense::Maximize { -1.0 } else { 1.0 };
    let mut cost = vec![0.0; width];
    for (j, &cj) in lp.objective.iter().enumerate() {
        let cj = flip * cj;
        match maps[j] {
            VarMap::Lower { col, .. } => cost[col] += cj,
            VarMap::Upper { col, .. } => cost[col] -= cj,
            VarMap::Split { pos, neg } => {
                cost[pos] += cj;
                cost[neg] -= cj;
            }
        }
    }
    let sol = solve_standard(&a, &b, &cost)?;
    match sol.status {
        StandardStatus::Infeasible => Ok(LpCertificate::without_solution(LpStatus::Infeasible, n, sol.iterations)),
        StandardStatus::Unbounded => Ok(LpCertificate::without_solution(LpStatus::Unbounded, n, sol.iterations)),
        StandardStatus::Optimal => {
            let x: Vec<f64> = maps
                .iter()
                .map(|m| match *m {
                    VarMap::Lower { col, lo } => lo + sol.x[col],
                    VarMap::Upper { col, hi } => hi - sol.x[col],
                    VarMap::Split { pos, neg } => sol.x[pos] - sol.x[neg],
                })
                .collect();
            Ok(LpCertificate {
                status: LpStatus::Optimal,
                objective_value: lp.value(&x),
                primal: x,
                duality_gap: sol.duality_gap,
                pivots: sol.iterations,
            })
        }
    }
}

/// Rewrites the program as `max c.y  s.t.  G y <= h` with `y` free and solves
/// the dual `min h.u  s.t.  G^T u = c, u >= 0`; the primal optimum is read
/// off the dual's simplex multipliers.
fn solve_via_dual(lp: &LinearProgram) -> Result<LpCertificate> {
    let n = lp.num_vars();
    let mut g: Vec<Vec<f64>> = Vec::new();
    let mut h: Vec<f64> = Vec::new();
    for c in &lp.constraints {
        if matches!(c.relation, Relation::Le | Relation::Eq) {
            g.push(c.coeffs.clone());
            h.push(c.rhs);
        }
        if matches!(c.relation, Relation::Ge | Relation::Eq) {
            g.push(c.coeffs.iter().map(|v| -v).collect());
            h.push(-c.rhs);
        }
    }
    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        if lo.is_finite() {
            let mut row = vec![0.0; n];
            row[j] = -1.0;
            g.push(row);
            h.push(-lo);
        }
        if hi.is_finite() {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            g.push(row);
            h.push(hi);
        }
    }
    let flip = if lp.sense == Sense::Maximize { 1.0 } else { -1.0 };
    let c: Vec<f64> = lp.objective.iter().map(|v| flip * v).collect();
    let m = g.len();
    // Dual constraint matrix is G^T: n rows, m columns.
    let gt: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| g[i][j]).collect()).collect();
    let dual = solve_standard(&gt, &c, &h)?;
    match dual.status {
        StandardStatus::Optimal => {
            let y = dual.y.clone();
            Ok(LpCertificate {
                status: LpStatus::Optimal,
                objective_value: lp.value(&y),
                primal: y,
                duality_gap: dual.duality_gap,
                pivots: dual.iterations,
            })
        }
        StandardStatus::Unbounded => Ok(LpCertificate::without_solution(LpStatus::Infeasible, n, dual.iterations)),
        StandardStatus::Infeasible => {
            // Primal is infeasible or unbounded; feasibility alone decides.
            let zero = vec![0.0; n];
            let probe = solve_standard(&gt, &zero, &h)?;
            let status = match probe.status {
                StandardStatus::Optimal => LpStatus::Unbounded,
                _ => LpStatus::Infeasible,
            };
            Ok(LpCertificate::without_solution(status, n, dual.iterations + probe.iterations))
        }
    }
}
