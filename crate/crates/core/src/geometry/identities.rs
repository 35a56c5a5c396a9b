//! The three cosine-sum identities over the nodes `2j*pi/(2k-1)`, each of
//! which evaluates to `-1/2`.

use std::fmt;

use crate::angle::Angle;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigIdentity {
    /// `sum_{j=1}^{k-1} cos((2l-1) 2j pi/(2k-1))`, `l` in `1..=k-1`.
    Sum2 { l: usize },
    /// `sum_{l=1}^{k-1} cos((2l-1) 2j pi/(2k-1))`, `j` in `1..=2k-2`.
    Sum { j: usize },
    /// `sum_{l=1}^{k-1} cos((2l-1) 2i pi/(2k-1)) cos((2l-1) 2j pi/(2k-1))`,
    /// `i != j` in `0..=k-1`.
    ProdSum { i: usize, j: usize },
}

impl fmt::Display for TrigIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrigIdentity::Sum2 { l } => write!(f, "sum2(l={l})"),
            TrigIdentity::Sum { j } => write!(f, "sum(j={j})"),
            TrigIdentity::ProdSum { i, j } => write!(f, "prodsum(i={i},j={j})"),
        }
    }
}

impl TrigIdentity {
    pub fn family(&self) -> &'static str {
        match self {
            TrigIdentity::Sum2 { .. } => "sum2",
            TrigIdentity::Sum { .. } => "sum",
            TrigIdentity::ProdSum { .. } => "prodsum",
        }
    }
}

/// `cos(m * 2n pi/(2k-1))` with exact reduction.
fn node_cos(k: usize, m: usize, n: usize) -> f64 {
    let t = Angle::rational(2 * n as i64, 2 * k as i64 - 1).expect("k >= 1");
    t.cos_mul(m as i64)
}

/// Returns `|sum - (-1/2)|` for one instance of an identity.
pub fn trig_identity_check(which: TrigIdentity, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    let odd = |l: usize| 2 * l - 1;
    let sum: f64 = match which {
        TrigIdentity::Sum2 { l } => {
            if !(1..k).contains(&l) {
                return Err(invalid(format!("Sum2 needs l in 1..={}, got {l}", k - 1)));
            }
            (1..k).map(|j| node_cos(k, odd(l), j)).sum()
        }
        TrigIdentity::Sum { j } => {
            if !(1..=2 * k - 2).contains(&j) {
                return Err(invalid(format!("Sum needs j in 1..={}, got {j}", 2 * k - 2)));
            }
            (1..k).map(|l| node_cos(k, odd(l), j)).sum()
        }
        TrigIdentity::ProdSum { i, j } => {
            if i == j || i >= k || j >= k {
                return Err(invalid(format!("ProdSum needs i != j in 0..{k}, got ({i}, {j})")));
            }
            (1..k).map(|l| node_cos(k, odd(l), i) * node_cos(k, odd(l), j)).sum()
        }
    };
    Ok((sum + 0.5).abs())
}

/// Every valid instance for a given `k`: `k-1` of `Sum2`, `2k-2` of `Sum`,
/// and `k(k-1)` ordered pairs of `ProdSum`.
pub fn trig_identity_instances(k: usize) -> Vec<TrigIdentity> {
    let mut out = Vec::new();
    if k < 2 {
        return out;
    }
    out.extend((1..k).map(|l| TrigIdentity::Sum2 { l }));
    out.extend((1..=2 * k - 2).map(|j| TrigIdentity::Sum { j }));
    for i in 0..k {
        for j in 0..k {
            if i != j {
                out.push(TrigIdentity::ProdSum { i, j });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_instances() {
        assert!(trig_identity_check(TrigIdentity::Sum2 { l: 1 }, 3).unwrap() < 1e-15);
        assert!(trig_identity_check(TrigIdentity::Sum { j: 1 }, 2).unwrap() < 1e-15);
        assert!(trig_identity_check(TrigIdentity::ProdSum { i: 0, j: 1 }, 3).unwrap() < 1e-15);
    }

    #[test]
    fn instance_counts() {
        assert_eq!(trig_identity_instances(3).len(), 2 + 4 + 6);
        assert_eq!(trig_identity_instances(2).len(), 1 + 2 + 2);
        assert!(trig_identity_instances(1).is_empty());
    }

    #[test]
    fn out_of_range_indices() {
        assert!(trig_identity_check(TrigIdentity::Sum2 { l: 0 }, 3).is_err());
        assert!(trig_identity_check(TrigIdentity::Sum2 { l: 3 }, 3).is_err());
        assert!(trig_identity_check(TrigIdentity::Sum { j: 5 }, 3).is_err());
        assert!(trig_identity_check(TrigIdentity::ProdSum { i: 1, j: 1 }, 3).is_err());
        assert!(trig_identity_check(TrigIdentity::ProdSum { i: 0, j: 3 }, 3).is_err());
        assert!(trig_identity_check(TrigIdentity::Sum { j: 1 }, 1).is_err());
    }

    #[test]
    fn brute_force_float_sums_agree() {
        use std::f64::consts::PI;
        for k in 2..=15usize {
            let q = (2 * k - 1) as f64;
            for l in 1..k {
                let direct: f64 = (1..k)
                    .map(|j| ((2 * l - 1) as f64 * 2.0 * j as f64 * PI / q).cos())
                    .sum();
                assert!((direct + 0.5).abs() < 1e-12);
                let r = trig_identity_check(TrigIdentity::Sum2 { l }, k).unwrap();
                assert!(r < 1e-12);
            }
        }
    }
}
