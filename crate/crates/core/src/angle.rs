//! Angles on the circle, either exact rational multiples of pi or plain
//! radians, with cosine evaluation that reduces the argument exactly.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::tolerances::{ANGLE_EQ, CHEBYSHEV_DOMAIN};

/// An angle, canonicalized into `[0, 2pi)`.
///
/// `RationalPi { p, q }` stands for `p*pi/q` with `gcd(p, q) = 1` and
/// `0 <= p < 2q`. Node angles are always built this way so that incidence
/// checks hit facets exactly. `Real` keeps its input value and reports
/// the canonical representative through [`Angle::to_radians`].
#[derive(Debug, Clone, Copy)]
pub enum Angle {
    RationalPi { p: i64, q: i64 },
    Real(f64),
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

impl Angle {
    /// `p*pi/q`, reduced mod `2pi` and then by `gcd`.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(invalid(format!("denominator must be positive, got {q}")));
        }
        let p = (p as i128).rem_euclid(2 * q as i128) as i64;
        if p == 0 {
            return Ok(Angle::RationalPi { p: 0, q: 1 });
        }
        let g = gcd(p, q);
        Ok(Angle::RationalPi { p: p / g, q: q / g })
    }

    pub fn radians(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(invalid(format!("angle must be finite, got {value}")));
        }
        Ok(Angle::Real(value))
    }

    pub fn zero() -> Self {
        Angle::RationalPi { p: 0, q: 1 }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::RationalPi { .. })
    }

    /// Value in radians, in `[0, 2pi)`.
    pub fn to_radians(&self) -> f64 {
        match *self {
            Angle::RationalPi { p, q } => p as f64 * PI / q as f64,
            Angle::Real(v) => canonical(v),
        }
    }

    /// Value in radians without reduction; `Real` angles keep their input
    /// so that negation and sums stay exact.
    fn raw(&self) -> f64 {
        match *self {
            Angle::RationalPi { p, q } => p as f64 * PI / q as f64,
            Angle::Real(v) => v,
        }
    }

    /// The angle `-theta`.
    pub fn neg(&self) -> Self {
        match *self {
            Angle::RationalPi { p, q } => Angle::rational(-p, q).expect("q > 0"),
            Angle::Real(v) => Angle::radians(-v).expect("finite"),
        }
    }

    /// Sum of two angles; exact when both operands are exact.
    pub fn add(&self, other: &Angle) -> Self {
        match (*self, *other) {
            (Angle::RationalPi { p: p1, q: q1 }, Angle::RationalPi { p: p2, q: q2 }) => {
                let q = q1 / gcd(q1, q2) * q2;
                Angle::rational(p1 * (q / q1) + p2 * (q / q2), q).expect("q > 0")
            }
            _ => Angle::radians(self.raw() + other.raw()).expect("finite"),
        }
    }

    pub fn sub(&self, other: &Angle) -> Self {
        self.add(&other.neg())
    }

    /// Shift by a real offset. The result is always a `Real` angle.
    pub fn offset(&self, delta: f64) -> Result<Self> {
        Angle::radians(self.raw() + delta)
    }

    /// Length of the shorter arc between `e^{i self}` and `e^{i other}`.
    pub fn arc_to(&self, other: &Angle) -> f64 {
        let d = (self.raw() - other.raw()).rem_euclid(TAU);
        d.min(TAU - d)
    }

    /// `cos(d*theta)`.
    pub fn cos_mul(&self, d: i64) -> f64 {
        cos_at(d, self)
    }

    /// `sin(d*theta)`.
    pub fn sin_mul(&self, d: i64) -> f64 {
        sin_at(d, self)
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::RationalPi { p: a, q: b }, Angle::RationalPi { p: c, q: d }) => a == c && b == d,
            _ => self.arc_to(other) < ANGLE_EQ,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::RationalPi { p: 0, .. } => write!(f, "0"),
            Angle::RationalPi { p: 1, q: 1 } => write!(f, "pi"),
            Angle::RationalPi { p, q: 1 } => write!(f, "{p}*pi"),
            Angle::RationalPi { p: 1, q } => write!(f, "pi/{q}"),
            Angle::RationalPi { p, q } => write!(f, "{p}*pi/{q}"),
            Angle::Real(v) => write!(f, "{}", canonical(v)),
        }
    }
}

/// Parses decimal radians or the exact forms `pi`, `p*pi`, `pi/q`,
/// `p*pi/q` (an optional leading `-` is allowed).
impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.contains("pi") {
            let v: f64 = t
                .parse()
                .map_err(|_| invalid(format!("cannot parse angle '{s}'")))?;
            return Angle::radians(v);
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest.trim()),
            None => (1, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (body, "1"),
        };
        let q: i64 = den
            .parse()
            .map_err(|_| invalid(format!("bad denominator in angle '{s}'")))?;
        let p: i64 = match num.strip_suffix("pi").map(str::trim) {
            Some("") => 1,
            Some(coef) => coef
                .strip_suffix('*')
                .unwrap_or(coef)
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad numerator in angle '{s}'")))?,
            None => return Err(invalid(format!("cannot parse angle '{s}'"))),
        };
        Angle::rational(sign * p, q)
    }
}

fn canonical(v: f64) -> f64 {
    let r = v.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `x` reduced into `[-pi, pi]`; odd in `x`, so `sin` stays odd.
fn reduce_symmetric(x: f64) -> f64 {
    x - TAU * (x / TAU).round()
}

/// `cos(r*pi/q)` for `0 <= r < 2q`, folded into the first octant first.
fn cos_rational(r: i64, q: i64) -> f64 {
    // cos(2pi - x) = cos(x)
    let r = if r > q { 2 * q - r } else { r };
    // cos(pi - x) = -cos(x)
    let (sign, r) = if 2 * r > q { (-1.0, q - r) } else { (1.0, r) };
    // now x = r*pi/q in [0, pi/2]
    let v = if 3 * r == q {
        0.5
    } else if 4 * r >= q {
        ((q - 2 * r) as f64 * PI / (2 * q) as f64).sin()
    } else {
        (r as f64 * PI / q as f64).cos()
    };
    sign * v
}

/// `cos(d*theta)`, with `d*p` reduced mod `2q` in integer arithmetic for
/// exact angles and `d*theta` reduced mod `2pi` otherwise.
pub fn cos_at(d: i64, theta: &Angle) -> f64 {
    match *theta {
        Angle::RationalPi { p, q } => {
            let r = (d as i128 * p as i128).rem_euclid(2 * q as i128) as i64;
            cos_rational(r, q)
        }
        Angle::Real(v) => reduce_symmetric(d as f64 * v).cos(),
    }
}

/// `sin(d*theta)`, using `sin(x) = cos(x - pi/2)` on the exact path.
pub fn sin_at(d: i64, theta: &Angle) -> f64 {
    match *theta {
        Angle::RationalPi { p, q } => {
            // sin(d p pi / q) = cos((2 d p - q) pi / (2q))
            let q2 = 2 * q as i128;
            let r = (2 * d as i128 * p as i128 - q as i128).rem_euclid(2 * q2) as i64;
            cos_rational(r, q2 as i64)
        }
        Angle::Real(v) => reduce_symmetric(d as f64 * v).sin(),
    }
}

/// Chebyshev polynomial `T_d(x)` by the three-term recurrence.
///
/// This is the independent cross-check for [`cos_at`], not the primary
/// evaluation path; the recurrence loses accuracy near `|x| = 1`.
pub fn chebyshev_t(d: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + CHEBYSHEV_DOMAIN {
        return Err(invalid(format!("chebyshev_t needs |x| <= 1, got {x}")));
    }
    if d == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..d {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_canonical_forms() {
        assert_eq!(Angle::rational(1, 2).unwrap(), Angle::RationalPi { p: 1, q: 2 });
        assert_eq!(Angle::rational(5, 2).unwrap(), Angle::RationalPi { p: 1, q: 2 });
        assert_eq!(Angle::rational(4, 10).unwrap(), Angle::RationalPi { p: 2, q: 5 });
        assert_eq!(Angle::rational(-1, 3).unwrap(), Angle::RationalPi { p: 5, q: 3 });
        assert_eq!(Angle::rational(6, 3).unwrap(), Angle::RationalPi { p: 0, q: 1 });
        assert!(Angle::rational(1, 0).is_err());
        assert!(Angle::rational(1, -2).is_err());
    }

    #[test]
    fn real_angles_are_wrapped() {
        let a = Angle::radians(-0.5).unwrap();
        assert!((a.to_radians() - (TAU - 0.5)).abs() < 1e-15);
        assert!(Angle::radians(f64::NAN).is_err());
        assert!(Angle::radians(f64::INFINITY).is_err());
        let tiny = Angle::radians(-1e-300).unwrap();
        assert!(tiny.to_radians() < TAU);
    }

    #[test]
    fn cos_at_examples() {
        let half = Angle::rational(1, 2).unwrap();
        assert_eq!(cos_at(3, &half), 0.0);
        let node = Angle::rational(2, 5).unwrap();
        let closed = (5f64.sqrt() - 1.0) / 4.0;
        assert!((cos_at(1, &node) - closed).abs() < 1e-15);
        assert_eq!(cos_at(5, &node), 1.0);
        assert_eq!(sin_at(1, &half), 1.0);
        assert_eq!(sin_at(3, &half), -1.0);
        assert_eq!(sin_at(2, &half), 0.0);
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_t(0, 0.3).unwrap(), 1.0);
        assert!((chebyshev_t(2, 0.5).unwrap() + 0.5).abs() < 1e-15);
        let node = Angle::rational(2, 5).unwrap();
        let t7 = chebyshev_t(7, cos_at(1, &node)).unwrap();
        assert!((t7 - cos_at(7, &node)).abs() < 1e-12);
        assert!((t7 + 0.809_016_994_374_947_4).abs() < 1e-12);
        assert!(chebyshev_t(3, 1.01).is_err());
    }

    #[test]
    fn parse_angles() {
        assert_eq!("pi/2".parse::<Angle>().unwrap(), Angle::rational(1, 2).unwrap());
        assert_eq!("2*pi/5".parse::<Angle>().unwrap(), Angle::rational(2, 5).unwrap());
        assert_eq!("-pi/3".parse::<Angle>().unwrap(), Angle::rational(5, 3).unwrap());
        assert_eq!("3pi".parse::<Angle>().unwrap(), Angle::rational(1, 1).unwrap());
        assert_eq!("pi".parse::<Angle>().unwrap(), Angle::rational(1, 1).unwrap());
        let r: Angle = "1.25".parse().unwrap();
        assert!(!r.is_exact());
        assert!((r.to_radians() - 1.25).abs() < 1e-15);
        assert!("x*pi/3".parse::<Angle>().is_err());
        assert!("pi/0".parse::<Angle>().is_err());
    }

    #[test]
    fn exact_arithmetic() {
        let a = Angle::rational(2, 5).unwrap();
        let b = Angle::rational(1, 3).unwrap();
        assert_eq!(a.add(&b), Angle::rational(11, 15).unwrap());
        assert_eq!(a.sub(&a), Angle::zero());
        assert!((a.arc_to(&a.neg()) - 4.0 * PI / 5.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn chebyshev_matches_cosine(d in 0u32..=100, theta in 0.0f64..TAU) {
            let a = Angle::radians(theta).unwrap();
            let rec = chebyshev_t(d, theta.cos()).unwrap();
            let direct = (d as f64 * theta).cos();
            // cos_at reduces d*theta first; the identity is against the
            // unreduced product so both sides see the same input angle.
            prop_assert!((rec - direct).abs() < 1e-10);
            prop_assert!((cos_at(d as i64, &a) - direct).abs() < 1e-10);
        }

        #[test]
        fn exact_nodes_invariant_under_full_turn(p in -200i64..200, q in 1i64..60, d in -40i64..40) {
            let a = Angle::RationalPi { p, q };
            let b = Angle::RationalPi { p: p + 2 * q, q };
            prop_assert_eq!(cos_at(d, &a).to_bits(), cos_at(d, &b).to_bits());
            prop_assert_eq!(sin_at(d, &a).to_bits(), sin_at(d, &b).to_bits());
        }

        #[test]
        fn exact_and_float_paths_agree(p in 0i64..400, q in 1i64..200, d in 0i64..60) {
            let a = Angle::rational(p, q).unwrap();
            let x = d as f64 * p as f64 * PI / q as f64;
            prop_assert!((cos_at(d, &a) - x.cos()).abs() < 1e-11);
            prop_assert!((sin_at(d, &a) - x.sin()).abs() < 1e-11);
        }
    }
}
