//! Exact points of the circle `R/Z` and cyclic-order predicates.
//!
//! Every coordinate is a [`Rational`]; a [`CirclePoint`] stores its
//! representative in `[0,1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Fractional part in `[0,1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `floor(x)` as a machine integer. Panics only for values beyond `i64`.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("integer part exceeds i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil()
        .to_integer()
        .to_i64()
        .expect("integer part exceeds i64")
}

/// Parses `"p/q"` or `"n"`, with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = |m: &str| Error::parse(format!("rational {t:?}"), m.to_string());
    if t.is_empty() {
        return Err(bad("empty"));
    }
    if t.len() > 4096 {
        return Err(bad("too long"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let digits = |p: &str, signed: bool| {
        let body = if signed {
            p.strip_prefix('-').or_else(|| p.strip_prefix('+')).unwrap_or(p)
        } else {
            p
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || den.is_some_and(|d| !digits(d, false)) {
        return Err(bad("expected p/q or n"));
    }
    let n = BigInt::from_str(num).map_err(|e| bad(&e.to_string()))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|e| bad(&e.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// A point of `R/Z`, stored by its representative in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    pub fn new(x: &Rational) -> Self {
        CirclePoint(frac(x))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(&rat(n, d))
    }

    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    pub fn rep(&self) -> &Rational {
        &self.0
    }

    pub fn antipode(&self) -> Self {
        Self::new(&(&self.0 + half()))
    }

    /// The point `2x`, i.e. the image under the double cover `x -> 2x`.
    pub fn doubled(&self) -> Self {
        Self::new(&(&self.0 * int(2)))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(&parse_rational(s)?))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The unique lift of `x` in `[base, base+1)`.
pub fn lift_in_window(x: &CirclePoint, base: &Rational) -> Rational {
    base + frac(&(x.rep() - base))
}

/// Weak or strict positive orientation of a cyclic tuple.
///
/// Greedy minimal lifting: any witness can be pushed down coordinate-wise onto
/// the greedy lifts, so checking the closing inequality on those suffices.
pub fn oriented(tuple: &[CirclePoint], strict: bool) -> Result<bool> {
    let Some(first) = tuple.first() else {
        return Err(Error::InvalidInput("empty tuple".into()));
    };
    let start = first.rep().clone();
    let mut prev = start.clone();
    for x in &tuple[1..] {
        let mut l = lift_in_window(x, &prev);
        if strict && l == prev {
            l += Rational::one();
        }
        prev = l;
    }
    let end = start + Rational::one();
    Ok(if strict { prev < end } else { prev <= end })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Degenerate,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Degenerate => 0,
            Orientation::Negative => -1,
        }
    }
}

pub fn orientation(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> Orientation {
    let t = [x.clone(), y.clone(), z.clone()];
    if oriented(&t, true).unwrap_or(false) {
        return Orientation::Positive;
    }
    let s = [y.clone(), x.clone(), z.clone()];
    if oriented(&s, true).unwrap_or(false) {
        Orientation::Negative
    } else {
        Orientation::Degenerate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    // Exhaustive lift search with offsets in -2..=2 around the [0,1) representatives.
    fn brute_oriented(t: &[CirclePoint], strict: bool) -> bool {
        let k = t.len();
        let first = t[0].rep().clone();
        let mut offs = vec![-2i64; k.saturating_sub(1)];
        loop {
            let mut lifts = vec![first.clone()];
            for (i, o) in offs.iter().enumerate() {
                lifts.push(t[i + 1].rep() + int(*o));
            }
            lifts.push(&first + int(1));
            let ok = lifts
                .windows(2)
                .all(|w| if strict { w[0] < w[1] } else { w[0] <= w[1] });
            if ok {
                return true;
            }
            let mut i = 0;
            loop {
                if i == offs.len() {
                    return false;
                }
                offs[i] += 1;
                if offs[i] <= 2 {
                    break;
                }
                offs[i] = -2;
                i += 1;
            }
        }
    }

    #[test]
    fn lift_window_examples() {
        assert_eq!(lift_in_window(&p(3, 4), &rat(1, 2)), rat(3, 4));
        assert_eq!(lift_in_window(&p(1, 4), &rat(1, 2)), rat(5, 4));
        assert_eq!(lift_in_window(&p(0, 1), &rat(-1, 3)), int(0));
    }

    #[test]
    fn oriented_examples() {
        let q = [p(0, 1), p(1, 4), p(1, 2), p(3, 4)];
        assert!(oriented(&q, true).unwrap());
        let bad = [p(0, 1), p(1, 2), p(0, 1), p(1, 2)];
        assert!(!oriented(&bad, false).unwrap());
        assert!(oriented(&[p(2, 3), p(1, 5)], false).unwrap());
        assert!(oriented(&[p(1, 5), p(2, 3)], false).unwrap());
        assert!(oriented(&[], false).is_err());
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 1), &p(1, 3), &p(2, 3)), Orientation::Positive);
        assert_eq!(orientation(&p(0, 1), &p(2, 3), &p(1, 3)), Orientation::Negative);
        assert_eq!(orientation(&p(0, 1), &p(0, 1), &p(1, 2)), Orientation::Degenerate);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(rat(-4, 6).to_string(), "-2/3");
    }

    fn point() -> impl Strategy<Value = CirclePoint> {
        (0i64..12, 1i64..13).prop_map(|(n, d)| CirclePoint::from_ratio(n, d))
    }

    proptest! {
        #[test]
        fn greedy_matches_brute_force(t in prop::collection::vec(point(), 1..6), strict in any::<bool>()) {
            prop_assert_eq!(oriented(&t, strict).unwrap(), brute_oriented(&t, strict));
        }

        #[test]
        fn cyclic_invariance(t in prop::collection::vec(point(), 1..6), strict in any::<bool>(), r in 0usize..6) {
            let mut s = t.clone();
            s.rotate_left(r % t.len());
            prop_assert_eq!(oriented(&t, strict).unwrap(), oriented(&s, strict).unwrap());
        }

        #[test]
        fn swap_reverses_orientation(x in point(), y in point(), z in point()) {
            if x != y && y != z && x != z {
                prop_assert_eq!(orientation(&x, &y, &z).sign(), -orientation(&y, &x, &z).sign());
            } else {
                prop_assert_eq!(orientation(&x, &y, &z), Orientation::Degenerate);
            }
        }

        #[test]
        fn short_tuples_weakly_oriented(t in prop::collection::vec(point(), 1..3)) {
            prop_assert!(oriented(&t, false).unwrap());
            let mut r = t.clone();
            r.reverse();
            prop_assert!(oriented(&r, false).unwrap());
        }
    }
}
