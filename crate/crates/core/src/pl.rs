//! Piecewise-linear functions on `R` determined by one period of data.
//!
//! A [`Pl`] stores knots `a_0 < ... < a_{m-1}` in `[0,1)`, each with a left
//! limit, a point value and a right limit, and an integer `shift` such that
//! `f(x+1) = f(x) + shift`. Between the right limit at `a_i` and the left limit
//! at `a_{i+1}` the function is affine. A [`PlLift`] is a `Pl` with shift 1 that
//! is either a homeomorphism lift ([`Kind::Strict`]) or a non-decreasing map
//! with jumps ([`Kind::Monotone`]).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::circle::{frac, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Knot {
    pub at: Rational,
    pub left: Rational,
    pub point: Rational,
    pub right: Rational,
}

impl Knot {
    pub fn continuous(at: Rational, value: Rational) -> Self {
        Knot {
            at,
            left: value.clone(),
            point: value.clone(),
            right: value,
        }
    }

    fn is_continuous(&self) -> bool {
        self.left == self.point && self.point == self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pl {
    knots: Vec<Knot>,
    shift: i64,
}

enum Loc {
    Knot(usize),
    // strictly inside segment i; the carried offset is added to the value
    Seg(usize, Rational, Rational),
}

/// Interval of reals with open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }
}

impl Pl {
    /// Builds from knots given at arbitrary real positions. Positions are
    /// reduced into `[0,1)` using the shift, then sorted and canonicalized.
    pub fn from_knots(knots: Vec<Knot>, shift: i64) -> Result<Pl> {
        if knots.is_empty() {
            return Err(Error::InvalidInput("piecewise-linear data needs a knot".into()));
        }
        let mut reduced: Vec<Knot> = knots
            .into_iter()
            .map(|k| {
                let n = k.at.floor();
                let off = &n * int(shift);
                Knot {
                    at: &k.at - &n,
                    left: &k.left - &off,
                    point: &k.point - &off,
                    right: &k.right - &off,
                }
            })
            .collect();
        reduced.sort_by(|a, b| a.at.cmp(&b.at));
        if reduced.windows(2).any(|w| w[0].at == w[1].at) {
            return Err(Error::InvalidInput("repeated breakpoint".into()));
        }
        Ok(Pl { knots: reduced, shift }.canonical())
    }

    /// Raw constructor: positions must already be sorted in `[0,1)`. No canonicalization.
    pub fn from_sorted_knots(knots: Vec<Knot>, shift: i64) -> Result<Pl> {
        if knots.is_empty() {
            return Err(Error::InvalidInput("piecewise-linear data needs a knot".into()));
        }
        for k in &knots {
            if k.at < Rational::zero() || k.at >= Rational::one() {
                return Err(Error::InvalidInput(format!("breakpoint {} outside [0,1)", k.at)));
            }
        }
        if knots.windows(2).any(|w| w[0].at >= w[1].at) {
            return Err(Error::InvalidInput("breakpoints must be strictly increasing".into()));
        }
        Ok(Pl { knots, shift })
    }

    /// Samples `f` at candidate points (reduced mod 1) to obtain knots. The
    /// caller guarantees every true breakpoint is among the candidates.
    pub fn from_samples<F>(points: impl IntoIterator<Item = Rational>, shift: i64, f: F) -> Pl
    where
        F: Fn(&Rational) -> (Rational, Rational, Rational),
    {
        let mut set: BTreeSet<Rational> = points.into_iter().map(|p| frac(&p)).collect();
        if set.is_empty() {
            set.insert(Rational::zero());
        }
        let knots = set
            .into_iter()
            .map(|at| {
                let (left, point, right) = f(&at);
                Knot {
                    at,
                    left,
                    point,
                    right,
                }
            })
            .collect();
        Pl { knots, shift }.canonical()
    }

    pub fn translation(c: Rational) -> Pl {
        Pl {
            knots: vec![Knot::continuous(Rational::zero(), c)],
            shift: 1,
        }
    }

    pub fn constant(c: Rational) -> Pl {
        Pl {
            knots: vec![Knot::continuous(Rational::zero(), c)],
            shift: 0,
        }
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn breakpoint_count(&self) -> usize {
        self.knots.len()
    }

    // Endpoints of segment i: (a_i, R_i) to (a_{i+1}, L_{i+1}), wrapping at the end.
    fn seg(&self, i: usize) -> (Rational, Rational, Rational, Rational) {
        let m = self.knots.len();
        let k = &self.knots[i];
        if i + 1 < m {
            let n = &self.knots[i + 1];
            (k.at.clone(), k.right.clone(), n.at.clone(), n.left.clone())
        } else {
            let n = &self.knots[0];
            (
                k.at.clone(),
                k.right.clone(),
                &n.at + Rational::one(),
                &n.left + int(self.shift),
            )
        }
    }

    pub fn slope(&self, i: usize) -> Rational {
        let (a, r, b, l) = self.seg(i);
        (l - r) / (b - a)
    }

    fn interp(&self, i: usize, t: &Rational) -> Rational {
        let (a, r, b, l) = self.seg(i);
        &r + (t - &a) * (l - &r) / (b - a)
    }

    // Reduces x to t in [0,1) and the value offset shift*floor(x).
    fn reduce(&self, x: &Rational) -> (Rational, Rational) {
        let n = x.floor();
        (x - &n, n * int(self.shift))
    }

    fn locate(&self, t: &Rational) -> Loc {
        let m = self.knots.len();
        match self.knots.binary_search_by(|k| k.at.cmp(t)) {
            Ok(i) => Loc::Knot(i),
            Err(0) => Loc::Seg(m - 1, t + Rational::one(), -int(self.shift)),
            Err(j) => Loc::Seg(j - 1, t.clone(), Rational::zero()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let (t, base) = self.reduce(x);
        match self.locate(&t) {
            Loc::Knot(i) => base + &self.knots[i].point,
            Loc::Seg(i, t2, off) => base + off + self.interp(i, &t2),
        }
    }

    pub fn left_limit(&self, x: &Rational) -> Rational {
        let (t, base) = self.reduce(x);
        match self.locate(&t) {
            Loc::Knot(i) => base + &self.knots[i].left,
            Loc::Seg(i, t2, off) => base + off + self.interp(i, &t2),
        }
    }

    pub fn right_limit(&self, x: &Rational) -> Rational {
        let (t, base) = self.reduce(x);
        match self.locate(&t) {
            Loc::Knot(i) => base + &self.knots[i].right,
            Loc::Seg(i, t2, off) => base + off + self.interp(i, &t2),
        }
    }

    pub fn left_slope(&self, x: &Rational) -> Rational {
        let (t, _) = self.reduce(x);
        let m = self.knots.len();
        match self.locate(&t) {
            Loc::Knot(i) => self.slope((i + m - 1) % m),
            Loc::Seg(i, _, _) => self.slope(i),
        }
    }

    pub fn right_slope(&self, x: &Rational) -> Rational {
        let (t, _) = self.reduce(x);
        match self.locate(&t) {
            Loc::Knot(i) | Loc::Seg(i, _, _) => self.slope(i),
        }
    }

    /// Drops knots that are neither jumps nor slope changes. An affine map is
    /// stored with a single knot at 0.
    pub fn canonical(self) -> Pl {
        let m = self.knots.len();
        let keep: Vec<bool> = (0..m)
            .map(|i| {
                let k = &self.knots[i];
                !k.is_continuous() || (m > 1 && self.slope((i + m - 1) % m) != self.slope(i))
            })
            .collect();
        if keep.iter().any(|&b| b) {
            let knots = self
                .knots
                .iter()
                .zip(&keep)
                .filter(|(_, &b)| b)
                .map(|(k, _)| k.clone())
                .collect();
            Pl {
                knots,
                shift: self.shift,
            }
        } else {
            let v = self.eval(&Rational::zero());
            Pl {
                knots: vec![Knot::continuous(Rational::zero(), v)],
                shift: self.shift,
            }
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.knots.iter().all(Knot::is_continuous)
    }

    pub fn is_nondecreasing(&self) -> bool {
        (0..self.knots.len()).all(|i| {
            let k = &self.knots[i];
            let (_, r, _, l) = self.seg(i);
            k.left <= k.point && k.point <= k.right && r <= l
        })
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.is_continuous() && (0..self.knots.len()).all(|i| self.slope(i).is_positive())
    }

    /// Constant value if the function is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.shift == 0 && self.knots.len() == 1 && self.knots[0].is_continuous() {
            Some(self.knots[0].point.clone())
        } else {
            None
        }
    }

    pub fn add_const(&self, c: &Rational) -> Pl {
        Pl {
            knots: self
                .knots
                .iter()
                .map(|k| Knot {
                    at: k.at.clone(),
                    left: &k.left + c,
                    point: &k.point + c,
                    right: &k.right + c,
                })
                .collect(),
            shift: self.shift,
        }
    }

    /// Replaces every point value by the left limit.
    pub fn with_left_values(&self) -> Pl {
        Pl {
            knots: self
                .knots
                .iter()
                .map(|k| Knot {
                    at: k.at.clone(),
                    left: k.left.clone(),
                    point: k.left.clone(),
                    right: k.right.clone(),
                })
                .collect(),
            shift: self.shift,
        }
        .canonical()
    }

    fn positions(&self) -> impl Iterator<Item = Rational> + '_ {
        self.knots.iter().map(|k| k.at.clone())
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &Pl) -> Pl {
        let pts: Vec<Rational> = self.positions().chain(other.positions()).collect();
        Pl::from_samples(pts, self.shift - other.shift, |x| {
            (
                self.left_limit(x) - other.left_limit(x),
                self.eval(x) - other.eval(x),
                self.right_limit(x) - other.right_limit(x),
            )
        })
    }

    /// Pointwise maximum; both functions must have the same shift.
    pub fn max(&self, other: &Pl) -> Pl {
        assert_eq!(self.shift, other.shift, "max of functions with different shifts");
        let base: BTreeSet<Rational> = self.positions().chain(other.positions()).collect();
        let mut pts: Vec<Rational> = base.iter().cloned().collect();
        let grid: Vec<Rational> = base.iter().cloned().collect();
        for (j, a) in grid.iter().enumerate() {
            let b = if j + 1 < grid.len() {
                grid[j + 1].clone()
            } else {
                &grid[0] + Rational::one()
            };
            let d0 = self.right_limit(a) - other.right_limit(a);
            let d1 = self.left_limit(&b) - other.left_limit(&b);
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                pts.push(a + (&b - a) * &d0 / (&d0 - &d1));
            }
        }
        let mx = |p: Rational, q: Rational| if p >= q { p } else { q };
        Pl::from_samples(pts, self.shift, |x| {
            (
                mx(self.left_limit(x), other.left_limit(x)),
                mx(self.eval(x), other.eval(x)),
                mx(self.right_limit(x), other.right_limit(x)),
            )
        })
    }

    /// `f ∘ g` for non-decreasing `g`.
    pub fn compose(f: &Pl, g: &Pl) -> Pl {
        debug_assert!(g.is_nondecreasing());
        let mut pts: Vec<Rational> = g.positions().collect();
        let m = g.knots.len();
        for i in 0..m {
            let (a, r, b, l) = g.seg(i);
            if l <= r {
                continue;
            }
            let s = (&l - &r) / (&b - &a);
            for fk in &f.knots {
                // targets fk.at + k strictly between r and l
                let mut k = (&r - &fk.at).floor() + Rational::one();
                loop {
                    let y = &fk.at + &k;
                    if y >= l {
                        break;
                    }
                    if y > r {
                        pts.push(&a + (&y - &r) / &s);
                    }
                    k += Rational::one();
                }
            }
        }
        Pl::from_samples(pts, f.shift * g.shift, |x| {
            let v = f.eval(&g.eval(x));
            let yl = g.left_limit(x);
            let left = if g.left_slope(x).is_zero() {
                f.eval(&yl)
            } else {
                f.left_limit(&yl)
            };
            let yr = g.right_limit(x);
            let right = if g.right_slope(x).is_zero() {
                f.eval(&yr)
            } else {
                f.right_limit(&yr)
            };
            (left, v, right)
        })
    }

    /// `inf { x : f(x) >= y }` for a non-decreasing function with shift 1.
    pub fn ginv_lower(&self, y: &Rational) -> Rational {
        assert_eq!(self.shift, 1, "generalized inverse needs shift 1");
        let l0 = &self.knots[0].left;
        let n = (y - l0).ceil() - Rational::one();
        let yy = y - &n;
        for (i, k) in self.knots.iter().enumerate() {
            if k.point >= yy || k.right >= yy {
                return &k.at + n;
            }
            let (a, r, b, l) = self.seg(i);
            if l >= yy {
                return &a + (&yy - &r) * (b - &a) / (l - r) + n;
            }
        }
        &self.knots[0].at + Rational::one() + n
    }

    /// `g(x) = -f(-x)`.
    pub fn reflect(&self) -> Pl {
        let knots = self
            .knots
            .iter()
            .map(|k| Knot {
                at: -k.at.clone(),
                left: -k.right.clone(),
                point: -k.point.clone(),
                right: -k.left.clone(),
            })
            .collect();
        Pl::from_knots(knots, self.shift).expect("reflection of valid data")
    }

    /// `sup { x : f(x) <= y }` for a non-decreasing function with shift 1.
    pub fn ginv_upper(&self, y: &Rational) -> Rational {
        -self.reflect().ginv_lower(&-y.clone())
    }

    /// The level set `{ x : f(x) = y }` of a non-decreasing shift-1 function.
    pub fn level_set(&self, y: &Rational) -> Option<Interval> {
        let lo = self.ginv_lower(y);
        let hi = self.ginv_upper(y);
        let iv = Interval {
            lo_closed: &self.eval(&lo) == y,
            hi_closed: &self.eval(&hi) == y,
            lo,
            hi,
        };
        if iv.is_empty() {
            None
        } else {
            Some(iv)
        }
    }

    /// Zero set over one period of a continuous shift-0 function, as closed
    /// intervals inside `[0,1]` (points are degenerate intervals).
    pub fn zeros(&self) -> Vec<(Rational, Rational)> {
        assert_eq!(self.shift, 0, "zero sets are computed for periodic functions");
        let mut grid: Vec<Rational> = vec![Rational::zero()];
        grid.extend(self.positions().filter(|p| !p.is_zero()));
        grid.push(Rational::one());
        let vals: Vec<Rational> = grid.iter().map(|x| self.eval(x)).collect();
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        let mut push = |lo: Rational, hi: Rational| {
            if let Some(last) = out.last_mut() {
                if lo <= last.1 {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    return;
                }
            }
            out.push((lo, hi));
        };
        for j in 0..grid.len() - 1 {
            let (a, b) = (&grid[j], &grid[j + 1]);
            let (va, vb) = (&vals[j], &vals[j + 1]);
            match (va.is_zero(), vb.is_zero()) {
                (true, true) => push(a.clone(), b.clone()),
                (true, false) => push(a.clone(), a.clone()),
                (false, true) => push(b.clone(), b.clone()),
                (false, false) => {
                    if va.is_positive() != vb.is_positive() {
                        let x = a + (b - a) * va / (va - vb);
                        push(x.clone(), x);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Strict,
    Monotone,
}

/// Lift of a degree-one circle map: `f(x+1) = f(x)+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlLift {
    kind: Kind,
    pl: Pl,
}

impl PlLift {
    pub fn strict(pl: Pl) -> Result<PlLift> {
        if pl.shift != 1 {
            return Err(Error::Validation(format!("rise per period is {}, not 1", pl.shift)));
        }
        if !pl.is_strictly_increasing() {
            return Err(Error::Validation("strict lift must be continuous and increasing".into()));
        }
        Ok(PlLift {
            kind: Kind::Strict,
            pl: pl.canonical(),
        })
    }

    pub fn monotone(pl: Pl) -> Result<PlLift> {
        if pl.shift != 1 {
            return Err(Error::Validation(format!("rise per period is {}, not 1", pl.shift)));
        }
        if !pl.is_nondecreasing() {
            return Err(Error::Validation("good lift must be non-decreasing with L <= V <= R".into()));
        }
        Ok(PlLift {
            kind: Kind::Monotone,
            pl: pl.canonical(),
        })
    }

    /// Strict lift through the given (position, value) pairs.
    pub fn from_points(points: &[(Rational, Rational)]) -> Result<PlLift> {
        let knots = points
            .iter()
            .map(|(a, v)| Knot::continuous(a.clone(), v.clone()))
            .collect();
        PlLift::strict(Pl::from_knots(knots, 1)?)
    }

    pub fn identity() -> PlLift {
        PlLift::translation(Rational::zero())
    }

    pub fn translation(c: Rational) -> PlLift {
        PlLift {
            kind: Kind::Strict,
            pl: Pl::translation(c),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn pl(&self) -> &Pl {
        &self.pl
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.pl.eval(x)
    }

    pub fn breakpoint_count(&self) -> usize {
        self.pl.breakpoint_count()
    }

    /// `self ∘ other`; strict only when both factors are.
    pub fn compose(&self, other: &PlLift) -> PlLift {
        let kind = if self.kind == Kind::Strict && other.kind == Kind::Strict {
            Kind::Strict
        } else {
            Kind::Monotone
        };
        PlLift {
            kind,
            pl: Pl::compose(&self.pl, &other.pl),
        }
    }

    pub fn invert(&self) -> Result<PlLift> {
        if self.kind != Kind::Strict {
            return Err(Error::InvalidInput("only strict lifts are invertible".into()));
        }
        let pts: Vec<Rational> = self.pl.knots.iter().map(|k| k.point.clone()).collect();
        let pl = Pl::from_samples(pts, 1, |y| {
            let x = self.pl.ginv_lower(y);
            (x.clone(), x.clone(), x)
        });
        Ok(PlLift {
            kind: Kind::Strict,
            pl,
        })
    }

    /// Adds a constant to every value (composition with a translation on the left).
    pub fn add(&self, c: &Rational) -> PlLift {
        PlLift {
            kind: self.kind,
            pl: self.pl.add_const(c),
        }
    }

    pub fn is_translation(&self) -> Option<Rational> {
        let k = &self.pl.knots;
        if self.pl.is_continuous() && k.len() == 1 && self.pl.slope(0).is_one() {
            Some(k[0].point.clone() - &k[0].at)
        } else {
            None
        }
    }

    pub fn has_jump(&self) -> bool {
        !self.pl.is_continuous()
    }

    pub fn power(&self, n: i64) -> Result<PlLift> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut acc = PlLift::identity();
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        Ok(acc)
    }

    /// Same function data regarded as a monotone lift.
    pub fn as_monotone(&self) -> PlLift {
        PlLift {
            kind: Kind::Monotone,
            pl: self.pl.clone(),
        }
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.lo.cmp(&other.lo).then(self.hi.cmp(&other.hi)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;
    use crate::gen;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        let id = PlLift::identity();
        assert_eq!(id.eval(&rat(5, 7)), rat(5, 7));
        let t = PlLift::translation(rat(1, 3));
        assert_eq!(t.eval(&rat(9, 10)), rat(37, 30));
        let f = PlLift::from_points(&[(rat(0, 1), rat(1, 4)), (rat(1, 2), rat(7, 8))]).unwrap();
        assert_eq!(f.eval(&rat(1, 4)), rat(9, 16));
        assert_eq!(f.eval(&rat(-3, 4)), rat(9, 16) - int(1));
        assert_eq!(f.eval(&rat(3, 4)), rat(7, 8) + rat(3, 16));
    }

    // Brute-force sampler: monotone on a fine grid and rise 1 per period.
    #[test]
    fn sampler_confirms_two_piece_lift() {
        let f = PlLift::from_points(&[(rat(0, 1), rat(1, 4)), (rat(1, 2), rat(7, 8))]).unwrap();
        let mut prev = f.eval(&int(-1));
        for j in -63..=64 {
            let x = rat(j, 64);
            let v = f.eval(&x);
            assert!(v > prev);
            assert_eq!(f.eval(&(&x + int(1))), &v + int(1));
            prev = v;
        }
    }

    #[test]
    fn translations_compose() {
        let t = PlLift::translation(rat(1, 3));
        let t3 = t.compose(&t).compose(&t);
        assert_eq!(t3, PlLift::translation(int(1)));
        assert_eq!(PlLift::translation(rat(2, 5)).invert().unwrap(), PlLift::translation(rat(-2, 5)));
        assert_eq!(PlLift::identity().invert().unwrap(), PlLift::identity());
    }

    #[test]
    fn affine_canonical_form() {
        let f = PlLift::from_points(&[(rat(1, 3), rat(1, 2)), (rat(2, 3), rat(5, 6))]).unwrap();
        assert_eq!(f, PlLift::translation(rat(1, 6)));
        assert_eq!(f.pl().knots().len(), 1);
    }

    #[test]
    fn monotone_inverse_errors() {
        let step = Pl::from_knots(
            vec![Knot {
                at: rat(1, 2),
                left: int(0),
                point: int(1),
                right: int(1),
            }],
            1,
        )
        .unwrap();
        let f = PlLift::monotone(step).unwrap();
        assert!(f.invert().is_err());
    }

    #[test]
    fn level_sets_of_floor() {
        let floor = PlLift::monotone(
            Pl::from_knots(
                vec![Knot {
                    at: int(0),
                    left: int(-1),
                    point: int(0),
                    right: int(0),
                }],
                1,
            )
            .unwrap(),
        )
        .unwrap();
        let s = floor.pl().level_set(&int(0)).unwrap();
        assert_eq!((s.lo.clone(), s.hi.clone(), s.lo_closed, s.hi_closed), (int(0), int(1), true, false));
        assert!(floor.pl().level_set(&rat(1, 2)).is_none());
        let s2 = floor.pl().level_set(&int(3)).unwrap();
        assert_eq!(s2.lo, int(3));
    }

    #[test]
    fn zero_sets() {
        let f = PlLift::from_points(&[(rat(0, 1), int(0)), (rat(1, 4), rat(3, 8)), (rat(1, 2), rat(1, 2))]).unwrap();
        let d = f.pl().sub(PlLift::identity().pl());
        assert_eq!(d.zeros(), vec![(int(0), int(0)), (rat(1, 2), int(1))]);
        let z = PlLift::identity().pl().sub(PlLift::identity().pl());
        assert_eq!(z.zeros(), vec![(int(0), int(1))]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_matches_pointwise(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let f = gen::random_strict_lift(&mut rng, 4);
            let g = gen::random_strict_lift(&mut rng, 4);
            let fg = f.compose(&g);
            for _ in 0..20 {
                let x = gen::random_rational(&mut rng, 3);
                prop_assert_eq!(fg.eval(&x), f.eval(&g.eval(&x)));
            }
        }

        #[test]
        fn inverse_is_identity(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let f = gen::random_strict_lift(&mut rng, 5);
            let fi = f.invert().unwrap();
            prop_assert_eq!(f.compose(&fi), PlLift::identity());
            prop_assert_eq!(fi.compose(&f), PlLift::identity());
            prop_assert_eq!(fi.invert().unwrap(), f.clone());
            for _ in 0..20 {
                let x = gen::random_rational(&mut rng, 3);
                prop_assert_eq!(f.eval(&fi.eval(&x)), x);
            }
        }

        #[test]
        fn monotone_composition_closed(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let f = gen::random_good_lift(&mut rng, 4);
            let g = gen::random_good_lift(&mut rng, 4);
            let fg = f.compose(&g);
            prop_assert!(crate::monotone::validate_good_lift(fg.pl()));
            for _ in 0..20 {
                let x = gen::random_rational(&mut rng, 3);
                prop_assert_eq!(fg.eval(&x), f.eval(&g.eval(&x)));
            }
        }

        #[test]
        fn max_is_pointwise(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let f = gen::random_good_lift(&mut rng, 4);
            let g = gen::random_strict_lift(&mut rng, 4);
            let h = f.pl().max(g.pl());
            for _ in 0..20 {
                let x = gen::random_rational(&mut rng, 3);
                let (a, b) = (f.eval(&x), g.eval(&x));
                prop_assert_eq!(h.eval(&x), if a >= b { a } else { b });
            }
        }

        #[test]
        fn generalized_inverses_bracket(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let f = gen::random_good_lift(&mut rng, 4);
            for _ in 0..10 {
                let y = gen::random_rational(&mut rng, 2);
                let lo = f.pl().ginv_lower(&y);
                let hi = f.pl().ginv_upper(&y);
                prop_assert!(lo <= hi);
                let eps = rat(1, 1_000_000);
                prop_assert!(f.eval(&(&lo - &eps)) < y);
                prop_assert!(f.eval(&(&hi + &eps)) > y);
                if lo < hi {
                    let mid = (&lo + &hi) / int(2);
                    prop_assert_eq!(f.eval(&mid), y);
                }
            }
        }
    }
}
