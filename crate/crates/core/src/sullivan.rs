//! The double cover of the circle and the Sullivan cocycle.
//!
//! The double cover is the same circle `R/Z` with antipode `x ↦ x + 1/2`.
//! Degenerate triples are evaluated after a symbolic positive nudge of every
//! coordinate, earlier coordinates moving further (`ε0 ≫ ε1 ≫ ε2`), with
//! ties between equal points broken by input order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::{frac, half, rat, CirclePoint, Rational};
use crate::error::{Error, Result};
use crate::homeo::{CircleHomeo, Group};
use crate::pl::PlLift;

/// A point nudged by an infinitesimal; larger `eps` means a larger nudge.
#[derive(Clone, Debug)]
struct Nudged {
    rep: Rational,
    eps: usize,
}

impl Nudged {
    fn antipode(&self) -> Nudged {
        Nudged {
            rep: frac(&(&self.rep + half())),
            eps: self.eps,
        }
    }
}

/// Displacement from `a` to `b` going forward, as (real part, nudge difference).
fn offset(a: &Nudged, b: &Nudged) -> (Rational, i64) {
    let real = frac(&(&b.rep - &a.rep));
    let d = b.eps as i64 - a.eps as i64;
    if real.is_zero() && d < 0 {
        (Rational::one(), d)
    } else {
        (real, d)
    }
}

fn sub_offset(a: &(Rational, i64), b: &(Rational, i64)) -> (Rational, i64) {
    (&a.0 - &b.0, a.1 - b.1)
}

fn cmp_offset(a: &(Rational, i64), b: &(Rational, i64)) -> Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1))
}

fn nudge(points: &[&CirclePoint]) -> Vec<Nudged> {
    let n = points.len();
    points
        .iter()
        .enumerate()
        .map(|(i, p)| Nudged {
            rep: p.rep().clone(),
            eps: n - i,
        })
        .collect()
}

pub fn is_nondegenerate(points: &[CirclePoint]) -> bool {
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if a == b || a.antipode() == *b {
                return false;
            }
        }
    }
    true
}

/// The eight non-degenerate orbit classes of triples on the double cover.
/// `Perm(s)` is the class of `(x_{s(0)}, x_{s(1)}, x_{s(2)})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NondegClass {
    Id,
    T01,
    T02,
    T12,
    C012,
    C021,
    Plus,
    Minus,
}

impl NondegClass {
    pub const ALL: [NondegClass; 8] = [
        NondegClass::Id,
        NondegClass::T01,
        NondegClass::T02,
        NondegClass::T12,
        NondegClass::C012,
        NondegClass::C021,
        NondegClass::Plus,
        NondegClass::Minus,
    ];

    /// Images `(s(0), s(1), s(2))` of the permutation classes.
    pub fn permutation(self) -> Option<[usize; 3]> {
        match self {
            NondegClass::Id => Some([0, 1, 2]),
            NondegClass::T01 => Some([1, 0, 2]),
            NondegClass::T02 => Some([2, 1, 0]),
            NondegClass::T12 => Some([0, 2, 1]),
            NondegClass::C012 => Some([1, 2, 0]),
            NondegClass::C021 => Some([2, 0, 1]),
            NondegClass::Plus | NondegClass::Minus => None,
        }
    }

    /// Built from `x0 = 0, x1 = 1/8, x2 = 1/4`, so that
    /// `(x0, x1, x2, x̄0)` is positively oriented.
    pub fn representative(self) -> [CirclePoint; 3] {
        let x = [CirclePoint::zero(), CirclePoint::from_ratio(1, 8), CirclePoint::from_ratio(1, 4)];
        match self.permutation() {
            Some(s) => [x[s[0]].clone(), x[s[1]].clone(), x[s[2]].clone()],
            None if self == NondegClass::Plus => [x[0].clone(), x[2].clone(), x[1].antipode()],
            None => [x[0].clone(), x[1].antipode(), x[2].clone()],
        }
    }
}

/// Cyclic order of the six points and antipodes, read from the first point.
fn pattern(p: &[Nudged; 3]) -> [u8; 6] {
    let all: Vec<(u8, Nudged)> = (0..3u8)
        .map(|i| (i, p[i as usize].clone()))
        .chain((0..3u8).map(|i| (i + 3, p[i as usize].antipode())))
        .collect();
    let mut keyed: Vec<(u8, (Rational, i64))> = all.iter().map(|(l, q)| (*l, offset(&p[0], q))).collect();
    keyed.sort_by(|a, b| cmp_offset(&a.1, &b.1));
    let mut out = [0u8; 6];
    for (i, (l, _)) in keyed.into_iter().enumerate() {
        out[i] = l;
    }
    out
}

fn pattern_table() -> &'static BTreeMap<[u8; 6], NondegClass> {
    static TABLE: OnceLock<BTreeMap<[u8; 6], NondegClass>> = OnceLock::new();
    TABLE.get_or_init(|| {
        NondegClass::ALL
            .iter()
            .map(|&c| {
                let r = c.representative();
                (pattern(&nudged3(&r[0], &r[1], &r[2])), c)
            })
            .collect()
    })
}

fn nudged3(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> [Nudged; 3] {
    let v = nudge(&[x, y, z]);
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

fn class_of_nudged(p: &[Nudged; 3]) -> NondegClass {
    *pattern_table()
        .get(&pattern(p))
        .expect("nudged triples are non-degenerate")
}

pub fn classify_nondeg_triple(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> Result<NondegClass> {
    if !is_nondegenerate(&[x.clone(), y.clone(), z.clone()]) {
        return Err(Error::InvalidInput(format!("({x}, {y}, {z}) is degenerate")));
    }
    Ok(class_of_nudged(&nudged3(x, y, z)))
}

/// Geometric rule: `±1` by orientation when all three cyclic gaps are
/// below `1/2` (the center lies inside the triangle), else `0`.
pub fn sullivan_eval(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> i64 {
    let p = nudged3(x, y, z);
    let oy = offset(&p[0], &p[1]);
    let oz = offset(&p[0], &p[2]);
    let positive = cmp_offset(&oy, &oz) == Ordering::Less;
    let (first, second) = if positive { (oy, oz) } else { (oz, oy) };
    let zero = (Rational::zero(), 0i64);
    let full = (Rational::one(), 0i64);
    let limit = (half(), 0i64);
    let gaps = [
        sub_offset(&first, &zero),
        sub_offset(&second, &first),
        sub_offset(&full, &second),
    ];
    if gaps.iter().all(|g| cmp_offset(g, &limit) == Ordering::Less) {
        if positive {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Contained in some half-open half-circle `[a, a + 1/2)` with `a` in the set.
pub fn is_small(points: &[CirclePoint]) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::InvalidInput("smallness of the empty set".into()));
    }
    let h = half();
    Ok(points.iter().any(|a| {
        points.iter().all(|b| frac(&(b.rep() - a.rep())) < h)
    }))
}

pub const CUBE_CAP: usize = 12;

pub fn sullivan_vanishes_on_cube(points: &[CirclePoint]) -> Result<bool> {
    if points.len() > CUBE_CAP {
        return Err(Error::TooLarge(format!("{} points, cap {CUBE_CAP}", points.len())));
    }
    Ok(cube_witness(points).is_none())
}

fn cube_witness(points: &[CirclePoint]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if sullivan_eval(&points[i], &points[j], &points[k]) != 0 {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Invariant cochain on non-degenerate triples, one integer per class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NondegCochain2 {
    pub id: i64,
    #[serde(rename = "(01)")]
    pub t01: i64,
    #[serde(rename = "(02)")]
    pub t02: i64,
    #[serde(rename = "(12)")]
    pub t12: i64,
    #[serde(rename = "(012)")]
    pub c012: i64,
    #[serde(rename = "(021)")]
    pub c021: i64,
    #[serde(rename = "+")]
    pub plus: i64,
    #[serde(rename = "-")]
    pub minus: i64,
}

pub const SULLIVAN: NondegCochain2 = NondegCochain2 {
    id: 0,
    t01: 0,
    t02: 0,
    t12: 0,
    c012: 0,
    c021: 0,
    plus: 1,
    minus: -1,
};

impl NondegCochain2 {
    pub fn value(&self, c: NondegClass) -> i64 {
        match c {
            NondegClass::Id => self.id,
            NondegClass::T01 => self.t01,
            NondegClass::T02 => self.t02,
            NondegClass::T12 => self.t12,
            NondegClass::C012 => self.c012,
            NondegClass::C021 => self.c021,
            NondegClass::Plus => self.plus,
            NondegClass::Minus => self.minus,
        }
    }

    pub fn value_mut(&mut self, c: NondegClass) -> &mut i64 {
        match c {
            NondegClass::Id => &mut self.id,
            NondegClass::T01 => &mut self.t01,
            NondegClass::T02 => &mut self.t02,
            NondegClass::T12 => &mut self.t12,
            NondegClass::C012 => &mut self.c012,
            NondegClass::C021 => &mut self.c021,
            NondegClass::Plus => &mut self.plus,
            NondegClass::Minus => &mut self.minus,
        }
    }

    /// Value on any triple, degenerate ones through the nudge extension.
    pub fn eval(&self, x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> i64 {
        self.value(class_of_nudged(&nudged3(x, y, z)))
    }

    pub fn from_evaluator(f: impl Fn(&CirclePoint, &CirclePoint, &CirclePoint) -> i64) -> NondegCochain2 {
        let mut t = NondegCochain2 {
            id: 0,
            t01: 0,
            t02: 0,
            t12: 0,
            c012: 0,
            c021: 0,
            plus: 0,
            minus: 0,
        };
        for c in NondegClass::ALL {
            let [x, y, z] = c.representative();
            *t.value_mut(c) = f(&x, &y, &z);
        }
        t
    }

    /// `(f^+, f^-, f_+, f_-)`, read from the classes `Id`, `(01)`, `+`, `-`.
    pub fn row(&self) -> [i64; 4] {
        [self.id, self.t01, self.plus, self.minus]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NondegAnalysis {
    pub is_cocycle: bool,
    pub class_index: Option<i64>,
}

pub fn analyze_nondeg_cochain2(f: &NondegCochain2) -> NondegAnalysis {
    let even = f.id == f.c012 && f.id == f.c021;
    let odd = f.t01 == f.t02 && f.t01 == f.t12;
    let is_cocycle = even && odd && f.id + f.t01 == f.plus + f.minus;
    NondegAnalysis {
        is_cocycle,
        class_index: is_cocycle.then(|| f.plus - 2 * f.id + f.t01),
    }
}

pub fn nondeg_coboundary(w_plus: i64, w_minus: i64) -> NondegCochain2 {
    NondegCochain2 {
        id: w_plus,
        t01: w_minus,
        t02: w_minus,
        t12: w_minus,
        c012: w_plus,
        c021: w_plus,
        plus: 2 * w_plus - w_minus,
        minus: 2 * w_minus - w_plus,
    }
}

/// The 1-cochain with value `w_plus` on pairs `(x, y)` with `(x, y, x̄)`
/// positively oriented and `w_minus` otherwise, nudged like triples.
pub fn nondeg_b(w_plus: i64, w_minus: i64) -> impl Fn(&[CirclePoint]) -> i64 {
    move |p: &[CirclePoint]| {
        let v = nudge(&[&p[0], &p[1]]);
        let oy = offset(&v[0], &v[1]);
        if cmp_offset(&oy, &(half(), 0)) == Ordering::Less {
            w_plus
        } else {
            w_minus
        }
    }
}

/// `x ↦ 2x`, the quotient of the double cover by the antipode.
pub fn p2(x: &CirclePoint) -> CirclePoint {
    x.doubled()
}

/// Element of the double cover group, stored through `g(t) = 2h(t/2)`,
/// which is an ordinary lift commuting with `t ↦ t + 1`. Lifts `g` and
/// `g + 2` give the same element; the stored one has `g(0)` in `[0,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleCoverHomeo {
    g: PlLift,
}

impl DoubleCoverHomeo {
    pub fn from_conjugated_lift(g: PlLift) -> Result<Self> {
        if g.kind() != crate::pl::Kind::Strict {
            return Err(Error::InvalidAction("double cover elements need strict lifts".into()));
        }
        let v = g.eval(&Rational::zero());
        let k = (v / Rational::from_integer(2.into())).floor() * Rational::from_integer(2.into());
        Ok(DoubleCoverHomeo { g: g.add(&-k) })
    }

    /// `y ↦ y + alpha/2`: the lift of the rotation by `alpha` downstairs.
    pub fn rotation(alpha: Rational) -> Self {
        DoubleCoverHomeo::from_conjugated_lift(PlLift::translation(alpha)).expect("strict")
    }

    pub fn conjugated_lift(&self) -> &PlLift {
        &self.g
    }

    /// `h(y) = g(2y)/2` on the double cover.
    pub fn half_lift_eval(&self, y: &Rational) -> Rational {
        self.g.eval(&(y * Rational::from_integer(2.into()))) * half()
    }

    pub fn apply(&self, y: &CirclePoint) -> CirclePoint {
        CirclePoint::new(&self.half_lift_eval(y.rep()))
    }

    pub fn apply_inverse(&self, y: &CirclePoint) -> CirclePoint {
        let t = self.g.pl().ginv_lower(&(y.rep() * Rational::from_integer(2.into())));
        CirclePoint::new(&(t * half()))
    }

    /// The induced homeomorphism of the base circle.
    pub fn project(&self) -> CircleHomeo {
        CircleHomeo::from_lift(&self.g).expect("strict")
    }

    pub fn commutes_with_antipode(&self, samples: &[CirclePoint]) -> bool {
        samples
            .iter()
            .all(|y| self.apply(&y.antipode()) == self.apply(y).antipode())
    }
}

impl Group for DoubleCoverHomeo {
    fn identity() -> Self {
        DoubleCoverHomeo { g: PlLift::identity() }
    }

    fn op(&self, other: &Self) -> Self {
        DoubleCoverHomeo::from_conjugated_lift(self.g.compose(&other.g)).expect("strict")
    }

    fn inverse(&self) -> Self {
        DoubleCoverHomeo::from_conjugated_lift(self.g.invert().expect("strict")).expect("strict")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PullbackVerdict {
    Vanishes { orbit_points: usize },
    Witness { words: [Vec<i32>; 3], value: i64 },
}

/// Orbit of `x` under the word ball, one representative word per point.
pub fn orbit_ball(gens: &[DoubleCoverHomeo], x: &CirclePoint, radius: usize) -> BTreeMap<CirclePoint, Vec<i32>> {
    let mut out: BTreeMap<CirclePoint, Vec<i32>> = BTreeMap::new();
    for w in crate::action::ball(gens.len(), radius) {
        let mut y = x.clone();
        for &a in w.iter().rev() {
            let g = &gens[a.unsigned_abs() as usize - 1];
            y = if a > 0 { g.apply(&y) } else { g.apply_inverse(&y) };
        }
        out.entry(y).or_insert(w);
    }
    out
}

/// `(w0,w1,w2) ↦ E(ρ(w0)x, ρ(w1)x, ρ(w2)x)` tested on every triple of the
/// ball. The value depends only on the three points, so the test runs over
/// the distinct orbit points.
pub fn pullback_sullivan(gens: &[DoubleCoverHomeo], x: &CirclePoint, radius: usize) -> Result<PullbackVerdict> {
    let probe: Vec<CirclePoint> = (0..16).map(|j| CirclePoint::from_ratio(j, 16)).chain([x.clone()]).collect();
    if let Some(i) = gens.iter().position(|g| !g.commutes_with_antipode(&probe)) {
        return Err(Error::InvalidAction(format!("generator {} does not commute with the antipode", i + 1)));
    }
    let orbit = orbit_ball(gens, x, radius);
    let pts: Vec<(&CirclePoint, &Vec<i32>)> = orbit.iter().collect();
    for a in &pts {
        for b in &pts {
            for c in &pts {
                let v = sullivan_eval(a.0, b.0, c.0);
                if v != 0 {
                    return Ok(PullbackVerdict::Witness {
                        words: [a.1.clone(), b.1.clone(), c.1.clone()],
                        value: v,
                    });
                }
            }
        }
    }
    Ok(PullbackVerdict::Vanishes { orbit_points: pts.len() })
}

/// The three integers `(a, b, c)` with `a/b` the point, used in messages.
pub fn describe(x: &CirclePoint) -> String {
    x.to_string()
}

/// Representative points of `R/Z` used by sweeps: `k/den`.
pub fn grid(den: i64) -> Vec<CirclePoint> {
    (0..den).map(|k| CirclePoint::new(&rat(k, den))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{int, orientation, Orientation};
    use crate::cocycle::{delta_hom, euler_cocycle, orientation_cocycle};
    use crate::gen;
    use proptest::prelude::*;
    use rand::Rng;

    fn cp(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    #[test]
    fn nondegeneracy() {
        assert!(is_nondegenerate(&[cp(0, 1), cp(1, 3), cp(2, 3)]));
        assert!(!is_nondegenerate(&[cp(0, 1), cp(1, 2)]));
        assert!(!is_nondegenerate(&[cp(0, 1), cp(0, 1)]));
    }

    #[test]
    fn representatives_are_distinct_classes() {
        for c in NondegClass::ALL {
            let [x, y, z] = c.representative();
            assert_eq!(classify_nondeg_triple(&x, &y, &z).unwrap(), c);
        }
        let [a, b, c] = NondegClass::Id.representative();
        assert_eq!(
            orientation(&a, &b, &c),
            Orientation::Positive
        );
        assert!(crate::circle::oriented(&[a.clone(), b, c, a.antipode()], true).unwrap());
        assert!(classify_nondeg_triple(&cp(0, 1), &cp(1, 2), &cp(1, 4)).is_err());
    }

    #[test]
    fn transposition_acts_on_classes() {
        let [x0, x1, x2] = NondegClass::Id.representative();
        assert_eq!(classify_nondeg_triple(&x1, &x0, &x2).unwrap(), NondegClass::T01);
        assert_eq!(classify_nondeg_triple(&x0, &x2, &x1).unwrap(), NondegClass::T12);
        assert_eq!(classify_nondeg_triple(&x2, &x1, &x0).unwrap(), NondegClass::T02);
    }

    #[test]
    fn every_grid_triple_is_classified() {
        let g = grid(12);
        for x in &g {
            for y in &g {
                for z in &g {
                    if is_nondegenerate(&[x.clone(), y.clone(), z.clone()]) {
                        classify_nondeg_triple(x, y, z).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn geometric_values() {
        assert_eq!(sullivan_eval(&cp(0, 1), &cp(1, 3), &cp(2, 3)), 1);
        assert_eq!(sullivan_eval(&cp(0, 1), &cp(2, 3), &cp(1, 3)), -1);
        assert_eq!(sullivan_eval(&cp(0, 1), &cp(1, 10), &cp(2, 10)), 0);
        let x = cp(1, 5);
        assert_eq!(sullivan_eval(&x, &x.antipode(), &x), 1);
        assert_eq!(sullivan_eval(&x, &x, &x), 0);
    }

    #[test]
    fn geometric_rule_matches_table() {
        assert_eq!(NondegCochain2::from_evaluator(sullivan_eval), SULLIVAN);
        let g = grid(10);
        for x in &g {
            for y in &g {
                for z in &g {
                    assert_eq!(sullivan_eval(x, y, z), SULLIVAN.eval(x, y, z), "{x} {y} {z}");
                }
            }
        }
    }

    #[test]
    fn table_rows() {
        let e = analyze_nondeg_cochain2(&SULLIVAN);
        assert_eq!(SULLIVAN.row(), [0, 0, 1, -1]);
        assert_eq!(e.class_index, Some(1));
        let or = NondegCochain2::from_evaluator(orientation_cocycle);
        assert_eq!(or.row(), [1, -1, 1, -1]);
        assert_eq!(analyze_nondeg_cochain2(&or).class_index, Some(-2));
        let p2or = NondegCochain2::from_evaluator(|x, y, z| orientation_cocycle(&p2(x), &p2(y), &p2(z)));
        assert_eq!(p2or.row(), [1, -1, -1, 1]);
        assert_eq!(analyze_nondeg_cochain2(&p2or).class_index, Some(-4));
        // the Euler cocycle has c = 0 on positive triples, so its pullback
        // is (0,1,1,0); (1,0,0,1) is the complementary row (1,1,1,1) - it.
        let p2c = NondegCochain2::from_evaluator(|x, y, z| euler_cocycle(&p2(x), &p2(y), &p2(z)));
        assert_eq!(p2c.row(), [0, 1, 1, 0]);
        assert_eq!(analyze_nondeg_cochain2(&p2c).class_index, Some(2));
        for (w1, w2) in [(0, 0), (1, 0), (2, -3)] {
            let b = nondeg_coboundary(w1, w2);
            assert_eq!(analyze_nondeg_cochain2(&b).class_index, Some(0));
            assert_eq!(b, NondegCochain2::from_evaluator(|x, y, z| delta_hom(nondeg_b(w1, w2), &[x.clone(), y.clone(), z.clone()])));
        }
    }

    #[test]
    fn smallness() {
        assert!(is_small(&[cp(0, 1), cp(1, 10), cp(4, 10)]).unwrap());
        assert!(!is_small(&[cp(0, 1), cp(1, 2)]).unwrap());
        assert!(!is_small(&[cp(0, 1), cp(1, 3), cp(2, 3)]).unwrap());
        assert!(is_small(&[]).is_err());
        assert!(sullivan_vanishes_on_cube(&[cp(0, 1), cp(1, 10), cp(4, 10)]).unwrap());
        assert!(!sullivan_vanishes_on_cube(&[cp(0, 1), cp(1, 3), cp(2, 3)]).unwrap());
        assert!(sullivan_vanishes_on_cube(&grid(13)).is_err());
    }

    #[test]
    fn pullbacks() {
        let mut rng = gen::rng(3);
        let fixing = gen::homeo_fixing(&mut rng, &[rat(1, 5)], 2);
        let s = fixing.sigma();
        let g = s.add(&(rat(1, 5) - s.eval(&rat(1, 5))));
        let h = DoubleCoverHomeo::from_conjugated_lift(g).unwrap();
        // fixes 1/10 on the double cover
        assert_eq!(h.apply(&cp(1, 10)), cp(1, 10));
        let v = pullback_sullivan(&[h], &cp(1, 10), 5).unwrap();
        assert_eq!(v, PullbackVerdict::Vanishes { orbit_points: 1 });
        let r = DoubleCoverHomeo::rotation(rat(1, 3));
        assert!(matches!(pullback_sullivan(&[r.clone()], &cp(0, 1), 3).unwrap(), PullbackVerdict::Witness { .. }));
        assert!(matches!(pullback_sullivan(&[r], &cp(0, 1), 1).unwrap(), PullbackVerdict::Vanishes { .. }));
    }

    #[test]
    fn double_cover_group() {
        let mut rng = gen::rng(8);
        let a = DoubleCoverHomeo::from_conjugated_lift(gen::random_strict_lift(&mut rng, 3)).unwrap();
        let b = DoubleCoverHomeo::from_conjugated_lift(gen::random_strict_lift(&mut rng, 3)).unwrap();
        let ab = a.op(&b);
        for y in grid(16) {
            assert_eq!(ab.apply(&y), a.apply(&b.apply(&y)));
            assert_eq!(a.apply_inverse(&a.apply(&y)), y);
            assert_eq!(p2(&a.apply(&y)), a.project().apply(&p2(&y)));
        }
        assert!(a.op(&a.inverse()) == DoubleCoverHomeo::identity());
        // g and g + 1 differ by the antipode
        let a1 = DoubleCoverHomeo::from_conjugated_lift(a.conjugated_lift().add(&int(1))).unwrap();
        assert_ne!(a1, a);
        assert_eq!(a1.apply(&cp(1, 7)), a.apply(&cp(1, 7)).antipode());
        assert_eq!(a1.project(), a.project());
    }

    fn random_point_with_planted(rng: &mut gen::Rng8, pts: &[CirclePoint]) -> CirclePoint {
        match rng.gen_range(0..4) {
            0 if !pts.is_empty() => pts[rng.gen_range(0..pts.len())].clone(),
            1 if !pts.is_empty() => pts[rng.gen_range(0..pts.len())].antipode(),
            _ => gen::random_point(rng, 12),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn cocycle_on_quadruples(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let mut q: Vec<CirclePoint> = Vec::new();
            for _ in 0..4 {
                let p = random_point_with_planted(&mut rng, &q);
                q.push(p);
            }
            let f = |t: &[CirclePoint]| sullivan_eval(&t[0], &t[1], &t[2]);
            prop_assert_eq!(delta_hom(f, &q), 0);
        }

        #[test]
        fn invariant_under_double_cover(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let h = DoubleCoverHomeo::from_conjugated_lift(gen::random_strict_lift(&mut rng, 4)).unwrap();
            let mut t: Vec<CirclePoint> = Vec::new();
            for _ in 0..3 {
                let p = random_point_with_planted(&mut rng, &t);
                t.push(p);
            }
            let before = sullivan_eval(&t[0], &t[1], &t[2]);
            let after = sullivan_eval(&h.apply(&t[0]), &h.apply(&t[1]), &h.apply(&t[2]));
            prop_assert_eq!(before, after);
        }

        #[test]
        fn small_iff_vanishing(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let n = rng.gen_range(1..=6);
            let mut x: Vec<CirclePoint> = Vec::new();
            for _ in 0..n {
                let p = random_point_with_planted(&mut rng, &x);
                x.push(p);
            }
            x.sort();
            x.dedup();
            prop_assert_eq!(is_small(&x).unwrap(), sullivan_vanishes_on_cube(&x).unwrap());
        }
    }
}
