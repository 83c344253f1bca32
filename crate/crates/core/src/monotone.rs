//! Non-decreasing degree one maps, their good lifts, and finite-table tests.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::circle::{frac, int, oriented, CirclePoint, Rational};
use crate::error::{Error, Result};
use crate::gen;
use crate::pl::{Knot, Pl, PlLift};

/// A finite sample of a circle map.
pub type Table = BTreeMap<CirclePoint, CirclePoint>;

/// Shift 1, `L <= V <= R` at every breakpoint, non-decreasing in between.
pub fn validate_good_lift(pl: &Pl) -> bool {
    pl.shift() == 1 && pl.is_nondecreasing()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    lift: PlLift,
}

impl MonotoneMap {
    pub fn new(lift: PlLift) -> Result<MonotoneMap> {
        if !validate_good_lift(lift.pl()) {
            return Err(Error::NotDegreeOne("data is not a good lift".into()));
        }
        Ok(MonotoneMap {
            lift: lift.as_monotone(),
        })
    }

    pub fn identity() -> MonotoneMap {
        MonotoneMap {
            lift: PlLift::identity().as_monotone(),
        }
    }

    /// The constant map to `[c]`, with good lift `x ↦ c + ⌊x⌋`.
    pub fn constant(c: &Rational) -> MonotoneMap {
        let pl = Pl::from_knots(
            vec![Knot {
                at: Rational::zero(),
                left: c - Rational::one(),
                point: c.clone(),
                right: c.clone(),
            }],
            1,
        )
        .expect("one knot");
        MonotoneMap {
            lift: PlLift::monotone(pl).expect("step"),
        }
    }

    pub fn lift(&self) -> &PlLift {
        &self.lift
    }

    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        CirclePoint::new(&self.lift.eval(x.rep()))
    }

    pub fn is_continuous(&self) -> bool {
        self.lift.pl().is_continuous()
    }

    pub fn compose(&self, other: &MonotoneMap) -> MonotoneMap {
        MonotoneMap {
            lift: self.lift.as_monotone().compose(&other.lift),
        }
    }
}

/// `x ↦ ⌊x + α⌋`.
pub fn floor_shift(alpha: &Rational) -> PlLift {
    let a = frac(&-alpha.clone());
    let k = (&a + alpha).floor();
    let pl = Pl::from_knots(
        vec![Knot {
            at: a,
            left: &k - Rational::one(),
            point: k.clone(),
            right: k,
        }],
        1,
    )
    .expect("one knot");
    PlLift::monotone(pl).expect("step")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleReport {
    pub passed: bool,
    pub exhaustive: bool,
    pub tested: u64,
    pub witness: Option<Vec<CirclePoint>>,
}

const EXHAUSTIVE_LIMIT: usize = 40;
const SAMPLES: u64 = 200_000;

// Weak orientation of a tuple of cyclic ranks in Z/n.
fn oriented_ranks(r: &[usize], n: usize) -> bool {
    let first = r[0];
    let mut prev = first;
    for &x in &r[1..] {
        let mut v = x + (prev / n) * n;
        if v < prev {
            v += n;
        }
        prev = v;
    }
    prev <= first + n
}

/// Checks that every weakly positively oriented `k`-tuple of the domain maps
/// to a weakly positively oriented tuple.
pub fn tuple_test(table: &Table, k: usize) -> Result<TupleReport> {
    if table.is_empty() {
        return Err(Error::InvalidInput("empty table".into()));
    }
    let dom: Vec<&CirclePoint> = table.keys().collect();
    let mut images: Vec<&CirclePoint> = table.values().collect();
    images.sort();
    images.dedup();
    let n = dom.len();
    let m = images.len();
    let img_rank: Vec<usize> = table
        .values()
        .map(|y| images.binary_search(&y).expect("image present"))
        .collect();
    let mut idx = vec![0usize; k];
    let mut tested = 0u64;
    let check = |idx: &[usize], tested: &mut u64| -> Option<Vec<CirclePoint>> {
        *tested += 1;
        if oriented_ranks(idx, n) {
            let im: Vec<usize> = idx.iter().map(|&i| img_rank[i]).collect();
            if !oriented_ranks(&im, m) {
                return Some(idx.iter().map(|&i| dom[i].clone()).collect());
            }
        }
        None
    };
    if n <= EXHAUSTIVE_LIMIT {
        loop {
            if let Some(w) = check(&idx, &mut tested) {
                return Ok(TupleReport {
                    passed: false,
                    exhaustive: true,
                    tested,
                    witness: Some(w),
                });
            }
            let mut j = 0;
            loop {
                if j == k {
                    return Ok(TupleReport {
                        passed: true,
                        exhaustive: true,
                        tested,
                        witness: None,
                    });
                }
                idx[j] += 1;
                if idx[j] < n {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
    let mut rng = gen::rng(0x7ab1e);
    for _ in 0..SAMPLES {
        for slot in idx.iter_mut() {
            *slot = rng.gen_range(0..n);
        }
        if let Some(w) = check(&idx, &mut tested) {
            return Ok(TupleReport {
                passed: false,
                exhaustive: false,
                tested,
                witness: Some(w),
            });
        }
    }
    Ok(TupleReport {
        passed: true,
        exhaustive: false,
        tested,
        witness: None,
    })
}

pub fn triple_test(table: &Table) -> Result<TupleReport> {
    tuple_test(table, 3)
}

pub fn quadruple_test(table: &Table) -> Result<TupleReport> {
    tuple_test(table, 4)
}

// Unique lift of y in [base, base+1) or, when `closed_top`, in (base, base+1].
fn window_lift(y: &CirclePoint, base: &Rational, closed_top: bool) -> Rational {
    let mut v = base.floor() + y.rep();
    if &v < base {
        v += Rational::one();
    }
    if &v >= &(base + Rational::one()) {
        v -= Rational::one();
    }
    if closed_top && &v == base {
        v += Rational::one();
    }
    v
}

/// Right-continuous step good lift agreeing with the table, built by the
/// two-window construction anchored at the first domain point.
pub fn extract_good_lift(table: &Table) -> Result<PlLift> {
    let report = quadruple_test(table)?;
    if !report.passed {
        return Err(Error::NotDegreeOne(format!(
            "quadruple {:?} loses its orientation",
            report.witness.unwrap_or_default().iter().map(|p| p.to_string()).collect::<Vec<_>>()
        )));
    }
    let entries: Vec<(&CirclePoint, &CirclePoint)> = table.iter().collect();
    let (_, y0) = entries[0];
    let y0t = y0.rep().clone();
    let Some(split) = entries.iter().position(|(_, y)| *y != y0) else {
        return Ok(MonotoneMap::constant(&y0t).lift);
    };
    let values: Vec<Rational> = entries
        .iter()
        .enumerate()
        .map(|(i, (_, y))| window_lift(y, &y0t, i >= split))
        .collect();
    let n = entries.len();
    let knots = (0..n)
        .map(|i| {
            let left = if i == 0 {
                &values[n - 1] - Rational::one()
            } else {
                values[i - 1].clone()
            };
            Knot {
                at: entries[i].0.rep().clone(),
                left,
                point: values[i].clone(),
                right: values[i].clone(),
            }
        })
        .collect();
    let pl = Pl::from_sorted_knots(knots, 1)?.canonical();
    PlLift::monotone(pl).map_err(|e| Error::NotDegreeOne(e.to_string()))
}

/// Replaces each point value by the left limit, giving the lower
/// semicontinuous envelope `sup { φ(y) : y < x }`.
pub fn upper_semicontinuize(phi: &MonotoneMap) -> MonotoneMap {
    MonotoneMap {
        lift: PlLift::monotone(phi.lift.pl().with_left_values()).expect("left values keep monotonicity"),
    }
}

/// Closed arc `[start, start+len]` of the circle, `start` in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub start: Rational,
    pub len: Rational,
}

impl Arc {
    pub fn new(start: &Rational, len: Rational) -> Arc {
        Arc {
            start: frac(start),
            len,
        }
    }

    pub fn end(&self) -> Rational {
        &self.start + &self.len
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        let mut t = x.rep().clone();
        if t < self.start {
            t += Rational::one();
        }
        t <= self.end()
    }
}

pub fn validate_arcs(arcs: &[Arc]) -> Result<()> {
    let mut total = Rational::zero();
    for a in arcs {
        if a.len <= Rational::zero() {
            return Err(Error::InvalidArcSystem("arc of non-positive length".into()));
        }
        total += &a.len;
    }
    if total >= Rational::one() {
        return Err(Error::InvalidArcSystem("total length is at least 1".into()));
    }
    let mut sorted = arcs.to_vec();
    sorted.sort();
    for (i, a) in sorted.iter().enumerate() {
        let next_start = if i + 1 < sorted.len() {
            sorted[i + 1].start.clone()
        } else {
            &sorted[0].start + Rational::one()
        };
        if sorted.len() > 1 && a.end() >= next_start {
            return Err(Error::InvalidArcSystem("arcs overlap".into()));
        }
    }
    Ok(())
}

// Measure of the arcs (and their integer translates) inside [0, t], t in [0,1].
fn arc_measure(arcs: &[Arc], t: &Rational) -> Rational {
    let mut m = Rational::zero();
    for a in arcs {
        for k in [-1i64, 0] {
            let lo = &a.start + int(k);
            let hi = &lo + &a.len;
            let lo = if lo < Rational::zero() { Rational::zero() } else { lo };
            let hi = if &hi > t { t.clone() } else { hi };
            if hi > lo {
                m += hi - lo;
            }
        }
    }
    m
}

/// Continuous monotone map collapsing every arc to a point, affine with
/// slope `1/(1-Λ)` off the arcs.
pub fn devil_staircase(arcs: &[Arc]) -> Result<MonotoneMap> {
    validate_arcs(arcs)?;
    let total: Rational = arcs.iter().map(|a| a.len.clone()).sum();
    let scale = Rational::one() - &total;
    let pts: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(arcs.iter().flat_map(|a| [a.start.clone(), a.end()]))
        .collect();
    let f = |t: &Rational| (t - arc_measure(arcs, t)) / &scale;
    let pl = Pl::from_samples(pts, 1, |t| {
        let v = f(t);
        (v.clone(), v.clone(), v)
    });
    MonotoneMap::new(PlLift::monotone(pl)?)
}

/// Is the tuple image weakly oriented whenever the tuple is.
pub fn preserves_orientation(phi: &MonotoneMap, tuple: &[CirclePoint]) -> Result<bool> {
    if !oriented(tuple, false)? {
        return Ok(true);
    }
    let img: Vec<CirclePoint> = tuple.iter().map(|x| phi.apply(x)).collect();
    oriented(&img, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;
    use proptest::prelude::*;

    fn cp(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    // The four-valued map on the quarter points: 0,1/4,1/2,3/4 go to 0,1/2,0,1/2.
    pub(crate) fn counterexample() -> Table {
        [(cp(0, 1), cp(0, 1)), (cp(1, 4), cp(1, 2)), (cp(1, 2), cp(0, 1)), (cp(3, 4), cp(1, 2))]
            .into_iter()
            .collect()
    }

    #[test]
    fn floor_is_a_good_lift() {
        let f = floor_shift(&rat(2, 7));
        assert!(validate_good_lift(f.pl()));
        assert_eq!(f.eval(&rat(5, 7)), int(1));
        assert_eq!(f.eval(&rat(1, 2)), int(0));
        assert_eq!(f.eval(&rat(-3, 7)), int(-1));
    }

    #[test]
    fn invalid_lifts() {
        let doubling = Pl::from_knots(vec![Knot::continuous(int(0), int(0))], 2).unwrap();
        assert!(!validate_good_lift(&doubling));
        let neg = Pl::from_knots(vec![Knot::continuous(int(0), int(0))], -1).unwrap();
        assert!(!validate_good_lift(&neg));
    }

    #[test]
    fn quadruple_counterexample() {
        let t = counterexample();
        assert!(triple_test(&t).unwrap().passed);
        let q = quadruple_test(&t).unwrap();
        assert!(!q.passed && q.exhaustive);
        assert!(extract_good_lift(&t).is_err());
    }

    #[test]
    fn extraction_examples() {
        let c: Table = [(cp(0, 1), cp(0, 1)), (cp(1, 3), cp(0, 1))].into_iter().collect();
        assert_eq!(extract_good_lift(&c).unwrap(), floor_shift(&int(0)));
        let id: Table = [(cp(0, 1), cp(0, 1)), (cp(1, 3), cp(1, 3)), (cp(2, 3), cp(2, 3))]
            .into_iter()
            .collect();
        let g = extract_good_lift(&id).unwrap();
        assert!(validate_good_lift(g.pl()));
        for (x, y) in &id {
            assert_eq!(CirclePoint::new(&g.eval(x.rep())), *y);
        }
    }

    #[test]
    fn semicontinuize_step() {
        let m = MonotoneMap::new(floor_shift(&rat(1, 2))).unwrap();
        let u = upper_semicontinuize(&m);
        assert_eq!(u.lift().eval(&rat(1, 2)), int(0));
        assert_eq!(m.lift().eval(&rat(1, 2)), int(1));
        let s = devil_staircase(&[Arc::new(&rat(1, 4), rat(1, 4))]).unwrap();
        assert_eq!(upper_semicontinuize(&s), s);
    }

    #[test]
    fn staircase_single_arc() {
        let s = devil_staircase(&[Arc::new(&rat(1, 4), rat(1, 4))]).unwrap();
        assert!(s.is_continuous());
        assert_eq!(s.lift().eval(&rat(1, 4)), rat(1, 3));
        assert_eq!(s.lift().eval(&rat(3, 8)), rat(1, 3));
        assert_eq!(s.lift().eval(&rat(1, 2)), rat(1, 3));
        assert_eq!(s.lift().pl().right_slope(&rat(1, 2)), rat(4, 3));
        assert_eq!(s.lift().pl().left_slope(&rat(1, 4)), rat(4, 3));
        assert_eq!(devil_staircase(&[]).unwrap(), MonotoneMap::identity());
    }

    #[test]
    fn staircase_middle_thirds() {
        let arcs = vec![
            Arc::new(&rat(1, 9), rat(1, 9)),
            Arc::new(&rat(1, 3), rat(1, 3)),
            Arc::new(&rat(7, 9), rat(1, 9)),
            Arc::new(&rat(25, 27), rat(1, 27)),
        ];
        let s = devil_staircase(&arcs).unwrap();
        for a in &arcs {
            assert_eq!(s.lift().eval(&a.start), s.lift().eval(&a.end()));
            let mid = &a.start + &a.len / int(2);
            assert_eq!(s.lift().eval(&mid), s.lift().eval(&a.start));
        }
        // strictly increasing strictly between consecutive arcs
        let mut sorted = arcs.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            let gap_mid = (w[0].end() + &w[1].start) / int(2);
            assert!(s.lift().eval(&w[0].end()) < s.lift().eval(&gap_mid));
            assert!(s.lift().eval(&gap_mid) < s.lift().eval(&w[1].start));
        }
        assert!(devil_staircase(&[Arc::new(&rat(0, 1), rat(1, 2)), Arc::new(&rat(1, 4), rat(1, 8))]).is_err());
        assert!(devil_staircase(&[Arc::new(&rat(0, 1), rat(1, 1))]).is_err());
    }

    fn random_table(rng: &mut gen::Rng8, size: usize) -> Table {
        let f = gen::random_good_lift(rng, 4);
        let mut t = Table::new();
        while t.len() < size {
            let x = gen::random_point(rng, 24);
            t.insert(x.clone(), CirclePoint::new(&f.eval(x.rep())));
        }
        t
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn extracted_lift_projects_to_table(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let t = random_table(&mut rng, 8);
            let g = extract_good_lift(&t).unwrap();
            prop_assert!(validate_good_lift(g.pl()));
            for (x, y) in &t {
                prop_assert_eq!(&CirclePoint::new(&g.eval(x.rep())), y);
            }
        }

        #[test]
        fn good_lifts_preserve_weak_orientation(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let phi = MonotoneMap::new(gen::random_good_lift(&mut rng, 5)).unwrap();
            let tuple: Vec<CirclePoint> = (0..5).map(|_| gen::random_point(&mut rng, 16)).collect();
            prop_assert!(preserves_orientation(&phi, &tuple).unwrap());
        }

        #[test]
        fn rank_test_matches_oriented(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let pts: Vec<CirclePoint> = (0..4).map(|_| gen::random_point(&mut rng, 6)).collect();
            let mut sorted = pts.clone();
            sorted.sort();
            sorted.dedup();
            let ranks: Vec<usize> = pts.iter().map(|p| sorted.binary_search(p).unwrap()).collect();
            prop_assert_eq!(oriented_ranks(&ranks, sorted.len()), oriented(&pts, false).unwrap());
        }
    }
}
