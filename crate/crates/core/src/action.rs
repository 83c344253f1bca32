//! Finitely generated group actions on the circle by PL homeomorphisms.
//!
//! Groups are free on `k` generators; words are integer lists where `i`
//! stands for generator `i` (1-based) and `-i` for its inverse. A word acts
//! as the composition of its letters, rightmost letter first.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};
use rand::Rng;

use crate::circle::{frac, int, CirclePoint, Rational};
use crate::cocycle::{obstruction_cocycle, HomCochain2};
use crate::error::{Error, Result};
use crate::gen::Rng8;
use crate::homeo::{decompose, CircleHomeo, Group};
use crate::monotone::{devil_staircase, Arc, MonotoneMap};
use crate::pl::{Pl, PlLift};

pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    generators: Vec<CircleHomeo>,
    lifts: Option<Vec<PlLift>>,
    relations: Vec<Word>,
}

impl GroupAction {
    pub fn new(generators: Vec<CircleHomeo>, lifts: Option<Vec<PlLift>>, relations: Vec<Word>) -> Result<Self> {
        if let Some(ls) = &lifts {
            if ls.len() != generators.len() {
                return Err(Error::Validation("one lift per generator is required".into()));
            }
            for (i, (l, g)) in ls.iter().zip(&generators).enumerate() {
                if &decompose(l)?.0 != g {
                    return Err(Error::Validation(format!("lift {} does not project to generator {}", i + 1, i + 1)));
                }
            }
        }
        let action = GroupAction {
            generators,
            lifts,
            relations,
        };
        for r in &action.relations {
            if !action.evaluate_word(r)?.is_identity() {
                return Err(Error::Validation(format!("relation {r:?} does not act trivially")));
            }
        }
        Ok(action)
    }

    /// Action of the integers generated by one homeomorphism.
    pub fn cyclic(h: CircleHomeo) -> Self {
        GroupAction {
            generators: vec![h],
            lifts: None,
            relations: vec![],
        }
    }

    /// Action of the integers with a chosen lift of the generator.
    pub fn cyclic_lifted(lift: PlLift) -> Result<Self> {
        let (h, _) = decompose(&lift)?;
        GroupAction::new(vec![h], Some(vec![lift]), vec![])
    }

    pub fn rotation(alpha: Rational) -> Self {
        GroupAction::cyclic_lifted(PlLift::translation(alpha)).expect("translation")
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[CircleHomeo] {
        &self.generators
    }

    pub fn lifts(&self) -> Option<&[PlLift]> {
        self.lifts.as_deref()
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn with_lifts(&self, lifts: Vec<PlLift>) -> Result<Self> {
        GroupAction::new(self.generators.clone(), Some(lifts), self.relations.clone())
    }

    /// Lifts `σ(ρ(a))` for every generator.
    pub fn with_section_lifts(&self) -> Self {
        GroupAction {
            generators: self.generators.clone(),
            lifts: Some(self.generators.iter().map(|g| g.sigma().clone()).collect()),
            relations: self.relations.clone(),
        }
    }

    pub fn check_word(&self, w: &[i32]) -> Result<()> {
        for &a in w {
            if a == 0 || a.unsigned_abs() as usize > self.rank() {
                return Err(Error::InvalidWord(format!("letter {a} with {} generators", self.rank())));
            }
        }
        Ok(())
    }

    fn letter(&self, a: i32) -> CircleHomeo {
        let g = &self.generators[a.unsigned_abs() as usize - 1];
        if a > 0 {
            g.clone()
        } else {
            g.inverse()
        }
    }

    fn lifted_letter(&self, a: i32) -> Result<PlLift> {
        let ls = self.lifts.as_ref().ok_or_else(|| Error::InvalidAction("action has no lifts".into()))?;
        let l = &ls[a.unsigned_abs() as usize - 1];
        if a > 0 {
            Ok(l.clone())
        } else {
            l.invert()
        }
    }

    pub fn evaluate_word(&self, w: &[i32]) -> Result<CircleHomeo> {
        self.check_word(w)?;
        Ok(w.iter().fold(CircleHomeo::identity(), |acc, &a| acc.op(&self.letter(a))))
    }

    pub fn evaluate_lift(&self, w: &[i32]) -> Result<PlLift> {
        self.check_word(w)?;
        let mut acc = PlLift::identity();
        for &a in w {
            acc = acc.compose(&self.lifted_letter(a)?);
        }
        Ok(acc)
    }

    /// `ρ(w)·x` by pointwise evaluation.
    pub fn apply_word(&self, w: &[i32], x: &CirclePoint) -> Result<CirclePoint> {
        self.check_word(w)?;
        let mut y = x.clone();
        for &a in w.iter().rev() {
            let g = &self.generators[a.unsigned_abs() as usize - 1];
            y = if a > 0 {
                g.apply(&y)
            } else {
                CirclePoint::new(&g.sigma().pl().ginv_lower(y.rep()))
            };
        }
        Ok(y)
    }

    /// `ρ̃(w)(x)` by pointwise evaluation.
    pub fn apply_lift(&self, w: &[i32], x: &Rational) -> Result<Rational> {
        self.check_word(w)?;
        let ls = self.lifts.as_ref().ok_or_else(|| Error::InvalidAction("action has no lifts".into()))?;
        let mut y = x.clone();
        for &a in w.iter().rev() {
            let l = &ls[a.unsigned_abs() as usize - 1];
            y = if a > 0 { l.eval(&y) } else { l.pl().ginv_lower(&y) };
        }
        Ok(y)
    }

    /// `(w0,w1,w2) ↦ f(ρ(w0)x, ρ(w1)x, ρ(w2)x)` for an invariant table `f`.
    pub fn pullback(&self, table: &HomCochain2, x: &CirclePoint, ws: [&Word; 3]) -> Result<i64> {
        let p0 = self.apply_word(ws[0], x)?;
        let p1 = self.apply_word(ws[1], x)?;
        let p2 = self.apply_word(ws[2], x)?;
        Ok(table.eval(&p0, &p1, &p2))
    }
}

/// `(w0,w1,w2) ↦ c(ρ(w0)x, ρ(w1)x, ρ(w2)x)` for the Euler cocycle `c`.
pub fn pullback_cocycle<'a>(rho: &'a GroupAction, x: &CirclePoint) -> impl Fn([&Word; 3]) -> Result<i64> + 'a {
    let x = x.clone();
    move |ws| rho.pullback(&crate::cocycle::EULER, &x, ws)
}

/// Freely reduced words of length at most `radius`.
pub fn ball(rank: usize, radius: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|a| [a, -a]).collect();
    let mut out: Vec<Word> = vec![vec![]];
    let mut frontier: Vec<Word> = vec![vec![]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in &letters {
                if w.last() == Some(&-a) {
                    continue;
                }
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn random_word(rng: &mut Rng8, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let a = rng.gen_range(1..=rank as i32);
            if rng.gen_bool(0.5) {
                a
            } else {
                -a
            }
        })
        .collect()
}

/// Closed subset of the circle given by closed intervals of `[0,1]`, with
/// `0` and `1` identified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    components: Vec<(Rational, Rational)>,
}

impl FixedSet {
    pub fn empty() -> Self {
        FixedSet { components: vec![] }
    }

    pub fn whole() -> Self {
        FixedSet {
            components: vec![(Rational::zero(), Rational::one())],
        }
    }

    pub fn from_intervals(mut v: Vec<(Rational, Rational)>) -> Self {
        let has0 = v.iter().any(|(lo, _)| lo.is_zero());
        let has1 = v.iter().any(|(_, hi)| hi.is_one());
        if has0 && !has1 {
            v.push((Rational::one(), Rational::one()));
        }
        if has1 && !has0 {
            v.push((Rational::zero(), Rational::zero()));
        }
        v.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in v {
            if let Some(last) = out.last_mut() {
                if lo <= last.1 {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            out.push((lo, hi));
        }
        FixedSet { components: out }
    }

    pub fn components(&self) -> &[(Rational, Rational)] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.components == [(Rational::zero(), Rational::one())]
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        self.components.iter().any(|(lo, hi)| lo <= x.rep() && x.rep() <= hi)
    }

    pub fn intersect(&self, other: &FixedSet) -> FixedSet {
        let mut v = Vec::new();
        for (a, b) in &self.components {
            for (c, d) in &other.components {
                let lo = if a > c { a.clone() } else { c.clone() };
                let hi = if b < d { b.clone() } else { d.clone() };
                if lo <= hi {
                    v.push((lo, hi));
                }
            }
        }
        FixedSet::from_intervals(v)
    }

    /// Isolated points and arcs `(start, end)` of the circle; an arc through
    /// `0` has `end > 1`. The point `1` is not repeated.
    pub fn pieces(&self) -> Vec<(Rational, Rational)> {
        if self.is_whole() {
            return vec![(Rational::zero(), Rational::one())];
        }
        let mut c = self.components.clone();
        if c.len() > 1 && c[0].0.is_zero() {
            let first = c.remove(0);
            let last = c.pop().expect("component ending at 1");
            if last.0.is_one() {
                c.insert(0, first);
            } else {
                c.push((last.0, first.1 + Rational::one()));
            }
        }
        c
    }

    /// Representatives in `[0,1)`: isolated points and arc endpoints.
    pub fn boundary_points(&self) -> Vec<CirclePoint> {
        let mut s: BTreeSet<CirclePoint> = BTreeSet::new();
        for (lo, hi) in &self.components {
            s.insert(CirclePoint::new(lo));
            s.insert(CirclePoint::new(hi));
        }
        s.into_iter().collect()
    }
}

fn zero_set(pl: &Pl) -> Vec<(Rational, Rational)> {
    pl.zeros()
}

/// Exact fixed set of a homeomorphism on the circle.
pub fn fixed_set(h: &CircleHomeo) -> FixedSet {
    let d = h.sigma().pl().sub(PlLift::identity().pl());
    let mut v = zero_set(&d);
    v.extend(zero_set(&d.add_const(&int(-1))));
    FixedSet::from_intervals(v)
}

/// Fixed set of a lift on `R`, reduced to one period.
pub fn lift_fixed_set(l: &PlLift) -> FixedSet {
    FixedSet::from_intervals(zero_set(&l.pl().sub(PlLift::identity().pl())))
}

pub fn global_fixed_set(rho: &GroupAction) -> FixedSet {
    rho.generators
        .iter()
        .fold(FixedSet::whole(), |acc, g| acc.intersect(&fixed_set(g)))
}

/// Closure of `x` under the generators and their inverses, or `None` when
/// it exceeds `bound` points.
pub fn orbit_closure(rho: &GroupAction, x: &CirclePoint, bound: usize) -> Option<Vec<CirclePoint>> {
    let mut seen: BTreeSet<CirclePoint> = BTreeSet::new();
    let mut queue = VecDeque::from([x.clone()]);
    seen.insert(x.clone());
    let letters: Vec<i32> = (1..=rho.rank() as i32).flat_map(|a| [a, -a]).collect();
    while let Some(y) = queue.pop_front() {
        for &a in &letters {
            let z = rho.apply_word(&[a], &y).expect("letter in range");
            if seen.insert(z.clone()) {
                if seen.len() > bound {
                    return None;
                }
                queue.push_back(z);
            }
        }
    }
    Some(seen.into_iter().collect())
}

pub fn is_invariant_set(rho: &GroupAction, pts: &[CirclePoint]) -> bool {
    let set: BTreeSet<&CirclePoint> = pts.iter().collect();
    rho.generators.iter().all(|g| pts.iter().all(|p| set.contains(&g.apply(p))))
}

/// Breadth-first search for a finite orbit among `[0]` and the fixed points
/// of short words and generator powers. "None" only means none was found.
pub fn finite_orbit_search(rho: &GroupAction, size_bound: usize) -> Option<Vec<CirclePoint>> {
    let bound = size_bound.max(1);
    let mut candidates: Vec<CirclePoint> = vec![CirclePoint::zero()];
    let mut words: Vec<Word> = ball(rho.rank(), 2).into_iter().skip(1).collect();
    for a in 1..=rho.rank() as i32 {
        for n in 3..=bound.min(24) {
            words.push(vec![a; n]);
        }
    }
    for w in &words {
        let h = rho.evaluate_word(w).expect("letters in range");
        let fs = fixed_set(&h);
        if !fs.is_whole() {
            candidates.extend(fs.boundary_points());
        }
    }
    let mut tried: BTreeSet<CirclePoint> = BTreeSet::new();
    let mut best: Option<Vec<CirclePoint>> = None;
    for c in candidates {
        if !tried.insert(c.clone()) {
            continue;
        }
        if let Some(orbit) = orbit_closure(rho, &c, bound) {
            if best.as_ref().map_or(true, |b| orbit.len() < b.len()) {
                best = Some(orbit);
            }
        }
    }
    best
}

/// Largest circular gap of the sampled orbit of `x` over a word ball. A
/// heuristic only: small gaps suggest, but never prove, density.
pub fn orbit_gap(rho: &GroupAction, x: &CirclePoint, radius: usize) -> Rational {
    let pts: BTreeSet<CirclePoint> = ball(rho.rank(), radius)
        .iter()
        .map(|w| rho.apply_word(w, x).expect("letters in range"))
        .collect();
    let v: Vec<&CirclePoint> = pts.iter().collect();
    let mut gap = &v[0].rep().clone() + Rational::one() - v[v.len() - 1].rep();
    for w in v.windows(2) {
        let g = w[1].rep() - w[0].rep();
        if g > gap {
            gap = g;
        }
    }
    gap
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupFixedPoint {
    /// The supremum of the lifted orbit of 0; it is fixed by every lift.
    /// `ball_max` is the largest value seen within the radius.
    Fixed {
        value: Rational,
        ball_max: Rational,
        attained: bool,
        stabilized: bool,
    },
    /// The lifted orbit of 0 is unbounded above.
    Unbounded { ball_min: Rational, ball_max: Rational },
}

/// Values `ρ̃(w)(0)` over the ball, grouped by radius.
fn lifted_ball_values(rho: &GroupAction, radius: usize) -> Result<Vec<BTreeSet<Rational>>> {
    let ls = rho.lifts.as_ref().ok_or_else(|| Error::InvalidAction("lifts required".into()))?;
    let invs: Vec<PlLift> = ls.iter().map(|l| l.invert()).collect::<Result<_>>()?;
    let mut levels = vec![BTreeSet::from([Rational::zero()])];
    let mut all: BTreeSet<Rational> = levels[0].clone();
    for _ in 0..radius {
        let prev = levels.last().expect("non-empty");
        let mut next = all.clone();
        for v in prev {
            for l in ls.iter().chain(&invs) {
                next.insert(l.eval(v));
            }
        }
        all = next.clone();
        levels.push(next);
    }
    Ok(levels)
}

/// Supremum of the lifted orbit of 0.
///
/// A finite ball only attains the supremum when it is a point of the orbit,
/// so the value is computed exactly as the least common fixed point `>= 0`
/// of the lifted generators; the ball is used as a divergence certificate
/// (a bounded lifted orbit has spread below 1) and as a cross-check.
pub fn sup_fixed_point(rho: &GroupAction, ball_radius: usize) -> Result<SupFixedPoint> {
    let levels = lifted_ball_values(rho, ball_radius)?;
    let last = levels.last().expect("non-empty");
    let ball_max = last.iter().next_back().expect("non-empty").clone();
    let ball_min = last.iter().next().expect("non-empty").clone();
    if &ball_max - &ball_min >= Rational::one() {
        return Ok(SupFixedPoint::Unbounded { ball_min, ball_max });
    }
    let ls = rho.lifts.as_ref().expect("checked");
    let common = ls
        .iter()
        .fold(FixedSet::whole(), |acc, l| acc.intersect(&lift_fixed_set(l)));
    let Some((value, _)) = common.components().first().cloned() else {
        return Ok(SupFixedPoint::Unbounded { ball_min, ball_max });
    };
    debug_assert!(ls.iter().all(|l| l.eval(&value) == value));
    let stabilized = levels.len() < 2 || {
        let prev = &levels[levels.len() - 2];
        prev.iter().next_back() == Some(&ball_max)
    };
    Ok(SupFixedPoint::Fixed {
        attained: ball_max == value,
        value,
        ball_max,
        stabilized,
    })
}

/// Lifts `ρ̃(a) = σ(ρ(a))·i(-u(a))` from a primitive `u` of the pulled back
/// obstruction cocycle. The coboundary equation and the homomorphism property
/// are checked on the generator pairs and on the sampled words.
pub fn lift_correspondence(rho: &GroupAction, u: &dyn Fn(&[i32]) -> i64, samples: &[Word]) -> Result<GroupAction> {
    let letters: Vec<Word> = (1..=rho.rank() as i32).flat_map(|a| [vec![a], vec![-a]]).collect();
    let mut words: Vec<Word> = letters.clone();
    words.extend(samples.iter().cloned());
    for g in &words {
        for h in &words {
            let gh: Word = g.iter().chain(h).copied().collect();
            let c = obstruction_cocycle(&rho.evaluate_word(g)?, &rho.evaluate_word(h)?);
            let du = u(g) + u(h) - u(&gh);
            if c != du {
                return Err(Error::NotAPrimitive(format!("pair {g:?}, {h:?}: cocycle {c}, du {du}")));
            }
        }
    }
    let lifts: Vec<PlLift> = rho
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| g.lift_with(-u(&[i as i32 + 1])))
        .collect();
    let lifted = rho.with_lifts(lifts)?;
    for w in &words {
        let expected = rho.evaluate_word(w)?.lift_with(-u(w));
        if lifted.evaluate_lift(w)? != expected {
            return Err(Error::NotAPrimitive(format!("lift of {w:?} is not multiplicative")));
        }
    }
    Ok(lifted)
}

/// `u(w) = -(ρ̃(w)(0) - σ(ρ(w))(0)) = -⌊ρ̃(w)(0)⌋`, checked against the
/// coboundary equation on the sampled words.
pub fn primitive_from_lift<'a>(rho: &'a GroupAction, samples: &[Word]) -> Result<impl Fn(&[i32]) -> i64 + 'a> {
    if rho.lifts.is_none() {
        return Err(Error::InvalidAction("lifts required".into()));
    }
    let u = move |w: &[i32]| -> i64 {
        let v = rho.apply_lift(w, &Rational::zero()).expect("lifted word");
        -crate::circle::floor_i64(&v)
    };
    for g in samples {
        for h in samples {
            let gh: Word = g.iter().chain(h).copied().collect();
            let c = obstruction_cocycle(&rho.evaluate_word(g)?, &rho.evaluate_word(h)?);
            if c != u(g) + u(h) - u(&gh) {
                return Err(Error::NotAPrimitive(format!("pair {g:?}, {h:?}")));
            }
        }
    }
    Ok(u)
}

pub fn orbit_permutation_of(g: &CircleHomeo, orbit: &[CirclePoint]) -> Result<Vec<usize>> {
    orbit
        .iter()
        .map(|p| {
            let q = g.apply(p);
            orbit
                .iter()
                .position(|o| *o == q)
                .ok_or_else(|| Error::InvalidOrbit(format!("{p} is sent to {q}, outside the orbit")))
        })
        .collect()
}

/// Inserts an arc of the given width at each orbit point and extends every
/// generator affinely across the inserted arcs.
pub fn blow_up(rho: &GroupAction, orbit: &[CirclePoint], widths: &[Rational]) -> Result<(GroupAction, Vec<Arc>)> {
    if orbit.len() != widths.len() || orbit.is_empty() {
        return Err(Error::InvalidWidths("one width per orbit point is required".into()));
    }
    let mut pairs: Vec<(CirclePoint, Rational)> = orbit.iter().cloned().zip(widths.iter().cloned()).collect();
    pairs.sort();
    if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidOrbit("repeated orbit point".into()));
    }
    if pairs.iter().any(|(_, w)| w <= &Rational::zero()) {
        return Err(Error::InvalidWidths("widths must be positive".into()));
    }
    let total: Rational = widths.iter().cloned().sum();
    if total >= Rational::one() {
        return Err(Error::InvalidWidths("widths must sum to less than 1".into()));
    }
    let pts: Vec<CirclePoint> = pairs.iter().map(|p| p.0.clone()).collect();
    let w: Vec<Rational> = pairs.iter().map(|p| p.1.clone()).collect();
    let scale = Rational::one() - &total;
    let mut starts = Vec::with_capacity(pts.len());
    let mut acc = Rational::zero();
    for (p, wi) in pts.iter().zip(&w) {
        starts.push(&scale * p.rep() + &acc);
        acc += wi;
    }
    let arcs: Vec<Arc> = starts.iter().zip(&w).map(|(s, wi)| Arc::new(s, wi.clone())).collect();
    let phi = devil_staircase(&arcs)?;
    // old circle to new circle, off the orbit
    let s = |x: &Rational| -> Rational {
        let before: Rational = pts.iter().zip(&w).filter(|(p, _)| p.rep() < x).map(|(_, wi)| wi.clone()).sum();
        &scale * x + before
    };
    let mut gens = Vec::with_capacity(rho.rank());
    for g in &rho.generators {
        let perm = orbit_permutation_of(g, &pts)?;
        let mut cands: Vec<Rational> = Vec::new();
        for a in &arcs {
            cands.push(a.start.clone());
            cands.push(a.end());
        }
        for k in g.sigma().pl().knots() {
            let c = CirclePoint::new(&k.at);
            if !pts.contains(&c) {
                cands.push(s(c.rep()));
            }
        }
        let mut samples: Vec<(CirclePoint, CirclePoint)> = Vec::new();
        for y in cands {
            let yp = CirclePoint::new(&y);
            let image = match arcs.iter().position(|a| a.contains(&yp)) {
                Some(i) => {
                    let j = perm[i];
                    let mut t = yp.rep().clone();
                    if t < arcs[i].start {
                        t += Rational::one();
                    }
                    &arcs[j].start + (t - &arcs[i].start) * &w[j] / &w[i]
                }
                None => {
                    let x = CirclePoint::new(&phi.lift().eval(yp.rep()));
                    s(g.apply(&x).rep())
                }
            };
            samples.push((yp, CirclePoint::new(&image)));
        }
        gens.push(CircleHomeo::from_pairs(&samples)?);
    }
    Ok((GroupAction::new(gens, None, rho.relations.clone())?, arcs))
}

fn arc_image(g: &CircleHomeo, a: &Arc, arcs: &[Arc]) -> Option<usize> {
    let s = g.apply(&CirclePoint::new(&a.start));
    let e = g.apply(&CirclePoint::new(&a.end()));
    arcs.iter()
        .position(|b| CirclePoint::new(&b.start) == s && CirclePoint::new(&b.end()) == e)
}

pub fn arcs_invariant(rho: &GroupAction, arcs: &[Arc]) -> bool {
    rho.generators
        .iter()
        .all(|g| arcs.iter().all(|a| arc_image(g, a, arcs).is_some()))
}

/// `ρ'(γ)φ = φρ(γ)` as an identity of lifts, up to an integer translation.
pub fn equivariant(h_target: &CircleHomeo, phi: &MonotoneMap, h_source: &CircleHomeo) -> bool {
    let a = h_target.sigma().as_monotone().compose(phi.lift());
    let b = phi.lift().compose(h_source.sigma());
    let n = a.eval(&Rational::zero()) - b.eval(&Rational::zero());
    n.is_integer() && a.pl() == &b.pl().add_const(&n).canonical()
}

/// Collapses every arc of an invariant system to a point.
pub fn collapse(rho: &GroupAction, arcs: &[Arc]) -> Result<(GroupAction, MonotoneMap)> {
    let phi = devil_staircase(arcs)?;
    if !arcs_invariant(rho, arcs) {
        return Err(Error::InvalidArcSystem("arc system is not invariant".into()));
    }
    let mut gens = Vec::with_capacity(rho.rank());
    for g in &rho.generators {
        let mut cands: Vec<Rational> = vec![Rational::zero()];
        for k in g.sigma().pl().knots() {
            cands.push(phi.lift().eval(&k.at));
        }
        for a in arcs {
            cands.push(phi.lift().eval(&a.start));
        }
        let samples: Vec<(CirclePoint, CirclePoint)> = cands
            .into_iter()
            .map(|y| {
                let yp = CirclePoint::new(&y);
                let x = CirclePoint::new(&phi.lift().pl().ginv_lower(yp.rep()));
                (yp, phi.apply(&g.apply(&x)))
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let gq = CircleHomeo::from_pairs(&samples)?;
        if !equivariant(&gq, &phi, g) {
            return Err(Error::InvalidArcSystem("quotient map fails equivariance".into()));
        }
        gens.push(gq);
    }
    Ok((GroupAction::new(gens, None, rho.relations.clone())?, phi))
}

/// PL lift with rotation number 1/2 whose square fixes exactly `[0]` and
/// `[1/2]`: a half turn composed with a map fixing those two points.
pub fn two_point_orbit_lift() -> PlLift {
    use crate::circle::rat;
    PlLift::from_points(&[
        (rat(0, 1), rat(1, 2)),
        (rat(1, 4), rat(7, 8)),
        (rat(1, 2), rat(1, 1)),
        (rat(3, 4), rat(11, 8)),
    ])
    .expect("increasing data")
}

pub fn frac_point(x: &Rational) -> CirclePoint {
    CirclePoint::new(&frac(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;
    use crate::gen;
    use crate::rotation::{rotation_number, translation_number};
    use proptest::prelude::*;

    fn cp(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    fn rotations(a: Rational, b: Rational) -> GroupAction {
        GroupAction::new(vec![CircleHomeo::rotation(a), CircleHomeo::rotation(b)], None, vec![]).unwrap()
    }

    #[test]
    fn euler_pullback() {
        let half = GroupAction::rotation(rat(1, 2));
        let c = pullback_cocycle(&half, &CirclePoint::zero());
        assert_eq!(c([&vec![], &vec![1], &vec![1, 1]]).unwrap(), 1);
        let triv = GroupAction::cyclic(CircleHomeo::identity());
        let c = pullback_cocycle(&triv, &CirclePoint::from_ratio(1, 3));
        assert_eq!(c([&vec![1], &vec![-1], &vec![1, 1]]).unwrap(), 0);
    }

    #[test]
    fn words() {
        let rho = rotations(rat(1, 3), rat(1, 4));
        assert!(rho.evaluate_word(&[]).unwrap().is_identity());
        assert!(rho.evaluate_word(&[1, 2, -2, -1]).unwrap().is_identity());
        assert!(rho.evaluate_word(&[1, 2, -1, -2]).unwrap().is_identity());
        assert!(rho.evaluate_word(&[3]).is_err());
        assert_eq!(ball(2, 2).len(), 1 + 4 + 12);
        let mut rng = gen::rng(5);
        let sigma = GroupAction::new(
            vec![gen::random_homeo(&mut rng, 3), gen::random_homeo(&mut rng, 3)],
            None,
            vec![],
        )
        .unwrap();
        for w in ball(2, 3) {
            let x = cp(1, 7);
            assert_eq!(sigma.apply_word(&w, &x).unwrap(), sigma.evaluate_word(&w).unwrap().apply(&x));
        }
    }

    #[test]
    fn relations_are_checked() {
        let r = CircleHomeo::rotation(rat(1, 3));
        assert!(GroupAction::new(vec![r.clone()], None, vec![vec![1, 1, 1]]).is_ok());
        assert!(GroupAction::new(vec![r], None, vec![vec![1, 1]]).is_err());
        let bad_lift = PlLift::translation(rat(1, 2));
        assert!(GroupAction::new(vec![CircleHomeo::rotation(rat(1, 3))], Some(vec![bad_lift]), vec![]).is_err());
    }

    #[test]
    fn fixed_sets() {
        assert!(fixed_set(&CircleHomeo::rotation(rat(1, 3))).is_empty());
        assert!(fixed_set(&CircleHomeo::identity()).is_whole());
        let h = CircleHomeo::from_pairs(&[
            (cp(0, 1), cp(0, 1)),
            (cp(1, 4), cp(3, 8)),
            (cp(1, 2), cp(1, 2)),
            (cp(3, 4), cp(7, 8)),
        ])
        .unwrap();
        let fs = fixed_set(&h);
        assert_eq!(fs.pieces(), vec![(int(0), int(0)), (rat(1, 2), rat(1, 2))]);
        // oracle: evaluation on a grid
        for j in 0..64 {
            let x = cp(j, 64);
            assert_eq!(fs.contains(&x), h.apply(&x) == x, "{x}");
        }
    }

    #[test]
    fn global_fixed_sets() {
        let triv = GroupAction::new(vec![CircleHomeo::identity()], None, vec![]).unwrap();
        assert!(global_fixed_set(&triv).is_whole());
        assert!(global_fixed_set(&GroupAction::rotation(rat(1, 2))).is_empty());
        let mut rng = gen::rng(9);
        let a = gen::homeo_fixing(&mut rng, &[rat(1, 5), rat(3, 5)], 4);
        let b = gen::homeo_fixing(&mut rng, &[rat(1, 5), rat(4, 5)], 4);
        let rho = GroupAction::new(vec![a.clone(), b.clone()], None, vec![]).unwrap();
        let g = global_fixed_set(&rho);
        assert_eq!(g.pieces(), vec![(rat(1, 5), rat(1, 5))]);
        assert_eq!(a.apply(&cp(1, 5)), cp(1, 5));
        assert_eq!(b.apply(&cp(1, 5)), cp(1, 5));
    }

    #[test]
    fn finite_orbits() {
        assert_eq!(finite_orbit_search(&GroupAction::rotation(rat(2, 5)), 10).unwrap().len(), 5);
        let mut rng = gen::rng(4);
        let h = gen::homeo_fixing(&mut rng, &[rat(1, 3)], 2);
        let o = finite_orbit_search(&GroupAction::cyclic(h), 4).unwrap();
        assert_eq!(o, vec![cp(1, 3)]);
        let rho = rotations(rat(1, 3), rat(1, 4));
        let o = finite_orbit_search(&rho, 12).unwrap();
        assert_eq!(o.len(), 12);
        assert!(is_invariant_set(&rho, &o));
        assert!(finite_orbit_search(&rho, 11).is_none());
    }

    #[test]
    fn sup_examples() {
        let triv = GroupAction::cyclic_lifted(PlLift::identity()).unwrap();
        assert!(matches!(sup_fixed_point(&triv, 3).unwrap(), SupFixedPoint::Fixed { value, .. } if value.is_zero()));
        let half = GroupAction::rotation(rat(1, 2));
        assert!(matches!(sup_fixed_point(&half, 4).unwrap(), SupFixedPoint::Unbounded { .. }));
        let mut rng = gen::rng(2);
        let h = gen::homeo_fixing(&mut rng, &[rat(1, 4)], 2);
        let lift = h.sigma().add(&(rat(1, 4) - h.sigma().eval(&rat(1, 4))));
        assert_eq!(lift.eval(&rat(1, 4)), rat(1, 4));
        let rho = GroupAction::cyclic_lifted(lift.clone()).unwrap();
        match sup_fixed_point(&rho, 6).unwrap() {
            SupFixedPoint::Fixed { value, ball_max, .. } => {
                assert_eq!(lift.eval(&value), value);
                assert!(value <= rat(5, 4));
                assert!(ball_max <= value);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lift_round_trip() {
        let triv = GroupAction::cyclic(CircleHomeo::identity());
        let lifted = lift_correspondence(&triv, &|_| 0, &ball(1, 2)).unwrap();
        assert_eq!(lifted.lifts().unwrap(), &[PlLift::identity()]);

        let mut rng = gen::rng(8);
        let h = gen::homeo_fixing(&mut rng, &[rat(1, 3)], 2);
        let s = h.sigma();
        let lift = s.add(&(rat(1, 3) - s.eval(&rat(1, 3))));
        let rho = GroupAction::cyclic_lifted(lift).unwrap();
        let u = primitive_from_lift(&rho, &ball(1, 3)).unwrap();
        for n in -100..=100i32 {
            let w: Word = if n >= 0 { vec![1; n as usize] } else { vec![-1; (-n) as usize] };
            assert!(u(&w).abs() <= 1);
        }
        let back = lift_correspondence(&rho, &u, &ball(1, 3)).unwrap();
        assert_eq!(back.lifts(), rho.lifts());
        assert!(lift_correspondence(&rho, &|_| 5, &ball(1, 2)).is_err());
    }

    #[test]
    fn blow_up_and_collapse() {
        let id = GroupAction::cyclic(CircleHomeo::identity());
        let (b, arcs) = blow_up(&id, &[cp(1, 5)], &[rat(1, 10)]).unwrap();
        assert!(b.generators()[0].is_identity());
        assert_eq!(arcs.len(), 1);

        let r = GroupAction::cyclic(CircleHomeo::rotation(rat(1, 3)));
        let orbit = [cp(0, 1), cp(1, 3), cp(2, 3)];
        let w = vec![rat(1, 12); 3];
        let (b, arcs) = blow_up(&r, &orbit, &w).unwrap();
        assert!(arcs_invariant(&b, &arcs));
        let rn = rotation_number(b.generators()[0].sigma(), 12, 4096);
        assert_eq!(rn.exact(), Some(&rat(1, 3)));
        let (c, phi) = collapse(&b, &arcs).unwrap();
        assert!(phi.is_continuous());
        assert_eq!(rotation_number(c.generators()[0].sigma(), 12, 4096).exact(), Some(&rat(1, 3)));
        assert!(equivariant(&c.generators()[0], &phi, &b.generators()[0]));

        assert!(blow_up(&r, &orbit, &[rat(1, 2), rat(1, 4), rat(1, 4)]).is_err());
        assert!(blow_up(&r, &[cp(0, 1), cp(1, 2)], &[rat(1, 8), rat(1, 8)]).is_err());
        let (same, phi) = collapse(&r, &[]).unwrap();
        assert_eq!(same.generators(), r.generators());
        assert_eq!(phi, MonotoneMap::identity());
        let not_inv = [Arc::new(&rat(0, 1), rat(1, 12))];
        assert!(collapse(&r, &not_inv).is_err());
    }

    #[test]
    fn two_point_orbit_map() {
        let h = two_point_orbit_lift();
        let t = translation_number(&h, 12, 4096);
        assert_eq!(t.exact(), Some(&rat(1, 2)));
        let sq = CircleHomeo::from_lift(&h.compose(&h)).unwrap();
        assert_eq!(fixed_set(&sq).pieces(), vec![(int(0), int(0)), (rat(1, 2), rat(1, 2))]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn blow_up_round_trip(p in 1i64..5, q in 2i64..6, seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let g = gen::random_homeo(&mut rng, 3);
            let h = g.op(&CircleHomeo::rotation(rat(p, q))).op(&g.inverse());
            let rho = GroupAction::cyclic(h.clone());
            let x = g.apply(&CirclePoint::zero());
            let orbit = orbit_closure(&rho, &x, 12).unwrap();
            let widths: Vec<Rational> = orbit.iter().map(|_| rat(rand::Rng::gen_range(&mut rng, 1..4), 8 * orbit.len() as i64)).collect();
            let (b, arcs) = blow_up(&rho, &orbit, &widths).unwrap();
            let (c, _) = collapse(&b, &arcs).unwrap();
            let r0 = rotation_number(h.sigma(), 12, 64);
            let r1 = rotation_number(b.generators()[0].sigma(), 12, 64);
            let r2 = rotation_number(c.generators()[0].sigma(), 12, 64);
            prop_assert_eq!(r0.exact(), r1.exact());
            prop_assert_eq!(r0.exact(), r2.exact());
        }

        #[test]
        fn fixed_point_iff_rotation_zero(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let h = gen::random_homeo(&mut rng, 4);
            let has_fixed = !fixed_set(&h).is_empty();
            let rn = rotation_number(h.sigma(), 12, 512);
            prop_assert_eq!(has_fixed, rn.exact() == Some(&int(0)));
        }
    }
}
