//! Semi-conjugacies between circle actions.
//!
//! A left-semi-conjugacy from `ρ1` to `ρ2` is a non-decreasing degree one
//! map `φ` with `ρ1(γ)φ = φρ2(γ)`. Everything here is decided by exact
//! PL identities between lifts.

use num_traits::{One, Zero};

use crate::action::{equivariant, fixed_set, lift_fixed_set, orbit_permutation_of, GroupAction, Word};
use crate::circle::{int, lift_in_window, CirclePoint, Rational};
use crate::error::{Error, Result};
use crate::homeo::CircleHomeo;
use crate::monotone::MonotoneMap;
use crate::pl::{Interval, Knot, Pl, PlLift};
use crate::rotation::{translation_number, TranslationNumber};

fn same_rank(rho1: &GroupAction, rho2: &GroupAction) -> Result<()> {
    if rho1.rank() != rho2.rank() {
        return Err(Error::InvalidInput(format!(
            "actions have {} and {} generators",
            rho1.rank(),
            rho2.rank()
        )));
    }
    Ok(())
}

/// `ρ̃1(γ)φ̃ - φ̃ρ̃2(γ)` as periodic PL data, for the given lifts.
fn n_gamma(l1: &PlLift, phi: &PlLift, l2: &PlLift) -> Pl {
    let a = l1.compose(phi);
    let b = phi.compose(l2);
    a.pl().sub(b.pl())
}

fn integer_valued(d: &Pl) -> bool {
    let ks = d.knots();
    ks.iter().enumerate().all(|(i, k)| {
        let next = &ks[(i + 1) % ks.len()];
        k.left.is_integer() && k.point.is_integer() && k.right.is_integer() && k.right == next.left
    })
}

/// `ρ1(γ)φ = φρ2(γ)` for every generator, as circle maps: the lifted
/// difference must be integer valued everywhere.
pub fn check_left_semiconjugacy(rho1: &GroupAction, rho2: &GroupAction, phi: &MonotoneMap) -> Result<bool> {
    same_rank(rho1, rho2)?;
    Ok(rho1
        .generators()
        .iter()
        .zip(rho2.generators())
        .all(|(g1, g2)| integer_valued(&n_gamma(g1.sigma(), phi.lift(), g2.sigma()))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NGamma {
    Constant(i64),
    /// Integer-valued step data of `n_γ` over one period.
    Steps(Pl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiConjReport {
    pub equivariant: bool,
    pub n: Vec<NGamma>,
    /// Lifts of `ρ1` adjusted by `-n_γ`, when every `n_γ` is constant.
    pub normalized: Option<GroupAction>,
}

pub fn analyze_n_gamma(rho1: &GroupAction, rho2: &GroupAction, phi: &PlLift) -> Result<SemiConjReport> {
    same_rank(rho1, rho2)?;
    let l1 = rho1.lifts().ok_or_else(|| Error::InvalidAction("first action needs lifts".into()))?;
    let l2 = rho2.lifts().ok_or_else(|| Error::InvalidAction("second action needs lifts".into()))?;
    let mut n = Vec::with_capacity(l1.len());
    let mut ok = true;
    for (a, b) in l1.iter().zip(l2) {
        let d = n_gamma(a, phi, b);
        ok &= integer_valued(&d);
        match d.constant_value() {
            Some(c) if c.is_integer() => n.push(NGamma::Constant(crate::circle::floor_i64(&c))),
            _ => n.push(NGamma::Steps(d)),
        }
    }
    let normalized = if ok && n.iter().all(|x| matches!(x, NGamma::Constant(_))) {
        let lifts = l1
            .iter()
            .zip(&n)
            .map(|(l, c)| match c {
                NGamma::Constant(c) => l.add(&int(-c)),
                NGamma::Steps(_) => unreachable!(),
            })
            .collect();
        Some(rho1.with_lifts(lifts)?)
    } else {
        None
    };
    Ok(SemiConjReport {
        equivariant: ok,
        n,
        normalized,
    })
}

/// Subset of the circle as disjoint intervals with endpoint flags. The
/// whole circle is the single interval `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSubset {
    pub pieces: Vec<Interval>,
}

impl CircleSubset {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.pieces.len() == 1 && {
            let p = &self.pieces[0];
            &p.hi - &p.lo == Rational::one() && (p.lo_closed != p.hi_closed)
        }
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        self.pieces.iter().any(|p| {
            let y = lift_in_window(x, &p.lo);
            p.contains(&y)
        })
    }

    /// Closed endpoints and interior midpoints, as circle points.
    pub fn sample_points(&self) -> Vec<CirclePoint> {
        let mut out = Vec::new();
        for p in &self.pieces {
            if p.lo_closed {
                out.push(CirclePoint::new(&p.lo));
            }
            if p.hi_closed && p.hi != p.lo {
                out.push(CirclePoint::new(&p.hi));
            }
            if p.lo < p.hi {
                out.push(CirclePoint::new(&((&p.lo + &p.hi) / int(2))));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Level sets of positive length over one period.
fn flat_level_sets(phi: &PlLift) -> Vec<Interval> {
    let pl = phi.pl();
    let ks = pl.knots();
    let mut out: Vec<Interval> = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        let next_left = if i + 1 < ks.len() {
            ks[i + 1].left.clone()
        } else {
            &ks[0].left + Rational::one()
        };
        if k.right == next_left {
            let s = pl.level_set(&k.right).expect("value attained");
            let n = s.lo.floor();
            let s = Interval {
                lo: &s.lo - &n,
                hi: &s.hi - &n,
                ..s
            };
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn complement(removed: &[Interval]) -> CircleSubset {
    let removed: Vec<&Interval> = removed.iter().filter(|r| !r.is_empty()).collect();
    if removed.is_empty() {
        return CircleSubset {
            pieces: vec![Interval {
                lo: Rational::zero(),
                hi: Rational::one(),
                lo_closed: true,
                hi_closed: false,
            }],
        };
    }
    let mut pieces = Vec::new();
    for (j, r) in removed.iter().enumerate() {
        let next = removed[(j + 1) % removed.len()];
        let (nlo, nclosed) = if j + 1 < removed.len() {
            (next.lo.clone(), next.lo_closed)
        } else {
            (&next.lo + Rational::one(), next.lo_closed)
        };
        let gap = Interval {
            lo: r.hi.clone(),
            hi: nlo,
            lo_closed: !r.hi_closed,
            hi_closed: !nclosed,
        };
        if !gap.is_empty() {
            pieces.push(gap);
        }
    }
    CircleSubset { pieces }
}

/// Projections of `{x = inf S_x}` and `{x = sup S_x}` where
/// `S_x = φ̃⁻¹(φ̃(x))`. The map is injective on each.
pub fn injective_invariant_sets(phi: &PlLift) -> (CircleSubset, CircleSubset) {
    let flats = flat_level_sets(phi);
    let minus: Vec<Interval> = flats
        .iter()
        .map(|s| Interval {
            lo_closed: false,
            ..s.clone()
        })
        .collect();
    let plus: Vec<Interval> = flats
        .iter()
        .map(|s| Interval {
            hi_closed: false,
            ..s.clone()
        })
        .collect();
    (complement(&minus), complement(&plus))
}

/// `x ↦ min { p ∈ Fix(f) : p >= x }`, the pointwise supremum of all
/// iterates `f^k`, `k ∈ Z`, for a strict lift with fixed points.
pub fn sup_of_iterates(f: &PlLift) -> Option<PlLift> {
    let fs = lift_fixed_set(f);
    if fs.is_empty() {
        return None;
    }
    if fs.is_whole() {
        return Some(PlLift::identity());
    }
    let mut comps: Vec<(Rational, Rational)> = fs.components().to_vec();
    if comps.len() > 1 && comps[0].0.is_zero() {
        let first = comps.remove(0);
        let last = comps.pop().expect("wrapping component");
        if last.0.is_one() {
            comps.insert(0, first);
        } else {
            comps.push((last.0, first.1 + Rational::one()));
        }
    }
    let m = comps.len();
    let mut knots = Vec::new();
    for (j, (a, b)) in comps.iter().enumerate() {
        let next = if j + 1 < m {
            comps[j + 1].0.clone()
        } else {
            &comps[0].0 + Rational::one()
        };
        if a < b {
            knots.push(Knot {
                at: a.clone(),
                left: a.clone(),
                point: a.clone(),
                right: a.clone(),
            });
            knots.push(Knot {
                at: b.clone(),
                left: b.clone(),
                point: b.clone(),
                right: next,
            });
        } else {
            knots.push(Knot {
                at: a.clone(),
                left: a.clone(),
                point: a.clone(),
                right: next,
            });
        }
    }
    let pl = Pl::from_knots(knots, 1).expect("distinct fixed components");
    Some(PlLift::monotone(pl).expect("non-decreasing step data"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupOutcome {
    /// `φ̃_N = φ̃_{N-1}` structurally.
    Stabilized { phi: MonotoneMap, radius: usize },
    /// Exact supremum over the whole group, via a lift whose `q`-th power
    /// is an integer translation.
    Limit { phi: MonotoneMap, period: u32 },
    /// The supremum is infinite for these lifts.
    Diverged { reason: String },
    /// No verdict within the caps.
    Unresolved { radius: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupReport {
    pub outcome: SupOutcome,
    /// `check_left_semiconjugacy` on the produced map.
    pub verified: bool,
}

impl SupReport {
    pub fn phi(&self) -> Option<&MonotoneMap> {
        match &self.outcome {
            SupOutcome::Stabilized { phi, .. } | SupOutcome::Limit { phi, .. } => Some(phi),
            _ => None,
        }
    }
}

pub const DEFAULT_BALL_CAP: usize = 4096;

/// `φ̃(x) = sup_g ρ̃1(g)⁻¹ρ̃2(g)(x)`.
///
/// Terms follow `T_{wa} = ρ̃1(a)⁻¹ T_w ρ̃2(a)` over reduced words. A term
/// with `T(0) >= 2` certifies divergence: for lifts with equal translation
/// numbers every term stays below 2. For cyclic groups the supremum over
/// the whole group is also computed exactly when one of the lifts has a
/// power that is an integer translation.
pub fn construct_semiconjugacy_sup(
    rho1: &GroupAction,
    rho2: &GroupAction,
    ball_radius: usize,
    max_period: u32,
) -> Result<SupReport> {
    same_rank(rho1, rho2)?;
    let l1 = rho1.lifts().ok_or_else(|| Error::InvalidAction("first action needs lifts".into()))?;
    let l2 = rho2.lifts().ok_or_else(|| Error::InvalidAction("second action needs lifts".into()))?;
    let inv1: Vec<PlLift> = l1.iter().map(|l| l.invert()).collect::<Result<_>>()?;
    let inv2: Vec<PlLift> = l2.iter().map(|l| l.invert()).collect::<Result<_>>()?;
    let letter = |a: i32| -> (&PlLift, &PlLift) {
        let i = a.unsigned_abs() as usize - 1;
        if a > 0 {
            (&inv1[i], &l2[i])
        } else {
            (&l1[i], &inv2[i])
        }
    };
    let letters: Vec<i32> = (1..=rho1.rank() as i32).flat_map(|a| [a, -a]).collect();
    let two = int(2);
    let mut frontier: Vec<(Word, PlLift)> = vec![(vec![], PlLift::identity())];
    let mut phi = PlLift::identity().as_monotone();
    let mut count = 1usize;
    let mut stabilized_at = None;
    for radius in 1..=ball_radius {
        let mut next = Vec::new();
        for (w, t) in &frontier {
            for &a in &letters {
                if w.last() == Some(&-a) {
                    continue;
                }
                let (left, right) = letter(a);
                let term = left.compose(t).compose(right);
                if term.eval(&Rational::zero()) >= two {
                    let mut v = w.clone();
                    v.push(a);
                    return Ok(SupReport {
                        outcome: SupOutcome::Diverged {
                            reason: format!("term of word {v:?} exceeds 2 at 0"),
                        },
                        verified: false,
                    });
                }
                let mut v = w.clone();
                v.push(a);
                next.push((v, term));
            }
        }
        let mut new_phi = phi.pl().clone();
        for (_, t) in &next {
            new_phi = new_phi.max(t.pl());
        }
        let new_phi = PlLift::monotone(new_phi)?;
        let same = new_phi == phi;
        phi = new_phi;
        count += next.len();
        frontier = next;
        if same {
            stabilized_at = Some(radius);
            break;
        }
        if count > DEFAULT_BALL_CAP {
            break;
        }
    }
    if let Some(radius) = stabilized_at {
        let phi = MonotoneMap::new(phi)?;
        let verified = check_left_semiconjugacy(rho1, rho2, &phi)?;
        if verified {
            return Ok(SupReport {
                outcome: SupOutcome::Stabilized { phi, radius },
                verified,
            });
        }
    }
    if rho1.rank() == 1 {
        if let Some(report) = periodic_limit(rho1, rho2, &l1[0], &l2[0], max_period)? {
            return Ok(report);
        }
    }
    Ok(SupReport {
        outcome: SupOutcome::Unresolved { radius: ball_radius },
        verified: false,
    })
}

fn periodic_limit(
    rho1: &GroupAction,
    rho2: &GroupAction,
    a1: &PlLift,
    a2: &PlLift,
    max_period: u32,
) -> Result<Option<SupReport>> {
    let mut p1 = PlLift::identity();
    let mut p2 = PlLift::identity();
    for q in 1..=max_period.max(1) {
        p1 = p1.compose(a1);
        p2 = p2.compose(a2);
        // T_{n+kq} = ρ̃1^{-n} F^{±k} ρ̃2^n with F the other power minus p.
        let f = if let Some(p) = p1.is_translation().filter(|p| p.is_integer()) {
            p2.add(&-p)
        } else if let Some(p) = p2.is_translation().filter(|p| p.is_integer()) {
            p1.add(&-p)
        } else {
            continue;
        };
        let Some(u) = sup_of_iterates(&f) else {
            return Ok(Some(SupReport {
                outcome: SupOutcome::Diverged {
                    reason: format!("translation numbers differ: no fixed point of the period-{q} return map"),
                },
                verified: false,
            }));
        };
        let inv1 = a1.invert()?;
        let mut left = PlLift::identity();
        let mut right = PlLift::identity();
        let mut phi = u.pl().clone();
        for _ in 1..q {
            left = left.compose(&inv1);
            right = right.compose(a2);
            phi = phi.max(left.compose(&u).compose(&right).pl());
        }
        let phi = MonotoneMap::new(PlLift::monotone(phi)?)?;
        let verified = check_left_semiconjugacy(rho1, rho2, &phi)?;
        return Ok(Some(SupReport {
            outcome: SupOutcome::Limit { phi, period: q },
            verified,
        }));
    }
    Ok(None)
}

fn exact_translation(rho: &GroupAction, which: &str) -> Result<Rational> {
    if rho.rank() != 1 {
        return Err(Error::InvalidAction(format!("{which} action is not cyclic")));
    }
    let l = rho.lifts().ok_or_else(|| Error::InvalidAction(format!("{which} action needs lifts")))?;
    match translation_number(&l[0], crate::rotation::DEFAULT_MAX_PERIOD, crate::rotation::DEFAULT_MAX_ITERS) {
        TranslationNumber::Exact { value, .. } => Ok(value),
        TranslationNumber::Interval { lo, hi, .. } => Err(Error::Inconclusive(format!(
            "{which} translation number only known in ({lo}, {hi})"
        ))),
    }
}

/// Shifts the second lift by the integer making both translation numbers equal.
pub fn match_lifts(rho1: &GroupAction, rho2: &GroupAction) -> Result<GroupAction> {
    let t1 = exact_translation(rho1, "first")?;
    let t2 = exact_translation(rho2, "second")?;
    let m = &t1 - &t2;
    if !m.is_integer() {
        return Err(Error::NotSemiconjugate(format!("rotation numbers {t1} and {t2} differ mod 1")));
    }
    rho2.with_lifts(vec![rho2.lifts().expect("checked")[0].add(&m)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightened {
    pub rotation: GroupAction,
    /// Left-semi-conjugacy from the rotation to the input action.
    pub to_input: MonotoneMap,
    /// Left-semi-conjugacy from the input action to the rotation.
    pub from_input: MonotoneMap,
}

/// The rotation action with the same rotation number, with semi-conjugacies
/// in both directions built by the sup construction.
pub fn straighten_to_rotation(rho: &GroupAction, ball_radius: usize) -> Result<Straightened> {
    let rho = if rho.lifts().is_some() {
        rho.clone()
    } else {
        rho.with_section_lifts()
    };
    let t = exact_translation(&rho, "input")?;
    let rot = GroupAction::rotation(crate::circle::frac(&t));
    let rho = match_lifts(&rot, &rho)?;
    let fwd = construct_semiconjugacy_sup(&rot, &rho, ball_radius, crate::rotation::DEFAULT_MAX_PERIOD)?;
    let bwd = construct_semiconjugacy_sup(&rho, &rot, ball_radius, crate::rotation::DEFAULT_MAX_PERIOD)?;
    match (fwd.verified, bwd.verified) {
        (true, true) => Ok(Straightened {
            rotation: rot,
            to_input: fwd.phi().expect("verified").clone(),
            from_input: bwd.phi().expect("verified").clone(),
        }),
        _ => Err(Error::Inconclusive("sup construction did not resolve".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub action: GroupAction,
    /// Collapses the arcs coming from the second action.
    pub phi1: MonotoneMap,
    /// Collapses the arcs coming from the first action.
    pub phi2: MonotoneMap,
}

fn cyclic_shift(perm: &[usize]) -> Option<usize> {
    let k = perm.len();
    let s = perm[0];
    (0..k).all(|i| perm[i] == (i + s) % k).then_some(s)
}

/// Interleaves the arcs between consecutive orbit points of the two actions
/// into one circle acted on by both.
pub fn glue_finite_orbit_actions(
    rho1: &GroupAction,
    rho2: &GroupAction,
    orbit1: &[CirclePoint],
    orbit2: &[CirclePoint],
) -> Result<Glued> {
    same_rank(rho1, rho2)?;
    if orbit1.len() != orbit2.len() || orbit1.is_empty() {
        return Err(Error::InvalidOrbit(format!(
            "orbit sizes {} and {} differ",
            orbit1.len(),
            orbit2.len()
        )));
    }
    let mut o1 = orbit1.to_vec();
    let mut o2 = orbit2.to_vec();
    o1.sort();
    o2.sort();
    o1.dedup();
    o2.dedup();
    if o1.len() != orbit1.len() || o2.len() != orbit2.len() {
        return Err(Error::InvalidOrbit("repeated orbit point".into()));
    }
    let k = o1.len();
    let one = Rational::one();
    let mut shifts = Vec::new();
    for (g1, g2) in rho1.generators().iter().zip(rho2.generators()) {
        let s1 = cyclic_shift(&orbit_permutation_of(g1, &o1)?);
        let s2 = cyclic_shift(&orbit_permutation_of(g2, &o2)?);
        match (s1, s2) {
            (Some(a), Some(b)) if a == b => shifts.push(a),
            _ => return Err(Error::CannotGlue("generators permute the orbits differently".into())),
        }
    }
    // u_i, v_i with u_k = u_0 + 1
    let u: Vec<Rational> = (0..=k)
        .map(|i| if i < k { o1[i].rep().clone() } else { o1[0].rep() + &one })
        .collect();
    let v: Vec<Rational> = (0..=k)
        .map(|i| if i < k { o2[i].rep().clone() } else { o2[0].rep() + &one })
        .collect();
    let half = crate::circle::half();
    // start of U_i and V_i in the glued circle
    let xu = |i: usize| -> Rational { ((&u[i] - &u[0]) + (&v[i] - &v[0])) * &half };
    let xv = |i: usize| -> Rational { ((&u[i + 1] - &u[0]) + (&v[i] - &v[0])) * &half };
    let mut k1 = Vec::new();
    let mut k2 = Vec::new();
    for i in 0..k {
        k1.push(Knot::continuous(xu(i), u[i].clone()));
        k1.push(Knot::continuous(xv(i), u[i + 1].clone()));
        k2.push(Knot::continuous(xu(i), v[i].clone()));
        k2.push(Knot::continuous(xv(i), v[i].clone()));
    }
    // k2's second knot collides with the first when v is the only point: use distinct positions only
    let phi1 = MonotoneMap::new(PlLift::monotone(Pl::from_knots(dedup_knots(k1), 1)?)?)?;
    let phi2 = MonotoneMap::new(PlLift::monotone(Pl::from_knots(dedup_knots(k2), 1)?)?)?;

    let mut gens = Vec::with_capacity(rho1.rank());
    for ((g1, g2), &s) in rho1.generators().iter().zip(rho2.generators()).zip(&shifts) {
        let mut pairs: Vec<(CirclePoint, CirclePoint)> = Vec::new();
        for i in 0..k {
            let j = (i + s) % k;
            pairs.push((CirclePoint::new(&xu(i)), CirclePoint::new(&xu(j))));
            pairs.push((CirclePoint::new(&xv(i)), CirclePoint::new(&xv(j))));
            for kn in g1.sigma().pl().knots() {
                let x = lift_in_window(&CirclePoint::new(&kn.at), &u[i]);
                if x > u[i] && x < u[i + 1] {
                    let y = lift_in_window(&g1.apply(&CirclePoint::new(&x)), &u[j]);
                    pairs.push((CirclePoint::new(&(xu(i) + (&x - &u[i]) * &half)), CirclePoint::new(&(xu(j) + (&y - &u[j]) * &half))));
                }
            }
            for kn in g2.sigma().pl().knots() {
                let x = lift_in_window(&CirclePoint::new(&kn.at), &v[i]);
                if x > v[i] && x < v[i + 1] {
                    let y = lift_in_window(&g2.apply(&CirclePoint::new(&x)), &v[j]);
                    pairs.push((CirclePoint::new(&(xv(i) + (&x - &v[i]) * &half)), CirclePoint::new(&(xv(j) + (&y - &v[j]) * &half))));
                }
            }
        }
        pairs.sort();
        pairs.dedup();
        let g3 = CircleHomeo::from_pairs(&pairs)?;
        if !equivariant(g1, &phi1, &g3) || !equivariant(g2, &phi2, &g3) {
            return Err(Error::CannotGlue("glued generator fails equivariance".into()));
        }
        gens.push(g3);
    }
    let action = GroupAction::new(gens, None, rho1.relations().to_vec())?;
    Ok(Glued { action, phi1, phi2 })
}

fn dedup_knots(mut ks: Vec<Knot>) -> Vec<Knot> {
    ks.sort_by(|a, b| a.at.cmp(&b.at));
    ks.dedup_by(|a, b| a.at == b.at);
    ks
}

/// Whether a circle homeomorphism fixes a point: used to pick the
/// constant-map semi-conjugacy.
pub fn some_fixed_point(h: &CircleHomeo) -> Option<CirclePoint> {
    fixed_set(h).boundary_points().into_iter().next()
}
