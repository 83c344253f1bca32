//! Orientation-preserving PL circle homeomorphisms, stored through the section
//! with value at 0 in `[0,1)`.

use num_traits::{One, Zero};

use crate::circle::{floor_i64, frac, int, CirclePoint, Rational};
use crate::error::{Error, Result};
use crate::pl::{Knot, Pl, PlLift};

/// Minimal group interface shared by circle homeomorphisms and their lifts.
pub trait Group: Sized {
    fn identity() -> Self;
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleHomeo {
    sigma: PlLift,
}

impl CircleHomeo {
    /// Projects a strict lift, normalizing by an integer translation.
    pub fn from_lift(lift: &PlLift) -> Result<CircleHomeo> {
        Ok(decompose(lift)?.0)
    }

    pub fn rotation(alpha: Rational) -> CircleHomeo {
        CircleHomeo {
            sigma: PlLift::translation(frac(&alpha)),
        }
    }

    /// Homeomorphism through the given circle points: `points[i] ↦ values[i]`,
    /// affine in between. Values are lifted greedily so the result is increasing.
    pub fn from_pairs(pairs: &[(CirclePoint, CirclePoint)]) -> Result<CircleHomeo> {
        let mut sorted: Vec<(CirclePoint, CirclePoint)> = pairs.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(Error::InvalidInput("no points".into()));
        }
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("point mapped twice".into()));
        }
        let mut knots = Vec::with_capacity(sorted.len());
        let mut prev: Option<Rational> = None;
        for (x, y) in &sorted {
            let v = match &prev {
                None => y.rep().clone(),
                Some(p) => {
                    let mut v = p.floor() + y.rep();
                    if &v <= p {
                        v += Rational::one();
                    }
                    v
                }
            };
            knots.push(Knot::continuous(x.rep().clone(), v.clone()));
            prev = Some(v);
        }
        let first = &knots[0].point;
        if prev.as_ref().unwrap() >= &(first + Rational::one()) {
            return Err(Error::Validation("points and images are not in the same cyclic order".into()));
        }
        let pl = Pl::from_sorted_knots(knots, 1)?.canonical();
        CircleHomeo::from_lift(&PlLift::strict(pl)?)
    }

    pub fn sigma(&self) -> &PlLift {
        &self.sigma
    }

    /// `σ(h)` composed with the integer translation by `n`.
    pub fn lift_with(&self, n: i64) -> PlLift {
        self.sigma.add(&int(n))
    }

    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        CirclePoint::new(&self.sigma.eval(x.rep()))
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_translation() == Some(Rational::zero())
    }

    pub fn breakpoint_count(&self) -> usize {
        self.sigma.breakpoint_count()
    }
}

impl Group for CircleHomeo {
    fn identity() -> Self {
        CircleHomeo {
            sigma: PlLift::identity(),
        }
    }

    fn op(&self, other: &Self) -> Self {
        CircleHomeo::from_lift(&self.sigma.compose(&other.sigma)).expect("composition of strict lifts")
    }

    fn inverse(&self) -> Self {
        CircleHomeo::from_lift(&self.sigma.invert().expect("strict")).expect("inverse of strict lift")
    }
}

impl Group for PlLift {
    fn identity() -> Self {
        PlLift::identity()
    }

    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        self.invert().expect("only strict lifts form a group")
    }
}

/// Splits a strict lift as `σ(p(h̃))` followed by translation by `⌊h̃(0)⌋`.
pub fn decompose(lift: &PlLift) -> Result<(CircleHomeo, i64)> {
    if lift.kind() != crate::pl::Kind::Strict {
        return Err(Error::InvalidInput("decompose needs a strict lift".into()));
    }
    let n = floor_i64(&lift.eval(&Rational::zero()));
    Ok((
        CircleHomeo {
            sigma: lift.add(&int(-n)),
        },
        n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;
    use crate::gen;
    use proptest::prelude::*;

    #[test]
    fn decompose_examples() {
        let (h, n) = decompose(&PlLift::translation(rat(7, 3))).unwrap();
        assert_eq!((h, n), (CircleHomeo::rotation(rat(1, 3)), 2));
        let (h, n) = decompose(&PlLift::identity()).unwrap();
        assert_eq!((h, n), (CircleHomeo::identity(), 0));
        let (h, n) = decompose(&PlLift::translation(rat(-1, 3))).unwrap();
        assert_eq!((h, n), (CircleHomeo::rotation(rat(2, 3)), -1));
    }

    #[test]
    fn pairs_build_homeo() {
        let h = CircleHomeo::from_pairs(&[
            (CirclePoint::from_ratio(0, 1), CirclePoint::from_ratio(1, 2)),
            (CirclePoint::from_ratio(1, 2), CirclePoint::from_ratio(0, 1)),
        ])
        .unwrap();
        assert_eq!(h, CircleHomeo::rotation(rat(1, 2)));
        let bad = CircleHomeo::from_pairs(&[
            (CirclePoint::from_ratio(0, 1), CirclePoint::from_ratio(0, 1)),
            (CirclePoint::from_ratio(1, 3), CirclePoint::from_ratio(2, 3)),
            (CirclePoint::from_ratio(2, 3), CirclePoint::from_ratio(1, 3)),
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn rotations_form_a_group() {
        let a = CircleHomeo::rotation(rat(3, 4));
        let b = CircleHomeo::rotation(rat(1, 2));
        assert_eq!(a.op(&b), CircleHomeo::rotation(rat(1, 4)));
        assert_eq!(a.op(&a.inverse()), CircleHomeo::identity());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn decompose_recombine(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let f = gen::random_strict_lift(&mut rng, 5).add(&int(gen::small_int(&mut rng, 3)));
            let (h, n) = decompose(&f).unwrap();
            prop_assert!(h.sigma().eval(&Rational::zero()) >= Rational::zero());
            prop_assert!(h.sigma().eval(&Rational::zero()) < Rational::one());
            prop_assert_eq!(h.lift_with(n), f);
        }

        #[test]
        fn group_laws(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let a = gen::random_homeo(&mut rng, 4);
            let b = gen::random_homeo(&mut rng, 4);
            let c = gen::random_homeo(&mut rng, 4);
            prop_assert_eq!(a.op(&b).op(&c), a.op(&b.op(&c)));
            prop_assert_eq!(a.op(&a.inverse()), CircleHomeo::identity());
            let x = gen::random_point(&mut rng, 12);
            prop_assert_eq!(a.op(&b).apply(&x), a.apply(&b.apply(&x)));
        }
    }
}
