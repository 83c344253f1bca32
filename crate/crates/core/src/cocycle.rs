//! Homogeneous and inhomogeneous cochains, and the explicit cocycles
//! representing the Euler class: the orbit-class Euler and orientation
//! cocycles on the circle and the obstruction cocycle of the section.

use serde::{Deserialize, Serialize};

use num_traits::One;

use crate::circle::{orientation, CirclePoint, Orientation, Rational};
use crate::homeo::{CircleHomeo, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitClass3 {
    O0,
    O1,
    O2,
    O3,
    Plus,
    Minus,
}

impl OrbitClass3 {
    pub const ALL: [OrbitClass3; 6] = [
        OrbitClass3::O0,
        OrbitClass3::O1,
        OrbitClass3::O2,
        OrbitClass3::O3,
        OrbitClass3::Plus,
        OrbitClass3::Minus,
    ];

    /// A representative triple built from `x=[0], y=[1/3], z=[2/3]`.
    pub fn representative(self) -> [CirclePoint; 3] {
        let x = CirclePoint::from_ratio(0, 1);
        let y = CirclePoint::from_ratio(1, 3);
        let z = CirclePoint::from_ratio(2, 3);
        match self {
            OrbitClass3::O0 => [x.clone(), x.clone(), x],
            OrbitClass3::O1 => [y, x.clone(), x],
            OrbitClass3::O2 => [x.clone(), y, x],
            OrbitClass3::O3 => [x.clone(), x, y],
            OrbitClass3::Plus => [x, y, z],
            OrbitClass3::Minus => [y, x, z],
        }
    }
}

pub fn classify_triple(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> OrbitClass3 {
    match (x == y, y == z, x == z) {
        (true, true, _) => OrbitClass3::O0,
        (false, true, _) => OrbitClass3::O1,
        (false, false, true) => OrbitClass3::O2,
        (true, false, _) => OrbitClass3::O3,
        (false, false, false) => match orientation(x, y, z) {
            Orientation::Positive => OrbitClass3::Plus,
            _ => OrbitClass3::Minus,
        },
    }
}

/// An invariant 2-cochain on the circle, one integer per orbit class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomCochain2 {
    pub f0: i64,
    pub f1: i64,
    pub f2: i64,
    pub f3: i64,
    #[serde(rename = "f+")]
    pub fplus: i64,
    #[serde(rename = "f-")]
    pub fminus: i64,
}

pub const EULER: HomCochain2 = HomCochain2 {
    f0: 0,
    f1: 0,
    f2: 1,
    f3: 0,
    fplus: 0,
    fminus: 1,
};

pub const ORIENTATION: HomCochain2 = HomCochain2 {
    f0: 0,
    f1: 0,
    f2: 0,
    f3: 0,
    fplus: 1,
    fminus: -1,
};

impl HomCochain2 {
    pub fn value(&self, class: OrbitClass3) -> i64 {
        match class {
            OrbitClass3::O0 => self.f0,
            OrbitClass3::O1 => self.f1,
            OrbitClass3::O2 => self.f2,
            OrbitClass3::O3 => self.f3,
            OrbitClass3::Plus => self.fplus,
            OrbitClass3::Minus => self.fminus,
        }
    }

    pub fn value_mut(&mut self, class: OrbitClass3) -> &mut i64 {
        match class {
            OrbitClass3::O0 => &mut self.f0,
            OrbitClass3::O1 => &mut self.f1,
            OrbitClass3::O2 => &mut self.f2,
            OrbitClass3::O3 => &mut self.f3,
            OrbitClass3::Plus => &mut self.fplus,
            OrbitClass3::Minus => &mut self.fminus,
        }
    }

    pub fn eval(&self, x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> i64 {
        self.value(classify_triple(x, y, z))
    }

    /// Builds the table by evaluating on one representative per class.
    pub fn from_evaluator(f: impl Fn(&CirclePoint, &CirclePoint, &CirclePoint) -> i64) -> HomCochain2 {
        let mut t = HomCochain2 {
            f0: 0,
            f1: 0,
            f2: 0,
            f3: 0,
            fplus: 0,
            fminus: 0,
        };
        for c in OrbitClass3::ALL {
            let [x, y, z] = c.representative();
            *t.value_mut(c) = f(&x, &y, &z);
        }
        t
    }

    pub fn combine(&self, a: i64, other: &HomCochain2, b: i64) -> HomCochain2 {
        HomCochain2 {
            f0: a * self.f0 + b * other.f0,
            f1: a * self.f1 + b * other.f1,
            f2: a * self.f2 + b * other.f2,
            f3: a * self.f3 + b * other.f3,
            fplus: a * self.fplus + b * other.fplus,
            fminus: a * self.fminus + b * other.fminus,
        }
    }

    pub fn is_zero(&self) -> bool {
        [self.f0, self.f1, self.f2, self.f3, self.fplus, self.fminus]
            .iter()
            .all(|v| *v == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CochainAnalysis {
    pub is_cocycle: bool,
    pub class_index: Option<i64>,
}

/// Cocycle iff `f0 = f1 = f3` and `f+ + f- = f2 + f3`; the class is `f+ - f-`.
pub fn analyze_cochain2(f: &HomCochain2) -> CochainAnalysis {
    let is_cocycle = f.f0 == f.f1 && f.f1 == f.f3 && f.fplus + f.fminus == f.f2 + f.f3;
    CochainAnalysis {
        is_cocycle,
        class_index: is_cocycle.then_some(f.fplus - f.fminus),
    }
}

/// `δb` for the invariant 1-cochain with value `alpha` on the diagonal and
/// `beta` off it.
pub fn coboundary_from_b(alpha: i64, beta: i64) -> HomCochain2 {
    HomCochain2 {
        f0: alpha,
        f1: alpha,
        f2: 2 * beta - alpha,
        f3: alpha,
        fplus: beta,
        fminus: beta,
    }
}

pub fn b_cochain(alpha: i64, beta: i64) -> impl Fn(&[CirclePoint]) -> i64 {
    move |p: &[CirclePoint]| if p[0] == p[1] { alpha } else { beta }
}

pub fn euler_cocycle(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> i64 {
    EULER.eval(x, y, z)
}

pub fn orientation_cocycle(x: &CirclePoint, y: &CirclePoint, z: &CirclePoint) -> i64 {
    orientation(x, y, z).sign()
}

/// Homogeneous differential: alternating sum over omitted coordinates.
pub fn delta_hom<T: Clone>(f: impl Fn(&[T]) -> i64, points: &[T]) -> i64 {
    (0..points.len())
        .map(|i| {
            let face: Vec<T> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let s = if i % 2 == 0 { 1 } else { -1 };
            s * f(&face)
        })
        .sum()
}

/// `ι(f)(h_0,...,h_n) = f(h_0⁻¹h_1, ..., h_{n-1}⁻¹h_n)`.
pub fn iota<G: Group + Clone>(f: impl Fn(&[G]) -> i64, hs: &[G]) -> i64 {
    let args: Vec<G> = hs.windows(2).map(|w| w[0].inverse().op(&w[1])).collect();
    f(&args)
}

/// `ι⁻¹(g)(h_1,...,h_n) = g(e, h_1, h_1h_2, ...)`.
pub fn iota_inv<G: Group + Clone>(g: impl Fn(&[G]) -> i64, hs: &[G]) -> i64 {
    let mut acc = G::identity();
    let mut args = vec![acc.clone()];
    for h in hs {
        acc = acc.op(h);
        args.push(acc.clone());
    }
    g(&args)
}

/// Inhomogeneous differential written out term by term.
pub fn d_inhom<G: Group + Clone>(f: impl Fn(&[G]) -> i64, hs: &[G]) -> i64 {
    let n = hs.len() - 1;
    let mut total = f(&hs[1..]);
    for i in 1..=n {
        let mut args: Vec<G> = hs[..i - 1].to_vec();
        args.push(hs[i - 1].op(&hs[i]));
        args.extend_from_slice(&hs[i + 1..]);
        let s = if i % 2 == 0 { 1 } else { -1 };
        total += s * f(&args);
    }
    let s = if (n + 1) % 2 == 0 { 1 } else { -1 };
    total + s * f(&hs[..n])
}

/// `d = ι⁻¹ ∘ δ ∘ ι`, computed through the homogeneous model.
pub fn d_via_homogeneous<G: Group + Clone>(f: &dyn Fn(&[G]) -> i64, hs: &[G]) -> i64 {
    iota_inv(|gs: &[G]| delta_hom(|face: &[G]| iota(f, face), gs), hs)
}

/// 1 iff `σ(h1)σ(h2)(0)` lies in `[1,2)`.
pub fn obstruction_cocycle(h1: &CircleHomeo, h2: &CircleHomeo) -> i64 {
    let v = h1.sigma().eval(&h2.sigma().eval(&Rational::from_integer(0.into())));
    if v >= Rational::one() {
        1
    } else {
        0
    }
}

/// The same cocycle through the two ordered-chain descriptions; `None` when
/// neither chain of inequalities holds.
pub fn obstruction_by_chains(h1: &CircleHomeo, h2: &CircleHomeo) -> Option<i64> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::one();
    let two = &one + &one;
    let v = h1.sigma().eval(&h2.sigma().eval(&zero));
    let a0 = h1.sigma().eval(&zero);
    let a1 = h1.sigma().eval(&one);
    if one <= v && v < a1 && a1 < two {
        Some(1)
    } else if zero <= a0 && a0 <= v && v < one {
        Some(0)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;
    use crate::gen;
    use crate::rotation::t_floor;
    use proptest::prelude::*;

    fn cp(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_triple(&cp(0, 1), &cp(1, 3), &cp(2, 3)), OrbitClass3::Plus);
        assert_eq!(classify_triple(&cp(0, 1), &cp(1, 2), &cp(0, 1)), OrbitClass3::O2);
        assert_eq!(classify_triple(&cp(0, 1), &cp(0, 1), &cp(0, 1)), OrbitClass3::O0);
        for c in OrbitClass3::ALL {
            let [x, y, z] = c.representative();
            assert_eq!(classify_triple(&x, &y, &z), c);
        }
    }

    #[test]
    fn euler_values() {
        let v: Vec<i64> = OrbitClass3::ALL
            .iter()
            .map(|c| {
                let [x, y, z] = c.representative();
                euler_cocycle(&x, &y, &z)
            })
            .collect();
        assert_eq!(v, vec![0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn analysis_examples() {
        assert_eq!(analyze_cochain2(&EULER), CochainAnalysis { is_cocycle: true, class_index: Some(-1) });
        assert_eq!(analyze_cochain2(&ORIENTATION).class_index, Some(2));
        assert_eq!(coboundary_from_b(0, 0), HomCochain2::from_evaluator(|_, _, _| 0));
        assert_eq!(
            coboundary_from_b(0, 1),
            HomCochain2 { f0: 0, f1: 0, f2: 2, f3: 0, fplus: 1, fminus: 1 }
        );
        let sum = ORIENTATION.combine(1, &EULER, 2).combine(1, &coboundary_from_b(0, 1), -1);
        assert!(sum.is_zero());
    }

    #[test]
    fn coboundary_table_matches_differential() {
        for (a, b) in [(0, 1), (2, -3), (5, 5)] {
            let direct = HomCochain2::from_evaluator(|x, y, z| {
                delta_hom(b_cochain(a, b), &[x.clone(), y.clone(), z.clone()])
            });
            assert_eq!(direct, coboundary_from_b(a, b));
        }
    }

    #[test]
    fn obstruction_examples() {
        let r = |a, b| CircleHomeo::rotation(rat(a, b));
        assert_eq!(obstruction_cocycle(&r(1, 2), &r(3, 4)), 1);
        assert_eq!(obstruction_cocycle(&r(1, 4), &r(1, 2)), 0);
        let mut rng = gen::rng(3);
        let h = gen::random_homeo(&mut rng, 4);
        assert_eq!(obstruction_cocycle(&CircleHomeo::identity(), &h), 0);
    }

    #[test]
    fn delta_of_constant() {
        let pts = [cp(0, 1), cp(1, 5), cp(1, 2)];
        assert_eq!(delta_hom(|_: &[CirclePoint]| 7, &pts), 7);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn cocycles_are_closed(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let q: Vec<CirclePoint> = (0..4).map(|_| gen::random_point(&mut rng, 6)).collect();
            prop_assert_eq!(delta_hom(|t: &[CirclePoint]| euler_cocycle(&t[0], &t[1], &t[2]), &q), 0);
            prop_assert_eq!(delta_hom(|t: &[CirclePoint]| orientation_cocycle(&t[0], &t[1], &t[2]), &q), 0);
        }

        #[test]
        fn delta_squared_vanishes(seed in any::<u64>(), a in -3i64..4, b in -3i64..4) {
            let mut rng = gen::rng(seed);
            let q: Vec<CirclePoint> = (0..4).map(|_| gen::random_point(&mut rng, 5)).collect();
            let db = |t: &[CirclePoint]| delta_hom(b_cochain(a, b), t);
            prop_assert_eq!(delta_hom(db, &q), 0);
        }

        #[test]
        fn chain_descriptions_agree(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let h1 = gen::random_homeo(&mut rng, 4);
            let h2 = gen::random_homeo(&mut rng, 4);
            prop_assert_eq!(obstruction_by_chains(&h1, &h2), Some(obstruction_cocycle(&h1, &h2)));
        }

        #[test]
        fn orientation_is_minus_two_euler_plus_db(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let t: Vec<CirclePoint> = (0..3).map(|_| gen::random_point(&mut rng, 4)).collect();
            let lhs = orientation_cocycle(&t[0], &t[1], &t[2]);
            let rhs = -2 * euler_cocycle(&t[0], &t[1], &t[2]) + delta_hom(b_cochain(0, 1), &t);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn floor_defect_is_obstruction(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let a = gen::random_strict_lift(&mut rng, 4).add(&crate::circle::int(gen::small_int(&mut rng, 2)));
            let b = gen::random_strict_lift(&mut rng, 4).add(&crate::circle::int(gen::small_int(&mut rng, 2)));
            let tf = |f: &[crate::pl::PlLift]| t_floor(&f[0]);
            let d = d_inhom(tf, &[a.clone(), b.clone()]);
            let c = obstruction_cocycle(&CircleHomeo::from_lift(&a).unwrap(), &CircleHomeo::from_lift(&b).unwrap());
            prop_assert_eq!(d, -c);
            prop_assert_eq!(d_via_homogeneous(&tf, &[a, b]), -c);
        }

        #[test]
        fn iota_round_trip(seed in any::<u64>()) {
            let mut rng = gen::rng(seed);
            let hs: Vec<CircleHomeo> = (0..2).map(|_| gen::random_homeo(&mut rng, 3)).collect();
            let f = |g: &[CircleHomeo]| obstruction_cocycle(&g[0], &g[1]);
            let round = iota_inv(|gs: &[CircleHomeo]| iota(f, gs), &hs);
            prop_assert_eq!(round, f(&hs));
        }
    }
}
