//! Seeded random instances used by tests, sweeps and the acceptance harness.

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::{rat, CirclePoint, Rational};
use crate::homeo::CircleHomeo;
use crate::pl::{Knot, Pl, PlLift};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut Rng8, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn random_rational(rng: &mut Rng8, range: i64) -> Rational {
    let d = rng.gen_range(1..=24i64);
    rat(rng.gen_range(-range * d..=range * d), d)
}

pub fn random_point(rng: &mut Rng8, max_den: i64) -> CirclePoint {
    let d = rng.gen_range(1..=max_den.max(1));
    CirclePoint::from_ratio(rng.gen_range(0..d), d)
}

/// `k` distinct grid points `j/d` in `[0,1)`, sorted.
pub fn distinct_grid(rng: &mut Rng8, k: usize, d: i64) -> Vec<Rational> {
    let mut all: Vec<i64> = (0..d).collect();
    all.shuffle(rng);
    let mut picked: Vec<i64> = all.into_iter().take(k).collect();
    picked.sort_unstable();
    picked.into_iter().map(|j| rat(j, d)).collect()
}

/// Strict lift with at most `pieces` breakpoints on small-denominator grids.
pub fn random_strict_lift(rng: &mut Rng8, pieces: usize) -> PlLift {
    let k = rng.gen_range(1..=pieces.max(1));
    let dx = rng.gen_range(k as i64 + 1..=24);
    let dy = rng.gen_range(k as i64 + 1..=24);
    let xs = distinct_grid(rng, k, dx);
    let ys = distinct_grid(rng, k, dy);
    let s = rng.gen_range(0..k);
    let knots = (0..k)
        .map(|i| {
            let j = (i + s) % k;
            let mut v = ys[j].clone();
            if i + s >= k {
                v += Rational::one();
            }
            Knot::continuous(xs[i].clone(), v)
        })
        .collect();
    PlLift::strict(Pl::from_knots(knots, 1).expect("distinct grid")).expect("increasing data")
}

pub fn random_homeo(rng: &mut Rng8, pieces: usize) -> CircleHomeo {
    CircleHomeo::from_lift(&random_strict_lift(rng, pieces)).expect("strict")
}

/// Non-decreasing lift with jumps and flat pieces.
pub fn random_good_lift(rng: &mut Rng8, pieces: usize) -> PlLift {
    let k = rng.gen_range(1..=pieces.max(1));
    let dx = rng.gen_range(k as i64 + 1..=24);
    let dy = rng.gen_range(2..=12i64);
    let xs = distinct_grid(rng, k, dx);
    let mut vals: Vec<i64> = (0..3 * k).map(|_| rng.gen_range(0..=dy)).collect();
    vals.sort_unstable();
    let off = rat(rng.gen_range(-dy..=dy), dy);
    let knots = (0..k)
        .map(|i| Knot {
            at: xs[i].clone(),
            left: rat(vals[3 * i], dy) + &off,
            point: rat(vals[3 * i + 1], dy) + &off,
            right: rat(vals[3 * i + 2], dy) + &off,
        })
        .collect();
    PlLift::monotone(Pl::from_knots(knots, 1).expect("distinct grid")).expect("monotone data")
}

/// Homeomorphism fixing each of the given circle points; with `extra` at
/// least the number of points, it moves every gap between them.
pub fn homeo_fixing(rng: &mut Rng8, fixed: &[Rational], extra: usize) -> CircleHomeo {
    let mut pairs: Vec<(CirclePoint, CirclePoint)> =
        fixed.iter().map(|x| (CirclePoint::new(x), CirclePoint::new(x))).collect();
    pairs.sort();
    pairs.dedup();
    let n = pairs.len();
    if n == 0 {
        return random_homeo(rng, extra.max(1));
    }
    // One interior point per gap, sent to another interior point of the same gap.
    for i in 0..n {
        if pairs.len() >= n + extra {
            break;
        }
        let a = pairs[i].0.rep().clone();
        let b = if i + 1 < n {
            pairs[i + 1].0.rep().clone()
        } else {
            pairs[0].0.rep() + Rational::one()
        };
        let d = rng.gen_range(3..=9i64);
        let p = rng.gen_range(1..d);
        let mut q = rng.gen_range(1..d - 1);
        if q >= p {
            q += 1;
        }
        let len = &b - &a;
        let x = &a + &len * rat(p, d);
        let y = &a + &len * rat(q, d);
        pairs.push((CirclePoint::new(&x), CirclePoint::new(&y)));
    }
    CircleHomeo::from_pairs(&pairs).expect("gap-preserving data")
}
