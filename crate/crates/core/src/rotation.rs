//! Translation and rotation numbers of PL lifts.
//!
//! Exact rational values are found by solving `h^q(x) = x + p` piecewise for
//! small `q`. When no short period exists the answer is a certified interval
//! from `|h^n(0) - nT| < 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::circle::{floor_i64, frac, int, rat, Rational};
use crate::pl::PlLift;

pub const DEFAULT_MAX_PERIOD: u32 = 12;
pub const DEFAULT_MAX_ITERS: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslationNumber {
    Exact { value: Rational, witness: Rational },
    Interval { lo: Rational, hi: Rational, iterations: u32 },
}

impl TranslationNumber {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            TranslationNumber::Exact { value, .. } => Some(value),
            TranslationNumber::Interval { .. } => None,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            TranslationNumber::Exact { value, .. } => value == x,
            TranslationNumber::Interval { lo, hi, .. } => lo < x && x < hi,
        }
    }

    /// Reduction modulo the integers; interval ends move together.
    pub fn mod_one(&self) -> TranslationNumber {
        match self {
            TranslationNumber::Exact { value, witness } => TranslationNumber::Exact {
                value: frac(value),
                witness: witness.clone(),
            },
            TranslationNumber::Interval { lo, hi, iterations } => {
                let n = lo.floor();
                TranslationNumber::Interval {
                    lo: lo - &n,
                    hi: hi - &n,
                    iterations: *iterations,
                }
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            TranslationNumber::Exact { value, witness } => {
                json!({"exact": value.to_string(), "witness": witness.to_string()})
            }
            TranslationNumber::Interval { lo, hi, iterations } => {
                json!({"interval": [lo.to_string(), hi.to_string()], "n": iterations})
            }
        }
    }
}

pub fn t_floor(h: &PlLift) -> i64 {
    floor_i64(&h.eval(&Rational::zero()))
}

/// Smallest `x` in `[0,1)` with `h(x) = x + p`, if any.
pub fn solve_shifted_fixed_point(h: &PlLift, p: i64) -> Option<Rational> {
    let d = h.pl().sub(PlLift::identity().pl()).add_const(&int(-p));
    d.zeros().into_iter().map(|(lo, _)| lo).find(|x| x < &Rational::one())
}

pub fn translation_number(h: &PlLift, max_period: u32, max_iters: u32) -> TranslationNumber {
    let mut hq = PlLift::identity();
    for q in 1..=max_period.max(1) {
        hq = h.compose(&hq);
        let v = hq.eval(&Rational::zero());
        let lo = floor_i64(&v);
        let hi = if v.is_integer() { lo } else { lo + 1 };
        for p in [lo, hi] {
            if let Some(x) = solve_shifted_fixed_point(&hq, p) {
                return TranslationNumber::Exact {
                    value: rat(p, q as i64),
                    witness: x,
                };
            }
            if hi == lo {
                break;
            }
        }
    }
    certified_interval(h, max_iters.max(1))
}

const GRID_BITS: usize = 128;

fn round_to_grid(x: &Rational, up: bool) -> Rational {
    let scale = Rational::from_integer(BigInt::one() << GRID_BITS);
    let y = x * &scale;
    let n = if up { y.ceil() } else { y.floor() };
    n / scale
}

/// Encloses `h^k(0)` in `[a, b]` with outward rounding to a dyadic grid and
/// stops at the first `k >= n` where `(b - a + 2)/k <= 2/n`. Since
/// `|h^k(x) - x - kT| < 1` for every `x`, the result brackets `T` strictly.
fn certified_interval(h: &PlLift, n: u32) -> TranslationNumber {
    let target = rat(2, n as i64);
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut k: u32 = 0;
    loop {
        a = round_to_grid(&h.eval(&a), false);
        b = round_to_grid(&h.eval(&b), true);
        k += 1;
        if k >= n {
            let kk = int(k as i64);
            let lo = (&a - Rational::one()) / &kk;
            let hi = (&b + Rational::one()) / &kk;
            if &hi - &lo <= target || k >= n.saturating_mul(4) {
                return TranslationNumber::Interval { lo, hi, iterations: k };
            }
        }
    }
}

pub fn rotation_number(h: &PlLift, max_period: u32, max_iters: u32) -> TranslationNumber {
    translation_number(h, max_period, max_iters).mod_one()
}
