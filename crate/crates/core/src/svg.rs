//! SVG graph of a lift over one period. Coordinates are rounded to whole
//! pixels so the output is byte-stable.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::circle::{floor_i64, ceil_i64, int, Rational};
use crate::pl::{Knot, PlLift};

const SIZE: i64 = 400;
const MARGIN: i64 = 20;

struct Frame {
    y0: i64,
    span: i64,
}

impl Frame {
    fn px(&self, x: &Rational) -> i64 {
        MARGIN + round(&(x * int(SIZE)))
    }

    fn py(&self, y: &Rational) -> i64 {
        let t = (y - int(self.y0)) * int(SIZE) / int(self.span);
        MARGIN + SIZE - round(&t)
    }
}

fn round(x: &Rational) -> i64 {
    floor_i64(&(x + Rational::new(1.into(), 2.into())))
}

/// Knots over `[0,1]`, with the copy of the first one at `x = 1`.
fn period_knots(f: &PlLift) -> Vec<Knot> {
    let ks = f.pl().knots();
    let mut out: Vec<Knot> = ks.to_vec();
    let first = &ks[0];
    let mut last = Knot {
        at: &first.at + Rational::one(),
        left: &first.left + Rational::one(),
        point: &first.point + Rational::one(),
        right: &first.right + Rational::one(),
    };
    if !first.at.is_zero() {
        // the value at 0 lies on the segment from the last knot
        let v = f.eval(&Rational::zero());
        out.insert(0, Knot::continuous(Rational::zero(), v.clone()));
        last = Knot::continuous(Rational::one(), v + Rational::one());
    }
    out.push(last);
    out
}

pub fn render(f: &PlLift, title: &str) -> String {
    let knots = period_knots(f);
    let lo = knots.iter().map(|k| k.left.clone().min(k.point.clone()).min(k.right.clone())).min().expect("knots");
    let hi = knots.iter().map(|k| k.left.clone().max(k.point.clone()).max(k.right.clone())).max().expect("knots");
    let y0 = floor_i64(&lo);
    let span = (ceil_i64(&hi) - y0).max(1);
    let fr = Frame { y0, span };
    let full = SIZE + 2 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="gray"/>"#
    );
    for k in 1..span {
        let y = fr.py(&int(y0 + k));
        let _ = writeln!(
            s,
            r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="lightgray"/>"#,
            MARGIN + SIZE
        );
    }
    for w in knots.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
            fr.px(&a.at),
            fr.py(&a.right),
            fr.px(&b.at),
            fr.py(&b.left)
        );
    }
    for k in &knots {
        if k.left == k.point && k.point == k.right {
            continue;
        }
        let x = fr.px(&k.at);
        for side in [&k.left, &k.right] {
            if side != &k.point {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{x}" cy="{}" r="4" fill="white" stroke="black"/>"#,
                    fr.py(side)
                );
            }
        }
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{}" r="4" fill="black"/>"#, fr.py(&k.point));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;
    use crate::monotone::floor_shift;

    #[test]
    fn identity_is_a_diagonal() {
        let s = render(&PlLift::identity(), "id");
        assert!(s.contains(r#"<line x1="20" y1="420" x2="420" y2="20" stroke="black""#), "{s}");
        assert!(!s.contains("<circle"));
    }

    #[test]
    fn floor_is_a_unit_step() {
        let s = render(&floor_shift(&Rational::zero()), "floor");
        // frame spans heights -1..1: flat segment at 0, closed dots on top of each jump
        assert!(s.contains(r#"<line x1="20" y1="220" x2="420" y2="220" stroke="black""#), "{s}");
        assert_eq!(s.matches(r#"fill="white""#).count(), 2);
        assert_eq!(s.matches(r#"r="4" fill="black""#).count(), 2);
    }

    #[test]
    fn deterministic() {
        let f = floor_shift(&rat(2, 7));
        assert_eq!(render(&f, "a"), render(&f, "a"));
        assert!(render(&f, "a<b").contains("a&lt;b"));
    }
}
