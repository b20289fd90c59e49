//! Exact planar geometry on rational points.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(qi(x), qi(y))
    }

    pub fn rats(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(q(xn, xd), q(yn, yd))
    }

    pub fn zero() -> Self {
        Point::new(Q::zero(), Q::zero())
    }

    pub fn cross(&self, other: &Point) -> Q {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Q {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &Q) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Representative in [0,1)².
    pub fn reduce_mod1(&self) -> Point {
        Point::new(&self.x - self.x.floor(), &self.y - self.y.floor())
    }

    /// The integer vector this point equals, if both coordinates are integral.
    pub fn as_int_vec(&self) -> Option<[i64; 2]> {
        if self.x.is_integer() && self.y.is_integer() {
            Some([self.x.to_integer().to_i64()?, self.y.to_integer().to_i64()?])
        } else {
            None
        }
    }

    pub fn from_int_vec(v: [i64; 2]) -> Point {
        Point::ints(v[0], v[1])
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl<'a> Mul<&'a Q> for &'a Point {
    type Output = Point;
    fn mul(self, k: &Q) -> Point {
        self.scale(k)
    }
}

pub fn sign(x: &Q) -> i64 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// How two segments meet, for one fixed translate of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    /// Single point at parameters (s, t) ∈ [0,1]² along the two segments.
    Point { s: Q, t: Q },
    /// Collinear with an overlap of positive length.
    Overlap,
}

/// Intersection of `a0→a1` with `b0→b1`.
pub fn segment_meet(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> Option<Meet> {
    let d = a1 - a0;
    let e = b1 - b0;
    let w = b0 - a0;
    let den = d.cross(&e);
    if !den.is_zero() {
        let s = w.cross(&e) / &den;
        let t = w.cross(&d) / &den;
        let unit = |x: &Q| !x.is_negative() && x <= &qi(1);
        return (unit(&s) && unit(&t)).then_some(Meet::Point { s, t });
    }
    if !w.cross(&d).is_zero() {
        return None;
    }
    // collinear: project b's endpoints onto a's parameter
    let dd = d.norm2();
    let t0 = w.dot(&d) / &dd;
    let t1 = (b1 - a0).dot(&d) / &dd;
    let (lo, hi) = if t0 <= t1 { (t0.clone(), t1.clone()) } else { (t1.clone(), t0.clone()) };
    let lo_c = if lo.is_negative() { Q::zero() } else { lo };
    let hi_c = if hi > qi(1) { qi(1) } else { hi };
    if lo_c > hi_c {
        None
    } else if lo_c < hi_c {
        Some(Meet::Overlap)
    } else {
        // single touching point; t along b
        let s = lo_c;
        let t = if t0 == t1 { Q::zero() } else { (&s - &t0) / (&t1 - &t0) };
        Some(Meet::Point { s, t })
    }
}

/// Whether `p` lies on the closed segment `a0→a1`.
pub fn point_on_segment(p: &Point, a0: &Point, a1: &Point) -> bool {
    let d = a1 - a0;
    let w = p - a0;
    if !d.cross(&w).is_zero() {
        return false;
    }
    let s = w.dot(&d);
    !s.is_negative() && s <= d.norm2()
}

/// Squared distance from `p` to the closed segment `a0→a1`.
pub fn dist2_point_segment(p: &Point, a0: &Point, a1: &Point) -> Q {
    let d = a1 - a0;
    let w = p - a0;
    let dd = d.norm2();
    if dd.is_zero() {
        return w.norm2();
    }
    let mut s = w.dot(&d) / &dd;
    if s.is_negative() {
        s = Q::zero();
    } else if s > qi(1) {
        s = qi(1);
    }
    (&w - &d.scale(&s)).norm2()
}

fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("coordinate fits in i64")
}

fn ceil_i64(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("coordinate fits in i64")
}

/// Integer translates `n` for which `b + n` can meet `a` (bounding boxes overlap).
pub fn candidate_translates(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> Vec<[i64; 2]> {
    let lo = |u: &Q, v: &Q| if u < v { u.clone() } else { v.clone() };
    let hi = |u: &Q, v: &Q| if u > v { u.clone() } else { v.clone() };
    let xr = (
        ceil_i64(&(lo(&a0.x, &a1.x) - hi(&b0.x, &b1.x))),
        floor_i64(&(hi(&a0.x, &a1.x) - lo(&b0.x, &b1.x))),
    );
    let yr = (
        ceil_i64(&(lo(&a0.y, &a1.y) - hi(&b0.y, &b1.y))),
        floor_i64(&(hi(&a0.y, &a1.y) - lo(&b0.y, &b1.y))),
    );
    let mut out = Vec::new();
    for nx in xr.0..=xr.1 {
        for ny in yr.0..=yr.1 {
            out.push([nx, ny]);
        }
    }
    out
}

/// Translates `p + n`, n ∈ ℤ², inside the bounding box of `pts`.
pub fn lattice_translates_in_box(pts: &[Point], p: &Point) -> Vec<Point> {
    let xs = pts.iter().map(|q| &q.x);
    let ys = pts.iter().map(|q| &q.y);
    let (x0, x1) = (xs.clone().min().expect("non-empty"), xs.max().expect("non-empty"));
    let (y0, y1) = (ys.clone().min().expect("non-empty"), ys.max().expect("non-empty"));
    let mut out = Vec::new();
    for nx in ceil_i64(&(x0 - &p.x))..=floor_i64(&(x1 - &p.x)) {
        for ny in ceil_i64(&(y0 - &p.y))..=floor_i64(&(y1 - &p.y)) {
            out.push(p + &Point::ints(nx, ny));
        }
    }
    out
}

/// Winding number of the closed polygon `pts` (last point joined to first)
/// around `p`, which must not lie on it.
pub fn winding_number(pts: &[Point], p: &Point) -> i64 {
    let n = pts.len();
    let mut w = 0;
    for i in 0..n {
        let a = &pts[i];
        let b = &pts[(i + 1) % n];
        let side = || (b - a).cross(&(p - a));
        if a.y <= p.y {
            if b.y > p.y && side().is_positive() {
                w += 1;
            }
        } else if b.y <= p.y && side().is_negative() {
            w -= 1;
        }
    }
    w
}

/// gcd-based primitive normalization with the first nonzero entry positive.
pub fn normalize_slope(p: i64, q: i64) -> Option<((i64, i64), i64)> {
    let g = p.gcd(&q);
    if g == 0 {
        return None;
    }
    let (mut a, mut b) = (p / g, q / g);
    if a < 0 || (a == 0 && b < 0) {
        a = -a;
        b = -b;
    }
    Some(((a, b), g))
}

/// Integers (u, v) with q·u − p·v = 1 for primitive (p, q).
pub fn bezout_for_slope(p: i64, q: i64) -> (i64, i64) {
    let e = BigInt::from(q).extended_gcd(&BigInt::from(-p));
    let sgn = BigInt::from(if e.gcd.is_negative() { -1 } else { 1 });
    let u = (e.x * &sgn).to_i64().expect("small");
    let v = (e.y * &sgn).to_i64().expect("small");
    debug_assert_eq!(q * u - p * v, 1);
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_segments() {
        let m = segment_meet(&Point::ints(0, 0), &Point::ints(2, 2), &Point::ints(0, 2), &Point::ints(2, 0));
        assert_eq!(m, Some(Meet::Point { s: q(1, 2), t: q(1, 2) }));
    }

    #[test]
    fn collinear_cases() {
        let (a0, a1) = (Point::ints(0, 0), Point::ints(2, 0));
        assert_eq!(segment_meet(&a0, &a1, &Point::ints(1, 0), &Point::ints(3, 0)), Some(Meet::Overlap));
        assert_eq!(
            segment_meet(&a0, &a1, &Point::ints(2, 0), &Point::ints(3, 0)),
            Some(Meet::Point { s: qi(1), t: qi(0) })
        );
        assert_eq!(segment_meet(&a0, &a1, &Point::ints(3, 0), &Point::ints(4, 0)), None);
    }

    #[test]
    fn winding() {
        let sq = [Point::ints(0, 0), Point::ints(2, 0), Point::ints(2, 2), Point::ints(0, 2)];
        assert_eq!(winding_number(&sq, &Point::ints(1, 1)), 1);
        assert_eq!(winding_number(&sq, &Point::ints(3, 1)), 0);
        let rev: Vec<_> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&rev, &Point::ints(1, 1)), -1);
    }

    #[test]
    fn slopes() {
        assert_eq!(normalize_slope(-2, 4), Some(((1, -2), 2)));
        assert_eq!(normalize_slope(0, -3), Some(((0, 1), 3)));
        assert_eq!(normalize_slope(0, 0), None);
        for (p, qq) in [(1, 0), (0, 1), (2, 3), (-3, 5), (1, -1)] {
            let (u, v) = bezout_for_slope(p, qq);
            assert_eq!(qq * u - p * v, 1);
        }
    }

    #[test]
    fn translates_cover_wrapping_segments() {
        let n = candidate_translates(&Point::ints(0, 0), &Point::rats(1, 2, 0, 1), &Point::ints(3, 0), &Point::ints(3, 1));
        assert!(n.contains(&[-3, 0]));
    }
}
