//! Outward-rounded real intervals and axis-aligned complex boxes.
//!
//! Every arithmetic result is computed in round-to-nearest and then widened
//! by one ulp on each side, which always encloses the exact image. Sign flips
//! and exact integer constants are not widened.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

/// Exact value of `[+-]digits[.digits][(e|E)[+-]digits]`.
fn decimal_to_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let e = exp.checked_sub(i32::try_from(frac.len()).ok()?)?;
    if e.unsigned_abs() > 1100 {
        return None;
    }
    let ten = BigInt::from(10);
    let scale = ten.pow(e.unsigned_abs());
    let mut q = if e >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    if neg {
        q = -q;
    }
    Some(q)
}

/// A closed real interval `[lo, hi]`, or the empty set.
///
/// The empty set is the pair `(+inf, -inf)`, which no valid interval can
/// take since valid intervals have `lo <= hi`.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const EMPTY: Interval = Interval {
        lo: f64::INFINITY,
        hi: f64::NEG_INFINITY,
    };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Builds `[lo, hi]`. Returns `None` if `lo > hi` or either is NaN.
    pub fn new(lo: f64, hi: f64) -> Option<Interval> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    /// Degenerate interval `[x, x]`. Panics on NaN.
    pub fn point(x: f64) -> Interval {
        assert!(!x.is_nan(), "NaN interval endpoint");
        Interval { lo: x, hi: x }
    }

    /// Interval with the given endpoints in either order.
    pub fn hull_of(a: f64, b: f64) -> Interval {
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    /// Smallest interval guaranteed to contain the real number `x` whose
    /// nearest binary64 is `x`: one ulp each way.
    pub fn around(x: f64) -> Interval {
        Interval {
            lo: down(x),
            hi: up(x),
        }
    }

    /// Tightest enclosure of a decimal literal such as `-1.73875` or `2e-3`:
    /// the literal's value itself when it is a binary64, otherwise the two
    /// neighbouring binary64 values around it.
    pub fn from_decimal(s: &str) -> Option<Interval> {
        let exact = decimal_to_rational(s)?;
        let x: f64 = s.trim().parse().ok()?;
        if !x.is_finite() {
            return None;
        }
        let xr = BigRational::from_float(x)?;
        Some(match xr.cmp(&exact) {
            Ordering::Equal => Interval::point(x),
            Ordering::Greater => Interval { lo: down(x), hi: x },
            Ordering::Less => Interval { lo: x, hi: up(x) },
        })
    }

    /// An enclosure of pi.
    pub fn pi() -> Interval {
        Interval::around(std::f64::consts::PI)
    }

    /// An enclosure of sqrt(3).
    pub fn sqrt3() -> Interval {
        Interval::point(3.0).sqrt()
    }

    #[inline]
    fn raw(lo: f64, hi: f64) -> Interval {
        if lo.is_nan() || hi.is_nan() {
            Interval::ENTIRE
        } else {
            Interval { lo, hi }
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_finite(&self) -> bool {
        !self.is_empty() && self.lo.is_finite() && self.hi.is_finite()
    }

    /// Upper bound of the width, rounded up.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            let (a, b) = (self.hi, -self.lo);
            let d = a + b;
            // TwoSum error term: zero iff the subtraction was exact.
            let bb = d - a;
            let err = (a - (d - bb)) + (b - bb);
            if d.is_finite() && err == 0.0 {
                d
            } else {
                up(d)
            }
        }
    }

    /// A representable point inside the interval.
    pub fn mid(&self) -> f64 {
        debug_assert!(!self.is_empty());
        let m = 0.5 * self.lo + 0.5 * self.hi;
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else if self.lo.is_finite() {
            self.lo
        } else if self.hi.is_finite() {
            self.hi
        } else {
            0.0
        }
    }

    /// Magnitude: `max |x|`.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Mignitude: `min |x|`.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    /// `self` lies in the open interior of `other`.
    pub fn interior_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo < self.lo && self.hi < other.hi)
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        !self.is_empty() && !other.is_empty() && self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo > hi || self.is_empty() || other.is_empty() {
            Interval::EMPTY
        } else {
            Interval { lo, hi }
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            *other
        } else if other.is_empty() {
            *self
        } else {
            Interval {
                lo: self.lo.min(other.lo),
                hi: self.hi.max(other.hi),
            }
        }
    }

    /// Splits at the midpoint. Both halves share the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        )
    }

    /// Widens by `r` on both sides (rounded outward).
    pub fn inflate(&self, r: f64) -> Interval {
        if self.is_empty() {
            return *self;
        }
        Interval::raw(down(self.lo - r), up(self.hi + r))
    }

    /// Square, with the tight form `[0, max]` when the interval straddles 0.
    pub fn sqr(&self) -> Interval {
        if self.is_empty() {
            return *self;
        }
        if self.lo >= 0.0 {
            Interval::raw(down(self.lo * self.lo).max(0.0), up(self.hi * self.hi))
        } else if self.hi <= 0.0 {
            Interval::raw(down(self.hi * self.hi).max(0.0), up(self.lo * self.lo))
        } else {
            let m = self.mag();
            Interval::raw(0.0, up(m * m))
        }
    }

    /// Square root of the non-negative part. Empty if entirely negative.
    pub fn sqrt(&self) -> Interval {
        if self.is_empty() || self.hi < 0.0 {
            return Interval::EMPTY;
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            down(self.lo.sqrt()).max(0.0)
        };
        Interval::raw(lo, up(self.hi.sqrt()))
    }

    /// `1/x`, refused when the interval contains 0.
    pub fn recip(&self) -> Option<Interval> {
        if self.is_empty() || self.contains(0.0) {
            return None;
        }
        Some(Interval::raw(down(1.0 / self.hi), up(1.0 / self.lo)))
    }

    /// Multiplication by an exact power of two is exact barring overflow.
    pub fn scale2(&self, k: i32) -> Interval {
        if self.is_empty() {
            return *self;
        }
        let f = 2f64.powi(k);
        let (a, b) = (self.lo * f, self.hi * f);
        let exact =
            |x: f64, src: f64| x.is_finite() && (src == 0.0 || x.abs() >= f64::MIN_POSITIVE);
        if exact(a, self.lo) && exact(b, self.hi) {
            Interval::hull_of(a, b)
        } else {
            Interval::raw(down(a.min(b)), up(a.max(b)))
        }
    }

    /// Multiplication by a point scalar.
    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval::raw(down(self.lo + rhs.lo), up(self.hi + rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval::raw(down(self.lo - rhs.hi), up(self.hi - rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        if self.is_empty() {
            return self;
        }
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let p = [a * c, a * d, b * c, b * d];
        if p.iter().any(|x| x.is_nan()) {
            return Interval::ENTIRE;
        }
        let lo = p[0].min(p[1]).min(p[2]).min(p[3]);
        let hi = p[0].max(p[1]).max(p[2]).max(p[3]);
        // A zero product is exact when every zero comes from a zero factor.
        let zeros_exact = || {
            let f = [(a, c), (a, d), (b, c), (b, d)];
            p.iter()
                .zip(f)
                .all(|(&x, (u, v))| x != 0.0 || u == 0.0 || v == 0.0)
        };
        let lo = if lo == 0.0 && zeros_exact() {
            0.0
        } else {
            down(lo)
        };
        let hi = if hi == 0.0 && zeros_exact() {
            0.0
        } else {
            up(hi)
        };
        Interval::raw(lo, hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[empty]")
        } else {
            write!(f, "[{:e}, {:e}]", self.lo, self.hi)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An axis-aligned rectangle `re × im` in the complex plane.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub const EMPTY: ComplexBox = ComplexBox {
        re: Interval::EMPTY,
        im: Interval::EMPTY,
    };
    pub const ZERO: ComplexBox = ComplexBox {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };

    /// Builds a box; empty if either coordinate is empty.
    pub fn new(re: Interval, im: Interval) -> ComplexBox {
        if re.is_empty() || im.is_empty() {
            ComplexBox::EMPTY
        } else {
            ComplexBox { re, im }
        }
    }

    /// Box from endpoint quadruple. `None` when an axis is reversed.
    pub fn from_bounds(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Option<ComplexBox> {
        Some(ComplexBox {
            re: Interval::new(re_lo, re_hi)?,
            im: Interval::new(im_lo, im_hi)?,
        })
    }

    pub fn point(re: f64, im: f64) -> ComplexBox {
        ComplexBox {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn real(x: Interval) -> ComplexBox {
        ComplexBox::new(x, Interval::ZERO)
    }

    /// Square `[cx-r, cx+r] × [cy-r, cy+r]` rounded outward.
    pub fn centered(cx: f64, cy: f64, r: f64) -> ComplexBox {
        ComplexBox::point(cx, cy).inflate(r)
    }

    /// The cube root of unity `(-1 + sqrt(3) i) / 2`.
    pub fn omega() -> ComplexBox {
        ComplexBox {
            re: Interval::point(-0.5),
            im: Interval::sqrt3().scale2(-1),
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.re.is_empty() || self.im.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn conj(&self) -> ComplexBox {
        ComplexBox {
            re: self.re,
            im: -self.im,
        }
    }

    #[inline]
    pub fn sqr(&self) -> ComplexBox {
        if self.is_empty() {
            return ComplexBox::EMPTY;
        }
        ComplexBox {
            re: self.re.sqr() - self.im.sqr(),
            im: (self.re * self.im).scale2(1),
        }
    }

    /// `|z|²` with the tight real squares.
    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    /// Enclosure of `|z|`; the lower bound is exactly 0 when the box holds 0.
    pub fn abs(&self) -> Interval {
        if self.is_empty() {
            return Interval::EMPTY;
        }
        let r = self.norm_sqr().sqrt();
        if self.contains_point(0.0, 0.0) {
            Interval::raw(0.0, r.hi())
        } else {
            r
        }
    }

    /// Multiplication by a real interval.
    pub fn scale_real(&self, k: Interval) -> ComplexBox {
        ComplexBox::new(self.re * k, self.im * k)
    }

    pub fn scale2(&self, k: i32) -> ComplexBox {
        ComplexBox::new(self.re.scale2(k), self.im.scale2(k))
    }

    /// `1/z`, refused when the box may contain 0.
    pub fn recip(&self) -> Option<ComplexBox> {
        if self.is_empty() || self.contains_point(0.0, 0.0) {
            return None;
        }
        let inv = self.norm_sqr().recip()?;
        let c = self.conj();
        Some(ComplexBox::new(c.re * inv, c.im * inv))
    }

    pub fn contains_point(&self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn contains(&self, other: &ComplexBox) -> bool {
        other.re.subset_of(&self.re) && other.im.subset_of(&self.im)
    }

    /// `other` lies in the open interior of `self`.
    pub fn contains_interior(&self, other: &ComplexBox) -> bool {
        other.re.interior_of(&self.re) && other.im.interior_of(&self.im)
    }

    pub fn intersects(&self, other: &ComplexBox) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn intersect(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re.intersect(&other.re), self.im.intersect(&other.im))
    }

    pub fn hull(&self, other: &ComplexBox) -> ComplexBox {
        if self.is_empty() {
            *other
        } else if other.is_empty() {
            *self
        } else {
            ComplexBox {
                re: self.re.hull(&other.re),
                im: self.im.hull(&other.im),
            }
        }
    }

    /// Larger of the two side widths.
    pub fn width(&self) -> f64 {
        self.re.width().max(self.im.width())
    }

    pub fn midpoint(&self) -> (f64, f64) {
        (self.re.mid(), self.im.mid())
    }

    pub fn mid_box(&self) -> ComplexBox {
        let (x, y) = self.midpoint();
        ComplexBox::point(x, y)
    }

    pub fn inflate(&self, r: f64) -> ComplexBox {
        ComplexBox::new(self.re.inflate(r), self.im.inflate(r))
    }

    /// Splits the wider coordinate at its midpoint.
    pub fn bisect(&self) -> (ComplexBox, ComplexBox) {
        if self.re.width() >= self.im.width() {
            let (a, b) = self.re.bisect();
            (
                ComplexBox { re: a, im: self.im },
                ComplexBox { re: b, im: self.im },
            )
        } else {
            let (a, b) = self.im.bisect();
            (
                ComplexBox { re: self.re, im: a },
                ComplexBox { re: self.re, im: b },
            )
        }
    }

    /// Four quadrants in SW, SE, NW, NE order, split at both midpoints.
    pub fn quadrants(&self) -> [ComplexBox; 4] {
        let (w, e) = self.re.bisect();
        let (s, n) = self.im.bisect();
        [
            ComplexBox { re: w, im: s },
            ComplexBox { re: e, im: s },
            ComplexBox { re: w, im: n },
            ComplexBox { re: e, im: n },
        ]
    }
}

impl Add for ComplexBox {
    type Output = ComplexBox;
    #[inline]
    fn add(self, rhs: ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexBox {
    type Output = ComplexBox;
    #[inline]
    fn sub(self, rhs: ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for ComplexBox {
    type Output = ComplexBox;
    fn neg(self) -> ComplexBox {
        ComplexBox::new(-self.re, -self.im)
    }
}

impl Mul for ComplexBox {
    type Output = ComplexBox;
    #[inline]
    fn mul(self, rhs: ComplexBox) -> ComplexBox {
        ComplexBox::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
