//! Exact angle dynamics under `θ ↦ -2θ` and the certified period-3 centers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::dynamics::eval_f;
use crate::interval::{ComplexBox, Interval};
use crate::krawczyk::{krawczyk, Jacobian, KrawczykOutcome};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CombinatoricsError {
    #[error("angle sets are not disjoint")]
    NotDisjoint,
    #[error("no certified sign change on the bracket")]
    NoSignChange,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("period must be at least 1")]
    ZeroPeriod,
}

/// A rational angle in `[0, 1)`, always reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle(BigRational);

impl Angle {
    /// `num/den` reduced mod 1.
    pub fn new(
        num: impl Into<BigInt>,
        den: impl Into<BigInt>,
    ) -> Result<Angle, CombinatoricsError> {
        let den = den.into();
        if den.is_zero() {
            return Err(CombinatoricsError::ZeroDenominator);
        }
        Ok(Angle::from_ratio(BigRational::new(num.into(), den)))
    }

    fn from_ratio(r: BigRational) -> Angle {
        let fl = r.floor();
        Angle(r - fl)
    }

    pub fn zero() -> Angle {
        Angle(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// The two preimages of `self` under [`angle_map`].
    pub fn preimages(&self) -> [Angle; 2] {
        // -2θ' = θ (mod 1)  ⇔  θ' = -θ/2 or -θ/2 + 1/2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let a = -self.0.clone() * half.clone();
        [Angle::from_ratio(a.clone()), Angle::from_ratio(a + half)]
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `θ ↦ -2θ mod 1`, the action of `f_c` on external angles.
pub fn angle_map(theta: &Angle) -> Angle {
    Angle::from_ratio(theta.0.clone() * BigRational::from_integer(BigInt::from(-2)))
}

/// All angles fixed by the `n`-th iterate of [`angle_map`]: the solutions of
/// `((-2)^n - 1) θ ∈ ℤ`, in increasing order.
pub fn periodic_angles(n: u32) -> Result<Vec<Angle>, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::ZeroPeriod);
    }
    let d = (BigInt::from(-2).pow(n) - BigInt::one()).abs();
    let mut out = Vec::new();
    let mut k = BigInt::zero();
    while k < d {
        out.push(Angle(BigRational::new(k.clone(), d.clone())));
        k += 1;
    }
    Ok(out)
}

/// Exact period of `θ` under [`angle_map`], if it is periodic within `limit`.
pub fn angle_period(theta: &Angle, limit: u32) -> Option<u32> {
    let mut t = angle_map(theta);
    for p in 1..=limit {
        if &t == theta {
            return Some(p);
        }
        t = angle_map(&t);
    }
    None
}

/// `true` iff `a` lies in a single component of the circle minus `b`.
pub fn unlinked(a: &[Angle], b: &[Angle]) -> Result<bool, CombinatoricsError> {
    if a.iter().any(|x| b.contains(x)) {
        return Err(CombinatoricsError::NotDisjoint);
    }
    if b.is_empty() || a.is_empty() {
        return Ok(true);
    }
    let mut bs: Vec<&Angle> = b.iter().collect();
    bs.sort();
    bs.dedup();
    // Component of x: index of the first cut above it, wrapping to 0.
    let comp = |x: &Angle| {
        let i = bs.partition_point(|y| *y < x);
        if i == bs.len() {
            0
        } else {
            i
        }
    };
    let first = comp(&a[0]);
    Ok(a.iter().all(|x| comp(x) == first))
}

// ---------------------------------------------------------------------------
// period-3 centers

/// Enclosures of `2 Re f_c^3(0)` and of `s³ - (s-1)(1+2t)` in terms of
/// `s = c + conj(c)` and `t = |c|²`; the imaginary part of `f_c^3(0)` is
/// `Im(c)` times the second quantity.
pub fn per3_residuals(s: Interval, t: Interval) -> (Interval, Interval) {
    let one = Interval::ONE;
    let two_t = t.scale2(1);
    let s2 = s.sqr();
    let s4 = s2.sqr();
    let re = s4 + (one - t.scale2(2)) * s2 + (one + two_t) * s + t.sqr().scale2(1) - two_t;
    let im = s2 * s - (s - one) * (one + two_t);
    (re, im)
}

/// Evaluates a cubic `a3 x³ + a2 x² + a1 x + a0` (Horner) on an interval.
pub fn eval_cubic(coeffs: [f64; 4], x: Interval) -> Interval {
    let [a3, a2, a1, a0] = coeffs.map(Interval::point);
    ((a3 * x + a2) * x + a1) * x + a0
}

fn sign_at(coeffs: [f64; 4], x: f64) -> Option<Ordering> {
    let v = eval_cubic(coeffs, Interval::point(x));
    if v.lo() > 0.0 {
        Some(Ordering::Greater)
    } else if v.hi() < 0.0 {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Certified bisection for a real root of a cubic inside `bracket`.
///
/// Requires certified opposite signs at the bracket ends; returns an
/// enclosure of width below `1e-12`.
pub fn real_root_enclosure(
    coeffs: [f64; 4],
    bracket: Interval,
) -> Result<Interval, CombinatoricsError> {
    let (mut a, mut b) = (bracket.lo(), bracket.hi());
    let sa = sign_at(coeffs, a).ok_or(CombinatoricsError::NoSignChange)?;
    let sb = sign_at(coeffs, b).ok_or(CombinatoricsError::NoSignChange)?;
    if sa == sb {
        return Err(CombinatoricsError::NoSignChange);
    }
    while b - a > 1e-13 {
        let m = 0.5 * a + 0.5 * b;
        if m <= a || m >= b {
            break;
        }
        match sign_at(coeffs, m) {
            Some(s) if s == sa => a = m,
            Some(_) => b = m,
            None => {
                // The value at m is within rounding of 0: bracket m tightly.
                let mut d = (m.abs() * f64::EPSILON).max(f64::MIN_POSITIVE);
                loop {
                    let (l, r) = ((m - d).max(a), (m + d).min(b));
                    if sign_at(coeffs, l) == Some(sa) && sign_at(coeffs, r) == Some(sa.reverse()) {
                        a = l;
                        b = r;
                        break;
                    }
                    if l == a && r == b {
                        break;
                    }
                    d *= 2.0;
                }
                break;
            }
        }
    }
    Ok(Interval::new(a, b).expect("a <= b"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterLabel {
    Zero,
    Airplane,
    AirplaneOmega,
    AirplaneOmega2,
}

/// A certified parameter at which 0 is periodic of period dividing 3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterSolution {
    pub c: ComplexBox,
    pub label: CenterLabel,
}

impl CenterSolution {
    /// `f_c^3(0)` contains 0; for the nonzero labels `f_c(0)` and `f_c^2(0)`
    /// exclude 0 (exact period 3).
    pub fn check_period(&self) -> bool {
        let z1 = eval_f(self.c, ComplexBox::ZERO);
        let z2 = eval_f(self.c, z1);
        let z3 = eval_f(self.c, z2);
        let returns = z3.contains_point(0.0, 0.0);
        match self.label {
            CenterLabel::Zero => returns,
            _ => returns && !z1.contains_point(0.0, 0.0) && !z2.contains_point(0.0, 0.0),
        }
    }
}

/// `f_c^3(0) = c⁴ + 2c²conj(c) + conj(c)² + c` on a parameter box.
pub fn critical_value_3(c: ComplexBox) -> ComplexBox {
    eval_f(c, eval_f(c, eval_f(c, ComplexBox::ZERO)))
}

/// Real Jacobian of `c ↦ f_c^3(0)` from its Wirtinger derivatives
/// `∂/∂c = 4c³ + 4c·conj(c) + 1` and `∂/∂conj(c) = 2c² + 2conj(c)`.
fn critical_value_3_jacobian(c: ComplexBox) -> Jacobian {
    let cb = c.conj();
    let c2 = c.sqr();
    let one = ComplexBox::point(1.0, 0.0);
    let a = (c2 * c).scale2(2) + (c * cb).scale2(2) + one;
    let b = c2.scale2(1) + cb.scale2(1);
    let dx = a + b;
    let diff = a - b;
    // i (a - b)
    let dy = ComplexBox::new(-diff.im, diff.re);
    Jacobian([[dx.re, dy.re], [dx.im, dy.im]])
}

/// The real airplane parameter: root of `c³ + 2c² + c + 1` on `[-1.8, -1.7]`.
pub fn airplane_enclosure() -> Result<Interval, CombinatoricsError> {
    real_root_enclosure([1.0, 2.0, 1.0, 1.0], Interval::new(-1.8, -1.7).unwrap())
}

fn certify_complex_center(seed: ComplexBox) -> Option<ComplexBox> {
    match krawczyk(seed, critical_value_3, critical_value_3_jacobian, 10, 30) {
        KrawczykOutcome::Unique(b) => Some(b),
        _ => None,
    }
}

/// Certified enclosures of the four parameters with `f_c^3(0) = 0`:
/// `0`, the airplane `c*` and its rotations `ω c*`, `ω² c*`.
pub fn solve_period3_centers() -> Result<Vec<CenterSolution>, CombinatoricsError> {
    let real = airplane_enclosure()?;
    let cstar = ComplexBox::real(real);
    let w = ComplexBox::omega();
    let mut out = vec![
        CenterSolution {
            c: ComplexBox::ZERO,
            label: CenterLabel::Zero,
        },
        CenterSolution {
            c: cstar,
            label: CenterLabel::Airplane,
        },
    ];
    let mut rot = cstar;
    for label in [CenterLabel::AirplaneOmega, CenterLabel::AirplaneOmega2] {
        rot = w * rot;
        let seed = rot.inflate(1e-6);
        let c = certify_complex_center(seed).ok_or(CombinatoricsError::NoSignChange)?;
        out.push(CenterSolution { c, label });
    }
    Ok(out)
}

/// The nonzero centers are permuted by multiplication with the ω enclosure.
pub fn rotation_consistent(centers: &[CenterSolution]) -> bool {
    let w = ComplexBox::omega();
    let find = |l: CenterLabel| centers.iter().find(|c| c.label == l).map(|c| c.c);
    let (Some(a), Some(b), Some(c)) = (
        find(CenterLabel::Airplane),
        find(CenterLabel::AirplaneOmega),
        find(CenterLabel::AirplaneOmega2),
    ) else {
        return false;
    };
    (w * a).intersects(&b) && (w * b).intersects(&c) && (w * c).intersects(&a)
}

/// The branch `s³ - 3s + 3 = 0` forces `|c| = 1` with `Re c = s/2 < -1`,
/// impossible since `|Re c| <= |c|`. Returns `true` when the root enclosure
/// certifies `s < -2`.
pub fn case_ii1_excluded() -> Result<bool, CombinatoricsError> {
    let s = real_root_enclosure([1.0, 0.0, -3.0, 3.0], Interval::new(-3.0, -2.0).unwrap())?;
    let re_c = s.scale2(-1);
    Ok(re_c.hi() < -1.0)
}

/// The real root of `s³ - 2s² + s - 1`, which is `-c*`.
pub fn case_ii2_root() -> Result<Interval, CombinatoricsError> {
    real_root_enclosure([1.0, -2.0, 1.0, -1.0], Interval::new(1.0, 2.0).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    #[test]
    fn angle_map_examples() {
        assert_eq!(angle_map(&a(1, 3)), a(1, 3));
        assert_eq!(angle_map(&a(3, 7)), a(1, 7));
        assert_eq!(angle_map(&Angle::zero()), Angle::zero());
        assert_eq!(a(7, 3), a(1, 3));
        assert_eq!(a(-1, 3), a(2, 3));
        assert!(Angle::new(1, 0).is_err());
    }

    #[test]
    fn periodic_angles_small() {
        // -2θ = θ mod 1 has the three solutions k/3; 2/3 ↦ -4/3 ≡ 2/3.
        assert_eq!(periodic_angles(1).unwrap(), vec![a(0, 1), a(1, 3), a(2, 3)]);
        assert_eq!(periodic_angles(2).unwrap(), vec![a(0, 1), a(1, 3), a(2, 3)]);
        assert_eq!(periodic_angles(3).unwrap().len(), 9);
        assert!(periodic_angles(0).is_err());
    }

    #[test]
    fn unlinked_examples() {
        assert!(unlinked(&[a(1, 7), a(2, 7)], &[a(3, 7), a(4, 7)]).unwrap());
        assert!(!unlinked(&[a(1, 7), a(4, 7)], &[a(2, 7), a(6, 7)]).unwrap());
        assert!(unlinked(&[a(1, 7)], &[]).unwrap());
        assert!(unlinked(&[a(1, 7)], &[a(1, 7)]).is_err());
        // wrap-around component
        assert!(unlinked(&[a(6, 7), a(1, 14)], &[a(2, 7), a(4, 7)]).unwrap());
    }

    #[test]
    fn residuals_at_zero() {
        let (re, im) = per3_residuals(Interval::ZERO, Interval::ZERO);
        assert!(re.contains(0.0));
        assert!(im.contains(1.0));
    }

    #[test]
    fn root_enclosures() {
        let r =
            real_root_enclosure([1.0, 0.0, -3.0, 3.0], Interval::new(-3.0, -2.0).unwrap()).unwrap();
        assert!(r.width() < 1e-12);
        assert!(r.contains(-2.1038034027355366) || (r.mid() + 2.1038034027355366).abs() < 1e-12);
        assert_eq!(
            real_root_enclosure([1.0, 0.0, 0.0, 1.0], Interval::new(0.0, 1.0).unwrap()),
            Err(CombinatoricsError::NoSignChange)
        );
        assert!(case_ii1_excluded().unwrap());
    }
}
