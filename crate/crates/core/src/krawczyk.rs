//! Krawczyk operator for two real equations in two unknowns.
//!
//! The unknown is packed into a [`ComplexBox`] (`re` = first coordinate,
//! `im` = second) and so is the residual. This covers both holomorphic
//! equations and conj-linear ones, which only differ in their Jacobian.

use crate::interval::{ComplexBox, Interval};

/// 2×2 interval matrix, row-major.
#[derive(Clone, Copy, Debug)]
pub struct Jacobian(pub [[Interval; 2]; 2]);

impl Jacobian {
    /// Real Jacobian of a holomorphic map with derivative `d`.
    pub fn holomorphic(d: ComplexBox) -> Jacobian {
        Jacobian([[d.re, -d.im], [d.im, d.re]])
    }

    /// Real Jacobian of `z ↦ conj(H(z))` where `H` is holomorphic with derivative `d`.
    pub fn antiholomorphic(d: ComplexBox) -> Jacobian {
        Jacobian([[d.re, -d.im], [-d.im, -d.re]])
    }

    /// `self - I`.
    pub fn minus_identity(self) -> Jacobian {
        let [[a, b], [c, d]] = self.0;
        Jacobian([[a - Interval::ONE, b], [c, d - Interval::ONE]])
    }

    fn midpoint_inverse(&self) -> Option<[[f64; 2]; 2]> {
        let [[a, b], [c, d]] = self.0;
        let (a, b, c, d) = (a.mid(), b.mid(), c.mid(), d.mid());
        let det = a * d - b * c;
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
        if !det.is_finite() || scale == 0.0 || det.abs() <= 1e-13 * scale * scale {
            return None;
        }
        Some([[d / det, -b / det], [-c / det, a / det]])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KrawczykOutcome {
    /// Exactly one zero in the seed; the box encloses it.
    Unique(ComplexBox),
    /// No zero in the seed.
    Excluded,
    /// Neither could be shown.
    Unknown,
    /// The midpoint Jacobian is numerically singular.
    Singular,
}

fn apply(y: &[[f64; 2]; 2], v: ComplexBox) -> ComplexBox {
    let p = |x: f64| Interval::point(x);
    ComplexBox::new(
        v.re * p(y[0][0]) + v.im * p(y[0][1]),
        v.re * p(y[1][0]) + v.im * p(y[1][1]),
    )
}

/// One Krawczyk step on `seed`.
///
/// `residual` evaluates the map at a point box (it may still carry parameter
/// uncertainty); `jacobian` encloses the Jacobian over a whole box.
pub fn krawczyk_step<F, J>(
    seed: ComplexBox,
    residual: &F,
    jacobian: &J,
) -> (KrawczykOutcome, ComplexBox)
where
    F: Fn(ComplexBox) -> ComplexBox,
    J: Fn(ComplexBox) -> Jacobian,
{
    let jx = jacobian(seed);
    let Some(y) = jx.midpoint_inverse() else {
        return (KrawczykOutcome::Singular, seed);
    };
    let m = seed.mid_box();
    let fm = residual(m);
    if !fm.is_finite() {
        return (KrawczykOutcome::Unknown, seed);
    }
    // I - Y J(X)
    let [[a, b], [c, d]] = jx.0;
    let p = |x: f64| Interval::point(x);
    let r00 = Interval::ONE - (p(y[0][0]) * a + p(y[0][1]) * c);
    let r01 = -(p(y[0][0]) * b + p(y[0][1]) * d);
    let r10 = -(p(y[1][0]) * a + p(y[1][1]) * c);
    let r11 = Interval::ONE - (p(y[1][0]) * b + p(y[1][1]) * d);
    let dx = seed - m;
    let rem = ComplexBox::new(r00 * dx.re + r01 * dx.im, r10 * dx.re + r11 * dx.im);
    let k = m - apply(&y, fm) + rem;
    if !k.is_finite() {
        return (KrawczykOutcome::Unknown, seed);
    }
    if seed.contains_interior(&k) {
        (KrawczykOutcome::Unique(k), k)
    } else if !k.intersects(&seed) {
        (KrawczykOutcome::Excluded, seed)
    } else {
        (KrawczykOutcome::Unknown, k.intersect(&seed))
    }
}

/// Iterated Krawczyk: repeats the step on `K(X) ∩ X` up to `max_steps` times
/// while undecided, then tightens a certified enclosure `tighten` more times.
pub fn krawczyk<F, J>(
    seed: ComplexBox,
    residual: F,
    jacobian: J,
    max_steps: usize,
    tighten: usize,
) -> KrawczykOutcome
where
    F: Fn(ComplexBox) -> ComplexBox,
    J: Fn(ComplexBox) -> Jacobian,
{
    let mut x = seed;
    for _ in 0..max_steps.max(1) {
        let (out, next) = krawczyk_step(x, &residual, &jacobian);
        match out {
            KrawczykOutcome::Unique(mut k) => {
                // K(X) ⊂ int X; further steps only shrink the enclosure.
                for _ in 0..tighten {
                    let (o, n) = krawczyk_step(k, &residual, &jacobian);
                    match o {
                        KrawczykOutcome::Unique(_) | KrawczykOutcome::Unknown => {
                            let n = n.intersect(&k);
                            if n.is_empty() || n == k {
                                break;
                            }
                            k = n;
                        }
                        _ => break,
                    }
                }
                return KrawczykOutcome::Unique(k);
            }
            KrawczykOutcome::Excluded | KrawczykOutcome::Singular => return out,
            KrawczykOutcome::Unknown => {
                if next.is_empty() {
                    return KrawczykOutcome::Excluded;
                }
                if next == x {
                    return KrawczykOutcome::Unknown;
                }
                x = next;
            }
        }
    }
    KrawczykOutcome::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two_pair() {
        // x² - 2 = 0, y - x = 0
        let residual =
            |z: ComplexBox| ComplexBox::new(z.re.sqr() - Interval::point(2.0), z.im - z.re);
        let jac = |z: ComplexBox| {
            Jacobian([
                [z.re.scale2(1), Interval::ZERO],
                [-Interval::ONE, Interval::ONE],
            ])
        };
        let seed = ComplexBox::from_bounds(1.0, 2.0, 1.0, 2.0).unwrap();
        match krawczyk(seed, residual, jac, 5, 10) {
            KrawczykOutcome::Unique(b) => {
                assert!(b.re.contains(2f64.sqrt()));
                assert!(b.width() < 1e-14);
            }
            o => panic!("{o:?}"),
        }
        let far = ComplexBox::from_bounds(3.0, 4.0, 3.0, 4.0).unwrap();
        assert_eq!(
            krawczyk(far, residual, jac, 5, 0),
            KrawczykOutcome::Excluded
        );
    }
}
