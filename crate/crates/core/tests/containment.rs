//! Containment and monotonicity of the interval kernels against exact
//! rational arithmetic on sample points.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricorn_core::dynamics::{conj_holomorphic_form, eval_f, eval_f2, holo_derivative};
use tricorn_core::{ComplexBox, Interval};

type Q = BigRational;

fn q(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

#[derive(Clone, Debug)]
struct Cq(Q, Q);

impl Cq {
    fn of(x: f64, y: f64) -> Cq {
        Cq(q(x), q(y))
    }
    fn add(&self, o: &Cq) -> Cq {
        Cq(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Cq) -> Cq {
        Cq(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn mul(&self, o: &Cq) -> Cq {
        Cq(
            &self.0 * &o.0 - &self.1 * &o.1,
            &self.0 * &o.1 + &self.1 * &o.0,
        )
    }
    fn conj(&self) -> Cq {
        Cq(self.0.clone(), -self.1.clone())
    }
    fn norm_sqr(&self) -> Q {
        &self.0 * &self.0 + &self.1 * &self.1
    }
    fn recip(&self) -> Cq {
        let n = self.norm_sqr();
        Cq(&self.0 / &n, -&self.1 / &n)
    }
}

fn iv_contains(iv: &Interval, x: &Q) -> bool {
    !iv.is_empty()
        && iv.lo().is_finite()
        && iv.hi().is_finite()
        && &q(iv.lo()) <= x
        && x <= &q(iv.hi())
}

fn box_contains(b: &ComplexBox, z: &Cq) -> bool {
    iv_contains(&b.re, &z.0) && iv_contains(&b.im, &z.1)
}

fn random_interval(rng: &mut ChaCha8Rng, scale: f64) -> Interval {
    let c: f64 = rng.gen_range(-scale..scale);
    let r = if rng.gen_bool(0.15) {
        0.0
    } else {
        10f64.powf(rng.gen_range(-12.0..0.0)) * scale
    };
    Interval::new(c - r, c + r).unwrap()
}

fn random_box(rng: &mut ChaCha8Rng, scale: f64) -> ComplexBox {
    ComplexBox::new(random_interval(rng, scale), random_interval(rng, scale))
}

fn sample(rng: &mut ChaCha8Rng, iv: &Interval) -> f64 {
    match rng.gen_range(0..8) {
        0 => iv.lo(),
        1 => iv.hi(),
        _ => {
            let t: f64 = rng.gen();
            (iv.lo() + t * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
        }
    }
}

fn sample_point(rng: &mut ChaCha8Rng, b: &ComplexBox) -> (f64, f64) {
    (sample(rng, &b.re), sample(rng, &b.im))
}

/// One random case of each kernel; returns the number of violations.
fn fuzz_round(rng: &mut ChaCha8Rng) -> usize {
    let a = random_box(rng, 2.0);
    let b = random_box(rng, 2.0);
    let c = random_box(rng, 2.0);
    let (ax, ay) = sample_point(rng, &a);
    let (bx, by) = sample_point(rng, &b);
    let (cx, cy) = sample_point(rng, &c);
    let (z, w, k) = (Cq::of(ax, ay), Cq::of(bx, by), Cq::of(cx, cy));
    let mut bad = 0;
    let mut check = |ok: bool| bad += usize::from(!ok);

    check(box_contains(&(a + b), &z.add(&w)));
    check(box_contains(&(a - b), &z.sub(&w)));
    check(box_contains(&(a * b), &z.mul(&w)));
    check(box_contains(&a.sqr(), &z.mul(&z)));
    check(box_contains(&a.conj(), &z.conj()));
    check(box_contains(&(-a), &Cq(-z.0.clone(), -z.1.clone())));
    check(iv_contains(&a.norm_sqr(), &z.norm_sqr()));
    // |z| via its square: lo² <= |z|² <= hi² with lo >= 0
    let m = a.abs();
    let n2 = z.norm_sqr();
    check(m.lo() >= 0.0 && q(m.lo()) * q(m.lo()) <= n2 && n2 <= q(m.hi()) * q(m.hi()));
    check(box_contains(
        &a.scale2(3),
        &Cq(&z.0 * q(8.0), &z.1 * q(8.0)),
    ));
    if let Some(r) = a.recip() {
        check(!z.norm_sqr().is_zero() && box_contains(&r, &z.recip()));
    }
    // f_c(z) = conj(z)² + c and its second iterate
    let f = z.conj().mul(&z.conj()).add(&k);
    check(box_contains(&eval_f(c, a), &f));
    let f2 = f.conj().mul(&f.conj()).add(&k);
    check(box_contains(&eval_f2(c, a), &f2));
    // (f²)'(z) = 4 z (z² + conj c)
    let d = z.mul(&z.mul(&z).add(&k.conj())).mul(&Cq::of(4.0, 0.0));
    check(box_contains(&holo_derivative(c, a, 2).unwrap(), &d));
    // H for n = 3: f³ = conj(H), H = (f²)² + conj c
    let h = conj_holomorphic_form(c, 3).unwrap().eval(a);
    check(box_contains(&h, &f2.mul(&f2).add(&k.conj())));
    bad
}

#[test]
fn containment_fuzz_hundred_thousand_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ac0);
    // 15 kernels per round
    let rounds = 100_000 / 15 + 1;
    let bad: usize = (0..rounds).map(|_| fuzz_round(&mut rng)).sum();
    assert_eq!(bad, 0);
}

#[test]
fn real_interval_ops_contain_exact_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20_000 {
        let a = random_interval(&mut rng, 3.0);
        let b = random_interval(&mut rng, 3.0);
        let x = q(sample(&mut rng, &a));
        let y = q(sample(&mut rng, &b));
        assert!(iv_contains(&(a + b), &(&x + &y)));
        assert!(iv_contains(&(a - b), &(&x - &y)));
        assert!(iv_contains(&(a * b), &(&x * &y)));
        assert!(iv_contains(&a.sqr(), &(&x * &x)));
        if let Some(r) = a.recip() {
            assert!(iv_contains(&r, &(Q::from_integer(1.into()) / &x)));
        }
        if a.lo() >= 0.0 {
            let s = a.sqrt();
            assert!(q(s.lo()) * q(s.lo()) <= x && x <= q(s.hi()) * q(s.hi()));
        }
        assert!(x.abs() <= q(a.mag()));
    }
}

#[test]
fn conj_is_an_exact_involution_and_self_difference_holds_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let a = random_box(&mut rng, 5.0);
        assert_eq!(a.conj().conj(), a);
        assert!((a - a).contains_point(0.0, 0.0));
        let real = ComplexBox::real(a.re);
        assert_eq!(real.conj(), real);
    }
}

#[test]
fn empty_is_absorbing() {
    let a = ComplexBox::centered(1.0, 1.0, 0.5);
    assert!((a + ComplexBox::EMPTY).is_empty());
    assert!((ComplexBox::EMPTY * a).is_empty());
    assert!((Interval::EMPTY + Interval::ONE).is_empty());
}

fn nested() -> impl Strategy<Value = (ComplexBox, ComplexBox)> {
    (
        -2.0..2.0f64,
        -2.0..2.0f64,
        0.0..1.0f64,
        0.0..1.0f64,
        0.0..1.0f64,
        0.0..1.0f64,
        0.0..1.0f64,
        0.0..1.0f64,
    )
        .prop_map(|(x, y, w, h, l, r, d, u)| {
            let inner = ComplexBox::from_bounds(x, x + w, y, y + h).unwrap();
            let outer = ComplexBox::from_bounds(x - l, x + w + r, y - d, y + h + u).unwrap();
            (inner, outer)
        })
}

proptest! {
    #[test]
    fn monotone_under_inclusion((a, a2) in nested(), (b, b2) in nested()) {
        prop_assert!((a + b).re.subset_of(&(a2 + b2).re) && (a + b).im.subset_of(&(a2 + b2).im));
        prop_assert!(a2.contains(&a) && b2.contains(&b));
        let inc = |x: ComplexBox, y: ComplexBox| y.contains(&x);
        prop_assert!(inc(a - b, a2 - b2));
        prop_assert!(inc(a * b, a2 * b2));
        prop_assert!(inc(a.sqr(), a2.sqr()));
        prop_assert!(inc(a.conj(), a2.conj()));
        prop_assert!(a.abs().subset_of(&a2.abs()));
        prop_assert!(inc(eval_f(b, a), eval_f(b2, a2)));
        prop_assert!(inc(eval_f2(b, a), eval_f2(b2, a2)));
    }

    #[test]
    fn hull_and_bisect((a, _) in nested(), (b, _) in nested()) {
        let h = a.hull(&b);
        prop_assert!(h.contains(&a) && h.contains(&b));
        let (l, r) = a.bisect();
        prop_assert!(a.contains(&l) && a.contains(&r));
        prop_assert_eq!(l.hull(&r), a);
        // halves share exactly the cut line
        let cut = l.intersect(&r);
        prop_assert!(cut.re.width() == 0.0 || cut.im.width() == 0.0);
    }
}
