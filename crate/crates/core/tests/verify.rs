use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricorn_core::dynamics::OrbitEnclosure;
use tricorn_core::scan::ScanConfig;
use tricorn_core::verify::*;
use tricorn_core::ComplexBox;

fn sq(cx: f64, cy: f64, r: f64) -> ComplexBox {
    ComplexBox::from_bounds(cx - r, cx + r, cy - r, cy + r).unwrap()
}

fn monic_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    // coefficients, highest degree first
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut q = p.clone();
        q.push(Complex64::new(0.0, 0.0));
        for i in 0..p.len() {
            q[i + 1] -= r * p[i];
        }
        p = q;
    }
    p
}

fn horner_box(p: &[Complex64], z: ComplexBox) -> (ComplexBox, ComplexBox) {
    let k = |a: Complex64| ComplexBox::point(a.re, a.im);
    let mut v = k(p[0]);
    let mut d = ComplexBox::ZERO;
    for a in &p[1..] {
        d = d * z + v;
        v = v * z + k(*a);
    }
    (v, d)
}

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p[1..].iter().fold(p[0], |v, a| v * z + a)
}

/// Winding number of `p(∂R)` around 0 from dense boundary sampling.
fn float_winding(p: &[Complex64], r: &ComplexBox) -> i64 {
    let (x0, x1, y0, y1) = (r.re.lo(), r.re.hi(), r.im.lo(), r.im.hi());
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)];
    let n = 4000;
    let mut total = 0.0;
    let mut prev = horner(p, Complex64::new(x0, y0));
    for w in corners.windows(2) {
        for i in 1..=n {
            let t = i as f64 / n as f64;
            let z = Complex64::new(
                w[0].0 + t * (w[1].0 - w[0].0),
                w[0].1 + t * (w[1].1 - w[0].1),
            );
            let v = horner(p, z);
            total += (v / prev).arg();
            prev = v;
        }
    }
    (total / std::f64::consts::TAU).round() as i64
}

fn dist_to_boundary(z: Complex64, r: &ComplexBox) -> f64 {
    let (x0, x1, y0, y1) = (r.re.lo(), r.re.hi(), r.im.lo(), r.im.hi());
    let cx = z.re.clamp(x0, x1);
    let cy = z.im.clamp(y0, y1);
    if (cx, cy) != (z.re, z.im) {
        return Complex64::new(z.re - cx, z.im - cy).norm();
    }
    (z.re - x0).min(x1 - z.re).min(z.im - y0).min(y1 - z.im)
}

#[test]
fn argument_principle_counts_polynomial_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cfg = ContourConfig::default();
    let mut done = 0;
    while done < 100 {
        let deg = rng.gen_range(1..=4);
        let roots: Vec<Complex64> = (0..deg)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let (a, b) = (rng.gen_range(-1.2..1.0), rng.gen_range(-1.2..1.0));
        let region = ComplexBox::from_bounds(
            a,
            a + rng.gen_range(0.1..1.2),
            b,
            b + rng.gen_range(0.1..1.2),
        )
        .unwrap();
        if roots.iter().any(|r| dist_to_boundary(*r, &region) < 0.05) {
            continue;
        }
        let p = monic_from_roots(&roots);
        let inside = roots
            .iter()
            .filter(|r| region.contains_point(r.re, r.im))
            .count() as i64;
        assert_eq!(float_winding(&p, &region), inside);
        let e = contour_integral(
            region,
            |z| {
                let (v, d) = horner_box(&p, z);
                Some(d * v.recip()?)
            },
            &cfg,
        )
        .unwrap();
        assert_eq!(
            e.decided_count(),
            Some(inside),
            "roots {roots:?} region {region:?}"
        );
        done += 1;
    }
}

#[test]
fn contour_width_shrinks_as_segments_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let roots: Vec<Complex64> = (0..3)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let p = monic_from_roots(&roots);
        let region = sq(0.0, 0.0, 1.5);
        let mut last = f64::INFINITY;
        for segs in [16, 32, 64, 128, 256] {
            let cfg = ContourConfig {
                tolerance: 0.0,
                max_depth: 0,
                initial_segments: segs,
            };
            let e = contour_integral(
                region,
                |z| {
                    let (v, d) = horner_box(&p, z);
                    Some(d * v.recip()?)
                },
                &cfg,
            );
            // a segment may still touch a root at coarse resolutions
            let Some(e) = e else { continue };
            let w = e.value.width();
            assert!(w <= last * (1.0 + 1e-9), "{segs}: {w} > {last}");
            last = w;
        }
        assert!(last.is_finite());
    }
}

const MID: (f64, f64) = (-1.7385, 0.0158);
const U: f64 = 0.3;
// float Newton on f³(z) = 0 at the rectangle midpoint
const ROOT: (f64, f64) = (0.07467805551635015, 0.12456758280829001);

#[test]
fn two_preimages_of_zero_in_the_domain() {
    let c = ComplexBox::point(MID.0, MID.1);
    let cfg = ContourConfig::default();
    assert_eq!(
        preimage_count(c, (0.0, 0.0), sq(0.0, 0.0, U), 3, &cfg).unwrap(),
        Some(2)
    );
    // f(-z) = f(z), so the preimages are a ± pair
    for s in [1.0, -1.0] {
        let near = sq(s * ROOT.0, s * ROOT.1, 1e-3);
        assert_eq!(
            preimage_count(c, (0.0, 0.0), near, 3, &cfg).unwrap(),
            Some(1)
        );
    }
    assert!(preimage_count(c, (0.0, 0.0), sq(0.0, 0.0, U), 2, &cfg).is_err());
}

#[test]
fn boundary_maps_outside_near_the_anchor() {
    let c = ComplexBox::centered(MID.0, MID.1, 1e-5);
    let s = boundary_disjoint(c, sq(0.0, 0.0, U), 3, &BoundaryConfig::default()).unwrap();
    assert!(s.is_true());
    // far outside the set nothing in U maps onto 0
    let far = ComplexBox::point(2.5, 0.0);
    assert_eq!(
        preimage_count(
            far,
            (0.0, 0.0),
            sq(0.0, 0.0, U),
            3,
            &ContourConfig::default()
        )
        .unwrap(),
        Some(0)
    );
}

#[test]
fn qlike_far_outside_is_not_verified() {
    let rect = sq(0.5, 0.5, 0.01);
    let scan = ScanConfig {
        max_depth: 3,
        ..Default::default()
    };
    let r = qlike_certificate(
        rect,
        sq(0.0, 0.0, U),
        3,
        (0.5, 0.5),
        &scan,
        &BoundaryConfig::default(),
        &ContourConfig::default(),
    )
    .unwrap();
    assert_ne!(r.status.verdict, Verdict::True);
    assert!(!r.anchor_bounded);
}

#[test]
fn qlike_anchor_must_lie_in_the_rectangle() {
    let r = qlike_certificate(
        sq(MID.0, MID.1, 1e-4),
        sq(0.0, 0.0, U),
        3,
        (0.0, 0.0),
        &ScanConfig::default(),
        &BoundaryConfig::default(),
        &ContourConfig::default(),
    );
    assert_eq!(r.err(), Some(VerifyError::AnchorOutside));
}

#[test]
fn real_parameters_never_exclude_a_real_multiplier() {
    // c = -1: f² has the superattracting fixed point 0 with real multiplier
    let cfg = MultiplierConfig {
        region: sq(0.0, 0.0, 0.2),
        n: 2,
        attempts: 6,
    };
    for r in [1e-12, 1e-8, 1e-4] {
        let s = multiplier_im_excludes_zero(sq(-1.0, 0.0, r), &cfg);
        assert_ne!(s.verdict, Verdict::True);
    }
    // off the real axis the multiplier leaves the real line
    let s = multiplier_im_excludes_zero(sq(-1.0, 0.05, 1e-6), &cfg);
    assert!(s.is_true());
}

#[test]
fn no_cycles_far_from_the_search_region() {
    let search = CycleSearch {
        period: 1,
        region: sq(5.5, 5.5, 0.5),
        max_depth: 10,
    };
    assert!(parabolic_excluded(ComplexBox::centered(0.0, 0.0, 0.01), &search).is_true());
}

#[test]
fn disjointness_vacuous_when_no_box_is_parabolic() {
    let rect = sq(-1.0, 0.05, 0.01);
    let mult = MultiplierConfig {
        region: sq(0.0, 0.0, 0.2),
        n: 2,
        attempts: 6,
    };
    let far = CycleSearch {
        period: 1,
        region: sq(5.5, 5.5, 0.5),
        max_depth: 10,
    };
    let scan = ScanConfig {
        max_depth: 3,
        ..Default::default()
    };
    let r = disjointness_certificate(rect, &mult, &far, &scan, 4).unwrap();
    assert_eq!(r.status.verdict, Verdict::True);
    assert_eq!(r.red_count, 0);
}

#[test]
fn disjointness_coarse_budget_is_undetermined() {
    let rect = ComplexBox::from_bounds(-1.73875, -1.73825, 0.01555, 0.01605).unwrap();
    let mult = MultiplierConfig {
        region: ComplexBox::from_bounds(0.0, 0.08, 0.0, 0.08).unwrap(),
        n: 6,
        attempts: 6,
    };
    let cycles = CycleSearch {
        period: 9,
        region: sq(0.0, 0.0, 0.03),
        max_depth: 30,
    };
    let scan = ScanConfig {
        max_depth: 1,
        ..Default::default()
    };
    let r = disjointness_certificate(rect, &mult, &cycles, &scan, 1).unwrap();
    assert_eq!(r.status.verdict, Verdict::Undetermined);
    assert!(r.yellow_count > 0 && r.red_count > 0);
}

#[test]
fn attracting_cycle_at_the_anchor() {
    let center = tricorn_core::dynamics::float_center(
        9,
        Complex64::new(-1.738467707542, 0.015771142412),
        60,
    )
    .unwrap();
    let seed: OrbitEnclosure = center_seed(center, 9, 1e-9);
    let search = CycleSearch {
        period: 9,
        region: sq(0.0, 0.0, 0.03),
        max_depth: 30,
    };
    let c = ComplexBox::centered(center.re, center.im, 1e-12);
    let v = attracting_cycle_box(c, 9, &seed, &search);
    assert!(v.status.is_true());
    let o = v.orbit.unwrap();
    assert!(o.modulus.hi() < 1.0);
    assert!(o.odd_multiplier().lo() >= 0.0);
}
