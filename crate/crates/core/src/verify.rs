//! Rigorous predicates on parameter boxes: quadratic-like restriction,
//! argument-principle fixed-point counts, multiplier checks for tracked
//! cycles, and the disjointness of the real-multiplier and parabolic loci.

use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::{
    conj_holomorphic_form, eval_fn, even_iterate_with_derivative, f_float,
    float_critical_orbit_bounded, float_fixed_point, interval_newton_fixed, IterateSpec,
    NewtonOutcome, OrbitEnclosure,
};
use crate::interval::{ComplexBox, Interval};
use crate::scan::{adaptive_scan, refine_leaves, ScanConfig, ScanTree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("region has zero width or height")]
    DegenerateRegion,
    #[error("anchor parameter lies outside the parameter rectangle")]
    AnchorOutside,
    #[error("iterate must be odd here, got {0}")]
    NotOdd(u32),
    #[error("iterate must be even and positive here, got {0}")]
    NotEven(u32),
    #[error("iterate must be at least 1")]
    ZeroIterate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Undetermined,
}

impl Verdict {
    pub fn token(self) -> char {
        match self {
            Verdict::True => 'T',
            Verdict::False => 'F',
            Verdict::Undetermined => 'U',
        }
    }

    pub fn from_token(t: &str) -> Option<Verdict> {
        match t {
            "T" => Some(Verdict::True),
            "F" => Some(Verdict::False),
            "U" => Some(Verdict::Undetermined),
            _ => None,
        }
    }
}

/// Outcome of one predicate on one box, with the work it took.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimStatus {
    pub verdict: Verdict,
    pub effort: u32,
}

impl ClaimStatus {
    pub fn verified(effort: u32) -> ClaimStatus {
        ClaimStatus {
            verdict: Verdict::True,
            effort,
        }
    }

    pub fn refuted(effort: u32) -> ClaimStatus {
        ClaimStatus {
            verdict: Verdict::False,
            effort,
        }
    }

    pub fn undetermined(effort: u32) -> ClaimStatus {
        ClaimStatus {
            verdict: Verdict::Undetermined,
            effort,
        }
    }

    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }
}

// negated comparisons also reject NaN endpoints
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn check_region(r: &ComplexBox) -> Result<(), VerifyError> {
    if r.is_empty() || !(r.re.lo() < r.re.hi()) || !(r.im.lo() < r.im.hi()) {
        return Err(VerifyError::DegenerateRegion);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// boundary images

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryConfig {
    /// Segments per edge before any refinement.
    pub initial_segments: u32,
    /// Maximum number of halvings of an initial segment.
    pub max_depth: u32,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        BoundaryConfig {
            initial_segments: 32,
            max_depth: 10,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Inside,
    Outside,
    Straddles,
}

fn side_of(w: &ComplexBox, u: &ComplexBox) -> Side {
    if u.contains_interior(w) {
        Side::Inside
    } else if w.re.hi() < u.re.lo()
        || w.re.lo() > u.re.hi()
        || w.im.hi() < u.im.lo()
        || w.im.lo() > u.im.hi()
    {
        Side::Outside
    } else {
        Side::Straddles
    }
}

/// The four edges of a rectangle, counterclockwise from the bottom, each as
/// `(box, along_re, reversed)`.
fn edges(r: &ComplexBox) -> [(ComplexBox, bool, bool); 4] {
    let (x0, x1, y0, y1) = (r.re.lo(), r.re.hi(), r.im.lo(), r.im.hi());
    let x = Interval::new(x0, x1).unwrap();
    let y = Interval::new(y0, y1).unwrap();
    [
        (ComplexBox::new(x, Interval::point(y0)), true, false),
        (ComplexBox::new(Interval::point(x1), y), false, false),
        (ComplexBox::new(x, Interval::point(y1)), true, true),
        (ComplexBox::new(Interval::point(x0), y), false, true),
    ]
}

/// Splits an edge into `k` equal pieces along its varying axis.
fn split_edge(e: &ComplexBox, along_re: bool, k: u32) -> Vec<ComplexBox> {
    let iv = if along_re { e.re } else { e.im };
    let (a, b) = (iv.lo(), iv.hi());
    let pts: Vec<f64> = (0..=k)
        .map(|i| {
            if i == 0 {
                a
            } else if i == k {
                b
            } else {
                a + (b - a) * (i as f64 / k as f64)
            }
        })
        .collect();
    pts.windows(2)
        .map(|w| {
            let s = Interval::hull_of(w[0], w[1]);
            if along_re {
                ComplexBox::new(s, e.im)
            } else {
                ComplexBox::new(e.re, s)
            }
        })
        .collect()
}

/// Is `f_c^n(∂U)` disjoint from `∂U` for every `c` in the box?
///
/// `True` when every boundary piece maps strictly inside `U` or strictly
/// outside its closure. `False` when two boundary points map, for every `c`,
/// one strictly inside and one strictly outside; the image of the boundary
/// arc between them then has to cross `∂U`. Otherwise `Undetermined`.
pub fn boundary_disjoint(
    c: ComplexBox,
    u: ComplexBox,
    n: u32,
    cfg: &BoundaryConfig,
) -> Result<ClaimStatus, VerifyError> {
    check_region(&u)?;
    if n == 0 {
        return Err(VerifyError::ZeroIterate);
    }
    let mut effort = 0u32;
    let mut undecided = false;
    let mut stack: Vec<(ComplexBox, bool, u32)> = Vec::new();
    for (e, along_re, _) in edges(&u) {
        for s in split_edge(&e, along_re, cfg.initial_segments.max(1)) {
            stack.push((s, along_re, 0));
        }
    }
    while let Some((seg, along_re, depth)) = stack.pop() {
        effort += 1;
        match side_of(&eval_fn(c, seg, n), &u) {
            Side::Inside | Side::Outside => {}
            Side::Straddles => {
                if depth >= cfg.max_depth {
                    undecided = true;
                    continue;
                }
                for s in split_edge(&seg, along_re, 2) {
                    stack.push((s, along_re, depth + 1));
                }
            }
        }
    }
    if !undecided {
        return Ok(ClaimStatus::verified(effort));
    }
    // Look for a uniform crossing: one vertex mapped inside, one outside.
    let (mut inside, mut outside) = (false, false);
    for (e, along_re, _) in edges(&u) {
        for s in split_edge(&e, along_re, cfg.initial_segments.max(1) * 4) {
            effort += 1;
            let p = ComplexBox::new(Interval::point(s.re.lo()), Interval::point(s.im.lo()));
            match side_of(&eval_fn(c, p, n), &u) {
                Side::Inside => inside = true,
                Side::Outside => outside = true,
                Side::Straddles => {}
            }
            if inside && outside {
                return Ok(ClaimStatus::refuted(effort));
            }
        }
    }
    Ok(ClaimStatus::undetermined(effort))
}

// ---------------------------------------------------------------------------
// argument principle

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourConfig {
    /// Target total width of the integral enclosure.
    pub tolerance: f64,
    /// Maximum halvings of an initial segment.
    pub max_depth: u32,
    /// Segments per edge before refinement.
    pub initial_segments: u32,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            tolerance: 0.5,
            max_depth: 16,
            initial_segments: 8,
        }
    }
}

/// Enclosure of a contour integral over the boundary of a rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourEnclosure {
    pub value: ComplexBox,
    pub segments: u32,
}

fn two_pi_k(k: i64) -> Interval {
    Interval::pi().scale2(1) * Interval::point(k as f64)
}

impl ContourEnclosure {
    /// Does the box contain `2πik`?
    pub fn contains_2pi_i(&self, k: i64) -> bool {
        self.value.re.contains(0.0) && two_pi_k(k).subset_of(&self.value.im)
    }

    /// Does the box exclude `2πik`?
    pub fn excludes_2pi_i(&self, k: i64) -> bool {
        !self.value.re.contains(0.0) || !two_pi_k(k).intersects(&self.value.im)
    }

    /// The winding number, when exactly one multiple of `2πi` is possible.
    pub fn decided_count(&self) -> Option<i64> {
        let im = self.value.im;
        if !im.is_finite() || !self.value.re.contains(0.0) {
            return None;
        }
        let tp = 2.0 * std::f64::consts::PI;
        let k0 = (im.lo() / tp).floor() as i64 - 1;
        let k1 = (im.hi() / tp).ceil() as i64 + 1;
        if k1 - k0 > 64 {
            return None;
        }
        let hits: Vec<i64> = (k0..=k1).filter(|&k| !self.excludes_2pi_i(k)).collect();
        match hits.as_slice() {
            [k] if self.contains_2pi_i(*k) => Some(*k),
            _ => None,
        }
    }
}

/// A child segment whose integrand enclosure is wider than this fraction of
/// its parent's is accepted as is.
const STAGNATION: f64 = 0.75;

/// Encloses `∮_{∂R} h(z) dz` counterclockwise, where `integrand` returns an
/// enclosure of `h` over a segment box or `None` when the box touches a pole.
///
/// Each segment contributes `Δz · H` where `H` encloses `h` on the segment:
/// the segment average of `h` lies in the convex hull of its values.
pub fn contour_integral<F>(
    region: ComplexBox,
    integrand: F,
    cfg: &ContourConfig,
) -> Option<ContourEnclosure>
where
    F: Fn(ComplexBox) -> Option<ComplexBox>,
{
    check_region(&region).ok()?;
    let perimeter = 2.0 * (region.re.width() + region.im.width());
    let per_length = cfg.tolerance / perimeter;
    let mut total = ComplexBox::ZERO;
    let mut segments = 0u32;
    for (edge, along_re, reversed) in edges(&region) {
        let mut stack: Vec<(ComplexBox, u32, f64)> =
            split_edge(&edge, along_re, cfg.initial_segments.max(1))
                .into_iter()
                .map(|s| (s, 0, f64::INFINITY))
                .collect();
        while let Some((seg, depth, parent_width)) = stack.pop() {
            let h = integrand(seg);
            let len_iv = if along_re { seg.re } else { seg.im };
            let good = match h {
                // Halving no longer tightens the enclosure: the width is
                // dominated by the parameter box, so stop refining.
                Some(h) => {
                    h.is_finite()
                        && (h.width() <= per_length || h.width() > STAGNATION * parent_width)
                }
                None => false,
            };
            if !good && depth < cfg.max_depth {
                let w = h.map_or(f64::INFINITY, |h| h.width());
                for s in split_edge(&seg, along_re, 2) {
                    stack.push((s, depth + 1, w));
                }
                continue;
            }
            let h = h?;
            if !h.is_finite() {
                return None;
            }
            let dl = Interval::point(len_iv.hi()) - Interval::point(len_iv.lo());
            let dl = if reversed { -dl } else { dl };
            let dz = if along_re {
                ComplexBox::new(dl, Interval::ZERO)
            } else {
                ComplexBox::new(Interval::ZERO, dl)
            };
            total = total + dz * h;
            segments += 1;
        }
    }
    Some(ContourEnclosure {
        value: total,
        segments,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointCount {
    pub enclosure: Option<ContourEnclosure>,
    pub count: Option<i64>,
}

/// Argument-principle count of fixed points of the even iterate `g = f_c^n`
/// in `region`: encloses `∮ (g'(z) - 1)/(g(z) - z) dz`.
pub fn count_fixed_points(
    c: ComplexBox,
    region: ComplexBox,
    g: IterateSpec,
    cfg: &ContourConfig,
) -> Result<FixedPointCount, VerifyError> {
    check_region(&region)?;
    if !g.is_even() {
        return Err(VerifyError::NotEven(g.n));
    }
    let enclosure = contour_integral(
        region,
        |z| {
            let (w, d) = even_iterate_with_derivative(c, z, g.n).ok()?;
            let den = (w - z).recip()?;
            Some((d - ComplexBox::point(1.0, 0.0)) * den)
        },
        cfg,
    );
    Ok(FixedPointCount {
        count: enclosure.and_then(|e| e.decided_count()),
        enclosure,
    })
}

/// Claim: exactly one fixed point of `g` in `region` (count box holds `2πi`
/// and excludes `0` and `4πi`).
pub fn unique_fixed_point_status(
    c: ComplexBox,
    region: ComplexBox,
    g: IterateSpec,
    cfg: &ContourConfig,
) -> ClaimStatus {
    match count_fixed_points(c, region, g, cfg) {
        Ok(FixedPointCount {
            enclosure: Some(e),
            count,
        }) => {
            let effort = e.segments;
            if e.contains_2pi_i(1) && e.excludes_2pi_i(0) && e.excludes_2pi_i(2) {
                ClaimStatus::verified(effort)
            } else if count.is_some() {
                ClaimStatus::refuted(effort)
            } else {
                ClaimStatus::undetermined(effort)
            }
        }
        _ => ClaimStatus::undetermined(0),
    }
}

/// Number of solutions of `f_c^n(z) = w` in `u` for odd `n`, as zeros of the
/// holomorphic `H(z) - conj(w)` with `f_c^n = conj ∘ H`.
pub fn preimage_count(
    c: ComplexBox,
    w: (f64, f64),
    u: ComplexBox,
    n: u32,
    cfg: &ContourConfig,
) -> Result<Option<i64>, VerifyError> {
    check_region(&u)?;
    let h = conj_holomorphic_form(c, n).map_err(|_| VerifyError::NotOdd(n))?;
    let wb = ComplexBox::point(w.0, -w.1);
    let e = contour_integral(
        u,
        |z| {
            let (v, d) = h.eval_with_derivative(z);
            Some(d * (v - wb).recip()?)
        },
        cfg,
    );
    Ok(e.and_then(|e| e.decided_count()))
}

// ---------------------------------------------------------------------------
// quadratic-like certificate

#[derive(Clone, Debug)]
pub struct QlikeReport {
    pub status: ClaimStatus,
    pub tree: ScanTree,
    /// Non-rigorous: the anchor's critical orbit under `f^n` stayed in `U`.
    pub anchor_bounded: bool,
    pub preimages: Option<i64>,
    pub assumptions: Vec<String>,
}

/// Steps of the non-rigorous anchor orbit check.
pub const ANCHOR_STEPS: usize = 200;

pub const ANCHOR_ASSUMPTION: &str = "anchor renormalizability: critical orbit of f^n at the anchor stays in U for 200 float iterates (not rigorous)";

/// Float check that the critical orbit of `f^n` at `anchor` stays in `u`.
pub fn anchor_orbit_stays(anchor: Complex64, u: &ComplexBox, n: u32, steps: usize) -> bool {
    if !float_critical_orbit_bounded(anchor, steps * n as usize) {
        return false;
    }
    let mut z = Complex64::new(0.0, 0.0);
    for _ in 0..steps {
        for _ in 0..n {
            z = f_float(anchor, z);
        }
        if !(u.re.lo() < z.re && z.re < u.re.hi() && u.im.lo() < z.im && z.im < u.im.hi()) {
            return false;
        }
    }
    true
}

/// Quadratic-like restriction `f_c^n : U'_c → U` over a whole parameter
/// rectangle: every leaf boundary-disjoint, anchor orbit bounded (assumed),
/// and exactly two preimages of 0 in `U` at the anchor.
pub fn qlike_certificate(
    param_rect: ComplexBox,
    u: ComplexBox,
    n: u32,
    anchor: (f64, f64),
    scan: &ScanConfig,
    boundary: &BoundaryConfig,
    contour: &ContourConfig,
) -> Result<QlikeReport, VerifyError> {
    check_region(&param_rect)?;
    check_region(&u)?;
    if n.is_multiple_of(2) {
        return Err(VerifyError::NotOdd(n));
    }
    if !param_rect.contains_point(anchor.0, anchor.1) {
        return Err(VerifyError::AnchorOutside);
    }
    let tree = adaptive_scan(
        param_rect,
        "qlike",
        |c: &ComplexBox| {
            boundary_disjoint(*c, u, n, boundary).unwrap_or(ClaimStatus::undetermined(0))
        },
        scan,
    );
    let anchor_bounded =
        anchor_orbit_stays(Complex64::new(anchor.0, anchor.1), &u, n, ANCHOR_STEPS);
    let preimages = preimage_count(
        ComplexBox::point(anchor.0, anchor.1),
        (0.0, 0.0),
        u,
        n,
        contour,
    )?;
    let leaves = tree.rollup();
    let effort = tree.total_effort();
    let verdict = match leaves {
        Verdict::True if anchor_bounded && preimages == Some(2) => Verdict::True,
        Verdict::True => Verdict::Undetermined,
        v => v,
    };
    Ok(QlikeReport {
        status: ClaimStatus { verdict, effort },
        tree,
        anchor_bounded,
        preimages,
        assumptions: vec![ANCHOR_ASSUMPTION.to_string()],
    })
}

// ---------------------------------------------------------------------------
// tracked cycles

/// A dynamical search region for cycles of a given period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleSearch {
    pub period: u32,
    pub region: ComplexBox,
    /// Maximum bisection depth of the region cover.
    pub max_depth: u32,
}

impl CycleSearch {
    /// Search region around the first point of a seed orbit.
    pub fn around(seed: &OrbitEnclosure, radius: f64, max_depth: u32) -> CycleSearch {
        CycleSearch {
            period: seed.period,
            region: seed.boxes[0].inflate(radius),
            max_depth,
        }
    }
}

/// Covers the search region by boxes `B` on which either `f^p(B) ∩ B = ∅`
/// (no fixed point of `f^p` in `B`) or `decided(∏ 2|f^i(B)|)` holds.
/// Returns `(all decided, effort)`.
fn cover_region<D>(c: ComplexBox, search: &CycleSearch, decided: D) -> (bool, u32)
where
    D: Fn(Interval) -> bool,
{
    let mut effort = 0u32;
    let mut stack = vec![(search.region, 0u32)];
    while let Some((b, depth)) = stack.pop() {
        effort += 1;
        let mut z = b;
        let mut modulus = Interval::ONE;
        let mut finite = true;
        for _ in 0..search.period {
            modulus = modulus * z.abs().scale2(1);
            z = crate::dynamics::eval_f(c, z);
            if !z.is_finite() {
                finite = false;
                break;
            }
        }
        if finite && (!z.intersects(&b) || decided(modulus)) {
            continue;
        }
        if depth >= search.max_depth {
            return (false, effort);
        }
        let (l, r) = b.bisect();
        stack.push((r, depth + 1));
        stack.push((l, depth + 1));
    }
    (true, effort)
}

/// No cycle of the tracked period in the search region has multiplier one:
/// every candidate's `(∏ 2|z_i|)²` excludes 1.
pub fn parabolic_excluded(c: ComplexBox, search: &CycleSearch) -> ClaimStatus {
    let (ok, effort) = cover_region(c, search, |m| !m.contains(1.0));
    if ok {
        ClaimStatus::verified(effort)
    } else {
        ClaimStatus::undetermined(effort)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleVerdict {
    pub status: ClaimStatus,
    pub orbit: Option<OrbitEnclosure>,
}

/// Attracting cycle of period `p` near `seed`.
///
/// `True` when the Krawczyk operator re-certifies a unique cycle through the
/// (inflated) seed box with modulus product `< 1`; `False` when a cover of
/// `search.region` shows no fixed point of `f^p` there with modulus `<= 1`.
pub fn attracting_cycle_box(
    c: ComplexBox,
    p: u32,
    seed: &OrbitEnclosure,
    search: &CycleSearch,
) -> CycleVerdict {
    let g = match IterateSpec::new(p) {
        Ok(g) => g,
        Err(_) => {
            return CycleVerdict {
                status: ClaimStatus::undetermined(0),
                orbit: None,
            }
        }
    };
    let start = seed.boxes[0].inflate(seed.boxes[0].width().max(1e-12));
    if let NewtonOutcome::Certified(o) = interval_newton_fixed(c, g, start) {
        if o.modulus.hi() < 1.0 {
            return CycleVerdict {
                status: ClaimStatus::verified(1),
                orbit: Some(o),
            };
        }
    }
    let search = CycleSearch {
        period: p,
        ..*search
    };
    let (ok, effort) = cover_region(c, &search, |m| m.lo() > 1.0);
    CycleVerdict {
        status: if ok {
            ClaimStatus::refuted(effort)
        } else {
            ClaimStatus::undetermined(effort)
        },
        orbit: None,
    }
}

/// Seed orbit for period `p` from a float critical-orbit computation at a
/// center parameter (the critical point is on the cycle there).
pub fn center_seed(center: Complex64, p: u32, radius: f64) -> OrbitEnclosure {
    let c = ComplexBox::point(center.re, center.im);
    OrbitEnclosure::from_point_box(c, ComplexBox::centered(0.0, 0.0, radius), p, false)
}

// ---------------------------------------------------------------------------
// multiplier of the unique fixed point

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiplierConfig {
    /// Region holding the tracked fixed point.
    pub region: ComplexBox,
    /// Even iterate whose fixed point is tracked.
    pub n: u32,
    /// ε-inflation attempts for the Krawczyk seed.
    pub attempts: u32,
}

/// Encloses the fixed point of `f_c^n` in `cfg.region` and its multiplier.
pub fn tracked_fixed_point(
    c: ComplexBox,
    cfg: &MultiplierConfig,
) -> Option<(ComplexBox, ComplexBox)> {
    let g = IterateSpec::new(cfg.n).ok()?;
    let (cx, cy) = c.midpoint();
    let (rx, ry) = cfg.region.midpoint();
    let guess = float_fixed_point(Complex64::new(cx, cy), cfg.n, Complex64::new(rx, ry), 60)?;
    let mut r = 1e-12 + 64.0 * c.width();
    for _ in 0..cfg.attempts.max(1) {
        let seed = ComplexBox::centered(guess.re, guess.im, r);
        if !cfg.region.contains(&seed) {
            return None;
        }
        if let NewtonOutcome::Certified(o) = interval_newton_fixed(c, g, seed) {
            let x = o.boxes[0];
            let (_, d) = even_iterate_with_derivative(c, x, cfg.n).ok()?;
            return Some((x, d));
        }
        r *= 4.0;
    }
    None
}

/// `True` when `Im((f_c^n)'(x_c))` provably excludes 0, i.e. no parameter in
/// the box has a real multiplier at the tracked point. Otherwise the box is
/// "possibly real" and reported `Undetermined`.
pub fn multiplier_im_excludes_zero(c: ComplexBox, cfg: &MultiplierConfig) -> ClaimStatus {
    match tracked_fixed_point(c, cfg) {
        Some((_, d)) if !d.im.contains(0.0) => ClaimStatus::verified(1),
        _ => ClaimStatus::undetermined(1),
    }
}

// ---------------------------------------------------------------------------
// disjointness

#[derive(Clone, Debug)]
pub struct DisjointnessReport {
    pub status: ClaimStatus,
    /// Multiplier-realness scan; its undetermined leaves are the yellow set.
    pub yellow_tree: ScanTree,
    /// Parabolic-exclusion scan; its undetermined leaves are the red set.
    pub red_tree: ScanTree,
    pub yellow_count: usize,
    pub red_count: usize,
}

fn undetermined_boxes(t: &ScanTree) -> Vec<(usize, ComplexBox)> {
    t.leaves
        .iter()
        .enumerate()
        .filter(|(_, l)| l.status.verdict == Verdict::Undetermined)
        .map(|(i, l)| (i, l.bbox))
        .collect()
}

/// Pairs `(i, j)` of intersecting closed boxes.
fn touching_pairs(a: &[(usize, ComplexBox)], b: &[(usize, ComplexBox)]) -> Vec<(usize, usize)> {
    let mut bs: Vec<&(usize, ComplexBox)> = b.iter().collect();
    bs.sort_by(|x, y| x.1.re.lo().total_cmp(&y.1.re.lo()));
    let mut out = Vec::new();
    for (i, ab) in a {
        // all b with re.lo <= ab.re.hi
        let end = bs.partition_point(|x| x.1.re.lo() <= ab.re.hi());
        for (j, bb) in &bs[..end] {
            if bb.intersects(ab) {
                out.push((*i, *j));
            }
        }
    }
    out
}

/// Certifies that the closure of the possibly-real-multiplier set and the
/// closure of the possibly-parabolic set are disjoint over `rect`.
///
/// Both scans run to `scan.max_depth`; leaves of one set that touch the other
/// are refined further, up to `refine_depth`, until separated.
pub fn disjointness_certificate(
    rect: ComplexBox,
    multiplier: &MultiplierConfig,
    cycles: &CycleSearch,
    scan: &ScanConfig,
    refine_depth: u32,
) -> Result<DisjointnessReport, VerifyError> {
    check_region(&rect)?;
    let mult_pred = |c: &ComplexBox| multiplier_im_excludes_zero(*c, multiplier);
    let para_pred = |c: &ComplexBox| parabolic_excluded(*c, cycles);
    let mut yellow = adaptive_scan(rect, "multiplier-real", mult_pred, scan);
    let mut red = adaptive_scan(rect, "parabolic", para_pred, scan);
    let verdict = loop {
        let ys = undetermined_boxes(&yellow);
        let rs = undetermined_boxes(&red);
        let pairs = touching_pairs(&ys, &rs);
        if pairs.is_empty() {
            break Verdict::True;
        }
        let mut yi: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut ri: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        yi.sort_unstable();
        yi.dedup();
        ri.sort_unstable();
        ri.dedup();
        let ny = refine_leaves(&mut yellow, &yi, mult_pred, refine_depth, scan);
        let nr = refine_leaves(&mut red, &ri, para_pred, refine_depth, scan);
        if ny + nr == 0 {
            break Verdict::Undetermined;
        }
    };
    let yellow_count = undetermined_boxes(&yellow).len();
    let red_count = undetermined_boxes(&red).len();
    Ok(DisjointnessReport {
        status: ClaimStatus {
            verdict,
            effort: yellow.total_effort().saturating_add(red.total_effort()),
        },
        yellow_tree: yellow,
        red_tree: red,
        yellow_count,
        red_count,
    })
}
