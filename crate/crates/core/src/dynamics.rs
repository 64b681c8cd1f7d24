//! Rigorous evaluation of `f_c(z) = conj(z)² + c`, its iterates and their
//! derivatives, plus Krawczyk certification of periodic orbits.

use num_complex::Complex64;
use thiserror::Error;

use crate::interval::{ComplexBox, Interval};
use crate::krawczyk::{krawczyk, Jacobian, KrawczykOutcome};

/// Escape radius; the filled Julia set of every parameter in the closed
/// 2-disk lies in the closed 2-disk.
pub const ESCAPE_RADIUS: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("iterate {step} left the finite range")]
    EscapedToInfinity { step: usize },
    #[error("iterate count must be at least 1")]
    ZeroIterate,
    #[error("derivative of f^n is only defined here for even n >= 2, got {0}")]
    NotEven(u32),
    #[error("conj-holomorphic form needs odd n, got {0}")]
    NotOdd(u32),
    #[error("empty box")]
    Empty,
}

/// A member of the family, `f_c` with `c` ranging over a box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapFamily {
    pub c: ComplexBox,
}

impl MapFamily {
    pub fn new(c: ComplexBox) -> Result<MapFamily, DynamicsError> {
        if c.is_empty() {
            Err(DynamicsError::Empty)
        } else {
            Ok(MapFamily { c })
        }
    }

    pub fn f(&self, z: ComplexBox) -> ComplexBox {
        eval_f(self.c, z)
    }

    pub fn f2(&self, z: ComplexBox) -> ComplexBox {
        eval_f2(self.c, z)
    }
}

/// `conj(z)² + c`.
#[inline]
pub fn eval_f(c: ComplexBox, z: ComplexBox) -> ComplexBox {
    // conj(z)² = conj(z²)
    z.sqr().conj() + c
}

/// The holomorphic second iterate `(z² + conj(c))² + c`.
#[inline]
pub fn eval_f2(c: ComplexBox, z: ComplexBox) -> ComplexBox {
    (z.sqr() + c.conj()).sqr() + c
}

/// `f_c^n(z)` by repeated application.
pub fn eval_fn(c: ComplexBox, z: ComplexBox, n: u32) -> ComplexBox {
    let mut w = z;
    for _ in 0..n / 2 {
        w = eval_f2(c, w);
    }
    if n % 2 == 1 {
        w = eval_f(c, w);
    }
    w
}

/// Boxes enclosing `f_c^k(z0)` for `k = 0..=n`.
pub fn iterate(c: ComplexBox, z0: ComplexBox, n: usize) -> Result<Vec<ComplexBox>, DynamicsError> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(z0);
    let mut z = z0;
    for step in 1..=n {
        z = eval_f(c, z);
        if !z.is_finite() {
            return Err(DynamicsError::EscapedToInfinity { step });
        }
        out.push(z);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EscapeStatus {
    /// Divergence certified at this iterate.
    Escaped(usize),
    /// No escape within this many iterates and the enclosures stayed tight.
    Bounded(usize),
    /// The enclosure lost too much precision to decide.
    Unknown,
}

/// Certified escape test for the orbit of `z0`.
///
/// Escape at step `k` is certified when `|z_k| > 2` and `|z_k| > |c|` hold for
/// the whole box: then `|f(z)| >= |z|² - |c| > |z|(|z| - 1)`, so the modulus
/// grows geometrically from there on.
pub fn escape_test(c: ComplexBox, z0: ComplexBox, maxiter: usize) -> EscapeStatus {
    let cmax = c.abs().hi();
    let mut z = z0;
    for k in 0..=maxiter {
        let r = z.abs();
        if r.lo() > ESCAPE_RADIUS && r.lo() > cmax {
            return EscapeStatus::Escaped(k);
        }
        if !z.is_finite() || z.width() > 4.0 * ESCAPE_RADIUS {
            return EscapeStatus::Unknown;
        }
        if k < maxiter {
            z = eval_f(c, z);
        }
    }
    EscapeStatus::Bounded(maxiter)
}

/// `(f_c^{2k})'(z)` via the chain rule on `f_c²`, whose derivative is
/// `4w(w² + conj(c))`.
pub fn holo_derivative(
    c: ComplexBox,
    z: ComplexBox,
    two_k: u32,
) -> Result<ComplexBox, DynamicsError> {
    let (_, d) = even_iterate_with_derivative(c, z, two_k)?;
    Ok(d)
}

/// `(f_c^{2k}(z), (f_c^{2k})'(z))`.
pub fn even_iterate_with_derivative(
    c: ComplexBox,
    z: ComplexBox,
    two_k: u32,
) -> Result<(ComplexBox, ComplexBox), DynamicsError> {
    if two_k == 0 || two_k % 2 == 1 {
        return Err(DynamicsError::NotEven(two_k));
    }
    let cb = c.conj();
    let mut w = z;
    let mut d = ComplexBox::point(1.0, 0.0);
    for _ in 0..two_k / 2 {
        let inner = w.sqr() + cb;
        d = d * (w * inner).scale2(2);
        w = inner.sqr() + c;
    }
    Ok((w, d))
}

/// `∏ 2|z_i|` over an orbit. The odd-period multiplier is its square.
pub fn antiholo_modulus(orbit: &[ComplexBox]) -> Interval {
    orbit
        .iter()
        .fold(Interval::ONE, |acc, z| acc * z.abs().scale2(1))
}

/// `H` with `f_c^n(z) = conj(H(z))` for odd `n`; `H` is holomorphic in `z`.
///
/// Writing `n = 2m + 1`, `H(z) = (f_c^{2m}(z))² + conj(c)`.
#[derive(Clone, Copy, Debug)]
pub struct HolomorphicForm {
    pub c: ComplexBox,
    pub n: u32,
}

pub fn conj_holomorphic_form(c: ComplexBox, n: u32) -> Result<HolomorphicForm, DynamicsError> {
    if n.is_multiple_of(2) {
        return Err(DynamicsError::NotOdd(n));
    }
    Ok(HolomorphicForm { c, n })
}

impl HolomorphicForm {
    pub fn eval(&self, z: ComplexBox) -> ComplexBox {
        self.eval_with_derivative(z).0
    }

    /// `(H(z), H'(z))`.
    pub fn eval_with_derivative(&self, z: ComplexBox) -> (ComplexBox, ComplexBox) {
        let cb = self.c.conj();
        let (w, d) = if self.n == 1 {
            (z, ComplexBox::point(1.0, 0.0))
        } else {
            even_iterate_with_derivative(self.c, z, self.n - 1).expect("n - 1 is even")
        };
        (w.sqr() + cb, (w * d).scale2(1))
    }
}

/// Which iterate a fixed-point equation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterateSpec {
    pub n: u32,
}

impl IterateSpec {
    pub fn new(n: u32) -> Result<IterateSpec, DynamicsError> {
        if n == 0 {
            Err(DynamicsError::ZeroIterate)
        } else {
            Ok(IterateSpec { n })
        }
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// Residual `f^n(z) - z` packed as a box.
    pub fn residual(&self, c: ComplexBox, z: ComplexBox) -> ComplexBox {
        eval_fn(c, z, self.n) - z
    }

    /// Real Jacobian of `f^n(z) - z` over the box.
    pub fn jacobian(&self, c: ComplexBox, z: ComplexBox) -> Jacobian {
        if self.is_even() {
            let (_, d) = even_iterate_with_derivative(c, z, self.n).expect("even");
            Jacobian::holomorphic(d).minus_identity()
        } else {
            let (_, d) = HolomorphicForm { c, n: self.n }.eval_with_derivative(z);
            Jacobian::antiholomorphic(d).minus_identity()
        }
    }
}

/// A certified periodic orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitEnclosure {
    pub period: u32,
    pub boxes: Vec<ComplexBox>,
    /// Encloses `∏ 2|z_i|`.
    pub modulus: Interval,
    pub unique: bool,
}

impl OrbitEnclosure {
    /// Builds the orbit boxes `f^i(z0)` for `i < period`.
    pub fn from_point_box(
        c: ComplexBox,
        z0: ComplexBox,
        period: u32,
        unique: bool,
    ) -> OrbitEnclosure {
        let mut boxes = Vec::with_capacity(period as usize);
        let mut z = z0;
        for _ in 0..period {
            boxes.push(z);
            z = eval_f(c, z);
        }
        let modulus = antiholo_modulus(&boxes);
        OrbitEnclosure {
            period,
            boxes,
            modulus,
            unique,
        }
    }

    /// Enclosure of the multiplier `(f^{2p})'` for odd `p`, which equals the
    /// squared modulus product and is non-negative.
    pub fn odd_multiplier(&self) -> Interval {
        self.modulus.sqr()
    }

    /// The image of the last box under `f` meets the first box, and so on
    /// around the cycle.
    pub fn is_consistent(&self, c: ComplexBox) -> bool {
        let p = self.boxes.len();
        (0..p).all(|i| eval_f(c, self.boxes[i]).intersects(&self.boxes[(i + 1) % p]))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NewtonOutcome {
    Certified(OrbitEnclosure),
    NoneCertified,
    Unknown,
}

/// Certifies a fixed point of `f_c^n` in `seed` by the Krawczyk operator.
///
/// Even `n` is one complex equation; odd `n` is the conj-linear real 2-system.
pub fn interval_newton_fixed(c: ComplexBox, g: IterateSpec, seed: ComplexBox) -> NewtonOutcome {
    match krawczyk(seed, |m| g.residual(c, m), |x| g.jacobian(c, x), 8, 8) {
        KrawczykOutcome::Unique(b) => {
            NewtonOutcome::Certified(OrbitEnclosure::from_point_box(c, b, g.n, true))
        }
        KrawczykOutcome::Excluded => NewtonOutcome::NoneCertified,
        KrawczykOutcome::Unknown | KrawczykOutcome::Singular => NewtonOutcome::Unknown,
    }
}

/// Like [`interval_newton_fixed`] but bisects undecided seeds down to
/// `depth` levels. Returns every certified orbit, or `None` if some piece
/// stayed undecided.
pub fn fixed_points_in(
    c: ComplexBox,
    g: IterateSpec,
    seed: ComplexBox,
    depth: u32,
) -> Option<Vec<OrbitEnclosure>> {
    let mut found = Vec::new();
    let mut stack = vec![(seed, 0u32)];
    while let Some((b, d)) = stack.pop() {
        match interval_newton_fixed(c, g, b) {
            NewtonOutcome::Certified(o) => found.push(o),
            NewtonOutcome::NoneCertified => {}
            NewtonOutcome::Unknown => {
                if !eval_fn(c, b, g.n).intersects(&b) {
                    continue;
                }
                if d >= depth {
                    return None;
                }
                let (l, r) = b.bisect();
                stack.push((r, d + 1));
                stack.push((l, d + 1));
            }
        }
    }
    Some(found)
}

// ---- plain floating point helpers (non-rigorous) ----

#[inline]
pub fn f_float(c: Complex64, z: Complex64) -> Complex64 {
    z.conj() * z.conj() + c
}

/// `f^n(z)` together with its Wirtinger derivatives `∂/∂z` and `∂/∂z̄`.
pub fn float_iterate_wirtinger(
    c: Complex64,
    z: Complex64,
    n: u32,
) -> (Complex64, Complex64, Complex64) {
    let mut w = z;
    let (mut dz, mut dzb) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    for _ in 0..n {
        let wb = w.conj();
        // w' = wb² + c: ∂w'/∂z = 2 wb ∂wb/∂z = 2 wb conj(∂w/∂z̄)
        let ndz = 2.0 * wb * dzb.conj();
        let ndzb = 2.0 * wb * dz.conj();
        w = wb * wb + c;
        dz = ndz;
        dzb = ndzb;
    }
    (w, dz, dzb)
}

/// `f_c^n(0)` with Wirtinger derivatives in the parameter.
pub fn float_critical_orbit_wirtinger(c: Complex64, n: u32) -> (Complex64, Complex64, Complex64) {
    let mut w = Complex64::new(0.0, 0.0);
    let (mut dc, mut dcb) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for _ in 0..n {
        let wb = w.conj();
        let ndc = 2.0 * wb * dcb.conj() + 1.0;
        let ndcb = 2.0 * wb * dc.conj();
        w = wb * wb + c;
        dc = ndc;
        dcb = ndcb;
    }
    (w, dc, dcb)
}

fn solve_wirtinger(f: Complex64, a: Complex64, b: Complex64) -> Option<Complex64> {
    // Real Jacobian columns: ∂/∂x = a + b, ∂/∂y = i(a - b).
    let dx = a + b;
    let dy = Complex64::new(0.0, 1.0) * (a - b);
    let det = dx.re * dy.im - dy.re * dx.im;
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let sx = (f.re * dy.im - dy.re * f.im) / det;
    let sy = (dx.re * f.im - f.re * dx.im) / det;
    Some(Complex64::new(sx, sy))
}

/// Floating Newton for a center: `f_c^period(0) = 0` near `guess`.
pub fn float_center(period: u32, guess: Complex64, steps: usize) -> Option<Complex64> {
    let mut c = guess;
    for _ in 0..steps {
        let (w, a, b) = float_critical_orbit_wirtinger(c, period);
        let s = solve_wirtinger(w, a, b)?;
        c -= s;
        if !c.re.is_finite() || !c.im.is_finite() {
            return None;
        }
        if s.norm() < 1e-17 * (1.0 + c.norm()) {
            break;
        }
    }
    let (w, _, _) = float_critical_orbit_wirtinger(c, period);
    (w.norm() < 1e-10).then_some(c)
}

/// Floating Newton for a fixed point of `f_c^n` near `guess`.
pub fn float_fixed_point(
    c: Complex64,
    n: u32,
    guess: Complex64,
    steps: usize,
) -> Option<Complex64> {
    let mut z = guess;
    for _ in 0..steps {
        let (w, a, b) = float_iterate_wirtinger(c, z, n);
        let s = solve_wirtinger(w - z, a - 1.0, b)?;
        z -= s;
        if !z.re.is_finite() || !z.im.is_finite() {
            return None;
        }
        if s.norm() < 1e-17 * (1.0 + z.norm()) {
            break;
        }
    }
    let (w, _, _) = float_iterate_wirtinger(c, z, n);
    ((w - z).norm() < 1e-10).then_some(z)
}

/// Non-rigorous orbit of the critical value; `true` if it stays in `|z| <= 2`
/// for `steps` iterates.
pub fn float_critical_orbit_bounded(c: Complex64, steps: usize) -> bool {
    let mut z = Complex64::new(0.0, 0.0);
    for _ in 0..steps {
        z = f_float(c, z);
        if z.norm_sqr() > 4.0 {
            return false;
        }
    }
    true
}
