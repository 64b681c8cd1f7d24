//! Escape-time images and scan rasterization, written as binary PPM.
//!
//! Escape-time rendering is plain floating point; only the rasterized scans
//! carry certificates.

use std::io::{self, Write};

use crate::interval::ComplexBox;
use crate::scan::{node_box, ScanTree};
use crate::verify::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageBuffer {
    pub width: usize,
    pub height: usize,
    /// Row-major RGB, top row first.
    pub pixels: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: usize, height: usize) -> ImageBuffer {
        ImageBuffer {
            width,
            height,
            pixels: vec![0; width * height * 3],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let i = 3 * (y * self.width + x);
        self.pixels[i..i + 3].copy_from_slice(&rgb);
    }

    /// RGBA copy, as a canvas `ImageData` wants it.
    pub fn to_rgba(&self) -> Vec<u8> {
        self.pixels
            .chunks_exact(3)
            .flat_map(|p| [p[0], p[1], p[2], 255])
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RenderMode {
    /// Parameter plane of `conj(z)² + c`, orbit started at `c`.
    Tricorn,
    /// Parameter plane of `z² + c`, orbit started at `c`.
    Mandelbrot,
    /// Dynamical plane of `conj(z)² + c` for a fixed `c`.
    Julia { re: f64, im: f64 },
}

/// Pixel-center coordinates along one axis, mirrored exactly about the
/// interval midpoint: pixel `k` and pixel `n-1-k` get exactly opposite
/// offsets.
fn pixel_centers(lo: f64, hi: f64, n: usize, descending: bool) -> Vec<f64> {
    let mid = 0.5 * lo + 0.5 * hi;
    let step = (hi - lo) / n as f64;
    (0..n)
        .map(|k| {
            let off = (k as f64 + 0.5 - 0.5 * n as f64) * step;
            if descending {
                mid - off
            } else {
                mid + off
            }
        })
        .collect()
}

/// Iterations until `|z| > 2`, or `None` if the orbit stays within
/// `maxiter` steps.
#[inline]
pub fn escape_time(mode: RenderMode, x: f64, y: f64, maxiter: u32) -> Option<u32> {
    let (mut zr, mut zi, cr, ci, conj) = match mode {
        RenderMode::Tricorn => (x, y, x, y, true),
        RenderMode::Mandelbrot => (x, y, x, y, false),
        RenderMode::Julia { re, im } => (x, y, re, im, true),
    };
    let sign = if conj { -1.0 } else { 1.0 };
    for k in 0..maxiter {
        let (r2, i2) = (zr * zr, zi * zi);
        if r2 + i2 > 4.0 {
            return Some(k);
        }
        let t = zr * zi;
        zi = sign * (t + t) + ci;
        zr = r2 - i2 + cr;
    }
    if zr * zr + zi * zi > 4.0 {
        Some(maxiter)
    } else {
        None
    }
}

fn escape_color(k: u32, maxiter: u32) -> [u8; 3] {
    let t = (k as f64 / maxiter.max(1) as f64).sqrt();
    let r = (9.0 * (1.0 - t) * t * t * t * 255.0).min(255.0) as u8;
    let g = (15.0 * (1.0 - t) * (1.0 - t) * t * t * 255.0).min(255.0) as u8;
    let b = (8.5 * (1.0 - t) * (1.0 - t) * (1.0 - t) * t * 255.0 + 40.0).min(255.0) as u8;
    [r, g, b]
}

pub const INTERIOR: [u8; 3] = [0, 0, 0];

/// Escape-time image of `region`; interior pixels are black.
pub fn render_escape(
    region: &ComplexBox,
    width: usize,
    height: usize,
    maxiter: u32,
    mode: RenderMode,
) -> ImageBuffer {
    let xs = pixel_centers(region.re.lo(), region.re.hi(), width, false);
    let ys = pixel_centers(region.im.lo(), region.im.hi(), height, true);
    let row = |y: f64, out: &mut [u8]| {
        for (i, &x) in xs.iter().enumerate() {
            let rgb = match escape_time(mode, x, y, maxiter) {
                Some(k) => escape_color(k, maxiter),
                None => INTERIOR,
            };
            out[3 * i..3 * i + 3].copy_from_slice(&rgb);
        }
    };
    let mut img = ImageBuffer::new(width, height);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        img.pixels
            .par_chunks_mut(3 * width.max(1))
            .zip(ys.par_iter())
            .for_each(|(out, &y)| row(y, out));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (out, &y) in img.pixels.chunks_mut(3 * width.max(1)).zip(ys.iter()) {
            row(y, out);
        }
    }
    img
}

/// Colors for scan leaves by status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Palette {
    pub verified: [u8; 3],
    pub refuted: [u8; 3],
    pub undetermined: [u8; 3],
}

pub const CYAN: [u8; 3] = [0, 255, 255];
pub const GREEN: [u8; 3] = [0, 200, 0];
pub const BLUE: [u8; 3] = [0, 0, 200];
pub const YELLOW: [u8; 3] = [255, 215, 0];
pub const RED: [u8; 3] = [200, 0, 0];

impl Palette {
    pub const STANDARD: Palette = Palette {
        verified: CYAN,
        refuted: GREEN,
        undetermined: BLUE,
    };
    /// Possibly-real multiplier boxes in yellow.
    pub const MULTIPLIER: Palette = Palette {
        verified: CYAN,
        refuted: GREEN,
        undetermined: YELLOW,
    };
    /// Possibly-parabolic boxes in red.
    pub const PARABOLIC: Palette = Palette {
        verified: CYAN,
        refuted: GREEN,
        undetermined: RED,
    };
    /// Verified boxes in green, refuted in cyan.
    pub const SWAPPED: Palette = Palette {
        verified: GREEN,
        refuted: CYAN,
        undetermined: BLUE,
    };

    pub fn color(&self, v: Verdict) -> [u8; 3] {
        match v {
            Verdict::True => self.verified,
            Verdict::False => self.refuted,
            Verdict::Undetermined => self.undetermined,
        }
    }

    pub fn for_claim(claim: &str) -> Palette {
        match claim {
            "multiplier-real" => Palette::MULTIPLIER,
            "parabolic" => Palette::PARABOLIC,
            "count" => Palette::SWAPPED,
            _ => Palette::STANDARD,
        }
    }
}

/// Deepest leaf whose closed box contains the point; ties go to the first
/// leaf in depth-first order.
pub fn locate_leaf(tree: &ScanTree, x: f64, y: f64) -> Option<usize> {
    use std::collections::HashMap;
    let by_addr: HashMap<(u32, u64), usize> = tree
        .leaves
        .iter()
        .enumerate()
        .map(|(i, l)| ((l.depth, l.index), i))
        .collect();
    locate_with(tree, &by_addr, x, y)
}

fn locate_with(
    tree: &ScanTree,
    by_addr: &std::collections::HashMap<(u32, u64), usize>,
    x: f64,
    y: f64,
) -> Option<usize> {
    let max_depth = tree.max_leaf_depth();
    let mut best: Option<(u32, usize)> = None;
    let mut stack = vec![(0u32, 0u64, tree.root)];
    while let Some((d, idx, b)) = stack.pop() {
        if !b.contains_point(x, y) {
            continue;
        }
        if let Some(&i) = by_addr.get(&(d, idx)) {
            let better = match best {
                None => true,
                Some((bd, bi)) => d > bd || (d == bd && i < bi),
            };
            if better {
                best = Some((d, i));
            }
            continue;
        }
        if d >= max_depth {
            continue;
        }
        for (q, child) in b.quadrants().into_iter().enumerate().rev() {
            stack.push((d + 1, idx * 4 + q as u64, child));
        }
    }
    debug_assert!(best
        .is_none_or(|(d, i)| node_box(&tree.root, d, tree.leaves[i].index) == tree.leaves[i].bbox));
    best.map(|(_, i)| i)
}

/// Paints each pixel with the color of the deepest leaf containing its center.
pub fn rasterize_scan(
    tree: &ScanTree,
    palette: &Palette,
    width: usize,
    height: usize,
) -> ImageBuffer {
    use std::collections::HashMap;
    let by_addr: HashMap<(u32, u64), usize> = tree
        .leaves
        .iter()
        .enumerate()
        .map(|(i, l)| ((l.depth, l.index), i))
        .collect();
    let xs = pixel_centers(tree.root.re.lo(), tree.root.re.hi(), width, false);
    let ys = pixel_centers(tree.root.im.lo(), tree.root.im.hi(), height, true);
    let mut img = ImageBuffer::new(width, height);
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            if let Some(l) = locate_with(tree, &by_addr, x, y) {
                img.set(i, j, palette.color(tree.leaves[l].status.verdict));
            }
        }
    }
    img
}

/// Binary PPM: `P6\n<w> <h>\n255\n` then raw RGB.
pub fn write_ppm<W: Write>(img: &ImageBuffer, sink: &mut W) -> io::Result<()> {
    write!(sink, "P6\n{} {}\n255\n", img.width, img.height)?;
    sink.write_all(&img.pixels)?;
    Ok(())
}

/// Pixel-center parameter of pixel `(i, j)`, matching the renderer's grid.
pub fn pixel_center(
    region: &ComplexBox,
    width: usize,
    height: usize,
    i: usize,
    j: usize,
) -> (f64, f64) {
    let xs = pixel_centers(region.re.lo(), region.re.hi(), width, false);
    let ys = pixel_centers(region.im.lo(), region.im.hi(), height, true);
    (xs[i], ys[j])
}
