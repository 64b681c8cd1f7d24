//! Browser bindings: escape-time images, a certified scan preview and the
//! period-3 centers report.

use wasm_bindgen::prelude::*;

use tricorn_core::combinatorics::{
    case_ii1_excluded, rotation_consistent, solve_period3_centers, CenterLabel,
};
use tricorn_core::render::{rasterize_scan, render_escape, Palette, RenderMode};
use tricorn_core::scan::{adaptive_scan, component_rollup, ScanConfig};
use tricorn_core::verify::{parabolic_excluded, CycleSearch, Verdict};
use tricorn_core::ComplexBox;

const R: [f64; 4] = [-1.73875, -1.73825, 0.01555, 0.01605];
const ANCHOR: (f64, f64) = (-1.738467707542, 0.015771142412);

fn rect(v: [f64; 4]) -> Result<ComplexBox, JsError> {
    if !v.iter().all(|x| x.is_finite()) || v[0] >= v[1] || v[2] >= v[3] {
        return Err(JsError::new("region needs finite endpoints with lo < hi"));
    }
    Ok(ComplexBox::from_bounds(v[0], v[1], v[2], v[3]).expect("ordered"))
}

/// RGBA escape-time image. `mode`: 0 tricorn, 1 Mandelbrot, 2 Julia at `(jre, jim)`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn render(
    width: usize,
    height: usize,
    re_lo: f64,
    re_hi: f64,
    im_lo: f64,
    im_hi: f64,
    maxiter: u32,
    mode: u8,
    jre: f64,
    jim: f64,
) -> Result<Vec<u8>, JsError> {
    if width == 0 || height == 0 || maxiter == 0 {
        return Err(JsError::new("size and maxiter must be positive"));
    }
    let mode = match mode {
        0 => RenderMode::Tricorn,
        1 => RenderMode::Mandelbrot,
        2 => RenderMode::Julia { re: jre, im: jim },
        _ => return Err(JsError::new("mode must be 0, 1 or 2")),
    };
    let region = rect([re_lo, re_hi, im_lo, im_hi])?;
    Ok(render_escape(&region, width, height, maxiter, mode).to_rgba())
}

/// Result of a parabolic-exclusion scan of the reference rectangle.
#[wasm_bindgen]
pub struct ScanPreview {
    rgba: Vec<u8>,
    verified: usize,
    undetermined: usize,
    components: usize,
}

#[wasm_bindgen]
impl ScanPreview {
    #[wasm_bindgen(getter)]
    pub fn rgba(&self) -> Vec<u8> {
        self.rgba.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn verified(&self) -> usize {
        self.verified
    }

    #[wasm_bindgen(getter)]
    pub fn undetermined(&self) -> usize {
        self.undetermined
    }

    #[wasm_bindgen(getter)]
    pub fn components(&self) -> usize {
        self.components
    }
}

/// Scans the reference rectangle for "no period-9 cycle near the critical
/// point has multiplier one" down to `depth` (capped at 8) and rasterizes it:
/// cyan where certified, red where undetermined.
#[wasm_bindgen]
pub fn parabolic_preview(depth: u32, width: usize, height: usize) -> Result<ScanPreview, JsError> {
    if width == 0 || height == 0 {
        return Err(JsError::new("size must be positive"));
    }
    let search = CycleSearch {
        period: 9,
        region: ComplexBox::from_bounds(-0.03, 0.03, -0.03, 0.03).expect("ordered"),
        max_depth: 30,
    };
    let config = ScanConfig {
        max_depth: depth.min(8),
        workers: 1,
        ..ScanConfig::default()
    };
    let tree = adaptive_scan(
        rect(R)?,
        "parabolic",
        |c: &ComplexBox| parabolic_excluded(*c, &search),
        &config,
    );
    let img = rasterize_scan(&tree, &Palette::PARABOLIC, width, height);
    Ok(ScanPreview {
        rgba: img.to_rgba(),
        verified: tree.count(Verdict::True),
        undetermined: tree.count(Verdict::Undetermined),
        components: component_rollup(&tree, Some(ANCHOR)).len(),
    })
}

/// Plain-text report of the four parameters with `f_c^3(0) = 0`.
#[wasm_bindgen]
pub fn centers_report() -> Result<String, JsError> {
    let centers = solve_period3_centers().map_err(|e| JsError::new(&e.to_string()))?;
    let mut out = String::new();
    for s in &centers {
        let name = match s.label {
            CenterLabel::Zero => "0",
            CenterLabel::Airplane => "c*",
            CenterLabel::AirplaneOmega => "ω c*",
            CenterLabel::AirplaneOmega2 => "ω² c*",
        };
        out.push_str(&format!(
            "{name:>6}: re [{:.17e}, {:.17e}] im [{:.17e}, {:.17e}] period-check {}\n",
            s.c.re.lo(),
            s.c.re.hi(),
            s.c.im.lo(),
            s.c.im.hi(),
            s.check_period()
        ));
    }
    out.push_str(&format!(
        "rotation consistent: {}\n",
        rotation_consistent(&centers)
    ));
    let excluded = case_ii1_excluded().map_err(|e| JsError::new(&e.to_string()))?;
    out.push_str(&format!("branch s³ - 3s + 3 = 0 excluded: {excluded}\n"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_size() {
        let px = render(8, 4, -2.0, 2.0, -2.0, 2.0, 20, 0, 0.0, 0.0).unwrap();
        assert_eq!(px.len(), 8 * 4 * 4);
        assert!(px.chunks(4).all(|p| p[3] == 255));
    }

    #[test]
    fn preview_counts() {
        let p = parabolic_preview(3, 16, 16).unwrap();
        assert_eq!(p.rgba().len(), 16 * 16 * 4);
        assert!(p.verified() + p.undetermined() > 0);
    }

    #[test]
    fn report_lists_four_centers() {
        let r = centers_report().unwrap();
        assert_eq!(r.matches("period-check true").count(), 4);
        assert!(r.contains("rotation consistent: true"));
    }
}
