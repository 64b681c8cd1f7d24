//! Subcommand bodies. Each returns the process exit status.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use num_complex::Complex64;

use tricorn_core::combinatorics::{
    case_ii1_excluded, rotation_consistent, solve_period3_centers, CenterLabel,
};
use tricorn_core::dynamics::{float_center, IterateSpec};
use tricorn_core::render::{
    rasterize_scan, render_escape, write_ppm, ImageBuffer, Palette, RenderMode, CYAN, RED, YELLOW,
};
use tricorn_core::scan::{
    adaptive_scan, component_rollup, node_box, serialize, ParamCertificate, ScanConfig, ScanTree,
};
use tricorn_core::verify::{
    attracting_cycle_box, boundary_disjoint, center_seed, count_fixed_points,
    disjointness_certificate, multiplier_im_excludes_zero, parabolic_excluded, qlike_certificate,
    unique_fixed_point_status, BoundaryConfig, ClaimStatus, ContourConfig, CycleSearch,
    MultiplierConfig, Verdict, ANCHOR_ASSUMPTION,
};
use tricorn_core::ComplexBox;

use crate::config::{ConfigError, RunConfig};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Verified = 0,
    NotVerified = 1,
    Usage = 2,
    Unacknowledged = 3,
}

impl Exit {
    pub fn from_verdict(v: Verdict) -> Exit {
        if v == Verdict::True {
            Exit::Verified
        } else {
            Exit::NotVerified
        }
    }
}

fn scan_config(cfg: &RunConfig) -> Result<ScanConfig, ConfigError> {
    let max_depth = cfg.uint("max_depth")?;
    if max_depth > tricorn_core::scan::MAX_SUPPORTED_DEPTH {
        return Err(ConfigError(format!(
            "max_depth: at most {} is supported",
            tricorn_core::scan::MAX_SUPPORTED_DEPTH
        )));
    }
    Ok(ScanConfig {
        min_depth: if cfg.raw("min_depth").is_some() {
            cfg.uint("min_depth")?
        } else {
            0
        },
        max_depth,
        min_width: if cfg.raw("min_width").is_some() {
            cfg.float("min_width")?
        } else {
            0.0
        },
        workers: cfg.workers()?,
    })
}

fn boundary_config(cfg: &RunConfig) -> Result<BoundaryConfig, ConfigError> {
    Ok(BoundaryConfig {
        initial_segments: cfg.positive("boundary_segments")?,
        max_depth: cfg.uint("boundary_depth")?,
    })
}

fn contour_config(cfg: &RunConfig) -> Result<ContourConfig, ConfigError> {
    Ok(ContourConfig {
        tolerance: cfg.positive_float("tolerance")?,
        max_depth: cfg.uint("contour_depth")?,
        ..ContourConfig::default()
    })
}

fn cycle_search(cfg: &RunConfig) -> Result<CycleSearch, ConfigError> {
    Ok(CycleSearch {
        period: cfg.positive("period")?,
        region: cfg.rect("search_rect")?,
        max_depth: cfg.uint("cover_depth")?,
    })
}

fn multiplier_config(cfg: &RunConfig) -> Result<MultiplierConfig, ConfigError> {
    let n = cfg.positive("iterate")?;
    if n % 2 != 0 {
        return Err(ConfigError(format!(
            "iterate: the tracked fixed point needs an even iterate, got {n}"
        )));
    }
    Ok(MultiplierConfig {
        region: cfg.rect("dyn_rect")?,
        n,
        attempts: 8,
    })
}

fn even_iterate(cfg: &RunConfig) -> Result<IterateSpec, ConfigError> {
    let n = cfg.positive("iterate")?;
    if n % 2 != 0 {
        return Err(ConfigError(format!(
            "iterate: counting needs an even iterate, got {n}"
        )));
    }
    Ok(IterateSpec::new(n).expect("positive"))
}

fn odd_iterate(cfg: &RunConfig) -> Result<u32, ConfigError> {
    let n = cfg.positive("iterate")?;
    if n % 2 == 0 {
        return Err(ConfigError(format!(
            "iterate: the quadratic-like check needs an odd iterate, got {n}"
        )));
    }
    Ok(n)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn write_image(path: &Path, img: &ImageBuffer) -> Result<()> {
    let mut w = create(path)?;
    write_ppm(img, &mut w)?;
    w.flush()?;
    Ok(())
}

fn certificate(
    tree: &ScanTree,
    cfg: &RunConfig,
    assumptions: Vec<String>,
    acknowledged: bool,
) -> ParamCertificate {
    ParamCertificate::from_tree(tree, cfg.echo(), assumptions, acknowledged)
}

fn summary(tree: &ScanTree) -> String {
    format!(
        "leaves {} (T {} F {} U {}), deepest {}",
        tree.leaves.len(),
        tree.count(Verdict::True),
        tree.count(Verdict::False),
        tree.count(Verdict::Undetermined),
        tree.max_leaf_depth()
    )
}

fn emit(cert: &ParamCertificate, tree: &ScanTree, cfg: &RunConfig, path: &Path) -> Result<()> {
    write_text(path, &serialize(cert))?;
    println!("certificate: {}", path.display());
    if let Some(img) = cfg.raw("image") {
        let (w, h) = cfg.size("image_size")?;
        write_image(
            Path::new(img),
            &rasterize_scan(tree, &Palette::for_claim(&tree.claim), w, h),
        )?;
        println!("image: {img}");
    }
    Ok(())
}

pub fn verify_qlike(cfg: &RunConfig) -> Result<Exit> {
    let rect = cfg.rect("param_rect")?;
    let u = cfg.rect("dyn_rect")?;
    let n = odd_iterate(cfg)?;
    let anchor = cfg.point("anchor")?;
    let scan = scan_config(cfg)?;
    let boundary = boundary_config(cfg)?;
    let contour = contour_config(cfg)?;
    if !rect.contains_point(anchor.0, anchor.1) {
        return Err(ConfigError("anchor: must lie in param_rect".into()).into());
    }
    if !cfg.flag("acknowledge_assumptions")? {
        eprintln!("error: this claim rests on a non-rigorous assumption:");
        eprintln!("  {ANCHOR_ASSUMPTION}");
        eprintln!("rerun with --acknowledge-assumptions to accept it");
        return Ok(Exit::Unacknowledged);
    }
    let t = Instant::now();
    let report = qlike_certificate(rect, u, n, anchor, &scan, &boundary, &contour)?;
    let mut cert = certificate(&report.tree, cfg, report.assumptions.clone(), true);
    if cert.rollup == Verdict::True && report.status.verdict != Verdict::True {
        cert.rollup = Verdict::Undetermined;
    }
    println!(
        "claim: f^{n} restricts to a quadratic-like map on the given domain for every parameter"
    );
    println!("boundary scan: {}", summary(&report.tree));
    println!("anchor orbit stays in domain: {}", report.anchor_bounded);
    match report.preimages {
        Some(k) => println!("preimages of 0 at anchor: {k}"),
        None => println!("preimages of 0 at anchor: undetermined"),
    }
    println!("rollup: {}", cert.rollup.token());
    println!("elapsed: {:.3}s", t.elapsed().as_secs_f64());
    emit(&cert, &report.tree, cfg, &output(cfg))?;
    Ok(Exit::from_verdict(cert.rollup))
}

fn output(cfg: &RunConfig) -> PathBuf {
    PathBuf::from(cfg.raw("output").unwrap_or("out.cert"))
}

pub fn verify_count(cfg: &RunConfig) -> Result<Exit> {
    let rect = cfg.rect("param_rect")?;
    let region = cfg.rect("dyn_rect")?;
    let g = even_iterate(cfg)?;
    let scan = scan_config(cfg)?;
    let contour = contour_config(cfg)?;
    let t = Instant::now();
    let tree = adaptive_scan(
        rect,
        "count",
        |c: &ComplexBox| unique_fixed_point_status(*c, region, g, &contour),
        &scan,
    );
    let (mx, my) = rect.midpoint();
    let mid = count_fixed_points(ComplexBox::point(mx, my), region, g, &contour)?;
    let cert = certificate(&tree, cfg, vec![], false);
    println!(
        "claim: f^{} has exactly one fixed point in the region for every parameter",
        g.n
    );
    println!("scan: {}", summary(&tree));
    match (mid.count, mid.enclosure) {
        (Some(k), Some(e)) => println!(
            "count at parameter midpoint: {k} (integral re [{:e}, {:e}] im [{:e}, {:e}])",
            e.value.re.lo(),
            e.value.re.hi(),
            e.value.im.lo(),
            e.value.im.hi()
        ),
        _ => println!("count at parameter midpoint: undetermined"),
    }
    println!("rollup: {}", cert.rollup.token());
    println!("elapsed: {:.3}s", t.elapsed().as_secs_f64());
    emit(&cert, &tree, cfg, &output(cfg))?;
    Ok(Exit::from_verdict(cert.rollup))
}

pub fn verify_arcs(cfg: &RunConfig) -> Result<Exit> {
    let rect = cfg.rect("param_rect")?;
    let search = cycle_search(cfg)?;
    let anchor = cfg.point("anchor")?;
    let scan = scan_config(cfg)?;
    let t = Instant::now();
    let tree = adaptive_scan(
        rect,
        "parabolic",
        |c: &ComplexBox| parabolic_excluded(*c, &search),
        &scan,
    );
    let comps = component_rollup(&tree, Some(anchor));
    let p = search.period;

    let center = float_center(p, Complex64::new(anchor.0, anchor.1), 60)
        .filter(|c| rect.contains_point(c.re, c.im))
        .ok_or_else(|| anyhow::anyhow!("no center of period {p} found near the anchor"))?;
    let seed = center_seed(center, p, 1e-9);
    let center_box = ComplexBox::centered(center.re, center.im, 1e-12);
    let inside = attracting_cycle_box(center_box, p, &seed, &search);
    let corner = node_box(&rect, scan.max_depth, 0);
    let outside = attracting_cycle_box(corner, p, &seed, &search);

    println!(
        "claim: no parabolic cycle of period {p} in the search square off the undetermined band"
    );
    println!("scan: {}", summary(&tree));
    println!("components: {}", comps.len());
    for (i, c) in comps.iter().enumerate() {
        println!(
            "  component {i}: {} leaves, anchor {}, touches boundary {}",
            c.leaves.len(),
            c.contains_anchor,
            c.touches_root_boundary
        );
    }
    println!(
        "center of period {p}: {:.15} {:+.15}i",
        center.re, center.im
    );
    match &inside.orbit {
        Some(o) => println!(
            "attracting witness: {} (modulus in [{:e}, {:e}])",
            inside.status.verdict.token(),
            o.modulus.lo(),
            o.modulus.hi()
        ),
        None => println!("attracting witness: {}", inside.status.verdict.token()),
    }
    println!(
        "absence witness at [{:e}, {:e}] x [{:e}, {:e}]: {}",
        corner.re.lo(),
        corner.re.hi(),
        corner.im.lo(),
        corner.im.hi(),
        outside.status.verdict.token()
    );
    let two = comps.len() == 2
        && comps
            .iter()
            .filter(|c| c.contains_anchor && !c.touches_root_boundary)
            .count()
            == 1
        && comps
            .iter()
            .filter(|c| !c.contains_anchor && c.touches_root_boundary)
            .count()
            == 1;
    let ok =
        two && inside.status.verdict == Verdict::True && outside.status.verdict == Verdict::False;
    if !two {
        println!(
            "flag: expected one bounded component holding the anchor and one unbounded component"
        );
    }
    println!("arcs claim: {}", if ok { "T" } else { "U" });
    println!("elapsed: {:.3}s", t.elapsed().as_secs_f64());
    let cert = certificate(&tree, cfg, vec![], false);
    emit(&cert, &tree, cfg, &output(cfg))?;
    Ok(if ok {
        Exit::Verified
    } else {
        Exit::NotVerified
    })
}

pub fn verify_disjoint(cfg: &RunConfig) -> Result<Exit> {
    let rect = cfg.rect("param_rect")?;
    let mult = multiplier_config(cfg)?;
    let search = cycle_search(cfg)?;
    let scan = scan_config(cfg)?;
    let refine = cfg.uint("refine_depth")?;
    let t = Instant::now();
    let report = disjointness_certificate(rect, &mult, &search, &scan, refine)?;
    println!("claim: the possibly-real-multiplier set and the possibly-parabolic set are disjoint");
    println!("multiplier scan: {}", summary(&report.yellow_tree));
    println!("parabolic scan: {}", summary(&report.red_tree));
    println!("yellow leaves: {}", report.yellow_count);
    println!("red leaves: {}", report.red_count);
    println!("rollup: {}", report.status.verdict.token());
    println!("elapsed: {:.3}s", t.elapsed().as_secs_f64());

    let base = output(cfg);
    for tree in [&report.yellow_tree, &report.red_tree] {
        let mut cert = certificate(tree, cfg, vec![], false);
        // The claim is about the pair; each file records its own leaves.
        cert.rollup = report.status.verdict;
        let path = PathBuf::from(format!("{}.{}.cert", base.display(), tree.claim));
        write_text(&path, &serialize(&cert))?;
        println!("certificate: {}", path.display());
    }
    if let Some(img) = cfg.raw("image") {
        let (w, h) = cfg.size("image_size")?;
        write_image(
            Path::new(img),
            &overlay(&report.yellow_tree, &report.red_tree, w, h),
        )?;
        println!("image: {img}");
    }
    Ok(Exit::from_verdict(report.status.verdict))
}

/// Red where the parabolic scan is undetermined, else yellow where the
/// multiplier scan is, else cyan.
fn overlay(yellow: &ScanTree, red: &ScanTree, w: usize, h: usize) -> ImageBuffer {
    let mark = Palette {
        verified: [0, 0, 0],
        refuted: [0, 0, 0],
        undetermined: [255, 255, 255],
    };
    let y = rasterize_scan(yellow, &mark, w, h);
    let r = rasterize_scan(red, &mark, w, h);
    let mut img = ImageBuffer::new(w, h);
    for j in 0..h {
        for i in 0..w {
            let px = if r.get(i, j)[0] == 255 {
                RED
            } else if y.get(i, j)[0] == 255 {
                YELLOW
            } else {
                CYAN
            };
            img.set(i, j, px);
        }
    }
    img
}

pub const CLAIMS: &[&str] = &["qlike", "count", "multiplier-real", "parabolic"];

/// A single scan of one claim without the extra checks of the verify
/// commands.
pub fn scan(cfg: &RunConfig) -> Result<Exit> {
    let claim = cfg.raw("claim").unwrap_or("qlike").to_string();
    let rect = cfg.rect("param_rect")?;
    let sc = scan_config(cfg)?;
    let t = Instant::now();
    let tree = match claim.as_str() {
        "qlike" => {
            let u = cfg.rect("dyn_rect")?;
            let n = cfg.positive("iterate")?;
            let b = boundary_config(cfg)?;
            adaptive_scan(
                rect,
                "qlike",
                |c: &ComplexBox| {
                    boundary_disjoint(*c, u, n, &b).unwrap_or(ClaimStatus::undetermined(0))
                },
                &sc,
            )
        }
        "count" => {
            let region = cfg.rect("dyn_rect")?;
            let g = even_iterate(cfg)?;
            let contour = contour_config(cfg)?;
            adaptive_scan(
                rect,
                "count",
                |c: &ComplexBox| unique_fixed_point_status(*c, region, g, &contour),
                &sc,
            )
        }
        "multiplier-real" => {
            let m = multiplier_config(cfg)?;
            adaptive_scan(
                rect,
                "multiplier-real",
                |c: &ComplexBox| multiplier_im_excludes_zero(*c, &m),
                &sc,
            )
        }
        "parabolic" => {
            let s = cycle_search(cfg)?;
            adaptive_scan(
                rect,
                "parabolic",
                |c: &ComplexBox| parabolic_excluded(*c, &s),
                &sc,
            )
        }
        other => {
            return Err(ConfigError(format!(
                "claim: unknown claim `{other}` (known: {})",
                CLAIMS.join(", ")
            ))
            .into());
        }
    };
    let cert = certificate(&tree, cfg, vec![], false);
    println!("claim: {claim}");
    println!("scan: {}", summary(&tree));
    println!("rollup: {}", cert.rollup.token());
    println!("elapsed: {:.3}s", t.elapsed().as_secs_f64());
    emit(&cert, &tree, cfg, &output(cfg))?;
    Ok(Exit::from_verdict(cert.rollup))
}

pub fn centers() -> Result<Exit> {
    let t = Instant::now();
    let sols = solve_period3_centers()?;
    let mut ok = sols.len() == 4;
    for s in &sols {
        let name = match s.label {
            CenterLabel::Zero => "0",
            CenterLabel::Airplane => "c*",
            CenterLabel::AirplaneOmega => "w c*",
            CenterLabel::AirplaneOmega2 => "w^2 c*",
        };
        let period = s.check_period();
        ok &= period;
        println!(
            "{name:>7}: re [{:.17e}, {:.17e}] im [{:.17e}, {:.17e}] width {:.1e} period-check {}",
            s.c.re.lo(),
            s.c.re.hi(),
            s.c.im.lo(),
            s.c.im.hi(),
            s.c.width(),
            period
        );
    }
    if let Some(a) = sols.iter().find(|s| s.label == CenterLabel::Airplane) {
        let digits = (a.c.re.mid() * 1e4).trunc() / 1e4;
        println!(
            "c* = {digits:.4}... (enclosure midpoint {:.15})",
            a.c.re.mid()
        );
    }
    let rot = rotation_consistent(&sols);
    let excl = case_ii1_excluded()?;
    ok &= rot && excl;
    println!("rotation consistent: {rot}");
    println!("branch s^3 - 3s + 3 = 0 excluded: {excl}");
    println!("elapsed: {:.3}s", t.elapsed().as_secs_f64());
    Ok(if ok {
        Exit::Verified
    } else {
        Exit::NotVerified
    })
}

pub struct RenderArgs {
    pub mode: RenderMode,
    pub region: ComplexBox,
    pub size: (usize, usize),
    pub maxiter: u32,
    pub output: PathBuf,
}

pub fn render(args: &RenderArgs) -> Result<Exit> {
    let t = Instant::now();
    let img = render_escape(
        &args.region,
        args.size.0,
        args.size.1,
        args.maxiter,
        args.mode,
    );
    write_image(&args.output, &img)?;
    println!(
        "wrote {} ({}x{}, maxiter {}) in {:.3}s",
        args.output.display(),
        args.size.0,
        args.size.1,
        args.maxiter,
        t.elapsed().as_secs_f64()
    );
    Ok(Exit::Verified)
}
