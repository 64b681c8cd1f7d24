use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tricorn_core::render::RenderMode;
use tricorn_core::ComplexBox;

mod commands;
mod config;
mod presets;

use commands::{Exit, RenderArgs};
use config::{ConfigError, RunConfig};
use presets::Command as Preset;

#[derive(Parser)]
#[command(
    name = "tricorn",
    version,
    about = "Certified computations for the tricorn family conj(z)^2 + c"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Escape-time image of the tricorn, the Mandelbrot set or a Julia set.
    Render(RenderOpts),
    /// Scan a parameter rectangle for one claim and write its certificate.
    Scan(RunOpts),
    /// Quadratic-like restriction of f^n on a domain, over a parameter rectangle.
    VerifyQlike(RunOpts),
    /// Unique fixed point of an even iterate in a square, over a parameter rectangle.
    VerifyCount(RunOpts),
    /// Parabolic-exclusion scan, its components, and attracting/absent cycle witnesses.
    VerifyArcs(RunOpts),
    /// Real-multiplier locus versus parabolic locus: certified disjointness.
    VerifyDisjoint(RunOpts),
    /// The four parameters with f^3(0) = 0.
    Centers,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tricorn,
    Mandelbrot,
    Julia,
}

#[derive(Args)]
struct RenderOpts {
    #[arg(long, value_enum, default_value = "tricorn")]
    mode: Mode,
    /// re_lo,re_hi,im_lo,im_hi
    #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
    region: String,
    /// WxH in pixels
    #[arg(long, default_value = "600x600")]
    size: String,
    #[arg(long, default_value_t = 500)]
    maxiter: u32,
    /// Julia parameter re,im
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(short, long, default_value = "render.ppm")]
    output: PathBuf,
}

/// Options shared by the scan and verify commands. Every option is also a
/// config-file key (dashes become underscores).
#[derive(Args)]
struct RunOpts {
    /// Named parameter set: paper, paper-R, paper-U (repeatable)
    #[arg(long)]
    preset: Vec<String>,
    /// File of `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// qlike, count, multiplier-real or parabolic (scan only)
    #[arg(long)]
    claim: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    param_rect: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dyn_rect: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    search_rect: Option<String>,
    #[arg(long)]
    iterate: Option<String>,
    #[arg(long)]
    period: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    anchor: Option<String>,
    #[arg(long)]
    min_depth: Option<String>,
    #[arg(long)]
    max_depth: Option<String>,
    #[arg(long)]
    min_width: Option<String>,
    #[arg(long)]
    refine_depth: Option<String>,
    #[arg(long)]
    tolerance: Option<String>,
    #[arg(long)]
    contour_depth: Option<String>,
    #[arg(long)]
    boundary_segments: Option<String>,
    #[arg(long)]
    boundary_depth: Option<String>,
    #[arg(long)]
    cover_depth: Option<String>,
    /// Raster the result to this binary PPM
    #[arg(long)]
    image: Option<String>,
    #[arg(long)]
    image_size: Option<String>,
    #[arg(short, long)]
    output: Option<String>,
    #[arg(long, env = "TRICORN_WORKERS")]
    workers: Option<String>,
    /// Accept the non-rigorous anchor assumption of the quadratic-like claim
    #[arg(long)]
    acknowledge_assumptions: bool,
}

impl RunOpts {
    fn flags(&self) -> Vec<(&'static str, &str)> {
        let pairs: [(&'static str, &Option<String>); 20] = [
            ("claim", &self.claim),
            ("param_rect", &self.param_rect),
            ("dyn_rect", &self.dyn_rect),
            ("search_rect", &self.search_rect),
            ("iterate", &self.iterate),
            ("period", &self.period),
            ("anchor", &self.anchor),
            ("min_depth", &self.min_depth),
            ("max_depth", &self.max_depth),
            ("min_width", &self.min_width),
            ("refine_depth", &self.refine_depth),
            ("tolerance", &self.tolerance),
            ("contour_depth", &self.contour_depth),
            ("boundary_segments", &self.boundary_segments),
            ("boundary_depth", &self.boundary_depth),
            ("cover_depth", &self.cover_depth),
            ("image", &self.image),
            ("image_size", &self.image_size),
            ("output", &self.output),
            ("workers", &self.workers),
        ];
        let mut out: Vec<(&'static str, &str)> = pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
            .collect();
        if self.acknowledge_assumptions {
            out.push(("acknowledge_assumptions", "true"));
        }
        out
    }

    /// Defaults, then presets, then the config file, then flags and the
    /// environment.
    fn resolve(&self, cmd: Preset) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::new();
        cfg.layer(presets::defaults(cmd))?;
        for p in &self.preset {
            presets::apply(&mut cfg, cmd, p)?;
        }
        if let Some(path) = &self.config {
            let pairs = config::read_file(path)?;
            cfg.layer(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
        }
        cfg.layer(self.flags())?;
        Ok(cfg)
    }
}

fn parse_render(o: &RenderOpts) -> Result<RenderArgs, String> {
    let v: Vec<f64> = o
        .region
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("region: bad number `{s}`"))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err(format!(
            "region: expected re_lo,re_hi,im_lo,im_hi, got `{}`",
            o.region
        ));
    }
    if !v.iter().all(|x| x.is_finite()) || v[0] >= v[1] || v[2] >= v[3] {
        return Err(format!(
            "region: endpoints must be finite with lo < hi, got `{}`",
            o.region
        ));
    }
    let region = ComplexBox::from_bounds(v[0], v[1], v[2], v[3]).expect("ordered");
    let size = config::parse_size(&o.size).map_err(|e| format!("size: {e}"))?;
    if o.maxiter == 0 {
        return Err("maxiter: must be positive".into());
    }
    let mode = match o.mode {
        Mode::Tricorn => RenderMode::Tricorn,
        Mode::Mandelbrot => RenderMode::Mandelbrot,
        Mode::Julia => {
            let c = o.c.as_deref().ok_or("julia mode needs --c re,im")?;
            let (re, im) = config::parse_point(c).map_err(|e| format!("c: {e}"))?;
            RenderMode::Julia { re, im }
        }
    };
    Ok(RenderArgs {
        mode,
        region,
        size,
        maxiter: o.maxiter,
        output: o.output.clone(),
    })
}

fn run(cli: Cli) -> anyhow::Result<Exit> {
    let (opts, cmd) = match &cli.command {
        Command::Render(o) => {
            return match parse_render(o) {
                Ok(a) => commands::render(&a),
                Err(e) => Err(ConfigError(e).into()),
            }
        }
        Command::Centers => return commands::centers(),
        Command::Scan(o) => (o, Preset::Scan),
        Command::VerifyQlike(o) => (o, Preset::Qlike),
        Command::VerifyCount(o) => (o, Preset::Count),
        Command::VerifyArcs(o) => (o, Preset::Arcs),
        Command::VerifyDisjoint(o) => (o, Preset::Disjoint),
    };
    let cfg = opts.resolve(cmd)?;
    match cmd {
        Preset::Scan => commands::scan(&cfg),
        Preset::Qlike => commands::verify_qlike(&cfg),
        Preset::Count => commands::verify_count(&cfg),
        Preset::Arcs => commands::verify_arcs(&cfg),
        Preset::Disjoint => commands::verify_disjoint(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Exit::Usage as u8)
        }
    }
}
