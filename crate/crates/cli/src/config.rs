//! Flat `key = value` run configuration with layered sources.
//!
//! Layers, lowest first: subcommand defaults, presets, config file,
//! environment, command-line flags. Each layer overwrites keys of the ones
//! below it. The effective map is echoed verbatim into certificate headers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use tricorn_core::{ComplexBox, Interval};

/// A configuration problem; always a usage error.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Every key the tool understands, with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("param_rect", "parameter rectangle re_lo,re_hi,im_lo,im_hi"),
    ("dyn_rect", "dynamical rectangle re_lo,re_hi,im_lo,im_hi"),
    (
        "search_rect",
        "dynamical search rectangle for the tracked cycle",
    ),
    ("iterate", "iterate n of f_c"),
    ("period", "period of the tracked cycle"),
    ("anchor", "anchor parameter re,im"),
    ("claim", "claim evaluated by `scan`"),
    ("min_depth", "uniform subdivision depth before evaluation"),
    ("max_depth", "maximum quadtree depth"),
    ("min_width", "boxes narrower than this are not split"),
    (
        "refine_depth",
        "maximum depth when separating two leaf sets",
    ),
    ("tolerance", "contour enclosure tolerance"),
    ("contour_depth", "maximum halvings of a contour segment"),
    (
        "boundary_segments",
        "initial segments per edge of the dynamical rectangle",
    ),
    ("boundary_depth", "maximum halvings of a boundary segment"),
    (
        "cover_depth",
        "maximum bisection depth of the cycle search cover",
    ),
    ("image_size", "raster size WxH for --image"),
    ("output", "certificate path"),
    ("image", "raster path (binary PPM)"),
    ("workers", "worker threads, 0 for all cores"),
    (
        "acknowledge_assumptions",
        "accept non-rigorous assumptions (true/false)",
    ),
];

/// Keys that never enter a certificate: they cannot change its content.
const NOT_ECHOED: &[&str] = &[
    "output",
    "image",
    "image_size",
    "workers",
    "acknowledge_assumptions",
];

pub fn is_known(key: &str) -> bool {
    KEYS.iter().any(|(k, _)| *k == key)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new() -> RunConfig {
        RunConfig::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if !is_known(key) {
            return err(format!("unknown configuration key `{key}`"));
        }
        self.values
            .insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    /// Overlays `pairs` on top of the current values.
    pub fn layer<'a>(
        &mut self,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<(), ConfigError> {
        for (k, v) in pairs {
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.raw(key)
            .ok_or_else(|| ConfigError(format!("missing configuration key `{key}`")))
    }

    /// Effective `(key, value)` pairs for a certificate header.
    pub fn echo(&self) -> Vec<(String, String)> {
        self.values
            .iter()
            .filter(|(k, _)| !NOT_ECHOED.contains(&k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    pub fn rect(&self, key: &str) -> Result<ComplexBox, ConfigError> {
        parse_rect(self.require(key)?).map_err(|e| ConfigError(format!("{key}: {e}")))
    }

    pub fn point(&self, key: &str) -> Result<(f64, f64), ConfigError> {
        parse_point(self.require(key)?).map_err(|e| ConfigError(format!("{key}: {e}")))
    }

    pub fn uint(&self, key: &str) -> Result<u32, ConfigError> {
        let v = self.require(key)?;
        v.parse::<u32>()
            .map_err(|_| ConfigError(format!("{key}: expected a non-negative integer, got `{v}`")))
    }

    pub fn positive(&self, key: &str) -> Result<u32, ConfigError> {
        match self.uint(key)? {
            0 => err(format!("{key}: must be positive")),
            n => Ok(n),
        }
    }

    pub fn float(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self.require(key)?;
        match parse_number(v) {
            Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
            _ => err(format!(
                "{key}: expected a finite non-negative number, got `{v}`"
            )),
        }
    }

    pub fn positive_float(&self, key: &str) -> Result<f64, ConfigError> {
        match self.float(key)? {
            x if x > 0.0 => Ok(x),
            _ => err(format!("{key}: must be positive")),
        }
    }

    pub fn flag(&self, key: &str) -> Result<bool, ConfigError> {
        match self.raw(key) {
            None => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(v) => err(format!("{key}: expected true or false, got `{v}`")),
        }
    }

    pub fn size(&self, key: &str) -> Result<(usize, usize), ConfigError> {
        parse_size(self.require(key)?).map_err(|e| ConfigError(format!("{key}: {e}")))
    }

    pub fn workers(&self) -> Result<usize, ConfigError> {
        match self.raw("workers") {
            None => Ok(0),
            Some(_) => Ok(self.uint("workers")? as usize),
        }
    }
}

/// Parses a config file: `key = value` lines, `#` comments, blank lines.
pub fn parse_file_text(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return err(format!("line {}: expected `key = value`", no + 1));
        };
        let k = k.trim();
        if !is_known(k) {
            return err(format!("line {}: unknown configuration key `{k}`", no + 1));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

pub fn read_file(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    parse_file_text(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
}

/// A number given as a decimal literal or as `0x` plus the 16 hex digits of
/// a binary64 bit pattern. Decimals are enclosed exactly: the result is the
/// tightest interval around the literal's value.
pub fn parse_number_interval(s: &str) -> Result<Interval, String> {
    let s = s.trim();
    if let Some(h) = s.strip_prefix("0x") {
        let x = tricorn_core::scan::parse_hex_f64(h)
            .ok_or_else(|| format!("bad hex endpoint `{s}`"))?;
        if !x.is_finite() {
            return Err(format!("non-finite endpoint `{s}`"));
        }
        return Ok(Interval::point(x));
    }
    Interval::from_decimal(s).ok_or_else(|| format!("bad number `{s}`"))
}

fn parse_number(s: &str) -> Result<f64, String> {
    let iv = parse_number_interval(s)?;
    Ok(iv.mid())
}

/// `re_lo,re_hi,im_lo,im_hi`. Decimal endpoints are rounded outward so the
/// box contains the rectangle as written.
pub fn parse_rect(s: &str) -> Result<ComplexBox, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated endpoints, got `{s}`"
        ));
    }
    let v = parts
        .iter()
        .map(|p| parse_number_interval(p))
        .collect::<Result<Vec<_>, _>>()?;
    let (x0, x1, y0, y1) = (v[0].lo(), v[1].hi(), v[2].lo(), v[3].hi());
    if v[0].hi() >= v[1].lo() || v[2].hi() >= v[3].lo() {
        return Err(format!(
            "endpoints must satisfy lo < hi on both axes, got `{s}`"
        ));
    }
    ComplexBox::from_bounds(x0, x1, y0, y1).ok_or_else(|| format!("bad rectangle `{s}`"))
}

/// `re,im` as the nearest binary64 values.
pub fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `re,im`, got `{s}`"));
    }
    let re: f64 = parse_nearest(parts[0])?;
    let im: f64 = parse_nearest(parts[1])?;
    Ok((re, im))
}

fn parse_nearest(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s.starts_with("0x") {
        return parse_number_interval(s).map(|iv| iv.lo());
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("bad number `{s}`")),
    }
}

/// `WxH`, both positive.
pub fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let w: usize = w
        .trim()
        .parse()
        .map_err(|_| format!("bad width in `{s}`"))?;
    let h: usize = h
        .trim()
        .parse()
        .map_err(|_| format!("bad height in `{s}`"))?;
    if w == 0 || h == 0 {
        return Err(format!("image size must be positive, got `{s}`"));
    }
    Ok((w, h))
}
