//! Adaptive quadtree scans of parameter rectangles and their certificates.
//!
//! Boxes are split into four quadrants at representable midpoints, children
//! ordered SW, SE, NW, NE. A leaf is addressed by its depth and its path
//! index (two bits per level, most significant bits nearest the root).
//! Each level is evaluated as one batch, optionally in parallel; results are
//! collected in input order, so the output never depends on the worker count.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::interval::{ComplexBox, Interval};
use crate::verify::{ClaimStatus, Verdict};

/// Deepest supported level; keeps the DFS key within 64 bits.
pub const MAX_SUPPORTED_DEPTH: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanConfig {
    /// Every box is split down to this depth before any evaluation.
    pub min_depth: u32,
    pub max_depth: u32,
    /// Boxes narrower than this are not split further.
    pub min_width: f64,
    /// Worker threads; 0 uses the default pool size.
    pub workers: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            min_depth: 0,
            max_depth: 8,
            min_width: 0.0,
            workers: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Leaf {
    pub depth: u32,
    pub index: u64,
    pub status: ClaimStatus,
    pub bbox: ComplexBox,
}

impl Leaf {
    fn dfs_key(&self) -> u64 {
        self.index << (2 * (MAX_SUPPORTED_DEPTH - self.depth))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanTree {
    pub root: ComplexBox,
    pub claim: String,
    pub config: ScanConfig,
    /// Leaves in depth-first order.
    pub leaves: Vec<Leaf>,
}

fn evaluate<P>(boxes: &[ComplexBox], predicate: &P, workers: usize) -> Vec<ClaimStatus>
where
    P: Fn(&ComplexBox) -> ClaimStatus + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if workers == 1 || boxes.len() < 2 {
            return boxes.iter().map(predicate).collect();
        }
        let run = || boxes.par_iter().map(predicate).collect::<Vec<_>>();
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        boxes.iter().map(predicate).collect()
    }
}

fn splittable(b: &ComplexBox, depth: u32, max_depth: u32, min_width: f64) -> bool {
    depth < max_depth.min(MAX_SUPPORTED_DEPTH) && 0.5 * b.width() >= min_width
}

/// Refines `rect` level by level, splitting only undetermined boxes.
pub fn adaptive_scan<P>(
    rect: ComplexBox,
    claim: &str,
    predicate: P,
    config: &ScanConfig,
) -> ScanTree
where
    P: Fn(&ComplexBox) -> ClaimStatus + Sync,
{
    let mut leaves = Vec::new();
    let mut frontier = vec![(0u32, 0u64, rect)];
    for _ in 0..config
        .min_depth
        .min(config.max_depth)
        .min(MAX_SUPPORTED_DEPTH)
    {
        frontier = frontier
            .into_iter()
            .flat_map(|(depth, index, bbox)| {
                bbox.quadrants()
                    .into_iter()
                    .enumerate()
                    .map(move |(q, child)| (depth + 1, index * 4 + q as u64, child))
            })
            .collect();
    }
    while !frontier.is_empty() {
        let boxes: Vec<ComplexBox> = frontier.iter().map(|f| f.2).collect();
        let statuses = evaluate(&boxes, &predicate, config.workers);
        let mut next = Vec::new();
        for ((depth, index, bbox), status) in frontier.into_iter().zip(statuses) {
            if status.verdict == Verdict::Undetermined
                && splittable(&bbox, depth, config.max_depth, config.min_width)
            {
                for (q, child) in bbox.quadrants().into_iter().enumerate() {
                    next.push((depth + 1, index * 4 + q as u64, child));
                }
            } else {
                leaves.push(Leaf {
                    depth,
                    index,
                    status,
                    bbox,
                });
            }
        }
        frontier = next;
    }
    leaves.sort_by_key(Leaf::dfs_key);
    ScanTree {
        root: rect,
        claim: claim.to_string(),
        config: *config,
        leaves,
    }
}

/// Splits the listed undetermined leaves (by position) once more, down to
/// `max_depth`, and re-sorts. Returns how many leaves were split.
pub fn refine_leaves<P>(
    tree: &mut ScanTree,
    positions: &[usize],
    predicate: P,
    max_depth: u32,
    config: &ScanConfig,
) -> usize
where
    P: Fn(&ComplexBox) -> ClaimStatus + Sync,
{
    let mut split = Vec::new();
    let mut keep = vec![true; tree.leaves.len()];
    for &i in positions {
        let l = tree.leaves[i];
        if l.status.verdict == Verdict::Undetermined
            && splittable(&l.bbox, l.depth, max_depth, config.min_width)
        {
            keep[i] = false;
            for (q, child) in l.bbox.quadrants().into_iter().enumerate() {
                split.push((l.depth + 1, l.index * 4 + q as u64, child));
            }
        }
    }
    if split.is_empty() {
        return 0;
    }
    let boxes: Vec<ComplexBox> = split.iter().map(|s| s.2).collect();
    let statuses = evaluate(&boxes, &predicate, config.workers);
    let mut leaves: Vec<Leaf> = tree
        .leaves
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(l, _)| *l)
        .collect();
    for ((depth, index, bbox), status) in split.iter().zip(statuses) {
        leaves.push(Leaf {
            depth: *depth,
            index: *index,
            status,
            bbox: *bbox,
        });
    }
    leaves.sort_by_key(Leaf::dfs_key);
    tree.leaves = leaves;
    tree.config.max_depth = tree.config.max_depth.max(max_depth);
    split.len() / 4
}

/// Box of the node at `(depth, index)`, recomputed from the root by the same
/// midpoint splits the scan uses.
pub fn node_box(root: &ComplexBox, depth: u32, index: u64) -> ComplexBox {
    let mut b = *root;
    for level in (0..depth).rev() {
        let q = ((index >> (2 * level)) & 3) as usize;
        b = b.quadrants()[q];
    }
    b
}

/// Integer cell coordinates of a node at a finer resolution `at_depth`.
fn cell(depth: u32, index: u64, at_depth: u32) -> (u64, u64, u64) {
    let (mut x, mut y) = (0u64, 0u64);
    for level in (0..depth).rev() {
        let q = (index >> (2 * level)) & 3;
        x = (x << 1) | (q & 1);
        y = (y << 1) | (q >> 1);
    }
    let s = 1u64 << (at_depth - depth);
    (x * s, y * s, s)
}

#[derive(Debug, Error, PartialEq)]
pub enum TilingError {
    #[error("leaf {0} box differs from its quadtree address")]
    BoxMismatch(usize),
    #[error("leaf paths do not cover the root exactly once")]
    NotAPartition,
    #[error("leaves are not in depth-first order")]
    Order,
}

impl ScanTree {
    /// `True` iff every leaf is verified; `Undetermined` if any leaf is;
    /// `False` otherwise.
    pub fn rollup(&self) -> Verdict {
        if self
            .leaves
            .iter()
            .all(|l| l.status.verdict == Verdict::True)
        {
            Verdict::True
        } else if self
            .leaves
            .iter()
            .any(|l| l.status.verdict == Verdict::Undetermined)
        {
            Verdict::Undetermined
        } else {
            Verdict::False
        }
    }

    pub fn total_effort(&self) -> u32 {
        self.leaves
            .iter()
            .fold(0u32, |a, l| a.saturating_add(l.status.effort))
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.leaves.iter().filter(|l| l.status.verdict == v).count()
    }

    pub fn max_leaf_depth(&self) -> u32 {
        self.leaves.iter().map(|l| l.depth).max().unwrap_or(0)
    }

    /// Checks that the leaves tile the root: each box is bit-identical to its
    /// address, and the addresses form a prefix-free cover (`Σ 4^-depth = 1`
    /// in exact integer arithmetic).
    pub fn check_tiling(&self) -> Result<(), TilingError> {
        let d = self.max_leaf_depth();
        let mut total: u128 = 0;
        for (i, l) in self.leaves.iter().enumerate() {
            if node_box(&self.root, l.depth, l.index) != l.bbox {
                return Err(TilingError::BoxMismatch(i));
            }
            total += 1u128 << (2 * (d - l.depth));
        }
        if total != 1u128 << (2 * d) {
            return Err(TilingError::NotAPartition);
        }
        // Equal measure plus DFS order with no leaf nested in its predecessor
        // rules out overlaps.
        for w in self.leaves.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.dfs_key() >= b.dfs_key() {
                return Err(TilingError::Order);
            }
            let span = 1u64 << (2 * (MAX_SUPPORTED_DEPTH - a.depth));
            if b.dfs_key() < a.dfs_key() + span {
                return Err(TilingError::NotAPartition);
            }
        }
        Ok(())
    }

    /// Leaf positions whose closed box contains the point.
    pub fn leaves_containing(&self, x: f64, y: f64) -> Vec<usize> {
        self.leaves
            .iter()
            .enumerate()
            .filter(|(_, l)| l.bbox.contains_point(x, y))
            .map(|(i, _)| i)
            .collect()
    }
}

/// A connected set of verified leaves.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    /// Leaf positions, ascending.
    pub leaves: Vec<usize>,
    pub contains_anchor: bool,
    /// Touches the boundary of the root rectangle.
    pub touches_root_boundary: bool,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Joins leaves across one family of grid lines: `lo_edges` are the sides
/// lying on a line from one side, `hi_edges` from the other, each as
/// `(line, start, end, member)`.
fn join_edges(
    dsu: &mut Dsu,
    mut lo_edges: Vec<(u64, u64, u64, usize)>,
    mut hi_edges: Vec<(u64, u64, u64, usize)>,
) {
    lo_edges.sort_unstable();
    hi_edges.sort_unstable();
    let mut j0 = 0;
    for &(line, s, e, m) in &lo_edges {
        while j0 < hi_edges.len()
            && (hi_edges[j0].0 < line || (hi_edges[j0].0 == line && hi_edges[j0].2 <= s))
        {
            j0 += 1;
        }
        let mut j = j0;
        while j < hi_edges.len() && hi_edges[j].0 == line && hi_edges[j].1 < e {
            if hi_edges[j].2 > s {
                dsu.union(m, hi_edges[j].3);
            }
            j += 1;
        }
    }
}

/// Connected components of verified leaves under shared-edge adjacency.
pub fn component_rollup(tree: &ScanTree, anchor: Option<(f64, f64)>) -> Vec<Component> {
    let members: Vec<usize> = (0..tree.leaves.len())
        .filter(|&i| tree.leaves[i].status.verdict == Verdict::True)
        .collect();
    let d = tree.max_leaf_depth();
    let full = 1u64 << d;
    let cells: Vec<(u64, u64, u64)> = members
        .iter()
        .map(|&i| cell(tree.leaves[i].depth, tree.leaves[i].index, d))
        .collect();
    let mut dsu = Dsu((0..members.len()).collect());
    let (mut right, mut left, mut top, mut bottom) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (m, &(x, y, s)) in cells.iter().enumerate() {
        right.push((x + s, y, y + s, m));
        left.push((x, y, y + s, m));
        top.push((y + s, x, x + s, m));
        bottom.push((y, x, x + s, m));
    }
    join_edges(&mut dsu, right, left);
    join_edges(&mut dsu, top, bottom);
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for m in 0..members.len() {
        let r = dsu.find(m);
        groups.entry(r).or_default().push(m);
    }
    let mut comps: Vec<Component> = groups
        .into_values()
        .map(|ms| {
            let contains_anchor = anchor.is_some_and(|(ax, ay)| {
                ms.iter()
                    .any(|&m| tree.leaves[members[m]].bbox.contains_point(ax, ay))
            });
            let touches_root_boundary = ms.iter().any(|&m| {
                let (x, y, s) = cells[m];
                x == 0 || y == 0 || x + s == full || y + s == full
            });
            let mut leaves: Vec<usize> = ms.iter().map(|&m| members[m]).collect();
            leaves.sort_unstable();
            Component {
                leaves,
                contains_anchor,
                touches_root_boundary,
            }
        })
        .collect();
    comps.sort_by_key(|c| c.leaves[0]);
    comps
}

// ---------------------------------------------------------------------------
// certificates

pub const CERT_FORMAT: &str = "tricorn-certificate-1";

#[derive(Clone, Debug, PartialEq)]
pub struct ParamCertificate {
    pub claim: String,
    pub root: ComplexBox,
    pub rollup: Verdict,
    pub leaves: Vec<Leaf>,
    pub tool_version: String,
    pub max_depth: u32,
    pub min_width: f64,
    /// Effective configuration echoed as `key=value` header lines.
    pub config: Vec<(String, String)>,
    pub assumptions: Vec<String>,
    pub acknowledged: bool,
}

impl ParamCertificate {
    /// Wraps a scan. The rollup is `True` only if every leaf is verified and
    /// any assumptions were acknowledged.
    pub fn from_tree(
        tree: &ScanTree,
        config: Vec<(String, String)>,
        assumptions: Vec<String>,
        acknowledged: bool,
    ) -> ParamCertificate {
        let mut rollup = tree.rollup();
        if rollup == Verdict::True && !assumptions.is_empty() && !acknowledged {
            rollup = Verdict::Undetermined;
        }
        ParamCertificate {
            claim: tree.claim.clone(),
            root: tree.root,
            rollup,
            leaves: tree.leaves.clone(),
            tool_version: crate::TOOL_VERSION.to_string(),
            max_depth: tree.config.max_depth,
            min_width: tree.config.min_width,
            config,
            assumptions,
            acknowledged,
        }
    }
}

pub fn hex_f64(x: f64) -> String {
    format!("{:016x}", x.to_bits())
}

pub fn parse_hex_f64(s: &str) -> Option<f64> {
    if s.len() != 16
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    {
        return None;
    }
    u64::from_str_radix(s, 16).ok().map(f64::from_bits)
}

fn single_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

/// Line-oriented text form: `#key=value` header lines, then one
/// `depth index status re_lo re_hi im_lo im_hi` line per leaf with binary64
/// endpoints as 16 lowercase hex digits of their bit pattern.
pub fn serialize(cert: &ParamCertificate) -> String {
    let mut out = String::new();
    let r = &cert.root;
    let _ = writeln!(out, "#format={CERT_FORMAT}");
    let _ = writeln!(out, "#claim={}", single_line(&cert.claim));
    let _ = writeln!(out, "#tool={}", single_line(&cert.tool_version));
    let _ = writeln!(
        out,
        "#rect={},{},{},{}",
        hex_f64(r.re.lo()),
        hex_f64(r.re.hi()),
        hex_f64(r.im.lo()),
        hex_f64(r.im.hi())
    );
    let _ = writeln!(out, "#max_depth={}", cert.max_depth);
    let _ = writeln!(out, "#min_width={}", hex_f64(cert.min_width));
    for (k, v) in &cert.config {
        let _ = writeln!(out, "#config.{}={}", single_line(k), single_line(v));
    }
    for a in &cert.assumptions {
        let _ = writeln!(out, "#assumption={}", single_line(a));
    }
    let _ = writeln!(out, "#acknowledged={}", cert.acknowledged);
    let _ = writeln!(out, "#rollup={}", cert.rollup.token());
    let _ = writeln!(out, "#leaves={}", cert.leaves.len());
    for l in &cert.leaves {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {}",
            l.depth,
            l.index,
            l.status.verdict.token(),
            hex_f64(l.bbox.re.lo()),
            hex_f64(l.bbox.re.hi()),
            hex_f64(l.bbox.im.lo()),
            hex_f64(l.bbox.im.hi())
        );
    }
    out
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing header field {0}")]
    Missing(&'static str),
    #[error("header says {expected} leaves, found {found}")]
    LeafCount { expected: usize, found: usize },
}

fn parse_box(parts: &[&str], line: usize) -> Result<ComplexBox, ParseError> {
    let v: Option<Vec<f64>> = parts.iter().map(|p| parse_hex_f64(p)).collect();
    let v = v.ok_or_else(|| ParseError::Line(line, "bad hex endpoint".into()))?;
    ComplexBox::from_bounds(v[0], v[1], v[2], v[3])
        .ok_or_else(|| ParseError::Line(line, "reversed box".into()))
}

pub fn parse(text: &str) -> Result<ParamCertificate, ParseError> {
    let mut claim = None;
    let mut tool = None;
    let mut root = None;
    let mut max_depth = None;
    let mut min_width = None;
    let mut rollup = None;
    let mut count = None;
    let mut acknowledged = false;
    let mut config = Vec::new();
    let mut assumptions = Vec::new();
    let mut leaves = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let no = no + 1;
        let bad = |m: &str| ParseError::Line(no, m.to_string());
        if let Some(h) = line.strip_prefix('#') {
            let (k, v) = h.split_once('=').ok_or_else(|| bad("header without '='"))?;
            match k {
                "format" if v == CERT_FORMAT => {}
                "format" => return Err(bad("unknown format")),
                "claim" => claim = Some(v.to_string()),
                "tool" => tool = Some(v.to_string()),
                "rect" => {
                    let p: Vec<&str> = v.split(',').collect();
                    if p.len() != 4 {
                        return Err(bad("rect needs four endpoints"));
                    }
                    root = Some(parse_box(&p, no)?);
                }
                "max_depth" => max_depth = Some(v.parse().map_err(|_| bad("bad max_depth"))?),
                "min_width" => {
                    min_width = Some(parse_hex_f64(v).ok_or_else(|| bad("bad min_width"))?)
                }
                "assumption" => assumptions.push(v.to_string()),
                "acknowledged" => {
                    acknowledged = v.parse().map_err(|_| bad("bad acknowledged flag"))?
                }
                "rollup" => rollup = Some(Verdict::from_token(v).ok_or_else(|| bad("bad rollup"))?),
                "leaves" => count = Some(v.parse::<usize>().map_err(|_| bad("bad leaf count"))?),
                _ => match k.strip_prefix("config.") {
                    Some(key) => config.push((key.to_string(), v.to_string())),
                    None => return Err(bad("unknown header key")),
                },
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let p: Vec<&str> = line.split(' ').collect();
        if p.len() != 7 {
            return Err(bad("leaf line needs 7 fields"));
        }
        let depth: u32 = p[0].parse().map_err(|_| bad("bad depth"))?;
        let index: u64 = p[1].parse().map_err(|_| bad("bad index"))?;
        let verdict = Verdict::from_token(p[2]).ok_or_else(|| bad("bad status"))?;
        leaves.push(Leaf {
            depth,
            index,
            status: ClaimStatus { verdict, effort: 0 },
            bbox: parse_box(&p[3..], no)?,
        });
    }
    let expected = count.ok_or(ParseError::Missing("leaves"))?;
    if expected != leaves.len() {
        return Err(ParseError::LeafCount {
            expected,
            found: leaves.len(),
        });
    }
    Ok(ParamCertificate {
        claim: claim.ok_or(ParseError::Missing("claim"))?,
        root: root.ok_or(ParseError::Missing("rect"))?,
        rollup: rollup.ok_or(ParseError::Missing("rollup"))?,
        leaves,
        tool_version: tool.ok_or(ParseError::Missing("tool"))?,
        max_depth: max_depth.ok_or(ParseError::Missing("max_depth"))?,
        min_width: min_width.ok_or(ParseError::Missing("min_width"))?,
        config,
        assumptions,
        acknowledged,
    })
}

/// Rebuilds a tree from a parsed certificate (effort counters are not stored).
pub fn tree_from_certificate(cert: &ParamCertificate) -> ScanTree {
    ScanTree {
        root: cert.root,
        claim: cert.claim.clone(),
        config: ScanConfig {
            min_depth: 0,
            max_depth: cert.max_depth,
            min_width: cert.min_width,
            workers: 0,
        },
        leaves: cert.leaves.clone(),
    }
}

/// Exact root area minus the sum of leaf areas, both in interval arithmetic;
/// the result must contain 0 for a tiling.
pub fn area_defect(tree: &ScanTree) -> Interval {
    let area = |b: &ComplexBox| {
        (Interval::point(b.re.hi()) - Interval::point(b.re.lo()))
            * (Interval::point(b.im.hi()) - Interval::point(b.im.lo()))
    };
    let sum = tree
        .leaves
        .iter()
        .fold(Interval::ZERO, |a, l| a + area(&l.bbox));
    area(&tree.root) - sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ComplexBox {
        ComplexBox::from_bounds(0.0, 1.0, 0.0, 1.0).unwrap()
    }

    /// Undetermined on boxes touching the diagonal y = x, true elsewhere.
    fn diagonal(b: &ComplexBox) -> ClaimStatus {
        if b.re.intersects(&b.im) {
            ClaimStatus::undetermined(1)
        } else {
            ClaimStatus::verified(1)
        }
    }

    #[test]
    fn depth_zero_is_one_leaf() {
        let t = adaptive_scan(
            unit(),
            "x",
            diagonal,
            &ScanConfig {
                max_depth: 0,
                ..Default::default()
            },
        );
        assert_eq!(t.leaves.len(), 1);
        assert_eq!(t.leaves[0].status.verdict, Verdict::Undetermined);
        assert_eq!(t.rollup(), Verdict::Undetermined);
    }

    #[test]
    fn diagonal_scan_tiles_and_splits_only_undetermined() {
        let t = adaptive_scan(
            unit(),
            "diag",
            diagonal,
            &ScanConfig {
                max_depth: 6,
                ..Default::default()
            },
        );
        t.check_tiling().unwrap();
        assert!(area_defect(&t).contains(0.0));
        for l in &t.leaves {
            if l.status.verdict == Verdict::Undetermined {
                assert_eq!(l.depth, 6);
            }
        }
        // the diagonal band separates two components
        let comps = component_rollup(&t, Some((0.9, 0.1)));
        assert_eq!(comps.len(), 2);
        assert_eq!(comps.iter().filter(|c| c.contains_anchor).count(), 1);
    }

    #[test]
    fn min_width_stops_refinement() {
        let t = adaptive_scan(
            unit(),
            "diag",
            diagonal,
            &ScanConfig {
                max_depth: 20,
                min_width: 0.1,
                workers: 1,
                ..Default::default()
            },
        );
        assert!(t.max_leaf_depth() <= 3);
    }

    #[test]
    fn min_depth_subdivides_uniformly() {
        let t = adaptive_scan(
            unit(),
            "x",
            |_: &ComplexBox| ClaimStatus::verified(1),
            &ScanConfig {
                min_depth: 2,
                max_depth: 5,
                ..Default::default()
            },
        );
        assert_eq!(t.leaves.len(), 16);
        t.check_tiling().unwrap();
    }

    #[test]
    fn refine_moves_only_listed_leaves() {
        let cfg = ScanConfig {
            max_depth: 3,
            ..Default::default()
        };
        let mut t = adaptive_scan(unit(), "diag", diagonal, &cfg);
        let before = t.leaves.len();
        let und: Vec<usize> = (0..t.leaves.len())
            .filter(|&i| t.leaves[i].status.verdict == Verdict::Undetermined)
            .take(2)
            .collect();
        let n = refine_leaves(&mut t, &und, diagonal, 5, &cfg);
        assert_eq!(n, 2);
        assert_eq!(t.leaves.len(), before + 6);
        t.check_tiling().unwrap();
    }

    #[test]
    fn hex_roundtrip_exact() {
        for x in [0.0, -0.0, 1.0, -1.73875, 0.01605, f64::MIN_POSITIVE, 1e-310] {
            assert_eq!(parse_hex_f64(&hex_f64(x)).unwrap().to_bits(), x.to_bits());
        }
        assert!(parse_hex_f64("3FF0000000000000").is_none());
        assert!(parse_hex_f64("3ff").is_none());
    }

    #[test]
    fn certificate_header_counts_leaves() {
        let t = adaptive_scan(
            unit(),
            "diag",
            diagonal,
            &ScanConfig {
                max_depth: 3,
                ..Default::default()
            },
        );
        let cert = ParamCertificate::from_tree(&t, vec![("n".into(), "3".into())], vec![], false);
        let text = serialize(&cert);
        let leaf_lines = text.lines().filter(|l| !l.starts_with('#')).count();
        assert!(text.contains(&format!("#leaves={leaf_lines}\n")));
        let back = parse(&text).unwrap();
        assert_eq!(serialize(&back), text);
        assert!(parse(&text.replace("#leaves=", "#leaves=1")).is_err());
    }

    #[test]
    fn assumptions_block_true_rollup() {
        let t = adaptive_scan(
            unit(),
            "x",
            |_: &ComplexBox| ClaimStatus::verified(1),
            &ScanConfig::default(),
        );
        let c = ParamCertificate::from_tree(&t, vec![], vec!["a".into()], false);
        assert_eq!(c.rollup, Verdict::Undetermined);
        let c = ParamCertificate::from_tree(&t, vec![], vec!["a".into()], true);
        assert_eq!(c.rollup, Verdict::True);
        assert_eq!(component_rollup(&t, None).len(), 1);
    }
}
