//! Named parameter sets and per-command defaults.

use crate::config::{ConfigError, RunConfig};

/// Parameter rectangle around the period-9 component.
pub const R: &str = "-1.73875,-1.73825,0.01555,0.01605";
/// Domain of the quadratic-like restriction of `f_c^3`.
pub const U: &str = "-0.3,0.3,-0.3,0.3";
/// Square holding the unique fixed point of `f_c^6`.
pub const FIXED_POINT_SQUARE: &str = "0,0.08,0,0.08";
/// Square around the critical point holding one point of the period-9 cycle.
pub const CYCLE_SQUARE: &str = "-0.03,0.03,-0.03,0.03";
/// Center of the period-9 component, to 12 decimals.
pub const ANCHOR: &str = "-1.738467707542,0.015771142412";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Scan,
    Qlike,
    Count,
    Arcs,
    Disjoint,
}

/// Defaults of each command. These are the reference values, so running a
/// command without options reproduces the reference computation.
pub fn defaults(cmd: Command) -> Vec<(&'static str, &'static str)> {
    let mut v = vec![
        ("param_rect", R),
        ("workers", "0"),
        ("image_size", "512x512"),
    ];
    v.extend(match cmd {
        Command::Qlike => vec![
            ("dyn_rect", U),
            ("iterate", "3"),
            ("anchor", ANCHOR),
            ("max_depth", "14"),
            ("boundary_segments", "32"),
            ("boundary_depth", "10"),
            ("tolerance", "0.5"),
            ("contour_depth", "16"),
            ("output", "qlike.cert"),
        ],
        Command::Count => vec![
            ("dyn_rect", FIXED_POINT_SQUARE),
            ("iterate", "6"),
            ("min_depth", "4"),
            ("max_depth", "10"),
            ("tolerance", "0.5"),
            ("contour_depth", "16"),
            ("output", "count.cert"),
        ],
        Command::Arcs => vec![
            ("search_rect", CYCLE_SQUARE),
            ("period", "9"),
            ("anchor", ANCHOR),
            ("max_depth", "8"),
            ("cover_depth", "30"),
            ("output", "parabolic.cert"),
        ],
        Command::Disjoint => vec![
            ("dyn_rect", FIXED_POINT_SQUARE),
            ("iterate", "6"),
            ("search_rect", CYCLE_SQUARE),
            ("period", "9"),
            ("max_depth", "6"),
            ("refine_depth", "12"),
            ("cover_depth", "30"),
            ("output", "disjoint"),
        ],
        Command::Scan => vec![
            ("claim", "qlike"),
            ("dyn_rect", U),
            ("iterate", "3"),
            ("search_rect", CYCLE_SQUARE),
            ("period", "9"),
            ("max_depth", "8"),
            ("boundary_segments", "32"),
            ("boundary_depth", "10"),
            ("tolerance", "0.5"),
            ("contour_depth", "16"),
            ("cover_depth", "30"),
            ("output", "scan.cert"),
        ],
    });
    v
}

pub const NAMES: &[&str] = &["paper", "paper-R", "paper-U"];

/// Applies a named preset. `paper` restores every reference value of the
/// command; `paper-R` and `paper-U` set only the parameter rectangle or the
/// quadratic-like domain.
pub fn apply(cfg: &mut RunConfig, cmd: Command, name: &str) -> Result<(), ConfigError> {
    match name {
        "paper" => cfg.layer(
            defaults(cmd)
                .into_iter()
                .filter(|(k, _)| !matches!(*k, "output" | "workers" | "image_size")),
        ),
        "paper-R" => cfg.set("param_rect", R),
        "paper-U" => cfg.set("dyn_rect", U),
        _ => Err(ConfigError(format!(
            "unknown preset `{name}` (known: {})",
            NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_keys() {
        for cmd in [
            Command::Scan,
            Command::Qlike,
            Command::Count,
            Command::Arcs,
            Command::Disjoint,
        ] {
            let mut c = RunConfig::new();
            c.layer(defaults(cmd)).unwrap();
            for p in NAMES {
                apply(&mut c, cmd, p).unwrap();
            }
            c.rect("param_rect").unwrap();
        }
    }

    #[test]
    fn unknown_preset() {
        assert!(apply(&mut RunConfig::new(), Command::Qlike, "paper-X").is_err());
    }
}
