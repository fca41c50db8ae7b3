//! Reducible configurations and the recursive 2-PCF 9-coloring solver.
//!
//! The solver finds one of ten configurations, deletes a small vertex set
//! `S` (joining outside vertices that shared a neighbor in `S`), colors the
//! smaller graph recursively, and then colors `S` back in with a fixed
//! script per configuration. Every script picks the smallest color outside
//! an explicitly listed forbidden set, and every extension is re-verified.

mod detect;
mod extend;
mod palette;
mod reduce;
mod solve;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::oracle::OracleError;
use crate::pcf::PcfReport;

pub use detect::{find_all, find_configuration, find_kind, is_clean};
pub use extend::{extend, extend_logged, ExtensionLog, StepRecord};
pub use palette::{boundary_palette, forbidden_base, reduced_neighbors};
pub use reduce::{reduce, s_reduced_graph};
pub use solve::{solve, solve_with, trace_to_dot, Solution, SolveOptions, TraceEntry};

/// Palette size guaranteed by the extension scripts.
pub const PALETTE: u8 = 9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("vertex {vertex} of S has {outside} neighbors outside S")]
    SReductionPrecondition { vertex: usize, outside: usize },
    #[error("vertex {0} has no neighbor in S")]
    NotOnBoundary(usize),
    #[error("{kind} script: every color is forbidden for vertex {vertex}")]
    ScriptExhausted { kind: &'static str, vertex: usize },
    #[error("{kind} script produced an invalid coloring ({} violations)", report.violations.len())]
    ExtensionUnsound { kind: &'static str, report: PcfReport },
    #[error("no reducible configuration in a graph on {0} vertices")]
    NoConfigurationFound(usize),
    #[error(transparent)]
    InvalidInput(#[from] GraphError),
    #[error("oracle fallback failed: {0}")]
    Oracle(#[from] OracleError),
    #[error("reduced coloring does not match the plan's reduced graph")]
    ColoringMismatch,
}

/// Degree of the outside neighbor `x1` of the 3-vertex in a `K2` triangle;
/// the two cases remove different sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PendantDegree {
    Three,
    Four,
}

/// Which case of the pentagon-with-a-bad-vertex configuration applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BadCase {
    /// `z` is bad, witnessed by the 4-cycle `u z z1 u1`.
    Middle,
    /// `v` is bad, witnessed by the 4-cycle `u v v1 u1`.
    Side,
}

/// The ten reducible configurations, in detection priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConfigKind {
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
    K7,
    K8,
    K9,
    K10,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 10] = [
        ConfigKind::K1,
        ConfigKind::K2,
        ConfigKind::K3,
        ConfigKind::K4,
        ConfigKind::K5,
        ConfigKind::K6,
        ConfigKind::K7,
        ConfigKind::K8,
        ConfigKind::K9,
        ConfigKind::K10,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ConfigKind::K1 => "K1",
            ConfigKind::K2 => "K2",
            ConfigKind::K3 => "K3",
            ConfigKind::K4 => "K4",
            ConfigKind::K5 => "K5",
            ConfigKind::K6 => "K6",
            ConfigKind::K7 => "K7",
            ConfigKind::K8 => "K8",
            ConfigKind::K9 => "K9",
            ConfigKind::K10 => "K10",
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A located reducible configuration with its role-labelled vertices.
///
/// Roles are named `x, y, z, u, v, w` for the core vertices and `x1, x2,
/// y1, ...` for their outside neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigMatch {
    /// A vertex of degree at most two.
    K1 { v: usize },
    /// Triangle `xyz` with `d(x) = 3`; `x1` is the third neighbor of `x`.
    K2 {
        case: PendantDegree,
        x: usize,
        y: usize,
        z: usize,
        x1: usize,
        y1: usize,
        z1: usize,
        y2: Option<usize>,
        z2: Option<usize>,
    },
    /// Triangle of 4-vertices.
    K3 {
        x: usize,
        y: usize,
        z: usize,
        x1: usize,
        x2: usize,
        y1: usize,
        y2: usize,
        z1: usize,
        z2: usize,
    },
    /// Path `xyz` of 3-vertices whose middle vertex has the 4-neighbor `y1`.
    K4 { x: usize, y: usize, z: usize, y1: usize },
    /// Path `xyzw` of 3-vertices.
    K5 { x: usize, y: usize, z: usize, w: usize, y1: usize, z1: usize },
    /// 4-cycle `xyzw` with 3-vertices `x, y` and 4-vertex `z`.
    K6 {
        x: usize,
        y: usize,
        z: usize,
        w: usize,
        x1: usize,
        y1: usize,
        z1: usize,
        z2: usize,
        w1: usize,
        w2: Option<usize>,
    },
    /// 3-vertex `v` on the 4-cycles `xyzv` and `uwzv`.
    K7 { v: usize, x: usize, y: usize, z: usize, u: usize, w: usize, z1: usize },
    /// 5-cycle `xyzuv` whose 3-vertices are exactly `y, z, u`.
    K8 { x: usize, y: usize, z: usize, u: usize, v: usize, y1: usize, z1: usize, u1: usize },
    /// 5-cycle `xyzuv` with 3-vertices `x, z, v` where `z1` is a 3-vertex.
    K9 { x: usize, y: usize, z: usize, u: usize, v: usize, x1: usize, z1: usize, v1: usize },
    /// 5-cycle `xyzuv` with 3-vertices `x, z, v`, all outside neighbors of
    /// degree 4, and a bad 3-vertex witnessed through `u1`.
    K10 {
        case: BadCase,
        x: usize,
        y: usize,
        z: usize,
        u: usize,
        v: usize,
        x1: usize,
        z1: usize,
        v1: usize,
        u1: usize,
    },
}

impl ConfigMatch {
    pub fn kind(&self) -> ConfigKind {
        match self {
            ConfigMatch::K1 { .. } => ConfigKind::K1,
            ConfigMatch::K2 { .. } => ConfigKind::K2,
            ConfigMatch::K3 { .. } => ConfigKind::K3,
            ConfigMatch::K4 { .. } => ConfigKind::K4,
            ConfigMatch::K5 { .. } => ConfigKind::K5,
            ConfigMatch::K6 { .. } => ConfigKind::K6,
            ConfigMatch::K7 { .. } => ConfigKind::K7,
            ConfigMatch::K8 { .. } => ConfigKind::K8,
            ConfigMatch::K9 { .. } => ConfigKind::K9,
            ConfigMatch::K10 { .. } => ConfigKind::K10,
        }
    }

    /// Role name to vertex id, in role-declaration order. Optional roles
    /// appear only when bound.
    pub fn role_list(&self) -> Vec<(&'static str, usize)> {
        let mut r: Vec<(&'static str, usize)> = match *self {
            ConfigMatch::K1 { v } => vec![("v", v)],
            ConfigMatch::K2 { x, y, z, x1, y1, z1, .. } => {
                vec![("x", x), ("y", y), ("z", z), ("x1", x1), ("y1", y1), ("z1", z1)]
            }
            ConfigMatch::K3 { x, y, z, x1, x2, y1, y2, z1, z2 } => vec![
                ("x", x),
                ("y", y),
                ("z", z),
                ("x1", x1),
                ("x2", x2),
                ("y1", y1),
                ("y2", y2),
                ("z1", z1),
                ("z2", z2),
            ],
            ConfigMatch::K4 { x, y, z, y1 } => vec![("x", x), ("y", y), ("z", z), ("y1", y1)],
            ConfigMatch::K5 { x, y, z, w, y1, z1 } => {
                vec![("x", x), ("y", y), ("z", z), ("w", w), ("y1", y1), ("z1", z1)]
            }
            ConfigMatch::K6 { x, y, z, w, x1, y1, z1, z2, w1, .. } => vec![
                ("x", x),
                ("y", y),
                ("z", z),
                ("w", w),
                ("x1", x1),
                ("y1", y1),
                ("z1", z1),
                ("z2", z2),
                ("w1", w1),
            ],
            ConfigMatch::K7 { v, x, y, z, u, w, z1 } => {
                vec![("v", v), ("x", x), ("y", y), ("z", z), ("u", u), ("w", w), ("z1", z1)]
            }
            ConfigMatch::K8 { x, y, z, u, v, y1, z1, u1 } => vec![
                ("x", x),
                ("y", y),
                ("z", z),
                ("u", u),
                ("v", v),
                ("y1", y1),
                ("z1", z1),
                ("u1", u1),
            ],
            ConfigMatch::K9 { x, y, z, u, v, x1, z1, v1 } => vec![
                ("x", x),
                ("y", y),
                ("z", z),
                ("u", u),
                ("v", v),
                ("x1", x1),
                ("z1", z1),
                ("v1", v1),
            ],
            ConfigMatch::K10 { x, y, z, u, v, x1, z1, v1, u1, .. } => vec![
                ("x", x),
                ("y", y),
                ("z", z),
                ("u", u),
                ("v", v),
                ("x1", x1),
                ("z1", z1),
                ("v1", v1),
                ("u1", u1),
            ],
        };
        match *self {
            ConfigMatch::K2 { y2, z2, .. } => {
                r.extend(y2.map(|v| ("y2", v)));
                r.extend(z2.map(|v| ("z2", v)));
            }
            ConfigMatch::K6 { w2, .. } => r.extend(w2.map(|v| ("w2", v))),
            _ => {}
        }
        r
    }

    pub fn roles(&self) -> BTreeMap<&'static str, usize> {
        self.role_list().into_iter().collect()
    }

    /// The vertex set removed by this configuration's reduction.
    pub fn removed_set(&self) -> Vec<usize> {
        let mut s = match *self {
            ConfigMatch::K1 { v } | ConfigMatch::K7 { v, .. } => vec![v],
            ConfigMatch::K2 { case: PendantDegree::Three, x, x1, .. } => vec![x, x1],
            ConfigMatch::K2 { x, y, z, .. }
            | ConfigMatch::K3 { x, y, z, .. }
            | ConfigMatch::K4 { x, y, z, .. } => vec![x, y, z],
            ConfigMatch::K5 { x, y, z, w, .. } | ConfigMatch::K6 { x, y, z, w, .. } => vec![x, y, z, w],
            ConfigMatch::K8 { x, y, z, u, v, .. } => vec![x, y, z, u, v],
            ConfigMatch::K9 { x, y, z, u, v, z1, .. } => vec![x, y, z, u, v, z1],
            ConfigMatch::K10 { case: BadCase::Middle, x, y, z, u, v, z1, u1, .. } => {
                vec![x, y, z, u, v, z1, u1]
            }
            ConfigMatch::K10 { case: BadCase::Side, x, y, z, u, v, v1, u1, .. } => {
                vec![x, y, z, u, v, u1, v1]
            }
        };
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for ConfigMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.role_list().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}[{}]", self.kind(), parts.join(","))
    }
}

/// A configuration together with its reduced graph.
///
/// Vertex `i` of `reduced` is vertex `kept[i]` of the original graph. For
/// `K7` the reduced graph is `G - v` plus the edge `xu`, which is not an
/// S-reduction; everywhere else it is the S-reduced graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionPlan {
    pub matched: ConfigMatch,
    pub s: Vec<usize>,
    pub reduced: Graph,
    pub kept: Vec<usize>,
    /// Edges added between outside vertices, in original ids.
    pub added_edges: Vec<(usize, usize)>,
}

impl ReductionPlan {
    pub fn kind(&self) -> ConfigKind {
        self.matched.kind()
    }

    pub fn is_s_reduction(&self) -> bool {
        self.kind() != ConfigKind::K7
    }
}
