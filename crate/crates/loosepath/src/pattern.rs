//! The five small forbidden/anchor patterns and fast containment tests.
//!
//! Each pattern is determined by the pairwise intersection sizes of its edges,
//! which makes containment checks cheap bitmask scans:
//!
//! | pattern            | edges | pairwise intersections         |
//! |--------------------|-------|--------------------------------|
//! | loose path         | 3     | sizes `{1, 1, 0}`              |
//! | loose cycle        | 3     | sizes `{1, 1, 1}`, no common vertex |
//! | matching           | 2     | size `0`                       |
//! | cherry             | 2     | size `1`                       |
//! | cherry + edge      | 3     | sizes `{1, 0, 0}`              |
//!
//! Three edges with intersection sizes `{1, 1, 0}` always span 7 distinct
//! vertices and form the loose path; the other rows are equally forced, so the
//! signature scan is exact. A generic embedding-based checker lives in
//! [`crate::embed`] as the independent reference implementation.

use crate::graph::ThreeGraph;
use serde::{Deserialize, Serialize};

/// A named small pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    /// `P`: the loose path — three edges chained by single shared vertices,
    /// seven vertices total.
    LoosePath,
    /// `C`: the loose cycle on three edges — pairwise single shared vertices,
    /// all distinct, six vertices total.
    LooseCycle,
    /// `M`: two disjoint edges.
    Matching,
    /// `P2`: two edges sharing exactly one vertex.
    Cherry,
    /// `P2uK3`: a cherry plus one edge disjoint from it.
    CherryPlusEdge,
}

pub const ALL_PATTERNS: [Pattern; 5] = [
    Pattern::LoosePath,
    Pattern::LooseCycle,
    Pattern::Matching,
    Pattern::Cherry,
    Pattern::CherryPlusEdge,
];

impl Pattern {
    /// Vertices of the minimal labeled copy.
    pub fn vertex_count(self) -> usize {
        match self {
            Pattern::LoosePath => 7,
            Pattern::LooseCycle => 6,
            Pattern::Matching => 6,
            Pattern::Cherry => 5,
            Pattern::CherryPlusEdge => 8,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Pattern::Matching | Pattern::Cherry => 2,
            _ => 3,
        }
    }

    /// The minimal labeled copy as a graph.
    pub fn graph(self) -> ThreeGraph {
        let edges: &[[usize; 3]] = match self {
            Pattern::LoosePath => &[[0, 1, 2], [2, 3, 4], [4, 5, 6]],
            Pattern::LooseCycle => &[[0, 1, 2], [2, 3, 4], [0, 4, 5]],
            Pattern::Matching => &[[0, 1, 2], [3, 4, 5]],
            Pattern::Cherry => &[[0, 1, 2], [2, 3, 4]],
            Pattern::CherryPlusEdge => &[[0, 1, 2], [2, 3, 4], [5, 6, 7]],
        };
        ThreeGraph::from_edges(self.vertex_count(), edges).expect("static pattern")
    }

    /// Symbol used by the command line and file formats.
    pub fn symbol(self) -> &'static str {
        match self {
            Pattern::LoosePath => "P",
            Pattern::LooseCycle => "C",
            Pattern::Matching => "M",
            Pattern::Cherry => "P2",
            Pattern::CherryPlusEdge => "P2uK3",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Pattern> {
        match s {
            "P" => Some(Pattern::LoosePath),
            "C" => Some(Pattern::LooseCycle),
            "M" => Some(Pattern::Matching),
            "P2" => Some(Pattern::Cherry),
            "P2uK3" => Some(Pattern::CherryPlusEdge),
            _ => None,
        }
    }

    /// Fast containment test via intersection signatures.
    pub fn contained_in(self, g: &ThreeGraph) -> bool {
        let masks = g.edge_vmasks();
        contained_in_masks(self, &masks)
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

#[inline]
fn isec(a: u32, b: u32) -> u32 {
    (a & b).count_ones()
}

/// Do three edges (as vertex masks) form a loose path?
#[inline]
pub fn is_loose_path(x: u32, y: u32, z: u32) -> bool {
    let (xy, yz, xz) = (isec(x, y), isec(y, z), isec(x, z));
    // Multiset {1,1,0} in some order.
    xy + yz + xz == 2 && xy <= 1 && yz <= 1 && xz <= 1
}

/// Do three edges form a loose cycle?
#[inline]
pub fn is_loose_cycle(x: u32, y: u32, z: u32) -> bool {
    isec(x, y) == 1 && isec(y, z) == 1 && isec(x, z) == 1 && x & y & z == 0
}

/// Do three edges form a cherry plus a disjoint edge?
#[inline]
pub fn is_cherry_plus_edge(x: u32, y: u32, z: u32) -> bool {
    let (xy, yz, xz) = (isec(x, y), isec(y, z), isec(x, z));
    xy + yz + xz == 1
}

/// Containment of `pattern` in a graph given as edge vertex-masks.
pub fn contained_in_masks(pattern: Pattern, masks: &[u32]) -> bool {
    let m = masks.len();
    match pattern {
        Pattern::Matching => {
            for i in 0..m {
                for j in (i + 1)..m {
                    if masks[i] & masks[j] == 0 {
                        return true;
                    }
                }
            }
            false
        }
        Pattern::Cherry => {
            for i in 0..m {
                for j in (i + 1)..m {
                    if isec(masks[i], masks[j]) == 1 {
                        return true;
                    }
                }
            }
            false
        }
        Pattern::LoosePath | Pattern::LooseCycle | Pattern::CherryPlusEdge => {
            let test: fn(u32, u32, u32) -> bool = match pattern {
                Pattern::LoosePath => is_loose_path,
                Pattern::LooseCycle => is_loose_cycle,
                _ => is_cherry_plus_edge,
            };
            for i in 0..m {
                for j in (i + 1)..m {
                    for k in (j + 1)..m {
                        if test(masks[i], masks[j], masks[k]) {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
}

/// Would adding edge `t` to a graph whose edges are `masks` create `pattern`?
/// Assumes the graph itself is already `pattern`-free.
pub fn adding_creates(pattern: Pattern, masks: &[u32], t: u32) -> bool {
    let m = masks.len();
    match pattern {
        Pattern::Matching => masks.iter().any(|&e| e & t == 0),
        Pattern::Cherry => masks.iter().any(|&e| isec(e, t) == 1),
        Pattern::LoosePath | Pattern::LooseCycle | Pattern::CherryPlusEdge => {
            let test: fn(u32, u32, u32) -> bool = match pattern {
                Pattern::LoosePath => is_loose_path,
                Pattern::LooseCycle => is_loose_cycle,
                _ => is_cherry_plus_edge,
            };
            for i in 0..m {
                for j in (i + 1)..m {
                    if test(masks[i], masks[j], t) {
                        return true;
                    }
                }
            }
            false
        }
    }
}

/// Would adding `t` create `pattern` through the specific existing edge `e`?
/// Used for incremental updates: when `e` is the newly added edge, the only
/// new copies of a pattern through a candidate `t` use both `t` and `e`.
pub fn adding_creates_via(pattern: Pattern, masks: &[u32], e: u32, t: u32) -> bool {
    match pattern {
        Pattern::Matching => e & t == 0,
        Pattern::Cherry => isec(e, t) == 1,
        Pattern::LoosePath | Pattern::LooseCycle | Pattern::CherryPlusEdge => {
            let test: fn(u32, u32, u32) -> bool = match pattern {
                Pattern::LoosePath => is_loose_path,
                Pattern::LooseCycle => is_loose_cycle,
                _ => is_cherry_plus_edge,
            };
            masks.iter().any(|&c| test(c, e, t))
        }
    }
}
