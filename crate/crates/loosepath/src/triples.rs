//! Colexicographic ranking of vertex triples.
//!
//! Every edge of a 3-uniform graph is a triple `a < b < c` of vertices. Triples
//! are numbered in colexicographic order via the combinatorial number system:
//!
//! ```text
//! rank(a, b, c) = C(c, 3) + C(b, 2) + C(a, 1)
//! ```
//!
//! Colex order is graded by the largest vertex, so the triples inside
//! `{0, .., m-1}` occupy exactly the ranks `0 .. C(m, 3)`. Ranks are therefore
//! stable across graph orders: growing a graph by a vertex appends ranks, and a
//! graph on `n` vertices embeds into one on `n + 1` vertices bit-for-bit.

use crate::error::GraphError;
use once_cell::sync::Lazy;

/// Largest supported vertex count.
pub const MAX_N: usize = 30;

/// Number of triples on [`MAX_N`] vertices: `C(30, 3)`.
pub const MAX_TRIPLES: usize = 4060;

/// `C(x, 2)` for small `x`.
#[inline]
pub const fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `C(x, 3)` for small `x`.
#[inline]
pub const fn choose3(x: usize) -> usize {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

/// Number of potential edges of a 3-uniform graph on `n` vertices.
#[inline]
pub const fn triple_count(n: usize) -> usize {
    choose3(n)
}

/// Colex rank of the triple `a < b < c`.
pub fn triple_rank(a: usize, b: usize, c: usize) -> Result<usize, GraphError> {
    if !(a < b && b < c) {
        return Err(GraphError::InvalidTriple(a, b, c));
    }
    if c >= MAX_N {
        return Err(GraphError::VertexOutOfRange { vertex: c, n: MAX_N });
    }
    Ok(choose3(c) + choose2(b) + a)
}

/// Inverse of [`triple_rank`]: the triple `[a, b, c]` with the given colex rank.
pub fn triple_unrank(rank: usize) -> Result<[usize; 3], GraphError> {
    if rank >= MAX_TRIPLES {
        return Err(GraphError::RankOutOfRange { rank, n: MAX_N });
    }
    let t = &TRIPLES[rank];
    Ok([t.verts[0] as usize, t.verts[1] as usize, t.verts[2] as usize])
}

/// Precomputed data for one triple rank.
pub struct TripleInfo {
    /// The triple as `[a, b, c]` with `a < b < c`.
    pub verts: [u8; 3],
    /// Bitmask of the three vertices.
    pub vmask: u32,
}

/// Table of all [`MAX_TRIPLES`] triples in colex order.
pub static TRIPLES: Lazy<Vec<TripleInfo>> = Lazy::new(|| {
    let mut out = Vec::with_capacity(MAX_TRIPLES);
    // Colex order enumerates by largest vertex, then middle, then smallest.
    for c in 2..MAX_N {
        for b in 1..c {
            for a in 0..b {
                out.push(TripleInfo {
                    verts: [a as u8, b as u8, c as u8],
                    vmask: (1 << a) | (1 << b) | (1 << c),
                });
            }
        }
    }
    debug_assert_eq!(out.len(), MAX_TRIPLES);
    out
});

/// Vertex bitmask of the triple with the given rank.
#[inline]
pub fn rank_vmask(rank: usize) -> u32 {
    TRIPLES[rank].vmask
}

/// The triple with the given rank, unchecked table lookup.
#[inline]
pub fn rank_verts(rank: usize) -> [u8; 3] {
    TRIPLES[rank].verts
}
