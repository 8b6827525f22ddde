//! Canonical labeling of small graphs.
//!
//! The canonical form of a graph is the lexicographically smallest edge bit
//! vector over all vertex relabelings, where rank 0 is the most significant
//! position and "edge absent" sorts before "edge present". Two graphs are
//! isomorphic exactly when their canonical forms are equal.
//!
//! The search assigns new labels `0, 1, 2, ...` one at a time. Because colex
//! ranks are graded by maximum vertex, fixing the vertices labeled `0..=k`
//! fixes the first `C(k+1, 3)` bits of the vector; the bits contributed by
//! labeling a new vertex `k` form one contiguous block that we pack into a
//! `u128` (blocks have `C(k, 2) <= C(16, 2) = 120` bits for orders up to 17,
//! in rank order from the most significant end, so integer comparison is
//! block-wise lexicographic comparison). A breadth-first sweep keeps every
//! partial labeling that is still lexicographically minimal; two surviving
//! extensions of one partial labeling by vertices `w`, `w'` collapse to one
//! whenever the transposition `(w w')` is an automorphism of the whole graph,
//! which keeps the frontier small on the symmetric graphs this is used for.

use crate::bits::EdgeBits;
use crate::error::GraphError;
use crate::graph::ThreeGraph;
use crate::triples::rank_verts;
use sha2::{Digest, Sha256};

/// Largest order supported by [`canonical_form`]: blocks must fit in 128 bits.
pub const CANON_MAX_N: usize = 17;

/// A canonical form: order plus the lex-minimal edge bit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalForm {
    n: usize,
    bits: EdgeBits,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &EdgeBits {
        &self.bits
    }

    /// The canonically labeled graph itself.
    pub fn graph(&self) -> ThreeGraph {
        ThreeGraph::from_bits(self.n, self.bits)
    }

    /// Short content hash (12 hex digits of SHA-256 over order and bits),
    /// used to name graph files deterministically.
    pub fn hash_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for w in self.bits.words() {
            h.update(w.to_le_bytes());
        }
        let digest = h.finalize();
        let mut s = String::with_capacity(12);
        for byte in digest.iter().take(6) {
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n).then_with(|| self.bits.lex_cmp(&other.bits))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// One labeling (as `labeling[new] = old`) achieving the canonical form.
pub fn canonical_labeling(g: &ThreeGraph) -> Result<Vec<usize>, GraphError> {
    let n = g.order();
    if n > CANON_MAX_N {
        return Err(GraphError::CanonOrderCap { n, cap: CANON_MAX_N });
    }
    let mut survivors: Vec<Vec<usize>> = vec![Vec::new()];
    for _level in 0..n {
        let mut evals: Vec<(usize, usize, u128)> = Vec::new();
        for (si, s) in survivors.iter().enumerate() {
            let mut used = 0u32;
            for &v in s {
                used |= 1 << v;
            }
            for w in 0..n {
                if used & (1 << w) != 0 {
                    continue;
                }
                evals.push((si, w, block_bits(g, s, w)));
            }
        }
        let best = evals.iter().map(|e| e.2).min().expect("candidates exist");
        let mut next: Vec<Vec<usize>> = Vec::new();
        for (si, s) in survivors.iter().enumerate() {
            let mut keep: Vec<usize> = Vec::new();
            'cand: for &(esi, w, block) in &evals {
                if esi != si || block != best {
                    continue;
                }
                for &w2 in &keep {
                    if transposition_is_automorphism(g, w, w2) {
                        continue 'cand;
                    }
                }
                keep.push(w);
            }
            for &w in &keep {
                let mut s2 = s.clone();
                s2.push(w);
                next.push(s2);
            }
        }
        survivors = next;
    }
    Ok(survivors.swap_remove(0))
}

/// Canonical form of `g` (orders up to [`CANON_MAX_N`]).
pub fn canonical_form(g: &ThreeGraph) -> Result<CanonicalForm, GraphError> {
    let labeling = canonical_labeling(g)?;
    let mut perm = vec![0usize; g.order()];
    for (new, &old) in labeling.iter().enumerate() {
        perm[old] = new;
    }
    let relabeled = g.relabel(&perm)?;
    Ok(CanonicalForm { n: g.order(), bits: *relabeled.bits() })
}

/// Isomorphism test via canonical forms.
pub fn are_isomorphic(a: &ThreeGraph, b: &ThreeGraph) -> Result<bool, GraphError> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// The block of edge bits fixed by giving the next label to old vertex `w`
/// after the partial labeling `s`: one bit per pair `i < j < s.len()`, in
/// colex rank order, first pair most significant.
fn block_bits(g: &ThreeGraph, s: &[usize], w: usize) -> u128 {
    let mut acc = 0u128;
    for j in 1..s.len() {
        for i in 0..j {
            let mut t = [s[i], s[j], w];
            t.sort_unstable();
            acc = (acc << 1) | u128::from(g.has_triple(t[0], t[1], t[2]));
        }
    }
    acc
}

pub(crate) fn transposition_is_automorphism(g: &ThreeGraph, u: usize, v: usize) -> bool {
    let swap = |x: usize| {
        if x == u {
            v
        } else if x == v {
            u
        } else {
            x
        }
    };
    g.bits().iter_ones().all(|r| {
        let [a, b, c] = rank_verts(r);
        let mut t = [swap(a as usize), swap(b as usize), swap(c as usize)];
        t.sort_unstable();
        g.has_triple(t[0], t[1], t[2])
    })
}
