//! 3-uniform hypergraphs on a fixed labeled vertex set.

use crate::bits::EdgeBits;
use crate::error::GraphError;
use crate::triples::{rank_verts, rank_vmask, triple_count, triple_rank, MAX_N};

/// A 3-uniform hypergraph on vertices `0..n`, stored as one bit per colex
/// edge rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThreeGraph {
    n: usize,
    bits: EdgeBits,
}

impl ThreeGraph {
    /// Empty graph on `n` vertices (`n <= 20`).
    pub fn new(n: usize) -> Result<ThreeGraph, GraphError> {
        if n > MAX_N {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(ThreeGraph { n, bits: EdgeBits::EMPTY })
    }

    /// Graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[[usize; 3]]) -> Result<ThreeGraph, GraphError> {
        let mut g = ThreeGraph::new(n)?;
        for &[a, b, c] in edges {
            g.add_triple(a, b, c)?;
        }
        Ok(g)
    }

    /// Graph from a pre-validated rank bitset.
    pub(crate) fn from_bits(n: usize, bits: EdgeBits) -> ThreeGraph {
        debug_assert!(bits.iter_ones().all(|r| r < triple_count(n)));
        ThreeGraph { n, bits }
    }

    /// Complete 3-graph on `n` vertices.
    pub fn complete(n: usize) -> Result<ThreeGraph, GraphError> {
        let mut g = ThreeGraph::new(n)?;
        g.bits = EdgeBits::prefix(triple_count(n));
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.bits.count() as usize
    }

    /// Number of potential edges, `C(n, 3)`.
    #[inline]
    pub fn rank_count(&self) -> usize {
        triple_count(self.n)
    }

    #[inline]
    pub fn bits(&self) -> &EdgeBits {
        &self.bits
    }

    fn check_rank(&self, rank: usize) -> Result<(), GraphError> {
        if rank >= self.rank_count() {
            Err(GraphError::RankOutOfRange { rank, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Add the edge `a < b < c`; returns whether it was newly inserted.
    pub fn add_triple(&mut self, a: usize, b: usize, c: usize) -> Result<bool, GraphError> {
        if c >= self.n {
            if a < b && b < c {
                return Err(GraphError::VertexOutOfRange { vertex: c, n: self.n });
            }
            return Err(GraphError::InvalidTriple(a, b, c));
        }
        let rank = triple_rank(a, b, c)?;
        let fresh = !self.bits.get(rank);
        self.bits.set(rank);
        Ok(fresh)
    }

    /// Add the edge with the given colex rank; returns whether it was new.
    pub fn add_rank(&mut self, rank: usize) -> Result<bool, GraphError> {
        self.check_rank(rank)?;
        let fresh = !self.bits.get(rank);
        self.bits.set(rank);
        Ok(fresh)
    }

    /// Remove the edge `a < b < c`; returns whether it was present.
    pub fn remove_triple(&mut self, a: usize, b: usize, c: usize) -> Result<bool, GraphError> {
        let rank = triple_rank(a, b, c)?;
        self.check_rank(rank)?;
        let had = self.bits.get(rank);
        self.bits.clear(rank);
        Ok(had)
    }

    pub fn remove_rank(&mut self, rank: usize) -> Result<bool, GraphError> {
        self.check_rank(rank)?;
        let had = self.bits.get(rank);
        self.bits.clear(rank);
        Ok(had)
    }

    /// Is `{a, b, c}` an edge? Accepts the vertices in any order; returns
    /// `false` for degenerate or out-of-range triples.
    pub fn has_triple(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        match triple_rank(t[0], t[1], t[2]) {
            Ok(rank) => rank < self.rank_count() && self.bits.get(rank),
            Err(_) => false,
        }
    }

    #[inline]
    pub fn has_rank(&self, rank: usize) -> bool {
        self.bits.get(rank)
    }

    /// Edges in increasing colex rank order.
    pub fn edges(&self) -> Vec<[usize; 3]> {
        self.bits
            .iter_ones()
            .map(|r| {
                let v = rank_verts(r);
                [v[0] as usize, v[1] as usize, v[2] as usize]
            })
            .collect()
    }

    /// Edge ranks in increasing order.
    pub fn ranks(&self) -> Vec<usize> {
        self.bits.iter_ones().collect()
    }

    /// Vertex bitmasks of the edges, in increasing rank order.
    pub fn edge_vmasks(&self) -> Vec<u32> {
        self.bits.iter_ones().map(rank_vmask).collect()
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        let m = 1u32 << v;
        self.bits.iter_ones().filter(|&r| rank_vmask(r) & m != 0).count()
    }

    /// Degrees of all vertices.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for r in self.bits.iter_ones() {
            for &v in &rank_verts(r) {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Delete vertex `v` and relabel vertices above it downward by one.
    pub fn delete_vertex(&self, v: usize) -> Result<ThreeGraph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut out = ThreeGraph::new(self.n - 1)?;
        let shift = |x: usize| if x > v { x - 1 } else { x };
        for r in self.bits.iter_ones() {
            let [a, b, c] = rank_verts(r);
            let (a, b, c) = (a as usize, b as usize, c as usize);
            if a == v || b == v || c == v {
                continue;
            }
            out.add_triple(shift(a), shift(b), shift(c))?;
        }
        Ok(out)
    }

    /// Disjoint union: `other`'s vertices are relabeled to start at `self.n`.
    pub fn disjoint_union(&self, other: &ThreeGraph) -> Result<ThreeGraph, GraphError> {
        let n = self.n + other.n;
        let mut out = ThreeGraph::new(n)?;
        out.bits = self.bits;
        for r in other.bits.iter_ones() {
            let [a, b, c] = rank_verts(r);
            out.add_triple(a as usize + self.n, b as usize + self.n, c as usize + self.n)?;
        }
        Ok(out)
    }

    /// Whether every pair of vertices is joined by a path of edges. Graphs on
    /// one vertex (or zero) are connected; an isolated vertex in a larger
    /// graph makes it disconnected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let masks = self.edge_vmasks();
        let mut reached: u32 = 1; // start at vertex 0
        loop {
            let mut grew = false;
            for &m in &masks {
                if m & reached != 0 && m & !reached != 0 {
                    reached |= m;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        reached.count_ones() as usize == self.n
    }

    /// Edges lying entirely inside the vertex set given as a bitmask.
    pub fn edges_within(&self, vset: u32) -> Vec<usize> {
        self.bits
            .iter_ones()
            .filter(|&r| rank_vmask(r) & !vset == 0)
            .collect()
    }

    /// Change the vertex count without touching edges. Growing adds isolated
    /// vertices; shrinking is allowed only when no edge uses a removed vertex.
    pub fn set_order(&mut self, n: usize) -> Result<(), GraphError> {
        if n > MAX_N {
            return Err(GraphError::OrderTooLarge(n));
        }
        if n < self.n {
            let keep: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
            if let Some(r) = self.bits.iter_ones().find(|&r| rank_vmask(r) & !keep != 0) {
                let [a, b, c] = rank_verts(r);
                return Err(GraphError::VertexOutOfRange { vertex: c.max(b).max(a) as usize, n });
            }
        }
        self.n = n;
        Ok(())
    }

    /// Apply a vertex relabeling: `perm[old] = new`. `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ThreeGraph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::OrderMismatch(perm.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(GraphError::VertexOutOfRange { vertex: p, n: self.n });
            }
            seen[p] = true;
        }
        let mut out = ThreeGraph::new(self.n)?;
        for r in self.bits.iter_ones() {
            let [a, b, c] = rank_verts(r);
            let mut t = [perm[a as usize], perm[b as usize], perm[c as usize]];
            t.sort_unstable();
            out.add_triple(t[0], t[1], t[2])?;
        }
        Ok(out)
    }
}

impl std::fmt::Debug for ThreeGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ThreeGraph(n={}, m={}, edges={:?})", self.n, self.edge_count(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = ThreeGraph::from_edges(7, &[[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_triple(2, 3, 4));
        assert!(!g.has_triple(0, 1, 3));
        assert_eq!(g.edges(), vec![[0, 1, 2], [2, 3, 4], [4, 5, 6]]);
        assert_eq!(g.degrees(), vec![1, 1, 2, 1, 2, 1, 1]);
    }

    #[test]
    fn add_remove_and_errors() {
        let mut g = ThreeGraph::new(5).unwrap();
        assert!(g.add_triple(0, 1, 2).unwrap());
        assert!(!g.add_triple(0, 1, 2).unwrap());
        assert!(g.remove_triple(0, 1, 2).unwrap());
        assert!(!g.remove_triple(0, 1, 2).unwrap());
        assert!(matches!(g.add_triple(2, 1, 3), Err(GraphError::InvalidTriple(..))));
        assert!(matches!(g.add_triple(2, 3, 5), Err(GraphError::VertexOutOfRange { .. })));
        assert!(ThreeGraph::new(31).is_err());
    }

    #[test]
    fn degree_sum_is_three_times_edges() {
        let g = ThreeGraph::complete(9).unwrap();
        assert_eq!(g.edge_count(), 84);
        assert_eq!(g.degrees().iter().sum::<usize>(), 3 * 84);
    }

    #[test]
    fn delete_vertex_relabels() {
        // Deleting an edge's vertex drops exactly the edges through it.
        let g = ThreeGraph::from_edges(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4]]).unwrap();
        let h = g.delete_vertex(0).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.edges(), vec![[0, 1, 2], [1, 2, 3]]);
    }

    #[test]
    fn union_shifts_labels() {
        let k3 = ThreeGraph::complete(3).unwrap();
        let u = k3.disjoint_union(&k3).unwrap();
        assert_eq!(u.order(), 6);
        assert_eq!(u.edges(), vec![[0, 1, 2], [3, 4, 5]]);
        let empty3 = ThreeGraph::new(3).unwrap();
        let empty7 = empty3.disjoint_union(&ThreeGraph::new(4).unwrap()).unwrap();
        assert_eq!((empty7.order(), empty7.edge_count()), (7, 0));
    }

    #[test]
    fn connectivity() {
        assert!(ThreeGraph::new(1).unwrap().is_connected());
        assert!(!ThreeGraph::new(2).unwrap().is_connected());
        assert!(ThreeGraph::from_edges(3, &[[0, 1, 2]]).unwrap().is_connected());
        // Complete on 6 plus an isolated vertex is disconnected.
        let k6 = ThreeGraph::complete(6).unwrap();
        let k6k1 = k6.disjoint_union(&ThreeGraph::new(1).unwrap()).unwrap();
        assert!(!k6k1.is_connected());
        // A loose path is connected.
        let p = ThreeGraph::from_edges(7, &[[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap();
        assert!(p.is_connected());
    }

    #[test]
    fn relabel_permutes_edges() {
        let g = ThreeGraph::from_edges(4, &[[0, 1, 2]]).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(h.edges(), vec![[1, 2, 3]]);
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
    }
}
