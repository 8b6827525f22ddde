//! Structural decomposition of path- and cycle-free graphs, and the
//! inequality audit built on it.
//!
//! Given a host graph that avoids both the loose path and the loose cycle
//! and contains a matching and a cherry-plus-edge, [`decompose`] fixes an
//! **anchor cherry** `Q` (the lexicographically first cherry that has a
//! disjoint edge), names its degree-two vertex the **apex** `x`, and splits
//! the world around the five anchor vertices `U = V(Q)`:
//!
//! - `W = V ∖ U`, split into the **quiet side** `W₀` (vertices of degree zero
//!   in `H[W]`) and the **active side** `W₁ = W ∖ W₀`;
//! - edges partition into `H[U]` (inside the anchor), `H[W]` (inside the
//!   complement), and the crossing classes `H₀` / `H₁` by which side of the
//!   complement they touch;
//! - crossing edges split further into `F⁰`/`F¹`/`F²` by how many non-apex
//!   anchor vertices they contain (their **flank contact**).
//!
//! Because the host avoids both patterns, several structural facts are
//! forced: no edge meets the anchor, the quiet side, and the active side at
//! once; an edge meeting the anchor in one vertex meets it at the apex; an
//! edge meeting it in two non-apex vertices stays inside one cherry edge;
//! and no `F¹` edge reaches the active side. [`decompose`] asserts all of
//! them rather than assuming them.
//!
//! [`audit_inequalities`] then evaluates a fixed list of exact edge-counting
//! inequalities on the decomposition (each gated by its side condition) and
//! reports every left/right value. [`random_sweep`] stress-tests the audit
//! on randomized greedy samples; [`connected_cover_sweep`] checks that every
//! maximal connected host of this kind on seven vertices embeds into the
//! clique-plus-pendants construction.

use crate::embed::contains_subgraph;
use crate::error::{DecomposeError, SearchError};
use crate::graph::ThreeGraph;
use crate::pattern::{adding_creates, Pattern};
use crate::triples::{choose2, rank_vmask};
use crate::turan::{enumerate_maximal, Anchor, Budget, SearchMode, TuranQuery};
use crate::zoo::Construction;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// The anchored decomposition of a path- and cycle-free host graph.
///
/// All vertex sets are exposed both as sorted lists and as bit masks; all
/// edge classes are colex rank lists over the host's labels.
#[derive(Clone, Debug)]
pub struct Decomposition {
    host: ThreeGraph,
    q: [usize; 2],
    x: usize,
    u: u32,
    w0: u32,
    w1: u32,
    h_u: Vec<usize>,
    h_w: Vec<usize>,
    h0: Vec<usize>,
    h1: Vec<usize>,
    f: [Vec<usize>; 3],
}

fn mask_to_verts(mut m: u32) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

impl Decomposition {
    pub fn host(&self) -> &ThreeGraph {
        &self.host
    }

    /// The anchor cherry's two edge ranks, sorted.
    pub fn q_ranks(&self) -> [usize; 2] {
        self.q
    }

    /// The apex: the vertex shared by both cherry edges.
    pub fn apex(&self) -> usize {
        self.x
    }

    /// The five anchor vertices.
    pub fn anchor_verts(&self) -> Vec<usize> {
        mask_to_verts(self.u)
    }

    /// Quiet-side vertices (degree zero within the complement).
    pub fn quiet_verts(&self) -> Vec<usize> {
        mask_to_verts(self.w0)
    }

    /// Active-side vertices.
    pub fn active_verts(&self) -> Vec<usize> {
        mask_to_verts(self.w1)
    }

    /// Edges inside the anchor set.
    pub fn anchor_edges(&self) -> &[usize] {
        &self.h_u
    }

    /// Edges inside the complement.
    pub fn complement_edges(&self) -> &[usize] {
        &self.h_w
    }

    /// Crossing edges touching the quiet side.
    pub fn quiet_crossing(&self) -> &[usize] {
        &self.h0
    }

    /// Crossing edges touching the active side.
    pub fn active_crossing(&self) -> &[usize] {
        &self.h1
    }

    /// Crossing edges with flank contact `k` (0, 1, or 2).
    pub fn flank_class(&self, k: usize) -> &[usize] {
        &self.f[k]
    }

    /// Crossing edges with flank contact `k` on the active side.
    pub fn flank_class_active(&self, k: usize) -> Vec<usize> {
        self.f[k].iter().copied().filter(|r| self.h1.contains(r)).collect()
    }

    /// One-paragraph rendering of the sets and class sizes.
    pub fn render(&self) -> String {
        format!(
            "anchor cherry ranks {:?}, apex {}, anchor {:?}\n\
             quiet side {:?}, active side {:?}\n\
             class sizes: anchor {}, complement {}, quiet crossing {}, active crossing {}\n\
             flank contact: F0 {}, F1 {}, F2 {}\n",
            self.q,
            self.x,
            self.anchor_verts(),
            self.quiet_verts(),
            self.active_verts(),
            self.h_u.len(),
            self.h_w.len(),
            self.h0.len(),
            self.h1.len(),
            self.f[0].len(),
            self.f[1].len(),
            self.f[2].len(),
        )
    }
}

/// All cherry choices admitting a disjoint edge, as sorted rank pairs in
/// lexicographic order.
fn cherry_choices(h: &ThreeGraph) -> Vec<([usize; 2], usize)> {
    let edges: Vec<(usize, u32)> = h.ranks().into_iter().map(|r| (r, rank_vmask(r))).collect();
    let mut out = Vec::new();
    for (i, &(ri, vi)) in edges.iter().enumerate() {
        for &(rj, vj) in edges.iter().skip(i + 1) {
            if (vi & vj).count_ones() != 1 {
                continue;
            }
            let both = vi | vj;
            if edges.iter().any(|&(_, vk)| vk & both == 0) {
                let x = (vi & vj).trailing_zeros() as usize;
                out.push(([ri, rj], x));
            }
        }
    }
    out
}

/// Decompose around one fixed cherry (already known to admit a disjoint edge).
fn decompose_at(h: &ThreeGraph, q: [usize; 2], x: usize) -> Decomposition {
    let u = rank_vmask(q[0]) | rank_vmask(q[1]);
    debug_assert_eq!(u.count_ones(), 5);
    let all: u32 = if h.order() == 32 { u32::MAX } else { (1u32 << h.order()) - 1 };
    let w = all & !u;

    let ranks = h.ranks();
    let mut h_w = Vec::new();
    let mut w1 = 0u32;
    for &r in &ranks {
        let vm = rank_vmask(r);
        if vm & u == 0 {
            h_w.push(r);
            w1 |= vm;
        }
    }
    let w0 = w & !w1;

    let xbit = 1u32 << x;
    let flanks = u & !xbit;
    let mut h_u = Vec::new();
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    let mut f: [Vec<usize>; 3] = Default::default();
    for &r in &ranks {
        let vm = rank_vmask(r);
        if vm & u == vm {
            h_u.push(r);
            continue;
        }
        if vm & u == 0 {
            continue; // already in h_w
        }
        // A crossing edge. The host's freeness forces it onto one side.
        assert!(
            !(vm & w0 != 0 && vm & w1 != 0),
            "crossing edge {r} meets the anchor, the quiet side, and the active side at once"
        );
        if vm & w0 != 0 {
            h0.push(r);
        } else {
            h1.push(r);
        }
        let k = (vm & flanks).count_ones() as usize;
        match k {
            0 => assert!(
                vm & u == xbit,
                "crossing edge {r} meets the anchor in one vertex that is not the apex"
            ),
            1 => {
                assert!(
                    vm & xbit != 0,
                    "flank-contact-one edge {r} does not pass through the apex"
                );
                assert!(
                    vm & w1 == 0,
                    "flank-contact-one edge {r} reaches the active side"
                );
            }
            2 => {
                let pair = vm & flanks;
                assert!(
                    pair & rank_vmask(q[0]) == pair || pair & rank_vmask(q[1]) == pair,
                    "flank-contact-two edge {r} straddles both cherry edges"
                );
            }
            _ => unreachable!("a crossing edge has at most two flank vertices"),
        }
        f[k].push(r);
    }

    assert_eq!(
        h_u.len() + h_w.len() + h0.len() + h1.len(),
        ranks.len(),
        "edge classes must partition the host"
    );
    assert_eq!(
        f[0].len() + f[1].len() + f[2].len(),
        h0.len() + h1.len(),
        "flank classes must cover the crossing edges"
    );

    Decomposition { host: h.clone(), q, x, u, w0, w1, h_u, h_w, h0, h1, f }
}

/// Check the host's preconditions and decompose around the lexicographically
/// first qualifying cherry.
pub fn decompose(h: &ThreeGraph) -> Result<Decomposition, DecomposeError> {
    for p in [Pattern::LoosePath, Pattern::LooseCycle] {
        if p.contained_in(h) {
            return Err(DecomposeError::ContainsForbidden(p));
        }
    }
    if !Pattern::Matching.contained_in(h) {
        return Err(DecomposeError::MissingMatching);
    }
    let choices = cherry_choices(h);
    let Some(&(q, x)) = choices.first() else {
        return Err(DecomposeError::MissingCherryPlusEdge);
    };
    Ok(decompose_at(h, q, x))
}

/// Decompose around every qualifying cherry choice (the audit must pass for
/// all of them, not only the canonical first one).
pub fn decompose_all(h: &ThreeGraph) -> Result<Vec<Decomposition>, DecomposeError> {
    for p in [Pattern::LoosePath, Pattern::LooseCycle] {
        if p.contained_in(h) {
            return Err(DecomposeError::ContainsForbidden(p));
        }
    }
    if !Pattern::Matching.contained_in(h) {
        return Err(DecomposeError::MissingMatching);
    }
    let choices = cherry_choices(h);
    if choices.is_empty() {
        return Err(DecomposeError::MissingCherryPlusEdge);
    }
    Ok(choices.into_iter().map(|(q, x)| decompose_at(h, q, x)).collect())
}

// ---------------------------------------------------------------------------
// Inequality audit
// ---------------------------------------------------------------------------

/// Outcome of one audited inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundStatus {
    /// Evaluated and satisfied.
    Pass,
    /// Evaluated and violated (falsifies the underlying bound — a loud bug).
    Fail,
    /// Side condition not met; left/right still show the would-be values.
    Skipped(String),
}

/// One audited inequality: `left <= right` under `name`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub name: &'static str,
    pub left: usize,
    pub right: usize,
    pub status: BoundStatus,
}

/// Full audit of one decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub rows: Vec<BoundRow>,
}

impl AuditReport {
    /// True when no evaluated row failed.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != BoundStatus::Fail)
    }

    /// Names of the failing rows.
    pub fn failures(&self) -> Vec<&'static str> {
        self.rows
            .iter()
            .filter(|r| r.status == BoundStatus::Fail)
            .map(|r| r.name)
            .collect()
    }

    /// Row lookup by name.
    pub fn row(&self, name: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// Fixed-width text table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.rows {
            let status = match &r.status {
                BoundStatus::Pass => "pass".to_string(),
                BoundStatus::Fail => "FAIL".to_string(),
                BoundStatus::Skipped(why) => format!("skip ({why})"),
            };
            let _ = writeln!(
                out,
                "{:width$}  {:>4} <= {:<4}  {status}",
                r.name, r.left, r.right
            );
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.all_pass() { "all applicable rows pass" } else { "FAILURES PRESENT" }
        );
        out
    }
}

fn row(name: &'static str, left: usize, right: usize, applicable: Option<String>) -> BoundRow {
    let status = match applicable {
        None => {
            if left <= right {
                BoundStatus::Pass
            } else {
                BoundStatus::Fail
            }
        }
        Some(why) => BoundStatus::Skipped(why),
    };
    BoundRow { name, left, right, status }
}

fn gate(cond: bool, why: &str) -> Option<String> {
    if cond {
        None
    } else {
        Some(why.to_string())
    }
}

/// Evaluate every audited inequality on a decomposition. Rows whose side
/// condition fails are reported as skipped; a failing row means the
/// underlying bound is violated and is never silently dropped.
pub fn audit_inequalities(d: &Decomposition) -> AuditReport {
    let host = &d.host;
    let n = host.order();
    let w0_size = d.w0.count_ones() as usize;
    let w1_size = d.w1.count_ones() as usize;
    let h_u = d.h_u.len();
    let h_w = d.h_w.len();
    let h0 = d.h0.len();
    let h1 = d.h1.len();
    let f1_0 = d.flank_class_active(0).len();
    let f1_2 = d.flank_class_active(2).len();
    let xbit = 1u32 << d.x;
    let flanks = d.u & !xbit;

    let mut rows = Vec::new();

    // The two partition identities, recorded so every report is
    // self-contained. (They are also hard assertions at build time.)
    rows.push(row("edge-partition", h_u + h_w + h0 + h1, host.edge_count(), None));
    rows.push(row(
        "flank-cover",
        d.f[0].len() + d.f[1].len() + d.f[2].len(),
        h0 + h1,
        None,
    ));

    // Cycle-freeness caps the two "block" edge counts.
    rows.push(row(
        "anchor-quiet-cap",
        h_u + h0,
        choose2(w0_size + 4),
        gate(w0_size >= 1, "quiet side is empty"),
    ));
    rows.push(row(
        "complement-cap",
        h_w,
        choose2(w1_size.saturating_sub(1)),
        gate(w1_size >= 6, "active side has fewer than six vertices"),
    ));

    // Per-vertex flank-contact structure over the complement.
    let mut exclusion_violations = 0usize;
    let mut max_f1 = 0usize;
    let mut max_f2 = 0usize;
    for v in mask_to_verts(d.w0 | d.w1) {
        let bit = 1u32 << v;
        let deg_k = |k: usize| d.f[k].iter().filter(|&&r| rank_vmask(r) & bit != 0).count();
        let (d0, d1, d2) = (deg_k(0), deg_k(1), deg_k(2));
        if d0 > 0 && d2 > 0 {
            exclusion_violations += 1;
        }
        max_f1 = max_f1.max(d1);
        max_f2 = max_f2.max(d2);
    }
    rows.push(row("contact-exclusion", exclusion_violations, 0, None));
    rows.push(row("one-flank-degree", max_f1, 4, None));
    rows.push(row("two-flank-degree", max_f2, 2, None));

    // Quiet-side degrees in the whole host.
    let quiet_max = d
        .quiet_verts()
        .into_iter()
        .map(|v| host.degree(v))
        .max()
        .unwrap_or(0);
    rows.push(row(
        "quiet-degree",
        quiet_max,
        4 + 2.max(w0_size.saturating_sub(1)),
        gate(w0_size >= 1, "quiet side is empty"),
    ));

    // Anchor interior: any active crossing edge forbids most anchor triples.
    rows.push(row(
        "anchor-interior-cap",
        h_u,
        6,
        gate(h1 > 0, "no active crossing edges"),
    ));

    // The four active-side counting bounds.
    rows.push(row(
        "two-flank-active-cap",
        f1_2,
        (2 * w1_size).saturating_sub(4),
        gate(w1_size >= 4, "active side has fewer than four vertices"),
    ));
    rows.push(row(
        "active-crossing-cap",
        h1,
        (2 * w1_size).saturating_sub(3),
        gate(w1_size >= 3, "active side has fewer than three vertices"),
    ));
    rows.push(row(
        "apex-active-cap",
        f1_0,
        w1_size,
        gate(w1_size >= 3, "active side has fewer than three vertices"),
    ));
    rows.push(row(
        "interior-plus-crossing-cap",
        h_u + h1,
        (2 * w1_size).saturating_sub(1),
        gate(w1_size >= 7, "active side has fewer than seven vertices"),
    ));

    // Refined cap on the anchor-plus-quiet block when a two-flank edge
    // reaches the active side, split by quiet-side size exactly as stated.
    let refined_bound = match w0_size {
        1 => 8,
        2..=4 => 3 * w0_size + 7,
        _ => choose2(w0_size + 2) + 1,
    };
    rows.push(row(
        "refined-anchor-quiet-cap",
        h_u + h0,
        refined_bound,
        gate(
            f1_2 > 0 && w0_size >= 1,
            if f1_2 == 0 { "no active two-flank edges" } else { "quiet side is empty" },
        ),
    ));

    // Every apex-contact edge's complement pair must be all-or-nothing
    // against every complement edge.
    let mut nonsep_violations = 0usize;
    for &e in &d.f[0] {
        let pair = rank_vmask(e) & !xbit;
        for &fr in &d.h_w {
            if (rank_vmask(fr) & pair).count_ones() == 1 {
                nonsep_violations += 1;
            }
        }
    }
    rows.push(row("apex-pair-nonseparability", nonsep_violations, 0, None));

    // Sharper complement cap available when the quiet side is empty, some
    // apex-contact edge reaches the active side, and the complement edges
    // share a vertex: the nonseparable pair then collapses the star.
    let common = d.h_w.iter().fold(u32::MAX, |acc, &r| acc & rank_vmask(r));
    let starred = !d.h_w.is_empty() && common != 0;
    rows.push(row(
        "starred-complement-cap",
        h_w,
        choose2(n.saturating_sub(8)) + 1,
        gate(
            w0_size == 0 && f1_0 > 0 && starred,
            if w0_size != 0 {
                "quiet side is nonempty"
            } else if f1_0 == 0 {
                "no active apex-contact edges"
            } else {
                "complement edges share no vertex"
            },
        ),
    ));

    let _ = flanks;
    AuditReport { rows }
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Result of the connected cover check: every maximal connected host on `n`
/// vertices that avoids the path, contains the cycle and a matching must
/// embed into the clique-plus-pendants construction on the same vertices.
#[derive(Clone, Debug, Serialize)]
pub struct CoverSweep {
    pub n: usize,
    /// Number of maximal graphs enumerated (up to isomorphism).
    pub enumerated: usize,
    /// Largest edge count among them.
    pub max_edges: usize,
    /// Edge lists of any graphs that failed to embed (expected: none).
    pub failures: Vec<Vec<[usize; 3]>>,
}

impl CoverSweep {
    pub fn all_covered(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        format!(
            "{} maximal connected graphs on {} vertices, max {} edges, {}\n",
            self.enumerated,
            self.n,
            self.max_edges,
            if self.all_covered() {
                "all embed into the clique-plus-pendants host".to_string()
            } else {
                format!("{} FAIL to embed", self.failures.len())
            }
        )
    }
}

/// Enumerate every edge-maximal connected path-free graph on `n` vertices
/// containing the loose cycle and a matching, and test each for embedding
/// into the clique-plus-pendants construction. Non-maximal graphs are
/// covered a fortiori.
pub fn connected_cover_sweep(n: usize, budget: &Budget) -> Result<CoverSweep, SearchError> {
    if !(7..=8).contains(&n) {
        return Err(SearchError::InvalidQuery(format!(
            "the cover sweep is defined for 7 or 8 vertices, got {n}"
        )));
    }
    let query = TuranQuery {
        n,
        forbidden: vec![Pattern::LoosePath],
        order: 1,
        must_contain: vec![
            Anchor::Pattern(Pattern::LooseCycle),
            Anchor::Pattern(Pattern::Matching),
        ],
        connected_only: true,
        excluded_hosts: Vec::new(),
    };
    let (maximal, _stats) = enumerate_maximal(&query, budget, SearchMode::Parallel)?;
    let host = Construction::K5Plus(n - 5).build(None).map_err(SearchError::Build)?;
    let mut max_edges = 0;
    let mut failures = Vec::new();
    for cf in &maximal {
        let g = cf.graph();
        max_edges = max_edges.max(g.edge_count());
        if !contains_subgraph(&host, &g) {
            failures.push(g.edges());
        }
    }
    Ok(CoverSweep { n, enumerated: maximal.len(), max_edges, failures })
}

/// Aggregate of one randomized audit campaign.
#[derive(Clone, Debug, Serialize)]
pub struct RandomSweep {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose sample was decomposed and audited.
    pub audited: usize,
    /// Trials whose samples never contained a matching (after retries).
    pub starved_matching: usize,
    /// Trials whose samples never contained a cherry-plus-edge.
    pub starved_cherry: usize,
    /// Per-row aggregate: name, times evaluated, times passed.
    pub row_stats: Vec<(String, usize, usize)>,
    /// Failing trials: trial index, sample seed, failing row names.
    pub failures: Vec<(usize, u64, Vec<String>)>,
}

impl RandomSweep {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// Deterministic multi-line rendering (byte-identical for equal inputs).
    pub fn render(&self) -> String {
        let mut out = format!(
            "randomized audit: n={} trials={} seed={}\n\
             audited {}  starved: matching {}, cherry-plus-edge {}\n",
            self.n, self.trials, self.seed, self.audited, self.starved_matching,
            self.starved_cherry
        );
        let width = self.row_stats.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
        for (name, evaluated, passed) in &self.row_stats {
            let _ = writeln!(out, "{name:width$}  evaluated {evaluated:>5}  passed {passed:>5}");
        }
        for (trial, seed, names) in &self.failures {
            let _ = writeln!(out, "FAIL trial {trial} (seed {seed}): {}", names.join(", "));
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.all_pass() { "no violations" } else { "VIOLATIONS FOUND" }
        );
        out
    }
}

/// Grow a random edge-maximal graph avoiding both patterns: shuffle all
/// triples and add greedily whenever neither pattern appears.
fn greedy_sample(n: usize, rng: &mut ChaCha8Rng) -> ThreeGraph {
    let mut order: Vec<usize> = (0..crate::triples::triple_count(n)).collect();
    order.shuffle(rng);
    let mut g = ThreeGraph::new(n).expect("order validated by caller");
    let mut masks: Vec<u32> = Vec::new();
    for rank in order {
        let vm = rank_vmask(rank);
        if adding_creates(Pattern::LoosePath, &masks, vm)
            || adding_creates(Pattern::LooseCycle, &masks, vm)
        {
            continue;
        }
        g.add_rank(rank).expect("rank in range");
        masks.push(vm);
    }
    g
}

const SAMPLE_RETRIES: u64 = 8;

/// Audit randomized greedy samples. Each trial draws up to a few samples
/// until one contains both required substructures; trials that never get
/// there are counted as starved, not failed. Equal inputs give a
/// byte-identical report.
pub fn random_sweep(n: usize, trials: usize, seed: u64) -> Result<RandomSweep, SearchError> {
    if !(8..=16).contains(&n) {
        return Err(SearchError::InvalidQuery(format!(
            "the randomized audit runs on 8 to 16 vertices, got {n}"
        )));
    }

    enum TrialOutcome {
        Audited(AuditReport),
        StarvedMatching,
        StarvedCherry,
    }

    let outcomes: Vec<(u64, TrialOutcome)> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let base = seed.wrapping_add(trial.wrapping_mul(SAMPLE_RETRIES));
            let mut last_missing_cherry = false;
            for attempt in 0..SAMPLE_RETRIES {
                let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(attempt));
                let g = greedy_sample(n, &mut rng);
                match decompose(&g) {
                    Ok(d) => return (base, TrialOutcome::Audited(audit_inequalities(&d))),
                    Err(DecomposeError::MissingMatching) => last_missing_cherry = false,
                    Err(DecomposeError::MissingCherryPlusEdge) => last_missing_cherry = true,
                    Err(e) => unreachable!("greedy samples avoid both patterns: {e}"),
                }
            }
            if last_missing_cherry {
                (base, TrialOutcome::StarvedCherry)
            } else {
                (base, TrialOutcome::StarvedMatching)
            }
        })
        .collect();

    let mut sweep = RandomSweep {
        n,
        trials,
        seed,
        audited: 0,
        starved_matching: 0,
        starved_cherry: 0,
        row_stats: Vec::new(),
        failures: Vec::new(),
    };
    for (trial, (sample_seed, outcome)) in outcomes.into_iter().enumerate() {
        match outcome {
            TrialOutcome::Audited(report) => {
                sweep.audited += 1;
                for r in &report.rows {
                    let slot = match sweep.row_stats.iter().position(|(n, _, _)| n == r.name) {
                        Some(i) => i,
                        None => {
                            sweep.row_stats.push((r.name.to_string(), 0, 0));
                            sweep.row_stats.len() - 1
                        }
                    };
                    match r.status {
                        BoundStatus::Pass => {
                            sweep.row_stats[slot].1 += 1;
                            sweep.row_stats[slot].2 += 1;
                        }
                        BoundStatus::Fail => sweep.row_stats[slot].1 += 1,
                        BoundStatus::Skipped(_) => {}
                    }
                }
                if !report.all_pass() {
                    sweep.failures.push((
                        trial,
                        sample_seed,
                        report.failures().iter().map(|s| s.to_string()).collect(),
                    ));
                }
            }
            TrialOutcome::StarvedMatching => sweep.starved_matching += 1,
            TrialOutcome::StarvedCherry => sweep.starved_cherry += 1,
        }
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::triple_rank;
    use crate::zoo;

    fn comet12() -> ThreeGraph {
        zoo::parse_name("co12").unwrap().build(None).unwrap()
    }

    #[test]
    fn comet_decomposition_matches_frozen_classes() {
        let d = decompose(&comet12()).unwrap();
        // Lexicographically first qualifying cherry: the two earliest star
        // edges sharing only the center, with the head edge disjoint.
        assert_eq!(
            d.q_ranks(),
            [triple_rank(0, 4, 5).unwrap(), triple_rank(0, 6, 7).unwrap()]
        );
        assert_eq!(d.apex(), 0);
        assert_eq!(d.anchor_verts(), vec![0, 4, 5, 6, 7]);
        assert_eq!(d.active_verts(), vec![1, 2, 3]);
        assert_eq!(d.quiet_verts(), vec![8, 9, 10, 11]);
        assert_eq!(d.anchor_edges().len(), 6);
        assert_eq!(d.complement_edges(), &[triple_rank(1, 2, 3).unwrap()]);
        assert_eq!(d.quiet_crossing().len(), 22);
        assert_eq!(d.active_crossing().len(), 3);
        assert_eq!(d.flank_class(0).len(), 9);
        assert_eq!(d.flank_class(1).len(), 16);
        assert_eq!(d.flank_class(2).len(), 0);
        assert_eq!(d.flank_class_active(0).len(), 3);
        assert_eq!(d.flank_class_active(1).len(), 0);
        assert_eq!(d.flank_class_active(2).len(), 0);
    }

    #[test]
    fn comet_audit_passes_with_tight_rows() {
        let d = decompose(&comet12()).unwrap();
        let report = audit_inequalities(&d);
        assert!(report.all_pass(), "{}", report.render());

        let tight = |name: &str, left: usize, right: usize| {
            let r = report.row(name).unwrap_or_else(|| panic!("row {name} missing"));
            assert_eq!(r.status, BoundStatus::Pass, "{name}");
            assert_eq!((r.left, r.right), (left, right), "{name}");
        };
        tight("anchor-quiet-cap", 28, 28);
        tight("anchor-interior-cap", 6, 6);
        tight("active-crossing-cap", 3, 3);
        tight("apex-active-cap", 3, 3);
        tight("quiet-degree", 7, 7);
        tight("one-flank-degree", 4, 4);

        for skipped in [
            "complement-cap",
            "two-flank-active-cap",
            "interior-plus-crossing-cap",
            "refined-anchor-quiet-cap",
            "starred-complement-cap",
        ] {
            assert!(
                matches!(report.row(skipped).unwrap().status, BoundStatus::Skipped(_)),
                "{skipped} should be gated off on this host"
            );
        }
    }

    #[test]
    fn preconditions_are_rejected_by_name() {
        let k5p2 = zoo::parse_name("k5plus2").unwrap().build(None).unwrap();
        assert!(matches!(
            decompose(&k5p2),
            Err(DecomposeError::ContainsForbidden(Pattern::LooseCycle))
        ));

        let star = zoo::parse_name("s12").unwrap().build(None).unwrap();
        assert!(matches!(decompose(&star), Err(DecomposeError::MissingMatching)));

        let matching = Pattern::Matching.graph();
        assert!(matches!(decompose(&matching), Err(DecomposeError::MissingCherryPlusEdge)));

        let path = Pattern::LoosePath.graph();
        assert!(matches!(
            decompose(&path),
            Err(DecomposeError::ContainsForbidden(Pattern::LoosePath))
        ));
    }

    #[test]
    fn every_cherry_choice_audits_clean_on_the_comet() {
        let all = decompose_all(&comet12()).unwrap();
        // Cherries are pairs of center edges with disjoint leaf pairs drawn
        // from the eight leaves: (28 * 15) / 2 choices.
        assert_eq!(all.len(), 210);
        for d in &all {
            assert_eq!(d.apex(), 0);
            let report = audit_inequalities(&d);
            assert!(report.all_pass(), "{}\n{}", d.render(), report.render());
        }
    }

    #[test]
    fn partition_identities_hold_on_random_samples() {
        let mut audited = 0;
        for seed in 0..200u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 8 + (seed as usize % 9);
            let g = greedy_sample(n, &mut rng);
            let d = match decompose(&g) {
                Ok(d) => d,
                Err(_) => continue,
            };
            audited += 1;
            let m = g.edge_count();
            assert_eq!(
                d.anchor_edges().len()
                    + d.complement_edges().len()
                    + d.quiet_crossing().len()
                    + d.active_crossing().len(),
                m
            );
            // The fused identity: anchor-plus-quiet block, active crossing,
            // complement.
            assert_eq!(
                (d.anchor_edges().len() + d.quiet_crossing().len())
                    + d.active_crossing().len()
                    + d.complement_edges().len(),
                m
            );
            assert_eq!(
                d.flank_class(0).len() + d.flank_class(1).len() + d.flank_class(2).len(),
                d.quiet_crossing().len() + d.active_crossing().len()
            );
            // The active side has at least three vertices whenever the
            // decomposition exists.
            assert!(d.active_verts().len() >= 3);
            let report = audit_inequalities(&d);
            assert!(report.all_pass(), "seed {seed}\n{}", report.render());
        }
        assert!(audited >= 150, "sampler starved: only {audited} of 200 decomposed");
    }

    #[test]
    fn random_sweep_is_deterministic_and_clean() {
        let a = random_sweep(12, 60, 7).unwrap();
        let b = random_sweep(12, 60, 7).unwrap();
        assert_eq!(a.render(), b.render());
        assert!(a.all_pass(), "{}", a.render());
        assert_eq!(a.audited + a.starved_matching + a.starved_cherry, 60);
        assert!(a.audited >= 55, "{}", a.render());
    }

    #[test]
    fn random_sweep_rejects_out_of_range_orders() {
        assert!(matches!(random_sweep(7, 5, 0), Err(SearchError::InvalidQuery(_))));
        assert!(matches!(random_sweep(17, 5, 0), Err(SearchError::InvalidQuery(_))));
    }

    #[test]
    fn seven_vertex_cover_sweep_is_complete() {
        let sweep = connected_cover_sweep(7, &Budget::UNLIMITED).unwrap();
        assert!(sweep.all_covered(), "{}", sweep.render());
        assert_eq!(sweep.max_edges, 12);
        assert!(sweep.enumerated >= 1);
        // The clique-plus-pendants host itself is one of the maximal graphs.
        let host = Construction::K5Plus(2).build(None).unwrap();
        assert_eq!(host.edge_count(), 12);
    }
}
