//! Exact maximum-edge search under forbidden-pattern, containment, and
//! connectivity constraints, with full enumeration of the extremal family.
//!
//! The central operation is [`max_free`]: given a query naming the forbidden
//! patterns and any side constraints (required substructures, connectivity,
//! an exclusion list of host graphs that answers must not embed into), it
//! returns the exact maximum edge count and every maximizer up to
//! isomorphism. [`ladder`] iterates it, feeding each level's extremal family
//! into the next level's exclusion list, which makes the values strictly
//! decrease level over level.
//!
//! # How the search works
//!
//! Edge ranks are decided one at a time in *descending* colex order, include
//! branch first. Descending order peels the graph block by block: all triples
//! containing the top vertex are decided before any triple avoiding it, so
//! vertex degrees become final top-down and can be pruned against early.
//!
//! The engine maintains a `live` set: the ranks that could still be added to
//! the current partial graph without completing a forbidden pattern. Pattern
//! creation is monotone in the edge set, so `live` only shrinks along a
//! branch, which yields two workhorses:
//!
//! - upper bound: current edges + live undecided ranks can never be beaten
//!   below this node, so the branch dies when that sum falls short of the
//!   best qualifying value found so far;
//! - maximality: at a leaf the graph is edge-maximal (no rank can be added
//!   while staying pattern-free) exactly when `live` is empty, because every
//!   non-chosen rank keeps its live bit until some chosen edge rules it out.
//!
//! Only maximal leaves can be extremal — adding an edge to a non-maximal
//! qualifying graph preserves every constraint the query can impose
//! (required substructures and connectivity survive edge additions, and a
//! supergraph embedding into an excluded host would drag the subgraph along
//! with it) — so everything else is discarded before the expensive checks.
//!
//! Symmetry is broken by degree order: every isomorphism class has a
//! labeling whose degree sequence is non-decreasing in the vertex index, so
//! the search discards leaves violating that order and prunes an include as
//! soon as it would push a vertex's (final-from-here) degree past the
//! already-final degree of the next vertex up. Distinct surviving labelings
//! of the same graph are merged afterwards by canonical form.
//!
//! Exclusion-list tests run only at qualifying maximal leaves (an exact
//! embedding test, not a speculative prune), and every reported extremal
//! graph is re-certified from scratch with the generic embedding tester
//! before it is returned.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as MemOrd};
use std::time::{Duration, Instant};

use crate::bits::EdgeBits;
use crate::canon::{canonical_form, CanonicalForm, CANON_MAX_N};
use crate::embed::{contains_subgraph, find_embedding};
use crate::error::SearchError;
use crate::graph::ThreeGraph;
use crate::pattern::{adding_creates_via, contained_in_masks, Pattern};
use crate::triples::{rank_verts, rank_vmask, triple_count, MAX_N};
use crate::{reference, zoo};

/// A required substructure: either a named pattern or an explicit graph that
/// must embed into every qualifying answer.
#[derive(Clone, Debug)]
pub enum Anchor {
    Pattern(Pattern),
    Graph(ThreeGraph),
}

impl Anchor {
    fn graph(&self) -> ThreeGraph {
        match self {
            Anchor::Pattern(p) => p.graph(),
            Anchor::Graph(g) => g.clone(),
        }
    }
}

impl std::fmt::Display for Anchor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Anchor::Pattern(p) => write!(f, "{}", p.symbol()),
            Anchor::Graph(g) => write!(f, "graph({}v,{}e)", g.order(), g.edge_count()),
        }
    }
}

/// Node and wall-clock limits for a search. Exceeding either produces an
/// explicit [`SearchError::Incomplete`], never a silently wrong exact claim.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }

    pub fn seconds(secs: u64) -> Budget {
        Budget { max_nodes: None, max_time: Some(Duration::from_secs(secs)) }
    }

    /// Reads `LOOSEPATH_BUDGET_NODES` and `LOOSEPATH_BUDGET_SECS` from the
    /// environment; unset or unparsable variables leave the field unlimited.
    pub fn from_env() -> Budget {
        let parse = |name: &str| std::env::var(name).ok().and_then(|v| v.parse::<u64>().ok());
        Budget {
            max_nodes: parse("LOOSEPATH_BUDGET_NODES"),
            max_time: parse("LOOSEPATH_BUDGET_SECS").map(Duration::from_secs),
        }
    }

    /// Field-wise: `self` where set, otherwise `fallback`.
    pub fn or(self, fallback: Budget) -> Budget {
        Budget {
            max_nodes: self.max_nodes.or(fallback.max_nodes),
            max_time: self.max_time.or(fallback.max_time),
        }
    }

    /// True once either limit is passed for a search that started at `start`
    /// and has expanded `nodes` nodes.
    pub fn exceeded(&self, nodes: u64, start: Instant) -> bool {
        self.max_nodes.is_some_and(|m| nodes > m)
            || self.max_time.is_some_and(|d| start.elapsed() >= d)
    }
}

/// Whether search subtrees run on one thread or a work-stealing pool. The
/// completed result is identical either way; `Sequential` exists for
/// debugging and fully reproducible traces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    #[default]
    Sequential,
    Parallel,
}

/// A maximum-edge query over `n`-vertex graphs.
#[derive(Clone, Debug)]
pub struct TuranQuery {
    pub n: usize,
    /// Patterns no qualifying graph may contain. Must be non-empty.
    pub forbidden: Vec<Pattern>,
    /// Level of this query in a ladder (1 = unrestricted). Informational:
    /// the constraints themselves live in `excluded_hosts`.
    pub order: usize,
    /// Substructures every qualifying graph must contain.
    pub must_contain: Vec<Anchor>,
    pub connected_only: bool,
    /// Same-order host graphs no qualifying graph may embed into. A ladder
    /// accumulates the extremal families of the levels below into this list.
    pub excluded_hosts: Vec<ThreeGraph>,
}

impl TuranQuery {
    /// An unrestricted (order-1) query.
    pub fn order_one(n: usize, forbidden: &[Pattern]) -> TuranQuery {
        TuranQuery {
            n,
            forbidden: forbidden.to_vec(),
            order: 1,
            must_contain: Vec::new(),
            connected_only: false,
            excluded_hosts: Vec::new(),
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 || self.n > MAX_N {
            return Err(SearchError::InvalidQuery(format!(
                "vertex count {} outside 1..={MAX_N}",
                self.n
            )));
        }
        if self.n > CANON_MAX_N {
            return Err(SearchError::InvalidQuery(format!(
                "vertex count {} exceeds the canonicalization bound {CANON_MAX_N}",
                self.n
            )));
        }
        if self.forbidden.is_empty() {
            return Err(SearchError::InvalidQuery(
                "at least one forbidden pattern is required".into(),
            ));
        }
        if self.order == 0 {
            return Err(SearchError::InvalidQuery("order must be at least 1".into()));
        }
        for anchor in &self.must_contain {
            let a = anchor.graph();
            for &f in &self.forbidden {
                if f.contained_in(&a) {
                    return Err(SearchError::InvalidQuery(format!(
                        "required substructure {anchor} contains the forbidden pattern {f}"
                    )));
                }
            }
        }
        for host in &self.excluded_hosts {
            if host.order() != self.n {
                return Err(SearchError::InvalidQuery(format!(
                    "excluded host has {} vertices, query has {}",
                    host.order(),
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// Search effort counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Decision nodes entered.
    pub nodes: u64,
    /// Leaves reached (full assignments, including fast-forwarded ones).
    pub leaves: u64,
    /// Leaves that were edge-maximal.
    pub maximal_leaves: u64,
    /// Subtrees cut by the counting upper bound.
    pub bound_prunes: u64,
    /// Wall-clock time of the whole call, in microseconds.
    pub wall_micros: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.maximal_leaves += o.maximal_leaves;
        self.bound_prunes += o.bound_prunes;
    }
}

/// The answer to a [`TuranQuery`].
#[derive(Clone, Debug)]
pub struct TuranResult {
    /// Maximum edge count, or `None` when no graph satisfies the query.
    pub value: Option<u32>,
    /// Every maximizer, as pairwise-distinct canonical forms, sorted.
    pub extremal: Vec<CanonicalForm>,
    pub stats: SearchStats,
}

impl TuranResult {
    /// The extremal family as canonically labeled graphs.
    pub fn extremal_graphs(&self) -> Vec<ThreeGraph> {
        self.extremal.iter().map(|c| c.graph()).collect()
    }
}

/// Results of [`ladder`]: one level per order, values strictly decreasing.
#[derive(Clone, Debug)]
pub struct TuranLadder {
    pub n: usize,
    pub forbidden: Vec<Pattern>,
    /// `results[s-1]` answers the order-`s` query. The ladder stops early at
    /// the first level with no qualifying graph.
    pub results: Vec<TuranResult>,
    /// Recorded closed-form value per order, where the tables cover this
    /// forbidden set (single-pattern ladders only).
    pub reference: Vec<Option<u32>>,
}

impl TuranLadder {
    pub fn values(&self) -> Vec<Option<u32>> {
        self.results.iter().map(|r| r.value).collect()
    }
}

struct Aborted;

/// Query data shared (read-only) by every worker, plus the coordination
/// atomics. `best` encodes `Option<u32>` as `value + 1` with `0` for "no
/// qualifying leaf yet" so that `fetch_max` implements the bound update.
struct Shared<'q> {
    n: usize,
    t: usize,
    nwords: usize,
    forbidden: Vec<Pattern>,
    anchors: &'q [Anchor],
    connected_only: bool,
    hosts: &'q [ThreeGraph],
    host_edge_counts: Vec<usize>,
    /// Enumeration mode: keep every qualifying maximal leaf, never bound-prune.
    collect_all: bool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    global_nodes: AtomicU64,
    aborted: AtomicBool,
    best: AtomicU64,
}

impl<'q> Shared<'q> {
    fn new(query: &'q TuranQuery, budget: &Budget, collect_all: bool) -> Shared<'q> {
        let t = triple_count(query.n);
        let mut forbidden = query.forbidden.clone();
        forbidden.sort_by_key(|p| p.symbol());
        forbidden.dedup();
        Shared {
            n: query.n,
            t,
            nwords: t.div_ceil(64).max(1),
            forbidden,
            anchors: &query.must_contain,
            connected_only: query.connected_only,
            hosts: &query.excluded_hosts,
            host_edge_counts: query.excluded_hosts.iter().map(|h| h.edge_count()).collect(),
            collect_all,
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| Instant::now() + d),
            global_nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            best: AtomicU64::new(0),
        }
    }
}

/// One branch's mutable search state. Cheap to clone at frontier splits.
#[derive(Clone)]
struct State {
    /// Next rank to decide; `-1` at a leaf.
    next: isize,
    /// Vertex masks of the chosen edges, in choice (descending-rank) order.
    masks: Vec<u32>,
    chosen: EdgeBits,
    chosen_count: u32,
    /// Ranks still addable to `chosen` without completing a forbidden
    /// pattern (chosen ranks excluded). Monotonically shrinks.
    live: EdgeBits,
    degs: Vec<u32>,
}

impl State {
    fn root(sh: &Shared) -> State {
        State {
            next: sh.t as isize - 1,
            masks: Vec::with_capacity(sh.t),
            chosen: EdgeBits::EMPTY,
            chosen_count: 0,
            live: EdgeBits::prefix(sh.t),
            degs: vec![0; sh.n],
        }
    }
}

/// Per-worker accumulators: local stats, local view of the best bound, and
/// the qualifying leaves found (edge count + raw words, compact).
#[derive(Default)]
struct Worker {
    nodes: u64,
    leaves: u64,
    maximal_leaves: u64,
    bound_prunes: u64,
    since_check: u32,
    local_best: u64,
    witnesses: Vec<(u32, Box<[u64]>)>,
}

impl Worker {
    /// Flush node counts and poll budget/abort roughly every 1024 nodes.
    fn checkpoint(&mut self, sh: &Shared) -> Result<(), Aborted> {
        self.since_check += 1;
        if self.since_check < 1024 {
            return Ok(());
        }
        let batch = self.since_check as u64;
        self.since_check = 0;
        let total = sh.global_nodes.fetch_add(batch, MemOrd::Relaxed) + batch;
        if sh.aborted.load(MemOrd::Relaxed) {
            return Err(Aborted);
        }
        if sh.max_nodes.is_some_and(|m| total > m)
            || sh.deadline.is_some_and(|d| Instant::now() >= d)
        {
            sh.aborted.store(true, MemOrd::Relaxed);
            return Err(Aborted);
        }
        self.local_best = self.local_best.max(sh.best.load(MemOrd::Relaxed));
        Ok(())
    }

    fn dfs(&mut self, sh: &Shared, st: &mut State) -> Result<(), Aborted> {
        self.nodes += 1;
        self.checkpoint(sh)?;

        let undecided_live =
            if st.next < 0 { 0 } else { st.live.count_below(st.next as usize + 1) };
        if !sh.collect_all {
            let potential = st.chosen_count as u64 + undecided_live as u64 + 1;
            if potential < self.local_best {
                self.bound_prunes += 1;
                return Ok(());
            }
        }
        if st.next < 0 || undecided_live == 0 {
            // Every remaining rank is unaddable, so excluding them all is the
            // only completion; evaluate the current graph as the leaf.
            return self.leaf(sh, st);
        }

        let r = st.next as usize;
        if st.live.get(r) {
            let [a, b, c] = rank_verts(r);
            let (a, b, c) = (a as usize, b as usize, c as usize);
            // All ranks through vertices above c are decided, so degs[c + 1]
            // is final; a choice pushing degs[c] past it can never reach a
            // leaf with a non-decreasing degree sequence.
            if c + 1 >= sh.n || st.degs[c] + 1 <= st.degs[c + 1] {
                let rmask = rank_vmask(r);
                let saved_live = st.live;
                st.live.clear(r);
                for t in saved_live.iter_ones() {
                    if t != r
                        && sh.forbidden.iter().any(|&f| {
                            adding_creates_via(f, &st.masks, rmask, rank_vmask(t))
                        })
                    {
                        st.live.clear(t);
                    }
                }
                st.masks.push(rmask);
                st.chosen.set(r);
                st.chosen_count += 1;
                st.degs[a] += 1;
                st.degs[b] += 1;
                st.degs[c] += 1;
                st.next = r as isize - 1;
                let res = self.dfs(sh, st);
                st.next = r as isize;
                st.degs[a] -= 1;
                st.degs[b] -= 1;
                st.degs[c] -= 1;
                st.chosen_count -= 1;
                st.chosen.clear(r);
                st.masks.pop();
                st.live = saved_live;
                res?;
            }
        }
        // Exclude branch: the chosen set is unchanged, so `live` is too; if
        // rank r is still addable it must be killed by a later inclusion or
        // the leaf will fail the maximality check.
        st.next = r as isize - 1;
        let res = self.dfs(sh, st);
        st.next = r as isize;
        res
    }

    fn leaf(&mut self, sh: &Shared, st: &State) -> Result<(), Aborted> {
        self.leaves += 1;
        if !st.live.is_empty_upto(sh.nwords) {
            return Ok(()); // some rank is still addable: not edge-maximal
        }
        self.maximal_leaves += 1;
        if st.degs.windows(2).any(|w| w[0] > w[1]) {
            return Ok(()); // another labeling of this graph is searched instead
        }
        let encoded = st.chosen_count as u64 + 1;
        if !sh.collect_all && encoded < self.local_best {
            return Ok(());
        }
        for anchor in sh.anchors {
            if let Anchor::Pattern(p) = anchor {
                if !contained_in_masks(*p, &st.masks) {
                    return Ok(());
                }
            }
        }
        let needs_graph = sh.connected_only
            || !sh.hosts.is_empty()
            || sh.anchors.iter().any(|a| matches!(a, Anchor::Graph(_)));
        if needs_graph {
            let g = ThreeGraph::from_bits(sh.n, st.chosen);
            for anchor in sh.anchors {
                if let Anchor::Graph(h) = anchor {
                    if find_embedding(h, &g).is_none() {
                        return Ok(());
                    }
                }
            }
            if sh.connected_only && !g.is_connected() {
                return Ok(());
            }
            for (host, &hc) in sh.hosts.iter().zip(&sh.host_edge_counts) {
                if st.chosen_count as usize <= hc && contains_subgraph(host, &g) {
                    return Ok(());
                }
            }
        }
        let words: Box<[u64]> = st.chosen.words()[..sh.nwords].into();
        if sh.collect_all {
            self.witnesses.push((st.chosen_count, words));
            return Ok(());
        }
        if encoded > self.local_best {
            self.local_best = encoded;
            sh.best.fetch_max(encoded, MemOrd::Relaxed);
        }
        if encoded == self.local_best {
            self.witnesses.push((st.chosen_count, words));
        }
        Ok(())
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            leaves: self.leaves,
            maximal_leaves: self.maximal_leaves,
            bound_prunes: self.bound_prunes,
            wall_micros: 0,
        }
    }
}

/// Collect the search states at `depth` decisions below the root, in the
/// deterministic include-first order the sequential search would visit them.
/// Only liveness and degree-order pruning apply here, so the union of the
/// returned subtrees covers everything the full search would.
fn frontier(sh: &Shared, st: &mut State, depth: usize, out: &mut Vec<State>) {
    if depth == 0 || st.next < 0 || st.live.count_below(st.next as usize + 1) == 0 {
        out.push(st.clone());
        return;
    }
    let r = st.next as usize;
    if st.live.get(r) {
        let [a, b, c] = rank_verts(r);
        let (a, b, c) = (a as usize, b as usize, c as usize);
        if c + 1 >= sh.n || st.degs[c] + 1 <= st.degs[c + 1] {
            let rmask = rank_vmask(r);
            let saved_live = st.live;
            st.live.clear(r);
            for t in saved_live.iter_ones() {
                if t != r
                    && sh
                        .forbidden
                        .iter()
                        .any(|&f| adding_creates_via(f, &st.masks, rmask, rank_vmask(t)))
                {
                    st.live.clear(t);
                }
            }
            st.masks.push(rmask);
            st.chosen.set(r);
            st.chosen_count += 1;
            st.degs[a] += 1;
            st.degs[b] += 1;
            st.degs[c] += 1;
            st.next = r as isize - 1;
            frontier(sh, st, depth - 1, out);
            st.next = r as isize;
            st.degs[a] -= 1;
            st.degs[b] -= 1;
            st.degs[c] -= 1;
            st.chosen_count -= 1;
            st.chosen.clear(r);
            st.masks.pop();
            st.live = saved_live;
        }
    }
    st.next = r as isize - 1;
    frontier(sh, st, depth - 1, out);
    st.next = r as isize;
}

/// Decisions below the root at which parallel subtrees split off.
const FRONTIER_DEPTH: usize = 12;

struct RawOutcome {
    stats: SearchStats,
    witnesses: Vec<(u32, Box<[u64]>)>,
    aborted: bool,
}

fn run_engine(sh: &Shared, mode: SearchMode) -> RawOutcome {
    match mode {
        SearchMode::Sequential => {
            let mut worker = Worker::default();
            let mut st = State::root(sh);
            let aborted = worker.dfs(sh, &mut st).is_err();
            RawOutcome { stats: worker.stats(), witnesses: worker.witnesses, aborted }
        }
        SearchMode::Parallel => {
            let mut tasks = Vec::new();
            frontier(sh, &mut State::root(sh), FRONTIER_DEPTH, &mut tasks);
            use rayon::prelude::*;
            let outcomes: Vec<(SearchStats, Vec<(u32, Box<[u64]>)>, bool)> = tasks
                .into_par_iter()
                .map(|mut st| {
                    let mut worker = Worker::default();
                    worker.local_best = sh.best.load(MemOrd::Relaxed);
                    let aborted = worker.dfs(sh, &mut st).is_err();
                    (worker.stats(), worker.witnesses, aborted)
                })
                .collect();
            let mut stats = SearchStats::default();
            let mut witnesses = Vec::new();
            let mut aborted = false;
            // `collect` preserves task order, so the merge is deterministic.
            for (s, w, a) in outcomes {
                stats.absorb(&s);
                witnesses.extend(w);
                aborted |= a;
            }
            RawOutcome { stats, witnesses, aborted }
        }
    }
}

fn decode_witnesses(
    n: usize,
    nwords: usize,
    witnesses: &[(u32, Box<[u64]>)],
    keep: impl Fn(u32) -> bool,
) -> Result<Vec<CanonicalForm>, SearchError> {
    let mut set = BTreeSet::new();
    for (count, words) in witnesses {
        if !keep(*count) {
            continue;
        }
        let mut bits = EdgeBits::EMPTY;
        bits.0[..nwords].copy_from_slice(words);
        let g = ThreeGraph::from_bits(n, bits);
        set.insert(canonical_form(&g)?);
    }
    Ok(set.into_iter().collect())
}

/// Re-verify every reported extremal graph with the generic embedding
/// tester, independently of the incremental bookkeeping the search used.
/// A failure here is an engine bug, so it panics rather than returning.
fn certify(query: &TuranQuery, value: u32, extremal: &[CanonicalForm]) {
    for cf in extremal {
        let g = cf.graph();
        assert_eq!(g.edge_count() as u32, value, "extremal graph has the wrong edge count");
        for &f in &query.forbidden {
            assert!(
                find_embedding(&f.graph(), &g).is_none(),
                "extremal graph contains forbidden pattern {f}"
            );
        }
        for anchor in &query.must_contain {
            assert!(
                find_embedding(&anchor.graph(), &g).is_some(),
                "extremal graph misses required substructure {anchor}"
            );
        }
        if query.connected_only {
            assert!(g.is_connected(), "extremal graph is not connected");
        }
        for host in &query.excluded_hosts {
            assert!(
                !contains_subgraph(host, &g),
                "extremal graph embeds into an excluded host"
            );
        }
    }
}

/// Exact maximum edge count over `n`-vertex graphs satisfying `query`, with
/// every maximizer up to isomorphism.
///
/// Exceeding `budget` yields [`SearchError::Incomplete`] carrying the best
/// qualifying value and witnesses found so far (a lower bound, never
/// reported as exact). Completed results are independent of `mode`.
pub fn max_free(
    query: &TuranQuery,
    budget: &Budget,
    mode: SearchMode,
) -> Result<TuranResult, SearchError> {
    query.validate()?;
    let start = Instant::now();
    let sh = Shared::new(query, budget, false);
    let out = run_engine(&sh, mode);
    let best = sh.best.load(MemOrd::Relaxed);
    let value = if best == 0 { None } else { Some((best - 1) as u32) };
    let extremal =
        decode_witnesses(query.n, sh.nwords, &out.witnesses, |c| Some(c as u64 + 1) == Some(best))?;
    if out.aborted {
        return Err(SearchError::Incomplete {
            nodes: sh.global_nodes.load(MemOrd::Relaxed),
            best: value,
            witnesses: extremal.iter().map(|c| c.graph()).collect(),
        });
    }
    if let Some(v) = value {
        certify(query, v, &extremal);
    }
    let mut stats = out.stats;
    stats.wall_micros = start.elapsed().as_micros() as u64;
    Ok(TuranResult { value, extremal, stats })
}

/// Every edge-maximal graph satisfying `query` (not only the maximizers),
/// up to isomorphism. The bound prune is disabled; all other machinery is
/// shared with [`max_free`].
pub fn enumerate_maximal(
    query: &TuranQuery,
    budget: &Budget,
    mode: SearchMode,
) -> Result<(Vec<CanonicalForm>, SearchStats), SearchError> {
    query.validate()?;
    let start = Instant::now();
    let sh = Shared::new(query, budget, true);
    let out = run_engine(&sh, mode);
    let all = decode_witnesses(query.n, sh.nwords, &out.witnesses, |_| true)?;
    if out.aborted {
        return Err(SearchError::Incomplete {
            nodes: sh.global_nodes.load(MemOrd::Relaxed),
            best: all.iter().map(|c| c.graph().edge_count() as u32).max(),
            witnesses: all.iter().map(|c| c.graph()).collect(),
        });
    }
    for cf in &all {
        let g = cf.graph();
        certify(query, g.edge_count() as u32, std::slice::from_ref(cf));
        let _ = g;
    }
    let mut stats = out.stats;
    stats.wall_micros = start.elapsed().as_micros() as u64;
    Ok((all, stats))
}

/// Iterated maxima: level `s` repeats the query with the extremal families
/// of levels `1..s` as excluded hosts, so each level's answers embed into no
/// lower-level answer and the values strictly decrease.
///
/// Stops early at the first level with no qualifying graph. A completed
/// level pair violating strict decrease is an engine bug surfaced as
/// [`SearchError::LadderNotDecreasing`].
pub fn ladder(
    n: usize,
    forbidden: &[Pattern],
    max_order: usize,
    budget: &Budget,
    mode: SearchMode,
) -> Result<TuranLadder, SearchError> {
    ladder_with(n, forbidden, max_order, &[], false, budget, mode)
}

/// [`ladder`] with extra side constraints applied at every level (used by
/// conditional queries; anchors and connectivity survive edge additions, so
/// the maximal-leaf argument is unaffected).
pub fn ladder_with(
    n: usize,
    forbidden: &[Pattern],
    max_order: usize,
    must_contain: &[Anchor],
    connected_only: bool,
    budget: &Budget,
    mode: SearchMode,
) -> Result<TuranLadder, SearchError> {
    if max_order == 0 {
        return Err(SearchError::InvalidQuery("ladder needs at least one order".into()));
    }
    let mut results: Vec<TuranResult> = Vec::new();
    let mut hosts: Vec<ThreeGraph> = Vec::new();
    for s in 1..=max_order {
        let query = TuranQuery {
            n,
            forbidden: forbidden.to_vec(),
            order: s,
            must_contain: must_contain.to_vec(),
            connected_only,
            excluded_hosts: hosts.clone(),
        };
        let result = max_free(&query, budget, mode)?;
        if let (Some(prev), Some(cur)) =
            (results.last().and_then(|r| r.value), result.value)
        {
            if cur >= prev {
                return Err(SearchError::LadderNotDecreasing {
                    order: s,
                    value: cur,
                    prev_order: s - 1,
                    prev,
                });
            }
        }
        let done = result.value.is_none();
        hosts.extend(result.extremal.iter().map(|c| c.graph()));
        results.push(result);
        if done {
            break;
        }
    }
    let reference = ladder_reference(n, forbidden, results.len());
    Ok(TuranLadder { n, forbidden: forbidden.to_vec(), results, reference })
}

/// Recorded table values per order for single-pattern ladders; `None` when
/// the tables don't cover the forbidden set or the row.
fn ladder_reference(n: usize, forbidden: &[Pattern], levels: usize) -> Vec<Option<u32>> {
    let pattern = match forbidden {
        [p] => *p,
        _ => return vec![None; levels],
    };
    (1..=levels).map(|s| reference::data().value(pattern, s, n)).collect()
}

/// Maximum edges among forbidden-free graphs containing every anchor, with
/// optional connectivity; `order > 1` iterates with exclusion exactly like
/// [`ladder`] and returns the top level.
pub fn conditional(
    n: usize,
    forbidden: &[Pattern],
    anchors: &[Anchor],
    connected_only: bool,
    order: usize,
    budget: &Budget,
    mode: SearchMode,
) -> Result<TuranResult, SearchError> {
    let lad = ladder_with(n, forbidden, order, anchors, connected_only, budget, mode)?;
    match lad.results.into_iter().nth(order - 1) {
        Some(r) => Ok(r),
        // The ladder stopped early: no qualifying graph at this order.
        None => Ok(TuranResult { value: None, extremal: Vec::new(), stats: SearchStats::default() }),
    }
}

/// One line of a [`CheckReport`].
#[derive(Clone, Debug)]
pub struct CheckRow {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

/// Comparison report between search results and the recorded tables.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn push(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.rows.push(CheckRow { label: label.into(), pass, detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    /// Tab-separated listing with a one-line summary footer.
    pub fn render(&self) -> String {
        let mut out = String::from("check\tstatus\tdetail\n");
        for row in &self.rows {
            let status = if row.pass { "ok" } else { "FAIL" };
            out.push_str(&format!("{}\t{}\t{}\n", row.label, status, row.detail));
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        out.push_str(&format!("# {} checks, {} failed\n", self.rows.len(), failed));
        out
    }
}

/// Canonical forms of a recorded family's members, built by name.
fn family_canon(names: &[String], n: usize) -> Result<Vec<CanonicalForm>, SearchError> {
    let mut set = BTreeSet::new();
    for name in names {
        let mut g = zoo::parse_name(name)?.build(None)?;
        g.set_order(n)?;
        set.insert(canonical_form(&g)?);
    }
    Ok(set.into_iter().collect())
}

/// Compare exact searches against the recorded tables for `n` up to
/// `search_up_to` (full ladders with extremal-family comparison where the
/// tables name the family), and verify internal consistency — strict
/// decrease and the recorded families' edge counts and freeness — for all
/// `n` up to `max_n`.
///
/// Any failing row marks a discrepancy; callers surface those with a
/// nonzero exit.
pub fn check_reference_tables(
    max_n: usize,
    search_up_to: usize,
    budget: &Budget,
    mode: SearchMode,
) -> Result<CheckReport, SearchError> {
    let mut report = CheckReport::default();
    let d = reference::data();
    let ladders: [(&str, Pattern); 3] = [
        ("path", Pattern::LoosePath),
        ("matching", Pattern::Matching),
        ("cycle", Pattern::LooseCycle),
    ];
    for (label, pattern) in ladders {
        let tables = d.ladder(pattern).expect("the three single-pattern ladders are on record");
        let max_order = tables.len();
        let min_n = tables
            .iter()
            .flat_map(|t| t.rows.iter().map(|r| r.n))
            .min()
            .unwrap_or(usize::MAX);
        for n in min_n..=search_up_to.min(max_n) {
            let lad = ladder(n, &[pattern], max_order, budget, mode)?;
            for table in tables {
                let Some(row) = table.row(n) else { continue };
                let order = table.order;
                let computed = lad.results.get(order - 1).and_then(|r| r.value);
                report.push(
                    format!("{label} order {order} n={n} value"),
                    computed == Some(row.value),
                    format!("table {}, search {:?}", row.value, computed),
                );
                if let Some(names) = &row.families {
                    let expected = family_canon(names, n)?;
                    let got = &lad.results[order - 1].extremal;
                    report.push(
                        format!("{label} order {order} n={n} family"),
                        *got == expected,
                        format!("table lists {}, search found {}", names.join(","), got.len()),
                    );
                }
            }
        }
    }
    // Cross-table identity at n=7: the top path level equals the top
    // matching level's extremal family.
    if search_up_to >= 7 && max_n >= 7 {
        let p = ladder(7, &[Pattern::LoosePath], 5, budget, mode)?;
        let m = ladder(7, &[Pattern::Matching], 4, budget, mode)?;
        let pe = p.results.get(4).map(|r| r.extremal.clone()).unwrap_or_default();
        let me = m.results.get(3).map(|r| r.extremal.clone()).unwrap_or_default();
        report.push(
            "path order 5 n=7 family equals matching order 4 family",
            !pe.is_empty() && pe == me,
            format!("{} vs {} graphs", pe.len(), me.len()),
        );
    }
    // Beyond the search window: internal consistency of the recorded data.
    for (label, pattern) in ladders {
        let tables = d.ladder(pattern).expect("checked above");
        let mut decreasing = true;
        for table in tables.iter().filter(|t| t.order >= 2) {
            for row in &table.rows {
                if let Some(prev) = d.value(pattern, table.order - 1, row.n) {
                    decreasing &= row.value < prev;
                }
            }
        }
        report.push(
            format!("{label} ladder strictly decreasing through n={max_n}"),
            decreasing,
            "every order-(s+1) value below the order-s value at the same n",
        );
    }
    let families = reference::check_families(max_n, None);
    report.push(
        format!("recorded families consistent through n={max_n}"),
        families.all_pass(),
        format!(
            "{} family checks, {} failed",
            families.rows.len(),
            families.failures().count()
        ),
    );
    Ok(report)
}
