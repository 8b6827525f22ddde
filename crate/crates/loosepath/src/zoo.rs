//! Named 3-graph constructions: stars, comets, the G-family, pendant K₅
//! variants, complete graphs, pattern prototypes, and disjoint unions.
//!
//! Each construction has a fixed labeling convention (distinguished vertices
//! take the smallest labels), so building the same name twice yields the same
//! labeled graph and file outputs are reproducible byte-for-byte.
//!
//! Compact names follow a small grammar: a construction is a comma-separated
//! list of atoms, where an atom is a pattern symbol (`p`, `c`, `m`, `p2`,
//! `p2uk3`) or a kind prefix followed by its parameter (`k6`, `s10`, `co13`,
//! `ro16`, `g17`, `g27`, `g37`, `k5plus2`). A list of two or more atoms is a
//! disjoint union with components labeled consecutively: `k6,s10` is the
//! 16-vertex graph made of a complete block on the first six labels and a
//! star on the remaining ten.

use crate::error::BuildError;
use crate::graph::ThreeGraph;
use crate::pattern::Pattern;
use crate::triples::{choose2, choose3, MAX_N};
use std::fmt;

/// A fully parameterized construction name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Complete 3-graph on `n` vertices.
    Complete(usize),
    /// All triples through vertex 0, on `n` vertices.
    Star(usize),
    /// Complete block on `{0,1,2,3}` plus all triples `{0,a,b}` with `a,b ≥ 4`.
    Comet(usize),
    /// Externally supplied construction with `3 + C(n−5,2)` edges; buildable
    /// only when a validated definition has been configured.
    Rocket(usize),
    /// The edge `{1,2,3}` plus every triple through 0 that meets `{1,2,3}`.
    G1(usize),
    /// The edge `{0,1,2}` plus every triple meeting `{0,1,2}` in two vertices.
    G2(usize),
    /// All triples inside `{0..4}` except `{1,2,3}` and `{1,2,4}`, plus the
    /// pendant triples `{0,3,v}` and `{0,4,v}` for every `v ≥ 5`.
    G3(usize),
    /// Complete block on `{0..4}` plus `t` pendant triples `{0,1,v}`.
    K5Plus(usize),
    /// Minimal labeled copy of a pattern.
    Pattern(Pattern),
    /// Disjoint union; component `i` occupies the labels after component `i−1`.
    Union(Vec<Construction>),
}

/// A validated external definition for the rocket construction.
///
/// The supplied graph must have exactly `3 + C(n−5,2)` edges and contain no
/// loose path; anything else is rejected at load time.
#[derive(Clone, Debug)]
pub struct RocketDef {
    graph: ThreeGraph,
}

impl RocketDef {
    /// Validates and wraps a user-supplied rocket graph.
    pub fn new(graph: ThreeGraph) -> Result<Self, BuildError> {
        let n = graph.order();
        if n < 5 {
            return Err(BuildError::RocketInvalid {
                n,
                reason: "needs at least 5 vertices".into(),
            });
        }
        let want = 3 + choose2(n - 5);
        let got = graph.edge_count();
        if got != want {
            return Err(BuildError::RocketInvalid {
                n,
                reason: format!("has {got} edges, expected {want}"),
            });
        }
        if Pattern::LoosePath.contained_in(&graph) {
            return Err(BuildError::RocketInvalid {
                n,
                reason: "contains a loose path".into(),
            });
        }
        Ok(RocketDef { graph })
    }

    /// The validated rocket graph.
    pub fn graph(&self) -> &ThreeGraph {
        &self.graph
    }

    /// Number of vertices of the configured rocket.
    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

fn invalid(name: &str, n: usize, reason: &str) -> BuildError {
    BuildError::InvalidParameter {
        name: name.to_string(),
        n,
        reason: reason.to_string(),
    }
}

impl Construction {
    /// Number of vertices of the built graph.
    pub fn order(&self) -> usize {
        match self {
            Construction::Complete(n)
            | Construction::Star(n)
            | Construction::Comet(n)
            | Construction::Rocket(n)
            | Construction::G1(n)
            | Construction::G2(n)
            | Construction::G3(n) => *n,
            Construction::K5Plus(t) => 5 + t,
            Construction::Pattern(p) => p.vertex_count(),
            Construction::Union(parts) => parts.iter().map(Construction::order).sum(),
        }
    }

    /// Closed-form edge count the built graph must match.
    pub fn formula_edges(&self) -> usize {
        match self {
            Construction::Complete(n) => choose3(*n),
            Construction::Star(n) => choose2(n.saturating_sub(1)),
            Construction::Comet(n) => 4 + choose2(n.saturating_sub(4)),
            Construction::Rocket(n) => 3 + choose2(n.saturating_sub(5)),
            Construction::G1(n) | Construction::G2(n) => 3 * n - 8,
            Construction::G3(n) => 2 * n - 2,
            Construction::K5Plus(t) => 10 + t,
            Construction::Pattern(p) => p.edge_count(),
            Construction::Union(parts) => parts.iter().map(Construction::formula_edges).sum(),
        }
    }

    /// Builds the labeled graph under the fixed conventions.
    ///
    /// `rocket` supplies the externally configured rocket definition; it is
    /// consulted only by [`Construction::Rocket`] atoms. Building a rocket
    /// without one fails with [`BuildError::RocketUndefined`].
    pub fn build(&self, rocket: Option<&RocketDef>) -> Result<ThreeGraph, BuildError> {
        match self {
            Construction::Complete(n) => Ok(ThreeGraph::complete(*n)?),
            Construction::Star(n) => {
                let mut g = ThreeGraph::new(*n)?;
                for a in 1..*n {
                    for b in (a + 1)..*n {
                        g.add_triple(0, a, b)?;
                    }
                }
                Ok(g)
            }
            Construction::Comet(n) => {
                if *n < 4 {
                    return Err(invalid("comet", *n, "needs n >= 4"));
                }
                let mut g = ThreeGraph::new(*n)?;
                for a in 0..4 {
                    for b in (a + 1)..4 {
                        for c in (b + 1)..4 {
                            g.add_triple(a, b, c)?;
                        }
                    }
                }
                for a in 4..*n {
                    for b in (a + 1)..*n {
                        g.add_triple(0, a, b)?;
                    }
                }
                Ok(g)
            }
            Construction::Rocket(n) => {
                let def = rocket.ok_or(BuildError::RocketUndefined)?;
                if def.order() != *n {
                    return Err(BuildError::RocketInvalid {
                        n: def.order(),
                        reason: format!("configured for {} vertices, requested {n}", def.order()),
                    });
                }
                Ok(def.graph.clone())
            }
            Construction::G1(n) => {
                if *n < 4 {
                    return Err(invalid("g1", *n, "needs n >= 4"));
                }
                let mut g = ThreeGraph::new(*n)?;
                g.add_triple(1, 2, 3)?;
                for a in 1..*n {
                    for b in (a + 1)..*n {
                        if a <= 3 || b <= 3 {
                            g.add_triple(0, a, b)?;
                        }
                    }
                }
                Ok(g)
            }
            Construction::G2(n) => {
                if *n < 4 {
                    return Err(invalid("g2", *n, "needs n >= 4"));
                }
                let mut g = ThreeGraph::new(*n)?;
                g.add_triple(0, 1, 2)?;
                for a in 0..3 {
                    for b in (a + 1)..3 {
                        for v in 3..*n {
                            g.add_triple(a, b, v)?;
                        }
                    }
                }
                Ok(g)
            }
            Construction::G3(n) => {
                if *n < 5 {
                    return Err(invalid("g3", *n, "needs n >= 5"));
                }
                let mut g = ThreeGraph::new(*n)?;
                for a in 0..5 {
                    for b in (a + 1)..5 {
                        for c in (b + 1)..5 {
                            if (a, b, c) == (1, 2, 3) || (a, b, c) == (1, 2, 4) {
                                continue;
                            }
                            g.add_triple(a, b, c)?;
                        }
                    }
                }
                for v in 5..*n {
                    g.add_triple(0, 3, v)?;
                    g.add_triple(0, 4, v)?;
                }
                Ok(g)
            }
            Construction::K5Plus(t) => {
                let n = 5 + t;
                let mut g = ThreeGraph::new(n)?;
                for a in 0..5 {
                    for b in (a + 1)..5 {
                        for c in (b + 1)..5 {
                            g.add_triple(a, b, c)?;
                        }
                    }
                }
                for v in 5..n {
                    g.add_triple(0, 1, v)?;
                }
                Ok(g)
            }
            Construction::Pattern(p) => Ok(p.graph()),
            Construction::Union(parts) => {
                if parts.is_empty() {
                    return Err(invalid("union", 0, "needs at least one component"));
                }
                let mut acc: Option<ThreeGraph> = None;
                for part in parts {
                    let g = part.build(rocket)?;
                    acc = Some(match acc {
                        None => g,
                        Some(a) => a.disjoint_union(&g)?,
                    });
                }
                Ok(acc.expect("non-empty union"))
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Complete(n) => write!(f, "k{n}"),
            Construction::Star(n) => write!(f, "s{n}"),
            Construction::Comet(n) => write!(f, "co{n}"),
            Construction::Rocket(n) => write!(f, "ro{n}"),
            Construction::G1(n) => write!(f, "g1{n}"),
            Construction::G2(n) => write!(f, "g2{n}"),
            Construction::G3(n) => write!(f, "g3{n}"),
            Construction::K5Plus(t) => write!(f, "k5plus{t}"),
            Construction::Pattern(p) => write!(f, "{}", p.symbol().to_ascii_lowercase()),
            Construction::Union(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_atom(atom: &str) -> Result<Construction, BuildError> {
    match atom {
        "p" => return Ok(Construction::Pattern(Pattern::LoosePath)),
        "c" => return Ok(Construction::Pattern(Pattern::LooseCycle)),
        "m" => return Ok(Construction::Pattern(Pattern::Matching)),
        "p2" => return Ok(Construction::Pattern(Pattern::Cherry)),
        "p2uk3" => return Ok(Construction::Pattern(Pattern::CherryPlusEdge)),
        _ => {}
    }
    // Longest prefixes first, so `k5plus2` is never read as a complete graph.
    const KINDS: [(&str, fn(usize) -> Construction); 8] = [
        ("k5plus", Construction::K5Plus),
        ("g1", Construction::G1),
        ("g2", Construction::G2),
        ("g3", Construction::G3),
        ("co", Construction::Comet),
        ("ro", Construction::Rocket),
        ("k", Construction::Complete),
        ("s", Construction::Star),
    ];
    for (prefix, ctor) in KINDS {
        if let Some(rest) = atom.strip_prefix(prefix) {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let v: usize = rest
                    .parse()
                    .map_err(|_| BuildError::UnknownName(atom.to_string()))?;
                return Ok(ctor(v));
            }
        }
    }
    Err(BuildError::UnknownName(atom.to_string()))
}

/// Parses a compact construction name (see the module docs for the grammar).
pub fn parse_name(name: &str) -> Result<Construction, BuildError> {
    let lowered = name.trim().to_ascii_lowercase();
    if lowered.is_empty() {
        return Err(BuildError::UnknownName(name.to_string()));
    }
    let atoms = lowered
        .split(',')
        .map(|a| parse_atom(a.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if atoms.len() == 1 {
        Ok(atoms.into_iter().next().expect("one atom"))
    } else {
        Ok(Construction::Union(atoms))
    }
}

/// Resolves a construction from a kind word plus separate parameters, the
/// shape used by command-line flags (`--name star --n 7`).
///
/// `kind` may be a full word (`star`, `comet`, `rocket`, `complete`, `g1`,
/// `g2`, `g3`, `k5plus`), a pattern symbol, or any compact name, in which
/// case `n`/`t` must agree with it if given.
pub fn from_kind(kind: &str, n: Option<usize>, t: Option<usize>) -> Result<Construction, BuildError> {
    let lowered = kind.trim().to_ascii_lowercase();
    let built = match (lowered.as_str(), n, t) {
        ("complete" | "k", Some(n), _) => Construction::Complete(n),
        ("star" | "s", Some(n), _) => Construction::Star(n),
        ("comet" | "co", Some(n), _) => Construction::Comet(n),
        ("rocket" | "ro", Some(n), _) => Construction::Rocket(n),
        ("g1", Some(n), _) => Construction::G1(n),
        ("g2", Some(n), _) => Construction::G2(n),
        ("g3", Some(n), _) => Construction::G3(n),
        ("k5plus", _, Some(t)) => Construction::K5Plus(t),
        ("k5plus", Some(n), None) if n >= 5 => Construction::K5Plus(n - 5),
        _ => {
            let parsed = parse_name(&lowered)?;
            if let Some(n) = n {
                if parsed.order() != n {
                    return Err(invalid(&lowered, n, "order flag disagrees with the name"));
                }
            }
            parsed
        }
    };
    Ok(built)
}

/// One verdict row of the formula report.
#[derive(Clone, Debug)]
pub struct FormulaRow {
    /// Compact name of the checked construction.
    pub construction: String,
    /// Order at which it was built.
    pub n: usize,
    /// Property checked (`edge-count`, `path-free`, ...).
    pub property: String,
    /// Whether the built graph satisfies the property.
    pub pass: bool,
    /// Expected versus observed, for failed rows and the table output.
    pub detail: String,
}

/// Aggregated per-(construction, order, property) verdicts.
#[derive(Clone, Debug, Default)]
pub struct FormulaReport {
    pub rows: Vec<FormulaRow>,
}

impl FormulaReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FormulaRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn push(
        &mut self,
        construction: &Construction,
        property: &str,
        pass: bool,
        detail: String,
    ) {
        self.rows.push(FormulaRow {
            construction: construction.to_string(),
            n: construction.order(),
            property: property.to_string(),
            pass,
            detail,
        });
    }

    /// Renders the report as a tab-separated text table.
    pub fn render(&self) -> String {
        let mut out = String::from("construction\tn\tproperty\tverdict\tdetail\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                row.construction,
                row.n,
                row.property,
                if row.pass { "pass" } else { "FAIL" },
                row.detail,
            ));
        }
        let fails = self.rows.iter().filter(|r| !r.pass).count();
        out.push_str(&format!(
            "# {} checks, {} failed\n",
            self.rows.len(),
            fails
        ));
        out
    }
}

fn check_count(report: &mut FormulaReport, c: &Construction, g: &ThreeGraph) {
    let want = c.formula_edges();
    let got = g.edge_count();
    report.push(
        c,
        "edge-count",
        got == want,
        format!("expected {want}, built {got}"),
    );
}

fn check_bool(report: &mut FormulaReport, c: &Construction, property: &str, got: bool, want: bool) {
    report.push(c, property, got == want, format!("expected {want}, got {got}"));
}

/// Checks every construction's closed-form edge count and its containment
/// and freeness claims, for every order up to `max_n`.
///
/// A configured rocket is checked at its own order. Failures never abort the
/// sweep; they become failing rows.
///
/// # Panics
/// If `max_n` exceeds the supported width cap.
pub fn check_formulas(max_n: usize, rocket: Option<&RocketDef>) -> FormulaReport {
    assert!(max_n <= MAX_N, "max_n {max_n} exceeds the width cap {MAX_N}");
    let mut report = FormulaReport::default();
    let p = Pattern::LoosePath;
    let c = Pattern::LooseCycle;
    let m = Pattern::Matching;

    for n in 3..=max_n {
        let star = Construction::Star(n);
        let g = star.build(None).expect("star builds at any order");
        check_count(&mut report, &star, &g);
        check_bool(&mut report, &star, "path-free", !p.contained_in(&g), true);
        check_bool(&mut report, &star, "cycle-free", !c.contained_in(&g), true);
        check_bool(&mut report, &star, "matching-free", !m.contained_in(&g), true);

        let complete = Construction::Complete(n);
        let g = complete.build(None).expect("complete builds at any order");
        check_count(&mut report, &complete, &g);
        check_bool(&mut report, &complete, "path-free", !p.contained_in(&g), n <= 6);
        check_bool(&mut report, &complete, "contains-cycle", c.contained_in(&g), n >= 6);
        check_bool(&mut report, &complete, "contains-matching", m.contained_in(&g), n >= 6);
    }

    for n in 4..=max_n {
        let comet = Construction::Comet(n);
        let g = comet.build(None).expect("comet builds for n >= 4");
        check_count(&mut report, &comet, &g);
        check_bool(&mut report, &comet, "path-free", !p.contained_in(&g), true);
        check_bool(&mut report, &comet, "cycle-free", !c.contained_in(&g), true);
        if n >= 6 {
            check_bool(&mut report, &comet, "contains-matching", m.contained_in(&g), true);
            check_bool(&mut report, &comet, "connected", g.is_connected(), true);
        }

        for cons in [Construction::G1(n), Construction::G2(n)] {
            let g = cons.build(None).expect("g1/g2 build for n >= 4");
            check_count(&mut report, &cons, &g);
            check_bool(&mut report, &cons, "path-free", !p.contained_in(&g), true);
            check_bool(&mut report, &cons, "matching-free", !m.contained_in(&g), true);
            check_bool(&mut report, &cons, "connected", g.is_connected(), true);
            if n >= 6 {
                check_bool(&mut report, &cons, "contains-cycle", c.contained_in(&g), true);
            }
        }
    }

    for n in 5..=max_n {
        let g3 = Construction::G3(n);
        let g = g3.build(None).expect("g3 builds for n >= 5");
        check_count(&mut report, &g3, &g);
        check_bool(&mut report, &g3, "path-free", !p.contained_in(&g), true);
        check_bool(&mut report, &g3, "matching-free", !m.contained_in(&g), true);
        check_bool(&mut report, &g3, "connected", g.is_connected(), true);

        let t = n - 5;
        let k5p = Construction::K5Plus(t);
        let g = k5p.build(None).expect("k5plus builds while it fits");
        check_count(&mut report, &k5p, &g);
        check_bool(&mut report, &k5p, "path-free", !p.contained_in(&g), true);
        check_bool(&mut report, &k5p, "connected", g.is_connected(), true);
        if t >= 1 {
            check_bool(&mut report, &k5p, "contains-cycle", c.contained_in(&g), true);
            check_bool(&mut report, &k5p, "contains-matching", m.contained_in(&g), true);
        }
    }

    if let Some(def) = rocket {
        if def.order() <= max_n {
            let ro = Construction::Rocket(def.order());
            let g = ro.build(rocket).expect("configured rocket builds");
            check_count(&mut report, &ro, &g);
            check_bool(&mut report, &ro, "path-free", !p.contained_in(&g), true);
        }
    }

    for pat in crate::pattern::ALL_PATTERNS {
        if pat.vertex_count() <= max_n {
            let cons = Construction::Pattern(pat);
            let g = cons.build(None).expect("patterns build");
            check_count(&mut report, &cons, &g);
            check_bool(&mut report, &cons, "contains-itself", pat.contained_in(&g), true);
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spot_edge_counts_match_formulas() {
        let cases = [
            (Construction::Star(7), 15),
            (Construction::G1(9), 19),
            (Construction::G2(9), 19),
            (Construction::G3(9), 16),
            (Construction::K5Plus(2), 12),
            (Construction::Comet(14), 49),
            (Construction::Complete(6), 20),
        ];
        for (cons, want) in cases {
            let g = cons.build(None).unwrap();
            assert_eq!(g.edge_count(), want, "{cons}");
            assert_eq!(cons.formula_edges(), want, "{cons}");
        }
        assert_eq!(Construction::K5Plus(2).build(None).unwrap().order(), 7);
    }

    #[test]
    fn fixed_labels_are_the_documented_ones() {
        let comet = Construction::Comet(6).build(None).unwrap();
        for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 4, 5)] {
            assert!(comet.has_triple(a, b, c), "comet missing ({a},{b},{c})");
        }
        assert_eq!(comet.edge_count(), 5);

        let g1 = Construction::G1(5).build(None).unwrap();
        assert!(g1.has_triple(1, 2, 3));
        assert!(g1.has_triple(0, 1, 4));
        assert_eq!(g1.edge_count(), 7);

        let g2 = Construction::G2(5).build(None).unwrap();
        assert!(g2.has_triple(0, 1, 2));
        assert!(g2.has_triple(0, 1, 4));
        assert!(g2.has_triple(1, 2, 3));
        assert!(!g2.has_triple(0, 3, 4));

        let g3 = Construction::G3(7).build(None).unwrap();
        assert!(!g3.has_triple(1, 2, 3));
        assert!(!g3.has_triple(1, 2, 4));
        assert!(g3.has_triple(0, 3, 5));
        assert!(g3.has_triple(0, 4, 6));
        assert_eq!(g3.edge_count(), 12);

        let k5p = Construction::K5Plus(3).build(None).unwrap();
        assert!(k5p.has_triple(0, 1, 5));
        assert!(k5p.has_triple(0, 1, 7));
        assert!(k5p.has_triple(2, 3, 4));
    }

    #[test]
    fn parameter_floors_are_enforced() {
        assert!(matches!(
            Construction::Comet(3).build(None),
            Err(BuildError::InvalidParameter { .. })
        ));
        assert!(matches!(
            Construction::G1(3).build(None),
            Err(BuildError::InvalidParameter { .. })
        ));
        assert!(matches!(
            Construction::G3(4).build(None),
            Err(BuildError::InvalidParameter { .. })
        ));
        assert!(matches!(
            Construction::Union(vec![]).build(None),
            Err(BuildError::InvalidParameter { .. })
        ));
        // Exceeding the width cap surfaces as a graph-layer error.
        assert!(Construction::Star(MAX_N + 1).build(None).is_err());
    }

    #[test]
    fn rocket_requires_valid_configuration() {
        assert!(matches!(
            Construction::Rocket(16).build(None),
            Err(BuildError::RocketUndefined)
        ));

        // 7 vertices, 3 + C(2,2) = 4 edges, no loose path: accepted.
        let mut ok = ThreeGraph::new(7).unwrap();
        for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 1, 4), (0, 1, 5)] {
            ok.add_triple(a, b, c).unwrap();
        }
        let def = RocketDef::new(ok).unwrap();
        let built = Construction::Rocket(7).build(Some(&def)).unwrap();
        assert_eq!(built.edge_count(), 4);
        // Requesting a different order than the configured one is an error.
        assert!(matches!(
            Construction::Rocket(9).build(Some(&def)),
            Err(BuildError::RocketInvalid { .. })
        ));

        // Wrong edge count: rejected.
        let mut bad = ThreeGraph::new(7).unwrap();
        bad.add_triple(0, 1, 2).unwrap();
        assert!(matches!(RocketDef::new(bad), Err(BuildError::RocketInvalid { .. })));

        // Right count but contains a loose path: rejected.
        let mut pathy = ThreeGraph::new(7).unwrap();
        for (a, b, c) in [(0, 1, 2), (2, 3, 4), (4, 5, 6), (0, 1, 3)] {
            pathy.add_triple(a, b, c).unwrap();
        }
        assert!(matches!(RocketDef::new(pathy), Err(BuildError::RocketInvalid { .. })));
    }

    #[test]
    fn names_parse_and_roundtrip() {
        let cases = [
            ("k6", Construction::Complete(6)),
            ("s10", Construction::Star(10)),
            ("co13", Construction::Comet(13)),
            ("ro16", Construction::Rocket(16)),
            ("g17", Construction::G1(7)),
            ("g27", Construction::G2(7)),
            ("g312", Construction::G3(12)),
            ("k5plus2", Construction::K5Plus(2)),
            ("p", Construction::Pattern(Pattern::LoosePath)),
            ("p2uk3", Construction::Pattern(Pattern::CherryPlusEdge)),
            (
                "k6,s10",
                Construction::Union(vec![Construction::Complete(6), Construction::Star(10)]),
            ),
            (
                "k6,k6,k1",
                Construction::Union(vec![
                    Construction::Complete(6),
                    Construction::Complete(6),
                    Construction::Complete(1),
                ]),
            ),
        ];
        for (name, want) in cases {
            let parsed = parse_name(name).unwrap();
            assert_eq!(parsed, want, "{name}");
            assert_eq!(parse_name(&parsed.to_string()).unwrap(), parsed);
        }
        assert!(parse_name("frigate9").is_err());
        assert!(parse_name("k").is_err());
        assert!(parse_name("").is_err());
        assert!(parse_name("k6,,s3").is_err());
    }

    #[test]
    fn kind_plus_flags_resolves_like_the_cli() {
        assert_eq!(from_kind("star", Some(7), None).unwrap(), Construction::Star(7));
        assert_eq!(from_kind("rocket", Some(16), None).unwrap(), Construction::Rocket(16));
        assert_eq!(from_kind("k5plus", None, Some(2)).unwrap(), Construction::K5Plus(2));
        assert_eq!(from_kind("k5plus", Some(8), None).unwrap(), Construction::K5Plus(3));
        assert_eq!(from_kind("k6,s10", None, None).unwrap(), parse_name("k6,s10").unwrap());
        assert_eq!(from_kind("k6,s10", Some(16), None).unwrap(), parse_name("k6,s10").unwrap());
        assert!(from_kind("k6,s10", Some(15), None).is_err());
        assert!(from_kind("star", None, None).is_err());
    }

    #[test]
    fn union_components_are_labeled_consecutively() {
        let g = parse_name("k6,s10").unwrap().build(None).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.edge_count(), 20 + 36);
        assert!(g.has_triple(3, 4, 5));
        assert!(g.has_triple(6, 7, 8)); // star center is the 7th label
        assert!(!g.has_triple(7, 8, 9));
        assert!(!Pattern::LoosePath.contained_in(&g));
        assert!(Pattern::Matching.contained_in(&g));
    }

    #[test]
    fn formula_sweep_passes_through_n_12() {
        let report = check_formulas(12, None);
        assert!(
            report.all_pass(),
            "failures: {:?}",
            report.failures().collect::<Vec<_>>()
        );
        // The sweep covers every kind at its applicable orders.
        for needle in ["s12", "co12", "g112", "g212", "g312", "k5plus7", "k12"] {
            assert!(
                report.rows.iter().any(|r| r.construction == needle),
                "no rows for {needle}"
            );
        }
        let rendered = report.render();
        assert!(rendered.contains("edge-count"));
        assert!(rendered.contains("0 failed"));
    }

    proptest! {
        #[test]
        fn union_edge_counts_are_additive(parts in proptest::collection::vec(0usize..5, 1..4)) {
            let atoms: Vec<Construction> = parts
                .iter()
                .map(|&k| match k {
                    0 => Construction::Complete(4),
                    1 => Construction::Star(5),
                    2 => Construction::Comet(5),
                    3 => Construction::G3(5),
                    _ => Construction::K5Plus(1),
                })
                .collect();
            let total: usize = atoms.iter().map(|a| a.order()).sum();
            prop_assume!(total <= MAX_N);
            let whole = Construction::Union(atoms.clone()).build(None).unwrap();
            let sum: usize = atoms
                .iter()
                .map(|a| a.build(None).unwrap().edge_count())
                .sum();
            prop_assert_eq!(whole.edge_count(), sum);
            prop_assert_eq!(whole.order(), total);
        }

        #[test]
        fn display_parse_roundtrip_for_random_names(kinds in proptest::collection::vec((0usize..8, 4usize..10), 1..4)) {
            let atoms: Vec<Construction> = kinds
                .iter()
                .map(|&(k, n)| match k {
                    0 => Construction::Complete(n),
                    1 => Construction::Star(n),
                    2 => Construction::Comet(n),
                    3 => Construction::Rocket(n),
                    4 => Construction::G1(n),
                    5 => Construction::G2(n),
                    6 => Construction::G3(n),
                    _ => Construction::K5Plus(n - 4),
                })
                .collect();
            let cons = if atoms.len() == 1 {
                atoms.into_iter().next().unwrap()
            } else {
                Construction::Union(atoms)
            };
            let name = cons.to_string();
            prop_assert_eq!(parse_name(&name).unwrap(), cons);
        }
    }
}
