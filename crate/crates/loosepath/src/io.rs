//! Plain-text graph files (`.3g`) and coloring files (`.col`).
//!
//! `.3g`: the first significant line is `n m` (vertex count, edge count),
//! followed by exactly `m` lines `a b c` listing each edge's vertices (any
//! order, distinct, `< n`). `#` starts a comment running to end of line;
//! blank lines are ignored. Listing the same edge twice is an error. The
//! writer emits edges sorted by colex rank.
//!
//! `.col`: the first significant line is `n r` (vertex count, color count);
//! the remaining significant text is `C(n,3)` whitespace-separated colors in
//! `0..r`, one per triple in colex-rank order, free to wrap across lines.
//! The same comment and blank-line rules apply.

use crate::error::FormatError;
use crate::graph::ThreeGraph;
use crate::ramsey::Coloring;
use crate::triples::triple_count;
use std::path::Path;

/// Parse a graph from `.3g` text.
pub fn parse_3g(text: &str) -> Result<ThreeGraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, s)| !s.is_empty());

    let (lno, header) = lines.next().ok_or_else(|| FormatError::parse(0, "empty file"))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_num(it.next(), lno, "vertex count")?;
    let m: usize = parse_num(it.next(), lno, "edge count")?;
    if it.next().is_some() {
        return Err(FormatError::parse(lno, "header must be exactly `n m`"));
    }

    let mut g = ThreeGraph::new(n)?;
    for _ in 0..m {
        let (lno, line) =
            lines.next().ok_or_else(|| FormatError::parse(0, "fewer edge lines than declared"))?;
        let mut it = line.split_whitespace();
        let mut t = [0usize; 3];
        for slot in &mut t {
            *slot = parse_num(it.next(), lno, "vertex")?;
        }
        if it.next().is_some() {
            return Err(FormatError::parse(lno, "edge line must be exactly `a b c`"));
        }
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(FormatError::parse(lno, "edge vertices must be distinct"));
        }
        if t[2] >= n {
            return Err(FormatError::parse(lno, format!("vertex {} out of range (n={n})", t[2])));
        }
        if !g.add_triple(t[0], t[1], t[2])? {
            return Err(FormatError::DuplicateEdge { line: lno, a: t[0], b: t[1], c: t[2] });
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(FormatError::parse(lno, "more edge lines than declared"));
    }
    Ok(g)
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| FormatError::parse(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| FormatError::parse(line, format!("invalid {what} `{tok}`")))
}

/// Render a graph as `.3g` text.
pub fn render_3g(g: &ThreeGraph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for [a, b, c] in g.edges() {
        out.push_str(&format!("{a} {b} {c}\n"));
    }
    out
}

pub fn read_3g_file(path: impl AsRef<Path>) -> Result<ThreeGraph, FormatError> {
    parse_3g(&std::fs::read_to_string(path)?)
}

pub fn write_3g_file(path: impl AsRef<Path>, g: &ThreeGraph) -> Result<(), FormatError> {
    Ok(std::fs::write(path, render_3g(g))?)
}

/// Parse a coloring from `.col` text.
pub fn parse_col(text: &str) -> Result<Coloring, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, s)| !s.is_empty());

    let (lno, header) = lines.next().ok_or_else(|| FormatError::parse(0, "empty file"))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_num(it.next(), lno, "vertex count")?;
    let r: usize = parse_num(it.next(), lno, "color count")?;
    if it.next().is_some() {
        return Err(FormatError::parse(lno, "header must be exactly `n r`"));
    }

    let want = triple_count(n);
    let mut assignment = Vec::with_capacity(want);
    for (lno, line) in lines {
        for tok in line.split_whitespace() {
            if assignment.len() == want {
                return Err(FormatError::parse(
                    lno,
                    format!("more than C({n},3) = {want} colors listed"),
                ));
            }
            let c: usize = tok
                .parse()
                .map_err(|_| FormatError::parse(lno, format!("invalid color `{tok}`")))?;
            if c >= r {
                return Err(FormatError::parse(
                    lno,
                    format!("color {c} out of range (r={r})"),
                ));
            }
            assignment.push(c as u8);
        }
    }
    if assignment.len() != want {
        return Err(FormatError::parse(
            0,
            format!("{} colors listed, expected C({n},3) = {want}", assignment.len()),
        ));
    }
    Coloring::new(n, r, assignment)
}

/// Render a coloring as `.col` text (twenty colors per line).
pub fn render_col(c: &Coloring) -> String {
    let mut out = format!("{} {}\n", c.n(), c.r());
    for chunk in c.assignment().chunks(20) {
        let row: Vec<String> = chunk.iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_col_file(path: impl AsRef<Path>) -> Result<Coloring, FormatError> {
    parse_col(&std::fs::read_to_string(path)?)
}

pub fn write_col_file(path: impl AsRef<Path>, c: &Coloring) -> Result<(), FormatError> {
    Ok(std::fs::write(path, render_col(c))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(0..=12);
            let mut g = ThreeGraph::new(n).unwrap();
            for r in 0..g.rank_count() {
                if rng.gen_bool(0.3) {
                    g.add_rank(r).unwrap();
                }
            }
            let text = render_3g(&g);
            assert_eq!(parse_3g(&text).unwrap(), g);
        }
    }

    #[test]
    fn comments_whitespace_and_any_vertex_order() {
        let text = "# a loose path\n7 3   # n m\n\n2 1 0\n2 3 4\n4 5 6 # last\n";
        let g = parse_3g(text).unwrap();
        assert_eq!(g.edges(), vec![[0, 1, 2], [2, 3, 4], [4, 5, 6]]);
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse_3g(""), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_3g("5 1\n0 1 1\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_3g("5 1\n0 1 5\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_3g("5 2\n0 1 2\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_3g("5 1\n0 1 2\n0 2 3\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_3g("5 1\n0 1 2 3\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_3g("5 x\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(
            parse_3g("5 2\n0 1 2\n2 1 0\n"),
            Err(FormatError::DuplicateEdge { line: 3, a: 0, b: 1, c: 2 })
        ));
        // Order above the supported maximum surfaces as a graph error.
        assert!(matches!(parse_3g("31 0\n"), Err(FormatError::Graph(_))));
    }

    #[test]
    fn file_helpers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.3g");
        let g = ThreeGraph::from_edges(6, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        write_3g_file(&path, &g).unwrap();
        assert_eq!(read_3g_file(&path).unwrap(), g);
    }

    #[test]
    fn coloring_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let n = rng.gen_range(3..=12);
            let r = rng.gen_range(1..=6);
            let c = crate::ramsey::random_coloring(n, r, rng.gen()).unwrap();
            let text = render_col(&c);
            assert_eq!(parse_col(&text).unwrap(), c);
        }
    }

    #[test]
    fn coloring_comments_and_wrapping() {
        // C(4,3) = 4 colors over several lines with comments.
        let text = "# two colors\n4 2\n0 1 # first two\n\n1\n0\n";
        let c = parse_col(text).unwrap();
        assert_eq!(c.assignment(), &[0, 1, 1, 0]);
    }

    #[test]
    fn coloring_error_cases() {
        assert!(matches!(parse_col(""), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_col("4 2\n0 1 1\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_col("4 2\n0 1 1 0 1\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_col("4 2\n0 1 2 0\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_col("4 2\n0 1 x 0\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(parse_col("4 2 9\n0 1 1 0\n"), Err(FormatError::Parse { .. })));
        // Color count zero fails structural validation, not tokenizing.
        assert!(matches!(parse_col("4 0\n"), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn coloring_file_helpers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.col");
        let c = crate::ramsey::random_coloring(8, 3, 21).unwrap();
        write_col_file(&path, &c).unwrap();
        assert_eq!(read_col_file(&path).unwrap(), c);
    }
}
