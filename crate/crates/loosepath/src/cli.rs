//! Command-line front end: one binary orchestrating the construction
//! catalog, exact searches, coloring campaigns, and the structural audit.
//!
//! Exit codes: `0` — the run completed and every check it made passed;
//! `1` — the run completed but found a discrepancy, a proof gap, an
//! inequality failure, or hit its budget (a machine-readable
//! `diagnostic.json` is left in the output directory, and the same JSON is
//! printed to stdout); `2` — invalid input or an unconfigured capability
//! (for example a build that needs a rocket definition without `--rocket`).
//!
//! Every run is fully determined by its parsed [`RunConfig`]: identical
//! invocations produce byte-identical stdout. Timings and progress go to
//! stderr only.

use crate::error::{DecomposeError, SearchError};
use crate::pattern::Pattern;
use crate::ramsey::{self, MonoPCertificate, TraceOutcome};
use crate::turan::{self, Anchor, Budget, SearchMode};
use crate::zoo::{self, RocketDef};
use crate::{audit, io, reference};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Parsed command line; this value alone determines the whole run.
#[derive(Parser, Debug)]
#[command(
    name = "loosepath",
    version,
    about = "Exact search and certification toolkit for loose paths in 3-uniform hypergraphs"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the five path-ladder reference tables with status markers.
    Tables(TablesArgs),
    /// Build catalog constructions and check their recorded formulas.
    #[command(subcommand)]
    Zoo(ZooCommand),
    /// Exact maximum-edge search at a given exclusion order.
    Turan(TuranArgs),
    /// Coloring campaigns: extraction, trials, lower-bound search, verification.
    #[command(subcommand)]
    Ramsey(RamseyCommand),
    /// Structural decomposition and the inequality audit.
    #[command(subcommand)]
    Audit(AuditCommand),
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Largest number of vertices to tabulate.
    #[arg(long, default_value_t = 16)]
    pub max_n: usize,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ZooCommand {
    /// Build a named construction and write or print its .3g file.
    Build(ZooBuildArgs),
    /// Check every recorded formula and family-membership property.
    Check(ZooCheckArgs),
}

#[derive(Args, Debug)]
pub struct ZooBuildArgs {
    /// Kind word (star, comet, rocket, complete, g1, g2, g3, k5plus) or a
    /// compact name such as "co12" or "k6,s10".
    #[arg(long)]
    pub name: String,
    /// Number of vertices (required with a kind word).
    #[arg(long)]
    pub n: Option<usize>,
    /// Pendant-edge count (k5plus only).
    #[arg(long)]
    pub t: Option<usize>,
    /// Rocket definition (.3g) enabling rocket builds.
    #[arg(long, value_name = "FILE")]
    pub rocket: Option<PathBuf>,
    /// Write the graph here (.3g); print to stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ZooCheckArgs {
    /// Check recorded rows with at most this many vertices.
    #[arg(long, default_value_t = 16)]
    pub max_n: usize,
    /// Rocket definition (.3g); rocket rows are skipped without it.
    #[arg(long, value_name = "FILE")]
    pub rocket: Option<PathBuf>,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TuranArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,
    /// Forbidden pattern (P, C, M, P2, P2uK3); repeatable.
    #[arg(long = "forbid", value_name = "PATTERN", required = true)]
    pub forbid: Vec<String>,
    /// Exclusion order: order s maximizes outside the extremal graphs of
    /// orders below s.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    /// Required substructure; repeatable.
    #[arg(long = "contain", value_name = "PATTERN")]
    pub contain: Vec<String>,
    /// Restrict the search to connected graphs.
    #[arg(long)]
    pub connected: bool,
    /// Abort after this many search nodes (default: LOOSEPATH_BUDGET_NODES).
    #[arg(long, value_name = "N")]
    pub budget_nodes: Option<u64>,
    /// Abort after this many seconds (default: LOOSEPATH_BUDGET_SECS).
    #[arg(long, value_name = "S")]
    pub budget_secs: Option<u64>,
    /// Write the extremal graphs here as .3g files named by canonical hash.
    #[arg(long, value_name = "DIR")]
    pub emit_extremal: Option<PathBuf>,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RamseyCommand {
    /// Extract a monochromatic-path certificate from a coloring file.
    Extract(ExtractArgs),
    /// Seeded random-coloring campaign with per-trial certificates.
    Trials(TrialsArgs),
    /// Exhaustive search for a coloring with no monochromatic path.
    SearchLower(SearchLowerArgs),
    /// Re-check a certificate against its coloring.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    /// Coloring file (.col).
    #[arg(long, value_name = "FILE")]
    pub coloring: PathBuf,
    /// Print the per-stage reduction trace as '#' comment lines.
    #[arg(long)]
    pub trace: bool,
    /// Rocket definition (.3g) for the sixteen-vertex host stage.
    #[arg(long, value_name = "FILE")]
    pub rocket: Option<PathBuf>,
    /// Directory for artifacts and diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TrialsArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,
    /// Number of colors.
    #[arg(long)]
    pub colors: usize,
    /// Number of trials.
    #[arg(long)]
    pub count: usize,
    /// Base seed; trial t uses seed + t.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchLowerArgs {
    /// Number of vertices.
    #[arg(long)]
    pub n: usize,
    /// Number of colors.
    #[arg(long)]
    pub colors: usize,
    /// Abort after this many search nodes (default: LOOSEPATH_BUDGET_NODES).
    #[arg(long, value_name = "N")]
    pub budget_nodes: Option<u64>,
    /// Abort after this many seconds (default: LOOSEPATH_BUDGET_SECS).
    #[arg(long, value_name = "S")]
    pub budget_secs: Option<u64>,
    /// Write the witness coloring here (.col); print to stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Coloring file (.col).
    #[arg(long, value_name = "FILE")]
    pub coloring: PathBuf,
    /// Certificate file (JSON with fields color, vertices, edges).
    #[arg(long, value_name = "FILE")]
    pub certificate: PathBuf,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum AuditCommand {
    /// Decompose a graph file and audit the structural inequalities.
    Decompose(DecomposeArgs),
    /// Audit randomized greedy samples.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Graph file (.3g).
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Audit every qualifying anchor-cherry choice, not only the first.
    #[arg(long = "all-q")]
    pub all_q: bool,
    /// Emit the report as JSON instead of a text table.
    #[arg(long)]
    pub json: bool,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Number of vertices (8 to 16).
    #[arg(long)]
    pub n: usize,
    /// Number of trials.
    #[arg(long)]
    pub trials: usize,
    /// Base seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit the report as JSON instead of a text table.
    #[arg(long)]
    pub json: bool,
    /// Directory for diagnostics.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

/// Parse the real command line and execute it; returns the exit code.
pub fn run() -> i32 {
    let cfg = RunConfig::parse();
    let mut stdout = std::io::stdout().lock();
    execute(cfg, &mut stdout)
}

/// Execute a parsed configuration, writing primary output to `out`.
pub fn execute(cfg: RunConfig, out: &mut dyn Write) -> i32 {
    match cfg.command {
        Command::Tables(a) => cmd_tables(a, out),
        Command::Zoo(ZooCommand::Build(a)) => cmd_zoo_build(a, out),
        Command::Zoo(ZooCommand::Check(a)) => cmd_zoo_check(a, out),
        Command::Turan(a) => cmd_turan(a, out),
        Command::Ramsey(RamseyCommand::Extract(a)) => cmd_extract(a, out),
        Command::Ramsey(RamseyCommand::Trials(a)) => cmd_trials(a, out),
        Command::Ramsey(RamseyCommand::SearchLower(a)) => cmd_search_lower(a, out),
        Command::Ramsey(RamseyCommand::Verify(a)) => cmd_verify(a, out),
        Command::Audit(AuditCommand::Decompose(a)) => cmd_decompose(a, out),
        Command::Audit(AuditCommand::Sweep(a)) => cmd_sweep(a, out),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Invalid input or unconfigured capability.
fn invalid(msg: impl Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// Completed run with a failure: print the diagnostic JSON to stdout and
/// leave it as `diagnostic.json` in the output directory.
fn diagnose(out_dir: Option<&Path>, stdout: &mut dyn Write, payload: serde_json::Value) -> i32 {
    let compact = payload.to_string();
    let _ = writeln!(stdout, "{compact}");
    let dir = out_dir.unwrap_or_else(|| Path::new("."));
    let path = dir.join("diagnostic.json");
    let pretty = serde_json::to_string_pretty(&payload).unwrap_or(compact);
    if let Err(e) =
        std::fs::create_dir_all(dir).and_then(|()| std::fs::write(&path, pretty + "\n"))
    {
        eprintln!("warning: could not write {}: {e}", path.display());
    }
    1
}

fn load_rocket(path: Option<&Path>) -> Result<Option<RocketDef>, String> {
    let Some(p) = path else { return Ok(None) };
    let g = io::read_3g_file(p).map_err(|e| format!("rocket file {}: {e}", p.display()))?;
    let def = RocketDef::new(g).map_err(|e| format!("rocket file {}: {e}", p.display()))?;
    Ok(Some(def))
}

fn parse_patterns(symbols: &[String]) -> Result<Vec<Pattern>, String> {
    symbols
        .iter()
        .map(|s| {
            Pattern::from_symbol(s)
                .ok_or_else(|| format!("unknown pattern '{s}' (use P, C, M, P2, P2uK3)"))
        })
        .collect()
}

/// Flags override the environment defaults field by field.
fn cli_budget(nodes: Option<u64>, secs: Option<u64>) -> Budget {
    let flags = Budget {
        max_nodes: nodes,
        max_time: secs.map(std::time::Duration::from_secs),
    };
    flags.or(Budget::from_env())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_tables(a: TablesArgs, out: &mut dyn Write) -> i32 {
    let text = reference::render_tables(a.max_n);
    let _ = write!(out, "{text}");
    if text.contains("MISMATCH") {
        return diagnose(
            a.out.as_deref(),
            out,
            json!({
                "command": "tables",
                "max_n": a.max_n,
                "error": "a recorded table value disagrees with its closed form",
            }),
        );
    }
    0
}

fn cmd_zoo_build(a: ZooBuildArgs, out: &mut dyn Write) -> i32 {
    let rocket = match load_rocket(a.rocket.as_deref()) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let cons = match zoo::from_kind(&a.name, a.n, a.t) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let g = match cons.build(rocket.as_ref()) {
        Ok(g) => g,
        Err(e) => return invalid(format!("{cons}: {e}")),
    };
    match &a.out {
        Some(path) => {
            if let Err(e) = io::write_3g_file(path, &g) {
                return invalid(format!("{}: {e}", path.display()));
            }
            let _ = writeln!(
                out,
                "{cons}\t{} vertices\t{} edges\t{}",
                g.order(),
                g.edge_count(),
                path.display()
            );
        }
        None => {
            let _ = write!(out, "{}", io::render_3g(&g));
        }
    }
    0
}

fn cmd_zoo_check(a: ZooCheckArgs, out: &mut dyn Write) -> i32 {
    let rocket = match load_rocket(a.rocket.as_deref()) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let mut report = zoo::check_formulas(a.max_n, rocket.as_ref());
    report.rows.extend(reference::check_families(a.max_n, rocket.as_ref()).rows);
    if a.max_n >= 7 {
        report.rows.extend(reference::top_order_qualification().rows);
    }
    let _ = write!(out, "{}", report.render());
    if report.all_pass() {
        0
    } else {
        let failures: Vec<serde_json::Value> = report
            .failures()
            .map(|r| {
                json!({
                    "construction": r.construction,
                    "n": r.n,
                    "property": r.property,
                    "detail": r.detail,
                })
            })
            .collect();
        diagnose(
            a.out.as_deref(),
            out,
            json!({ "command": "zoo check", "max_n": a.max_n, "failures": failures }),
        )
    }
}

fn cmd_turan(a: TuranArgs, out: &mut dyn Write) -> i32 {
    if a.order == 0 {
        return invalid("--order starts at 1");
    }
    let forbidden = match parse_patterns(&a.forbid) {
        Ok(p) => p,
        Err(e) => return invalid(e),
    };
    let anchors: Vec<Anchor> = match parse_patterns(&a.contain) {
        Ok(ps) => ps.into_iter().map(Anchor::Pattern).collect(),
        Err(e) => return invalid(e),
    };
    let budget = cli_budget(a.budget_nodes, a.budget_secs);
    let ladder = turan::ladder_with(
        a.n,
        &forbidden,
        a.order,
        &anchors,
        a.connected,
        &budget,
        SearchMode::Parallel,
    );
    let ladder = match ladder {
        Ok(l) => l,
        Err(SearchError::Incomplete { nodes, best, .. }) => {
            return diagnose(
                a.out.as_deref(),
                out,
                json!({
                    "command": "turan",
                    "incomplete": true,
                    "nodes": nodes,
                    "best_at_interrupt": best,
                    "note": "budget exhausted before the search completed; no value is claimed",
                }),
            );
        }
        Err(e @ SearchError::LadderNotDecreasing { .. }) => {
            return diagnose(
                a.out.as_deref(),
                out,
                json!({ "command": "turan", "error": e.to_string() }),
            );
        }
        Err(e) => return invalid(e),
    };
    let top = ladder.results.get(a.order - 1);
    let value = top.and_then(|r| r.value);
    match value {
        Some(v) => {
            let _ = writeln!(out, "{v}");
        }
        None => {
            let _ = writeln!(out, "none");
        }
    }
    let nodes: u64 = ladder.results.iter().map(|r| r.stats.nodes).sum();
    eprintln!("# search nodes: {nodes}");
    if let (Some(dir), Some(result)) = (&a.emit_extremal, top) {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return invalid(format!("{}: {e}", dir.display()));
        }
        for cf in &result.extremal {
            let name = format!("{}.3g", &cf.hash_hex()[..12]);
            if let Err(e) = io::write_3g_file(dir.join(&name), &cf.graph()) {
                return invalid(format!("{name}: {e}"));
            }
        }
        eprintln!("# wrote {} extremal graphs to {}", result.extremal.len(), dir.display());
    }
    0
}

fn cmd_extract(a: ExtractArgs, out: &mut dyn Write) -> i32 {
    let coloring = match io::read_col_file(&a.coloring) {
        Ok(c) => c,
        Err(e) => return invalid(format!("{}: {e}", a.coloring.display())),
    };
    let rocket = match load_rocket(a.rocket.as_deref()) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };

    // The staged reduction applies exactly when the coloring has the shape
    // it was proved for; any other shape gets a direct certificate search,
    // which doubles as a witness check for externally supplied colorings.
    let staged = coloring.n() == coloring.r() + 6 && (2..=10).contains(&coloring.r());
    if !staged {
        return match ramsey::find_mono_p(&coloring) {
            Some(cert) => {
                emit_certificate(a.out.as_deref(), out, "direct", &cert);
                0
            }
            None => {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({
                        "mode": "direct",
                        "certificate": serde_json::Value::Null,
                        "note": "no monochromatic loose path: the coloring is a valid witness",
                    })
                );
                0
            }
        };
    }

    let trace = match ramsey::reduction_trace(&coloring, rocket.as_ref()) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    if a.trace {
        for line in trace.render().lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    match &trace.outcome {
        TraceOutcome::Certificate(cert) => {
            if ramsey::check_certificate(&coloring, cert).is_err() {
                // Unreachable by construction; kept as a loud guard.
                return diagnose(
                    a.out.as_deref(),
                    out,
                    json!({
                        "command": "ramsey extract",
                        "error": "extracted certificate failed re-verification",
                    }),
                );
            }
            emit_certificate(a.out.as_deref(), out, "reduction", cert);
            0
        }
        TraceOutcome::Gap(gap) => diagnose(
            a.out.as_deref(),
            out,
            json!({
                "command": "ramsey extract",
                "coloring": a.coloring.display().to_string(),
                "gap": gap,
            }),
        ),
    }
}

fn emit_certificate(
    out_dir: Option<&Path>,
    stdout: &mut dyn Write,
    mode: &str,
    cert: &MonoPCertificate,
) {
    let payload = json!({ "mode": mode, "certificate": cert });
    let _ = writeln!(stdout, "{payload}");
    if let Some(dir) = out_dir {
        let path = dir.join("certificate.json");
        let text = serde_json::to_string_pretty(cert).expect("certificates serialize");
        if let Err(e) =
            std::fs::create_dir_all(dir).and_then(|()| std::fs::write(&path, text + "\n"))
        {
            eprintln!("warning: could not write {}: {e}", path.display());
        }
    }
}

fn cmd_trials(a: TrialsArgs, out: &mut dyn Write) -> i32 {
    let report = match ramsey::run_trials(a.n, a.colors, a.count, a.seed) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let _ = write!(out, "{}", report.render());
    if report.all_certificates() {
        0
    } else {
        diagnose(
            a.out.as_deref(),
            out,
            json!({ "command": "ramsey trials", "report": report }),
        )
    }
}

fn cmd_search_lower(a: SearchLowerArgs, out: &mut dyn Write) -> i32 {
    let budget = cli_budget(a.budget_nodes, a.budget_secs);
    match ramsey::search_lower_bound(a.n, a.colors, &budget) {
        Ok(Some(witness)) => {
            debug_assert!(ramsey::find_mono_p(&witness).is_none());
            match &a.out {
                Some(path) => {
                    if let Err(e) = io::write_col_file(path, &witness) {
                        return invalid(format!("{}: {e}", path.display()));
                    }
                    let _ = writeln!(out, "witness\t{}", path.display());
                }
                None => {
                    let _ = write!(out, "{}", io::render_col(&witness));
                }
            }
            0
        }
        Ok(None) => {
            let _ = writeln!(
                out,
                "exhausted\tevery {}-coloring on {} vertices has a monochromatic loose path",
                a.colors, a.n
            );
            0
        }
        Err(SearchError::Incomplete { nodes, .. }) => diagnose(
            a.out.as_deref().map(|p| p.parent().unwrap_or_else(|| Path::new("."))),
            out,
            json!({
                "command": "ramsey search-lower",
                "incomplete": true,
                "nodes": nodes,
                "note": "budget exhausted; neither a witness nor exhaustion is claimed",
            }),
        ),
        Err(e) => invalid(e),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> i32 {
    let coloring = match io::read_col_file(&a.coloring) {
        Ok(c) => c,
        Err(e) => return invalid(format!("{}: {e}", a.coloring.display())),
    };
    let text = match std::fs::read_to_string(&a.certificate) {
        Ok(t) => t,
        Err(e) => return invalid(format!("{}: {e}", a.certificate.display())),
    };
    let cert: MonoPCertificate = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => return invalid(format!("{}: {e}", a.certificate.display())),
    };
    match ramsey::check_certificate(&coloring, &cert) {
        Ok(()) => {
            let _ = writeln!(
                out,
                "verified\tcolor {}\tvertices {:?}\tedges {:?}",
                cert.color, cert.vertices, cert.edges
            );
            0
        }
        Err(e) => diagnose(
            a.out.as_deref(),
            out,
            json!({
                "command": "ramsey verify",
                "coloring": a.coloring.display().to_string(),
                "certificate": cert,
                "error": e.to_string(),
            }),
        ),
    }
}

fn cmd_decompose(a: DecomposeArgs, out: &mut dyn Write) -> i32 {
    let g = match io::read_3g_file(&a.graph) {
        Ok(g) => g,
        Err(e) => return invalid(format!("{}: {e}", a.graph.display())),
    };
    let decomps = if a.all_q {
        audit::decompose_all(&g)
    } else {
        audit::decompose(&g).map(|d| vec![d])
    };
    let decomps = match decomps {
        Ok(ds) => ds,
        Err(e @ DecomposeError::ContainsForbidden(_)) => {
            return invalid(format!("graph is outside the audited class: {e}"))
        }
        Err(e) => return invalid(format!("graph misses a required substructure: {e}")),
    };
    let reports: Vec<(audit::Decomposition, audit::AuditReport)> = decomps
        .into_iter()
        .map(|d| {
            let r = audit::audit_inequalities(&d);
            (d, r)
        })
        .collect();
    let all_pass = reports.iter().all(|(_, r)| r.all_pass());

    if a.json {
        let items: Vec<serde_json::Value> = reports.iter().map(|(d, r)| decomp_json(d, r)).collect();
        let payload = if a.all_q { json!(items) } else { items[0].clone() };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).expect("serializes"));
    } else if a.all_q {
        for (d, r) in &reports {
            let _ = writeln!(
                out,
                "choice {:?}\tapex {}\t{}",
                d.q_ranks(),
                d.apex(),
                if r.all_pass() { "pass" } else { "FAIL" }
            );
            if !r.all_pass() {
                let _ = write!(out, "{}", r.render());
            }
        }
        let _ = writeln!(
            out,
            "# {} anchor choices, {}",
            reports.len(),
            if all_pass { "all pass" } else { "FAILURES PRESENT" }
        );
    } else {
        let (d, r) = &reports[0];
        for line in d.render().lines() {
            let _ = writeln!(out, "# {line}");
        }
        let _ = write!(out, "{}", r.render());
    }

    if all_pass {
        0
    } else {
        let failing: Vec<serde_json::Value> = reports
            .iter()
            .filter(|(_, r)| !r.all_pass())
            .map(|(d, r)| decomp_json(d, r))
            .collect();
        diagnose(
            a.out.as_deref(),
            out,
            json!({
                "command": "audit decompose",
                "graph": a.graph.display().to_string(),
                "failures": failing,
            }),
        )
    }
}

fn decomp_json(d: &audit::Decomposition, r: &audit::AuditReport) -> serde_json::Value {
    json!({
        "anchor_ranks": d.q_ranks(),
        "apex": d.apex(),
        "anchor": d.anchor_verts(),
        "quiet": d.quiet_verts(),
        "active": d.active_verts(),
        "classes": {
            "anchor": d.anchor_edges().len(),
            "complement": d.complement_edges().len(),
            "quiet_crossing": d.quiet_crossing().len(),
            "active_crossing": d.active_crossing().len(),
            "flank": [d.flank_class(0).len(), d.flank_class(1).len(), d.flank_class(2).len()],
        },
        "report": r,
    })
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> i32 {
    let sweep = match audit::random_sweep(a.n, a.trials, a.seed) {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    if a.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&sweep).expect("serializes"));
    } else {
        let _ = write!(out, "{}", sweep.render());
    }
    if sweep.all_pass() {
        0
    } else {
        diagnose(
            a.out.as_deref(),
            out,
            json!({ "command": "audit sweep", "report": sweep }),
        )
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cfg = RunConfig::try_parse_from(args).expect("arguments parse");
        let mut buf = Vec::new();
        let code = execute(cfg, &mut buf);
        (code, String::from_utf8(buf).expect("utf8 output"))
    }

    #[test]
    fn tables_prints_reference_rows() {
        let (code, text) = run_args(&["loosepath", "tables", "--max-n", "10"]);
        assert_eq!(code, 0);
        assert!(text.contains("10\t19\tco10\tok"));
    }

    #[test]
    fn turan_prints_the_top_order_value() {
        let (code, text) = run_args(&[
            "loosepath", "turan", "--n", "6", "--forbid", "M", "--order", "1",
        ]);
        assert_eq!(code, 0);
        assert_eq!(text, "10\n");
    }

    #[test]
    fn zoo_build_without_rocket_config_is_an_unconfigured_capability() {
        let (code, _) = run_args(&["loosepath", "zoo", "build", "--name", "rocket", "--n", "16"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn zoo_build_prints_a_graph_file() {
        let (code, text) = run_args(&["loosepath", "zoo", "build", "--name", "comet", "--n", "7"]);
        assert_eq!(code, 0);
        let g = io::parse_3g(&text).expect("stdout is a valid graph file");
        assert_eq!(g.order(), 7);
        assert_eq!(g.edge_count(), 4 + crate::triples::choose2(3));
    }

    #[test]
    fn unknown_pattern_symbols_are_invalid_input() {
        let (code, _) = run_args(&["loosepath", "turan", "--n", "6", "--forbid", "Q"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn flags_override_environment_budgets() {
        let b = cli_budget(Some(5), None);
        assert_eq!(b.max_nodes, Some(5));
        let b = cli_budget(None, Some(3));
        assert_eq!(b.max_time, Some(std::time::Duration::from_secs(3)));
    }
}
