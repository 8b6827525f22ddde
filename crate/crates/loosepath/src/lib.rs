//! Exact search and certification toolkit for 3-uniform hypergraphs.
//!
//! This crate computes exact extremal edge counts for small 3-uniform
//! hypergraphs avoiding a handful of fixed patterns built from loose paths —
//! together with the full list of extremal graphs, multi-coloring ladders,
//! a constructive color-reduction pipeline for loose-path Ramsey numbers,
//! and a structural decomposition audit for graphs avoiding the loose cycle.
//!
//! Modules:
//! - [`triples`], [`bits`], [`graph`]: colex-ranked edge encoding and the
//!   fixed-capacity graph type [`graph::ThreeGraph`].
//! - [`pattern`]: the five small patterns and fast signature detectors.
//! - [`embed`]: generic backtracking embedding, the independent reference
//!   route for containment.
//! - [`canon`]: canonical labeling, isomorphism, content hashes.
//! - [`io`]: the `.3g` text format.
//! - [`zoo`]: named extremal constructions (stars, comets, and friends).
//! - [`turan`]: the exact branch-and-bound search for extremal values and
//!   extremal families, with anchors, connectivity, and excluded hosts.
//! - [`reference`]: frozen expected values for every ladder, and table
//!   rendering.
//! - [`ramsey`]: 2-colorings, monochromatic-path certificates, and the
//!   color-count reduction pipeline.
//! - [`audit`]: the structural decomposition of graphs without loose cycles
//!   and the inequality audit over it.

pub mod audit;
pub mod bits;
pub mod cli;
pub mod canon;
pub mod embed;
pub mod error;
pub mod graph;
pub mod io;
pub mod pattern;
pub mod ramsey;
pub mod reference;
pub mod turan;
pub mod triples;
pub mod zoo;
