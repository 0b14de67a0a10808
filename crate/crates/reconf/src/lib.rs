#![forbid(unsafe_code)]

//! Combinatorial reconfiguration toolkit.
//!
//! The crate implements a chain of correctness-preserving lowerings between
//! reconfiguration problems, together with solvers and instance generators:
//!
//! * deterministic Turing machine runs encoded as word problems of
//!   2-balanced symmetric string rewriting systems ([`turing`], [`rewriting`]);
//! * rule splitting so that every rewrite changes a single position
//!   ([`rewriting::split_rules`]);
//! * walks in a fixed digraph ("H-words") that simulate rewriting by
//!   single-symbol changes ([`hword`]);
//! * shortest-path, independent-set, list-coloring and k-coloring
//!   reconfiguration instances of bounded bandwidth built from H-word
//!   instances, plus a lift from directed cycles to undirected ones
//!   ([`reductions`]);
//! * a breadth-first search over abstract configuration spaces used both as
//!   a solver and as the verification oracle for all of the above
//!   ([`engine`]);
//! * polynomial-time solvers for tree recoloring and for bounded-treedepth
//!   homomorphism reconfiguration ([`algorithms`]).
//!
//! Start with the runnable programs under `examples/`; each one walks
//! through a single capability end to end. The `reconf` binary exposes the
//! same pipeline as `compile`, `solve`, `verify`, `check-equivalence`,
//! `treedepth` and `demo-tm` subcommands.

pub mod algorithms;
pub mod alphabet;
pub mod engine;
mod error;
pub mod graph;
pub mod hword;
pub mod pipeline;
pub mod reductions;
pub mod rewriting;
pub mod text;
pub mod turing;

pub use error::{Error, Result};
