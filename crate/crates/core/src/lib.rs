//! Permutation-group toolkit for counting how many conjugacy classes make
//! up each normal subgroup of a finite group.
//!
//! The main entry points are [`decomp::kset`], which computes
//! `K_G = {ncc(N) : N ◁ G, N ≠ G}`, and the catalog sweep in [`sweep`],
//! which finds every catalog group with a prescribed K-set.

pub mod arith;
pub mod catalog;
pub mod constructors;
pub mod decomp;
pub mod error;
pub mod expr;
pub mod group;
pub mod isomorph;
mod lex;
pub mod perm;
pub mod presentation;
pub mod sweep;

pub use decomp::{kset, ncc, DecompositionReport, KSet};
pub use error::{Error, Result};
pub use expr::ConstructionExpr;
pub use group::{ConjugacyClass, Group, Subgroup, DEFAULT_CAP};
pub use perm::Permutation;
