//! Toolkit for the TSP-T3CO variant-definition language.
//!
//! TSP-T3CO pins down a traveling-salesman variant in five fields: traveler
//! count, target multiplicities, tour shape, cost signatures, and
//! objectives. This crate parses both the longhand and the shorthand
//! notation, resolves attribute semantics, validates candidate walks
//! against a variant on a concrete instance, and cross-checks classical
//! baselines (nearest neighbor, double tree, Christofides) against a
//! brute-force oracle at desk scale.

pub mod fixtures;
pub mod instance;
pub mod model;
pub mod rat;
pub mod semantics;
pub mod syntax;
