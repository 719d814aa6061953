//! Exact verification toolkit for Poisson structures and contravariant
//! connections induced by classical Yang-Baxter solutions under Lie algebra
//! actions.

#![allow(clippy::needless_range_loop)]

pub mod connection;
pub mod geomcalc;
pub mod liealg;
pub mod poisson;
pub mod polyalg;
pub mod fixtures;
pub mod pipeline;
pub mod problem;
pub mod report;
