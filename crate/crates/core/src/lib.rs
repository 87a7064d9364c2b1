//! Partite clique solvers, hardness reductions and common-line geometry for
//! the orientation search problems of single-particle cryo-EM.
//!
//! Vertex ids are dense (`0..total`) and grouped; every tie is broken by the
//! lowest (group, slot) so that all results are reproducible.

pub mod geometry;
pub mod graph;
pub mod instance_gen;
pub mod io;
pub mod reductions;
pub mod solvers;
