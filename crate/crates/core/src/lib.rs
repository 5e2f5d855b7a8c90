//! Knot Floer homology of braid closures from a cube of resolutions over Q(t).

pub mod arith;
pub mod braid;
pub mod resolution;
pub mod algebra;
pub mod cube;
pub mod homology;
pub mod alexander;
pub mod corpus;
pub mod grid;
