//! Grid diagram oracle: the tilde rectangle complex over GF(2), braid to
//! grid constructions and the maps at a special crossing corner.

mod build;
mod diagram;
mod homology;
mod special;

use thiserror::Error;

pub use build::{braid_grid, braid_to_grid, BraidGrid, Layout};
pub use diagram::{rectangles_between, rectangles_from, GridDiagram, Gradings, Rect, Square};
pub use homology::{all_states, deflate, grid_homology_tilde, state_index, GridHomology, TildeComplex, DEFAULT_MAX_SIZE};
pub use special::{
    crossing_corner, lambda_alexander, lambda_is_cycle, singular_grid, singularize, special_composite_check, special_grid, special_violations,
    zip_on_lambda_check, zip_rectangles, CompositeReport, CornerMarking, SpecialGrid, ZipReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("bad grid: {0}")]
    Shape(String),
    #[error("grid is not a knot: {0}")]
    NotAKnot(String),
    #[error("grid of size {n} exceeds the limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("tilde ranks are not divisible by (1 + q^-1 T^-1)^(n-1)")]
    Deflation,
    #[error("cannot build a grid: {0}")]
    Construction(String),
    #[error("grid violates special conditions {0:?}")]
    NotSpecial(Vec<usize>),
    #[error("corner {0:?}: {1}")]
    Corner(Square, String),
    #[error("bad grid JSON: {0}")]
    Json(String),
}
