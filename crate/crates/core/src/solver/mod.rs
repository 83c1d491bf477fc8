//! Bounds, exact enumeration and local search for maximum-area fences.

pub mod bounds;
pub mod local;
pub mod search;

pub use bounds::{
    area_upper_bound, length_realizations, perimeter_budget, piece_length, rectangle_candidates,
    LengthProfile, RectangleCandidate,
};
pub use local::{
    best_single_move, improve_local, scan_neighborhood, LocalResult, NeighborhoodScan, Relocation,
};
pub use search::{
    default_box, search_branch_and_bound, solve_exhaustive, SolutionSet, SolutionSummary,
    SolveError, SolveOptions,
};
