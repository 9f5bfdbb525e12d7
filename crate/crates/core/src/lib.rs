//! Exact Clar numbers and maximum forcing numbers of polyominoes and
//! hexagonal systems.
//!
//! The pipeline: build the plane bipartite graph ([`planegraph`]), split it
//! into elementary components through the matching orientation ([`decomp`]),
//! solve each component's Clar number exactly ([`clar`]) and add them up to
//! get the maximum forcing number ([`forcing`]). Brute-force oracles for every
//! step live alongside.

pub mod clar;
pub mod corpus;
pub mod decomp;
pub mod forcing;
pub mod matching;
pub mod planegraph;
pub mod verify;

pub use clar::{solve_clar, ClarCover, ClarError, ClarResult};
pub use decomp::{elementary_components, is_elementary, BondClass, Decomposition};
pub use forcing::{max_forcing_number, Budget, ForcingError, ForcingReport, ForcingSet};
pub use matching::{max_matching, AlternatingCycle, Matching, MatchingError};
pub use planegraph::{
    parse_hexagonal, parse_hexagonal_text, parse_polyomino, EdgeId, FaceId, GraphError, GraphKind,
    Lattice, PlaneBipartiteGraph, VertexId,
};
