//! compactgraph: synthesis and verification of compact interconnect
//! topologies.
//!
//! A graph is `n(s,d)`-compact when its diameter d is the smallest possible
//! for an s-regular graph on n vertices, per the Moore bounds. This crate
//! synthesizes such graphs deterministically by solving a projection system
//! over a symmetric adjacency table ([`synthesis`]), describes graphs by
//! rooted bracket-form projections ([`projection`]), and verifies every
//! result against classical BFS oracles ([`graph`], [`oracle`]).

pub mod compactness;
pub mod graph;
pub mod iso;
pub mod oracle;
pub mod projection;
pub mod synthesis;

pub use compactness::{classify_compactness, moore_bound, CompactnessClass, CompactnessError};
pub use graph::{Graph, GraphError, Vertex};
pub use iso::is_isomorphic;
pub use oracle::{exhaustive_exists, load_fixture, verify_spec, OracleError, VerifyReport};
pub use projection::{
    build as build_projection, eccentricity_via_projection, girth_via_projections, parse_bracket,
    Projection, ProjectionError,
};
pub use synthesis::{
    init_state, skeleton_seed, solve, CompactnessSpec, SolveOptions, SolveOutcome, SynthError,
    SynthState, SynthTrace,
};
