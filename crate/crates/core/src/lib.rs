//! Vertex spans of simple connected graphs.
//!
//! Two walkers, Alice and Bob, each have to visit every vertex of a graph.
//! The span is the largest distance they can keep from each other at every
//! step, under one of three movement rules:
//!
//! | rule | each step | span |
//! |---|---|---|
//! | [`MovementRule::Traditional`] | each walker moves or stays | strong |
//! | [`MovementRule::Active`] | both walkers move | direct |
//! | [`MovementRule::Lazy`] | exactly one walker moves | Cartesian |
//!
//! ```
//! use spanlab::{compute_spans, families::FamilySpec, Spans};
//!
//! let pc5 = FamilySpec::Paramecium(5).generate().unwrap();
//! assert_eq!(compute_spans(&pc5), Spans::new(3, 2, 3));
//! ```

pub mod families;
pub mod graph;
pub mod io;
pub mod product;
pub mod span;
pub mod verify;

pub use graph::{BridgeSplit, DistanceMatrix, Graph, GraphError, Vertex};
pub use product::{MovementRule, Pair, PairComponent, PairGraph, ProductError};
pub use span::{
    compute_span, compute_spans, direct_to_lazy, extract_witness_tracks, lazy_to_direct,
    validate_tracks, MoveAttribution, Mover, SpanReport, Spans, TrackError, TrackPair,
    TrackValidation,
};
