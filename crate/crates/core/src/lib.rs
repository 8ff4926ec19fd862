//! Exact computational topology over the rationals: persistence diagrams with
//! interval restriction, bottleneck distances, zigzag module decomposition
//! over GF(2), metric-graph geodesics, level-set zigzag diagrams, persistence
//! distortion, and two-parameter matching distances.
//!
//! All quantities are exact `BigRational` values; no floating point enters any
//! distance or decomposition. Deterministic: identical inputs produce
//! identical outputs, including across the optional thread pool.

pub mod bottleneck;
pub mod complex;
pub mod diagram;
pub mod distortion;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod levelset;
pub mod multiparam;
pub mod rational;
mod uf;
pub mod union_zigzag;
pub mod zigzag;

pub use bottleneck::{bottleneck_decision, bottleneck_distance};
pub use complex::{standard_persistence, FilteredComplex, SimplicialComplex};
pub use diagram::{DiagramPoint, PersistenceDiagram, RestrictionInterval};
pub use distortion::{
    hausdorff_bottleneck, persistence_distortion, phi, DiagramCloud, DistortionEstimate,
};
pub use error::Error;
pub use gf2::GF2Matrix;
pub use graph::{Edge, GraphPoint, MetricGraph, PLGraphFunction};
pub use levelset::{
    build_lzz_sequence, lzz_diagram, lzz_intervals, restricted_lzz_diagram, CriticalSequence,
    EndpointKind, TypedInterval,
};
pub use multiparam::{
    line_box_clip, matching_distance, restricted_matching_distance, Bifiltration, Line, LineSample,
};
pub use rational::{ExtReal, Rational};
pub use union_zigzag::build_union_zigzag;
pub use zigzag::{
    generalized_rank, interval_decomposition, restrict_module, Arrow, ArrowDirection,
    IndexInterval, ZigzagModule,
};

/// Caps the global worker pool at `n` threads. Returns false when the pool
/// was already started (the cap must be set before any parallel work).
pub fn configure_threads(n: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .is_ok()
}
