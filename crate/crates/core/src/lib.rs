//! Erdős–Hajnal shift graphs and Ramsey-type extraction on them.
//!
//! - [`shift`]: interval and shift graphs `Sh(N, k)`, `G_k = Sh(2^k + 1, 2)`.
//! - [`graph`]: plain undirected graphs with exact clique, chromatic and
//!   monomorphism solvers.
//! - [`coloring`]: red/blue edge colorings, their file format and generators.
//! - [`extraction`]: pigeonhole extraction of monochromatic structured copies.
//! - [`verify`]: independent certification and exhaustive Ramsey sweeps.
//! - [`sequence`]: the tower bound on host sizes.

pub mod coloring;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod sequence;
pub mod shift;
pub mod verify;

pub use coloring::{
    adversarial_coloring, all_colorings, constant_coloring, load_coloring, load_coloring_any,
    predicate_coloring, random_coloring, save_coloring, Adversary, Color, Host, TwoColoring,
};
pub use error::{Error, ParseErrorKind, Result};
pub use extraction::{
    lemma1_extract, opportunistic_extract, ramsey_extract, ExtractionKind, ExtractionTrace,
    StageRecord,
};
pub use graph::{
    chromatic_number, chromatic_number_with_budget, clique_number, complete_graph,
    find_monomorphism, Graph, VertexMapping,
};
pub use sequence::{required_host_size, s_sequence, BigNat, TowerValue};
pub use shift::{
    canonical_embedding, eh_graph, induced_on_points, shift_graph, IntervalVertex,
    PointEmbedding, ShiftGraph,
};
pub use verify::{
    classical_ramsey, contains_mono_copy, ramsey_check, verify_structured_copy, RamseyMode,
    RamseyVerdict, Scope, SCHEMA_VERSION,
};
