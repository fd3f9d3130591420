//! Turán numbers for vertex-disjoint cliques, made executable.
//!
//! * [`graph`]: immutable bitset graphs, graph algebra, graph6 and edge-list I/O.
//! * [`formulas`]: closed-form values of `ex(n, H)` for clique-type patterns.
//! * [`constructions`]: the extremal and witness graph families behind those values.
//! * [`packing`]: exact search for disjoint independent sets / clique packings.
//! * [`coloring`]: equitable colourings.
//! * [`shifting`]: the vertex-shifting engine that decides four disjoint
//!   independent `p`-sets in sparse graphs or certifies the `K_7`-union structure.
//! * [`oracle`]: brute-force reference procedures used for cross-checking.

pub mod coloring;
pub mod constructions;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod packing;
pub mod pattern;
pub mod random;
pub mod shifting;

pub use constructions::ConstructionId;
pub use formulas::{Regime, TuranValue};
pub use graph::{Graph, GraphError, VertexSet};
pub use pattern::Pattern;
