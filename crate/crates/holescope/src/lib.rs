//! Algorithms and certificate verifiers for hole structure in triangle-free
//! graphs: hole spectra, exact chromatic numbers, local chromatic control,
//! layered scaffolds (levellings, showers, jets) and labeled substructure
//! certificates (trellises, covers, cables) with constructive hole extractors.

pub mod chroma;
pub mod constructions;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod holes;
pub mod structures;

pub use graph::{Distance, Graph, VertexSeq};
