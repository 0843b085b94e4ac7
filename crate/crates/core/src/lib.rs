//! Exact facet-complexity between abstract simplicial complexes.
//!
//! A [`Complex`] is stored by its facets. [`homsearch::find_map`] decides whether a facet or
//! strict simplicial map exists, [`complexity::compute`] finds the least number of facet-colourable
//! subcomplexes covering a source, and [`oracle`] holds brute-force references for all of it.

pub mod cli;
pub mod coloring;
pub mod complex;
pub mod complexity;
pub mod error;
pub mod fixtures;
pub mod homsearch;
pub mod maps;
pub mod oracle;
pub mod scx;
pub mod verify;
pub mod vset;

pub use coloring::{chromatic_number, graph_chromatic_number, Chromatic, Coloring};
pub use complex::{generate, Complex, GenParams, GeneratorKind, GraphView, Metrics};
pub use complexity::{bounds, compute, compute_with, BoundReport, Complexity, ComplexityQuery, ComputeOptions, Cover};
pub use error::{Error, Result};
pub use homsearch::{find_map, MapKind, SearchLimits, SearchOutcome, SearchProblem, SearchStatus};
pub use maps::{MapClass, VertexMap};
pub use scx::{parse_scx, serialize_scx};
pub use vset::VertexSet;
