use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("face #{index} is empty")]
    EmptyFace { index: usize },

    #[error("vertex label {label:?} duplicates another label up to surrounding whitespace")]
    DuplicateLabel { label: String },

    #[error("vertex label {label:?} is empty or contains whitespace")]
    InvalidLabel { label: String },

    #[error("unknown vertex {label:?}")]
    UnknownVertex { label: String },

    #[error("{count} vertices exceed the supported maximum of {max}")]
    TooManyVertices { count: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("disjoint union requested but vertex {vertex:?} is shared")]
    OverlappingUnion { vertex: String },

    #[error("{facet:?} is not a facet of the complex")]
    NotAFacet { facet: Vec<String> },

    #[error("{simplex:?} is not a simplex of the target complex")]
    NotSubcomplex { simplex: Vec<String> },

    #[error("map is not {expected}")]
    WrongMapClass { expected: &'static str },

    #[error("map endpoints do not match: the first map's target differs from the second map's source")]
    EndpointMismatch,

    #[error("source vertex {label:?} is not mapped")]
    UnmappedVertex { label: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("complex has a singleton facet {facet:?}; block coloring needs every facet of dimension at least 1")]
    SingletonFacet { facet: String },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("facet {facet:?} is not covered by any part")]
    UncoveredFacet { facet: Vec<String> },

    #[error("search budget exhausted after {nodes} nodes; existence undecided")]
    Undecided { nodes: u64 },

    #[error("{facets} facets exceed the cap of {cap}; use bound-only mode")]
    FacetCapExceeded { facets: usize, cap: usize },

    #[error("{0}")]
    NotApplicable(String),

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
