//! Error types shared across the crate.
//!
//! Three classes of failure are distinguished because callers react to them
//! differently:
//!
//! * [`ParseError`]: the input bytes do not match the expected JSON shape.
//! * [`ValidationError`] / [`OpError`]: the input is well-formed but the
//!   data violates an axiom, or an operation's preconditions do not hold.
//! * [`Error::Internal`]: a structural invariant the library relies on was
//!   violated; this indicates a bug or an input outside the supported theory
//!   and is never raised for ordinary bad data.

use thiserror::Error;

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Input bytes do not parse against the documented JSON schemas.
#[derive(Debug, Error)]
pub enum ParseError {
    /// Malformed JSON syntax or a type mismatch inside the document.
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// Structurally valid JSON that does not satisfy the schema.
    #[error("{0}")]
    Schema(String),
}

/// Well-formed data that violates a graph or axial-function axiom.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    /// The dart table is not a well-formed involution over the listed darts.
    #[error("malformed dart table: {0}")]
    BadDartTable(String),
    /// Some vertex does not have exactly three darts.
    #[error("graph is not 3-valent: {0}")]
    NotTrivalent(String),
    /// The underlying graph is not connected.
    #[error("graph is disconnected")]
    Disconnected,
    /// The rotation system does not embed in the sphere.
    #[error("rotation system is not a sphere embedding (V - E + F = {euler}, expected 2)")]
    NotSphere {
        /// The Euler characteristic actually computed.
        euler: i64,
    },
    /// A facet boundary walk visits some vertex twice.
    #[error("facet {facet} visits vertex {vertex} more than once")]
    FacetNotSimple {
        /// Index of the offending facet.
        facet: usize,
        /// The repeated vertex.
        vertex: usize,
    },
    /// A facet boundary walk contains both darts of one edge.
    #[error("facet {facet} passes along both sides of edge {edge}")]
    FacetSelfIntersects {
        /// Index of the offending facet.
        facet: usize,
        /// Index of the doubled edge.
        edge: usize,
    },
    /// The three facet corners at a vertex do not belong to distinct facets.
    #[error("vertex {vertex} does not lie on three distinct facets")]
    RepeatedFacetAtVertex {
        /// The offending vertex.
        vertex: usize,
    },
    /// The two labels of an edge are neither equal nor opposite.
    #[error("labels on the edge at dart {dart} are neither equal nor opposite")]
    SignAxiom {
        /// One dart of the offending edge.
        dart: usize,
    },
    /// The three labels at a vertex do not form a unimodular basis.
    #[error("labels at vertex {vertex} are not a unimodular basis")]
    NotUnimodularBasis {
        /// The offending vertex.
        vertex: usize,
    },
    /// No connection (unique congruence-compatible bijection) exists.
    #[error("no connection across dart {dart}: {reason}")]
    NoConnection {
        /// The dart along which the connection fails.
        dart: usize,
        /// What went wrong (no candidate, ambiguous, not bijective).
        reason: String,
    },
    /// The vertex signs violate the orientation rule on some edge.
    #[error("orientation signs violate the sign rule on the edge at dart {dart}")]
    SigmaRule {
        /// One dart of the offending edge.
        dart: usize,
    },
    /// A vertex sign is not +1 or -1.
    #[error("orientation value at vertex {vertex} must be +1 or -1")]
    BadSigma {
        /// The offending vertex.
        vertex: usize,
    },
    /// Three lattice vectors that were required to be a basis are not.
    #[error("facet vectors at vertex {vertex} are not a unimodular basis")]
    NotUnimodular {
        /// The vertex at which the triple was assembled.
        vertex: usize,
    },
    /// A duality solve received a triple that is not a unimodular basis.
    #[error("vectors are not a unimodular basis; the dual system has no integer solution")]
    NotUnimodularVectors,
    /// Characteristic recovery produced conflicting vectors for one facet.
    #[error("facet {facet} receives conflicting vectors during recovery")]
    InconsistentFacetVector {
        /// The facet with disagreeing candidates.
        facet: usize,
    },
    /// No choice of vertex signs satisfies the orientation rule.
    #[error("graph admits no orientation: the sign rule has no solution")]
    NotOrientable,
    /// The zero vector has no sign class.
    #[error("zero vector has no sign class")]
    ZeroVector,
    /// The graph carries no orientation but one is required.
    #[error("operation requires vertex signs but none are present")]
    MissingSigma,
    /// A table has the wrong length for the graph it describes.
    #[error("{what} has length {got}, expected {expected}")]
    WrongLength {
        /// Which table is malformed.
        what: &'static str,
        /// Required length.
        expected: usize,
        /// Actual length.
        got: usize,
    },
}

/// A surgery or classification operation was called outside its domain.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpError {
    /// The chosen vertices cannot be glued: labels or signs do not match.
    #[error("inadmissible gluing site: {0}")]
    InadmissibleSite(String),
    /// The chosen edges do not cut the graph into exactly two crossing sides.
    #[error("edges do not form a cut: {0}")]
    NotACut(String),
    /// The cut is 2-sided but the induced cap labels are not unimodular.
    #[error("cap labels at the cut are not a unimodular basis")]
    InvalidCap,
    /// `reduce_multi_edge` was called on a graph without a multiple edge.
    #[error("graph has no multiple edge")]
    NoMultipleEdge,
    /// The graph is not a 4-vertex bundle graph.
    #[error("graph does not have the 4-vertex bundle shape: {0}")]
    NotSBShaped(String),
    /// `reduce_singular_facet` was called on a 3-connected graph.
    #[error("graph is already 3-connected")]
    Already3Connected,
}

/// Top-level error type.
#[derive(Debug, Error)]
pub enum Error {
    /// See [`ParseError`].
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    /// See [`ValidationError`].
    #[error("validation error: {0}")]
    Validation(#[from] ValidationError),
    /// See [`OpError`].
    #[error("{0}")]
    Op(#[from] OpError),
    /// A structural invariant was violated; indicates a bug, not bad input.
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for command-line reporting: parse failures exit 2,
    /// internal invariant violations exit 3, everything else exits 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }

    /// Shorthand for an internal invariant violation.
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(ParseError::Json(e))
    }
}
