//! Crate-wide error type.
//!
//! Variants are grouped by how a front end should treat them: malformed input,
//! a mathematically negative answer baked into the data (e.g. the given pairs
//! do not present a unitary), a violated precondition, or an internal guard
//! tripping (fuel counters, cross-checks that should be unreachable).

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // ------------------------------------------------------------ structure
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdgeId(String),
    #[error("edge `{edge}` refers to undeclared vertex `{vertex}`")]
    UndeclaredEndpoint { edge: String, vertex: String },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("edge `{edge}` does not continue the path: expected source `{expected}`")]
    BrokenPath { edge: String, expected: String },
    #[error("path anchor `{anchor}` does not match the source of edge `{edge}`")]
    AnchorMismatch { anchor: String, edge: String },
    #[error("cannot concatenate: range `{range}` differs from source `{src}`")]
    Composition { range: String, src: String },
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("path `{0}` is not anchored at the requested vertex")]
    WrongAnchor(String),

    // -------------------------------------------------------------- algebra
    #[error("monomial has mismatched ranges: r({mu}) != r({nu})")]
    RangeMismatch { mu: String, nu: String },
    #[error("element is not a diagonal projection: {0}")]
    NotDiagonalProjection(String),
    #[error("power exponent must be at least 1")]
    ZeroPower,

    // --------------------------------------------------------- pair sets
    #[error("pair ({mu}, {nu}) has mismatched sources")]
    PairSourceMismatch { mu: String, nu: String },
    #[error("pair ({mu}, {nu}) has mismatched ranges")]
    PairRangeMismatch { mu: String, nu: String },
    #[error("side {side} of the pair set is not a partition of unity (fails at vertex `{vertex}`)")]
    NotPartitionOfUnity { side: u8, vertex: String },
    #[error("first component `{0}` appears in more than one pair")]
    DuplicateFirstComponent(String),
    #[error(
        "second component of pair ({mu}, {nu}) has length 0; \
         expand it first via P_v = sum of S_e S_e* over e with source v"
    )]
    EmptySecondComponent { mu: String, nu: String },
    #[error("element is not unitary")]
    NotUnitary,
    #[error("element is not recognized as a polynomial unitary: {0}")]
    NotPolynomialUnitary(String),
    #[error("`{0}` is not a prefix of any member of the requested side")]
    NoPrefixMember(String),
    #[error("`{0}` is not a first component of the pair set")]
    NotFirstComponent(String),
    #[error("random generation failed after {0} attempts; reduce constraints")]
    GenerationFailed(u32),

    // ------------------------------------------------------- preconditions
    #[error("vertex ({mu}, {nu}) is not in the pair set")]
    VertexNotInPairSet { mu: String, nu: String },
    #[error("vertex ({mu}, {nu}) emits a non-positive edge; splitting is not allowed there")]
    SplitAtNonPositiveEmitter { mu: String, nu: String },
    #[error("operation requires a coding graph with only non-negative edges and no non-positive cycles")]
    NeedsNonNegativeGraph,
    #[error("operation requires a diagonal-automorphism verdict of Auto")]
    VerdictNotAuto,
    #[error("path is not a path of the coding graph")]
    NotACodingPath,
    #[error("path must have length at least 1")]
    EmptyPath,
    #[error("oracle depth {depth} is smaller than the longest first component ({needed})")]
    DepthTooSmall { depth: usize, needed: usize },

    // ---------------------------------------------------------- transducers
    #[error("letter `{0}` is not in the input alphabet")]
    LetterNotInAlphabet(String),
    #[error("input rejected: the run entered the sink state at step {0}")]
    InvalidInput(usize),
    #[error("transducer emitted nothing across a full period cycle")]
    StalledOutput,
    #[error("alphabet mismatch: output of the first machine differs from input of the second")]
    AlphabetMismatch,
    #[error("period must be nonempty")]
    EmptyPeriod,

    // -------------------------------------------------------------- guards
    #[error("fuel exhausted in {0}; this indicates an implementation bug, not a mathematical verdict")]
    FuelExhausted(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that encode a mathematically negative verdict about
    /// well-formed input, as opposed to malformed input or an internal bug.
    pub fn is_math_negative(&self) -> bool {
        matches!(
            self,
            Error::NotPartitionOfUnity { .. }
                | Error::PairSourceMismatch { .. }
                | Error::PairRangeMismatch { .. }
                | Error::DuplicateFirstComponent(_)
                | Error::EmptySecondComponent { .. }
                | Error::NotUnitary
                | Error::NotPolynomialUnitary(_)
                | Error::VerdictNotAuto
        )
    }

    /// True for internal guards (fuel, broken invariants).
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::FuelExhausted(_) | Error::Internal(_) | Error::StalledOutput)
    }
}
