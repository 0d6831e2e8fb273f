//! Rigidity analysis for bar frameworks and tensegrities.
//!
//! A *tensegrity* is a graph whose edges ("members") are labelled as cables,
//! struts, or bars, together with a placement of the vertices in Euclidean
//! space. This crate builds the standard linear-algebraic machinery around
//! such structures — rigidity matrices, equilibrium stresses, stress
//! matrices — and uses it to certify three nested notions of rigidity:
//!
//! * **local rigidity**: nearby equivalent configurations are congruent,
//!   decided by the rank of the rigidity matrix;
//! * **global rigidity**: all equivalent configurations in the same dimension
//!   are congruent, certified generically by a maximal-rank equilibrium
//!   stress;
//! * **universal rigidity / super stability**: all equivalent configurations
//!   in every dimension are congruent, certified by a proper PSD stress of
//!   maximal rank whose member directions avoid a conic at infinity.
//!
//! On top of the certifiers, [`combine`] implements constructions that glue
//! two certified structures along shared vertices into a larger certified
//! one: taking unions, superimposing tensegrities so that an overlapping
//! cable/strut pair cancels, and joining two bar frameworks on exactly
//! `d + 1` shared vertices while erasing a common bar. Each construction
//! produces an explicit witness stress that can be re-verified numerically.
//!
//! Everything randomized is driven by a seeded, fixed-algorithm generator
//! ([`generators::SeededRandomSource`]), so certificates that record their
//! seed can be replayed bit for bit.

pub mod certify;
pub mod combine;
pub mod generators;
pub mod linalg;
pub mod model;

pub use certify::{Certificate, CertifiedOperation, Verdict, Witness};
pub use combine::SharedVertexMap;
pub use linalg::{NumericTolerance, RigidityMatrixForm, StressMatrixForm};
pub use model::{Configuration, Framework, MemberKind, Pair, Stress, TensegrityGraph};

/// Errors shared by every module in the crate.
///
/// The split is coarse on purpose: callers mostly care about "the input was
/// malformed" versus "a stated precondition does not hold" versus "the data
/// is too degenerate for the requested computation".
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("member {{{i}, {j}}} is not in the graph")]
    MemberNotInGraph { i: usize, j: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("stress does not match the graph: {0}")]
    StressMismatch(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("degenerate affine span: {0}")]
    DegenerateSpan(String),

    #[error("degenerate kernel: {0}")]
    DegenerateKernel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
