//! Projected fixed-point iteration over composite operator sequences.
//!
//! Operators are affine maps on a finite-dimensional real normed space.
//! The crate runs the iteration `x_{k+1} = T_k x_k`, `z_k = P_k x_k` with a
//! sequence of (possibly oblique) projectors, searches for contractive
//! strips of consecutive operators, and checks the associated contraction
//! bounds, limit statements and fixed-point claims numerically.

pub mod error;
pub mod iteration;
pub mod linalg;
pub mod numfmt;
pub mod operator;
pub mod projector;
pub mod random;
pub mod scenario;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use iteration::{
    cauchy_residual, extend_trace, find_contractive_strips, iterate, IterateOptions, IterationTrace, StripSchedule,
    Termination,
};
pub use operator::{
    sequence_limit_substitute, strip, AffineOperator, CompositeStrip, OperatorSequence, TailRule,
};
pub use projector::{is_projector, oblique_projector, orthogonal_projector, ObliqueProjector, ProjectorSequence};
pub use space::{distance, norm_of, NormKind, Vector};
