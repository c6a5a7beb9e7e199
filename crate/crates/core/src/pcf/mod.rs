//! Post-critically finite polynomials: the forward orbit of the critical
//! multiset, the discriminant recursion for `f^n - α`, and the prediction of
//! the level at which `disc(f^n - α)` becomes a square.

mod disc;
mod orbit;
mod square;

pub use disc::{
    critical_product, disc_iterate, nonsquare_part, recursion_leading_exponent, recursion_sign,
    DiscReport, RecursionStep,
};
pub use orbit::{
    critical_multisets, critical_orbit, pcf_classify, CriticalOrbit, PcfProfile,
    DEFAULT_ORBIT_BOUND,
};
pub use square::{
    critical_block_is_square, embedding_target, square_prediction, verify_square_prediction,
    EmbeddingTarget, SquareCheck, SquareEvidence, SquarePrediction, SymbolicProduct,
    SymbolicProducts,
};

use crate::polyarith::PolyError;

#[derive(Debug, thiserror::Error)]
pub enum PcfError {
    #[error("degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("no repeat in the critical orbit within {steps} steps")]
    NotPcfWithinBound { steps: usize },
    #[error("critical orbit heights grow geometrically; not post-critically finite")]
    NotPcf,
    #[error("discriminant recursion disagrees with the direct value at n = {n}")]
    RecursionMismatch { n: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
