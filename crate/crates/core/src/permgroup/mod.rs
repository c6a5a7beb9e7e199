//! Permutation groups with deterministic stabilizer chains, normal
//! structure at enumerable sizes, and the constructive procedures on
//! `Aut(T_n)`: family harvesting, the conjugating inverter, parity-tuple
//! reduction, the normal tower of `E_n^2` and rank-2 witnesses.

mod chain;
mod families;
mod group;
mod inverter;
mod normal;
mod parity;
mod perm;
mod rank;
mod tower;

pub use families::{harvest_group, ArborealGroup, Family, HARVEST_ATTEMPTS};
pub use group::{GroupHandle, DEFAULT_ENUMERATION_BOUND};
pub use inverter::conjugating_inverter;
pub use normal::{
    chief_series, conjugacy_classes, factor_is_elementary_abelian, factor_is_simple, is_unique_chief_series,
    minimal_normal_subgroups, NormalTower, MAX_CHIEF_SERIES,
};
pub use parity::{reduce_parity_tuple, ParityStep, ParityTuple, DEFAULT_STEP_CAP};
pub use perm::Permutation;
pub use rank::{rank2_witness, RankWitness, DEFAULT_RANK_ATTEMPTS};
pub use tower::{bottom_alternating, bottom_kernel, tower_e};

use thiserror::Error;

use crate::treewreath::TreeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a permutation")]
    NotAPermutation,
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("point {point} outside 0..{degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("seed {0} is not in the group")]
    NotInGroup(usize),
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: String, bound: u64 },
    #[error("harvest stopped at order {reached} of {target} after {attempts} random attempts")]
    HarvestFailure {
        target: String,
        reached: String,
        attempts: usize,
    },
    #[error("tower term {0} is not a proper subgroup of the next")]
    TowerInclusion(usize),
    #[error("tower term {0} is not normal")]
    TowerNormality(usize),
    #[error("no termination after {steps} steps")]
    NonTermination { steps: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}
