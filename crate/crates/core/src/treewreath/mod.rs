//! Rooted `d`-ary trees, their automorphisms as iterated wreath products,
//! the family of sign homomorphisms and the membership tests for the
//! subgroups `E_n^m` and `F_n^(m1,m2)`.
//!
//! Vertices of level `k` are numbered `0..d^k` so that the children of
//! vertex `v` are `v*d .. v*d + d`; this matches the 1-based integer leaf
//! labels `1 + Σ (l_j - 1) d^(m-j)` where `l_1` is the label nearest the
//! root.

mod address;
mod element;
mod sign;
mod text;

pub use address::{address_to_index, block_of, index_to_address, Block, LeafIndex, TreeAddress};
pub use element::WreathElement;
pub use sign::{Sign, SignatureKind};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported leaf count.
pub const MAX_LEAVES: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid tree shape d={d}, n={n}: need d >= 2 and n >= 1")]
    InvalidShape { d: usize, n: usize },
    #[error("tree {d}^{n} exceeds the supported leaf count")]
    TooLarge { d: usize, n: usize },
    #[error("label {label} outside 1..={d}")]
    InvalidAddress { label: usize, d: usize },
    #[error("address of level {level} is deeper than the tree ({n})")]
    AddressTooDeep { level: usize, n: usize },
    #[error("leaf index {index} outside 1..={max}")]
    InvalidIndex { index: usize, max: usize },
    #[error("subtree root has level {got}, expected {expected}")]
    LevelMismatch { got: usize, expected: usize },
    #[error("elements of different shapes {0} and {1}")]
    ShapeMismatch(TreeShape, TreeShape),
    #[error("level {m} out of range 1..={n}")]
    LevelOutOfRange { m: usize, n: usize },
    #[error("invalid level pair (m1={m1}, m2={m2}) for depth {n}: need n >= m1 > m2 >= 1")]
    InvalidPair { m1: usize, m2: usize, n: usize },
    #[error("vertex permutation is not a bijection of 1..={0}")]
    NotAPermutation(usize),
    #[error("flat permutation does not preserve the tree structure")]
    NotTreeAutomorphism,
    #[error("cannot parse tree element: {0}")]
    Parse(String),
}

/// A regular `d`-ary tree with `n` levels below the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeShape {
    pub d: usize,
    pub n: usize,
}

impl TreeShape {
    pub fn new(d: usize, n: usize) -> Result<Self, TreeError> {
        if d < 2 || n < 1 {
            return Err(TreeError::InvalidShape { d, n });
        }
        let mut leaves = 1usize;
        for _ in 0..n {
            leaves = leaves
                .checked_mul(d)
                .filter(|&l| l <= MAX_LEAVES)
                .ok_or(TreeError::TooLarge { d, n })?;
        }
        Ok(TreeShape { d, n })
    }

    /// Number of vertices at level `k` (`d^k`).
    pub fn level_size(&self, k: usize) -> usize {
        self.d.pow(k as u32)
    }

    pub fn leaves(&self) -> usize {
        self.level_size(self.n)
    }

    /// Number of vertices of level `< n`, i.e. vertices carrying a permutation.
    pub fn internal_vertices(&self) -> usize {
        (self.leaves() - 1) / (self.d - 1)
    }

    /// Position of the first level-`k` vertex in level order.
    pub(crate) fn level_offset(&self, k: usize) -> usize {
        (self.level_size(k) - 1) / (self.d - 1)
    }

    /// The shape of the subtree hanging below a level-`level` vertex.
    pub fn subtree(&self, level: usize) -> Option<TreeShape> {
        (level < self.n).then_some(TreeShape {
            d: self.d,
            n: self.n - level,
        })
    }
}

impl std::fmt::Display for TreeShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T_{}({})", self.n, self.d)
    }
}
