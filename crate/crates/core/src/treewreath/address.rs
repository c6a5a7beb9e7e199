use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{TreeError, TreeShape};

/// A vertex given by its labels.
///
/// Labels are stored root-first: `labels[0]` is `l_1`, the branch taken at
/// the root. The conventional written form `(l_m, …, l_1)` lists them
/// leaf-first; see [`TreeAddress::from_leaf_first`] and the `Display` impl.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeAddress {
    labels: Vec<usize>,
}

impl TreeAddress {
    pub fn root() -> Self {
        TreeAddress { labels: Vec::new() }
    }

    pub fn from_root_first(labels: Vec<usize>) -> Self {
        TreeAddress { labels }
    }

    /// From the written order `(l_m, …, l_1)`.
    pub fn from_leaf_first(labels: &[usize]) -> Self {
        TreeAddress {
            labels: labels.iter().rev().copied().collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.labels.len()
    }

    pub fn labels_root_first(&self) -> &[usize] {
        &self.labels
    }

    fn validate(&self, shape: &TreeShape) -> Result<(), TreeError> {
        if self.level() > shape.n {
            return Err(TreeError::AddressTooDeep {
                level: self.level(),
                n: shape.n,
            });
        }
        match self.labels.iter().find(|&&l| l == 0 || l > shape.d) {
            Some(&label) => Err(TreeError::InvalidAddress { label, d: shape.d }),
            None => Ok(()),
        }
    }

    /// 0-based position among the vertices of the same level.
    pub(crate) fn vertex_number(&self, d: usize) -> usize {
        self.labels.iter().fold(0, |acc, &l| acc * d + (l - 1))
    }
}

impl fmt::Display for TreeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.labels.iter().rev().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// 1-based integer label of a vertex within its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeafIndex {
    pub level: usize,
    pub index: usize,
}

/// `i = l_m + Σ_{k=1}^{m-1} (l_{m-k} - 1) d^k`.
pub fn address_to_index(addr: &TreeAddress, shape: &TreeShape) -> Result<LeafIndex, TreeError> {
    addr.validate(shape)?;
    Ok(LeafIndex {
        level: addr.level(),
        index: addr.vertex_number(shape.d) + 1,
    })
}

pub fn index_to_address(
    index: usize,
    level: usize,
    shape: &TreeShape,
) -> Result<TreeAddress, TreeError> {
    if level > shape.n {
        return Err(TreeError::AddressTooDeep { level, n: shape.n });
    }
    let max = shape.level_size(level);
    if index == 0 || index > max {
        return Err(TreeError::InvalidIndex { index, max });
    }
    let mut v = index - 1;
    let mut labels = vec![0; level];
    for slot in labels.iter_mut().rev() {
        *slot = v % shape.d + 1;
        v /= shape.d;
    }
    Ok(TreeAddress { labels })
}

/// Leaf indices of one level-`(n-m)` subtree: a block of `T_n` over `T_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub subtree_root: TreeAddress,
    first: usize,
    len: usize,
}

impl Block {
    pub fn indices(&self) -> RangeInclusive<usize> {
        self.first..=self.first + self.len - 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices().contains(&index)
    }
}

/// The block of leaves below `subtree_root`, which must sit at level `n - m`.
pub fn block_of(shape: &TreeShape, m: usize, subtree_root: &TreeAddress) -> Result<Block, TreeError> {
    if m > shape.n {
        return Err(TreeError::LevelOutOfRange { m, n: shape.n });
    }
    subtree_root.validate(shape)?;
    let expected = shape.n - m;
    if subtree_root.level() != expected {
        return Err(TreeError::LevelMismatch {
            got: subtree_root.level(),
            expected,
        });
    }
    let len = shape.level_size(m);
    Ok(Block {
        subtree_root: subtree_root.clone(),
        first: subtree_root.vertex_number(shape.d) * len + 1,
        len,
    })
}
