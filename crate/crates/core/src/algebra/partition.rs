use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::Group;

/// Blocks `T_1 = {1}, T_2, …, T_n` covering the group, with each `T_i^{(-1)}`
/// again a block. Blocks are sorted internally and ordered by
/// `(size, least element)` after the identity block.
#[derive(Clone)]
pub struct SchurPartition {
    group: Arc<Group>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    inverse: Vec<usize>,
}

impl PartialEq for SchurPartition {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks && *self.group == *other.group
    }
}

impl Eq for SchurPartition {}

impl fmt::Debug for SchurPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchurPartition({:?})", self.blocks)
    }
}

impl SchurPartition {
    pub fn new(group: Arc<Group>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        let e = group.identity();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for w in b.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidPartition(format!("element {} repeated", w[0])));
                }
            }
        }
        blocks.sort_by(|a, b| {
            (a.as_slice() != [e], a.len(), a[0]).cmp(&(b.as_slice() != [e], b.len(), b[0]))
        });
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n {
                    return Err(Error::InvalidPartition(format!("element {x} out of range")));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {x} in two blocks")));
                }
                block_of[x] = i;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} not covered")));
        }
        if blocks[0] != [e] {
            return Err(Error::InvalidPartition("the identity must form its own block".into()));
        }
        let mut inverse = Vec::with_capacity(blocks.len());
        for (i, b) in blocks.iter().enumerate() {
            let j = block_of[group.inv(b[0])];
            let ok = blocks[j].len() == b.len() && b.iter().all(|&x| block_of[group.inv(x)] == j);
            if !ok {
                return Err(Error::InvalidPartition(format!(
                    "inverse of block {i} is not a block"
                )));
            }
            inverse.push(j);
        }
        Ok(SchurPartition {
            group,
            blocks,
            block_of,
            inverse,
        })
    }

    /// `{1}, G∖{1}`.
    pub fn trivial(group: Arc<Group>) -> Self {
        let e = group.identity();
        let rest: Vec<usize> = (0..group.order()).filter(|&x| x != e).collect();
        let blocks = if rest.is_empty() { vec![vec![e]] } else { vec![vec![e], rest] };
        Self::new(group, blocks).expect("trivial partition")
    }

    /// Singletons: the full group algebra.
    pub fn discrete(group: Arc<Group>) -> Self {
        let blocks = (0..group.order()).map(|x| vec![x]).collect();
        Self::new(group, blocks).expect("discrete partition")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// Index of `T_i^{(-1)}`.
    pub fn inverse_block(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Whether `set` is a union of blocks.
    pub fn is_union_of_blocks(&self, set: &[usize]) -> bool {
        let mut hit = vec![0usize; self.blocks.len()];
        for &x in set {
            hit[self.block_of[x]] += 1;
        }
        hit.iter()
            .zip(&self.blocks)
            .all(|(&h, b)| h == 0 || h == b.len())
    }

    /// Canonical deduplication key: the sorted block list.
    pub fn fingerprint(&self) -> Vec<Vec<usize>> {
        let mut f = self.blocks.clone();
        f.sort();
        f
    }

    /// The image partition under a bijection of the group.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| f(x)).collect())
            .collect();
        SchurPartition::new(self.group.clone(), blocks)
    }
}
