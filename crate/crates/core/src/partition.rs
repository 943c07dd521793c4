//! Equivalence relations on element indices.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A partition of `0..n` in normal form: blocks are listed by their
/// smallest member and block ids are dense in that order.
///
/// Partitions order by block count (descending) and then by the block-id
/// vector, which is the ordering used for all congruence listings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionWire", into = "PartitionWire")]
pub struct Partition {
    block_id: Vec<usize>,
    blocks: Vec<ElementSet>,
}

#[derive(Serialize, Deserialize)]
struct PartitionWire {
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionWire> for Partition {
    type Error = Error;

    fn try_from(wire: PartitionWire) -> Result<Self> {
        let n = wire.blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, &wire.blocks)
    }
}

impl From<Partition> for PartitionWire {
    fn from(p: Partition) -> Self {
        PartitionWire {
            blocks: p.blocks.iter().map(|b| b.to_vec()).collect(),
        }
    }
}

impl Partition {
    /// Builds the normal form from arbitrary block labels.
    pub fn from_labels<L: Copy + Eq>(labels: &[L]) -> Self {
        let mut seen: Vec<L> = Vec::new();
        let mut block_id = Vec::with_capacity(labels.len());
        let mut blocks: Vec<ElementSet> = Vec::new();
        for (x, &label) in labels.iter().enumerate() {
            let id = match seen.iter().position(|&l| l == label) {
                Some(id) => id,
                None => {
                    seen.push(label);
                    blocks.push(ElementSet::EMPTY);
                    seen.len() - 1
                }
            };
            blocks[id].insert(x);
            block_id.push(id);
        }
        Partition { block_id, blocks }
    }

    pub fn identity(n: usize) -> Self {
        Partition {
            block_id: (0..n).collect(),
            blocks: (0..n).map(ElementSet::singleton).collect(),
        }
    }

    /// The one-block partition.
    pub fn total(n: usize) -> Self {
        Partition {
            block_id: vec![0; n],
            blocks: if n == 0 { vec![] } else { vec![ElementSet::full(n)] },
        }
    }

    /// The partition whose only nonsingleton block is `block` (if `|block| >= 2`).
    pub fn with_single_block(n: usize, block: ElementSet) -> Self {
        let anchor = block.first().unwrap_or(0);
        let labels: Vec<usize> = (0..n)
            .map(|x| if block.contains(x) { anchor } else { x })
            .collect();
        Self::from_labels(&labels)
    }

    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        got: x + 1,
                    });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                labels[x] = id;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} is missing")));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn n(&self) -> usize {
        self.block_id.len()
    }

    pub fn block_id(&self) -> &[usize] {
        &self.block_id
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> ElementSet {
        self.blocks[self.block_id[x]]
    }

    #[inline]
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_id[x] == self.block_id[y]
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.block_id.len()
    }

    pub fn nonsingleton_blocks(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.blocks.iter().copied().filter(|b| b.len() > 1)
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        self.n() == other.n()
            && self
                .blocks
                .iter()
                .all(|b| b.is_subset(other.block_of(b.first().expect("nonempty block"))))
    }

    /// One `(member, block minimum)` pair per non-minimal member; these
    /// pairs generate the partition as an equivalence.
    pub fn spanning_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.iter().flat_map(|b| {
            let min = b.first().expect("nonempty block");
            b.iter().skip(1).map(move |x| (x, min))
        })
    }

    pub fn to_block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .blocks
            .len()
            .cmp(&self.blocks.len())
            .then_with(|| self.block_id.cmp(&other.block_id))
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `x` and `y` were already together.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }

    pub fn partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}
