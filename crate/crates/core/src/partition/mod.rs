//! Partial set partitions and the set-level calculus on them: restriction,
//! quotient, insertion, admissible families and tuples.

mod insertion;
mod quotient;
mod tuple;

use std::fmt;

use crate::atom::Atom;
use crate::block::Block;
use crate::error::{Error, Result};

pub use insertion::{canonical_reinsert, factor_quotient, insert, insert_ordered, trivial_insert, InsertionMap};
pub use quotient::{
    adjust, is_admissible, iterated_quotient, merge_witness, quotient, quotient_by, restrict, touched_range,
    QuotientResult,
};
pub use tuple::{is_admissible_to_tuple, tuple_quotient, PartitionTuple};

/// Union of a family of blocks.
pub fn reversion<'a, I: IntoIterator<Item = &'a Block>>(family: I) -> Block {
    let mut atoms: Vec<Atom> = family.into_iter().flat_map(|b| b.iter()).collect();
    atoms.sort_unstable();
    atoms.dedup();
    Block::new(atoms)
}

/// Rejects overlapping blocks and drops empty ones, keeping the given order.
fn checked_blocks<I: IntoIterator<Item = Block>>(blocks: I) -> Result<Vec<Block>> {
    let blocks: Vec<Block> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    let mut atoms: Vec<Atom> = blocks.iter().flat_map(|b| b.iter()).collect();
    atoms.sort_unstable();
    let shared: Vec<Atom> = atoms.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    if shared.is_empty() {
        Ok(blocks)
    } else {
        Err(Error::InvalidPartition(format!("blocks not disjoint (shared atoms {})", Block::new(shared))))
    }
}

/// A family of pairwise-disjoint nonempty blocks, held in canonical form:
/// blocks sorted by their minimum atom. Equality is therefore insensitive to
/// the order blocks were supplied in.
///
/// The empty partition is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Block>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Block>>(blocks: I) -> Result<Self> {
        Ok(Self::from_disjoint(checked_blocks(blocks)?))
    }

    /// Test helper: `Partition::of(&[&[1, 2], &[3]])`. Panics on overlap.
    pub fn of(blocks: &[&[u32]]) -> Self {
        Self::new(blocks.iter().map(|b| Block::of(b))).expect("blocks must be disjoint")
    }

    /// Canonicalizes blocks already known to be disjoint.
    pub(crate) fn from_disjoint(mut blocks: Vec<Block>) -> Self {
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b.min_atom());
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The union of all blocks.
    pub fn range(&self) -> Block {
        reversion(&self.blocks)
    }

    pub fn atom_count(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn block_of(&self, atom: Atom) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(atom))
    }

    pub fn position(&self, block: &Block) -> Option<usize> {
        self.blocks.iter().position(|b| b == block)
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    /// True iff every block of `self` lies inside some block of `other`.
    pub fn is_subpartition_of(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|j| other.blocks.iter().any(|i| j.is_subset(i)))
    }

    /// Blocks of both operands, which must have disjoint ranges.
    pub fn disjoint_union(&self, other: &Partition) -> Result<Partition> {
        let shared = self.range().intersection(&other.range());
        if !shared.is_empty() {
            return Err(Error::RangesNotDisjoint(shared));
        }
        Ok(Self::from_disjoint(self.blocks.iter().chain(&other.blocks).cloned().collect()))
    }

    /// The same partition with atoms renamed; `f` must be injective on the range.
    pub fn relabel(&self, mut f: impl FnMut(Atom) -> Atom) -> Partition {
        Self::from_disjoint(self.blocks.iter().map(|b| b.iter().map(&mut f).collect()).collect())
    }
}

/// Free-function form of [`Partition::is_subpartition_of`]: every block of
/// `family` lies inside a block of `partition`.
pub fn is_subpartition(family: &Partition, partition: &Partition) -> bool {
    family.is_subpartition_of(partition)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.blocks)
    }
}

fn write_blocks(f: &mut fmt::Formatter<'_>, blocks: &[Block]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{b}")?;
    }
    write!(f, "}}")
}

/// A partition whose block order is significant. Only the signed
/// composition reads the order; everything else works on [`Partition`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Block>,
}

impl OrderedPartition {
    pub fn new<I: IntoIterator<Item = Block>>(blocks: I) -> Result<Self> {
        Ok(OrderedPartition { blocks: checked_blocks(blocks)? })
    }

    pub fn of(blocks: &[&[u32]]) -> Self {
        Self::new(blocks.iter().map(|b| Block::of(b))).expect("blocks must be disjoint")
    }

    pub(crate) fn from_disjoint(blocks: Vec<Block>) -> Self {
        OrderedPartition { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn range(&self) -> Block {
        reversion(&self.blocks)
    }

    pub fn canonical(&self) -> Partition {
        Partition::from_disjoint(self.blocks.clone())
    }
}

impl From<Partition> for OrderedPartition {
    fn from(p: Partition) -> Self {
        OrderedPartition { blocks: p.blocks }
    }
}

impl From<&OrderedPartition> for Partition {
    fn from(p: &OrderedPartition) -> Self {
        p.canonical()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}
