use std::fmt;

use crate::block::Block;
use crate::error::{Error, Result};

use super::quotient::pairwise_disjoint;
use super::{is_admissible, iterated_quotient, Partition};

/// An ordered family of partitions with pairwise-disjoint ranges.
///
/// Canonical form drops empty parts and sorts the rest by the minimum atom
/// of their range, so the empty tuple is the unit and a nonempty partition
/// embeds as a tuple of length one.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionTuple {
    parts: Vec<Partition>,
}

impl PartitionTuple {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Partition>>(parts: I) -> Result<Self> {
        let parts: Vec<Partition> = parts.into_iter().collect();
        let ranges: Vec<Block> = parts.iter().map(Partition::range).collect();
        if !pairwise_disjoint(&ranges) {
            return Err(Error::InvalidTuple("component ranges overlap".into()));
        }
        Ok(Self::from_disjoint(parts))
    }

    pub(crate) fn from_disjoint(mut parts: Vec<Partition>) -> Self {
        parts.retain(|p| !p.is_empty());
        parts.sort_unstable_by_key(|p| p.blocks()[0].min_atom());
        PartitionTuple { parts }
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The empty tuple is the unit.
    pub fn is_unit(&self) -> bool {
        self.is_empty()
    }

    pub fn range(&self) -> Block {
        self.parts.iter().fold(Block::empty(), |acc, p| acc.union(&p.range()))
    }

    pub fn atom_count(&self) -> usize {
        self.parts.iter().map(Partition::atom_count).sum()
    }

    /// All blocks of all components as one partition.
    pub fn merged(&self) -> Partition {
        Partition::from_disjoint(self.parts.iter().flat_map(|p| p.blocks().iter().cloned()).collect())
    }
}

impl From<Partition> for PartitionTuple {
    fn from(p: Partition) -> Self {
        PartitionTuple::from_disjoint(vec![p])
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Blocks of `family` lying inside the range of each component, or `None`
/// when some block is not contained in a single component range.
fn split_by_component(t: &PartitionTuple, family: &Partition) -> Option<Vec<Vec<Block>>> {
    let ranges: Vec<Block> = t.parts.iter().map(Partition::range).collect();
    let mut split = vec![Vec::new(); ranges.len()];
    for j in family.blocks() {
        let lambda = ranges.iter().position(|r| j.is_subset(r))?;
        split[lambda].push(j.clone());
    }
    Some(split)
}

/// Whether `family` admits to the tuple: each block sits inside one
/// component range, and the blocks of each component admit to it.
pub fn is_admissible_to_tuple(t: &PartitionTuple, family: &Partition) -> Result<bool> {
    let Some(split) = split_by_component(t, family) else {
        return Ok(false);
    };
    for (part, blocks) in t.parts.iter().zip(split) {
        let sub = Partition::from_disjoint(blocks);
        if !is_admissible(part, &sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Componentwise iterated quotient; each component is divided only by the
/// blocks of `family` inside its range.
pub fn tuple_quotient(t: &PartitionTuple, family: &Partition) -> Result<PartitionTuple> {
    if !is_admissible_to_tuple(t, family)? {
        return Err(Error::NotAdmissibleToTuple(format!("{family} does not admit to {t}")));
    }
    let split = split_by_component(t, family).expect("checked above");
    let parts = t
        .parts
        .iter()
        .zip(split)
        .map(|(part, blocks)| iterated_quotient(part, &blocks))
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionTuple::from_disjoint(parts))
}
