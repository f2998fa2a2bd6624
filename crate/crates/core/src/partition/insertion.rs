use crate::atom::Atom;
use crate::block::Block;
use crate::error::{Error, Result};

use super::{quotient, restrict, touched_range, OrderedPartition, Partition};

/// A total map from the atoms of a host block to block indices of a guest
/// partition. `targets[i]` is the image of the `i`-th smallest atom of
/// `source`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InsertionMap {
    source: Block,
    targets: Vec<usize>,
}

impl InsertionMap {
    pub fn new(source: Block, targets: Vec<usize>) -> Self {
        InsertionMap { source, targets }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Atom, usize)>>(pairs: I) -> Self {
        let mut pairs: Vec<(Atom, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup_by_key(|(a, _)| *a);
        let source = Block::new(pairs.iter().map(|&(a, _)| a));
        InsertionMap {
            source,
            targets: pairs.into_iter().map(|(_, t)| t).collect(),
        }
    }

    pub fn source(&self) -> &Block {
        &self.source
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Atom, usize)> + '_ {
        self.source.iter().zip(self.targets.iter().copied())
    }

    pub fn image(&self, atom: Atom) -> Option<usize> {
        self.source.atoms().binary_search(&atom).ok().map(|i| self.targets[i])
    }

    /// Atoms sent to guest block `j`.
    pub fn preimage(&self, j: usize) -> Block {
        self.pairs().filter(|&(_, t)| t == j).map(|(a, _)| a).collect()
    }

    fn check(&self, host_block: &Block, guest_len: usize) -> Result<()> {
        if &self.source != host_block || self.targets.len() != self.source.len() {
            return Err(Error::IncompleteInsertionMap(format!(
                "map is defined on {} but the host block is {host_block}",
                self.source
            )));
        }
        if let Some(&bad) = self.targets.iter().find(|&&t| t >= guest_len) {
            return Err(Error::BadIndex { index: bad, len: guest_len });
        }
        Ok(())
    }
}

fn check_disjoint(a: &Block, b: &Block) -> Result<()> {
    let shared = a.intersection(b);
    if shared.is_empty() {
        Ok(())
    } else {
        Err(Error::RangesNotDisjoint(shared))
    }
}

fn enlarged_guest_blocks<'a>(guest: &'a [Block], map: &'a InsertionMap) -> impl Iterator<Item = Block> + 'a {
    guest.iter().enumerate().map(move |(j, b)| b.union(&map.preimage(j)))
}

/// Replaces block `a` of `host` by the blocks of `guest`, each enlarged by
/// its preimage under `map`.
pub fn insert(host: &Partition, a: usize, guest: &Partition, map: &InsertionMap) -> Result<Partition> {
    let site = host.blocks().get(a).ok_or(Error::BadIndex { index: a, len: host.len() })?;
    map.check(site, guest.len())?;
    check_disjoint(&host.range(), &guest.range())?;
    let mut blocks: Vec<Block> = Vec::with_capacity(host.len() + guest.len());
    blocks.extend(host.blocks().iter().enumerate().filter(|&(i, _)| i != a).map(|(_, b)| b.clone()));
    blocks.extend(enlarged_guest_blocks(guest.blocks(), map));
    Ok(Partition::from_disjoint(blocks))
}

/// [`insert`] on ordered partitions: the enlarged guest blocks take the
/// place of block `a`, in the guest's order.
pub fn insert_ordered(
    host: &OrderedPartition,
    a: usize,
    guest: &OrderedPartition,
    map: &InsertionMap,
) -> Result<OrderedPartition> {
    let site = host.blocks().get(a).ok_or(Error::BadIndex { index: a, len: host.len() })?;
    map.check(site, guest.len())?;
    check_disjoint(&host.range(), &guest.range())?;
    let mut blocks: Vec<Block> = Vec::with_capacity(host.len() + guest.len());
    blocks.extend(host.blocks()[..a].iter().cloned());
    blocks.extend(enlarged_guest_blocks(guest.blocks(), map));
    blocks.extend(host.blocks()[a + 1..].iter().cloned());
    Ok(OrderedPartition::from_disjoint(blocks))
}

/// Insertion at the empty block: the disjoint union of the two families.
pub fn trivial_insert(host: &Partition, guest: &Partition) -> Result<Partition> {
    host.disjoint_union(guest)
}

/// Rebuilds a partition from its quotient `pq` by `b` and its restriction
/// `pb` to `b`, using the reinsertion map recorded by [`quotient`]. An empty
/// map means the quotient was trivial, which is undone by disjoint union.
pub fn canonical_reinsert(pq: &Partition, pb: &Partition, b: &Block, map: &InsertionMap) -> Result<Partition> {
    if &pb.range() != b {
        return Err(Error::NotARestriction);
    }
    if map.source().is_empty() {
        return trivial_insert(pq, pb);
    }
    let a = pq.position(map.source()).ok_or_else(|| Error::NotAQuotientShape(map.source().clone()))?;
    insert(pq, a, pb, map)
}

/// Writes `k` as an insertion of `j` into some partition: returns
/// `(host, a, map)` with `insert(host, a, j, map) = k`. The host is the
/// quotient of `k` by `j`, and `a` indexes its ideal block.
pub fn factor_quotient(k: &Partition, j: &Partition) -> Result<(Partition, usize, InsertionMap)> {
    let j_range = j.range();
    if &restrict(k, &j_range).map_err(|_| Error::NotARestriction)? != j {
        return Err(Error::NotARestriction);
    }
    if touched_range(k, &j_range)? == j_range {
        return Err(Error::TrivialQuotient);
    }
    let q = quotient(k, &j_range)?;
    let a = q.partition.position(&q.ideal_part).expect("nontrivial quotient keeps its ideal block");
    Ok((q.partition, a, q.reinsertion))
}
