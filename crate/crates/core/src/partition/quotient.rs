use crate::block::Block;
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

use super::{InsertionMap, Partition};

fn require_in_range(p: &Partition, b: &Block) -> Result<Block> {
    let range = p.range();
    let missing = b.difference(&range);
    if missing.is_empty() {
        Ok(range)
    } else {
        Err(Error::AtomNotInRange(missing))
    }
}

/// Nonempty traces of the blocks of `p` on `b`.
pub fn restrict(p: &Partition, b: &Block) -> Result<Partition> {
    require_in_range(p, b)?;
    Ok(Partition::from_disjoint(p.blocks().iter().map(|i| i.intersection(b)).collect()))
}

/// Union of the blocks of `p` that meet `b`.
pub fn touched_range(p: &Partition, b: &Block) -> Result<Block> {
    require_in_range(p, b)?;
    Ok(touched(p, b))
}

pub(crate) fn touched(p: &Partition, b: &Block) -> Block {
    p.blocks()
        .iter()
        .filter(|i| i.meets(b))
        .fold(Block::empty(), |acc, i| acc.union(i))
}

/// Outcome of dividing a partition by its restriction to a set `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub partition: Partition,
    /// The merged remainder `R_B \ B`; empty for a trivial quotient.
    pub ideal_part: Block,
    pub trivial: bool,
    /// Sends each atom of the ideal block to the index (in the canonical
    /// restriction to `B`) of the block it shared an original block with.
    /// This is the data needed to undo the quotient by insertion.
    pub reinsertion: InsertionMap,
}

/// Divides `p` by its restriction to `b`: blocks missing `b` are kept and
/// the touched blocks collapse into the single block `R_B \ B` (dropped when
/// empty).
pub fn quotient(p: &Partition, b: &Block) -> Result<QuotientResult> {
    require_in_range(p, b)?;
    let mut kept = Vec::with_capacity(p.len());
    let mut ideal = Block::empty();
    let mut touched_blocks = Vec::new();
    for block in p.blocks() {
        if block.meets(b) {
            ideal = ideal.union(&block.difference(b));
            touched_blocks.push(block);
        } else {
            kept.push(block.clone());
        }
    }
    let restriction = Partition::from_disjoint(touched_blocks.iter().map(|i| i.intersection(b)).collect());
    let targets = ideal
        .iter()
        .map(|x| {
            let origin = touched_blocks.iter().find(|i| i.contains(x)).expect("ideal atom comes from a touched block");
            restriction.position(&origin.intersection(b)).expect("trace is a restriction block")
        })
        .collect();
    let reinsertion = InsertionMap::new(ideal.clone(), targets);
    let trivial = ideal.is_empty();
    if !trivial {
        kept.push(ideal.clone());
    }
    Ok(QuotientResult {
        partition: Partition::from_disjoint(kept),
        ideal_part: ideal,
        trivial,
        reinsertion,
    })
}

/// Divides `p` by a partition `divisor`, which must be the restriction of
/// `p` to its own range.
pub fn quotient_by(p: &Partition, divisor: &Partition) -> Result<QuotientResult> {
    let b = divisor.range();
    if &restrict(p, &b)? != divisor {
        return Err(Error::NotARestriction);
    }
    quotient(p, &b)
}

/// Left fold of [`quotient`] over `family`: step `k` divides the current
/// partition by its restriction to the `k`-th block.
pub fn iterated_quotient(p: &Partition, family: &[Block]) -> Result<Partition> {
    let mut current = p.clone();
    for j in family {
        current = quotient(&current, j)?.partition;
    }
    Ok(current)
}

/// Whether `family` admits to `p`: the touched ranges of its blocks are
/// pairwise disjoint.
pub fn is_admissible(p: &Partition, family: &Partition) -> Result<bool> {
    require_in_range(p, &family.range())?;
    let ranges: Vec<Block> = family.blocks().iter().map(|j| touched(p, j)).collect();
    Ok(pairwise_disjoint(&ranges))
}

pub(crate) fn pairwise_disjoint(blocks: &[Block]) -> bool {
    blocks
        .iter()
        .enumerate()
        .all(|(i, a)| blocks[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

/// Coarsens `family` by merging blocks along the transitive closure of
/// "touched ranges intersect". The result is admissible to `p`, covers the
/// same atoms, and has the same iterated quotient.
pub fn adjust(p: &Partition, family: &Partition) -> Result<Partition> {
    require_in_range(p, &family.range())?;
    let blocks = family.blocks();
    let ranges: Vec<Block> = blocks.iter().map(|j| touched(p, j)).collect();
    let mut uf = UnionFind::new(blocks.len());
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if ranges[i].meets(&ranges[j]) {
                uf.union(i, j);
            }
        }
    }
    Ok(Partition::from_disjoint(
        uf.groups()
            .into_iter()
            .map(|g| g.into_iter().fold(Block::empty(), |acc, i| acc.union(&blocks[i])))
            .collect(),
    ))
}

/// Given `j` admissible to `p` and `k` admissible to `p / (j)`, builds the
/// single family `m` admissible to `p` with `p / (m) = (p / (j)) / (k)`.
///
/// Block `m_k` collects the traces on `K` of the untouched blocks meeting
/// `k_k`, together with `R_{j_j} ∩ (J ∪ K)` for every `j_j` whose touched
/// range meets `k_k`. Each `j_j` whose touched range misses `K` is kept as a
/// block of its own.
pub fn merge_witness(p: &Partition, j: &Partition, k: &Partition) -> Result<Partition> {
    if !is_admissible(p, j)? {
        return Err(Error::NotAdmissible(format!("{j} does not admit to {p}")));
    }
    let first = iterated_quotient(p, j.blocks())?;
    if !is_admissible(&first, k).map_err(|_| Error::NotAdmissible(format!("{k} is not inside {first}")))? {
        return Err(Error::NotAdmissible(format!("{k} does not admit to {first}")));
    }
    let j_range = j.range();
    let k_range = k.range();
    let jk = j_range.union(&k_range);
    let j_touched: Vec<Block> = j.blocks().iter().map(|b| touched(p, b)).collect();
    let mut m: Vec<Block> = k
        .blocks()
        .iter()
        .map(|kk| {
            let mut block = p
                .blocks()
                .iter()
                .filter(|i| i.is_disjoint(&j_range) && i.meets(kk))
                .fold(Block::empty(), |acc, i| acc.union(&i.intersection(&k_range)));
            for r in j_touched.iter().filter(|r| r.meets(kk)) {
                block = block.union(&r.intersection(&jk));
            }
            block
        })
        .collect();
    m.extend(
        j.blocks()
            .iter()
            .zip(&j_touched)
            .filter(|(_, r)| r.is_disjoint(&k_range))
            .map(|(jj, _)| jj.clone()),
    );
    Ok(Partition::from_disjoint(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Partition {
        Partition::of(&[&[1, 2], &[3, 4], &[5, 6]])
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&p3(), &Block::of(&[2, 3])).unwrap(), Partition::of(&[&[2], &[3]]));
        let p = Partition::of(&[&[1, 2], &[3, 4]]);
        assert_eq!(restrict(&p, &Block::empty()).unwrap(), Partition::empty());
        assert_eq!(restrict(&p, &Block::of(&[1, 2])).unwrap(), Partition::of(&[&[1, 2]]));
        assert_eq!(restrict(&p, &Block::of(&[1, 7])), Err(Error::AtomNotInRange(Block::of(&[7]))));
    }

    #[test]
    fn touched_range_examples() {
        assert_eq!(touched_range(&p3(), &Block::of(&[2, 3])).unwrap(), Block::of(&[1, 2, 3, 4]));
        assert_eq!(touched_range(&Partition::of(&[&[1, 2]]), &Block::of(&[1, 2])).unwrap(), Block::of(&[1, 2]));
        assert_eq!(touched_range(&Partition::of(&[&[1, 2], &[3, 4]]), &Block::empty()).unwrap(), Block::empty());
        assert!(touched_range(&p3(), &Block::of(&[9])).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(&p3(), &Block::of(&[2, 3])).unwrap();
        assert_eq!(q.partition, Partition::of(&[&[5, 6], &[1, 4]]));
        assert_eq!(q.ideal_part, Block::of(&[1, 4]));
        assert!(!q.trivial);
        // 1 shared a block with 2 (index 0 of {{2},{3}}), 4 with 3.
        assert_eq!(q.reinsertion.targets(), &[0, 1]);

        let q = quotient(&p3(), &Block::of(&[3, 4])).unwrap();
        assert_eq!(q.partition, Partition::of(&[&[1, 2], &[5, 6]]));
        assert!(q.trivial);
        assert!(q.ideal_part.is_empty());

        let q = quotient(&Partition::of(&[&[1, 2]]), &Block::empty()).unwrap();
        assert_eq!(q.partition, Partition::of(&[&[1, 2]]));
        assert!(q.trivial);

        assert!(matches!(quotient(&p3(), &Block::of(&[0])), Err(Error::AtomNotInRange(_))));
    }

    #[test]
    fn quotient_by_requires_a_restriction() {
        let p = p3();
        assert!(quotient_by(&p, &Partition::of(&[&[2], &[3]])).is_ok());
        assert_eq!(quotient_by(&p, &Partition::of(&[&[2, 3]])), Err(Error::NotARestriction));
    }

    #[test]
    fn iterated_quotient_examples() {
        let p = Partition::of(&[&[1, 2], &[3, 4], &[5]]);
        assert_eq!(iterated_quotient(&p, &[Block::of(&[2, 3])]).unwrap(), Partition::of(&[&[5], &[1, 4]]));
        assert_eq!(
            iterated_quotient(&p, &[Block::of(&[2, 3]), Block::of(&[1])]).unwrap(),
            Partition::of(&[&[5], &[4]])
        );
        assert_eq!(iterated_quotient(&p, &[]).unwrap(), p);
    }

    #[test]
    fn admissibility_examples() {
        let singles = Partition::of(&[&[1], &[2]]);
        assert!(is_admissible(&singles, &singles).unwrap());
        assert!(!is_admissible(&Partition::of(&[&[1, 2], &[3, 4]]), &singles).unwrap());
        let p = Partition::of(&[&[1, 2]]);
        assert!(is_admissible(&p, &p).unwrap());
    }

    #[test]
    fn adjust_examples() {
        let singles = Partition::of(&[&[1], &[2]]);
        assert_eq!(adjust(&Partition::of(&[&[1, 2], &[3, 4]]), &singles).unwrap(), Partition::of(&[&[1, 2]]));
        assert_eq!(adjust(&singles, &singles).unwrap(), singles);
        let f = Partition::of(&[&[1], &[4], &[5]]);
        assert_eq!(adjust(&p3(), &f).unwrap(), f);
    }

    #[test]
    fn adjust_merges_transitively() {
        // {1} and {4} only meet through {2,3}.
        let p = Partition::of(&[&[1, 2], &[3, 4]]);
        let f = Partition::of(&[&[1], &[2, 3], &[4]]);
        assert_eq!(adjust(&p, &f).unwrap(), Partition::of(&[&[1, 2, 3, 4]]));
    }

    #[test]
    fn merge_witness_examples() {
        let p = Partition::of(&[&[1, 2], &[3, 4], &[5]]);
        let m = merge_witness(&p, &Partition::of(&[&[2, 3]]), &Partition::of(&[&[1]])).unwrap();
        assert_eq!(m, Partition::of(&[&[1, 2, 3]]));
        assert_eq!(iterated_quotient(&p, m.blocks()).unwrap(), Partition::of(&[&[5], &[4]]));

        let singles = Partition::of(&[&[1], &[2]]);
        let m = merge_witness(&singles, &Partition::of(&[&[1]]), &Partition::of(&[&[2]])).unwrap();
        assert_eq!(m, Partition::of(&[&[1], &[2]]));
        assert!(iterated_quotient(&singles, m.blocks()).unwrap().is_empty());

        let j = Partition::of(&[&[2, 3]]);
        assert_eq!(merge_witness(&p, &j, &Partition::empty()).unwrap(), j);
    }

    #[test]
    fn merge_witness_rejects_inadmissible_input() {
        let p = Partition::of(&[&[1, 2], &[3, 4]]);
        let err = merge_witness(&p, &Partition::of(&[&[1], &[2]]), &Partition::empty()).unwrap_err();
        assert_eq!(err.kind(), "NotAdmissible");
    }
}
