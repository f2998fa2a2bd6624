//! Insertion composition and its commutator bracket.
//!
//! `p ∘ q` sums the insertion of `q` into every block of `p` along every
//! map from that block onto the blocks of `q`. The associator of `∘` is the
//! part of `(p ∘ q) ∘ s` where `s` lands in a block of `p` (see [`i_part`]),
//! which is symmetric in `q` and `s`; the commutator therefore satisfies
//! Jacobi. The signed variant works on stored block order with sign
//! `(-1)^a` for the 1-based host index `a`.

use crate::block::Block;
use crate::enumerate::insertion_maps;
use crate::error::{Error, Result};
use crate::linear::{Coefficient, LinComb};
use crate::partition::{insert, insert_ordered, InsertionMap, OrderedPartition, Partition};

/// One summand of `p ∘_a q`: the resulting partition together with the host
/// block index and map that produced it. Equality looks at the partition
/// only.
#[derive(Clone, Debug)]
pub struct CompositionTerm {
    pub partition: Partition,
    pub site: usize,
    pub map: InsertionMap,
}

impl PartialEq for CompositionTerm {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition
    }
}

impl Eq for CompositionTerm {}

fn check_disjoint(a: &Block, b: &Block) -> Result<()> {
    let shared = a.intersection(b);
    if shared.is_empty() {
        Ok(())
    } else {
        Err(Error::RangesNotDisjoint(shared))
    }
}

fn check_pairwise(parts: &[&Block]) -> Result<()> {
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            check_disjoint(a, b)?;
        }
    }
    Ok(())
}

fn site(blocks: &[Block], a: usize) -> Result<&Block> {
    blocks.get(a).ok_or(Error::BadIndex { index: a, len: blocks.len() })
}

/// All maps from block `a` of `p` onto the blocks of `q`, lexicographic.
pub fn enumerate_insertions(p: &Partition, a: usize, q: &Partition) -> Result<Vec<InsertionMap>> {
    check_disjoint(&p.range(), &q.range())?;
    if q.is_empty() {
        return Err(Error::EmptyGuest);
    }
    let host = site(p.blocks(), a)?;
    Ok(insertion_maps(host, q.len()).collect())
}

/// The summands of `p ∘_a q`, one per insertion map.
pub fn composition_terms(p: &Partition, a: usize, q: &Partition) -> Result<Vec<CompositionTerm>> {
    enumerate_insertions(p, a, q)?
        .into_iter()
        .map(|map| {
            let partition = insert(p, a, q, &map)?;
            Ok(CompositionTerm { partition, site: a, map })
        })
        .collect()
}

/// `p ∘_a q`: the insertions of `q` into block `a` of `p` over all maps.
pub fn compose_at<C: Coefficient>(p: &Partition, a: usize, q: &Partition) -> Result<LinComb<Partition, C>> {
    Ok(composition_terms(p, a, q)?.into_iter().map(|t| (t.partition, C::one())).collect())
}

fn check_operands(p: &Block, q: &Block, p_empty: bool, q_empty: bool) -> Result<()> {
    check_disjoint(p, q)?;
    if p_empty || q_empty {
        return Err(Error::EmptyOperand);
    }
    Ok(())
}

/// `p ∘ q = Σ_a p ∘_a q`.
pub fn compose<C: Coefficient>(p: &Partition, q: &Partition) -> Result<LinComb<Partition, C>> {
    check_operands(&p.range(), &q.range(), p.is_empty(), q.is_empty())?;
    let mut out = LinComb::zero();
    for a in 0..p.len() {
        out += &compose_at(p, a, q)?;
    }
    Ok(out)
}

/// Bilinear extension of [`compose`].
pub fn compose_lin<C: Coefficient>(
    x: &LinComb<Partition, C>,
    y: &LinComb<Partition, C>,
) -> Result<LinComb<Partition, C>> {
    let mut out = LinComb::zero();
    for (p, cp) in x.iter() {
        for (q, cq) in y.iter() {
            out.add_scaled(&compose(p, q)?, &(cp.clone() * cq.clone()));
        }
    }
    Ok(out)
}

/// `[p, q] = p ∘ q − q ∘ p`.
pub fn bracket<C: Coefficient>(p: &Partition, q: &Partition) -> Result<LinComb<Partition, C>> {
    Ok(&compose(p, q)? - &compose(q, p)?)
}

/// Bilinear extension of [`bracket`].
pub fn bracket_lin<C: Coefficient>(
    x: &LinComb<Partition, C>,
    y: &LinComb<Partition, C>,
) -> Result<LinComb<Partition, C>> {
    Ok(&compose_lin(x, y)? - &compose_lin(y, x)?)
}

/// The part of `(p ∘ q) ∘ s` where `s` is inserted into a block of `p`
/// other than the one that received `q`.
pub fn i_part<C: Coefficient>(p: &Partition, q: &Partition, s: &Partition) -> Result<LinComb<Partition, C>> {
    check_pairwise(&[&p.range(), &q.range(), &s.range()])?;
    let mut out = LinComb::zero();
    for a in 0..p.len() {
        let inner = composition_terms(p, a, q)?;
        for b in (0..p.len()).filter(|&b| b != a) {
            let target = &p.blocks()[b];
            for t in &inner {
                let pos = t.partition.position(target).expect("untouched host block survives");
                for map in insertion_maps(target, s.len()) {
                    out.add_term(insert(&t.partition, pos, s, &map)?, C::one());
                }
            }
        }
    }
    Ok(out)
}

/// `[p, [q, s]] + [q, [s, p]] + [s, [p, q]]`.
pub fn jacobi_defect<C: Coefficient>(p: &Partition, q: &Partition, s: &Partition) -> Result<LinComb<Partition, C>> {
    check_pairwise(&[&p.range(), &q.range(), &s.range()])?;
    let (p, q, s) = (LinComb::term(p.clone()), LinComb::term(q.clone()), LinComb::term(s.clone()));
    let mut out = bracket_lin(&p, &bracket_lin(&q, &s)?)?;
    out += &bracket_lin(&q, &bracket_lin(&s, &p)?)?;
    out += &bracket_lin(&s, &bracket_lin(&p, &q)?)?;
    Ok(out)
}

/// Both sides of `(p ∘ q) ∘ s = p ∘ (q ∘ s) + i_part(p, q, s)`.
pub fn prelie_sides<C: Coefficient>(
    p: &Partition,
    q: &Partition,
    s: &Partition,
) -> Result<(LinComb<Partition, C>, LinComb<Partition, C>)> {
    check_pairwise(&[&p.range(), &q.range(), &s.range()])?;
    let sc = LinComb::term(s.clone());
    let pc = LinComb::term(p.clone());
    let lhs = compose_lin(&compose(p, q)?, &sc)?;
    let mut rhs = compose_lin(&pc, &compose(q, s)?)?;
    rhs += &i_part(p, q, s)?;
    Ok((lhs, rhs))
}

pub fn prelie_decomposition_check(p: &Partition, q: &Partition, s: &Partition) -> Result<bool> {
    let (lhs, rhs) = prelie_sides::<i64>(p, q, s)?;
    Ok(lhs == rhs)
}

/// Inserting `q` at block `a` (by `iota`) and `s` at block `b` (by `mu`)
/// gives the same partition in either order, for `a ≠ b`.
pub fn insertions_commute(
    p: &Partition,
    a: usize,
    q: &Partition,
    iota: &InsertionMap,
    b: usize,
    s: &Partition,
    mu: &InsertionMap,
) -> Result<bool> {
    check_pairwise(&[&p.range(), &q.range(), &s.range()])?;
    if a == b {
        return Err(Error::BadIndex { index: b, len: p.len() });
    }
    let (ia, ib) = (site(p.blocks(), a)?, site(p.blocks(), b)?);
    let first_q = insert(p, a, q, iota)?;
    let lhs = insert(&first_q, first_q.position(ib).expect("untouched block survives"), s, mu)?;
    let first_s = insert(p, b, s, mu)?;
    let rhs = insert(&first_s, first_s.position(ia).expect("untouched block survives"), q, iota)?;
    Ok(lhs == rhs)
}

fn sign<C: Coefficient>(a: usize) -> C {
    // 1-based host index: position 0 carries (-1)^1.
    if a.is_multiple_of(2) {
        -C::one()
    } else {
        C::one()
    }
}

/// `Σ_a (-1)^a p ∘_a q` on stored order, the guest blocks taking the place
/// of the host block.
pub fn compose_signed<C: Coefficient>(
    p: &OrderedPartition,
    q: &OrderedPartition,
) -> Result<LinComb<OrderedPartition, C>> {
    check_operands(&p.range(), &q.range(), p.is_empty(), q.is_empty())?;
    let mut out = LinComb::zero();
    for (a, host) in p.blocks().iter().enumerate() {
        let c = sign::<C>(a);
        for map in insertion_maps(host, q.len()) {
            out.add_term(insert_ordered(p, a, q, &map)?, c.clone());
        }
    }
    Ok(out)
}

pub fn compose_signed_lin<C: Coefficient>(
    x: &LinComb<OrderedPartition, C>,
    y: &LinComb<OrderedPartition, C>,
) -> Result<LinComb<OrderedPartition, C>> {
    let mut out = LinComb::zero();
    for (p, cp) in x.iter() {
        for (q, cq) in y.iter() {
            out.add_scaled(&compose_signed(p, q)?, &(cp.clone() * cq.clone()));
        }
    }
    Ok(out)
}

pub fn bracket_signed_lin<C: Coefficient>(
    x: &LinComb<OrderedPartition, C>,
    y: &LinComb<OrderedPartition, C>,
) -> Result<LinComb<OrderedPartition, C>> {
    Ok(&compose_signed_lin(x, y)? - &compose_signed_lin(y, x)?)
}

/// Jacobi sum for the signed bracket.
pub fn signed_jacobi_defect<C: Coefficient>(
    p: &OrderedPartition,
    q: &OrderedPartition,
    s: &OrderedPartition,
) -> Result<LinComb<OrderedPartition, C>> {
    check_pairwise(&[&p.range(), &q.range(), &s.range()])?;
    let (p, q, s) = (LinComb::term(p.clone()), LinComb::term(q.clone()), LinComb::term(s.clone()));
    let mut out = bracket_signed_lin(&p, &bracket_signed_lin(&q, &s)?)?;
    out += &bracket_signed_lin(&q, &bracket_signed_lin(&s, &p)?)?;
    out += &bracket_signed_lin(&s, &bracket_signed_lin(&p, &q)?)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Atom;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn pp(blocks: &[&[u32]]) -> Partition {
        Partition::of(blocks)
    }

    fn comb(terms: &[(&[&[u32]], i64)]) -> LinComb<Partition, i64> {
        terms.iter().map(|&(b, c)| (pp(b), c)).collect()
    }

    #[test]
    fn insertion_counts() {
        let p = pp(&[&[1, 2], &[3]]);
        assert_eq!(enumerate_insertions(&p, 0, &pp(&[&[4], &[5]])).unwrap().len(), 4);
        assert_eq!(enumerate_insertions(&p, 1, &pp(&[&[4], &[5], &[6]])).unwrap().len(), 3);
        assert_eq!(enumerate_insertions(&p, 0, &Partition::empty()).unwrap_err(), Error::EmptyGuest);
        assert_eq!(
            enumerate_insertions(&p, 0, &pp(&[&[3]])).unwrap_err(),
            Error::RangesNotDisjoint(Block::of(&[3]))
        );
        let maps = enumerate_insertions(&p, 0, &pp(&[&[4], &[5]])).unwrap();
        let targets: Vec<_> = maps.iter().map(|m| m.targets().to_vec()).collect();
        assert_eq!(targets, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn compose_at_examples() {
        let got = compose_at::<i64>(&pp(&[&[1, 2], &[3]]), 0, &pp(&[&[4], &[5]])).unwrap();
        let want = comb(&[
            (&[&[1, 4], &[2, 5], &[3]], 1),
            (&[&[1, 5], &[2, 4], &[3]], 1),
            (&[&[1, 2, 4], &[5], &[3]], 1),
            (&[&[1, 2, 5], &[4], &[3]], 1),
        ]);
        assert_eq!(got, want);
        let got = compose_at::<i64>(&pp(&[&[3]]), 0, &pp(&[&[4], &[5]])).unwrap();
        assert_eq!(got, comb(&[(&[&[3, 4], &[5]], 1), (&[&[3, 5], &[4]], 1)]));
        assert_eq!(compose_at::<i64>(&pp(&[&[1]]), 0, &pp(&[&[2]])).unwrap(), comb(&[(&[&[1, 2]], 1)]));
    }

    #[test]
    fn compose_examples() {
        let got = compose::<i64>(&pp(&[&[1, 2], &[3]]), &pp(&[&[4], &[5]])).unwrap();
        assert_eq!(got.len(), 6);
        assert!(got.iter().all(|(_, c)| *c == 1));
        assert_eq!(got.coeff(&pp(&[&[1, 2], &[3, 4], &[5]])), 1);
        let got = compose::<i64>(&pp(&[&[1, 2], &[3]]), &pp(&[&[4], &[5], &[6]])).unwrap();
        assert_eq!(got.mass(), 12);
        assert_eq!(
            compose::<i64>(&pp(&[&[1]]), &Partition::empty()).unwrap_err(),
            Error::EmptyOperand
        );
    }

    #[test]
    fn signed_examples() {
        let p = OrderedPartition::of(&[&[1], &[2]]);
        let got = compose_signed::<i64>(&p, &OrderedPartition::of(&[&[3]])).unwrap();
        let want: LinComb<OrderedPartition, i64> = [
            (OrderedPartition::of(&[&[1, 3], &[2]]), -1),
            (OrderedPartition::of(&[&[1], &[2, 3]]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);

        let got = compose_signed::<i64>(&OrderedPartition::of(&[&[1]]), &OrderedPartition::of(&[&[2]])).unwrap();
        assert_eq!(got.coeff(&OrderedPartition::of(&[&[1, 2]])), -1);

        let swapped = OrderedPartition::of(&[&[2], &[1]]);
        let got = compose_signed::<i64>(&swapped, &OrderedPartition::of(&[&[3]])).unwrap();
        assert_eq!(got.coeff(&OrderedPartition::of(&[&[2, 3], &[1]])), -1);
        assert_eq!(got.coeff(&OrderedPartition::of(&[&[2], &[1, 3]])), 1);
    }

    #[test]
    fn i_part_examples() {
        assert!(i_part::<i64>(&pp(&[&[1]]), &pp(&[&[2]]), &pp(&[&[3]])).unwrap().is_zero());
        let (p, q, s) = (pp(&[&[1], &[2]]), pp(&[&[3]]), pp(&[&[4]]));
        let got = i_part::<i64>(&p, &q, &s).unwrap();
        assert_eq!(got, comb(&[(&[&[1, 3], &[2, 4]], 1), (&[&[1, 4], &[2, 3]], 1)]));
        assert_eq!(got, i_part::<i64>(&p, &s, &q).unwrap());
    }

    #[test]
    fn bracket_examples() {
        assert!(bracket::<i64>(&pp(&[&[1]]), &pp(&[&[2]])).unwrap().is_zero());
        let (p, q) = (pp(&[&[1, 2]]), pp(&[&[3]]));
        assert!(bracket::<i64>(&p, &q).unwrap().is_zero());
        let (p, q) = (pp(&[&[1, 2]]), pp(&[&[3], &[4]]));
        let pq = bracket::<i64>(&p, &q).unwrap();
        assert_eq!(pq, comb(&[(&[&[1, 3], &[2, 4]], 1), (&[&[1, 4], &[2, 3]], 1)]));
        assert_eq!(pq, -&bracket::<i64>(&q, &p).unwrap());
    }

    #[test]
    fn jacobi_examples() {
        let one = |a: u32| pp(&[&[a]]);
        assert!(jacobi_defect::<Q>(&one(1), &one(2), &one(3)).unwrap().is_zero());
        assert!(jacobi_defect::<Q>(&pp(&[&[1, 2]]), &one(3), &one(4)).unwrap().is_zero());
        assert!(jacobi_defect::<Q>(&pp(&[&[1], &[2]]), &pp(&[&[3, 4]]), &pp(&[&[5], &[6]])).unwrap().is_zero());
        assert_eq!(
            jacobi_defect::<Q>(&one(1), &one(1), &one(3)).unwrap_err().kind(),
            "RangesNotDisjoint"
        );
    }

    #[test]
    fn prelie_examples() {
        let one = |a: u32| pp(&[&[a]]);
        assert!(prelie_decomposition_check(&one(1), &one(2), &one(3)).unwrap());
        assert!(prelie_decomposition_check(&pp(&[&[1], &[2]]), &one(3), &one(4)).unwrap());
        assert!(prelie_decomposition_check(&pp(&[&[1, 2]]), &pp(&[&[3], &[4]]), &one(5)).unwrap());
    }

    #[test]
    fn commutation_example() {
        let p = pp(&[&[1, 2], &[3]]);
        let (q, s) = (pp(&[&[4], &[5]]), pp(&[&[6]]));
        let iota = InsertionMap::from_pairs([(Atom(1), 1), (Atom(2), 0)]);
        let mu = InsertionMap::from_pairs([(Atom(3), 0)]);
        assert!(insertions_commute(&p, 0, &q, &iota, 1, &s, &mu).unwrap());
    }
}
