//! The coproduct on partitions and partition tuples, its reduced part, and
//! brute-force checks of coassociativity and nilpotency.
//!
//! Summation convention: besides the two boundary terms `∅⊗x` and `x⊗∅`,
//! the sum runs over nonempty admissible families that are subpartitions
//! of `x` (every family block sits inside one block) and whose quotient is
//! not the unit. Tuples apply the rule componentwise.

use std::fmt;

use crate::block::Block;
use crate::enumerate::partial_partitions;
use crate::error::Result;
use crate::linear::{Coefficient, LinComb};
use crate::partition::{
    is_admissible, iterated_quotient, restrict, tuple_quotient, Partition, PartitionTuple,
};

/// A pure tensor `t_1 ⊗ … ⊗ t_n` of partition tuples. The unit `∅` is the
/// empty tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor {
    factors: Vec<PartitionTuple>,
}

impl Tensor {
    pub fn new(factors: Vec<PartitionTuple>) -> Self {
        Tensor { factors }
    }

    pub fn pair(left: PartitionTuple, right: PartitionTuple) -> Self {
        Tensor { factors: vec![left, right] }
    }

    pub fn factors(&self) -> &[PartitionTuple] {
        &self.factors
    }

    pub fn left(&self) -> &PartitionTuple {
        &self.factors[0]
    }

    pub fn right(&self) -> &PartitionTuple {
        self.factors.last().expect("tensor has at least one factor")
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Total number of atoms over all factors.
    pub fn atom_count(&self) -> usize {
        self.factors.iter().map(PartitionTuple::atom_count).sum()
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The index set of the coproduct sum: nonempty admissible subpartitions of
/// `p` whose iterated quotient is nonempty, in enumeration order.
pub fn enumerate_admissible_families(p: &Partition) -> Vec<Partition> {
    let range = p.range();
    partial_partitions(&range)
        .into_iter()
        .filter(|f| !f.is_empty() && f.is_subpartition_of(p))
        .filter(|f| is_admissible(p, f).expect("family inside range"))
        .filter(|f| !iterated_quotient(p, f.blocks()).expect("family inside range").is_empty())
        .collect()
}

/// Every family admissible to the tuple, including the empty family: a
/// choice of admissible subpartition of each component.
fn tuple_families(t: &PartitionTuple) -> Vec<Partition> {
    let mut acc: Vec<Vec<Block>> = vec![Vec::new()];
    for part in t.parts() {
        let local: Vec<Partition> = partial_partitions(&part.range())
            .into_iter()
            .filter(|f| f.is_subpartition_of(part))
            .filter(|f| is_admissible(part, f).expect("family inside range"))
            .collect();
        acc = acc
            .iter()
            .flat_map(|prefix| {
                local.iter().map(move |f| {
                    let mut blocks = prefix.clone();
                    blocks.extend(f.blocks().iter().cloned());
                    blocks
                })
            })
            .collect();
    }
    acc.into_iter().map(Partition::from_disjoint).collect()
}

fn restrictions(whole: &Partition, family: &Partition) -> PartitionTuple {
    PartitionTuple::from_disjoint(
        family
            .blocks()
            .iter()
            .map(|j| restrict(whole, j).expect("family inside range"))
            .collect(),
    )
}

/// Coproduct of a single partition.
pub fn coproduct<C: Coefficient>(p: &Partition) -> LinComb<Tensor, C> {
    coproduct_tuple(&PartitionTuple::from(p.clone()))
}

/// Coproduct of a partition tuple. The left factor of each summand is the
/// tuple of restrictions of the merged partition to the family's blocks;
/// the right factor is the componentwise quotient.
pub fn coproduct_tuple<C: Coefficient>(t: &PartitionTuple) -> LinComb<Tensor, C> {
    let mut out = reduced_coproduct_tuple(t);
    out.add_term(Tensor::pair(PartitionTuple::unit(), t.clone()), C::one());
    if !t.is_unit() {
        out.add_term(Tensor::pair(t.clone(), PartitionTuple::unit()), C::one());
    }
    out
}

/// The coproduct minus both boundary terms. Zero on the unit.
pub fn reduced_coproduct_tuple<C: Coefficient>(t: &PartitionTuple) -> LinComb<Tensor, C> {
    let whole = t.merged();
    let mut out = LinComb::zero();
    for family in tuple_families(t) {
        if family.is_empty() {
            continue;
        }
        let right = tuple_quotient(t, &family).expect("family admits to tuple");
        if right.is_unit() {
            continue;
        }
        out.add_term(Tensor::pair(restrictions(&whole, &family), right), C::one());
    }
    out
}

pub fn reduced_coproduct<C: Coefficient>(p: &Partition) -> LinComb<Tensor, C> {
    reduced_coproduct_tuple(&PartitionTuple::from(p.clone()))
}

/// Applies `op` to factor `at` of every term, splicing the two resulting
/// factors in its place.
fn apply_at<C: Coefficient>(
    x: &LinComb<Tensor, C>,
    at: usize,
    op: impl Fn(&PartitionTuple) -> LinComb<Tensor, C>,
) -> LinComb<Tensor, C> {
    let mut out = LinComb::zero();
    for (term, c) in x.iter() {
        for (split, d) in op(&term.factors[at]).iter() {
            let mut factors = Vec::with_capacity(term.degree() + 1);
            factors.extend_from_slice(&term.factors[..at]);
            factors.extend_from_slice(split.factors());
            factors.extend_from_slice(&term.factors[at + 1..]);
            out.add_term(Tensor::new(factors), c.clone() * d.clone());
        }
    }
    out
}

/// Both sides of coassociativity on `p`: `((Δ⊗id)Δ p, (id⊗Δ)Δ p)`.
pub fn coassociativity_sides<C: Coefficient>(p: &Partition) -> (LinComb<Tensor, C>, LinComb<Tensor, C>) {
    coassociativity_sides_tuple(&PartitionTuple::from(p.clone()))
}

pub fn coassociativity_sides_tuple<C: Coefficient>(
    t: &PartitionTuple,
) -> (LinComb<Tensor, C>, LinComb<Tensor, C>) {
    let once: LinComb<Tensor, C> = coproduct_tuple(t);
    let left = apply_at(&once, 0, coproduct_tuple);
    let right = apply_at(&once, 1, coproduct_tuple);
    (left, right)
}

pub fn check_coassociativity(p: &Partition) -> bool {
    let (l, r) = coassociativity_sides::<i64>(p);
    l == r
}

/// The iterated reduced coproduct `Δ'^m p`, each round applied to the
/// leftmost factor.
pub fn iterated_reduced_coproduct<C: Coefficient>(p: &Partition, m: usize) -> LinComb<Tensor, C> {
    let mut x = LinComb::term(Tensor::new(vec![PartitionTuple::from(p.clone())]));
    for _ in 0..m {
        x = apply_at(&x, 0, reduced_coproduct_tuple);
    }
    x
}

/// Smallest `m ≥ 1` with `Δ'^m p = 0`.
///
/// Each round strictly shrinks the leftmost factor, so `m` never exceeds
/// `max(1, |R(p)|)`.
pub fn nilpotency_index(p: &Partition) -> usize {
    let mut x: LinComb<Tensor, i64> = LinComb::term(Tensor::new(vec![PartitionTuple::from(p.clone())]));
    let mut m = 0;
    loop {
        m += 1;
        x = apply_at(&x, 0, reduced_coproduct_tuple);
        if x.is_zero() {
            return m;
        }
        assert!(m <= p.atom_count(), "reduced coproduct failed to shrink its left factor");
    }
}

/// The family `adjust`ed for use by `merge_witness`: the blocks of a left
/// factor produced by the coproduct.
pub fn left_family(t: &PartitionTuple) -> Partition {
    Partition::from_disjoint(t.parts().iter().map(Partition::range).collect())
}

/// Checks a coproduct term's second-order factorization: for the family
/// behind `left` and any family `k` admissible to the right factor,
/// dividing twice equals dividing once by the merged family.
pub fn double_quotient_matches(p: &Partition, left: &PartitionTuple, k: &Partition) -> Result<bool> {
    let j = crate::partition::adjust(p, &left_family(left))?;
    let first = iterated_quotient(p, j.blocks())?;
    let m = crate::partition::merge_witness(p, &j, k)?;
    Ok(iterated_quotient(&first, k.blocks())? == iterated_quotient(p, m.blocks())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Comb = LinComb<Tensor, i64>;

    fn t(parts: &[&[&[u32]]]) -> PartitionTuple {
        PartitionTuple::new(parts.iter().map(|p| Partition::of(p))).unwrap()
    }

    fn pair(l: PartitionTuple, r: PartitionTuple) -> Tensor {
        Tensor::pair(l, r)
    }

    #[test]
    fn admissible_family_examples() {
        let fams = enumerate_admissible_families(&Partition::of(&[&[1], &[2]]));
        assert_eq!(fams, vec![Partition::of(&[&[1]]), Partition::of(&[&[2]])]);
        assert!(enumerate_admissible_families(&Partition::empty()).is_empty());
        let fams = enumerate_admissible_families(&Partition::of(&[&[1, 2]]));
        assert_eq!(fams, vec![Partition::of(&[&[1]]), Partition::of(&[&[2]])]);
    }

    #[test]
    fn coproduct_of_unit() {
        let d: Comb = coproduct(&Partition::empty());
        assert_eq!(d, Comb::term(pair(PartitionTuple::unit(), PartitionTuple::unit())));
    }

    #[test]
    fn coproduct_examples() {
        let u = PartitionTuple::unit;
        for p in [Partition::of(&[&[1], &[2]]), Partition::of(&[&[1, 2]])] {
            let d: Comb = coproduct(&p);
            let pt = PartitionTuple::from(p.clone());
            let expected: Comb = [
                (pair(u(), pt.clone()), 1),
                (pair(pt, u()), 1),
                (pair(t(&[&[&[1]]]), t(&[&[&[2]]])), 1),
                (pair(t(&[&[&[2]]]), t(&[&[&[1]]])), 1),
            ]
            .into_iter()
            .collect();
            assert_eq!(d, expected, "Δ{p}");
        }
    }

    #[test]
    fn tuple_coproduct_examples() {
        let u = PartitionTuple::unit;
        let tt = t(&[&[&[1]], &[&[2]]]);
        let d: Comb = coproduct_tuple(&tt);
        let expected: Comb = [
            (pair(u(), tt.clone()), 1),
            (pair(tt.clone(), u()), 1),
            (pair(t(&[&[&[1]]]), t(&[&[&[2]]])), 1),
            (pair(t(&[&[&[2]]]), t(&[&[&[1]]])), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);

        let unit: Comb = coproduct_tuple(&u());
        assert_eq!(unit, Comb::term(pair(u(), u())));

        let p = Partition::of(&[&[1, 2], &[3]]);
        assert_eq!(coproduct_tuple::<i64>(&PartitionTuple::from(p.clone())), coproduct::<i64>(&p));
    }

    #[test]
    fn reduced_coproduct_examples() {
        let d: Comb = reduced_coproduct(&Partition::of(&[&[1], &[2]]));
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&pair(t(&[&[&[1]]]), t(&[&[&[2]]]))), 1);
        assert!(reduced_coproduct::<i64>(&Partition::of(&[&[1]])).is_zero());
        assert!(reduced_coproduct::<i64>(&Partition::empty()).is_zero());
    }

    #[test]
    fn coassociativity_small() {
        assert!(check_coassociativity(&Partition::empty()));
        let p = Partition::of(&[&[1], &[2]]);
        let (l, r) = coassociativity_sides::<i64>(&p);
        assert_eq!(l.len(), 9);
        assert_eq!(l, r);
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_index(&Partition::of(&[&[1]])), 1);
        assert_eq!(nilpotency_index(&Partition::of(&[&[1], &[2]])), 2);
        assert_eq!(nilpotency_index(&Partition::empty()), 1);
        assert!(iterated_reduced_coproduct::<i64>(&Partition::of(&[&[1], &[2]]), 2).is_zero());
    }
}
