//! Randomized invariants on partial partitions of up to eight atoms.

use num_bigint::BigInt;
use partcalc::coalgebra::{check_coassociativity, coproduct, nilpotency_index};
use partcalc::enumerate::insertion_maps;
use partcalc::laws;
use partcalc::lie::{bracket, compose};
use partcalc::partition::{adjust, insert, is_admissible, quotient, restrict};
use partcalc::{Atom, Block, Partition, Rational};
use proptest::prelude::*;

/// Atom `i` goes to block `labels[i]`, or nowhere when the label is `n`.
fn partial(max: usize, offset: u32) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(move |n| prop::collection::vec(0..=n, n)).prop_map(move |labels| {
        let n = labels.len();
        let mut blocks = vec![Vec::new(); n];
        for (i, &l) in labels.iter().enumerate() {
            if l < n {
                blocks[l].push(Atom(i as u32 + offset));
            }
        }
        Partition::new(blocks.into_iter().filter(|b| !b.is_empty()).map(Block::new)).unwrap()
    })
}

fn nonempty(max: usize, offset: u32) -> impl Strategy<Value = Partition> {
    partial(max, offset).prop_filter("nonempty", |p| !p.is_empty())
}

/// A partition with two disjoint subsets of its range, chosen by a mask
/// in base three.
fn with_pair(max: usize) -> impl Strategy<Value = (Partition, Block, Block)> {
    (partial(max, 0), any::<u32>()).prop_map(|(p, mut mask)| {
        let (mut b, mut c) = (Block::empty(), Block::empty());
        for a in p.range().iter() {
            match mask % 3 {
                1 => b.insert(a),
                2 => c.insert(a),
                _ => {}
            }
            mask /= 3;
        }
        (p, b, c)
    })
}

fn family_of(p: &Partition, picks: &[usize]) -> Partition {
    let range = p.range();
    let n = range.len().max(1);
    let mut blocks = vec![Vec::new(); n + 1];
    for (a, &k) in range.iter().zip(picks) {
        blocks[k % (n + 1)].push(a);
    }
    blocks.truncate(n);
    Partition::new(blocks.into_iter().filter(|b| !b.is_empty()).map(Block::new)).unwrap()
}

fn to_rational(c: &i64) -> Rational {
    Rational::from_integer(BigInt::from(*c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_block_order(p in partial(8, 0)) {
        let mut blocks = p.blocks().to_vec();
        blocks.reverse();
        prop_assert_eq!(Partition::new(blocks).unwrap(), p);
    }

    #[test]
    fn quotient_identities((p, b, c) in with_pair(8)) {
        prop_assert_eq!(laws::quotient_laws(&p, &b, &c), vec![]);
        prop_assert_eq!(laws::reinsertion_round_trip(&p, &b), vec![]);
    }

    #[test]
    fn quotient_result_is_disjoint_from_divisor((p, b, _c) in with_pair(8)) {
        let r = quotient(&p, &b).unwrap();
        prop_assert!(r.partition.range().is_disjoint(&b));
        prop_assert_eq!(restrict(&p, &p.range()).unwrap(), p);
    }

    #[test]
    fn insertion_is_undone((p, q, picks) in (nonempty(4, 0), nonempty(3, 20), prop::collection::vec(0usize..8, 4))) {
        let a = picks[0] % p.len();
        let maps: Vec<_> = insertion_maps(&p.blocks()[a], q.len()).collect();
        let map = &maps[picks[1] % maps.len()];
        prop_assert_eq!(laws::insertion_duality(&p, a, &q, map), vec![]);
        let k = insert(&p, a, &q, map).unwrap();
        prop_assert_eq!(k.atom_count(), p.atom_count() + q.atom_count());
    }

    #[test]
    fn adjustment_identities((p, picks) in (partial(6, 0), prop::collection::vec(0usize..8, 8))) {
        let f = family_of(&p, &picks);
        prop_assert_eq!(laws::adjustment_laws(&p, &f), vec![]);
        prop_assert!(is_admissible(&p, &adjust(&p, &f).unwrap()).unwrap());
    }

    #[test]
    fn merge_witness_identities((p, pj, pk) in (partial(6, 0), prop::collection::vec(0usize..8, 8), prop::collection::vec(0usize..8, 8))) {
        let j = adjust(&p, &family_of(&p, &pj)).unwrap();
        let first = partcalc::partition::iterated_quotient(&p, j.blocks()).unwrap();
        let k = adjust(&first, &family_of(&first, &pk)).unwrap();
        prop_assert_eq!(laws::merge_witness_laws(&p, &j, &k), vec![]);
    }

    #[test]
    fn lie_identities((p, q, s) in (nonempty(3, 0), nonempty(2, 10), nonempty(2, 20))) {
        prop_assert_eq!(laws::prelie_laws(&p, &q, &s), vec![]);
        prop_assert_eq!(laws::jacobi_laws(&p, &q, &s), vec![]);
    }

    #[test]
    fn coefficients_are_interchangeable((p, q) in (nonempty(4, 0), nonempty(3, 10))) {
        let small = compose::<i64>(&p, &q).unwrap().map_coeffs(to_rational);
        prop_assert_eq!(small, compose::<Rational>(&p, &q).unwrap());
        let small = bracket::<i64>(&p, &q).unwrap().map_coeffs(to_rational);
        prop_assert_eq!(small, bracket::<Rational>(&p, &q).unwrap());
        let small = coproduct::<i64>(&p).map_coeffs(to_rational);
        prop_assert_eq!(small, coproduct::<Rational>(&p));
    }

    #[test]
    fn combinations_store_no_zeros((p, q) in (nonempty(3, 0), nonempty(3, 0))) {
        let q = q.relabel(|a| Atom(a.0 + 10));
        let comb = bracket::<i64>(&p, &q).unwrap();
        prop_assert!(comb.iter().all(|(_, c)| *c != 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coproduct_is_coassociative(p in partial(5, 0)) {
        prop_assert!(check_coassociativity(&p));
    }

    #[test]
    fn coproduct_witnesses(p in partial(5, 0)) {
        prop_assert_eq!(laws::coproduct_witness_laws(&p), vec![]);
    }

    #[test]
    fn reduced_coproduct_is_nilpotent_at_range_size(p in partial(5, 0)) {
        prop_assert_eq!(nilpotency_index(&p), p.atom_count().max(1));
    }
}
