//! Deterministic exhaustive enumerations used by the coproduct, the
//! composition sums and the identity sweeps.

use crate::atom::Atom;
use crate::block::Block;
use crate::graphs::{AdmissibleGraph, Graph, GraphKind, StructureMap};
use crate::partition::{InsertionMap, Partition};

/// All set partitions of `atoms` (each covering all of them), in
/// restricted-growth-string order. One partition (the empty one) for no
/// atoms.
pub fn set_partitions(atoms: &[Atom]) -> Vec<Partition> {
    let n = atoms.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &label) in rgs.iter().enumerate() {
            blocks[label].push(atoms[i]);
        }
        out.push(Partition::from_disjoint(blocks.into_iter().map(Block::new).collect()));
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().max().copied().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// All subsets of `block`, ordered by bitmask over its sorted atoms.
pub fn subsets(block: &Block) -> Vec<Block> {
    let atoms = block.atoms();
    assert!(atoms.len() < 32, "subset enumeration limited to 31 atoms");
    (0u32..1 << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect()
        })
        .collect()
}

/// Every partial partition whose range lies inside `block`: a choice of
/// subset followed by a set partition of it.
pub fn partial_partitions(block: &Block) -> Vec<Partition> {
    subsets(block).iter().flat_map(|s| set_partitions(s.atoms())).collect()
}

/// Partial partitions of the atoms `0..n`.
pub fn partial_partitions_upto(n: u32) -> Vec<Partition> {
    partial_partitions(&Block::new((0..n).map(Atom)))
}

/// All total maps from `source` into `0..guest_len`, lexicographic with the
/// smallest atom varying slowest.
pub fn insertion_maps(source: &Block, guest_len: usize) -> InsertionMaps {
    InsertionMaps {
        source: source.clone(),
        guest_len,
        next: (guest_len > 0 || source.is_empty()).then(|| vec![0; source.len()]),
    }
}

pub struct InsertionMaps {
    source: Block,
    guest_len: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for InsertionMaps {
    type Item = InsertionMap;

    fn next(&mut self) -> Option<InsertionMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.guest_len {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(InsertionMap::new(self.source.clone(), current))
    }
}

/// All involutions of `atoms` as lists of 2-cycles; with `allow_fixed` false
/// only fixed-point-free ones.
pub fn involutions(atoms: &[Atom], allow_fixed: bool) -> Vec<Vec<(Atom, Atom)>> {
    fn go(rest: &[Atom], allow_fixed: bool, acc: &mut Vec<(Atom, Atom)>, out: &mut Vec<Vec<(Atom, Atom)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        if allow_fixed {
            go(tail, allow_fixed, acc, out);
        }
        for i in 0..tail.len() {
            let mut remaining = tail.to_vec();
            let partner = remaining.remove(i);
            acc.push((first, partner));
            go(&remaining, allow_fixed, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(atoms, allow_fixed, &mut Vec::new(), &mut out);
    out
}

/// Every graph of `kind` on the half-edges `0..n`: each involution (fixed
/// points allowed only for Feynman diagrams) with each vertex partition.
pub fn graphs(kind: GraphKind, n: u32) -> Vec<Graph> {
    let atoms: Vec<Atom> = (0..n).map(Atom).collect();
    let carrier = Block::new(atoms.iter().copied());
    let vertex_sets = set_partitions(&atoms);
    let mut out = Vec::new();
    for pairs in involutions(&atoms, kind == GraphKind::Feynman) {
        let sigma = StructureMap::new(carrier.clone(), pairs).expect("involution from enumeration");
        out.extend(vertex_sets.iter().map(|v| Graph::new(kind, sigma.clone(), v.clone())));
    }
    out
}

/// Every valid admissible graph with at most `max_first` first-type and
/// `max_second` second-type vertices on `0..n` half-edges, the first-type
/// half-edges taking the smallest labels.
pub fn admissible_graphs(n: u32, max_first: usize, max_second: usize) -> Vec<AdmissibleGraph> {
    let atoms: Vec<Atom> = (0..n).map(Atom).collect();
    let carrier = Block::new(atoms.iter().copied());
    let sigmas: Vec<StructureMap> = involutions(&atoms, false)
        .into_iter()
        .map(|pairs| StructureMap::new(carrier.clone(), pairs).expect("involution from enumeration"))
        .collect();
    let mut out = Vec::new();
    for k in 0..=atoms.len() {
        let firsts: Vec<Partition> =
            set_partitions(&atoms[..k]).into_iter().filter(|p| p.len() <= max_first).collect();
        let seconds: Vec<Partition> =
            set_partitions(&atoms[k..]).into_iter().filter(|p| p.len() <= max_second).collect();
        for sigma in &sigmas {
            for i in &firsts {
                for j in &seconds {
                    let g = AdmissibleGraph::new(sigma.clone(), i.clone(), j.clone());
                    if g.is_valid() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(n: u32) -> Vec<Atom> {
        (0..n).map(Atom).collect()
    }

    #[test]
    fn graph_counts() {
        assert_eq!(graphs(GraphKind::Feynman, 3).len(), 4 * 5);
        assert_eq!(graphs(GraphKind::Ordinary, 4).len(), 3 * 15);
        assert!(graphs(GraphKind::Ordinary, 3).is_empty());
        let wedges = admissible_graphs(2, 1, 1);
        assert_eq!(wedges.len(), 1);
        assert!(admissible_graphs(4, 2, 2).iter().all(AdmissibleGraph::is_valid));
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| set_partitions(&atoms(n)).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn partial_partitions_are_bell_shifted() {
        // partial partitions of an n-set are counted by Bell(n+1)
        let counts: Vec<usize> = (0..6).map(|n| partial_partitions_upto(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 15, 52, 203]);
        let all = partial_partitions_upto(4);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn insertion_map_counts() {
        assert_eq!(insertion_maps(&Block::of(&[1, 2]), 2).count(), 4);
        assert_eq!(insertion_maps(&Block::of(&[1]), 3).count(), 3);
        assert_eq!(insertion_maps(&Block::of(&[1]), 0).count(), 0);
        let first: Vec<Vec<usize>> = insertion_maps(&Block::of(&[1, 2]), 2).map(|m| m.targets().to_vec()).collect();
        assert_eq!(first, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn involution_counts() {
        // telephone numbers and double factorials
        let all: Vec<usize> = (0..7).map(|n| involutions(&atoms(n), true).len()).collect();
        assert_eq!(all, [1, 1, 2, 4, 10, 26, 76]);
        let free: Vec<usize> = (0..7).map(|n| involutions(&atoms(n), false).len()).collect();
        assert_eq!(free, [1, 0, 1, 0, 3, 0, 15]);
    }
}
