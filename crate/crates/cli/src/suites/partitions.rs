use partcalc::enumerate::{insertion_maps, partial_partitions, partial_partitions_upto, set_partitions, subsets};
use partcalc::laws;
use partcalc::partition::{adjust as adjusted, is_admissible, iterated_quotient, touched_range};
use partcalc::{Atom, Block, InsertionMap, Partition};
use rand::Rng;
use serde_json::{json, Value};

use super::{random_family, random_partition, reproducer, Config, Outcome};
use crate::document::Printer;

const P: Printer<'static> = Printer::numeric();

fn pair_case(p: &Partition, b: &Block, c: &Block) -> Value {
    reproducer(&[("p", P.partition(p)), ("b", P.block(b)), ("c", P.block(c))])
}

fn random_pair(rng: &mut impl Rng, max: usize) -> (Partition, Block, Block) {
    let p = random_partition(rng, 0, max, 0);
    let (mut b, mut c) = (Block::empty(), Block::empty());
    for a in p.range().iter() {
        match rng.gen_range(0..3) {
            1 => b.insert(a),
            2 => c.insert(a),
            _ => {}
        }
    }
    (p, b, c)
}

pub(super) fn quotient_laws(cfg: &Config, rng: &mut impl Rng) -> Outcome {
    let mut out = Outcome::new();
    let exhaustive: Vec<(Partition, Block, Block)> = partial_partitions_upto(cfg.max_atoms as u32)
        .into_iter()
        .flat_map(|p| laws::disjoint_pairs(&p).into_iter().map(move |(b, c)| (p.clone(), b, c)))
        .collect();
    let random: Vec<_> = (0..cfg.samples).map(|_| random_pair(rng, cfg.sample_atoms)).collect();
    for cases in [exhaustive, random] {
        out.sweep(&cases, |(p, b, c)| laws::quotient_laws(p, b, c), |(p, b, c)| pair_case(p, b, c));
    }
    out
}

enum Duality {
    Reinsert(Partition, Block),
    Insert(Partition, usize, Partition, InsertionMap),
}

fn shifted(n: usize, offset: u32) -> Vec<Partition> {
    let atoms: Vec<Atom> = (offset..offset + n as u32).map(Atom).collect();
    set_partitions(&atoms)
}

fn insertion_cases<'a>(p: &'a Partition, guest: &'a Partition) -> impl Iterator<Item = Duality> + 'a {
    (0..p.len()).flat_map(move |a| {
        insertion_maps(&p.blocks()[a], guest.len()).map(move |m| Duality::Insert(p.clone(), a, guest.clone(), m))
    })
}

pub(super) fn duality(cfg: &Config, rng: &mut impl Rng) -> Outcome {
    let mut cases = Vec::new();
    for p in partial_partitions_upto(cfg.max_atoms as u32) {
        for b in subsets(&p.range()) {
            if touched_range(&p, &b).expect("b lies in the range") != b {
                cases.push(Duality::Reinsert(p.clone(), b));
            }
        }
    }
    let small = cfg.max_atoms.min(3);
    let hosts: Vec<Partition> = (1..=small).flat_map(|n| shifted(n, 0)).collect();
    let guests: Vec<Partition> = (1..=small).flat_map(|n| shifted(n, 100)).collect();
    for p in &hosts {
        for q in &guests {
            cases.extend(insertion_cases(p, q));
        }
    }
    for _ in 0..cfg.samples {
        let p = random_partition(rng, 1, cfg.sample_atoms.min(6), 0);
        let q = random_partition(rng, 1, 3, 100);
        let a = rng.gen_range(0..p.len());
        let maps: Vec<InsertionMap> = insertion_maps(&p.blocks()[a], q.len()).collect();
        let map = maps[rng.gen_range(0..maps.len())].clone();
        cases.push(Duality::Insert(p, a, q, map));
    }
    let mut out = Outcome::new();
    out.sweep(
        &cases,
        |c| match c {
            Duality::Reinsert(p, b) => laws::reinsertion_round_trip(p, b),
            Duality::Insert(p, a, q, m) => laws::insertion_duality(p, *a, q, m),
        },
        |c| match c {
            Duality::Reinsert(p, b) => reproducer(&[("p", P.partition(p)), ("b", P.block(b))]),
            Duality::Insert(p, a, q, m) => reproducer(&[
                ("p", P.partition(p)),
                ("a", json!(a)),
                ("q", P.partition(q)),
                ("map", P.map(&m.pairs().collect::<Vec<_>>())),
            ]),
        },
    );
    out
}

enum Adjust {
    Family(Partition, Partition),
    Merge(Partition, Partition, Partition),
}

fn merge_cases(p: &Partition, out: &mut Vec<Adjust>) {
    for j in partial_partitions(&p.range()) {
        if !is_admissible(p, &j).expect("family inside the range") {
            continue;
        }
        let pj = iterated_quotient(p, j.blocks()).expect("admissible family divides");
        for k in partial_partitions(&pj.range()) {
            if is_admissible(&pj, &k).expect("family inside the range") {
                out.push(Adjust::Merge(p.clone(), j.clone(), k));
            }
        }
    }
}

pub(super) fn adjust(cfg: &Config, rng: &mut impl Rng) -> Outcome {
    let mut cases = Vec::new();
    for p in partial_partitions_upto(cfg.max_atoms as u32) {
        cases.extend(partial_partitions(&p.range()).into_iter().map(|f| Adjust::Family(p.clone(), f)));
        merge_cases(&p, &mut cases);
    }
    for _ in 0..cfg.samples {
        let p = random_partition(rng, 0, cfg.sample_atoms.min(6), 0);
        let f = random_family(rng, &p);
        let j = adjusted(&p, &random_family(rng, &p)).expect("family inside the range");
        let pj = iterated_quotient(&p, j.blocks()).expect("admissible family divides");
        let k = adjusted(&pj, &random_family(rng, &pj)).expect("family inside the range");
        cases.push(Adjust::Family(p.clone(), f));
        cases.push(Adjust::Merge(p, j, k));
    }
    let mut out = Outcome::new();
    out.sweep(
        &cases,
        |c| match c {
            Adjust::Family(p, f) => laws::adjustment_laws(p, f),
            Adjust::Merge(p, j, k) => laws::merge_witness_laws(p, j, k),
        },
        |c| match c {
            Adjust::Family(p, f) => reproducer(&[("p", P.partition(p)), ("f", P.partition(f))]),
            Adjust::Merge(p, j, k) => reproducer(&[("p", P.partition(p)), ("j", P.partition(j)), ("k", P.partition(k))]),
        },
    );
    out
}
