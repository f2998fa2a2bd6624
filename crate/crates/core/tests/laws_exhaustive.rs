//! Every identity checked over all small instances.

use partcalc::enumerate::{admissible_graphs, graphs, insertion_maps, partial_partitions, partial_partitions_upto, set_partitions};
use partcalc::laws::{self, Failure};
use partcalc::partition::{is_admissible, iterated_quotient};
use partcalc::{Atom, GraphKind, Partition};

fn assert_clean(name: &str, failures: Vec<Failure>) {
    let shown: Vec<String> = failures.iter().take(5).map(|f| f.to_string()).collect();
    assert!(failures.is_empty(), "{name}: {} failures, first: {shown:#?}", failures.len());
}

fn shifted(n: u32, offset: u32) -> Vec<Partition> {
    let atoms: Vec<Atom> = (offset..offset + n).map(Atom).collect();
    set_partitions(&atoms)
}

#[test]
fn quotient_and_reinsertion_laws() {
    let mut failures = Vec::new();
    for p in partial_partitions_upto(4) {
        for (b, c) in laws::disjoint_pairs(&p) {
            failures.extend(laws::quotient_laws(&p, &b, &c));
        }
        for (b, _) in laws::disjoint_pairs(&p) {
            failures.extend(laws::reinsertion_round_trip(&p, &b));
        }
    }
    assert_clean("quotient laws", failures);
}

#[test]
fn insertion_duality() {
    let mut failures = Vec::new();
    for n in 1..=3 {
        for p in shifted(n, 0) {
            for m in 1..=3 {
                for guest in shifted(m, 10) {
                    for a in 0..p.len() {
                        for map in insertion_maps(&p.blocks()[a], guest.len()) {
                            failures.extend(laws::insertion_duality(&p, a, &guest, &map));
                        }
                    }
                }
            }
        }
    }
    assert_clean("insertion duality", failures);
}

#[test]
fn adjustment() {
    let mut failures = Vec::new();
    for p in partial_partitions_upto(4) {
        for f in partial_partitions(&p.range()) {
            failures.extend(laws::adjustment_laws(&p, &f));
        }
    }
    assert_clean("adjustment", failures);
}

#[test]
fn merge_witness() {
    let mut failures = Vec::new();
    let mut instances = 0;
    for p in partial_partitions_upto(4) {
        for j in partial_partitions(&p.range()) {
            if !is_admissible(&p, &j).unwrap() {
                continue;
            }
            let pj = iterated_quotient(&p, j.blocks()).unwrap();
            for k in partial_partitions(&pj.range()) {
                if is_admissible(&pj, &k).unwrap() {
                    instances += 1;
                    failures.extend(laws::merge_witness_laws(&p, &j, &k));
                }
            }
        }
    }
    assert!(instances > 1000);
    assert_clean("merge witness", failures);
}

#[test]
fn coproduct_witness() {
    let mut failures = Vec::new();
    for p in partial_partitions_upto(4) {
        failures.extend(laws::coproduct_witness_laws(&p));
    }
    assert_clean("coproduct witness", failures);
}

#[test]
fn lie_laws() {
    let mut failures = Vec::new();
    for a in 1..=3 {
        for p in shifted(a, 0) {
            for b in 1..=2 {
                for q in shifted(b, 10) {
                    for c in 1..=2 {
                        for s in shifted(c, 20) {
                            failures.extend(laws::commutation_laws(&p, &q, &s));
                            failures.extend(laws::prelie_laws(&p, &q, &s));
                            failures.extend(laws::jacobi_laws(&p, &q, &s));
                        }
                    }
                }
            }
        }
    }
    assert_clean("lie laws", failures);
}

#[test]
fn graph_laws() {
    let mut failures = Vec::new();
    let mut tally = laws::GraphTally::default();
    for kind in [GraphKind::Feynman, GraphKind::Ordinary] {
        for n in 1..=5 {
            for g in graphs(kind, n).into_iter().filter(|g| g.is_valid()) {
                let (f, t) = laws::graph_laws(&g);
                failures.extend(f);
                tally += t;
            }
        }
    }
    assert!(tally.quotients > 0);
    assert_clean("graph laws", failures);
}

#[test]
fn graph_insertion_laws() {
    let mut failures = Vec::new();
    let small: Vec<_> = (1..=3).flat_map(|n| graphs(GraphKind::Feynman, n)).collect();
    for g in &small {
        for h in &small {
            let h = partcalc::graphs::Graph::new(h.kind(), shift_sigma(h), h.vertices().relabel(|x| Atom(x.0 + 10)));
            failures.extend(laws::graph_insertion_laws(g, &h));
        }
    }
    assert_clean("graph insertion", failures);
}

fn shift_sigma(h: &partcalc::Graph) -> partcalc::StructureMap {
    let carrier = partcalc::Block::new(h.sigma().carrier().iter().map(|x| Atom(x.0 + 10)));
    let pairs = h.sigma().pairs().into_iter().map(|(a, b)| (Atom(a.0 + 10), Atom(b.0 + 10)));
    partcalc::StructureMap::new(carrier, pairs).unwrap()
}

#[test]
fn admissible_graph_laws() {
    let mut failures = Vec::new();
    let mut tally = laws::GraphTally::default();
    for n in 2..=6 {
        for g in admissible_graphs(n, 3, 2) {
            let (f, t) = laws::admissible_laws(&g);
            failures.extend(f);
            tally += t;
        }
    }
    assert!(tally.quotients > 0);
    assert_clean("admissible laws", failures);
}
