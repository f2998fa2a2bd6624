use partcalc::coalgebra::{coassociativity_sides, coassociativity_sides_tuple, iterated_reduced_coproduct, nilpotency_index};
use partcalc::enumerate::{partial_partitions_upto, set_partitions};
use partcalc::laws::{self, Failure};
use partcalc::{Atom, Partition, PartitionTuple};
use rand::Rng;
use serde_json::{json, Value};

use super::{random_partition, reproducer, Config, Outcome};
use crate::document::Printer;

const P: Printer<'static> = Printer::numeric();

/// Every way to group the blocks of `p` into the components of a tuple.
fn groupings(p: &Partition) -> Vec<PartitionTuple> {
    let idx: Vec<Atom> = (0..p.len() as u32).map(Atom).collect();
    set_partitions(&idx)
        .into_iter()
        .map(|g| {
            let parts = g.blocks().iter().map(|grp| {
                Partition::new(grp.iter().map(|i| p.blocks()[i.index()].clone())).expect("blocks of p are disjoint")
            });
            PartitionTuple::new(parts).expect("components of p are disjoint")
        })
        .collect()
}

fn sides_failure(context: String, lhs: String, rhs: String) -> Vec<Failure> {
    vec![Failure { law: "coassociativity", detail: format!("{context}: (Δ⊗id)Δ = {lhs} but (id⊗Δ)Δ = {rhs}") }]
}

pub(super) fn coassoc(cfg: &Config, rng: &mut impl Rng) -> Outcome {
    let parts = partial_partitions_upto(cfg.max_atoms as u32);
    let mut out = Outcome::new();
    out.sweep(
        &parts,
        |p| {
            let (l, r) = coassociativity_sides::<i64>(p);
            if l == r {
                laws::coproduct_witness_laws(p)
            } else {
                sides_failure(p.to_string(), l.to_string(), r.to_string())
            }
        },
        |p| reproducer(&[("p", P.partition(p))]),
    );
    let mut tuples: Vec<PartitionTuple> =
        parts.iter().filter(|p| p.len() > 1).flat_map(groupings).filter(|t| t.len() > 1).collect();
    let extra = cfg.samples.min(50);
    tuples.extend((0..extra).flat_map(|_| {
        let p = random_partition(rng, 2, cfg.max_atoms.max(2) + 1, 0);
        let gs = groupings(&p);
        let pick = rng.gen_range(0..gs.len());
        gs.into_iter().nth(pick)
    }));
    out.sweep(
        &tuples,
        |t| {
            let (l, r) = coassociativity_sides_tuple::<i64>(t);
            if l == r {
                vec![]
            } else {
                let shown: Vec<String> = t.parts().iter().map(|p| p.to_string()).collect();
                sides_failure(format!("({})", shown.join(", ")), l.to_string(), r.to_string())
            }
        },
        |t| reproducer(&[("tuple", P.tuple(t))]),
    );
    out
}

/// Checks termination and the bound `max(1, |R(P)|)`; partitions whose
/// index exceeds `|blocks| + 1` are reported, not failed.
pub(super) fn nilpotent(cfg: &Config) -> Outcome {
    let parts = partial_partitions_upto(cfg.max_atoms as u32);
    let indices: Vec<usize> = parts.iter().map(nilpotency_index).collect();
    let mut out = Outcome::new();
    let cases: Vec<(Partition, usize)> = parts.iter().cloned().zip(indices.iter().copied()).collect();
    out.sweep(
        &cases,
        |(p, m)| {
            let mut fails = Vec::new();
            let bound = p.atom_count().max(1);
            if *m > bound {
                fails.push(Failure { law: "nilpotency bound", detail: format!("{p}: index {m} > {bound}") });
            }
            if !iterated_reduced_coproduct::<i64>(p, *m).is_zero() {
                fails.push(Failure { law: "nilpotency", detail: format!("{p}: Δ'^{m} ≠ 0") });
            }
            if *m > 1 && iterated_reduced_coproduct::<i64>(p, m - 1).is_zero() {
                fails.push(Failure { law: "nilpotency index is minimal", detail: format!("{p}: Δ'^{} = 0", m - 1) });
            }
            fails
        },
        |(p, m)| reproducer(&[("p", P.partition(p)), ("index", json!(m))]),
    );
    let over: Vec<Value> = cases
        .iter()
        .filter(|(p, m)| *m > p.len() + 1)
        .map(|(p, m)| json!({ "p": P.partition(p), "index": m, "blocks": p.len() }))
        .collect();
    let sharp = cases.iter().filter(|(p, m)| *m == p.atom_count().max(1)).count();
    out.notes = json!({
        "index_equals_atom_count": sharp,
        "exceeds_blocks_plus_one": over.len(),
        "exceeds_blocks_plus_one_examples": over.into_iter().take(10).collect::<Vec<_>>(),
    });
    out
}
