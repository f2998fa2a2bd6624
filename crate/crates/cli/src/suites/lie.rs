use partcalc::enumerate::set_partitions;
use partcalc::laws;
use partcalc::lie::signed_jacobi_defect;
use partcalc::{Atom, Block, OrderedPartition, Partition};
use rand::Rng;
use serde_json::{json, Value};

use super::{random_partition, reproducer, Config, Outcome};
use crate::document::Printer;

const P: Printer<'static> = Printer::numeric();

type Triple = (Partition, Partition, Partition);

fn shifted(n: usize, offset: u32) -> Vec<Partition> {
    let atoms: Vec<Atom> = (offset..offset + n as u32).map(Atom).collect();
    set_partitions(&atoms)
}

fn triple_case((p, q, s): &Triple) -> Value {
    reproducer(&[("p", P.partition(p)), ("q", P.partition(q)), ("s", P.partition(s))])
}

/// Hosts on up to `max_atoms` atoms with guests on up to two.
fn insertion_family(cfg: &Config) -> Vec<Triple> {
    let guests = |offset| (1..=2).flat_map(move |n| shifted(n, offset)).collect::<Vec<_>>();
    let (qs, ss) = (guests(100), guests(200));
    let mut out = Vec::new();
    for p in (1..=cfg.max_atoms).flat_map(|n| shifted(n, 0)) {
        for q in &qs {
            for s in &ss {
                out.push((p.clone(), q.clone(), s.clone()));
            }
        }
    }
    out
}

/// One partition per shape with at most two blocks of at most two atoms.
fn small_shapes(offset: u32) -> Vec<Partition> {
    let shapes: [&[usize]; 5] = [&[1], &[2], &[1, 1], &[2, 1], &[2, 2]];
    shapes
        .iter()
        .map(|sizes| {
            let mut next = offset;
            let blocks = sizes.iter().map(|&k| {
                let b = Block::new((next..next + k as u32).map(Atom));
                next += k as u32;
                b
            });
            Partition::new(blocks).expect("consecutive blocks are disjoint")
        })
        .collect()
}

fn jacobi_family(cfg: &Config, rng: &mut impl Rng) -> Vec<Triple> {
    let (ps, qs, ss) = (small_shapes(0), small_shapes(100), small_shapes(200));
    let mut out = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in &ss {
                out.push((p.clone(), q.clone(), s.clone()));
            }
        }
    }
    for _ in 0..cfg.samples {
        out.push((random_partition(rng, 1, 4, 0), random_partition(rng, 1, 3, 100), random_partition(rng, 1, 3, 200)));
    }
    out
}

pub(super) fn commutation(cfg: &Config) -> Outcome {
    let mut out = Outcome::new();
    out.sweep(&insertion_family(cfg), |(p, q, s)| laws::commutation_laws(p, q, s), triple_case);
    out
}

pub(super) fn prelie(cfg: &Config) -> Outcome {
    let mut out = Outcome::new();
    out.sweep(&insertion_family(cfg), |(p, q, s)| laws::prelie_laws(p, q, s), triple_case);
    out
}

pub(super) fn jacobi(cfg: &Config, rng: &mut impl Rng) -> Outcome {
    let mut out = Outcome::new();
    out.sweep(&jacobi_family(cfg, rng), |(p, q, s)| laws::jacobi_laws(p, q, s), triple_case);
    out
}

/// Evaluates the Jacobi sum of the signed bracket on the Jacobi family,
/// blocks taken in canonical order. Report only.
pub(super) fn jacobi_signed(cfg: &Config, rng: &mut impl Rng) -> Outcome {
    use rayon::prelude::*;
    let family = jacobi_family(cfg, rng);
    let defects: Vec<usize> = family
        .par_iter()
        .map(|(p, q, s)| {
            let (p, q, s) = (OrderedPartition::from(p.clone()), OrderedPartition::from(q.clone()), OrderedPartition::from(s.clone()));
            signed_jacobi_defect::<i64>(&p, &q, &s).expect("ranges are disjoint").len()
        })
        .collect();
    let passed = defects.iter().filter(|&&d| d == 0).count();
    let rows: Vec<Value> = family
        .iter()
        .zip(&defects)
        .map(|(t, &d)| {
            let mut row = triple_case(t);
            row["pass"] = json!(d == 0);
            row["defect_terms"] = json!(d);
            row
        })
        .collect();
    let mut out = Outcome::new();
    out.instances = family.len();
    out.notes = json!({
        "convention": "host block a (counted from 1) carries the sign (-1)^a; guest blocks replace the host block in place",
        "passed": passed,
        "failed": family.len() - passed,
        "identity_holds": passed == family.len(),
        "results": rows,
    });
    out
}
