//! Identity suites. Each suite enumerates its instances up front (small
//! cases exhaustively, larger ones from a seeded generator), checks them on
//! the rayon pool and merges results in instance order, so reports depend
//! only on the configuration.

mod coalgebra;
mod graphs;
mod lie;
mod partitions;

use std::time::{Duration, Instant};

use partcalc::laws::Failure;
use partcalc::{Atom, Block, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;

/// Suites in run order.
pub const SUITES: &[&str] = &[
    "quotient-laws",
    "duality",
    "adjust",
    "coassoc",
    "nilpotent",
    "commutation",
    "prelie",
    "jacobi",
    "jacobi-signed",
    "graph-bridge",
];

/// Older names accepted on the command line.
pub const ALIASES: &[(&str, &str)] = &[("prop21", "quotient-laws"), ("lemma31", "commutation")];

/// Resolves an alias to its suite name.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    SUITES
        .iter()
        .copied()
        .find(|s| *s == name)
        .or_else(|| ALIASES.iter().find(|(alias, _)| *alias == name).map(|(_, s)| *s))
}

/// Failures kept in a report; the count covers all of them.
const KEPT_FAILURES: usize = 25;

#[derive(Clone, Debug)]
pub struct Config {
    /// Exhaustive sweeps cover every partial partition on this many atoms.
    pub max_atoms: usize,
    /// Random instances per suite.
    pub samples: usize,
    pub seed: u64,
    /// Upper bound on atoms in random partition instances.
    pub sample_atoms: usize,
    /// Feynman and ordinary graphs are enumerated up to this many half-edges.
    pub max_half_edges: usize,
    pub max_admissible_half_edges: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_atoms: 4, samples: 500, seed: 0, sample_atoms: 8, max_half_edges: 6, max_admissible_half_edges: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteFailure {
    pub instance: usize,
    pub law: String,
    pub detail: String,
    pub reproducer: Value,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    /// Report-only suites never fail.
    pub asserting: bool,
    pub seed: u64,
    pub instances: usize,
    pub failure_count: usize,
    pub failures: Vec<SuiteFailure>,
    /// Suite-specific findings that are not failures.
    pub notes: Value,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "instance": f.instance, "law": f.law, "detail": f.detail, "reproducer": f.reproducer }))
            .collect();
        let mut v = json!({
            "suite": self.suite,
            "asserting": self.asserting,
            "passed": self.passed(),
            "seed": self.seed,
            "instances": self.instances,
            "failure_count": self.failure_count,
            "failures": failures,
            "notes": self.notes,
        });
        if timings {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

/// Outcome of a suite body before timing is attached.
pub(crate) struct Outcome {
    instances: usize,
    failures: Vec<SuiteFailure>,
    failure_count: usize,
    notes: Value,
}

impl Outcome {
    fn new() -> Self {
        Outcome { instances: 0, failures: Vec::new(), failure_count: 0, notes: json!({}) }
    }

    /// Checks `instances` in parallel and records failures in order.
    fn sweep<I: Sync>(
        &mut self,
        instances: &[I],
        check: impl Fn(&I) -> Vec<Failure> + Sync + Send,
        reproducer: impl Fn(&I) -> Value,
    ) {
        let results: Vec<Vec<Failure>> = instances.par_iter().map(check).collect();
        self.record(instances, results, reproducer);
    }

    fn record<I>(&mut self, instances: &[I], results: Vec<Vec<Failure>>, reproducer: impl Fn(&I) -> Value) {
        let base = self.instances;
        for (i, fails) in results.into_iter().enumerate() {
            for f in fails {
                self.failure_count += 1;
                if self.failures.len() < KEPT_FAILURES {
                    self.failures.push(SuiteFailure {
                        instance: base + i,
                        law: f.law.to_owned(),
                        detail: f.detail,
                        reproducer: reproducer(&instances[i]),
                    });
                }
            }
        }
        self.instances += instances.len();
    }
}

pub fn run(name: &str, cfg: &Config) -> Result<SuiteReport, CliError> {
    let suite = canonical_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))))?;
    let start = Instant::now();
    let mut rng = rng_for(cfg.seed, suite);
    let (asserting, outcome) = match suite {
        "quotient-laws" => (true, partitions::quotient_laws(cfg, &mut rng)),
        "duality" => (true, partitions::duality(cfg, &mut rng)),
        "adjust" => (true, partitions::adjust(cfg, &mut rng)),
        "coassoc" => (true, coalgebra::coassoc(cfg, &mut rng)),
        "nilpotent" => (true, coalgebra::nilpotent(cfg)),
        "commutation" => (true, lie::commutation(cfg)),
        "prelie" => (true, lie::prelie(cfg)),
        "jacobi" => (true, lie::jacobi(cfg, &mut rng)),
        "jacobi-signed" => (false, lie::jacobi_signed(cfg, &mut rng)),
        "graph-bridge" => (true, graphs::bridge(cfg)),
        _ => unreachable!("every listed suite is dispatched"),
    };
    Ok(SuiteReport {
        suite,
        asserting,
        seed: cfg.seed,
        instances: outcome.instances,
        failure_count: outcome.failure_count,
        failures: outcome.failures,
        notes: outcome.notes,
        elapsed: start.elapsed(),
    })
}

pub fn run_all(cfg: &Config) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run(s, cfg).expect("listed suites exist")).collect()
}

/// Each suite draws from its own stream so adding samples to one suite does
/// not shift another.
fn rng_for(seed: u64, suite: &str) -> ChaCha8Rng {
    let salt = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// A partial partition of `0..n` with `n ≤ max`, atoms shifted by `offset`.
fn random_partition(rng: &mut impl Rng, min: usize, max: usize, offset: u32) -> Partition {
    let n = rng.gen_range(min..=max);
    let mut blocks = vec![Vec::new(); n];
    for i in 0..n {
        blocks[rng.gen_range(0..n)].push(Atom(i as u32 + offset));
    }
    Partition::new(blocks.into_iter().map(Block::new)).expect("blocks are disjoint")
}

/// A random subfamily of `p`'s range: each atom lands in one of `|R|`
/// blocks or is left out.
fn random_family(rng: &mut impl Rng, p: &Partition) -> Partition {
    let range = p.range();
    let n = range.len();
    let mut blocks = vec![Vec::new(); n];
    for a in range.iter() {
        let k = rng.gen_range(0..=n);
        if k < n {
            blocks[k].push(a);
        }
    }
    Partition::new(blocks.into_iter().map(Block::new)).expect("blocks are disjoint")
}

fn reproducer(fields: &[(&str, Value)]) -> Value {
    Value::Object(fields.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect())
}
