use partcalc::enumerate::{admissible_graphs, graphs};
use partcalc::laws::{self, Failure, GraphTally};
use partcalc::{Atom, Block, Graph, GraphKind, StructureMap};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{reproducer, Config, Outcome};
use crate::document::Printer;

const P: Printer<'static> = Printer::numeric();

fn shifted(g: &Graph, by: u32) -> Graph {
    let carrier = Block::new(g.sigma().carrier().iter().map(|a| Atom(a.0 + by)));
    let pairs = g.sigma().pairs().into_iter().map(|(a, b)| (Atom(a.0 + by), Atom(b.0 + by)));
    let sigma = StructureMap::new(carrier, pairs).expect("shifting keeps an involution");
    Graph::new(g.kind(), sigma, g.vertices().relabel(|a| Atom(a.0 + by)))
}

/// Runs a tallying checker in parallel, recording failures like `sweep`.
fn tallied<I: Sync>(
    out: &mut Outcome,
    items: &[I],
    check: impl Fn(&I) -> (Vec<Failure>, GraphTally) + Sync + Send,
    repro: impl Fn(&I) -> Value,
) -> GraphTally {
    let results: Vec<(Vec<Failure>, GraphTally)> = items.par_iter().map(check).collect();
    let mut total = GraphTally::default();
    let (fails, tallies): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    tallies.into_iter().for_each(|t| total += t);
    out.record(items, fails, repro);
    total
}

pub(super) fn bridge(cfg: &Config) -> Outcome {
    let mut out = Outcome::new();
    let mut all: Vec<Graph> = Vec::new();
    for kind in [GraphKind::Feynman, GraphKind::Ordinary] {
        for n in 1..=cfg.max_half_edges as u32 {
            all.extend(graphs(kind, n).into_iter().filter(Graph::is_valid));
        }
    }
    let graph_tally = tallied(&mut out, &all, laws::graph_laws, |g| reproducer(&[("graph", P.graph(g))]));

    let mut pairs = Vec::new();
    for g in &all {
        for h in &all {
            let fits = g.kind() == h.kind() && g.sigma().carrier().len() + h.sigma().carrier().len() <= cfg.max_half_edges;
            if fits {
                pairs.push((g.clone(), shifted(h, 100)));
            }
        }
    }
    out.sweep(&pairs, |(g, h)| laws::graph_insertion_laws(g, h), |(g, h)| {
        reproducer(&[("graph", P.graph(g)), ("guest", P.graph(h))])
    });

    let admissible: Vec<_> =
        (1..=cfg.max_admissible_half_edges as u32).flat_map(|n| admissible_graphs(n, 2, 2)).collect();
    let adm_tally =
        tallied(&mut out, &admissible, laws::admissible_laws, |g| reproducer(&[("graph", P.admissible(g))]));

    out.notes = json!({
        "graphs": all.len(),
        "graph_pairs": pairs.len(),
        "admissible_graphs": admissible.len(),
        "selections": graph_tally.selections,
        "quotients": graph_tally.quotients,
        "admissible_selections": adm_tally.selections,
        "admissible_quotients": adm_tally.quotients,
        "admissible_quotients_not_admissible": adm_tally.invalid_quotients,
    });
    out
}
