use std::collections::BTreeSet;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::lie::enumerate_insertions;
use crate::linear::{Coefficient, LinComb};
use crate::partition::{insert, quotient, reversion, InsertionMap, Partition};

use super::{components, AdmissibleGraph, Graph, GraphKind, StructureMap};

fn selected<'a>(blocks: &'a [Block], selection: &[usize]) -> Result<Vec<&'a Block>> {
    let mut seen = BTreeSet::new();
    selection
        .iter()
        .map(|&i| {
            if !seen.insert(i) {
                return Err(Error::BadSelection(format!("vertex {i} selected twice")));
            }
            blocks
                .get(i)
                .ok_or_else(|| Error::BadSelection(format!("vertex {i} out of range (graph has {})", blocks.len())))
        })
        .collect()
}

fn partition_of(blocks: impl IntoIterator<Item = Block>) -> Partition {
    Partition::from_disjoint(blocks.into_iter().filter(|b| !b.is_empty()).collect())
}

/// The subgraph on the selected vertices (indices into the canonical vertex
/// order). Feynman subgraphs keep every half-edge and turn severed lines into
/// external legs; ordinary subgraphs drop severed half-edges, and vertices
/// left without half-edges disappear.
pub fn subgraph(g: &Graph, selection: &[usize]) -> Result<Graph> {
    let chosen = selected(g.vertices().blocks(), selection)?;
    let j = reversion(chosen.iter().copied());
    Ok(match g.kind() {
        GraphKind::Feynman => Graph::new(
            GraphKind::Feynman,
            g.sigma().sever(&j),
            partition_of(chosen.into_iter().cloned()),
        ),
        GraphKind::Ordinary => {
            let kept = g.sigma().closed_part(&j);
            Graph::new(
                GraphKind::Ordinary,
                g.sigma().restrict(&kept)?,
                partition_of(chosen.iter().map(|b| b.intersection(&kept))),
            )
        }
    })
}

/// Half-edges of the selected vertices whose partner is also selected and
/// that are not external legs: the set contracted by [`quotient_graph`].
pub fn internal_half_edges(g: &Graph, selection: &[usize]) -> Result<Block> {
    let chosen = selected(g.vertices().blocks(), selection)?;
    let j = reversion(chosen.iter().copied());
    let fixed = g.sigma().fixed_points();
    Ok(g.sigma().closed_part(&j).difference(&fixed))
}

/// Contracts the connected subgraph on `selection` to a single vertex.
pub fn quotient_graph(g: &Graph, selection: &[usize]) -> Result<Graph> {
    if !g.is_connected()? {
        return Err(Error::Disconnected(format!("graph {g}")));
    }
    let sub = subgraph(g, selection)?;
    if !sub.is_connected()? {
        return Err(Error::Disconnected(format!("subgraph {sub}")));
    }
    contract(g, selection)
}

fn contract(g: &Graph, selection: &[usize]) -> Result<Graph> {
    let removed = internal_half_edges(g, selection)?;
    if removed.is_empty() {
        return Ok(g.clone());
    }
    let q = quotient(g.vertices(), &removed)?;
    let sigma = g.sigma().restrict(&g.sigma().carrier().difference(&removed))?;
    Ok(Graph::new(g.kind(), sigma, q.partition))
}

/// Splits a selection into the vertex sets of the connected components of
/// its subgraph, each sorted, ordered by first vertex.
pub fn connected_components(g: &Graph, selection: &[usize]) -> Result<Vec<Vec<usize>>> {
    let chosen = selected(g.vertices().blocks(), selection)?;
    let j = reversion(chosen.iter().copied());
    let severed = g.sigma().sever(&j);
    let mut indices: Vec<usize> = selection.to_vec();
    indices.sort_unstable();
    let blocks: Vec<&Block> = indices.iter().map(|&i| &g.vertices().blocks()[i]).collect();
    Ok(components(&blocks, &severed)
        .into_iter()
        .map(|group| group.into_iter().map(|k| indices[k]).collect())
        .collect())
}

/// Contracts each component in turn. Components are vertex selections of
/// the original graph; they are located by content in the intermediate
/// graphs.
pub fn quotient_disconnected(g: &Graph, comps: &[Vec<usize>]) -> Result<Graph> {
    let mut claimed = BTreeSet::new();
    let mut groups: Vec<Vec<Block>> = Vec::with_capacity(comps.len());
    for comp in comps {
        for &i in comp {
            if !claimed.insert(i) {
                return Err(Error::BadSelection(format!("vertex {i} appears in two components")));
            }
        }
        groups.push(selected(g.vertices().blocks(), comp)?.into_iter().cloned().collect());
    }
    let mut current = g.clone();
    for group in groups {
        let idx: Vec<usize> = group
            .iter()
            .map(|b| current.vertices().position(b).expect("contraction leaves other components intact"))
            .collect();
        current = quotient_graph(&current, &idx)?;
    }
    Ok(current)
}

/// The pieces of an admissible subgraph: the kept first-type half-edges
/// `I_{L,K}` and the second-type half-edges `K ∩ σ(L)` reached from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleInternal {
    pub first: Block,
    pub second: Block,
}

fn admissible_parts<'a>(
    g: &'a AdmissibleGraph,
    l_sel: &[usize],
    k_sel: &[usize],
) -> Result<(Vec<&'a Block>, Vec<&'a Block>, AdmissibleInternal)> {
    let ls = selected(g.first_type().blocks(), l_sel)?;
    let ks = selected(g.second_type().blocks(), k_sel)?;
    let l = reversion(ls.iter().copied());
    let k = reversion(ks.iter().copied());
    let hit = g.sigma().image_of(&l);
    if let Some(kk) = ks.iter().find(|kk| !kk.meets(&hit)) {
        return Err(Error::BadSelection(format!("second-type vertex {kk} is not reached from the selection")));
    }
    let targets = l.union(&k);
    let first: Block = l.iter().filter(|&e| targets.contains(g.sigma().apply(e))).collect();
    let second = k.intersection(&hit);
    Ok((ls, ks, AdmissibleInternal { first, second }))
}

/// The subgraph of an admissible graph on first-type vertices `l_sel` and
/// second-type vertices `k_sel`; every selected second-type vertex must be
/// hit by a line from the selected first-type vertices.
pub fn subgraph_admissible(g: &AdmissibleGraph, l_sel: &[usize], k_sel: &[usize]) -> Result<AdmissibleGraph> {
    let (ls, ks, parts) = admissible_parts(g, l_sel, k_sel)?;
    let sigma = g.sigma().restrict(&parts.first.union(&parts.second))?;
    Ok(AdmissibleGraph::new(
        sigma,
        partition_of(ls.iter().map(|b| b.intersection(&parts.first))),
        partition_of(ks.iter().map(|b| b.intersection(&parts.second))),
    ))
}

/// Contracts a connected admissible subgraph: each vertex type is divided by
/// its share of the subgraph's half-edges. The result is not re-validated.
pub fn quotient_admissible(
    g: &AdmissibleGraph,
    l_sel: &[usize],
    k_sel: &[usize],
) -> Result<(AdmissibleGraph, AdmissibleInternal)> {
    if !g.is_connected()? {
        return Err(Error::Disconnected(format!("graph {g}")));
    }
    let sub = subgraph_admissible(g, l_sel, k_sel)?;
    if !super::joined(&sub.all_vertices(), sub.sigma()) {
        return Err(Error::Disconnected(format!("subgraph {sub}")));
    }
    let (_, _, parts) = admissible_parts(g, l_sel, k_sel)?;
    let first = quotient(g.first_type(), &parts.first)?.partition;
    let second = quotient(g.second_type(), &parts.second)?.partition;
    let removed = parts.first.union(&parts.second);
    let sigma = g.sigma().restrict(&g.sigma().carrier().difference(&removed))?;
    Ok((AdmissibleGraph::new(sigma, first, second), parts))
}

/// Inserts `guest` into vertex `a` of `host` along `map`; the structure
/// maps are glued.
pub fn insert_graph(host: &Graph, a: usize, guest: &Graph, map: &InsertionMap) -> Result<Graph> {
    if host.kind() != guest.kind() {
        return Err(Error::KindMismatch(format!(
            "cannot insert a {} graph into a {} graph",
            guest.kind().name(),
            host.kind().name()
        )));
    }
    let sigma = host.sigma().disjoint_union(guest.sigma())?;
    let vertices = insert(host.vertices(), a, guest.vertices(), map)?;
    Ok(Graph::new(host.kind(), sigma, vertices))
}

/// How the second-type vertices of the guest enter the host.
#[derive(Clone, Debug)]
pub enum AdmissibleInsertion {
    /// First type inserted at `a` by `iota`, second type at `b` by `kappa`.
    Paired { a: usize, iota: InsertionMap, b: usize, kappa: InsertionMap },
    /// First type inserted at `a` by `iota`; the guest's second-type
    /// vertices are added alongside the host's.
    TrivialSecond { a: usize, iota: InsertionMap },
}

pub fn insert_admissible(
    host: &AdmissibleGraph,
    guest: &AdmissibleGraph,
    mode: &AdmissibleInsertion,
) -> Result<AdmissibleGraph> {
    let sigma = host.sigma().disjoint_union(guest.sigma())?;
    let (first, second) = match mode {
        AdmissibleInsertion::Paired { a, iota, b, kappa } => (
            insert(host.first_type(), *a, guest.first_type(), iota)?,
            insert(host.second_type(), *b, guest.second_type(), kappa)?,
        ),
        AdmissibleInsertion::TrivialSecond { a, iota } => (
            insert(host.first_type(), *a, guest.first_type(), iota)?,
            host.second_type().disjoint_union(guest.second_type())?,
        ),
    };
    let g = AdmissibleGraph::new(sigma, first, second);
    let violations = g.validate();
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(Error::ResultNotAdmissible(violations))
    }
}

/// A linear combination of vertex partitions over one shared structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLinComb<C: Coefficient> {
    kind: GraphKind,
    sigma: StructureMap,
    terms: LinComb<Partition, C>,
}

impl<C: Coefficient> GraphLinComb<C> {
    pub fn new(kind: GraphKind, sigma: StructureMap, terms: LinComb<Partition, C>) -> Result<Self> {
        let bad: Vec<String> = terms
            .terms()
            .filter(|p| &p.range() != sigma.carrier())
            .map(|p| format!("term {p} does not cover the carrier {}", sigma.carrier()))
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidGraph(bad));
        }
        Ok(GraphLinComb { kind, sigma, terms })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn sigma(&self) -> &StructureMap {
        &self.sigma
    }

    pub fn terms(&self) -> &LinComb<Partition, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn graphs(&self) -> impl Iterator<Item = (Graph, &C)> + '_ {
        self.terms.iter().map(|(p, c)| (Graph::new(self.kind, self.sigma.clone(), p.clone()), c))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        if self.sigma != other.sigma || self.kind != other.kind {
            return Err(Error::KindMismatch("combinations over different structure maps".into()));
        }
        Ok(GraphLinComb { kind: self.kind, sigma: self.sigma.clone(), terms: &self.terms - &other.terms })
    }
}

/// `g ∘ h`: [`insert_graph`] summed over every vertex of `g` and every map.
pub fn compose_graphs<C: Coefficient>(g: &Graph, h: &Graph) -> Result<GraphLinComb<C>> {
    if g.kind() != h.kind() {
        return Err(Error::KindMismatch(format!("{} vs {}", g.kind().name(), h.kind().name())));
    }
    let sigma = g.sigma().disjoint_union(h.sigma())?;
    if g.vertices().is_empty() || h.vertices().is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut terms = LinComb::zero();
    for a in 0..g.vertices().len() {
        for map in enumerate_insertions(g.vertices(), a, h.vertices())? {
            let glued = insert_graph(g, a, h, &map)?;
            debug_assert_eq!(glued.sigma(), &sigma);
            terms.add_term(glued.vertices().clone(), C::one());
        }
    }
    GraphLinComb::new(g.kind(), sigma, terms)
}

/// `[g, h] = g ∘ h − h ∘ g` over the glued structure map.
pub fn bracket_graphs<C: Coefficient>(g: &Graph, h: &Graph) -> Result<GraphLinComb<C>> {
    compose_graphs(g, h)?.difference(&compose_graphs(h, g)?)
}
