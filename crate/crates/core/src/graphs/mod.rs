//! Graphs encoded as partitions of half-edges.
//!
//! A vertex is a block of half-edges and a structure map `σ` pairs
//! half-edges into lines; fixed points of `σ` are external legs. Feynman
//! diagrams allow external legs, ordinary graphs do not, and admissible
//! graphs split the vertices into two types with lines oriented out of the
//! first type.

mod ops;

use std::fmt;

use crate::atom::Atom;
use crate::block::Block;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::union_find::UnionFind;

pub use ops::{
    bracket_graphs, compose_graphs, connected_components, insert_admissible, insert_graph,
    internal_half_edges, quotient_admissible, quotient_disconnected, quotient_graph, subgraph,
    subgraph_admissible, AdmissibleInsertion, AdmissibleInternal, GraphLinComb,
};

/// An involution on a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StructureMap {
    carrier: Block,
    image: Vec<Atom>,
}

impl StructureMap {
    pub fn identity(carrier: Block) -> Self {
        let image = carrier.atoms().to_vec();
        StructureMap { carrier, image }
    }

    /// The involution on `carrier` swapping each listed pair and fixing
    /// every other atom.
    pub fn new<I: IntoIterator<Item = (Atom, Atom)>>(carrier: Block, pairs: I) -> Result<Self> {
        let mut map = Self::identity(carrier);
        for (a, b) in pairs {
            if a == b {
                return Err(Error::InvalidStructureMap(format!("{a} is paired with itself")));
            }
            for e in [a, b] {
                let i = map.index(e).ok_or_else(|| {
                    Error::InvalidStructureMap(format!("{e} is not in the carrier {}", map.carrier))
                })?;
                if map.image[i] != e {
                    return Err(Error::InvalidStructureMap(format!("{e} is paired twice")));
                }
            }
            let (i, j) = (map.index(a).unwrap(), map.index(b).unwrap());
            map.image[i] = b;
            map.image[j] = a;
        }
        Ok(map)
    }

    fn index(&self, e: Atom) -> Option<usize> {
        self.carrier.atoms().binary_search(&e).ok()
    }

    pub fn carrier(&self) -> &Block {
        &self.carrier
    }

    pub fn get(&self, e: Atom) -> Option<Atom> {
        self.index(e).map(|i| self.image[i])
    }

    /// `σ(e)`; panics if `e` is outside the carrier.
    pub fn apply(&self, e: Atom) -> Atom {
        self.get(e).unwrap_or_else(|| panic!("{e} is outside the carrier"))
    }

    pub fn fixed_points(&self) -> Block {
        self.carrier.iter().zip(&self.image).filter(|(e, s)| e == *s).map(|(e, _)| e).collect()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.carrier.iter().zip(&self.image).all(|(e, s)| e != *s)
    }

    /// The 2-cycles, each as `(smaller, larger)`, sorted.
    pub fn pairs(&self) -> Vec<(Atom, Atom)> {
        self.carrier.iter().zip(self.image.iter().copied()).filter(|(e, s)| e < s).collect()
    }

    /// `σ(b)` for `b` inside the carrier.
    pub fn image_of(&self, b: &Block) -> Block {
        b.iter().map(|e| self.apply(e)).collect()
    }

    /// Atoms of `b` whose partner also lies in `b`, i.e. `σ(b) ∩ b`.
    pub fn closed_part(&self, b: &Block) -> Block {
        b.iter().filter(|&e| b.contains(self.apply(e))).collect()
    }

    /// Restriction to a subset closed under `σ`.
    pub fn restrict(&self, sub: &Block) -> Result<StructureMap> {
        if !sub.is_subset(&self.carrier) {
            return Err(Error::InvalidStructureMap(format!("{sub} is not inside the carrier {}", self.carrier)));
        }
        let image: Vec<Atom> = sub.iter().map(|e| self.apply(e)).collect();
        if let Some(e) = image.iter().find(|s| !sub.contains(**s)) {
            return Err(Error::InvalidStructureMap(format!("{sub} is not closed: it misses {e}")));
        }
        Ok(StructureMap { carrier: sub.clone(), image })
    }

    /// Restriction to `sub` where pairs leaving `sub` become fixed points.
    pub fn sever(&self, sub: &Block) -> StructureMap {
        let image = sub
            .iter()
            .map(|e| {
                let s = self.apply(e);
                if sub.contains(s) {
                    s
                } else {
                    e
                }
            })
            .collect();
        StructureMap { carrier: sub.clone(), image }
    }

    pub fn disjoint_union(&self, other: &StructureMap) -> Result<StructureMap> {
        let shared = self.carrier.intersection(&other.carrier);
        if !shared.is_empty() {
            return Err(Error::RangesNotDisjoint(shared));
        }
        let pairs = self.pairs().into_iter().chain(other.pairs());
        StructureMap::new(self.carrier.union(&other.carrier), pairs)
    }
}

impl fmt::Display for StructureMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return write!(f, "id");
        }
        for (a, b) in pairs {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

/// External legs and internal lines of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lines {
    pub external: Block,
    /// `(start, end)` pairs. Unoriented graphs list the smaller atom first.
    pub internal: Vec<(Atom, Atom)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphKind {
    Feynman,
    Ordinary,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Feynman => "feynman",
            GraphKind::Ordinary => "ordinary",
        }
    }
}

/// A Feynman diagram or ordinary graph: a structure map together with a
/// partition of its carrier into vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    kind: GraphKind,
    sigma: StructureMap,
    vertices: Partition,
}

fn range_violation(vertices: &Block, carrier: &Block) -> Option<String> {
    (vertices != carrier).then(|| format!("vertex range {vertices} differs from carrier {carrier}"))
}

/// Whether the blocks form one component when joined through `σ`.
fn joined(blocks: &[&Block], sigma: &StructureMap) -> bool {
    components(blocks, sigma).len() <= 1
}

/// Groups of block indices connected through `σ`-pairs.
pub(crate) fn components(blocks: &[&Block], sigma: &StructureMap) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(blocks.len());
    let owner = |e: Atom| blocks.iter().position(|b| b.contains(e));
    for (i, b) in blocks.iter().enumerate() {
        for e in b.iter() {
            if let Some(j) = sigma.get(e).and_then(owner) {
                uf.union(i, j);
            }
        }
    }
    uf.groups()
}

impl Graph {
    /// Assembles a graph without checking it; see [`Graph::validate`].
    pub fn new(kind: GraphKind, sigma: StructureMap, vertices: Partition) -> Self {
        Graph { kind, sigma, vertices }
    }

    pub fn checked(kind: GraphKind, sigma: StructureMap, vertices: Partition) -> Result<Self> {
        let g = Graph::new(kind, sigma, vertices);
        g.require_valid()?;
        Ok(g)
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn sigma(&self) -> &StructureMap {
        &self.sigma
    }

    pub fn vertices(&self) -> &Partition {
        &self.vertices
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(range_violation(&self.vertices.range(), self.sigma.carrier()));
        if self.kind == GraphKind::Ordinary {
            let fixed = self.sigma.fixed_points();
            if !fixed.is_empty() {
                out.push(format!("fixed point in ordinary graph: {fixed}"));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(v))
        }
    }

    pub fn lines(&self) -> Result<Lines> {
        self.require_valid()?;
        Ok(Lines { external: self.sigma.fixed_points(), internal: self.sigma.pairs() })
    }

    pub fn is_connected(&self) -> Result<bool> {
        self.require_valid()?;
        let blocks: Vec<&Block> = self.vertices.blocks().iter().collect();
        Ok(joined(&blocks, &self.sigma))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[σ={}; {}]", self.kind.name(), self.sigma, self.vertices)
    }
}

/// A graph with first-type and second-type vertices. Lines run from a
/// first-type half-edge to its partner.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleGraph {
    sigma: StructureMap,
    first_type: Partition,
    second_type: Partition,
}

impl AdmissibleGraph {
    pub fn new(sigma: StructureMap, first_type: Partition, second_type: Partition) -> Self {
        AdmissibleGraph { sigma, first_type, second_type }
    }

    pub fn checked(sigma: StructureMap, first_type: Partition, second_type: Partition) -> Result<Self> {
        let g = AdmissibleGraph::new(sigma, first_type, second_type);
        g.require_valid()?;
        Ok(g)
    }

    pub fn sigma(&self) -> &StructureMap {
        &self.sigma
    }

    pub fn first_type(&self) -> &Partition {
        &self.first_type
    }

    pub fn second_type(&self) -> &Partition {
        &self.second_type
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (i_range, j_range) = (self.first_type.range(), self.second_type.range());
        let shared = i_range.intersection(&j_range);
        if !shared.is_empty() {
            out.push(format!("first-type and second-type ranges share {shared}"));
        }
        out.extend(range_violation(&i_range.union(&j_range), self.sigma.carrier()));
        if !out.is_empty() {
            return out;
        }
        let fixed = self.sigma.fixed_points();
        if !fixed.is_empty() {
            out.push(format!("fixed point in admissible graph: {fixed}"));
        }
        let firsts = self.first_type.blocks();
        let seconds = self.second_type.blocks();
        let images: Vec<Block> = firsts.iter().map(|b| self.sigma.image_of(b)).collect();
        for (i, (b, img)) in firsts.iter().zip(&images).enumerate() {
            if img.meets(b) {
                out.push(format!("tadpole at first-type vertex {b}"));
            }
            for other in &firsts[i + 1..] {
                if img.intersection(other).len() > 1 {
                    out.push(format!("multiple edges between first-type vertices {b} and {other}"));
                }
            }
            for s in seconds {
                if img.intersection(s).len() > 1 {
                    out.push(format!("multiple edges between first-type vertex {b} and second-type vertex {s}"));
                }
            }
        }
        for (j, s) in seconds.iter().enumerate() {
            let img = self.sigma.image_of(s);
            for other in &seconds[j..] {
                if img.meets(other) {
                    out.push(format!("edge between second-type vertices {s} and {other}"));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(v))
        }
    }

    /// Lines oriented out of the first type; a line between two first-type
    /// vertices starts at its smaller half-edge.
    pub fn lines(&self) -> Result<Lines> {
        self.require_valid()?;
        let i_range = self.first_type.range();
        let mut internal: Vec<(Atom, Atom)> = self
            .sigma
            .pairs()
            .into_iter()
            .map(|(a, b)| if i_range.contains(a) { (a, b) } else { (b, a) })
            .collect();
        internal.sort_unstable();
        Ok(Lines { external: Block::empty(), internal })
    }

    fn all_vertices(&self) -> Vec<&Block> {
        self.first_type.blocks().iter().chain(self.second_type.blocks()).collect()
    }

    pub fn is_connected(&self) -> Result<bool> {
        self.require_valid()?;
        Ok(joined(&self.all_vertices(), &self.sigma))
    }
}

impl fmt::Display for AdmissibleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "admissible[σ={}; {} | {}]", self.sigma, self.first_type, self.second_type)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(carrier: &[u32], pairs: &[(u32, u32)]) -> StructureMap {
        StructureMap::new(Block::of(carrier), pairs.iter().map(|&(a, b)| (Atom(a), Atom(b)))).unwrap()
    }

    pub(super) fn wedge() -> AdmissibleGraph {
        AdmissibleGraph::new(sigma(&[1, 2, 3, 4], &[(1, 3), (2, 4)]), Partition::of(&[&[1, 2]]), Partition::of(&[&[3], &[4]]))
    }

    #[test]
    fn structure_map_basics() {
        let s = sigma(&[1, 2, 3, 4, 5], &[(1, 2), (4, 3)]);
        assert_eq!(s.apply(Atom(3)), Atom(4));
        assert_eq!(s.fixed_points(), Block::of(&[5]));
        assert_eq!(s.pairs(), vec![(Atom(1), Atom(2)), (Atom(3), Atom(4))]);
        assert!(StructureMap::new(Block::of(&[1, 2, 3]), [(Atom(1), Atom(2)), (Atom(2), Atom(3))]).is_err());
        assert!(StructureMap::new(Block::of(&[1, 2]), [(Atom(1), Atom(7))]).is_err());
        assert!(s.restrict(&Block::of(&[1, 3])).is_err());
        assert_eq!(s.sever(&Block::of(&[1, 3, 4])).pairs(), vec![(Atom(3), Atom(4))]);
    }

    #[test]
    fn validate_examples() {
        let g = Graph::new(GraphKind::Feynman, sigma(&[1, 2, 3], &[(1, 2)]), Partition::of(&[&[1, 3], &[2]]));
        assert!(g.is_valid());
        let g = Graph::new(GraphKind::Ordinary, sigma(&[1, 2, 3], &[(1, 2)]), Partition::of(&[&[1, 3], &[2]]));
        assert_eq!(g.validate(), vec!["fixed point in ordinary graph: {3}".to_string()]);
        assert!(wedge().is_valid());

        let double = AdmissibleGraph::new(
            sigma(&[1, 2, 3, 4], &[(1, 3), (2, 4)]),
            Partition::of(&[&[1, 2]]),
            Partition::of(&[&[3, 4]]),
        );
        assert_eq!(double.validate().len(), 1);
        let tadpole = AdmissibleGraph::new(sigma(&[1, 2], &[(1, 2)]), Partition::of(&[&[1, 2]]), Partition::empty());
        assert!(tadpole.validate()[0].starts_with("tadpole"));
    }

    #[test]
    fn lines_examples() {
        let g = Graph::new(GraphKind::Feynman, sigma(&[1, 2, 3, 4, 5, 6], &[(1, 2), (3, 4)]), Partition::of(&[&[1, 2, 3, 4, 5, 6]]));
        let lines = g.lines().unwrap();
        assert_eq!(lines.external, Block::of(&[5, 6]));
        assert_eq!(lines.internal, vec![(Atom(1), Atom(2)), (Atom(3), Atom(4))]);
        let lines = wedge().lines().unwrap();
        assert_eq!(lines.internal, vec![(Atom(1), Atom(3)), (Atom(2), Atom(4))]);
        let flipped = AdmissibleGraph::new(
            sigma(&[1, 2, 3, 4], &[(1, 3), (2, 4)]),
            Partition::of(&[&[3, 4]]),
            Partition::of(&[&[1], &[2]]),
        );
        assert_eq!(flipped.lines().unwrap().internal, vec![(Atom(3), Atom(1)), (Atom(4), Atom(2))]);
    }

    #[test]
    fn connectivity_examples() {
        let edge = Graph::new(GraphKind::Ordinary, sigma(&[1, 2], &[(1, 2)]), Partition::of(&[&[1], &[2]]));
        assert!(edge.is_connected().unwrap());
        let apart = Graph::new(GraphKind::Feynman, sigma(&[1, 2], &[]), Partition::of(&[&[1], &[2]]));
        assert!(!apart.is_connected().unwrap());
        let triangle = Graph::new(
            GraphKind::Ordinary,
            sigma(&[1, 2, 3, 4, 5, 6], &[(1, 2), (3, 4), (5, 6)]),
            Partition::of(&[&[1, 6], &[2, 3], &[4, 5]]),
        );
        assert!(triangle.is_connected().unwrap());
        assert!(wedge().is_connected().unwrap());
    }
}
