//! Executable forms of the identities the constructions satisfy. Each
//! checker returns the failed identities for one instance; an empty list
//! means every identity held.

use std::fmt;

use crate::block::Block;
use crate::coalgebra::{double_quotient_matches, reduced_coproduct};
use crate::enumerate::{insertion_maps, partial_partitions, subsets};
use crate::error::Result;
use crate::graphs::{
    self, bracket_graphs, compose_graphs, connected_components, insert_graph, internal_half_edges,
    quotient_admissible, quotient_disconnected, quotient_graph, subgraph, subgraph_admissible, AdmissibleGraph,
    Graph,
};
use crate::lie::{self, i_part, insertions_commute, prelie_sides};
use crate::partition::{
    adjust, canonical_reinsert, factor_quotient, insert, is_admissible, iterated_quotient, merge_witness,
    quotient, restrict, touched_range, trivial_insert, tuple_quotient, Partition, PartitionTuple,
};

/// A named identity that did not hold, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

#[derive(Default)]
struct Ledger(Vec<Failure>);

impl Ledger {
    fn eq<T: PartialEq + fmt::Display>(&mut self, law: &'static str, context: &dyn fmt::Display, lhs: &T, rhs: &T) {
        if lhs != rhs {
            self.0.push(Failure { law, detail: format!("{context}: {lhs} ≠ {rhs}") });
        }
    }

    fn holds(&mut self, law: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Failure { law, detail: detail() });
        }
    }

    fn error(&mut self, law: &'static str, context: &dyn fmt::Display, e: crate::Error) {
        self.0.push(Failure { law, detail: format!("{context}: unexpected error {e}") });
    }

    fn run(&mut self, law: &'static str, context: &dyn fmt::Display, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            self.error(law, context, e);
        }
    }
}

struct Ctx<'a>(&'a str, Vec<&'a dyn fmt::Display>);

impl fmt::Display for Ctx<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.0)?;
        for (i, x) in self.1.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn q(p: &Partition, b: &Block) -> Result<Partition> {
    Ok(quotient(p, b)?.partition)
}

/// Restriction and quotient laws for disjoint `b`, `c` inside `R(p)`.
pub fn quotient_laws(p: &Partition, b: &Block, c: &Block) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,B,C", vec![p, b, c]);
    l.run("quotient laws", &ctx, |l| {
        let range = p.range();
        let bc = b.union(c);
        let pb = q(p, b)?;
        let pc = q(p, c)?;
        l.eq("range law", &ctx, &pb.range(), &range.difference(b));
        l.eq("restriction transitivity", &ctx, &restrict(&restrict(p, &bc)?, c)?, &restrict(p, c)?);

        let lhs = restrict(&pb, c)?;
        let inner = quotient(&restrict(p, &bc)?, b)?;
        l.eq("restriction of a quotient", &ctx, &lhs, &inner.partition);
        l.eq("double quotient divisors", &ctx, &q(&pb, &lhs.range())?, &q(&pb, &inner.partition.range())?);

        let bc_first = q(&pb, c)?;
        let cb_first = q(&pc, b)?;
        l.eq("symmetric double quotient", &ctx, &bc_first, &cb_first);

        let target = restrict(p, &bc)?;
        if touched_range(p, b)?.is_disjoint(&touched_range(p, c)?) {
            l.eq("separate quotient keeps restriction", &ctx, &lhs, &restrict(p, c)?);
            l.eq("separate quotient keeps restriction", &ctx, &restrict(&pc, b)?, &restrict(p, b)?);
            l.eq("separate quotients commute", &ctx, &bc_first, &cb_first);
            l.eq("separate divisor agreement", &ctx, &inner.partition, &restrict(p, c)?);
            l.eq("separate reassembly", &ctx, &trivial_insert(&lhs, &restrict(p, b)?)?, &target);
        } else {
            l.eq("overlapping quotients merge", &ctx, &bc_first, &q(p, &bc)?);
        }
        let rebuilt = canonical_reinsert(&inner.partition, &restrict(p, b)?, b, &inner.reinsertion)?;
        l.eq("reassembly by reinsertion", &ctx, &rebuilt, &target);
        Ok(())
    });
    l.0
}

/// Reinserting the restriction into the quotient recovers `p`.
pub fn reinsertion_round_trip(p: &Partition, b: &Block) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,B", vec![p, b]);
    l.run("reinsertion round trip", &ctx, |l| {
        let r = quotient(p, b)?;
        let back = canonical_reinsert(&r.partition, &restrict(p, b)?, b, &r.reinsertion)?;
        l.eq("reinsertion round trip", &ctx, &back, p);
        Ok(())
    });
    l.0
}

/// Quotient and factorization both undo `insert(p, a, guest, map)`.
pub fn insertion_duality(p: &Partition, a: usize, guest: &Partition, map: &crate::InsertionMap) -> Vec<Failure> {
    let mut l = Ledger::default();
    let site = &p.blocks()[a];
    let ctx = Ctx("P,I_a,Q", vec![p, site, guest]);
    l.run("insertion duality", &ctx, |l| {
        let k = insert(p, a, guest, map)?;
        let gr = guest.range();
        l.eq("quotient undoes insertion", &ctx, &q(&k, &gr)?, p);
        l.eq("restriction recovers guest", &ctx, &restrict(&k, &gr)?, guest);
        let (host, a2, map2) = factor_quotient(&k, guest)?;
        l.eq("factorization recovers host", &ctx, &host, p);
        l.holds("factorization recovers site", a2 == a, || format!("{ctx}: site {a2} ≠ {a}"));
        l.holds("factorization recovers map", &map2 == map, || format!("{ctx}: {map2:?} ≠ {map:?}"));
        Ok(())
    });
    l.0
}

/// Adjustment preserves the quotient and yields an admissible family;
/// admissibility has its pointwise form; admissible families divide in any
/// order.
pub fn adjustment_laws(p: &Partition, f: &Partition) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,F", vec![p, f]);
    l.run("adjustment", &ctx, |l| {
        let adj = adjust(p, f)?;
        l.eq("adjustment preserves quotient", &ctx, &iterated_quotient(p, f.blocks())?, &iterated_quotient(p, adj.blocks())?);
        l.holds("adjustment is admissible", is_admissible(p, &adj)?, || format!("{ctx}: {adj}"));
        l.eq("adjustment is idempotent", &ctx, &adjust(p, &adj)?, &adj);
        l.eq("adjustment keeps range", &ctx, &adj.range(), &f.range());

        let admissible = is_admissible(p, f)?;
        let blocks = f.blocks();
        let mut pointwise = true;
        for (i, x) in blocks.iter().enumerate() {
            for (j, y) in blocks.iter().enumerate() {
                if i != j && touched_range(p, x)?.meets(y) {
                    pointwise = false;
                }
            }
        }
        l.holds("admissibility pointwise form", admissible == pointwise, || {
            format!("{ctx}: ranges say {admissible}, pointwise says {pointwise}")
        });
        if admissible {
            let forward = iterated_quotient(p, blocks)?;
            for perm in permutations(blocks.len()) {
                let order: Vec<Block> = perm.iter().map(|&i| blocks[i].clone()).collect();
                l.eq("admissible quotient order independence", &ctx, &iterated_quotient(p, &order)?, &forward);
            }
        }
        Ok(())
    });
    l.0
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// The three properties of the merged family for `j` admissible to `p` and
/// `k` admissible to `p / (j)`.
pub fn merge_witness_laws(p: &Partition, j: &Partition, k: &Partition) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,J,K", vec![p, j, k]);
    l.run("merge witness", &ctx, |l| {
        let m = merge_witness(p, j, k)?;
        l.holds("witness admissible", is_admissible(p, &m)?, || format!("{ctx}: M={m}"));
        let inside = j.blocks().iter().all(|jj| m.blocks().iter().any(|mm| jj.is_subset(mm)));
        l.holds("witness contains every J block", inside, || format!("{ctx}: M={m}"));

        let first = iterated_quotient(p, j.blocks())?;
        let lhs = PartitionTuple::new(k.blocks().iter().map(|kk| restrict(&first, kk)).collect::<Result<Vec<_>>>()?)?;
        let parts = m.blocks().iter().map(|mm| restrict(p, mm)).collect::<Result<Vec<_>>>()?;
        let rhs = tuple_quotient(&PartitionTuple::new(parts)?, j)?;
        l.eq("witness restrictions divide to K restrictions", &ctx, &lhs, &rhs);

        l.eq("witness reproduces double quotient", &ctx, &iterated_quotient(&first, k.blocks())?, &iterated_quotient(p, m.blocks())?);
        Ok(())
    });
    l.0
}

/// For every term of the reduced coproduct of `p` and every nonempty family
/// admissible to its right factor, the merged family reproduces the double
/// quotient.
pub fn coproduct_witness_laws(p: &Partition) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P", vec![p]);
    l.run("coproduct witness", &ctx, |l| {
        for term in reduced_coproduct::<i64>(p).terms() {
            let right = term.right().merged();
            for k in partial_partitions(&right.range()) {
                if k.is_empty() || !is_admissible(&right, &k)? {
                    continue;
                }
                let ok = double_quotient_matches(p, term.left(), &k)?;
                l.holds("coproduct witness", ok, || format!("{ctx}: term {term}, K={k}"));
            }
        }
        Ok(())
    });
    l.0
}

/// Insertions at two distinct blocks commute, for every pair of sites and
/// maps.
pub fn commutation_laws(p: &Partition, q2: &Partition, s: &Partition) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,Q,S", vec![p, q2, s]);
    l.run("insertions commute", &ctx, |l| {
        for a in 0..p.len() {
            for b in (0..p.len()).filter(|&b| b != a) {
                for iota in insertion_maps(&p.blocks()[a], q2.len()) {
                    for mu in insertion_maps(&p.blocks()[b], s.len()) {
                        let ok = insertions_commute(p, a, q2, &iota, b, s, &mu)?;
                        l.holds("insertions commute", ok, || format!("{ctx}: a={a} b={b} ι={iota:?} μ={mu:?}"));
                    }
                }
            }
        }
        Ok(())
    });
    l.0
}

/// The associator decomposition, symmetry of its block-of-`p` part, and
/// the multiplicity of a composition.
pub fn prelie_laws(p: &Partition, q2: &Partition, s: &Partition) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,Q,S", vec![p, q2, s]);
    l.run("pre-Lie", &ctx, |l| {
        let (lhs, rhs) = prelie_sides::<i64>(p, q2, s)?;
        l.eq("associator decomposition", &ctx, &lhs, &rhs);
        l.eq("associator symmetry", &ctx, &i_part::<i64>(p, q2, s)?, &i_part::<i64>(p, s, q2)?);
        let mass = lie::compose::<i64>(p, q2)?.mass();
        let expected: i64 = p.blocks().iter().map(|b| (q2.len() as i64).pow(b.len() as u32)).sum();
        l.holds("composition multiplicity", mass == expected, || format!("{ctx}: {mass} ≠ {expected}"));
        Ok(())
    });
    l.0
}

/// Jacobi identity and antisymmetry of the bracket.
pub fn jacobi_laws(p: &Partition, q2: &Partition, s: &Partition) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("P,Q,S", vec![p, q2, s]);
    l.run("jacobi", &ctx, |l| {
        let defect = lie::jacobi_defect::<crate::Rational>(p, q2, s)?;
        l.holds("jacobi", defect.is_zero(), || format!("{ctx}: defect {defect}"));
        let pq = lie::bracket::<i64>(p, q2)?;
        l.eq("antisymmetry", &ctx, &pq, &-&lie::bracket::<i64>(q2, p)?);
        Ok(())
    });
    l.0
}

/// Tallies from a graph sweep that are reported but are not failures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphTally {
    pub selections: usize,
    pub quotients: usize,
    pub invalid_quotients: usize,
}

impl std::ops::AddAssign for GraphTally {
    fn add_assign(&mut self, o: Self) {
        self.selections += o.selections;
        self.quotients += o.quotients;
        self.invalid_quotients += o.invalid_quotients;
    }
}

fn index_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u64 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

/// Subgraphs and quotients over every vertex selection of a valid graph:
/// outputs validate, quotients match the partition quotient, contracting a
/// connected subgraph keeps the graph connected, and disconnected
/// selections contract component by component in any order.
pub fn graph_laws(g: &Graph) -> (Vec<Failure>, GraphTally) {
    let mut l = Ledger::default();
    let mut tally = GraphTally::default();
    let ctx = Ctx("Γ", vec![g]);
    l.run("graph", &ctx, |l| {
        let lines = g.lines()?;
        let internal = 2 * lines.internal.len();
        l.holds("line count", internal + lines.external.len() == g.sigma().carrier().len(), || {
            format!("{ctx}: {} internal, {} external", lines.internal.len(), lines.external.len())
        });
        let connected = g.is_connected()?;
        for sel in index_subsets(g.vertices().len()) {
            tally.selections += 1;
            let sub = subgraph(g, &sel)?;
            l.holds("subgraph validates", sub.is_valid(), || format!("{ctx}: {sel:?} gives {sub}: {:?}", sub.validate()));
            if !connected {
                continue;
            }
            let removed = internal_half_edges(g, &sel)?;
            let expected = q(g.vertices(), &removed)?;
            if sub.is_connected()? {
                tally.quotients += 1;
                let quo = quotient_graph(g, &sel)?;
                l.holds("quotient validates", quo.is_valid(), || format!("{ctx}: {sel:?} gives {quo}"));
                l.eq("quotient matches partition quotient", &ctx, quo.vertices(), &expected);
                l.holds("quotient stays connected", quo.is_connected()?, || format!("{ctx}: {sel:?} gives {quo}"));
            } else {
                let comps = connected_components(g, &sel)?;
                let forward = quotient_disconnected(g, &comps)?;
                let mut reversed = comps.clone();
                reversed.reverse();
                let backward = quotient_disconnected(g, &reversed)?;
                l.eq("component contractions commute", &ctx, &forward, &backward);
                let ranges: Vec<Block> = comps.iter().map(|c| internal_half_edges(g, c)).collect::<Result<_>>()?;
                let stepwise = iterated_quotient(g.vertices(), &ranges)?;
                l.eq("disconnected quotient matches iterated quotient", &ctx, forward.vertices(), &stepwise);
                l.holds("disconnected quotient validates", forward.is_valid(), || format!("{ctx}: {sel:?}"));
            }
        }
        Ok(())
    });
    (l.0, tally)
}

/// Insertion, composition and bracket of two graphs agree with the
/// partition operations on their vertex sets.
pub fn graph_insertion_laws(g: &Graph, h: &Graph) -> Vec<Failure> {
    let mut l = Ledger::default();
    let ctx = Ctx("Γ,Γ'", vec![g, h]);
    l.run("graph insertion", &ctx, |l| {
        for a in 0..g.vertices().len() {
            for map in insertion_maps(&g.vertices().blocks()[a], h.vertices().len()) {
                let glued = insert_graph(g, a, h, &map)?;
                l.eq("insertion matches partition insertion", &ctx, glued.vertices(), &insert(g.vertices(), a, h.vertices(), &map)?);
                l.holds("insertion validates", glued.is_valid(), || format!("{ctx}: {glued}"));
            }
        }
        let composed = compose_graphs::<i64>(g, h)?;
        l.eq("composition matches", &ctx, composed.terms(), &lie::compose::<i64>(g.vertices(), h.vertices())?);
        let bracket = bracket_graphs::<crate::Rational>(g, h)?;
        let expected = lie::bracket::<crate::Rational>(g.vertices(), h.vertices())?;
        l.eq("bracket matches", &ctx, bracket.terms(), &expected);
        Ok(())
    });
    l.0
}

/// Subgraphs and quotients of an admissible graph over every selection
/// meeting the subgraph hypothesis.
pub fn admissible_laws(g: &AdmissibleGraph) -> (Vec<Failure>, GraphTally) {
    let mut l = Ledger::default();
    let mut tally = GraphTally::default();
    let ctx = Ctx("Γ", vec![g]);
    l.run("admissible graph", &ctx, |l| {
        let connected = g.is_connected()?;
        let lines = g.lines()?;
        let firsts = g.first_type().range();
        l.holds("lines start at first type", lines.internal.iter().all(|(s, _)| firsts.contains(*s)), || {
            format!("{ctx}: {:?}", lines.internal)
        });
        for ls in index_subsets(g.first_type().len()) {
            for ks in index_subsets(g.second_type().len()) {
                let sub = match subgraph_admissible(g, &ls, &ks) {
                    Ok(sub) => sub,
                    Err(crate::Error::BadSelection(_)) => continue,
                    Err(e) => return Err(e),
                };
                tally.selections += 1;
                l.holds("subgraph validates", sub.is_valid(), || format!("{ctx}: {ls:?}/{ks:?} gives {sub}: {:?}", sub.validate()));
                if !connected || !sub_connected(&sub) {
                    continue;
                }
                tally.quotients += 1;
                let (quo, parts) = quotient_admissible(g, &ls, &ks)?;
                l.eq("first type matches partition quotient", &ctx, quo.first_type(), &q(g.first_type(), &parts.first)?);
                l.eq("second type matches partition quotient", &ctx, quo.second_type(), &q(g.second_type(), &parts.second)?);
                let carrier = quo.first_type().range().union(&quo.second_type().range());
                l.eq("quotient carrier", &ctx, quo.sigma().carrier(), &carrier);
                if !quo.is_valid() {
                    tally.invalid_quotients += 1;
                }
            }
        }
        Ok(())
    });
    (l.0, tally)
}

fn sub_connected(sub: &AdmissibleGraph) -> bool {
    let blocks: Vec<&Block> = sub.first_type().blocks().iter().chain(sub.second_type().blocks()).collect();
    graphs::components(&blocks, sub.sigma()).len() <= 1
}

/// Every `(b, c)` of disjoint subsets of `R(p)`.
pub fn disjoint_pairs(p: &Partition) -> Vec<(Block, Block)> {
    let range = p.range();
    let mut out = Vec::new();
    for b in subsets(&range) {
        for c in subsets(&range.difference(&b)) {
            out.push((b.clone(), c));
        }
    }
    out
}
