//! JSON documents. Atoms are strings; every document handled by one command
//! shares an [`Interner`] built from all labels it mentions, so atom order
//! is the natural order of the labels.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use partcalc::coalgebra::Tensor;
use partcalc::{
    AdmissibleGraph, Atom, Block, Graph, GraphComb, GraphKind, Interner, LinComb, Partition, PartitionComb,
    PartitionTuple, Rational, StructureMap, TensorComb,
};
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Block(Block),
    Partition(Partition),
    Tuple(PartitionTuple),
    Graph(Graph),
    Admissible(AdmissibleGraph),
    Tensor(Tensor),
    /// Host atom to guest block index.
    Map(Vec<(Atom, usize)>),
    Comb(Comb),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Comb {
    Partitions(PartitionComb),
    Tensors(TensorComb),
    Graphs(GraphComb),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Block(_) => "block",
            Document::Partition(_) => "partition",
            Document::Tuple(_) => "tuple",
            Document::Graph(g) => g.kind().name(),
            Document::Admissible(_) => "admissible",
            Document::Tensor(_) => "tensor",
            Document::Map(_) => "map",
            Document::Comb(_) => "lincomb",
        }
    }
}

/// Label-level mirror of [`Document`], before atoms are interned.
#[derive(Clone, Debug)]
enum Raw {
    Block(Vec<String>),
    Partition(Vec<Vec<String>>),
    Tuple(Vec<Vec<Vec<String>>>),
    Graph {
        kind: Option<String>,
        sigma: Vec<(String, String)>,
        fixed: Vec<String>,
        vertices: Vec<Vec<String>>,
        second: Option<Vec<Vec<String>>>,
    },
    Tensor(Vec<Vec<Vec<Vec<String>>>>),
    Map(Vec<(String, usize)>),
    Comb(Vec<(Rational, Raw)>),
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Depth of the first string leaf, or `None` for an array holding no
/// strings at all.
fn leaf_depth(v: &Value) -> Option<usize> {
    match v {
        Value::String(_) => Some(0),
        Value::Array(items) => items.iter().find_map(leaf_depth).map(|d| d + 1),
        _ => None,
    }
}

fn nesting(v: &Value) -> usize {
    match v {
        Value::Array(items) => 1 + items.iter().map(nesting).max().unwrap_or(0),
        _ => 0,
    }
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>, CliError> {
    let items = v.as_array().ok_or_else(|| invalid(format!("{what} must be an array of atom strings")))?;
    items
        .iter()
        .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| invalid(format!("{what} must contain only strings"))))
        .collect()
}

fn blocks(v: &Value, what: &str) -> Result<Vec<Vec<String>>, CliError> {
    let items = v.as_array().ok_or_else(|| invalid(format!("{what} must be an array of blocks")))?;
    items.iter().map(|b| strings(b, what)).collect()
}

fn tuple(v: &Value) -> Result<Vec<Vec<Vec<String>>>, CliError> {
    let items = v.as_array().ok_or_else(|| invalid("tuple must be an array of partitions"))?;
    match leaf_depth(v) {
        Some(2) => Ok(vec![blocks(v, "partition")?]),
        Some(3) | None => items.iter().map(|p| blocks(p, "tuple component")).collect(),
        Some(_) => Err(invalid("tuple must nest three levels deep")),
    }
}

fn coefficient(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| invalid(format!("bad coefficient {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| invalid(format!("coefficient {n} is not an integer; use a \"n/d\" string"))),
        _ => Err(invalid("coefficient must be a \"n/d\" string")),
    }
}

fn raw(v: &Value) -> Result<Raw, CliError> {
    match v {
        Value::Array(items) => {
            if items.first().is_some_and(Value::is_object) {
                let terms = items
                    .iter()
                    .map(|t| {
                        let obj = t.as_object().ok_or_else(|| invalid("combination terms must be objects"))?;
                        let c = coefficient(obj.get("coeff").ok_or_else(|| invalid("term without \"coeff\""))?)?;
                        let term = raw(obj.get("term").ok_or_else(|| invalid("term without \"term\""))?)?;
                        Ok((c, term))
                    })
                    .collect::<Result<_, CliError>>()?;
                return Ok(Raw::Comb(terms));
            }
            match leaf_depth(v).unwrap_or_else(|| nesting(v).max(2)) {
                1 => Ok(Raw::Block(strings(v, "block")?)),
                2 => Ok(Raw::Partition(blocks(v, "partition")?)),
                3 => Ok(Raw::Tuple(tuple(v)?)),
                d => Err(invalid(format!("arrays nested {d} deep are not a document"))),
            }
        }
        Value::Object(obj) if obj.contains_key("tensor") => {
            let factors = obj["tensor"].as_array().ok_or_else(|| invalid("\"tensor\" must be an array of tuples"))?;
            Ok(Raw::Tensor(factors.iter().map(tuple).collect::<Result<_, _>>()?))
        }
        Value::Object(obj) if obj.contains_key("sigma") => graph(obj),
        Value::Object(obj) => obj
            .iter()
            .map(|(k, v)| {
                let j = v.as_u64().ok_or_else(|| invalid(format!("map value for {k:?} must be a block index")))?;
                Ok((k.clone(), j as usize))
            })
            .collect::<Result<_, _>>()
            .map(Raw::Map),
        _ => Err(invalid("expected an array or an object")),
    }
}

fn graph(obj: &Map<String, Value>) -> Result<Raw, CliError> {
    let known = ["kind", "sigma", "fixed", "vertices", "second_type"];
    if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(invalid(format!("unknown graph field {k:?}")));
    }
    let kind = match obj.get("kind") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(invalid("\"kind\" must be a string")),
    };
    let sigma = blocks(&obj["sigma"], "sigma")?
        .into_iter()
        .map(|pair| match <[String; 2]>::try_from(pair) {
            Ok([a, b]) => Ok((a, b)),
            Err(_) => Err(invalid("sigma entries must be pairs")),
        })
        .collect::<Result<_, _>>()?;
    let fixed = obj.get("fixed").map(|v| strings(v, "fixed")).transpose()?.unwrap_or_default();
    let vertices = blocks(obj.get("vertices").ok_or_else(|| invalid("graph without \"vertices\""))?, "vertices")?;
    let second = obj.get("second_type").map(|v| blocks(v, "second_type")).transpose()?;
    Ok(Raw::Graph { kind, sigma, fixed, vertices, second })
}

impl Raw {
    fn labels<'a>(&'a self, out: &mut Vec<&'a str>) {
        fn push<'a>(out: &mut Vec<&'a str>, bs: &'a [Vec<String>]) {
            out.extend(bs.iter().flatten().map(String::as_str));
        }
        match self {
            Raw::Block(b) => out.extend(b.iter().map(String::as_str)),
            Raw::Partition(p) => push(out, p),
            Raw::Tuple(t) => t.iter().for_each(|p| push(out, p)),
            Raw::Graph { sigma, fixed, vertices, second, .. } => {
                out.extend(sigma.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]));
                out.extend(fixed.iter().map(String::as_str));
                push(out, vertices);
                if let Some(s) = second {
                    push(out, s);
                }
            }
            Raw::Tensor(fs) => fs.iter().flatten().for_each(|p| push(out, p)),
            Raw::Map(m) => out.extend(m.iter().map(|(k, _)| k.as_str())),
            Raw::Comb(terms) => terms.iter().for_each(|(_, t)| t.labels(out)),
        }
    }

    fn build(&self, interner: &Interner) -> Result<Document, CliError> {
        let atom = |l: &String| interner.get(l).expect("label interned");
        let block = |b: &Vec<String>| -> Result<Block, CliError> {
            if b.is_empty() {
                return Err(invalid("empty block"));
            }
            let out = Block::new(b.iter().map(atom));
            if out.len() != b.len() {
                return Err(invalid(format!("repeated atom in block {b:?}")));
            }
            Ok(out)
        };
        let partition = |p: &Vec<Vec<String>>| -> Result<Partition, CliError> {
            Ok(Partition::new(p.iter().map(block).collect::<Result<Vec<_>, _>>()?)?)
        };
        let tuple = |t: &Vec<Vec<Vec<String>>>| -> Result<PartitionTuple, CliError> {
            Ok(PartitionTuple::new(t.iter().map(partition).collect::<Result<Vec<_>, _>>()?)?)
        };
        Ok(match self {
            Raw::Block(b) if b.is_empty() => Document::Block(Block::empty()),
            Raw::Block(b) => Document::Block(block(b)?),
            Raw::Partition(p) => Document::Partition(partition(p)?),
            Raw::Tuple(t) => Document::Tuple(tuple(t)?),
            Raw::Tensor(fs) => Document::Tensor(Tensor::new(fs.iter().map(tuple).collect::<Result<_, _>>()?)),
            Raw::Map(m) => {
                let mut pairs: Vec<(Atom, usize)> = m.iter().map(|(k, j)| (atom(k), *j)).collect();
                pairs.sort_unstable();
                Document::Map(pairs)
            }
            Raw::Graph { kind, sigma, fixed, vertices, second } => {
                let pairs: Vec<(Atom, Atom)> = sigma.iter().map(|(a, b)| (atom(a), atom(b))).collect();
                let mut carrier: Vec<Atom> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
                carrier.extend(fixed.iter().map(atom));
                let n = carrier.len();
                let carrier = Block::new(carrier);
                if carrier.len() != n {
                    return Err(invalid("a half-edge appears more than once in sigma and fixed"));
                }
                let sigma = StructureMap::new(carrier, pairs)?;
                let first = partition(vertices)?;
                let kind = match (kind.as_deref(), second) {
                    (Some("admissible") | None, Some(_)) => None,
                    (Some("admissible"), None) => return Err(invalid("admissible graph without \"second_type\"")),
                    (Some("feynman") | None, None) => Some(GraphKind::Feynman),
                    (Some("ordinary"), None) => Some(GraphKind::Ordinary),
                    (Some(k), _) => return Err(invalid(format!("unknown or inconsistent graph kind {k:?}"))),
                };
                match (kind, second) {
                    (Some(kind), _) => Document::Graph(Graph::checked(kind, sigma, first)?),
                    (None, Some(s)) => Document::Admissible(AdmissibleGraph::checked(sigma, first, partition(s)?)?),
                    (None, None) => unreachable!(),
                }
            }
            Raw::Comb(terms) => comb(terms.iter().map(|(c, t)| Ok((c.clone(), t.build(interner)?))))?,
        })
    }
}

fn comb(terms: impl Iterator<Item = Result<(Rational, Document), CliError>>) -> Result<Document, CliError> {
    let terms: Vec<(Rational, Document)> = terms.collect::<Result<_, _>>()?;
    let Some((_, first)) = terms.first() else {
        return Ok(Document::Comb(Comb::Partitions(LinComb::zero())));
    };
    let mixed = || invalid("combination terms must all be of one kind");
    Ok(Document::Comb(match first {
        Document::Partition(_) => Comb::Partitions(
            terms
                .into_iter()
                .map(|(c, d)| match d {
                    Document::Partition(p) => Ok((p, c)),
                    _ => Err(mixed()),
                })
                .collect::<Result<_, _>>()?,
        ),
        Document::Tensor(_) => Comb::Tensors(
            terms
                .into_iter()
                .map(|(c, d)| match d {
                    Document::Tensor(t) => Ok((t, c)),
                    _ => Err(mixed()),
                })
                .collect::<Result<_, _>>()?,
        ),
        Document::Graph(g) => {
            let (kind, sigma) = (g.kind(), g.sigma().clone());
            let terms = terms
                .into_iter()
                .map(|(c, d)| match d {
                    Document::Graph(h) if h.kind() == kind && h.sigma() == &sigma => Ok((h.vertices().clone(), c)),
                    Document::Graph(_) => Err(invalid("graph terms must share kind and sigma")),
                    _ => Err(mixed()),
                })
                .collect::<Result<_, _>>()?;
            Comb::Graphs(GraphComb::new(kind, sigma, terms)?)
        }
        other => return Err(invalid(format!("a combination cannot hold {} terms", other.kind()))),
    }))
}

fn syntax(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: {
            let full = e.to_string();
            full.rfind(" at line ").map_or(full.clone(), |i| full[..i].to_owned())
        },
    })
}

/// Parses several documents against one shared interner.
pub fn parse_all(texts: &[&str]) -> Result<(Vec<Document>, Interner), CliError> {
    let raws: Vec<Raw> = texts.iter().map(|t| syntax(t).and_then(|v| raw(&v))).collect::<Result<_, _>>()?;
    let mut labels = Vec::new();
    raws.iter().for_each(|r| r.labels(&mut labels));
    let interner = Interner::from_labels(labels);
    let docs = raws.iter().map(|r| r.build(&interner)).collect::<Result<_, _>>()?;
    Ok((docs, interner))
}

pub fn parse(text: &str) -> Result<(Document, Interner), CliError> {
    let (mut docs, interner) = parse_all(&[text])?;
    Ok((docs.remove(0), interner))
}

/// Renders atoms through an interner, or as their numeric ids.
#[derive(Clone, Copy)]
pub struct Printer<'a> {
    interner: Option<&'a Interner>,
}

impl<'a> Printer<'a> {
    pub fn new(interner: &'a Interner) -> Self {
        Printer { interner: Some(interner) }
    }

    pub const fn numeric() -> Self {
        Printer { interner: None }
    }

    pub fn atom(&self, a: Atom) -> String {
        match self.interner {
            Some(i) => i.label(a),
            None => a.0.to_string(),
        }
    }

    pub fn block(&self, b: &Block) -> Value {
        Value::Array(b.iter().map(|a| Value::String(self.atom(a))).collect())
    }

    pub fn partition(&self, p: &Partition) -> Value {
        Value::Array(p.blocks().iter().map(|b| self.block(b)).collect())
    }

    pub fn tuple(&self, t: &PartitionTuple) -> Value {
        Value::Array(t.parts().iter().map(|p| self.partition(p)).collect())
    }

    pub fn tensor(&self, t: &Tensor) -> Value {
        json!({ "tensor": t.factors().iter().map(|f| self.tuple(f)).collect::<Vec<_>>() })
    }

    fn sigma(&self, sigma: &StructureMap) -> (Value, Value) {
        let pairs = sigma.pairs().into_iter().map(|(a, b)| json!([self.atom(a), self.atom(b)])).collect();
        (Value::Array(pairs), self.block(&sigma.fixed_points()))
    }

    pub fn graph(&self, g: &Graph) -> Value {
        let (sigma, fixed) = self.sigma(g.sigma());
        json!({ "kind": g.kind().name(), "sigma": sigma, "fixed": fixed, "vertices": self.partition(g.vertices()) })
    }

    pub fn admissible(&self, g: &AdmissibleGraph) -> Value {
        let (sigma, fixed) = self.sigma(g.sigma());
        json!({
            "kind": "admissible",
            "sigma": sigma,
            "fixed": fixed,
            "vertices": self.partition(g.first_type()),
            "second_type": self.partition(g.second_type()),
        })
    }

    pub fn map(&self, m: &[(Atom, usize)]) -> Value {
        Value::Object(m.iter().map(|(a, j)| (self.atom(*a), json!(j))).collect())
    }

    pub fn comb<T: Ord>(&self, c: &LinComb<T, Rational>, term: impl Fn(&T) -> Value) -> Value {
        Value::Array(c.iter().map(|(t, k)| json!({ "coeff": coeff(k), "term": term(t) })).collect())
    }

    pub fn document(&self, d: &Document) -> Value {
        match d {
            Document::Block(b) => self.block(b),
            Document::Partition(p) => self.partition(p),
            Document::Tuple(t) => self.tuple(t),
            Document::Graph(g) => self.graph(g),
            Document::Admissible(g) => self.admissible(g),
            Document::Tensor(t) => self.tensor(t),
            Document::Map(m) => self.map(m),
            Document::Comb(Comb::Partitions(c)) => self.comb(c, |p| self.partition(p)),
            Document::Comb(Comb::Tensors(c)) => self.comb(c, |t| self.tensor(t)),
            Document::Comb(Comb::Graphs(c)) => Value::Array(
                c.graphs().map(|(g, k)| json!({ "coeff": coeff(k), "term": self.graph(&g) })).collect(),
            ),
        }
    }
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn coeff(c: &Rational) -> String {
    if c.denom().is_one() || c.is_zero() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Compact canonical JSON text.
pub fn print(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

/// Parses and reprints a document.
pub fn canonicalize(text: &str) -> Result<String, CliError> {
    let (doc, interner) = parse(text)?;
    Ok(print(&Printer::new(&interner).document(&doc)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_round_trip() {
        assert_eq!(canonicalize(r#"[["3"],["2","1"]]"#).unwrap(), r#"[["1","2"],["3"]]"#);
        assert_eq!(canonicalize(r#"[["10","9"]]"#).unwrap(), r#"[["9","10"]]"#);
        let (doc, _) = parse(r#"[["1","2"],["3"]]"#).unwrap();
        assert_eq!(doc, Document::Partition(Partition::of(&[&[0, 1], &[2]])));
    }

    #[test]
    fn feynman_example() {
        let (doc, _) = parse(r#"{"sigma":[["1","2"]],"fixed":["3"],"vertices":[["1","3"],["2"]]}"#).unwrap();
        let Document::Graph(g) = doc else { panic!("expected a graph") };
        assert_eq!(g.kind(), GraphKind::Feynman);
        assert!(g.is_valid());
    }

    #[test]
    fn validation_errors() {
        let err = parse(r#"[["1","2"],["2","3"]]"#).unwrap_err();
        assert!(matches!(err, CliError::Core(_)));
        assert!(err.to_string().contains("blocks not disjoint"), "{err}");
        assert!(matches!(parse(r#"[["1"],[]]"#), Err(CliError::Validation(_))));
        assert!(matches!(parse(r#"[["1","1"]]"#), Err(CliError::Validation(_))));
        let err = parse("[[\"1\"],\n  [\"2\"").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn coefficients() {
        let text = r#"[{"coeff":"1/2","term":[["1"]]},{"coeff":-1,"term":[["2"]]},{"coeff":"1/2","term":[["1"]]}]"#;
        assert_eq!(canonicalize(text).unwrap(), r#"[{"coeff":"1","term":[["1"]]},{"coeff":"-1","term":[["2"]]}]"#);
    }

    #[test]
    fn tuples_and_tensors() {
        let text = r#"{"tensor":[[[["2"]],[["1"]]],[]]}"#;
        assert_eq!(canonicalize(text).unwrap(), r#"{"tensor":[[[["1"]],[["2"]]],[]]}"#);
        assert_eq!(canonicalize(r#"[[["b"]],[["a"]]]"#).unwrap(), r#"[[["a"]],[["b"]]]"#);
    }

    #[test]
    fn admissible_round_trip() {
        let text = r#"{"kind":"admissible","sigma":[["p1","q"],["p2","r"]],"fixed":[],"vertices":[["p1","p2"]],"second_type":[["q"],["r"]]}"#;
        assert_eq!(canonicalize(text).unwrap(), text);
    }
}
