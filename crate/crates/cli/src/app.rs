//! Argument definitions and dispatch.

use std::fs;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partcalc::coalgebra::{coproduct, coproduct_tuple, reduced_coproduct, reduced_coproduct_tuple};
use partcalc::graphs::{
    bracket_graphs, connected_components, insert_admissible, insert_graph, quotient_admissible, quotient_disconnected,
    subgraph, subgraph_admissible, AdmissibleInsertion,
};
use partcalc::lie::{bracket, compose, compose_at, jacobi_defect, signed_jacobi_defect};
use partcalc::partition::{adjust, insert, quotient, restrict};
use partcalc::{Block, InsertionMap, Interner, LinComb, OrderedPartition, Partition, Rational};
use serde_json::{json, Value};

use crate::document::{parse_all, print, Comb, Document, Printer};
use crate::dot;
use crate::error::CliError;
use crate::suites::{self, Config, SUITES};

#[derive(Debug, Parser)]
#[command(name = "partcalc", version, about = "Partial set partitions: quotients, insertions, coproducts, brackets and graphs")]
pub struct Cli {
    /// Read the primary document from FILE ("-" for stdin) instead of -p/-g.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and print its canonical form.
    Canon {
        #[arg(short)]
        p: Option<String>,
    },
    /// Divide P by its restriction to B.
    Quotient {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        b: String,
    },
    /// Restrict P to B.
    Restrict {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        b: String,
    },
    /// Insert Q into block A of P along MAP, or along every map when MAP is omitted.
    Insert {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        a: usize,
        #[arg(short)]
        q: String,
        /// JSON object from atoms of block A to block indices of Q.
        #[arg(long)]
        map: Option<String>,
    },
    /// The admissible family with the same quotient as F.
    Adjust {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        f: String,
    },
    /// Coproduct of a partition or tuple.
    Coproduct {
        #[arg(short)]
        p: Option<String>,
        /// Drop the two boundary terms.
        #[arg(long)]
        reduced: bool,
    },
    /// Insertion composition P ∘ Q.
    Compose {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        q: String,
    },
    /// Lie bracket [P, Q].
    Bracket {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        q: String,
    },
    /// Jacobi sum [P,[Q,S]] + [Q,[S,P]] + [S,[P,Q]].
    Jacobi {
        #[arg(short)]
        p: Option<String>,
        #[arg(short)]
        q: String,
        #[arg(short)]
        s: String,
        /// Use the signed bracket, blocks in canonical order.
        #[arg(long)]
        signed: bool,
    },
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Run an identity suite, or `all`.
    Check(CheckArgs),
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Subgraph on the selected vertices.
    Subgraph(Selection),
    /// Contract the subgraph on the selected vertices.
    Quotient(Selection),
    /// Insert graph H into vertex A of G.
    Insert {
        #[arg(short)]
        g: Option<String>,
        #[arg(short = 'H', long = "guest")]
        h: String,
        #[arg(short)]
        a: usize,
        #[arg(long)]
        map: String,
        /// Admissible graphs: second-type vertex receiving the guest's second-type vertices.
        #[arg(long)]
        second_site: Option<usize>,
        #[arg(long, requires = "second_site")]
        second_map: Option<String>,
    },
    /// Lie bracket of two graphs.
    Bracket {
        #[arg(short)]
        g: Option<String>,
        #[arg(short = 'H', long = "guest")]
        h: String,
    },
    /// Graphviz rendering.
    Dot {
        #[arg(short)]
        g: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct Selection {
    #[arg(short)]
    pub g: Option<String>,
    /// Vertex indices in canonical order (first-type vertices for admissible graphs).
    #[arg(long, value_delimiter = ',')]
    pub select: Vec<usize>,
    /// Second-type vertex indices, admissible graphs only.
    #[arg(long, value_delimiter = ',')]
    pub second: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Suite name or `all`.
    pub suite: String,
    #[arg(long, default_value_t = 4)]
    pub max_atoms: usize,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, env = "PARTCALC_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub max_half_edges: usize,
    /// Include elapsed times, which makes output vary between runs.
    #[arg(long)]
    pub timings: bool,
}

/// Text to emit, the process exit code, and an optional note for stderr.
pub struct Output {
    pub text: String,
    pub code: i32,
    pub warning: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0, warning: None }
    }
}

struct Session {
    docs: Vec<Document>,
    interner: Interner,
}

impl Session {
    fn printer(&self) -> Printer<'_> {
        Printer::new(&self.interner)
    }
}

fn primary(inline: Option<&String>, cli: &Cli, stdin: &mut dyn FnMut() -> io::Result<String>) -> Result<String, CliError> {
    match (inline, &cli.input) {
        (Some(text), _) => Ok(text.clone()),
        (None, Some(path)) if path.as_os_str() == "-" => Ok(stdin()?),
        (None, Some(path)) => Ok(fs::read_to_string(path)?),
        (None, None) => Ok(stdin()?),
    }
}

fn load(first: String, rest: &[Option<&String>]) -> Result<Session, CliError> {
    let mut texts = vec![first.as_str()];
    texts.extend(rest.iter().flatten().map(|s| s.as_str()));
    let (docs, interner) = parse_all(&texts)?;
    Ok(Session { docs, interner })
}

fn wrong(what: &str, doc: &Document) -> CliError {
    CliError::Validation(format!("expected {what}, got a {} document", doc.kind()))
}

fn partition(doc: &Document) -> Result<&Partition, CliError> {
    match doc {
        Document::Partition(p) => Ok(p),
        other => Err(wrong("a partition", other)),
    }
}

fn block(doc: &Document) -> Result<Block, CliError> {
    match doc {
        Document::Block(b) => Ok(b.clone()),
        Document::Partition(p) if p.is_empty() => Ok(Block::empty()),
        other => Err(wrong("a block (array of atoms)", other)),
    }
}

fn map(doc: &Document) -> Result<InsertionMap, CliError> {
    match doc {
        Document::Map(m) => Ok(InsertionMap::from_pairs(m.iter().copied())),
        other => Err(wrong("an insertion map (object from atoms to indices)", other)),
    }
}

fn graph_doc(doc: &Document, pr: &Printer, format: Format) -> Result<String, CliError> {
    match (doc, format) {
        (Document::Graph(g), Format::Dot) => dot::graph(g, pr),
        (Document::Admissible(g), Format::Dot) => dot::admissible(g, pr),
        (_, Format::Dot) => Err(CliError::Usage("--format dot applies to graph outputs only".into())),
        (doc, Format::Json) => Ok(print(&pr.document(doc))),
    }
}

fn json_only(cli: &Cli) -> Result<(), CliError> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Dot => Err(CliError::Usage("--format dot applies to graph outputs only".into())),
    }
}

fn ordered_comb(pr: &Printer, c: &LinComb<OrderedPartition, Rational>) -> Value {
    pr.comb(c, |p| Value::Array(p.blocks().iter().map(|b| pr.block(b)).collect()))
}

pub fn execute(cli: &Cli, stdin: &mut dyn FnMut() -> io::Result<String>) -> Result<Output, CliError> {
    if let Command::Check(args) = &cli.command {
        json_only(cli)?;
        return check(args);
    }
    if let Command::Graph(g) = &cli.command {
        return graph_command(g, cli, stdin);
    }
    json_only(cli)?;
    let (inline, rest): (Option<&String>, Vec<Option<&String>>) = match &cli.command {
        Command::Canon { p } => (p.as_ref(), vec![]),
        Command::Quotient { p, b } | Command::Restrict { p, b } => (p.as_ref(), vec![Some(b)]),
        Command::Insert { p, q, map, .. } => (p.as_ref(), vec![Some(q), map.as_ref()]),
        Command::Adjust { p, f } => (p.as_ref(), vec![Some(f)]),
        Command::Coproduct { p, .. } => (p.as_ref(), vec![]),
        Command::Compose { p, q } | Command::Bracket { p, q } => (p.as_ref(), vec![Some(q)]),
        Command::Jacobi { p, q, s, .. } => (p.as_ref(), vec![Some(q), Some(s)]),
        Command::Graph(_) | Command::Check(_) => unreachable!(),
    };
    let s = load(primary(inline, cli, stdin)?, &rest)?;
    let pr = s.printer();
    let d = &s.docs;
    let value = match &cli.command {
        Command::Canon { .. } => pr.document(&d[0]),
        Command::Quotient { .. } => {
            let r = quotient(partition(&d[0])?, &block(&d[1])?)?;
            json!({ "partition": pr.partition(&r.partition), "ideal_part": pr.block(&r.ideal_part), "trivial": r.trivial })
        }
        Command::Restrict { .. } => pr.partition(&restrict(partition(&d[0])?, &block(&d[1])?)?),
        Command::Insert { a, map: m, .. } => {
            let (p, q) = (partition(&d[0])?, partition(&d[1])?);
            match m {
                Some(_) => pr.partition(&insert(p, *a, q, &map(&d[2])?)?),
                None => pr.comb(&compose_at::<Rational>(p, *a, q)?, |t| pr.partition(t)),
            }
        }
        Command::Adjust { .. } => pr.partition(&adjust(partition(&d[0])?, partition(&d[1])?)?),
        Command::Coproduct { reduced, .. } => {
            let c = match (&d[0], reduced) {
                (Document::Partition(p), false) => coproduct::<Rational>(p),
                (Document::Partition(p), true) => reduced_coproduct::<Rational>(p),
                (Document::Tuple(t), false) => coproduct_tuple::<Rational>(t),
                (Document::Tuple(t), true) => reduced_coproduct_tuple::<Rational>(t),
                (other, _) => return Err(wrong("a partition or tuple", other)),
            };
            pr.comb(&c, |t| pr.tensor(t))
        }
        Command::Compose { .. } => pr.comb(&compose::<Rational>(partition(&d[0])?, partition(&d[1])?)?, |t| pr.partition(t)),
        Command::Bracket { .. } => pr.comb(&bracket::<Rational>(partition(&d[0])?, partition(&d[1])?)?, |t| pr.partition(t)),
        Command::Jacobi { signed, .. } => {
            let (p, q, r) = (partition(&d[0])?, partition(&d[1])?, partition(&d[2])?);
            if *signed {
                let o = |x: &Partition| OrderedPartition::from(x.clone());
                ordered_comb(&pr, &signed_jacobi_defect::<Rational>(&o(p), &o(q), &o(r))?)
            } else {
                pr.comb(&jacobi_defect::<Rational>(p, q, r)?, |t| pr.partition(t))
            }
        }
        Command::Graph(_) | Command::Check(_) => unreachable!(),
    };
    Ok(Output::ok(print(&value)))
}

fn graph_command(
    cmd: &GraphCommand,
    cli: &Cli,
    stdin: &mut dyn FnMut() -> io::Result<String>,
) -> Result<Output, CliError> {
    let (inline, rest): (Option<&String>, Vec<Option<&String>>) = match cmd {
        GraphCommand::Subgraph(sel) | GraphCommand::Quotient(sel) => (sel.g.as_ref(), vec![]),
        GraphCommand::Insert { g, h, map, second_map, .. } => (g.as_ref(), vec![Some(h), Some(map), second_map.as_ref()]),
        GraphCommand::Bracket { g, h } => (g.as_ref(), vec![Some(h)]),
        GraphCommand::Dot { g } => (g.as_ref(), vec![]),
    };
    let s = load(primary(inline, cli, stdin)?, &rest)?;
    let pr = s.printer();
    let d = &s.docs;
    let result = match (cmd, &d[0]) {
        (GraphCommand::Dot { .. }, doc @ (Document::Graph(_) | Document::Admissible(_))) => {
            return Ok(Output::ok(graph_doc(doc, &pr, Format::Dot)?));
        }
        (GraphCommand::Subgraph(sel), Document::Graph(g)) => {
            no_second(sel)?;
            Document::Graph(subgraph(g, &sel.select)?)
        }
        (GraphCommand::Subgraph(sel), Document::Admissible(g)) => {
            Document::Admissible(subgraph_admissible(g, &sel.select, &sel.second)?)
        }
        (GraphCommand::Quotient(sel), Document::Graph(g)) => {
            no_second(sel)?;
            let comps = connected_components(g, &sel.select)?;
            Document::Graph(quotient_disconnected(g, &comps)?)
        }
        (GraphCommand::Quotient(sel), Document::Admissible(g)) => {
            let (q, _) = quotient_admissible(g, &sel.select, &sel.second)?;
            let violations = q.validate();
            let text = graph_doc(&Document::Admissible(q), &pr, cli.format)?;
            let warning = (!violations.is_empty())
                .then(|| json!({ "warning": "quotient is not an admissible graph", "violations": violations }).to_string());
            return Ok(Output { text, code: 0, warning });
        }
        (GraphCommand::Insert { a, second_site, .. }, Document::Graph(g)) => {
            if second_site.is_some() {
                return Err(CliError::Usage("--second-site applies to admissible graphs only".into()));
            }
            let Document::Graph(h) = &d[1] else { return Err(wrong("a graph of the same kind", &d[1])) };
            Document::Graph(insert_graph(g, *a, h, &map(&d[2])?)?)
        }
        (GraphCommand::Insert { a, second_site, .. }, Document::Admissible(g)) => {
            let Document::Admissible(h) = &d[1] else { return Err(wrong("an admissible graph", &d[1])) };
            let iota = map(&d[2])?;
            let mode = match second_site {
                Some(b) => {
                    let kappa = d.get(3).ok_or_else(|| CliError::Usage("--second-site needs --second-map".into()))?;
                    AdmissibleInsertion::Paired { a: *a, iota, b: *b, kappa: map(kappa)? }
                }
                None => AdmissibleInsertion::TrivialSecond { a: *a, iota },
            };
            Document::Admissible(insert_admissible(g, h, &mode)?)
        }
        (GraphCommand::Bracket { .. }, Document::Graph(g)) => {
            json_only(cli)?;
            let Document::Graph(h) = &d[1] else { return Err(wrong("a graph of the same kind", &d[1])) };
            Document::Comb(Comb::Graphs(bracket_graphs::<Rational>(g, h)?))
        }
        (_, other) => return Err(wrong("a Feynman or ordinary graph (or an admissible graph where supported)", other)),
    };
    Ok(Output::ok(graph_doc(&result, &pr, cli.format)?))
}

fn no_second(sel: &Selection) -> Result<(), CliError> {
    if sel.second.is_empty() {
        Ok(())
    } else {
        Err(CliError::Usage("--second applies to admissible graphs only".into()))
    }
}

fn check(args: &CheckArgs) -> Result<Output, CliError> {
    let cfg = Config {
        max_atoms: args.max_atoms,
        samples: args.samples,
        seed: args.seed,
        max_half_edges: args.max_half_edges,
        ..Config::default()
    };
    let reports = if args.suite == "all" {
        suites::run_all(&cfg)
    } else if suites::canonical_name(&args.suite).is_some() {
        vec![suites::run(&args.suite, &cfg)?]
    } else {
        return Err(CliError::Usage(format!("unknown suite {:?}; known: all, {}", args.suite, SUITES.join(", "))));
    };
    let passed = reports.iter().all(|r| r.passed());
    let body: Vec<Value> = reports.iter().map(|r| r.to_json(args.timings)).collect();
    let value = if args.suite == "all" { json!({ "passed": passed, "suites": body }) } else { body[0].clone() };
    let text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
    Ok(Output { text, code: if passed { 0 } else { 3 }, warning: None })
}
