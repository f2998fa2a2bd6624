//! Graphviz export. Vertices are named `v0, v1, …` in canonical block
//! order; external legs end at invisible point nodes `x0, x1, …`.

use std::fmt::Write;

use partcalc::{AdmissibleGraph, Atom, Block, Graph, Partition};

use crate::document::Printer;
use crate::error::CliError;

fn label(printer: &Printer, b: &Block) -> String {
    b.iter().map(|a| printer.atom(a)).collect::<Vec<_>>().join(" ")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct Layout<'a> {
    printer: &'a Printer<'a>,
    blocks: Vec<(&'a Block, &'static str)>,
}

impl Layout<'_> {
    fn vertex(&self, e: Atom) -> usize {
        self.blocks.iter().position(|(b, _)| b.contains(e)).expect("half-edge lies in a vertex")
    }

    fn render(&self, directed: bool, external: &Block, internal: &[(Atom, Atom)]) -> String {
        let (head, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
        let mut out = format!("{head} G {{\n");
        for (i, (b, shape)) in self.blocks.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [shape={shape}, label=\"{}\"];", escape(&label(self.printer, b)));
        }
        for (k, e) in external.iter().enumerate() {
            let _ = writeln!(out, "  x{k} [shape=point, style=invis];");
            let _ = writeln!(out, "  v{} {arrow} x{k} [label=\"{}\"];", self.vertex(e), escape(&self.printer.atom(e)));
        }
        for &(s, t) in internal {
            let name = format!("{} {}", self.printer.atom(s), self.printer.atom(t));
            let _ = writeln!(out, "  v{} {arrow} v{} [label=\"{}\"];", self.vertex(s), self.vertex(t), escape(&name));
        }
        out.push_str("}\n");
        out
    }
}

fn circles(p: &Partition) -> impl Iterator<Item = (&Block, &'static str)> {
    p.blocks().iter().map(|b| (b, "circle"))
}

/// Undirected DOT for a Feynman diagram or ordinary graph.
pub fn graph(g: &Graph, printer: &Printer) -> Result<String, CliError> {
    let lines = g.lines()?;
    let layout = Layout { printer, blocks: circles(g.vertices()).collect() };
    Ok(layout.render(false, &lines.external, &lines.internal))
}

/// Directed DOT for an admissible graph: first-type vertices are circles,
/// second-type vertices boxes.
pub fn admissible(g: &AdmissibleGraph, printer: &Printer) -> Result<String, CliError> {
    let lines = g.lines()?;
    let blocks = circles(g.first_type()).chain(g.second_type().blocks().iter().map(|b| (b, "box"))).collect();
    let layout = Layout { printer, blocks };
    Ok(layout.render(true, &lines.external, &lines.internal))
}
