//! Barge-Diamond and Anderson-Putnam complexes as labelled directed graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{admitted_words, WordSet};
use crate::word::{Letter, Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexKind {
    #[serde(rename = "BD")]
    BargeDiamond,
    #[serde(rename = "BD-subcomplex")]
    BargeDiamondSubcomplex,
    #[serde(rename = "AP")]
    AndersonPutnam,
}

/// Vertex of a complex. `name` is the stable export identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// Directed labelled multigraph with deterministic vertex and edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexGraph {
    pub kind: ComplexKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl ComplexGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        uf.count()
    }

    /// First Betti number `E - V + k`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components() - self.vertices.len()
    }

    /// Subgraph on the given edges and their endpoints, keeping the relative order.
    pub fn edge_subgraph(&self, kind: ComplexKind, edges: &BTreeSet<usize>) -> (ComplexGraph, Vec<usize>) {
        let used: BTreeSet<usize> = edges.iter().flat_map(|&e| [self.edges[e].source, self.edges[e].target]).collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let vertices = used.iter().map(|&v| self.vertices[v].clone()).collect();
        let new_edges = edges
            .iter()
            .map(|&e| {
                let old = &self.edges[e];
                Edge { source: remap[&old.source], target: remap[&old.target], label: old.label.clone() }
            })
            .collect();
        (ComplexGraph { kind, vertices, edges: new_edges }, edges.iter().copied().collect())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

fn in_vertex(i: usize) -> Vertex {
    Vertex { name: format!("p{i}"), label: format!("v{i}+") }
}

fn out_vertex(i: usize) -> Vertex {
    Vertex { name: format!("m{i}"), label: format!("v{i}-") }
}

/// The Barge-Diamond complex: `v_i^+ → v_i^-` for each letter, `v_i^- → v_j^+` for each admitted `ij`.
pub fn barge_diamond(sub: &Substitution) -> Result<ComplexGraph> {
    let l2 = admitted_words(sub, 2)?;
    Ok(barge_diamond_from_words(sub.len(), &l2))
}

fn barge_diamond_from_words(l: usize, l2: &WordSet) -> ComplexGraph {
    let vertices = (0..l).flat_map(|i| [in_vertex(i), out_vertex(i)]).collect();
    let mut edges: Vec<Edge> = (0..l)
        .map(|i| Edge { source: 2 * i, target: 2 * i + 1, label: Word::letter(i as Letter).render() })
        .collect();
    for w in l2.iter() {
        let (i, j) = (w[0] as usize, w[1] as usize);
        edges.push(Edge { source: 2 * i + 1, target: 2 * j, label: w.render() });
    }
    ComplexGraph { kind: ComplexKind::BargeDiamond, vertices, edges }
}

/// Vertex and edge maps between two graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Transition subcomplex `S`, the induced morphism, and its eventual range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BdEventualRange {
    pub subcomplex: ComplexGraph,
    pub morphism: GraphMorphism,
    pub eventual_range: ComplexGraph,
    /// Connected components `k` of the eventual range.
    pub components: usize,
    /// `m = E - V + k` of the eventual range.
    pub rank: usize,
}

pub fn bd_subcomplex_and_eventual_range(sub: &Substitution) -> Result<BdEventualRange> {
    let l = sub.len();
    let l2 = admitted_words(sub, 2)?;
    let bd = barge_diamond_from_words(l, &l2);
    let transitions: BTreeSet<usize> = (l..bd.edges.len()).collect();
    let (s, _) = bd.edge_subgraph(ComplexKind::BargeDiamondSubcomplex, &transitions);

    let first = |i: usize| sub.image(i as Letter)[0] as usize;
    let last = |i: usize| *sub.image(i as Letter).last().unwrap() as usize;
    let edge_map = s
        .edges
        .iter()
        .map(|e| {
            let w = Word::parse(&e.label).expect("edge labels are words");
            let image = Word::new(vec![last(w[0] as usize) as Letter, first(w[1] as usize) as Letter]);
            s.edge_index(&image.render())
                .ok_or_else(|| Error::Internal(format!("transition [{}] maps outside the subcomplex", e.label)))
        })
        .collect::<Result<Vec<_>>>()?;
    let vertex_map = s
        .vertices
        .iter()
        .map(|v| {
            let i: usize = v.name[1..].parse().expect("vertex names carry the letter");
            let name = if v.name.starts_with('p') { format!("p{}", first(i)) } else { format!("m{}", last(i)) };
            s.vertex_index(&name)
                .ok_or_else(|| Error::Internal(format!("vertex {} maps outside the subcomplex", v.label)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut current: BTreeSet<usize> = (0..s.edges.len()).collect();
    loop {
        let next: BTreeSet<usize> = current.iter().map(|&e| edge_map[e]).collect();
        if next == current {
            break;
        }
        current = next;
    }
    let (mut er, _) = s.edge_subgraph(ComplexKind::BargeDiamondSubcomplex, &current);
    er.kind = ComplexKind::BargeDiamondSubcomplex;
    let components = er.components();
    let rank = er.cycle_rank();
    Ok(BdEventualRange {
        subcomplex: s,
        morphism: GraphMorphism { vertex_map, edge_map },
        eventual_range: er,
        components,
        rank,
    })
}

/// The modified Anderson-Putnam complex: vertices `L²`, edges `L³`, `[ijk]` from `v_ij` to `v_jk`.
pub fn anderson_putnam(sub: &Substitution) -> Result<ComplexGraph> {
    let l2 = admitted_words(sub, 2)?;
    let l3 = admitted_words(sub, 3)?;
    Ok(anderson_putnam_from_words(&l2, &l3))
}

pub(crate) fn anderson_putnam_from_words(l2: &WordSet, l3: &WordSet) -> ComplexGraph {
    let vertices = l2
        .iter()
        .map(|w| Vertex { name: format!("w{}", w.render()), label: w.render() })
        .collect();
    let edges = l3
        .iter()
        .map(|w| Edge {
            source: l2.index_of(&w[0..2]).expect("factors of admitted words are admitted"),
            target: l2.index_of(&w[1..3]).expect("factors of admitted words are admitted"),
            label: w.render(),
        })
        .collect();
    ComplexGraph { kind: ComplexKind::AndersonPutnam, vertices, edges }
}

/// Image of each AP edge `[ijk]` under the collared substitution, as edge indices:
/// the length-3 windows of `last(φ(i)) · φ(j) · first(φ(k))`.
pub fn collared_substitution_on_edges(sub: &Substitution, ap: &ComplexGraph) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&str, usize> = ap.edges.iter().enumerate().map(|(i, e)| (e.label.as_str(), i)).collect();
    ap.edges
        .iter()
        .map(|e| {
            let w = Word::parse(&e.label)?;
            let mut collared = vec![*sub.image(w[0]).last().unwrap()];
            collared.extend_from_slice(sub.image(w[1]));
            collared.push(sub.image(w[2])[0]);
            collared
                .windows(3)
                .map(|t| {
                    let label = Word::from(t).render();
                    index.get(label.as_str()).copied().ok_or_else(|| {
                        Error::Internal(format!("collared image of [{}] contains non-admitted [{label}]", e.label))
                    })
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Dot,
    Tikz,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "tikz" => Ok(GraphFormat::Tikz),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn export_graph(g: &ComplexGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => to_dot(g),
        GraphFormat::Tikz => {
            let mut s = String::from(
                "\\documentclass[tikz,border=4pt]{standalone}\n\\usetikzlibrary{arrows.meta}\n\\begin{document}\n",
            );
            s.push_str(&tikz_picture(g));
            s.push_str("\\end{document}\n");
            s
        }
    }
}

fn graph_title(kind: ComplexKind) -> &'static str {
    match kind {
        ComplexKind::BargeDiamond => "BD",
        ComplexKind::BargeDiamondSubcomplex => "BDsub",
        ComplexKind::AndersonPutnam => "AP",
    }
}

pub fn to_dot(g: &ComplexGraph) -> String {
    let mut s = format!("digraph {} {{\n", graph_title(g.kind));
    for v in &g.vertices {
        let _ = writeln!(s, "  {} [label=\"{}\"];", v.name, v.label);
    }
    for e in &g.edges {
        let _ = writeln!(
            s,
            "  {} -> {} [label=\"{}\"];",
            g.vertices[e.source].name, g.vertices[e.target].name, e.label
        );
    }
    s.push_str("}\n");
    s
}

fn tikz_vertex_label(g: &ComplexGraph, v: &Vertex) -> String {
    match g.kind {
        ComplexKind::AndersonPutnam => format!("${}$", v.label),
        _ => {
            let sign = if v.name.starts_with('p') { "+" } else { "-" };
            format!("$v_{{{}}}^{{{sign}}}$", &v.name[1..])
        }
    }
}

/// A `tikzpicture` environment with vertices evenly spaced on a circle.
pub fn tikz_picture(g: &ComplexGraph) -> String {
    let n = g.vertices.len().max(1);
    let radius = if n <= 4 { 2.0 } else { 0.6 * n as f64 };
    let mut s = String::from(
        "\\begin{tikzpicture}[>=Stealth, vertex/.style={circle, draw, inner sep=1.5pt, font=\\small}, \
         lbl/.style={font=\\scriptsize, fill=white, inner sep=1pt}]\n",
    );
    for (i, v) in g.vertices.iter().enumerate() {
        let angle = 90.0 - 360.0 * i as f64 / n as f64;
        let _ = writeln!(
            s,
            "  \\node[vertex] ({}) at ({:.2}:{:.2}cm) {{{}}};",
            v.name,
            angle,
            radius,
            tikz_vertex_label(g, v)
        );
    }
    for e in &g.edges {
        let (a, b) = (&g.vertices[e.source].name, &g.vertices[e.target].name);
        if e.source == e.target {
            let _ = writeln!(s, "  \\draw[->] ({a}) to[loop above] node[lbl] {{{}}} ({a});", e.label);
        } else {
            let _ = writeln!(s, "  \\draw[->] ({a}) to[bend left=15] node[lbl] {{{}}} ({b});", e.label);
        }
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}
