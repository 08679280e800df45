//! Graphs of circle bundles: description, `.gob` parsing, validation and
//! the red/blue coloring.
//!
//! ```text
//! # two bundles glued along one torus
//! vertex v genus 1
//! vertex w genus 1
//! edge e v w n 0
//! loop k v m 2
//! ```
//!
//! Gluings may also be given as a full matrix, `edge e v w matrix 1 n 0 1`;
//! only the upper unitriangular form is accepted.

mod fixtures;
mod generate;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use fixtures::{fixtures, free_abelian, genus_vertex, integers, suite_graphs, trivial_group, two_vertex, Fixture};
pub use generate::{
    defining_relators, generate_restricted, generate_system, lambda_word, n_w, omega_word, BundlePresentation,
    GeneratedAlphabet, LoopLetters,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

/// A non-loop edge with gluing matrix `(1 twist; 0 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub a: String,
    pub b: String,
    pub twist: i64,
}

/// A loop with gluing matrix `(1 twist; 0 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub id: String,
    pub vertex: String,
    pub twist: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BundleGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub loops: Vec<Loop>,
}

fn check_matrix(id: &str, [k, n, k2, n2]: [i64; 4]) -> Result<i64> {
    if (k, k2, n2) == (1, 0, 1) {
        Ok(n)
    } else {
        Err(Error::UnsupportedGluing { id: id.to_string(), k, n, k2, n2 })
    }
}

impl BundleGraph {
    pub fn new() -> BundleGraph {
        BundleGraph::default()
    }

    pub fn vertex(mut self, id: &str, genus: u32) -> BundleGraph {
        self.vertices.push(Vertex { id: id.into(), genus });
        self
    }

    pub fn edge(mut self, id: &str, a: &str, b: &str, twist: i64) -> BundleGraph {
        self.edges.push(Edge { id: id.into(), a: a.into(), b: b.into(), twist });
        self
    }

    pub fn add_loop(mut self, id: &str, vertex: &str, twist: i64) -> BundleGraph {
        self.loops.push(Loop { id: id.into(), vertex: vertex.into(), twist });
        self
    }

    /// Adds an edge from its gluing matrix `(k n; k' n')`.
    pub fn edge_with_matrix(self, id: &str, a: &str, b: &str, matrix: [i64; 4]) -> Result<BundleGraph> {
        let twist = check_matrix(id, matrix)?;
        Ok(self.edge(id, a, b, twist))
    }

    pub fn loop_with_matrix(self, id: &str, vertex: &str, matrix: [i64; 4]) -> Result<BundleGraph> {
        let twist = check_matrix(id, matrix)?;
        Ok(self.add_loop(id, vertex, twist))
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Parses the `.gob` format.
    pub fn from_gob(text: &str) -> Result<BundleGraph> {
        let mut graph = BundleGraph::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(format!("expected an integer, found `{s}`")));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let matrix = |rest: &[&str]| -> Result<[i64; 4]> {
                match rest {
                    [k, n, k2, n2] => Ok([int(k)?, int(n)?, int(k2)?, int(n2)?]),
                    _ => Err(err("`matrix` takes four integers".into())),
                }
            };
            graph = match fields.as_slice() {
                ["vertex", id, "genus", g] => {
                    let genus = int(g)?;
                    let genus = u32::try_from(genus).map_err(|_| Error::UnsupportedGenus {
                        vertex: id.to_string(),
                        genus,
                    })?;
                    graph.vertex(id, genus)
                }
                ["edge", id, a, b, "n", n] => graph.edge(id, a, b, int(n)?),
                ["edge", id, a, b, "matrix", rest @ ..] => graph.edge_with_matrix(id, a, b, matrix(rest)?)?,
                ["loop", id, v, "m", m] => graph.add_loop(id, v, int(m)?),
                ["loop", id, v, "matrix", rest @ ..] => graph.loop_with_matrix(id, v, matrix(rest)?)?,
                _ => return Err(err(format!("unrecognized line `{line}`"))),
            };
        }
        Ok(graph)
    }

    pub fn to_gob(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {} genus {}\n", v.id, v.genus));
        }
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {} n {}\n", e.id, e.a, e.b, e.twist));
        }
        for l in &self.loops {
            out.push_str(&format!("loop {} {} m {}\n", l.id, l.vertex, l.twist));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Vertex colors plus the blue-to-red orientation of every non-loop edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Indexed like `graph.vertices`.
    pub colors: Vec<Color>,
    /// `(blue vertex, red vertex)` indices, indexed like `graph.edges`.
    pub orientation: Vec<(usize, usize)>,
}

impl Coloring {
    pub fn color(&self, vertex: usize) -> Color {
        self.colors[vertex]
    }
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.contains(['.', '^']) || id.chars().any(char::is_whitespace) {
        Err(Error::InvalidId(id.to_string()))
    } else {
        Ok(())
    }
}

fn check_unique<'a>(kind: &'static str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for id in ids {
        check_id(id)?;
        if !seen.insert(id) {
            return Err(Error::DuplicateId { kind, id: id.to_string() });
        }
    }
    Ok(())
}

/// Validates the graph and colors it with the first vertex blue.
pub fn validate_and_color(graph: &BundleGraph) -> Result<Coloring> {
    validate_and_color_rooted(graph, Color::Blue)
}

/// Validates the graph and 2-colors it by breadth-first alternation from the
/// first declared vertex, which receives `root`.
pub fn validate_and_color_rooted(graph: &BundleGraph, root: Color) -> Result<Coloring> {
    if graph.vertices.is_empty() {
        return Err(Error::EmptyGraph);
    }
    check_unique("vertex", graph.vertices.iter().map(|v| v.id.as_str()))?;
    check_unique("edge", graph.edges.iter().map(|e| e.id.as_str()))?;
    check_unique("loop", graph.loops.iter().map(|l| l.id.as_str()))?;
    if let Some(v) = graph.vertices.iter().find(|v| v.genus == 0) {
        return Err(Error::UnsupportedGenus { vertex: v.id.clone(), genus: 0 });
    }

    let index: HashMap<&str, usize> = graph.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));
    for l in &graph.loops {
        lookup(&l.vertex)?;
    }

    // Union-find detects the first edge that closes a cycle.
    let n = graph.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut adjacency = vec![Vec::new(); n];
    let mut ends = Vec::with_capacity(graph.edges.len());
    for e in &graph.edges {
        let (a, b) = (lookup(&e.a)?, lookup(&e.b)?);
        if a == b {
            return Err(Error::SelfEdge(e.id.clone()));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::NotATree(e.id.clone()));
        }
        parent[ra] = rb;
        adjacency[a].push(b);
        adjacency[b].push(a);
        ends.push((a, b));
    }

    let mut colors: Vec<Option<Color>> = vec![None; n];
    colors[0] = Some(root);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let next = colors[u].expect("queued vertices are colored").other();
        for &w in &adjacency[u] {
            if colors[w].is_none() {
                colors[w] = Some(next);
                queue.push_back(w);
            }
        }
    }
    if let Some(i) = colors.iter().position(Option::is_none) {
        return Err(Error::Disconnected(graph.vertices[i].id.clone()));
    }
    let colors: Vec<Color> = colors.into_iter().map(Option::unwrap).collect();
    let orientation = ends
        .into_iter()
        .map(|(a, b)| if colors[a] == Color::Blue { (a, b) } else { (b, a) })
        .collect();
    Ok(Coloring { colors, orientation })
}
