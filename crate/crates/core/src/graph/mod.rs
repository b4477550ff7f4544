//! The intersection graph of the nontrivial ideals of a ring, with
//! brute-force oracles for the graph properties under study.

mod dot;
mod oracles;

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{check_cap, Result};
use crate::rings::{nontrivial_ideals, Ideal, RingSpec};

pub use dot::{export_dot, GraphJson, LabelMode};
pub use oracles::{
    cycle_spectrum_oracle, find_cycle_of_length, find_induced_claw, find_induced_cycle,
    hamiltonian_oracle, InducedClaw,
};

/// Square bit matrix with one packed row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Rows as single words; only meaningful when `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        (0..self.n)
            .map(|i| self.row(i).first().copied().unwrap_or(0))
            .collect()
    }

    /// Symmetric matrix from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = BitMatrix::new(n);
        for &(a, b) in edges {
            m.set(a, b);
            m.set(b, a);
        }
        m
    }
}

/// `Γ(R)`: vertices are the nontrivial ideals, edges join ideals with a
/// nonzero intersection.
#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    spec: RingSpec,
    vertices: Vec<Ideal>,
    adjacency: BitMatrix,
    index: HashMap<Ideal, usize>,
}

impl IntersectionGraph {
    /// Builds `Γ(spec)`. A ring without nontrivial ideals gives the empty
    /// graph.
    pub fn build(spec: &RingSpec, caps: &Caps) -> Result<Self> {
        check_cap("vertex count", spec.nontrivial_count(), caps.graph as u128)?;
        let vertices = nontrivial_ideals(spec, caps.ideals)?;
        let n = vertices.len();
        let mut adjacency = BitMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i].meets(&vertices[j])? {
                    adjacency.set(i, j);
                    adjacency.set(j, i);
                }
            }
        }
        let index = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(IntersectionGraph {
            spec: spec.clone(),
            vertices,
            adjacency,
            index,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn vertices(&self) -> &[Ideal] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency.get(i, j)
    }

    pub fn index_of(&self, ideal: &Ideal) -> Option<usize> {
        self.index.get(ideal).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency
            .row(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&j| self.adjacent(i, j))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|i| self.degree(i))
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent(i, j))
            .collect()
    }

    pub fn label(&self, i: usize) -> String {
        self.vertices[i].label()
    }

    pub fn compute_properties(&self) -> PropertyRecord {
        compute_properties(self)
    }

    pub fn validate_cycle(&self, w: &CycleWitness) -> std::result::Result<(), CycleDefect> {
        validate_cycle(self, w)
    }
}

pub fn build_intersection_graph(spec: &RingSpec, caps: &Caps) -> Result<IntersectionGraph> {
    IntersectionGraph::build(spec, caps)
}

/// Boolean graph properties, each computed by direct inspection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub is_complete: bool,
    pub is_regular: bool,
    pub is_star: bool,
    pub is_bipartite: bool,
    pub has_pendant: bool,
    pub is_triangle_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub flags: Flags,
    pub pendant_vertices: Vec<usize>,
}

impl PropertyRecord {
    /// The shape of the graph in the vocabulary of the triangle-free
    /// classification.
    pub fn shape(&self) -> Shape {
        let v = self.vertex_count;
        if v == 0 {
            Shape::Empty
        } else if !self.flags.is_triangle_free {
            Shape::HasTriangle
        } else if v == 1 {
            Shape::SingleVertex
        } else if v == 2 {
            if self.edge_count == 1 {
                Shape::Edge
            } else {
                Shape::TwoIsolated
            }
        } else if self.flags.is_star {
            Shape::Star { leaves: v - 1 }
        } else {
            Shape::OtherTriangleFree
        }
    }
}

/// Coarse graph shape. Triangle-free intersection graphs should only ever be
/// one of the first five.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Empty,
    SingleVertex,
    Edge,
    Star { leaves: usize },
    TwoIsolated,
    HasTriangle,
    OtherTriangleFree,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Empty => f.write_str("empty"),
            Shape::SingleVertex => f.write_str("single_vertex"),
            Shape::Edge => f.write_str("edge"),
            Shape::Star { leaves } => write!(f, "star({leaves})"),
            Shape::TwoIsolated => f.write_str("two_isolated"),
            Shape::HasTriangle => f.write_str("has_triangle"),
            Shape::OtherTriangleFree => f.write_str("other_triangle_free"),
        }
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn compute_properties(g: &IntersectionGraph) -> PropertyRecord {
    let n = g.vertex_count();
    let degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let edge_count = degrees.iter().sum::<usize>() / 2;
    let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
    let is_complete = degrees.iter().all(|&d| d + 1 == n);
    let pendant_vertices: Vec<usize> = (0..n).filter(|&i| degrees[i] == 1).collect();
    // A star has a center adjacent to everything else and no other edges.
    let is_star = n >= 2 && edge_count == n - 1 && degrees.iter().any(|&d| d == n - 1);

    let mut is_triangle_free = true;
    'scan: for i in 0..n {
        for j in i + 1..n {
            if !g.adjacent(i, j) {
                continue;
            }
            for k in j + 1..n {
                if g.adjacent(i, k) && g.adjacent(j, k) {
                    is_triangle_free = false;
                    break 'scan;
                }
            }
        }
    }

    PropertyRecord {
        vertex_count: n,
        edge_count,
        degrees,
        flags: Flags {
            is_complete,
            is_regular,
            is_star,
            is_bipartite: two_colorable(g),
            has_pendant: !pendant_vertices.is_empty(),
            is_triangle_free,
        },
        pendant_vertices,
    }
}

fn two_colorable(g: &IntersectionGraph) -> bool {
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// A vertex sequence read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycleWitness {
    #[serde(rename = "cycle")]
    pub vertex_indices: Vec<usize>,
}

impl CycleWitness {
    pub fn new(vertex_indices: Vec<usize>) -> Self {
        CycleWitness { vertex_indices }
    }

    pub fn len(&self) -> usize {
        self.vertex_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_indices.is_empty()
    }

    pub fn labels(&self, g: &IntersectionGraph) -> Vec<String> {
        self.vertex_indices.iter().map(|&i| g.label(i)).collect()
    }
}

/// Why a sequence is not a cycle of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CycleDefect {
    TooShort { len: usize },
    OutOfRange { index: usize },
    Repeated { index: usize },
    NotAdjacent { from: usize, to: usize },
}

impl fmt::Display for CycleDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleDefect::TooShort { len } => write!(f, "cycle of length {len} is shorter than 3"),
            CycleDefect::OutOfRange { index } => write!(f, "vertex {index} is out of range"),
            CycleDefect::Repeated { index } => write!(f, "vertex {index} appears twice"),
            CycleDefect::NotAdjacent { from, to } => {
                write!(f, "vertices {from} and {to} are not adjacent")
            }
        }
    }
}

pub fn validate_cycle(
    g: &IntersectionGraph,
    w: &CycleWitness,
) -> std::result::Result<(), CycleDefect> {
    let seq = &w.vertex_indices;
    if seq.len() < 3 {
        return Err(CycleDefect::TooShort { len: seq.len() });
    }
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n {
            return Err(CycleDefect::OutOfRange { index: v });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(CycleDefect::Repeated { index: v });
        }
    }
    for (i, &a) in seq.iter().enumerate() {
        let b = seq[(i + 1) % seq.len()];
        if !g.adjacent(a, b) {
            return Err(CycleDefect::NotAdjacent { from: a, to: b });
        }
    }
    Ok(())
}

pub fn is_valid_cycle(g: &IntersectionGraph, w: &CycleWitness) -> bool {
    validate_cycle(g, w).is_ok()
}
