use std::fmt::Write;

use serde::Serialize;

use super::IntersectionGraph;

/// How nodes are labelled in DOT output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    Index,
    #[default]
    Ideal,
}

/// Graphviz text for `g`, nodes in vertex order and edges sorted.
pub fn export_dot(g: &IntersectionGraph, labels: LabelMode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", escape(&g.spec().to_string()));
    for i in 0..g.vertex_count() {
        let label = match labels {
            LabelMode::Index => i.to_string(),
            LabelMode::Ideal => g.label(i),
        };
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON form of a graph: labels, edge list and adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub spec: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<u8>>,
}

impl GraphJson {
    pub fn new(g: &IntersectionGraph) -> Self {
        let n = g.vertex_count();
        GraphJson {
            spec: g.spec().to_string(),
            vertices: (0..n).map(|i| g.label(i)).collect(),
            edges: g.edges(),
            adjacency: (0..n)
                .map(|i| (0..n).map(|j| u8::from(g.adjacent(i, j))).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::rings::parse_ring_spec;

    fn dot(s: &str, mode: LabelMode) -> String {
        let g = IntersectionGraph::build(&parse_ring_spec(s).unwrap(), &Caps::default()).unwrap();
        export_dot(&g, mode)
    }

    fn count(text: &str, pat: &str) -> usize {
        text.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn node_and_edge_counts() {
        let z12 = dot("Z12", LabelMode::Ideal);
        assert_eq!(count(&z12, "[label="), 4);
        assert_eq!(count(&z12, " -- "), 4);
        assert!(z12.contains("label=\"(m^1, F)\""));
        let z16 = dot("Z16", LabelMode::Index);
        assert_eq!((count(&z16, "[label="), count(&z16, " -- ")), (3, 3));
        assert_eq!(dot("GF(2)", LabelMode::Ideal), "graph \"GF(2)\" {\n}\n");
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            dot("vs(3,2) x GF(2)", LabelMode::Ideal),
            dot("vs(3,2) x GF(2)", LabelMode::Ideal)
        );
    }
}
