//! Index-based finite simple graphs and exact solvers for the invariants the
//! shift-graph family is known for: triangle-freeness, clique number, and
//! chromatic number. Subgraph monomorphism is provided for small patterns.
//!
//! Vertices are `0..vertex_count`. Adjacency is stored as one bitset row per
//! vertex, which keeps the branch-and-bound searches cheap for the graph
//! sizes these solvers are meant for (a few thousand vertices at most).

mod bits;
mod chromatic;
mod clique;
mod monomorphism;

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, ParseErrorKind, Result};

pub use chromatic::{chromatic_number, chromatic_number_with_budget, DEFAULT_NODE_BUDGET};
pub use clique::{clique_number, degeneracy_order};
pub use monomorphism::{find_monomorphism, VertexMapping, MAX_PATTERN_VERTICES};

pub(crate) use bits::BitSet;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    /// Attaches one label per vertex. Labels must be unique.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate label {l:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter_ones(self.row(v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    /// Labels carry over.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            if u >= self.n {
                return Err(Error::InvalidArgument(format!("vertex {u} out of range")));
            }
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b)?;
                }
            }
        }
        if let Some(labels) = &self.labels {
            g = g.with_labels(vertices.iter().map(|&v| labels[v].clone()).collect())?;
        }
        Ok(g)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| !bits::intersects(self.row(u), self.row(v)))
    }

    /// Line-based edge list: `p <vertex_count>` then `e <u> <v>` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let malformed = || Error::parse(line_no, ParseErrorKind::Malformed(line.to_string()));
            match parts.next() {
                Some("p") => {
                    if graph.is_some() {
                        return Err(malformed());
                    }
                    let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                    if parts.next().is_some() {
                        return Err(malformed());
                    }
                    graph = Some(Graph::empty(n));
                }
                Some("e") => {
                    let g = graph.as_mut().ok_or_else(malformed)?;
                    let u: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                    let v: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
                    if parts.next().is_some() {
                        return Err(malformed());
                    }
                    g.add_edge(u, v).map_err(|e| {
                        Error::parse(line_no, ParseErrorKind::Malformed(e.to_string()))
                    })?;
                }
                _ => return Err(malformed()),
            }
        }
        graph.ok_or_else(|| Error::parse(1, ParseErrorKind::Malformed("missing `p` line".into())))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {} {{\n", dot_id(name));
        for v in 0..self.n {
            match self.label(v) {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label={}];", dot_id(l));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete graph needs at least one vertex".into()));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn complete_graph_sizes() {
        assert_eq!(complete_graph(1).unwrap().edge_count(), 0);
        let k3 = complete_graph(3).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        // C(6,2) by direct count
        let mut pairs = 0;
        for u in 0..6 {
            for _ in u + 1..6 {
                pairs += 1;
            }
        }
        assert_eq!(complete_graph(6).unwrap().edge_count(), pairs);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn triangle_free() {
        assert!(!complete_graph(3).unwrap().is_triangle_free());
        assert!(Graph::empty(5).is_triangle_free());
        assert!(path(4).is_triangle_free());
        assert!(Graph::empty(0).is_triangle_free());
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn labels_must_be_unique() {
        let g = path(2);
        assert!(g.clone().with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(g.clone().with_labels(vec!["a".into()]).is_err());
        assert_eq!(g.with_labels(vec!["a".into(), "b".into()]).unwrap().label(1), Some("b"));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(70, [(0, 69), (3, 4), (64, 65)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "p 70\ne 0 69\ne 3 4\ne 64 65\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        match Graph::parse_edge_list("p 3\ne 0 1\ne 0 7\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::parse_edge_list("e 0 1\n").is_err());
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn dot_export() {
        let g = path(2).with_labels(vec!["[1,2]".into(), "[2,3]".into()]).unwrap();
        let dot = g.to_dot("G_1");
        assert!(dot.starts_with("graph \"G_1\" {"));
        assert!(dot.contains("0 [label=\"[1,2]\"];"));
        assert!(dot.contains("0 -- 1;"));
    }

    #[test]
    fn induced_keeps_labels_and_edges() {
        let g = path(4)
            .with_labels((0..4).map(|i| format!("v{i}")).collect())
            .unwrap();
        let h = g.induced(&[1, 2, 3]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(h.label(0), Some("v1"));
    }
}
