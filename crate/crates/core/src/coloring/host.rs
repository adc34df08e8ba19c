use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::shift::{format_subset, rank_subset, unrank_subset, ShiftGraph};

/// The graph whose edges a [`TwoColoring`](super::TwoColoring) colors: a
/// shift graph with implicit adjacency, or an explicit graph such as `K_n`.
///
/// Edges have a canonical order in both cases: lexicographic on the pair of
/// vertex indices, smaller vertex first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Host {
    Shift(ShiftGraph),
    Graph(Arc<ExplicitHost>),
}

#[derive(Debug, PartialEq, Eq)]
pub struct ExplicitHost {
    graph: Graph,
    edges: Vec<(usize, usize)>,
}

impl From<ShiftGraph> for Host {
    fn from(g: ShiftGraph) -> Self {
        Host::Shift(g)
    }
}

impl From<Graph> for Host {
    fn from(graph: Graph) -> Self {
        let edges = graph.edges().collect();
        Host::Graph(Arc::new(ExplicitHost { graph, edges }))
    }
}

impl Host {
    pub fn vertex_count(&self) -> u64 {
        match self {
            Host::Shift(g) => g.vertex_count(),
            Host::Graph(h) => h.graph.vertex_count() as u64,
        }
    }

    pub fn edge_count(&self) -> u64 {
        match self {
            Host::Shift(g) => g.edge_count(),
            Host::Graph(h) => h.edges.len() as u64,
        }
    }

    pub fn as_shift(&self) -> Option<&ShiftGraph> {
        match self {
            Host::Shift(g) => Some(g),
            Host::Graph(_) => None,
        }
    }

    pub(crate) fn interval(&self) -> Result<&ShiftGraph> {
        match self {
            Host::Shift(g) if g.is_interval() => Ok(g),
            _ => Err(Error::InvalidArgument(
                "operation needs an interval shift-graph host".into(),
            )),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            Host::Shift(g) => g.to_graph(),
            Host::Graph(h) => Ok(h.graph.clone()),
        }
    }

    /// Vertex-index endpoints of the edge with canonical rank `rank`.
    pub fn edge_endpoints(&self, rank: u64) -> (u64, u64) {
        match self {
            Host::Shift(g) => {
                let k = g.arity() as usize;
                let z = unrank_subset(g.points(), k + 1, rank);
                (rank_subset(g.points(), &z[..k]), rank_subset(g.points(), &z[1..]))
            }
            Host::Graph(h) => {
                let (u, v) = h.edges[rank as usize];
                (u as u64, v as u64)
            }
        }
    }

    /// Human-readable edge, as written in coloring files.
    pub fn edge_text(&self, rank: u64) -> String {
        match self {
            Host::Shift(g) => {
                let k = g.arity() as usize;
                let z = unrank_subset(g.points(), k + 1, rank);
                format!("{} {}", format_subset(&z[..k]), format_subset(&z[1..]))
            }
            Host::Graph(h) => {
                let (u, v) = h.edges[rank as usize];
                format!("{u} {v}")
            }
        }
    }

    /// Canonical rank of the edge between two shift-graph vertices given as
    /// point lists, in either orientation.
    pub(crate) fn shift_edge_rank(&self, x: &[u32], y: &[u32]) -> Option<u64> {
        let g = self.as_shift()?;
        if !g.adjacent_subsets(x, y) {
            return None;
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let mut z = lo.to_vec();
        z.push(*hi.last()?);
        Some(rank_subset(g.points(), &z))
    }

    pub(crate) fn graph_edge_rank(&self, u: usize, v: usize) -> Option<u64> {
        let Host::Graph(h) = self else { return None };
        let key = (u.min(v), u.max(v));
        h.edges.binary_search(&key).ok().map(|r| r as u64)
    }

    /// First line of a coloring file for this host.
    pub fn header(&self) -> String {
        match self {
            Host::Shift(g) => format!("c host points={} arity={}", g.points(), g.arity()),
            Host::Graph(h) => format!("c host graph vertices={}", h.graph.vertex_count()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Host::Shift(g) => g.name(),
            Host::Graph(h) => format!("graph({} vertices)", h.graph.vertex_count()),
        }
    }
}
