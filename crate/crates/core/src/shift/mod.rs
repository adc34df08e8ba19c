//! Shift graphs `Sh(N, k)` and their interval form, the Erdős–Hajnal graphs
//! `G_k = Sh(2^k + 1, 2)`.
//!
//! Points are 1-based, as are interval endpoints. Vertices are ordered
//! lexicographically and that order is the vertex index order used whenever
//! a graph is materialized for the exact solvers. Adjacency is structural
//! and answered from endpoints, so large hosts never store edges.

pub(crate) mod combinatorics;

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use combinatorics::{binomial, rank_subset, unrank_subset};

/// Upper bound on the point range of any shift graph.
pub const MAX_POINTS: u32 = 1 << 20;

/// Largest vertex count [`ShiftGraph::to_graph`] will materialize.
pub const MATERIALIZE_LIMIT: u64 = 10_000;

/// Closed integer interval `[i, j]` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalVertex {
    pub i: u32,
    pub j: u32,
}

impl IntervalVertex {
    pub fn new(i: u32, j: u32) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::InvalidArgument(format!(
                "[{i},{j}] is not a non-degenerate interval of positive points"
            )));
        }
        Ok(IntervalVertex { i, j })
    }
}

impl fmt::Display for IntervalVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

impl FromStr for IntervalVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pts = parse_bracketed(s)?;
        match pts.as_slice() {
            &[i, j] => IntervalVertex::new(i, j),
            _ => Err(Error::InvalidArgument(format!("expected [i,j], got {s:?}"))),
        }
    }
}

impl Serialize for IntervalVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalVertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [i, j] = <[u32; 2]>::deserialize(d)?;
        IntervalVertex::new(i, j).map_err(serde::de::Error::custom)
    }
}

/// Parses `[a,b,...]` into its points.
pub(crate) fn parse_bracketed(s: &str) -> Result<Vec<u32>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidArgument(format!("expected bracketed point list, got {s:?}")))?;
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("bad point {p:?} in {s:?}")))
        })
        .collect()
}

pub(crate) fn format_subset(points: &[u32]) -> String {
    format!("[{}]", points.iter().join(","))
}

#[derive(Deserialize)]
struct Descriptor {
    points: u32,
    arity: u32,
    #[serde(default)]
    level: Option<u32>,
}

/// `Sh(points, arity)`. For arity 2 the vertices are the intervals
/// `[i, j]`, `1 <= i < j <= points`, and `[i,j] ~ [l,m]` iff `j == l` or
/// `m == i`. `level` is `Some(k)` exactly when arity is 2 and
/// `points == 2^k + 1`, i.e. when the graph is `G_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Descriptor")]
pub struct ShiftGraph {
    points: u32,
    arity: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    level: Option<u32>,
}

impl TryFrom<Descriptor> for ShiftGraph {
    type Error = Error;

    fn try_from(d: Descriptor) -> Result<Self> {
        let g = ShiftGraph::shift(d.points, d.arity)?;
        if d.level.is_some() && d.level != g.level {
            return Err(Error::InvalidArgument(format!(
                "level {:?} inconsistent with {} points and arity {}",
                d.level, d.points, d.arity
            )));
        }
        Ok(g)
    }
}

fn level_of(points: u32, arity: u32) -> Option<u32> {
    let span = points.checked_sub(1)?;
    (arity == 2 && span >= 2 && span.is_power_of_two()).then(|| span.trailing_zeros())
}

impl ShiftGraph {
    /// `G_k` on `2^k + 1` points.
    pub fn eh(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("level must be at least 1".into()));
        }
        if k >= 20 {
            return Err(Error::Guard(format!(
                "G_{k} needs 2^{k}+1 points; at most {MAX_POINTS} supported"
            )));
        }
        ShiftGraph::shift((1 << k) + 1, 2)
    }

    /// General shift graph on all `arity`-subsets of `{1, …, points}`.
    pub fn shift(points: u32, arity: u32) -> Result<Self> {
        if arity < 2 || points < arity {
            return Err(Error::InvalidArgument(format!(
                "Sh({points},{arity}) needs points >= arity >= 2"
            )));
        }
        if points > MAX_POINTS {
            return Err(Error::Guard(format!("{points} points; at most {MAX_POINTS} supported")));
        }
        let p = points as u64;
        let k = arity as u64;
        if combinatorics::checked_binomial(p, k).is_none()
            || combinatorics::checked_binomial(p, k + 1).is_none()
        {
            return Err(Error::Guard(format!("Sh({points},{arity}) is too large to index")));
        }
        Ok(ShiftGraph {
            points,
            arity,
            level: level_of(points, arity),
        })
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn level(&self) -> Option<u32> {
        self.level
    }

    pub fn is_interval(&self) -> bool {
        self.arity == 2
    }

    pub(crate) fn require_interval(&self) -> Result<()> {
        if self.is_interval() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "operation needs an interval (arity 2) host, got arity {}",
                self.arity
            )))
        }
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(self.points as u64, self.arity as u64)
    }

    /// One edge per `(arity + 1)`-subset: its first and last `arity` points.
    pub fn edge_count(&self) -> u64 {
        binomial(self.points as u64, self.arity as u64 + 1)
    }

    pub fn contains(&self, v: &IntervalVertex) -> bool {
        self.is_interval() && v.i >= 1 && v.i < v.j && v.j <= self.points
    }

    pub fn contains_subset(&self, x: &[u32]) -> bool {
        x.len() == self.arity as usize
            && x.first().is_some_and(|&a| a >= 1)
            && x.last().is_some_and(|&b| b <= self.points)
            && x.windows(2).all(|w| w[0] < w[1])
    }

    pub fn adjacent(&self, a: &IntervalVertex, b: &IntervalVertex) -> bool {
        self.contains(a) && self.contains(b) && (a.j == b.i || b.j == a.i)
    }

    /// `X ~ Y` iff one is the shift of the other: `x_{t+1} = y_t` for all
    /// `t`, or the same with the roles swapped.
    pub fn adjacent_subsets(&self, x: &[u32], y: &[u32]) -> bool {
        self.contains_subset(x)
            && self.contains_subset(y)
            && (x[1..] == y[..y.len() - 1] || y[1..] == x[..x.len() - 1])
    }

    /// `(i - 1) + (points - j)`: intervals ending at `i` plus intervals starting at `j`.
    pub fn degree(&self, v: &IntervalVertex) -> u64 {
        (v.i as u64 - 1) + (self.points - v.j) as u64
    }

    pub fn vertex_index(&self, v: &IntervalVertex) -> u64 {
        rank_subset(self.points, &[v.i, v.j])
    }

    pub fn interval_at(&self, index: u64) -> IntervalVertex {
        let s = unrank_subset(self.points, 2, index);
        IntervalVertex { i: s[0], j: s[1] }
    }

    /// Intervals in lexicographic order.
    pub fn intervals(&self) -> impl Iterator<Item = IntervalVertex> + '_ {
        let p = if self.is_interval() { self.points } else { 0 };
        (1..=p).flat_map(move |i| (i + 1..=p).map(move |j| IntervalVertex { i, j }))
    }

    /// Vertices as sorted point lists in lexicographic order (any arity).
    pub fn subsets(&self) -> impl Iterator<Item = Vec<u32>> {
        (1..=self.points).combinations(self.arity as usize)
    }

    /// Edges of an interval host as triples `a < b < c`, meaning
    /// `[a,b] ~ [b,c]`, in canonical (lexicographic) order.
    pub fn edge_triples(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        let p = if self.is_interval() { self.points } else { 0 };
        (1..=p).flat_map(move |a| {
            (a + 1..=p).flat_map(move |b| (b + 1..=p).map(move |c| (a, b, c)))
        })
    }

    /// Canonical rank of the edge `[a,b] ~ [b,c]`.
    pub fn triple_rank(&self, a: u32, b: u32, c: u32) -> u64 {
        rank_subset(self.points, &[a, b, c])
    }

    /// Canonical vertex pair of every edge as `(smaller, larger)` indices.
    pub fn edge_index_pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let k = self.arity as usize;
        (1..=self.points).combinations(k + 1).map(move |z| {
            (rank_subset(self.points, &z[..k]), rank_subset(self.points, &z[1..]))
        })
    }

    pub fn vertex_label(&self, index: u64) -> String {
        format_subset(&unrank_subset(self.points, self.arity as usize, index))
    }

    /// Materializes the graph with vertex labels `[i,j]` (or `[a,b,c,…]`).
    pub fn to_graph(&self) -> Result<Graph> {
        let n = self.vertex_count();
        if n > MATERIALIZE_LIMIT {
            return Err(Error::Guard(format!(
                "{n} vertices; at most {MATERIALIZE_LIMIT} can be materialized"
            )));
        }
        let edges = self.edge_index_pairs().map(|(u, v)| (u as usize, v as usize));
        let labels = self.subsets().map(|s| format_subset(&s)).collect();
        Graph::from_edges(n as usize, edges)?.with_labels(labels)
    }

    pub fn descriptor_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn name(&self) -> String {
        match self.level {
            Some(k) => format!("G_{k}"),
            None => format!("Sh({},{})", self.points, self.arity),
        }
    }
}

/// The Erdős–Hajnal graph `G_k`.
pub fn eh_graph(k: u32) -> Result<ShiftGraph> {
    ShiftGraph::eh(k)
}

pub fn shift_graph(points: u32, arity: u32) -> Result<ShiftGraph> {
    ShiftGraph::shift(points, arity)
}

/// Strictly increasing map `{1, …, len} -> {1, …, target}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEmbedding {
    map: Vec<u32>,
}

impl PointEmbedding {
    pub fn new(map: Vec<u32>) -> Result<Self> {
        if map.first().is_some_and(|&x| x == 0) || map.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "embedding must be strictly increasing over positive points".into(),
            ));
        }
        Ok(PointEmbedding { map })
    }

    pub fn identity(len: u32) -> Self {
        PointEmbedding {
            map: (1..=len).collect(),
        }
    }

    /// Number of source points.
    pub fn len(&self) -> u32 {
        self.map.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self) -> &[u32] {
        &self.map
    }

    pub fn apply(&self, x: u32) -> Option<u32> {
        x.checked_sub(1).and_then(|i| self.map.get(i as usize).copied())
    }

    pub fn apply_interval(&self, v: &IntervalVertex) -> Option<IntervalVertex> {
        Some(IntervalVertex {
            i: self.apply(v.i)?,
            j: self.apply(v.j)?,
        })
    }
}

/// The interval graph induced on the point set `points`, relabeled through
/// the order isomorphism `points -> {1, …, |points|}`. Returns the copy and
/// the embedding of the copy's points back into the host.
pub fn induced_on_points(host: &ShiftGraph, points: &[u32]) -> Result<(ShiftGraph, PointEmbedding)> {
    host.require_interval()?;
    if points.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("repeated point".into()));
    }
    if sorted[0] == 0 || *sorted.last().unwrap() > host.points() {
        return Err(Error::InvalidArgument(format!(
            "point set is not contained in {{1,…,{}}}",
            host.points()
        )));
    }
    let copy = ShiftGraph::shift(sorted.len() as u32, 2)?;
    Ok((copy, PointEmbedding::new(sorted)?))
}

/// Prefix embedding of the points of `G_k` into those of `G_m`.
pub fn canonical_embedding(k: u32, m: u32) -> Result<PointEmbedding> {
    if k > m {
        return Err(Error::InvalidArgument(format!("G_{k} does not embed into G_{m}")));
    }
    let small = ShiftGraph::eh(k)?;
    ShiftGraph::eh(m)?;
    Ok(PointEmbedding::identity(small.points()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(i: u32, j: u32) -> IntervalVertex {
        IntervalVertex::new(i, j).unwrap()
    }

    /// Brute-force edge count over all vertex pairs.
    fn count_edges_pairwise(g: &ShiftGraph) -> usize {
        let vs: Vec<_> = g.subsets().collect();
        let mut n = 0;
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                if g.adjacent_subsets(&vs[a], &vs[b]) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn eh_sizes() {
        let g1 = eh_graph(1).unwrap();
        assert_eq!((g1.points(), g1.vertex_count(), g1.edge_count()), (3, 3, 1));
        let g = g1.to_graph().unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(g.label(0), Some("[1,2]"));
        assert_eq!(g.label(2), Some("[2,3]"));

        let g2 = eh_graph(2).unwrap();
        assert_eq!((g2.vertex_count(), g2.edge_count()), (10, 10));
        assert_eq!(count_edges_pairwise(&g2), 10);

        let g4 = eh_graph(4).unwrap();
        assert_eq!((g4.vertex_count(), g4.edge_count()), (136, 680));
        assert_eq!(count_edges_pairwise(&g4), 680);
    }

    #[test]
    fn eh_guards() {
        assert!(matches!(eh_graph(0), Err(Error::InvalidArgument(_))));
        assert!(eh_graph(19).is_ok());
        assert!(matches!(eh_graph(20), Err(Error::Guard(_))));
    }

    #[test]
    fn general_shift_graphs() {
        let s = shift_graph(3, 2).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (3, 1));
        assert_eq!(s, eh_graph(1).unwrap());

        let s43 = shift_graph(4, 3).unwrap();
        assert_eq!(s43.vertex_count(), 4);
        assert_eq!(count_edges_pairwise(&s43), 1);
        assert!(s43.adjacent_subsets(&[1, 2, 3], &[2, 3, 4]));
        assert!(s43.adjacent_subsets(&[2, 3, 4], &[1, 2, 3]));
        assert!(!s43.adjacent_subsets(&[1, 2, 4], &[2, 3, 4]));
        assert_eq!(s43.level(), None);

        assert!(shift_graph(3, 4).is_err());
        assert!(shift_graph(5, 1).is_err());
    }

    #[test]
    fn interval_adjacency_rule() {
        let g = eh_graph(2).unwrap();
        assert!(g.adjacent(&iv(1, 2), &iv(2, 5)));
        assert!(g.adjacent(&iv(3, 5), &iv(1, 3)));
        assert!(!g.adjacent(&iv(1, 2), &iv(1, 3)));
        assert!(!g.adjacent(&iv(1, 3), &iv(2, 4)));
        assert!(!g.adjacent(&iv(1, 2), &iv(2, 6)));
    }

    #[test]
    fn degree_formula_matches_materialized_graph() {
        for k in 1..=4 {
            let g = eh_graph(k).unwrap();
            let m = g.to_graph().unwrap();
            for (idx, v) in g.intervals().enumerate() {
                assert_eq!(g.vertex_index(&v), idx as u64);
                assert_eq!(g.interval_at(idx as u64), v);
                assert_eq!(m.degree(idx) as u64, g.degree(&v), "{v} in G_{k}");
            }
        }
    }

    #[test]
    fn induced_on_spread_points() {
        let g = eh_graph(2).unwrap();
        let (copy, emb) = induced_on_points(&g, &[1, 3, 5]).unwrap();
        assert_eq!(copy, eh_graph(1).unwrap());
        assert_eq!(emb.image(), &[1, 3, 5]);
        assert_eq!(emb.apply_interval(&iv(1, 2)), Some(iv(1, 3)));
        assert!(g.adjacent(&iv(1, 3), &iv(3, 5)));

        let (prefix, _) = induced_on_points(&eh_graph(3).unwrap(), &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(prefix, eh_graph(2).unwrap());
    }

    #[test]
    fn induced_on_points_errors() {
        let g = eh_graph(2).unwrap();
        assert!(induced_on_points(&g, &[1]).is_err());
        assert!(induced_on_points(&g, &[1, 6]).is_err());
        assert!(induced_on_points(&g, &[0, 2]).is_err());
        assert!(induced_on_points(&g, &[2, 2, 3]).is_err());
        assert!(induced_on_points(&shift_graph(5, 3).unwrap(), &[1, 2]).is_err());
    }

    #[test]
    fn canonical_embeddings() {
        assert_eq!(canonical_embedding(2, 2).unwrap(), PointEmbedding::identity(5));
        assert_eq!(canonical_embedding(1, 2).unwrap().image(), &[1, 2, 3]);
        assert!(canonical_embedding(3, 2).is_err());
    }

    #[test]
    fn descriptor_json() {
        let g = eh_graph(3).unwrap();
        assert_eq!(g.descriptor_json(), r#"{"points":9,"arity":2,"level":3}"#);
        let back: ShiftGraph = serde_json::from_str(&g.descriptor_json()).unwrap();
        assert_eq!(back, g);
        assert_eq!(
            shift_graph(4, 3).unwrap().descriptor_json(),
            r#"{"points":4,"arity":3}"#
        );
        assert!(serde_json::from_str::<ShiftGraph>(r#"{"points":9,"arity":2,"level":2}"#).is_err());
        assert!(serde_json::from_str::<ShiftGraph>(r#"{"points":1,"arity":2}"#).is_err());
    }

    #[test]
    fn interval_parsing() {
        assert_eq!("[2,7]".parse::<IntervalVertex>().unwrap(), iv(2, 7));
        assert!("[7,2]".parse::<IntervalVertex>().is_err());
        assert!("2,7".parse::<IntervalVertex>().is_err());
        assert_eq!(serde_json::to_string(&iv(1, 4)).unwrap(), "[1,4]");
    }
}
