//! Red-blue edge colorings.
//!
//! A coloring is total over its host's edges. Hosts up to
//! [`DENSE_EDGE_LIMIT`] edges store one color per canonical edge rank;
//! larger hosts keep the coloring as a pure function of the edge (seeded,
//! constant, or predicate), so `G_8` with its 2.8M edges never materializes.
//!
//! Random colorings draw each edge from ChaCha8 keyed by
//! `seed_from_u64(seed)` on stream number `rank`, taking the low bit of the
//! first 32-bit output (0 = Red). Every edge has its own stream, so a color
//! does not depend on which other edges were queried, or in what order.

mod file;
mod host;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::shift::{IntervalVertex, ShiftGraph};

pub use file::{load_coloring, load_coloring_any, save_coloring};
pub use host::{ExplicitHost, Host};

/// Hosts with more edges than this get an implicit coloring.
pub const DENSE_EDGE_LIMIT: u64 = 1 << 20;

/// Largest edge count [`all_colorings`] will enumerate.
pub const MAX_EXHAUSTIVE_EDGES: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn token(self) -> &'static str {
        match self {
            Color::Red => "R",
            Color::Blue => "B",
        }
    }

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "red" => Ok(Color::Red),
            "b" | "blue" => Ok(Color::Blue),
            _ => Err(Error::InvalidArgument(format!("unknown color {s:?}"))),
        }
    }
}

pub type EdgePredicate = Arc<dyn Fn(u32, u32, u32) -> bool + Send + Sync>;

#[derive(Clone)]
enum Assignment {
    Dense(Vec<Color>),
    Seeded(u64),
    Constant(Color),
    /// Red iff the predicate holds on `(i, j, k)` for the edge `[i,j] ~ [j,k]`.
    Predicate(EdgePredicate),
}

#[derive(Clone)]
pub struct TwoColoring {
    host: Host,
    assignment: Assignment,
}

pub fn seeded_edge_color(seed: u64, rank: u64) -> Color {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rank);
    if rng.next_u32() & 1 == 0 {
        Color::Red
    } else {
        Color::Blue
    }
}

impl TwoColoring {
    pub fn from_colors(host: impl Into<Host>, colors: Vec<Color>) -> Result<Self> {
        let host = host.into();
        if colors.len() as u64 != host.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "{} colors for {} edges",
                colors.len(),
                host.edge_count()
            )));
        }
        Ok(TwoColoring {
            host,
            assignment: Assignment::Dense(colors),
        })
    }

    fn build(host: Host, implicit: Assignment) -> Self {
        let m = host.edge_count();
        if m > DENSE_EDGE_LIMIT {
            return TwoColoring {
                host,
                assignment: implicit,
            };
        }
        let lazy = TwoColoring {
            host,
            assignment: implicit,
        };
        let colors = (0..m).map(|r| lazy.color_at(r)).collect();
        TwoColoring {
            host: lazy.host,
            assignment: Assignment::Dense(colors),
        }
    }

    /// Coloring number `rank` in binary-counter order: edge `e` is Blue iff
    /// bit `e` of `rank` is set.
    pub fn from_rank(host: impl Into<Host>, rank: u64) -> Result<Self> {
        let host = host.into();
        let m = host.edge_count();
        if m > 64 || (m < 64 && rank >> m != 0) {
            return Err(Error::InvalidArgument(format!(
                "rank {rank} out of range for {m} edges"
            )));
        }
        let colors = (0..m)
            .map(|e| if rank >> e & 1 == 1 { Color::Blue } else { Color::Red })
            .collect();
        Ok(TwoColoring {
            host,
            assignment: Assignment::Dense(colors),
        })
    }

    pub fn host(&self) -> &Host {
        &self.host
    }

    pub fn edge_count(&self) -> u64 {
        self.host.edge_count()
    }

    pub fn is_implicit(&self) -> bool {
        !matches!(self.assignment, Assignment::Dense(_))
    }

    /// Color of the edge with canonical rank `rank`.
    pub fn color_at(&self, rank: u64) -> Color {
        match &self.assignment {
            Assignment::Dense(v) => v[rank as usize],
            Assignment::Seeded(seed) => seeded_edge_color(*seed, rank),
            Assignment::Constant(c) => *c,
            Assignment::Predicate(p) => {
                let g = self.host.as_shift().expect("predicate colorings live on shift hosts");
                let z = crate::shift::unrank_subset(g.points(), 3, rank);
                red_if(p(z[0], z[1], z[2]))
            }
        }
    }

    /// Color of the edge `[a,b] ~ [b,c]` of an interval host, `a < b < c`.
    pub fn path_color(&self, a: u32, b: u32, c: u32) -> Color {
        debug_assert!(a < b && b < c);
        match &self.assignment {
            Assignment::Constant(col) => *col,
            Assignment::Predicate(p) => red_if(p(a, b, c)),
            _ => {
                let g = self.host.as_shift().expect("interval host");
                debug_assert!(g.is_interval() && c <= g.points());
                self.color_at(g.triple_rank(a, b, c))
            }
        }
    }

    /// Color of the host edge `x ~ y`.
    pub fn edge_color(&self, x: &IntervalVertex, y: &IntervalVertex) -> Result<Color> {
        let g = self.host.interval()?;
        if !g.adjacent(x, y) {
            return Err(Error::InvalidArgument(format!("{x} and {y} are not adjacent")));
        }
        let (lo, hi) = if x.j == y.i { (x, y) } else { (y, x) };
        Ok(self.path_color(lo.i, lo.j, hi.j))
    }

    /// Colors in canonical edge order.
    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        (0..self.edge_count()).map(|r| self.color_at(r))
    }

    pub fn red_count(&self) -> u64 {
        self.colors().filter(|&c| c == Color::Red).count() as u64
    }

    /// Spanning subgraph of the host keeping only edges of `color`.
    pub fn class_graph(&self, color: Color) -> Result<Graph> {
        let mut g = Graph::empty(self.host.to_graph()?.vertex_count());
        for r in 0..self.edge_count() {
            if self.color_at(r) == color {
                let (u, v) = self.host.edge_endpoints(r);
                g.add_edge(u as usize, v as usize)?;
            }
        }
        Ok(g)
    }

    /// `N⁺_color([i,j])`: the vertices `[j,k]` whose edge to `v` has `color`,
    /// in increasing `k`.
    pub fn out_neighbors(&self, v: &IntervalVertex, color: Color) -> Result<Vec<IntervalVertex>> {
        let g = self.host.interval()?;
        if !g.contains(v) {
            return Err(Error::InvalidArgument(format!("{v} is not a vertex of {}", g.name())));
        }
        Ok((v.j + 1..=g.points())
            .filter(|&k| self.path_color(v.i, v.j, k) == color)
            .map(|k| IntervalVertex { i: v.j, j: k })
            .collect())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        save_coloring(self, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8")
    }
}

fn red_if(b: bool) -> Color {
    if b {
        Color::Red
    } else {
        Color::Blue
    }
}

impl PartialEq for TwoColoring {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.colors().eq(other.colors())
    }
}

impl fmt::Debug for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let storage = match &self.assignment {
            Assignment::Dense(_) => "dense",
            Assignment::Seeded(_) => "seeded",
            Assignment::Constant(_) => "constant",
            Assignment::Predicate(_) => "predicate",
        };
        f.debug_struct("TwoColoring")
            .field("host", &self.host.name())
            .field("storage", &storage)
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// Independent fair draw per edge; see the module docs for the generator.
pub fn random_coloring(host: impl Into<Host>, seed: u64) -> TwoColoring {
    TwoColoring::build(host.into(), Assignment::Seeded(seed))
}

pub fn constant_coloring(host: impl Into<Host>, color: Color) -> TwoColoring {
    TwoColoring::build(host.into(), Assignment::Constant(color))
}

/// Colors `[i,j] ~ [j,k]` Red iff `red(i, j, k)` holds.
pub fn predicate_coloring<F>(host: ShiftGraph, red: F) -> Result<TwoColoring>
where
    F: Fn(u32, u32, u32) -> bool + Send + Sync + 'static,
{
    host.require_interval()?;
    Ok(TwoColoring::build(Host::Shift(host), Assignment::Predicate(Arc::new(red))))
}

/// Structured colorings meant to stress the extraction procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adversary {
    /// Red iff the shared endpoint `j` is even.
    MiddleParity,
    /// Red iff `i + j + k` is even.
    SumParity,
    /// Red iff the first interval is no longer than the second.
    ShorterFirst,
    /// Red iff `i` is odd.
    LeftParity,
    /// Red iff the highest bit where `i-1` and `j-1` differ is below the
    /// highest bit where `j-1` and `k-1` differ.
    BitRise,
}

impl Adversary {
    pub const ALL: [Adversary; 5] = [
        Adversary::MiddleParity,
        Adversary::SumParity,
        Adversary::ShorterFirst,
        Adversary::LeftParity,
        Adversary::BitRise,
    ];

    pub fn is_red(self, i: u32, j: u32, k: u32) -> bool {
        match self {
            Adversary::MiddleParity => j.is_multiple_of(2),
            Adversary::SumParity => (i + j + k).is_multiple_of(2),
            Adversary::ShorterFirst => j - i <= k - j,
            Adversary::LeftParity => i % 2 == 1,
            Adversary::BitRise => high_bit((i - 1) ^ (j - 1)) < high_bit((j - 1) ^ (k - 1)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Adversary::MiddleParity => "middle-parity",
            Adversary::SumParity => "sum-parity",
            Adversary::ShorterFirst => "shorter-first",
            Adversary::LeftParity => "left-parity",
            Adversary::BitRise => "bit-rise",
        }
    }
}

fn high_bit(x: u32) -> u32 {
    31 - x.leading_zeros()
}

impl FromStr for Adversary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Adversary::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown adversary {s:?}")))
    }
}

pub fn adversarial_coloring(host: ShiftGraph, adversary: Adversary) -> Result<TwoColoring> {
    predicate_coloring(host, move |i, j, k| adversary.is_red(i, j, k))
}

/// Every coloring of `host`, once each, in binary-counter order.
pub fn all_colorings(host: impl Into<Host>) -> Result<AllColorings> {
    let host = host.into();
    let m = host.edge_count();
    if m > MAX_EXHAUSTIVE_EDGES {
        return Err(Error::Guard(format!(
            "{m} edges; exhaustive enumeration supports at most {MAX_EXHAUSTIVE_EDGES}"
        )));
    }
    Ok(AllColorings {
        host,
        next: 0,
        end: 1 << m,
    })
}

pub struct AllColorings {
    host: Host,
    next: u64,
    end: u64,
}

impl AllColorings {
    pub fn total(&self) -> u64 {
        self.end
    }
}

impl Iterator for AllColorings {
    type Item = TwoColoring;

    fn next(&mut self) -> Option<TwoColoring> {
        if self.next == self.end {
            return None;
        }
        let c = TwoColoring::from_rank(self.host.clone(), self.next).expect("rank in range");
        self.next += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllColorings {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::shift::eh_graph;
    use std::collections::HashSet;

    fn iv(i: u32, j: u32) -> IntervalVertex {
        IntervalVertex::new(i, j).unwrap()
    }

    #[test]
    fn random_coloring_is_reproducible() {
        let g1 = eh_graph(1).unwrap();
        let a = random_coloring(g1, 0);
        assert_eq!(a.edge_count(), 1);
        assert_eq!(a, random_coloring(g1, 0));
        let c = random_coloring(eh_graph(2).unwrap(), 7);
        assert_eq!(c.colors().count(), 10);
        assert!(c.red_count() <= 10);
    }

    #[test]
    fn random_coloring_is_fair() {
        let g = eh_graph(2).unwrap();
        let red: u64 = (0..10_000).map(|s| random_coloring(g, s).red_count()).sum();
        let fraction = red as f64 / 100_000.0;
        assert!((fraction - 0.5).abs() <= 0.02, "red fraction {fraction}");
    }

    #[test]
    fn implicit_storage_for_large_hosts_agrees_with_seeded_function() {
        let g8 = eh_graph(8).unwrap();
        let c = random_coloring(g8, 3);
        assert!(c.is_implicit());
        let small = random_coloring(eh_graph(4).unwrap(), 3);
        assert!(!small.is_implicit());
        for r in [0u64, 17, 679] {
            assert_eq!(small.color_at(r), seeded_edge_color(3, r));
        }
        assert_eq!(c.path_color(1, 2, 3), seeded_edge_color(3, 0));
    }

    #[test]
    fn exhaustive_counts() {
        assert_eq!(all_colorings(eh_graph(1).unwrap()).unwrap().count(), 2);
        let all: Vec<_> = all_colorings(eh_graph(2).unwrap()).unwrap().collect();
        assert_eq!(all.len(), 1024);
        let distinct: HashSet<String> = all.iter().map(|c| c.to_text()).collect();
        assert_eq!(distinct.len(), 1024);
        assert_eq!(all[0], constant_coloring(eh_graph(2).unwrap(), Color::Red));
        assert_eq!(all[1023], constant_coloring(eh_graph(2).unwrap(), Color::Blue));
        assert_eq!(all_colorings(complete_graph(4).unwrap()).unwrap().total(), 64);
        assert!(matches!(all_colorings(eh_graph(3).unwrap()), Err(Error::Guard(_))));
    }

    #[test]
    fn binary_counter_order() {
        let c = TwoColoring::from_rank(eh_graph(2).unwrap(), 0b101).unwrap();
        let colors: Vec<_> = c.colors().take(4).collect();
        assert_eq!(colors, vec![Color::Blue, Color::Red, Color::Blue, Color::Red]);
        assert!(TwoColoring::from_rank(eh_graph(1).unwrap(), 2).is_err());
    }

    #[test]
    fn out_neighbors_examples() {
        let g = eh_graph(2).unwrap();
        let red = constant_coloring(g, Color::Red);
        assert_eq!(
            red.out_neighbors(&iv(1, 2), Color::Red).unwrap(),
            vec![iv(2, 3), iv(2, 4), iv(2, 5)]
        );
        assert!(red.out_neighbors(&iv(1, 2), Color::Blue).unwrap().is_empty());
        assert!(red.out_neighbors(&iv(1, 6), Color::Red).is_err());
        for n in 1..=5 {
            let c = random_coloring(eh_graph(n).unwrap(), n as u64);
            let total = c.out_neighbors(&iv(1, 2), Color::Red).unwrap().len()
                + c.out_neighbors(&iv(1, 2), Color::Blue).unwrap().len();
            assert_eq!(total, (1 << n) - 1);
        }
    }

    #[test]
    fn edge_color_requires_adjacency() {
        let c = adversarial_coloring(eh_graph(2).unwrap(), Adversary::MiddleParity).unwrap();
        assert_eq!(c.edge_color(&iv(1, 2), &iv(2, 4)).unwrap(), Color::Red);
        assert_eq!(c.edge_color(&iv(3, 5), &iv(1, 3)).unwrap(), Color::Blue);
        assert!(c.edge_color(&iv(1, 2), &iv(1, 3)).is_err());
    }

    #[test]
    fn predicate_colorings_match_in_both_storages() {
        for adv in Adversary::ALL {
            let dense = adversarial_coloring(eh_graph(4).unwrap(), adv).unwrap();
            for (r, (a, b, c)) in eh_graph(4).unwrap().edge_triples().enumerate() {
                let expected = if adv.is_red(a, b, c) { Color::Red } else { Color::Blue };
                assert_eq!(dense.color_at(r as u64), expected);
                assert_eq!(dense.path_color(a, b, c), expected);
            }
            assert_eq!(adv.name().parse::<Adversary>().unwrap(), adv);
        }
        let big = adversarial_coloring(eh_graph(8).unwrap(), Adversary::BitRise).unwrap();
        assert!(big.is_implicit());
        assert_eq!(big.color_at(0), Color::Red);
    }

    #[test]
    fn class_graphs_partition_edges() {
        let c = random_coloring(eh_graph(3).unwrap(), 11);
        let red = c.class_graph(Color::Red).unwrap();
        let blue = c.class_graph(Color::Blue).unwrap();
        assert_eq!(red.edge_count() + blue.edge_count(), 84);
        assert!(red.edges().all(|(u, v)| !blue.has_edge(u, v)));
    }
}
