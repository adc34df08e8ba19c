use std::cmp::Reverse;

use super::{clique_number, Graph};
use crate::error::{Error, Result};

/// Decisions allowed across all k-colorability probes of one call.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_budget(g, DEFAULT_NODE_BUDGET)
}

/// Exact chromatic number by iterative deepening between the clique lower
/// bound and a greedy DSatur upper bound. Each probe is a DSatur
/// backtracking search that only opens one new color at a time, so color
/// permutations are never revisited.
///
/// Running out of `budget` decisions is an error, never an approximation.
pub fn chromatic_number_with_budget(g: &Graph, budget: u64) -> Result<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let lower = clique_number(g);
    let upper = greedy_dsatur(g);
    let mut nodes = 0u64;
    for k in lower..upper {
        if KColoring::new(g, k).search(0, 0, &mut nodes, budget)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn pick_vertex(n: usize, colored: &[Option<usize>], saturation: &[usize], degree: &[usize]) -> Option<usize> {
    (0..n)
        .filter(|&v| colored[v].is_none())
        .max_by_key(|&v| (saturation[v], degree[v], Reverse(v)))
}

/// Number of colors used by DSatur with smallest-available-color choice.
fn greedy_dsatur(g: &Graph) -> usize {
    let n = g.vertex_count();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut colored: Vec<Option<usize>> = vec![None; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut saturation = vec![0; n];
    let mut used = 0;
    while let Some(v) = pick_vertex(n, &colored, &saturation, &degree) {
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        colored[v] = Some(c);
        used = used.max(c + 1);
        for u in g.neighbors(v) {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            if !seen[u][c] {
                seen[u][c] = true;
                saturation[u] += 1;
            }
        }
    }
    used
}

struct KColoring {
    k: usize,
    adjacency: Vec<Vec<usize>>,
    degree: Vec<usize>,
    colored: Vec<Option<usize>>,
    // neighbor_colors[v * k + c]: colored neighbors of v holding color c
    neighbor_colors: Vec<u32>,
    saturation: Vec<usize>,
}

impl KColoring {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.vertex_count();
        let adjacency: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
        let degree = adjacency.iter().map(Vec::len).collect();
        KColoring {
            k,
            adjacency,
            degree,
            colored: vec![None; n],
            neighbor_colors: vec![0; n * k],
            saturation: vec![0; n],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colored[v] = Some(c);
        for i in 0..self.adjacency[v].len() {
            let u = self.adjacency[v][i];
            let slot = &mut self.neighbor_colors[u * self.k + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colored[v] = None;
        for i in 0..self.adjacency[v].len() {
            let u = self.adjacency[v][i];
            let slot = &mut self.neighbor_colors[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn search(&mut self, done: usize, used: usize, nodes: &mut u64, budget: u64) -> Result<bool> {
        let n = self.colored.len();
        if done == n {
            return Ok(true);
        }
        let v = pick_vertex(n, &self.colored, &self.saturation, &self.degree).expect("uncolored vertex");
        for c in 0..self.k.min(used + 1) {
            if self.neighbor_colors[v * self.k + c] != 0 {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExhausted { nodes: *nodes - 1 });
            }
            self.assign(v, c);
            let found = self.search(done + 1, used.max(c + 1), nodes, budget)?;
            self.unassign(v, c);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
