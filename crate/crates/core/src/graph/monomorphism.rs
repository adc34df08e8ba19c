use serde::{Deserialize, Serialize};

use super::{BitSet, Graph};
use crate::error::{Error, Result};

/// Largest pattern accepted by [`find_monomorphism`].
pub const MAX_PATTERN_VERTICES: usize = 12;

/// Injective map from pattern vertices to host vertices; `pairs[p]` is the
/// host image of pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMapping {
    pub pairs: Vec<usize>,
}

impl VertexMapping {
    /// Checks injectivity, range, and that every pattern edge lands on a host edge.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.pairs.len() != pattern.vertex_count() {
            return false;
        }
        let mut used = vec![false; host.vertex_count()];
        for &h in &self.pairs {
            if h >= host.vertex_count() || used[h] {
                return false;
            }
            used[h] = true;
        }
        pattern
            .edges()
            .all(|(u, v)| host.has_edge(self.pairs[u], self.pairs[v]))
    }
}

/// Backtracking search for an injective edge-preserving map of `pattern`
/// into `host` (not necessarily induced). Pattern vertices are matched in a
/// connectivity-first order and host candidates are tried by ascending
/// index, so the result is deterministic.
pub fn find_monomorphism(pattern: &Graph, host: &Graph) -> Result<Option<VertexMapping>> {
    let p = pattern.vertex_count();
    if p > MAX_PATTERN_VERTICES {
        return Err(Error::Guard(format!(
            "pattern has {p} vertices; at most {MAX_PATTERN_VERTICES} supported"
        )));
    }
    if p > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let order = match_order(pattern);
    // earlier[d]: pattern neighbors of order[d] that are matched before it
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(d, &v)| order[..d].iter().copied().filter(|&u| pattern.has_edge(u, v)).collect())
        .collect();
    let host_degree: Vec<usize> = (0..host.vertex_count()).map(|v| host.degree(v)).collect();
    let pattern_degree: Vec<usize> = (0..p).map(|v| pattern.degree(v)).collect();

    let mut state = Search {
        pattern_degree,
        host,
        host_degree,
        order,
        earlier,
        image: vec![usize::MAX; p],
        used: BitSet::new(host.vertex_count()),
    };
    if state.extend(0) {
        Ok(Some(VertexMapping { pairs: state.image }))
    } else {
        Ok(None)
    }
}

/// Highest degree first, then greedily the vertex with the most already-ordered
/// neighbors (ties: degree, then index).
fn match_order(pattern: &Graph) -> Vec<usize> {
    let p = pattern.vertex_count();
    let mut placed = vec![false; p];
    let mut order = Vec::with_capacity(p);
    for _ in 0..p {
        let next = (0..p)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = pattern.neighbors(v).filter(|&u| placed[u]).count();
                (links, pattern.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    pattern_degree: Vec<usize>,
    host: &'a Graph,
    host_degree: Vec<usize>,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: BitSet,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.earlier[depth].split_first() {
            Some((&first, rest)) => {
                let mut set = BitSet::from_words(self.host.row(self.image[first]));
                for &u in rest {
                    set.intersect_with(self.host.row(self.image[u]));
                }
                set.iter().collect()
            }
            None => (0..self.host.vertex_count()).collect(),
        };
        for h in candidates {
            if self.used.contains(h) || self.host_degree[h] < self.pattern_degree[v] {
                continue;
            }
            self.image[v] = h;
            self.used.insert(h);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.remove(h);
        }
        self.image[v] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn edge_into_triangle() {
        let k2 = complete_graph(2).unwrap();
        let k3 = complete_graph(3).unwrap();
        let m = find_monomorphism(&k2, &k3).unwrap().unwrap();
        assert!(m.is_valid(&k2, &k3));
        assert_eq!(m.pairs, vec![0, 1]);
        assert!(find_monomorphism(&k3, &k2).unwrap().is_none());
    }

    #[test]
    fn isolated_pattern_vertices_map_anywhere_unused() {
        let pattern = Graph::from_edges(3, [(0, 1)]).unwrap();
        let host = Graph::from_edges(3, [(1, 2)]).unwrap();
        let m = find_monomorphism(&pattern, &host).unwrap().unwrap();
        assert!(m.is_valid(&pattern, &host));
        assert_eq!(m.pairs[2], 0);
    }

    #[test]
    fn size_guard() {
        let big = Graph::empty(MAX_PATTERN_VERTICES + 1);
        assert!(matches!(
            find_monomorphism(&big, &Graph::empty(20)),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn c4_not_in_c5_but_p4_is() {
        let c4 = Graph::from_edges(4, (0..4).map(|v| (v, (v + 1) % 4))).unwrap();
        let c5 = Graph::from_edges(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap();
        let p4 = Graph::from_edges(4, (1..4).map(|v| (v - 1, v))).unwrap();
        assert!(find_monomorphism(&c4, &c5).unwrap().is_none());
        assert!(find_monomorphism(&p4, &c5).unwrap().is_some());
    }
}
