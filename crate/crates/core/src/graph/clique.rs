use super::{BitSet, Graph};

/// Smallest-last ordering: repeatedly removes a vertex of minimum remaining
/// degree, ties broken toward the lower index.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Exact clique number. Each vertex, taken in degeneracy order, seeds a
/// branch-and-bound over its later neighbors; a branch is cut when the
/// current clique plus every remaining candidate cannot beat the incumbent.
pub fn clique_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let order = degeneracy_order(g);
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut best = 1;
    for &v in &order {
        let mut candidates = BitSet::new(n);
        for u in g.neighbors(v) {
            if position[u] > position[v] {
                candidates.insert(u);
            }
        }
        if 1 + candidates.len() > best {
            expand(g, 1, candidates, &mut best);
        }
    }
    best
}

fn expand(g: &Graph, size: usize, mut candidates: BitSet, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    while let Some(u) = candidates.first() {
        if size + candidates.len() <= *best {
            return;
        }
        candidates.remove(u);
        let next = candidates.intersection(g.row(u));
        expand(g, size + 1, next, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn small_cases() {
        assert_eq!(clique_number(&Graph::empty(0)), 0);
        assert_eq!(clique_number(&Graph::empty(3)), 1);
        assert_eq!(clique_number(&complete_graph(4).unwrap()), 4);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(clique_number(&path), 2);
    }

    #[test]
    fn finds_clique_hidden_in_sparse_graph() {
        // K_4 on {2,5,7,9} plus a cycle through everything
        let mut edges: Vec<(usize, usize)> = (0..10).map(|v| (v, (v + 1) % 10)).collect();
        for (a, b) in [(2, 5), (2, 7), (2, 9), (5, 7), (5, 9), (7, 9)] {
            edges.push((a, b));
        }
        let g = Graph::from_edges(10, edges).unwrap();
        assert_eq!(clique_number(&g), 4);
    }

    #[test]
    fn degeneracy_ties_break_by_index() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(degeneracy_order(&g), vec![0, 1, 2]);
    }
}
