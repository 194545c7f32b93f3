//! Graph isomorphism by ordered backtracking with invariant pruning.
//!
//! Intended for the small orders this crate deals in (n <= 64); solver
//! outputs are matched against fixtures up to relabeling with it.

use crate::graph::{Graph, GraphError, Vertex, ISO_SIZE_LIMIT};

/// Per-vertex invariant: degree plus the sorted multiset of BFS distances.
/// `usize::MAX` stands in for unreachable.
fn vertex_profiles(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.order())
        .map(|v| {
            let mut dists: Vec<usize> = g
                .bfs_distances(v)
                .expect("v < n")
                .into_iter()
                .map(|d| d.unwrap_or(usize::MAX))
                .collect();
            dists.sort_unstable();
            (g.degree(v), dists)
        })
        .collect()
}

/// True iff an adjacency-preserving bijection between the two graphs exists.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    let n = a.order();
    if n > ISO_SIZE_LIMIT || b.order() > ISO_SIZE_LIMIT {
        return Err(GraphError::SizeLimitExceeded {
            order: n.max(b.order()),
            limit: ISO_SIZE_LIMIT,
        });
    }
    if n != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }

    let prof_a = vertex_profiles(a);
    let prof_b = vertex_profiles(b);
    let mut sorted_a = prof_a.clone();
    let mut sorted_b = prof_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(false);
    }

    // Candidate targets per vertex of `a`, filtered by invariant equality.
    let candidates: Vec<Vec<Vertex>> = (0..n)
        .map(|v| (0..n).filter(|&w| prof_a[v] == prof_b[w]).collect())
        .collect();

    // Order the vertices of `a` so each one (after the first) touches an
    // already-placed vertex where possible; scarce candidate sets go first.
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let attached = a.neighbors(v).any(|u| placed[u]);
                (order.is_empty() || !attached, candidates[v].len(), v)
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }

    let mut map: Vec<Option<Vertex>> = vec![None; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, &order, &candidates, &mut map, &mut used, 0))
}

fn extend(
    a: &Graph,
    b: &Graph,
    order: &[Vertex],
    candidates: &[Vec<Vertex>],
    map: &mut Vec<Option<Vertex>>,
    used: &mut Vec<bool>,
    depth: usize,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'targets: for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        // adjacency to every already-mapped vertex must match exactly
        for (u, target) in map.iter().enumerate() {
            if let Some(t) = *target {
                if a.has_edge(v, u) != b.has_edge(w, t) {
                    continue 'targets;
                }
            }
        }
        map[v] = Some(w);
        used[w] = true;
        if extend(a, b, order, candidates, map, used, depth + 1) {
            return true;
        }
        map[v] = None;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 8),
                (3, 9),
                (4, 6),
                (4, 8),
                (5, 7),
                (5, 9),
                (6, 9),
                (7, 8),
            ],
        )
        .unwrap()
    }

    /// Pentagonal prism C5 x K2: 3-regular on 10 vertices, girth 4.
    fn prism() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i + 5, (i + 1) % 5 + 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn petersen_is_not_the_prism() {
        let p = petersen();
        let q = prism();
        assert!(q.is_regular(3));
        assert_eq!(q.girth(), Some(4));
        assert_eq!(is_isomorphic(&p, &q), Ok(false));
    }

    #[test]
    fn relabeling_preserves_isomorphism() {
        let p = petersen();
        let perm: Vec<usize> = vec![7, 2, 9, 4, 0, 5, 8, 1, 6, 3];
        let q = p.relabeled(&perm).unwrap();
        assert_eq!(is_isomorphic(&p, &q), Ok(true));
        assert_eq!(is_isomorphic(&q, &p), Ok(true));
    }

    #[test]
    fn distinguishes_same_degree_sequence() {
        // triangle + isolated edge vs. path on 5 vertices: different invariants
        let a = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let b = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(is_isomorphic(&a, &b), Ok(false));
    }

    #[test]
    fn size_limit_is_enforced() {
        let a = Graph::new(65);
        let b = Graph::new(65);
        assert!(matches!(
            is_isomorphic(&a, &b),
            Err(GraphError::SizeLimitExceeded { .. })
        ));
    }
}
