//! Shared helpers for the integration and acceptance suites.
#![allow(dead_code)] // each test binary uses its own subset

use compactgraph::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random connected graph on 1..=max_n vertices: a random spanning tree plus
/// a few random extra edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut g = Graph::new(n);
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        g.add_edge(parent, v).unwrap();
    }
    for _ in 0..rng.gen_range(0..=n) {
        let u = rng.gen_range(0..n);
        let w = rng.gen_range(0..n);
        if u != w && !g.has_edge(u, w) {
            g.add_edge(u.min(w), u.max(w)).unwrap();
        }
    }
    g
}

/// Girth by an algorithm independent of both production routes: for every
/// edge, the shortest cycle through it is one plus the endpoint distance
/// with the edge removed.
pub fn girth_by_edge_removal(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        let mut without = Graph::new(g.order());
        for (a, b) in g.edges() {
            if (a, b) != (u, v) {
                without.add_edge(a, b).unwrap();
            }
        }
        if let Some(d) = without.bfs_distances(u).unwrap()[v] {
            let len = d + 1;
            if best.is_none_or(|b| len < b) {
                best = Some(len);
            }
        }
    }
    best
}

/// The triangle-core seed graph for the 15(4,2) target: a 3-cycle 0-1-2,
/// two pendants per core vertex, and one pendant below each of those.
pub fn triangle_core_seed() -> Graph {
    Graph::from_edges(
        15,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (1, 6),
            (2, 7),
            (2, 8),
            (3, 9),
            (4, 10),
            (5, 11),
            (6, 12),
            (7, 13),
            (8, 14),
        ],
    )
    .unwrap()
}
