//! Simple undirected labeled graphs with BFS-based metrics.
//!
//! Vertices are integers `0..n`. Adjacency is kept as per-vertex ordered
//! sets, so all iteration orders are deterministic. Graphs are immutable in
//! practice once built; every operation here is a pure function of the graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Vertex identifier, always `< n` for the owning graph.
pub type Vertex = usize;

/// Largest order accepted by the isomorphism search.
pub const ISO_SIZE_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("order {order} exceeds the supported limit {limit}")]
    SizeLimitExceeded { order: usize, limit: usize },
    #[error("edge list line {line}: {message}")]
    BadEdgeList { line: usize, message: String },
}

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    /// All edges as `(u, v)` pairs with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(BTreeSet::len).collect()
    }

    /// True iff every vertex has degree exactly `s`.
    pub fn is_regular(&self, s: usize) -> bool {
        self.adj.iter().all(|nb| nb.len() == s)
    }

    /// Shortest-path hop counts from `root`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, root: Vertex) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(root)?;
        let mut dist = vec![None; self.n];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.bfs_distances(0)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    /// Greatest BFS distance from `v`; requires a connected graph.
    pub fn eccentricity(&self, v: Vertex) -> Result<usize, GraphError> {
        let dist = self.bfs_distances(v)?;
        dist.iter()
            .map(|d| d.ok_or(GraphError::Disconnected))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Greatest eccentricity over all vertices; requires a connected graph.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Disconnected);
        }
        let mut best = 0;
        for v in 0..self.n {
            best = best.max(self.eccentricity(v)?);
        }
        Ok(best)
    }

    /// Length of a shortest cycle, or `None` for forests.
    ///
    /// Per-root BFS: a non-tree edge seen from root `r` closes a cycle of
    /// length `dist[u] + dist[w] + 1`; the minimum over all roots is exact.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w && u < w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: perm.len(),
                order: self.n,
            });
        }
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// Serializes to the shared edge-list format: `n m` then one `u v` line
    /// per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| GraphError::BadEdgeList {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let bad = |line: usize, message: &str| GraphError::BadEdgeList {
            line,
            message: message.into(),
        };
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(1, "expected vertex count"))?;
        let m: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(1, "expected edge count"))?;
        if parts.next().is_some() {
            return Err(bad(1, "trailing tokens after `n m`"));
        }
        let mut g = Graph::new(n);
        let mut seen = 0usize;
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let u: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad(line_no, "expected vertex id"))?;
            let v: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad(line_no, "expected vertex id"))?;
            if parts.next().is_some() {
                return Err(bad(line_no, "trailing tokens after edge"));
            }
            if u >= v {
                return Err(bad(line_no, "edges must satisfy u < v"));
            }
            g.add_edge(u, v).map_err(|e| GraphError::BadEdgeList {
                line: line_no,
                message: e.to_string(),
            })?;
            seen += 1;
        }
        if seen != m {
            return Err(bad(1, "edge count does not match header"));
        }
        Ok(g)
    }

    /// DOT rendering: `graph { u -- v; ... }`. Emit-only.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            if self.adj[v].is_empty() {
                let _ = writeln!(out, "  {};", v);
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", u, v);
        }
        out.push_str("}\n");
        out
    }
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

    #[test]
    fn construction_rejects_invalid_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        );
    }

    #[test]
    fn bfs_distances_on_petersen() {
        let g = petersen();
        let dist = g.bfs_distances(0).unwrap();
        assert_eq!(dist[0], Some(0));
        assert_eq!(dist[7], Some(2));
        assert!(dist.iter().all(|d| d.unwrap() <= 2));
    }

    #[test]
    fn bfs_single_vertex_and_disconnected() {
        let g = Graph::new(1);
        assert_eq!(g.bfs_distances(0).unwrap(), vec![Some(0)]);
        let g = Graph::new(2);
        let dist = g.bfs_distances(0).unwrap();
        assert_eq!(dist[1], None);
        assert_eq!(g.diameter(), Err(GraphError::Disconnected));
        assert_eq!(g.eccentricity(0), Err(GraphError::Disconnected));
    }

    #[test]
    fn petersen_metrics() {
        let g = petersen();
        assert!(g.is_regular(3));
        assert_eq!(g.diameter().unwrap(), 2);
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn girth_edge_cases() {
        // path on 3 vertices: a forest
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
        assert!(!path.is_regular(2));
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(triangle.girth(), Some(3));
        let square = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(square.girth(), Some(4));
        // empty graph is 0-regular
        assert!(Graph::new(0).is_regular(0));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = petersen();
        let text = g.to_edge_list();
        assert!(text.starts_with("10 15\n"));
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn edge_list_rejects_malformed_input() {
        assert!(matches!(
            Graph::from_edge_list("3 1\n1 0\n"),
            Err(GraphError::BadEdgeList { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("3 2\n0 1\n"),
            Err(GraphError::BadEdgeList { line: 1, .. })
        ));
        assert!(Graph::from_edge_list("").is_err());
    }

    #[test]
    fn dot_output_shape() {
        let g = Graph::from_edges(3, [(0, 2)]).unwrap();
        assert_eq!(g.to_dot(), "graph {\n  1;\n  0 -- 2;\n}\n");
    }
}
