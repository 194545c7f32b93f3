//! Rooted layered projections of a graph and their bracket-form text syntax.
//!
//! A projection `P(v)` unfolds a graph from vertex `v`: level 0 holds `v`,
//! and the children of an occurrence of `u` are `N(u)` minus the vertex of
//! its immediate parent occurrence. A vertex may therefore occur several
//! times; the occurrence closest to the root and leftmost in print order is
//! the *original*, all later ones are *replicas*. Replicas witness cycles.
//!
//! The text form is a nested bracket expression, e.g. the 2-level projection
//! `0(1(4,5),2(6,7),3(8,9))`. Grammar:
//!
//! ```text
//! proj  := id group?
//! group := '(' proj (',' proj)* ')'
//! ```
//!
//! with decimal ids and insignificant whitespace. Printing always uses
//! ascending child order and no whitespace; parsing normalizes to the same
//! order.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("duplicate child {child} under an occurrence of {parent} at byte {offset}")]
    DuplicateChild {
        parent: Vertex,
        child: Vertex,
        offset: usize,
    },
    #[error("occurrence id does not belong to this projection")]
    ForeignOccurrence,
    #[error("line {line}: {source}")]
    InFile {
        line: usize,
        source: Box<ProjectionError>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Handle to one occurrence inside a projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OccId(usize);

/// One occurrence of a vertex at some level of the projection tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub vertex: Vertex,
    pub level: usize,
    pub parent: Option<OccId>,
    pub children: Vec<OccId>,
    /// True iff an earlier occurrence of the same vertex exists in
    /// (level, left-to-right) order.
    pub is_replica: bool,
}

/// Immutable occurrence tree. Nodes are stored in level order, so the
/// original/replica marking is simply "first occurrence in arena order".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    nodes: Vec<Occurrence>,
    depth: usize,
}

impl Projection {
    pub fn root(&self) -> OccId {
        OccId(0)
    }

    pub fn root_vertex(&self) -> Vertex {
        self.nodes[0].vertex
    }

    /// Deepest level actually present.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn occurrence_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn occurrence(&self, id: OccId) -> Result<&Occurrence, ProjectionError> {
        self.nodes.get(id.0).ok_or(ProjectionError::ForeignOccurrence)
    }

    /// All occurrences in level order (the replica-marking order).
    pub fn occurrences(&self) -> impl Iterator<Item = (OccId, &Occurrence)> {
        self.nodes.iter().enumerate().map(|(i, o)| (OccId(i), o))
    }

    pub fn replica_count(&self) -> usize {
        self.nodes.iter().filter(|o| o.is_replica).count()
    }

    /// True iff every vertex `0..n` occurs at least once.
    pub fn is_vertex_complete(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for occ in &self.nodes {
            if occ.vertex < n {
                seen[occ.vertex] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Unordered vertex pairs covered by parent-child occurrence pairs.
    pub fn covered_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut edges = BTreeSet::new();
        for occ in &self.nodes {
            if let Some(p) = occ.parent {
                let pv = self.nodes[p.0].vertex;
                edges.insert((pv.min(occ.vertex), pv.max(occ.vertex)));
            }
        }
        edges
    }

    /// True iff the projection covers every edge of `g`.
    pub fn is_full(&self, g: &Graph) -> bool {
        let mine = self.covered_edges();
        let theirs: BTreeSet<(Vertex, Vertex)> = g.edges().into_iter().collect();
        mine == theirs
    }

    /// Vertex sequence from the root to `occ`; its length in edges equals
    /// the occurrence level.
    pub fn route(&self, occ: OccId) -> Result<Vec<Vertex>, ProjectionError> {
        let mut ids = Vec::new();
        let mut cur = Some(occ);
        while let Some(id) = cur {
            let node = self.occurrence(id)?;
            ids.push(node.vertex);
            cur = node.parent;
        }
        ids.reverse();
        Ok(ids)
    }

    /// The reverse walk, from `occ` back to the root.
    pub fn inverse_route(&self, occ: OccId) -> Result<Vec<Vertex>, ProjectionError> {
        let mut route = self.route(occ)?;
        route.reverse();
        Ok(route)
    }

    /// Cycle lengths witnessed by repeated occurrences.
    ///
    /// For every unordered pair of occurrences of the same vertex whose root
    /// paths are vertex-disjoint below their deepest common occurrence, emits
    /// `(vertex, l1 + l2 - 2*l_lca)`. Pairs in different first-level branches
    /// are the `l_lca = 0` case; an occurrence paired with a replica of the
    /// same vertex further down its own subtree yields the level difference.
    pub fn replica_cycles(&self) -> Vec<(Vertex, usize)> {
        let mut by_vertex: Vec<(Vertex, Vec<OccId>)> = Vec::new();
        {
            let mut map = std::collections::BTreeMap::new();
            for (id, occ) in self.occurrences() {
                map.entry(occ.vertex).or_insert_with(Vec::new).push(id);
            }
            by_vertex.extend(map);
        }

        let id_path = |mut id: OccId| {
            let mut path = vec![id];
            while let Some(p) = self.nodes[id.0].parent {
                path.push(p);
                id = p;
            }
            path.reverse();
            path
        };

        let mut cycles = Vec::new();
        for (vertex, occs) in by_vertex {
            if occs.len() < 2 {
                continue;
            }
            let paths: Vec<Vec<OccId>> = occs.iter().map(|&o| id_path(o)).collect();
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    let (p1, p2) = (&paths[i], &paths[j]);
                    let mut k = 0;
                    while k < p1.len() && k < p2.len() && p1[k] == p2[k] {
                        k += 1;
                    }
                    debug_assert!(k > 0, "all paths share the root occurrence");
                    // interior of the suffix below the deepest common
                    // occurrence, excluding the repeated vertex itself;
                    // empty when the occurrence is an ancestor of the other
                    let interior = |p: &[OccId]| -> BTreeSet<Vertex> {
                        if k >= p.len() {
                            return BTreeSet::new();
                        }
                        p[k..p.len() - 1]
                            .iter()
                            .map(|&o| self.nodes[o.0].vertex)
                            .collect()
                    };
                    let s1 = interior(p1);
                    let s2 = interior(p2);
                    if s1.contains(&vertex) || s2.contains(&vertex) {
                        continue;
                    }
                    if s1.intersection(&s2).next().is_some() {
                        continue;
                    }
                    let l1 = p1.len() - 1;
                    let l2 = p2.len() - 1;
                    let l_lca = k - 1;
                    cycles.push((vertex, l1 + l2 - 2 * l_lca));
                }
            }
        }
        cycles
    }

    /// Canonical bracket form, ascending children, no whitespace.
    pub fn to_bracket(&self) -> String {
        let mut out = String::new();
        self.write_bracket(OccId(0), &mut out);
        out
    }

    fn write_bracket(&self, id: OccId, out: &mut String) {
        let node = &self.nodes[id.0];
        out.push_str(&node.vertex.to_string());
        if !node.children.is_empty() {
            out.push('(');
            for (i, &c) in node.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.write_bracket(c, out);
            }
            out.push(')');
        }
    }
}

/// Builds `P(root)` of `g` down to `depth` levels (fewer where branches die
/// out). Children of an occurrence of `u` are `N(u)` minus the parent vertex,
/// in ascending order.
pub fn build(g: &Graph, root: Vertex, depth: usize) -> Result<Projection, GraphError> {
    if root >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: root,
            order: g.order(),
        });
    }
    let mut nodes = vec![Occurrence {
        vertex: root,
        level: 0,
        parent: None,
        children: Vec::new(),
        is_replica: false,
    }];
    let mut seen = vec![false; g.order()];
    seen[root] = true;
    let mut max_level = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let (vertex, level, parent) = {
            let node = &nodes[idx];
            (node.vertex, node.level, node.parent)
        };
        if level == depth {
            continue;
        }
        let exclude = parent.map(|p| nodes[p.0].vertex);
        for w in g.neighbors(vertex) {
            if Some(w) == exclude {
                continue;
            }
            let child = nodes.len();
            nodes.push(Occurrence {
                vertex: w,
                level: level + 1,
                parent: Some(OccId(idx)),
                children: Vec::new(),
                is_replica: seen[w],
            });
            seen[w] = true;
            nodes[idx].children.push(OccId(child));
            max_level = max_level.max(level + 1);
            queue.push_back(child);
        }
    }
    Ok(Projection {
        nodes,
        depth: max_level,
    })
}

// ---------------------------------------------------------------------------
// bracket-form parsing
// ---------------------------------------------------------------------------

struct RawNode {
    vertex: Vertex,
    children: Vec<usize>,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nodes: Vec<RawNode>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            nodes: Vec::new(),
        }
    }

    fn error(&self, message: &str) -> ProjectionError {
        ProjectionError::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_id(&mut self) -> Result<Vertex, ProjectionError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as usize))
                .ok_or_else(|| self.error("vertex id overflows"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a vertex id"));
        }
        Ok(value)
    }

    fn parse_proj(&mut self) -> Result<usize, ProjectionError> {
        let vertex = self.parse_id()?;
        let idx = self.nodes.len();
        self.nodes.push(RawNode {
            vertex,
            children: Vec::new(),
        });
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = Vec::new();
            loop {
                let child = self.parse_proj()?;
                children.push(child);
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
            let mut seen = BTreeSet::new();
            for &c in &children {
                if !seen.insert(self.nodes[c].vertex) {
                    return Err(ProjectionError::DuplicateChild {
                        parent: vertex,
                        child: self.nodes[c].vertex,
                        offset: self.pos,
                    });
                }
            }
            children.sort_by_key(|&c| self.nodes[c].vertex);
            self.nodes[idx].children = children;
        }
        Ok(idx)
    }
}

/// Parses one bracket expression into a projection. Children are normalized
/// to ascending order and replica marks recomputed, so
/// `parse_bracket(p.to_bracket()) == p` for every projection `p`.
pub fn parse_bracket(text: &str) -> Result<Projection, ProjectionError> {
    let mut parser = Parser::new(text);
    let root = parser.parse_proj()?;
    if parser.peek().is_some() {
        return Err(parser.error("trailing input after projection"));
    }
    debug_assert_eq!(root, 0);

    // repack in level order so arena equality is structural equality
    let raw = parser.nodes;
    let mut nodes: Vec<Occurrence> = Vec::with_capacity(raw.len());
    let mut seen = BTreeSet::new();
    let mut depth = 0;
    let mut queue = VecDeque::from([(root, 0usize, None::<OccId>)]);
    while let Some((raw_idx, level, parent)) = queue.pop_front() {
        let vertex = raw[raw_idx].vertex;
        let id = nodes.len();
        nodes.push(Occurrence {
            vertex,
            level,
            parent,
            children: Vec::new(),
            is_replica: !seen.insert(vertex),
        });
        depth = depth.max(level);
        if let Some(p) = parent {
            nodes[p.0].children.push(OccId(id));
        }
        for &c in &raw[raw_idx].children {
            queue.push_back((c, level + 1, Some(OccId(id))));
        }
    }
    Ok(Projection { nodes, depth })
}

// ---------------------------------------------------------------------------
// projection-derived graph metrics
// ---------------------------------------------------------------------------

/// Girth computed through projections alone: the minimum replica cycle over
/// all roots, each unfolded one level past its eccentricity. `None` = acyclic.
pub fn girth_via_projections(g: &Graph) -> Result<Option<usize>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut best: Option<usize> = None;
    for v in 0..g.order() {
        let depth = g.eccentricity(v)? + 1;
        let p = build(g, v, depth)?;
        for (_, len) in p.replica_cycles() {
            if best.is_none_or(|b| len < b) {
                best = Some(len);
            }
        }
    }
    Ok(best)
}

/// The smallest depth at which `P(v)` mentions every vertex; equals the BFS
/// eccentricity of `v`.
pub fn eccentricity_via_projection(g: &Graph, v: Vertex) -> Result<usize, GraphError> {
    if v >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    for depth in 0..=g.order() {
        if build(g, v, depth)?.is_vertex_complete(g.order()) {
            return Ok(depth);
        }
    }
    Err(GraphError::Disconnected)
}

// ---------------------------------------------------------------------------
// .proj files
// ---------------------------------------------------------------------------

/// Parses a `.proj` document: one bracket expression per line, `#` comments
/// and blank lines ignored.
pub fn parse_proj_file(text: &str) -> Result<Vec<Projection>, ProjectionError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let proj = parse_bracket(line).map_err(|e| ProjectionError::InFile {
            line: idx + 1,
            source: Box::new(e),
        })?;
        out.push(proj);
    }
    Ok(out)
}

/// Union of the covered edges of several projections, as a graph on
/// `max id + 1` vertices.
pub fn graph_from_projections(projections: &[Projection]) -> Result<Graph, ProjectionError> {
    let mut edges = BTreeSet::new();
    let mut max_vertex = 0;
    for p in projections {
        for (_, occ) in p.occurrences() {
            max_vertex = max_vertex.max(occ.vertex);
        }
        edges.extend(p.covered_edges());
    }
    if projections.is_empty() {
        return Ok(Graph::new(0));
    }
    Ok(Graph::from_edges(max_vertex + 1, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Graph {
        let mut g = Graph::new(8);
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn petersen() -> Graph {
        Graph::from_edge_list(include_str!("../../../fixtures/petersen.edges")).unwrap()
    }

    #[test]
    fn cube_projection_matches_reference_bracket() {
        let p = build(&cube(), 0, 3).unwrap();
        assert_eq!(
            p.to_bracket(),
            "0(1(3(2,7),5(4,7)),2(3(1,7),6(4,7)),4(5(1,7),6(2,7)))"
        );
        assert!(p.is_full(&cube()));
    }

    #[test]
    fn petersen_two_levels() {
        let p = build(&petersen(), 0, 2).unwrap();
        assert_eq!(p.to_bracket(), "0(1(4,5),2(6,7),3(8,9))");
        assert_eq!(p.replica_count(), 0);
        assert!(p.is_vertex_complete(10));
        assert!(!p.is_full(&petersen()));
        // a depth-1 projection only reaches 4 of the 10 vertices
        assert!(!build(&petersen(), 0, 1).unwrap().is_vertex_complete(10));
    }

    #[test]
    fn depth_zero_is_just_the_root() {
        let p = build(&petersen(), 3, 0).unwrap();
        assert_eq!(p.occurrence_count(), 1);
        assert_eq!(p.to_bracket(), "3");
        assert!(p.covered_edges().is_empty());
        assert!(!p.is_vertex_complete(10));
        // a one-vertex graph is vertex-complete at depth 0
        let single = build(&Graph::new(1), 0, 0).unwrap();
        assert!(single.is_vertex_complete(1));
    }

    #[test]
    fn parse_reference_projection() {
        let p = parse_bracket("5(1(0,3),4(0,6),7(3,6))").unwrap();
        assert_eq!(p.root_vertex(), 5);
        let root_children: Vec<Vertex> = p
            .occurrence(p.root())
            .unwrap()
            .children
            .iter()
            .map(|&c| p.occurrence(c).unwrap().vertex)
            .collect();
        assert_eq!(root_children, vec![1, 4, 7]);
        assert_eq!(p.depth(), 2);
    }

    #[test]
    fn parse_rejects_malformed_text() {
        assert!(matches!(
            parse_bracket("0()"),
            Err(ProjectionError::Parse { .. })
        ));
        assert!(matches!(
            parse_bracket("0(1,1)"),
            Err(ProjectionError::DuplicateChild {
                parent: 0,
                child: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_bracket("0(1,2) junk"),
            Err(ProjectionError::Parse { .. })
        ));
        assert!(matches!(
            parse_bracket("(1,2)"),
            Err(ProjectionError::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_bracket("0(1,"),
            Err(ProjectionError::Parse { .. })
        ));
    }

    #[test]
    fn parse_normalizes_child_order() {
        let a = parse_bracket("3(9(14,0,12),6,7)").unwrap();
        let b = parse_bracket("3(6,7,9(0,12,14))").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_bracket(), "3(6,7,9(0,12,14))");
    }

    #[test]
    fn round_trip_on_built_projections() {
        let g = petersen();
        for v in 0..g.order() {
            let p = build(&g, v, 3).unwrap();
            assert_eq!(parse_bracket(&p.to_bracket()).unwrap(), p);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        let p = parse_bracket(" 0 ( 1 ( 4 , 5 ) , 2 ( 6 , 7 ) , 3 ( 8 , 9 ) ) ").unwrap();
        assert_eq!(p.to_bracket(), "0(1(4,5),2(6,7),3(8,9))");
    }

    #[test]
    fn routes_and_reversal() {
        let p = build(&cube(), 0, 3).unwrap();
        // occurrence of 7 below 0 -> 1 -> 3
        let (id, _) = p
            .occurrences()
            .find(|(_, o)| o.vertex == 7 && p.route(OccId(o.parent.unwrap().0)).unwrap() == [0, 1, 3])
            .unwrap();
        assert_eq!(p.route(id).unwrap(), vec![0, 1, 3, 7]);
        assert_eq!(p.inverse_route(id).unwrap(), vec![7, 3, 1, 0]);
        assert_eq!(p.route(p.root()).unwrap(), vec![0]);
    }

    #[test]
    fn replica_cycles_on_petersen() {
        let p = build(&petersen(), 0, 3).unwrap();
        let cycles = p.replica_cycles();
        assert!(!cycles.is_empty());
        assert_eq!(cycles.iter().map(|&(_, l)| l).min(), Some(5));
        // vertex 6: original at level 2, replica at level 3 in another branch
        assert!(cycles.contains(&(6, 5)));
    }

    #[test]
    fn replica_cycles_trivial_cases() {
        let p = build(&petersen(), 0, 2).unwrap();
        assert!(p.replica_cycles().is_empty());
        let triangle = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = build(&triangle, 0, 2).unwrap();
        assert!(p.replica_cycles().contains(&(1, 3)) || p.replica_cycles().contains(&(2, 3)));
        assert_eq!(p.replica_cycles().iter().map(|&(_, l)| l).min(), Some(3));
        // deeper unfolding revisits the root: the ancestor pair reports the
        // level difference as the cycle length
        let p = build(&triangle, 0, 3).unwrap();
        assert!(p.replica_cycles().contains(&(0, 3)));
        assert_eq!(p.replica_cycles().iter().map(|&(_, l)| l).min(), Some(3));
    }

    #[test]
    fn girth_and_eccentricity_via_projections() {
        let g = petersen();
        assert_eq!(girth_via_projections(&g).unwrap(), Some(5));
        for v in 0..g.order() {
            assert_eq!(eccentricity_via_projection(&g, v).unwrap(), 2);
        }
        // star: center has eccentricity 1
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(eccentricity_via_projection(&star, 0).unwrap(), 1);
        assert_eq!(girth_via_projections(&star).unwrap(), None);
        let two = Graph::new(2);
        assert_eq!(
            girth_via_projections(&two),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn first_level_never_replicated() {
        let g = petersen();
        for v in 0..g.order() {
            let p = build(&g, v, 1).unwrap();
            assert_eq!(p.replica_count(), 0);
        }
    }

    #[test]
    fn proj_file_parsing() {
        let text = "# a comment\n0(1,2)\n\n2(0(1)) # trailing comment\n";
        let projs = parse_proj_file(text).unwrap();
        assert_eq!(projs.len(), 2);
        let g = graph_from_projections(&projs).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(matches!(
            parse_proj_file("0(1,2)\n0()\n"),
            Err(ProjectionError::InFile { line: 2, .. })
        ));
    }
}
