//! Independent verification of synthesized graphs, the three in-repo fixture
//! graphs, and a brute-force existence oracle for desk-scale instances.
//!
//! Everything here goes through the BFS metrics in [`crate::graph`] and the
//! projection machinery in [`crate::projection`]; nothing trusts the
//! solver's own bookkeeping.

use std::fmt;

use thiserror::Error;

use crate::compactness::{classify_compactness, CompactnessClass, CompactnessError};
use crate::graph::{Graph, Vertex};
use crate::projection::{self, Projection, ProjectionError};

/// Hard ceilings for the exhaustive search.
pub const EXHAUSTIVE_MAX_N: usize = 14;
pub const EXHAUSTIVE_MAX_S: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("exhaustive search supports n <= {max_n}, s <= {max_s} (asked n={n}, s={s})")]
    BudgetExceeded {
        n: usize,
        s: usize,
        max_n: usize,
        max_s: usize,
    },
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Compactness(#[from] CompactnessError),
}

pub const FIXTURE_NAMES: [&str; 3] = ["petersen-10-3-2", "cage-30-3-4", "compact-15-4-2"];

fn fixture_text(name: &str) -> Option<&'static str> {
    match name {
        "petersen-10-3-2" => Some(include_str!("../../../fixtures/petersen.proj")),
        "cage-30-3-4" => Some(include_str!("../../../fixtures/cage-30-3-4.proj")),
        "compact-15-4-2" => Some(include_str!("../../../fixtures/compact-15-4-2.proj")),
        _ => None,
    }
}

/// The bracket projections a fixture ships as.
pub fn load_fixture_projections(name: &str) -> Result<Vec<Projection>, OracleError> {
    let text = fixture_text(name).ok_or_else(|| OracleError::UnknownFixture(name.into()))?;
    Ok(projection::parse_proj_file(text)?)
}

/// Reconstructs a fixture graph from its projection file via covered edges.
pub fn load_fixture(name: &str) -> Result<Graph, OracleError> {
    let projections = load_fixture_projections(name)?;
    Ok(projection::graph_from_projections(&projections)?)
}

/// Per-root projection summary inside a [`VerifyReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionSummary {
    pub root: Vertex,
    pub vertex_complete_at_d: bool,
    pub replicas: usize,
}

/// Everything `verify_spec` measured, plus the verdict.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: usize,
    pub target: (usize, usize, usize),
    pub g_min: Option<usize>,
    pub effective_girth: Option<usize>,
    pub order_matches: bool,
    pub edge_count: usize,
    pub regular: bool,
    pub diameter: Option<usize>,
    pub girth: Option<usize>,
    pub class: CompactnessClass,
    pub projections: Vec<ProjectionSummary>,
    pub pass: bool,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, s, d) = self.target;
        writeln!(f, "target: n={} s={} d={} g_min={}", n, s, d, optional(self.g_min))?;
        writeln!(f, "order: {} ({})", self.n, if self.order_matches { "matches" } else { "MISMATCH" })?;
        writeln!(f, "edges: {}", self.edge_count)?;
        writeln!(f, "regular({}): {}", s, yes_no(self.regular))?;
        writeln!(f, "diameter: {} (required <= {})", optional(self.diameter), d)?;
        writeln!(
            f,
            "girth: {} (required >= {})",
            self.girth.map_or_else(|| "acyclic".into(), |g| g.to_string()),
            optional(self.effective_girth)
        )?;
        writeln!(f, "compactness: {}", self.class)?;
        let complete = self.projections.iter().filter(|p| p.vertex_complete_at_d).count();
        let replicas: usize = self.projections.iter().map(|p| p.replicas).sum();
        writeln!(
            f,
            "projections: {}/{} vertex-complete at depth {}, {} replicas total",
            complete,
            self.projections.len(),
            d,
            replicas
        )?;
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn optional(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

/// Measures `g` against the target `(n, s, d, g_min)`. The report passes iff
/// the graph is s-regular on n vertices, its diameter is at most d, its girth
/// meets the effective requirement, every depth-d projection is
/// vertex-complete, and `(n, s, d)` is a compact target at all.
pub fn verify_spec(
    g: &Graph,
    n: usize,
    s: usize,
    d: usize,
    g_min: Option<usize>,
) -> Result<VerifyReport, OracleError> {
    let class = classify_compactness(n, s, d)?;
    let class_ok = matches!(
        class,
        CompactnessClass::Compact { .. } | CompactnessClass::LimitCompact
    );
    let effective_girth = if class == CompactnessClass::LimitCompact {
        Some(g_min.unwrap_or(0).max(2 * d + 1))
    } else {
        g_min
    };

    let order_matches = g.order() == n;
    let regular = g.is_regular(s);
    let diameter = g.diameter().ok();
    let girth = g.girth();
    let projections: Vec<ProjectionSummary> = (0..g.order())
        .map(|root| {
            let p = projection::build(g, root, d).expect("root < n");
            ProjectionSummary {
                root,
                vertex_complete_at_d: p.is_vertex_complete(g.order()),
                replicas: p.replica_count(),
            }
        })
        .collect();

    let girth_ok = match effective_girth {
        None => true,
        Some(req) => girth.is_none_or(|g| g >= req),
    };
    let pass = class_ok
        && order_matches
        && regular
        && diameter.is_some_and(|dia| dia <= d)
        && girth_ok
        && projections.iter().all(|p| p.vertex_complete_at_d);

    Ok(VerifyReport {
        n,
        target: (n, s, d),
        g_min,
        effective_girth,
        order_matches,
        edge_count: g.edge_count(),
        regular,
        diameter,
        girth,
        class,
        projections,
        pass,
    })
}

/// Brute-force existence of an s-regular graph on n vertices with optional
/// diameter and girth constraints. Recursive edge enumeration completing the
/// lowest unsaturated vertex with increasing neighbor ids; degree and girth
/// prune the tree.
pub fn exhaustive_exists(
    n: usize,
    s: usize,
    d_max: Option<usize>,
    g_min: Option<usize>,
) -> Result<bool, OracleError> {
    if n > EXHAUSTIVE_MAX_N || s > EXHAUSTIVE_MAX_S {
        return Err(OracleError::BudgetExceeded {
            n,
            s,
            max_n: EXHAUSTIVE_MAX_N,
            max_s: EXHAUSTIVE_MAX_S,
        });
    }
    if !(n * s).is_multiple_of(2) {
        return Ok(false);
    }
    let mut search = ExhaustiveSearch {
        n,
        s,
        d_max,
        g_min,
        adj: vec![Vec::new(); n],
        deg: vec![0; n],
    };
    Ok(search.run(None))
}

struct ExhaustiveSearch {
    n: usize,
    s: usize,
    d_max: Option<usize>,
    g_min: Option<usize>,
    adj: Vec<Vec<Vertex>>,
    deg: Vec<usize>,
}

impl ExhaustiveSearch {
    fn run(&mut self, resume: Option<(Vertex, Vertex)>) -> bool {
        let u = match (0..self.n).find(|&v| self.deg[v] < self.s) {
            None => return self.accept(),
            Some(u) => u,
        };
        let from = match resume {
            Some((pu, pw)) if pu == u => pw + 1,
            _ => u + 1,
        };
        // not enough available partners left for u
        let available = (from..self.n)
            .filter(|&w| self.deg[w] < self.s && !self.adj[u].contains(&w))
            .count();
        if available < self.s - self.deg[u] {
            return false;
        }
        for w in from..self.n {
            if self.deg[w] == self.s || self.adj[u].contains(&w) {
                continue;
            }
            if !self.girth_ok(u, w) {
                continue;
            }
            self.adj[u].push(w);
            self.adj[w].push(u);
            self.deg[u] += 1;
            self.deg[w] += 1;
            if self.run(Some((u, w))) {
                return true;
            }
            self.adj[u].pop();
            self.adj[w].pop();
            self.deg[u] -= 1;
            self.deg[w] -= 1;
        }
        false
    }

    /// Adding u-w must not close a cycle shorter than g_min.
    fn girth_ok(&self, u: Vertex, w: Vertex) -> bool {
        let g = match self.g_min {
            None => return true,
            Some(g) => g,
        };
        if g <= 3 {
            return true;
        }
        // BFS from u limited to g-2 hops
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if dist[x] + 1 > g - 2 {
                continue;
            }
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist[w] == usize::MAX || dist[w] + 1 >= g
    }

    fn accept(&self) -> bool {
        match self.d_max {
            None => true,
            Some(d) => {
                let g = Graph::from_edges(
                    self.n,
                    (0..self.n)
                        .flat_map(|u| self.adj[u].iter().map(move |&w| (u, w)))
                        .filter(|&(u, w)| u < w),
                )
                .expect("construction keeps the graph simple");
                g.diameter().is_ok_and(|dia| dia <= d)
            }
        }
    }
}
