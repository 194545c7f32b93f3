//! Deterministic synthesis of compact graphs by solving the projection
//! system over a symmetric pair-status table.
//!
//! The state is an n-by-n table of `Fixed | Candidate | Forbidden` cells.
//! Seeding marks a spanning skeleton Fixed; propagation then alternates:
//!
//! * R1 saturation: a row with s fixed neighbors forbids its candidates;
//! * R2 short-cycle bans: committing edge `(row, chosen)` forbids every
//!   pair `(x, chosen)` whose fixed-path through `row` would close a cycle
//!   shorter than the girth target (recorded against the chosen endpoint;
//!   the row side is re-validated whenever an edge is about to be committed);
//! * R3 forced fill: a row with exactly as many candidates as vacancies
//!   fixes them all;
//! * R4 deficiency: fewer candidates than vacancies is a contradiction;
//! * R5 reach feasibility: every vertex must stay reachable within d hops
//!   over Fixed-or-Candidate edges from every root.
//!
//! Search commits one candidate edge per step, branching over one
//! representative per configuration class (rows with equal
//! fixed/candidate sets are interchangeable up to relabeling), and
//! backtracks on contradiction. Every accepted solution is re-checked by
//! the BFS oracles in [`crate::graph`], never by the table's own books.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use thiserror::Error;

use crate::compactness::{classify_compactness, CompactnessClass, CompactnessError};
use crate::graph::{Graph, Vertex};

pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("spec rejected for (n={n}, s={s}, d={d}): {class}")]
    SpecRejected {
        n: usize,
        s: usize,
        d: usize,
        class: CompactnessClass,
    },
    #[error(transparent)]
    Compactness(#[from] CompactnessError),
    #[error("seed vertex {vertex} has degree {degree}, above the target {target}")]
    SeedDegreeExceeded {
        vertex: Vertex,
        degree: usize,
        target: usize,
    },
    #[error("seed graph is disconnected")]
    SeedDisconnected,
    #[error("seed graph has order {got}, spec requires {want}")]
    SeedOrderMismatch { got: usize, want: usize },
}

/// Why a state died during propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contradiction {
    /// Row has fewer candidates than vacancies (R4).
    Deficiency { row: Vertex },
    /// Some vertex cannot be reached within d hops even using every
    /// remaining candidate (R5).
    Unreachable { root: Vertex, vertex: Vertex },
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::Deficiency { row } => write!(f, "row {} deficiency", row),
            Contradiction::Unreachable { root, vertex } => {
                write!(f, "vertex {} unreachable from {} within d", vertex, root)
            }
        }
    }
}

/// Target parameters plus the derived replica budget `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactnessSpec {
    pub n: usize,
    pub s: usize,
    pub d: usize,
    pub g_min: Option<usize>,
    /// `Moore(s, d) - n`; zero for limit-compact targets.
    pub replica_budget: usize,
}

impl CompactnessSpec {
    /// Validates `(n, s, d)` against the Moore bounds; only Compact and
    /// LimitCompact targets are accepted.
    pub fn new(n: usize, s: usize, d: usize, g_min: Option<usize>) -> Result<Self, SynthError> {
        let class = classify_compactness(n, s, d)?;
        let replica_budget = match class {
            CompactnessClass::LimitCompact => 0,
            CompactnessClass::Compact { replicas } => replicas,
            other => {
                return Err(SynthError::SpecRejected {
                    n,
                    s,
                    d,
                    class: other,
                })
            }
        };
        Ok(CompactnessSpec {
            n,
            s,
            d,
            g_min,
            replica_budget,
        })
    }

    /// The girth constraint actually enforced. A limit-compact target has
    /// replica-free d-level projections, which is exactly girth >= 2d+1.
    pub fn effective_girth(&self) -> Option<usize> {
        if self.replica_budget == 0 {
            Some(self.g_min.unwrap_or(0).max(2 * self.d + 1))
        } else {
            self.g_min
        }
    }
}

/// Canonical breadth-first spanning tree used as the default seed: root 0
/// takes `min(s, n-1)` children, every later vertex in id order takes up to
/// `s-1` children while unnumbered vertices remain.
pub fn skeleton_seed(spec: &CompactnessSpec) -> Graph {
    let (n, s) = (spec.n, spec.s);
    let mut g = Graph::new(n);
    let mut next = 1;
    while next < n && next <= s {
        g.add_edge(0, next).expect("tree edge");
        next += 1;
    }
    let mut parent = 1;
    while next < n {
        for _ in 0..s - 1 {
            if next >= n {
                break;
            }
            g.add_edge(parent, next).expect("tree edge");
            next += 1;
        }
        parent += 1;
    }
    g
}

/// A row's configuration: its fixed neighbors and its live candidates.
/// Rows with equal configurations are interchangeable under relabeling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Configuration {
    pub fixed: Vec<Vertex>,
    pub candidates: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatus {
    Fixed,
    Candidate,
    Forbidden,
}

/// What a propagation pass did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropagateReport {
    /// Edges committed by forced fill, in commit order.
    pub forced: Vec<Edge>,
    /// Number of candidate cells forbidden.
    pub banned: usize,
}

/// Symmetric pair-status table plus per-row bookkeeping.
#[derive(Debug, Clone)]
pub struct SynthState {
    spec: CompactnessSpec,
    status: Vec<PairStatus>,
    fixed_adj: Vec<BTreeSet<Vertex>>,
    fixed_deg: Vec<usize>,
    cand_count: Vec<usize>,
    girth_bans: bool,
}

impl SynthState {
    /// Table with every off-diagonal cell Candidate.
    pub fn virgin(spec: CompactnessSpec) -> Self {
        let n = spec.n;
        let mut status = vec![PairStatus::Candidate; n * n];
        for v in 0..n {
            status[v * n + v] = PairStatus::Forbidden;
        }
        SynthState {
            spec,
            status,
            fixed_adj: vec![BTreeSet::new(); n],
            fixed_deg: vec![0; n],
            cand_count: vec![n.saturating_sub(1); n],
            girth_bans: false,
        }
    }

    /// Seeds the table from a connected spanning subgraph: seed edges Fixed,
    /// saturation bans applied, no girth bans yet.
    pub fn seeded(spec: CompactnessSpec, seed: &Graph) -> Result<Self, SynthError> {
        if seed.order() != spec.n {
            return Err(SynthError::SeedOrderMismatch {
                got: seed.order(),
                want: spec.n,
            });
        }
        for v in 0..seed.order() {
            if seed.degree(v) > spec.s {
                return Err(SynthError::SeedDegreeExceeded {
                    vertex: v,
                    degree: seed.degree(v),
                    target: spec.s,
                });
            }
        }
        if !seed.is_connected() {
            return Err(SynthError::SeedDisconnected);
        }
        let mut state = SynthState::virgin(spec);
        for (u, v) in seed.edges() {
            state.fix(u, v);
        }
        Ok(state)
    }

    pub fn spec(&self) -> &CompactnessSpec {
        &self.spec
    }

    fn idx(&self, u: Vertex, v: Vertex) -> usize {
        u * self.spec.n + v
    }

    pub fn status_of(&self, u: Vertex, v: Vertex) -> PairStatus {
        self.status[self.idx(u, v)]
    }

    pub fn vacancies(&self, v: Vertex) -> usize {
        self.spec.s - self.fixed_deg[v]
    }

    pub fn fixed_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.fixed_adj[v]
    }

    /// Live candidates of a row, ascending.
    pub fn candidates_of(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.spec.n)
            .filter(|&u| self.status[self.idx(v, u)] == PairStatus::Candidate)
            .collect()
    }

    pub fn solved(&self) -> bool {
        self.fixed_deg.iter().all(|&d| d == self.spec.s)
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.spec.n);
        for u in 0..self.spec.n {
            for &v in &self.fixed_adj[u] {
                if u < v {
                    g.add_edge(u, v).expect("table cells are consistent");
                }
            }
        }
        g
    }

    /// Switches the girth machinery on. Done once seeding is finished, so
    /// the seed table carries adjacency facts only, no cycle bans yet.
    pub fn enable_girth_bans(&mut self) {
        self.girth_bans = true;
    }

    fn forbid(&mut self, u: Vertex, v: Vertex) -> bool {
        let i = self.idx(u, v);
        if self.status[i] != PairStatus::Candidate {
            return false;
        }
        self.status[i] = PairStatus::Forbidden;
        let j = self.idx(v, u);
        self.status[j] = PairStatus::Forbidden;
        self.cand_count[u] -= 1;
        self.cand_count[v] -= 1;
        true
    }

    /// BFS distances over Fixed edges only.
    fn fixed_distances(&self, root: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.spec.n];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued");
            for &w in &self.fixed_adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True iff committing `(u, v)` now would not close a cycle shorter
    /// than the girth target.
    pub fn edge_feasible(&self, u: Vertex, v: Vertex) -> bool {
        match self.effective_girth_if_active() {
            None => true,
            Some(g) => match self.fixed_distances(u)[v] {
                None => true,
                Some(dist) => dist + 1 >= g,
            },
        }
    }

    fn effective_girth_if_active(&self) -> Option<usize> {
        if self.girth_bans {
            self.spec.effective_girth().filter(|&g| g > 3)
        } else {
            None
        }
    }

    /// Commits `(row, chosen)`: marks the cell Fixed, applies saturation
    /// bans, and records the short-cycle bans visible through the new edge
    /// against the chosen endpoint.
    fn fix(&mut self, row: Vertex, chosen: Vertex) -> usize {
        let mut banned = 0;
        let near_row: Vec<Vertex> = match self.effective_girth_if_active() {
            Some(g) if g >= 4 => {
                let dist = self.fixed_distances(row);
                (0..self.spec.n)
                    .filter(|&x| {
                        x != chosen
                            && x != row
                            && dist[x].is_some_and(|dx| dx + 2 <= g.saturating_sub(1))
                    })
                    .collect()
            }
            _ => Vec::new(),
        };

        let i = self.idx(row, chosen);
        debug_assert_ne!(self.status[i], PairStatus::Fixed);
        if self.status[i] == PairStatus::Candidate {
            self.cand_count[row] -= 1;
            self.cand_count[chosen] -= 1;
        }
        self.status[i] = PairStatus::Fixed;
        let j = self.idx(chosen, row);
        self.status[j] = PairStatus::Fixed;
        self.fixed_adj[row].insert(chosen);
        self.fixed_adj[chosen].insert(row);
        self.fixed_deg[row] += 1;
        self.fixed_deg[chosen] += 1;

        // a path x ~~> row -> chosen of length dist+1 <= g-2 bans (x, chosen)
        for x in near_row {
            if self.status[self.idx(x, chosen)] == PairStatus::Candidate && self.forbid(x, chosen) {
                banned += 1;
            }
        }
        // R1 on both endpoints
        for v in [row, chosen] {
            if self.fixed_deg[v] == self.spec.s {
                banned += self.saturate(v);
            }
        }
        banned
    }

    fn saturate(&mut self, v: Vertex) -> usize {
        let mut banned = 0;
        for u in 0..self.spec.n {
            if self.status[self.idx(v, u)] == PairStatus::Candidate && self.forbid(v, u) {
                banned += 1;
            }
        }
        banned
    }

    /// One full short-cycle scan: forbids every candidate pair whose fixed
    /// distance is at most g-2. Run once when the projection system is set
    /// up; later bans arrive incrementally through `fix`.
    pub fn apply_girth_bans(&mut self) -> usize {
        let g = match self.effective_girth_if_active() {
            Some(g) if g >= 4 => g,
            _ => return 0,
        };
        let mut banned = 0;
        for u in 0..self.spec.n {
            let dist = self.fixed_distances(u);
            for w in u + 1..self.spec.n {
                if self.status[self.idx(u, w)] == PairStatus::Candidate
                    && dist[w].is_some_and(|d| d < g - 1)
                    && self.forbid(u, w)
                {
                    banned += 1;
                }
            }
        }
        banned
    }

    /// Runs R1/R3/R4 to a fixpoint, then the R5 reachability check.
    pub fn propagate(&mut self) -> Result<PropagateReport, Contradiction> {
        let mut report = PropagateReport::default();
        loop {
            let mut changed = false;
            for v in 0..self.spec.n {
                if self.fixed_deg[v] == self.spec.s {
                    if self.cand_count[v] > 0 {
                        report.banned += self.saturate(v);
                        changed = true;
                    }
                    continue;
                }
                let vac = self.vacancies(v);
                if self.cand_count[v] < vac {
                    return Err(Contradiction::Deficiency { row: v });
                }
                if self.cand_count[v] == vac {
                    for u in self.candidates_of(v) {
                        if self.status_of(v, u) != PairStatus::Candidate {
                            continue;
                        }
                        if self.edge_feasible(v, u) {
                            report.banned += self.fix(v, u);
                            report.forced.push((v, u));
                        } else {
                            // stale candidate; the deficiency shows up on
                            // the next sweep
                            self.forbid(v, u);
                            report.banned += 1;
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            self.check_reachability()?;
            return Ok(report);
        }
    }

    /// R5: every vertex reachable from every root within d hops using
    /// Fixed or Candidate edges.
    fn check_reachability(&self) -> Result<(), Contradiction> {
        let n = self.spec.n;
        for root in 0..n {
            let mut dist = vec![None; n];
            dist[root] = Some(0usize);
            let mut queue = VecDeque::from([root]);
            let mut seen = 1;
            while let Some(u) = queue.pop_front() {
                let du = dist[u].expect("queued");
                if du == self.spec.d {
                    continue;
                }
                for w in 0..n {
                    if dist[w].is_none() && self.status[self.idx(u, w)] != PairStatus::Forbidden {
                        dist[w] = Some(du + 1);
                        seen += 1;
                        queue.push_back(w);
                    }
                }
            }
            if seen < n {
                let vertex = (0..n).find(|&v| dist[v].is_none()).expect("missing");
                return Err(Contradiction::Unreachable { root, vertex });
            }
        }
        Ok(())
    }

    /// The remaining-freedom measure: sum over rows with vacancies of
    /// `C(b - b_below, vacancies)`, where `b_below` counts candidates under
    /// the diagonal (already counted by earlier rows). A fully saturated
    /// table counts as exactly one combination.
    pub fn combination_count(&self) -> BigUint {
        let mut sum = BigUint::from(0u32);
        let mut live_rows = 0usize;
        for v in 0..self.spec.n {
            let vac = self.vacancies(v);
            if vac == 0 {
                continue;
            }
            live_rows += 1;
            let below = (0..v)
                .filter(|&u| self.status[self.idx(v, u)] == PairStatus::Candidate)
                .count();
            sum += binomial(self.cand_count[v] - below, vac);
        }
        if live_rows == 0 {
            BigUint::from(1u32)
        } else {
            sum
        }
    }

    /// The pair (fixed neighbors, candidates) of a row.
    pub fn configuration(&self, v: Vertex) -> Configuration {
        Configuration {
            fixed: self.fixed_adj[v].iter().copied().collect(),
            candidates: self.candidates_of(v),
        }
    }

    /// Partition of a row's candidates into equal-configuration classes,
    /// ordered by smallest member.
    pub fn configurations(&self, row: Vertex) -> Vec<Vec<Vertex>> {
        let mut groups: BTreeMap<Configuration, Vec<Vertex>> = BTreeMap::new();
        for u in self.candidates_of(row) {
            groups.entry(self.configuration(u)).or_default().push(u);
        }
        let mut classes: Vec<Vec<Vertex>> = groups.into_values().collect();
        classes.sort_by_key(|class| class[0]);
        classes
    }

    fn first_open_row(&self) -> Option<Vertex> {
        (0..self.spec.n).find(|&v| self.vacancies(v) > 0)
    }

    /// Branch moves for the lowest open row: one representative per
    /// configuration class, in class order.
    pub fn choose_branch(&self) -> Vec<Edge> {
        match self.first_open_row() {
            None => Vec::new(),
            Some(row) => self
                .configurations(row)
                .into_iter()
                .map(|class| (row, class[0]))
                .collect(),
        }
    }

    /// Branch moves without symmetry pruning: every candidate of the row.
    pub fn choose_branch_unpruned(&self) -> Vec<Edge> {
        match self.first_open_row() {
            None => Vec::new(),
            Some(row) => self
                .candidates_of(row)
                .into_iter()
                .map(|u| (row, u))
                .collect(),
        }
    }

    /// A move determined by configuration classes alone: when a row's
    /// candidates fall into exactly as many classes as it has vacancies,
    /// each class fills one vacancy, so a singleton class is committed
    /// outright. Lowest row, lowest class.
    pub fn class_forced_move(&self) -> Option<Edge> {
        for row in 0..self.spec.n {
            let vac = self.vacancies(row);
            if vac == 0 {
                continue;
            }
            let classes = self.configurations(row);
            if classes.len() == vac {
                if let Some(class) = classes.iter().find(|c| c.len() == 1) {
                    return Some((row, class[0]));
                }
            }
        }
        None
    }
}

fn binomial(x: usize, k: usize) -> BigUint {
    if k > x {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(x - i) / BigUint::from(i + 1);
    }
    acc
}

/// Builds the initial solver state: seed fixed, saturation bans, girth
/// bans, one propagation pass. Returns the state together with the
/// propagation outcome (a Contradiction means the projection system is
/// already inconsistent).
pub fn init_state(
    seed: &Graph,
    spec: &CompactnessSpec,
) -> Result<(SynthState, Result<PropagateReport, Contradiction>), SynthError> {
    let mut state = SynthState::seeded(spec.clone(), seed)?;
    state.enable_girth_bans();
    state.apply_girth_bans();
    let outcome = state.propagate();
    Ok((state, outcome))
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// One representative picked among branch alternatives.
    Branched,
    /// Committed because its configuration class was a forced singleton.
    ClassForced,
    /// No choice at all: banning stale candidates forced these edges.
    Propagated,
}

/// One committed step: a chosen edge (absent for propagation-only steps)
/// plus everything propagation added after it.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub index: usize,
    pub kind: StepKind,
    pub edge: Option<Edge>,
    pub forced: Vec<Edge>,
    pub c_after: BigUint,
    pub contradiction: Option<Contradiction>,
}

#[derive(Debug, Clone)]
pub enum TraceEvent {
    Step(StepRecord),
    Backtrack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOutcome {
    Solved,
    Infeasible,
    TimedOut,
}

/// Full record of a solve run: milestone combination counts, the
/// chronological event log, and the surviving step sequence.
#[derive(Debug, Clone)]
pub struct SynthTrace {
    /// C on the empty table, before any edge is placed.
    pub c_empty: BigUint,
    /// C right after the seed is committed (trace line `step 0.1`).
    pub c_after_seed: BigUint,
    /// C after girth bans and the first propagation pass (`step 0.2`);
    /// absent when that pass already found a contradiction.
    pub c_after_init: Option<BigUint>,
    /// Edges forced during the initial propagation pass.
    pub init_forced: Vec<Edge>,
    /// Contradiction that ended the run before or without search.
    pub init_contradiction: Option<Contradiction>,
    /// Chronological log: every committed step and every backtrack.
    pub events: Vec<TraceEvent>,
    /// The surviving path: replaying these edges onto the seed yields the
    /// returned graph.
    pub steps: Vec<StepRecord>,
    pub backtracks: usize,
    /// Edges the seed leaves open.
    pub missing_edges: usize,
    pub outcome: TraceOutcome,
}

impl SynthTrace {
    /// Line-oriented rendering: `step K: +u-v [forced: a-b,...] C=<int>`,
    /// `backtrack` lines, and a final `solved`/`infeasible` line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("step 0: C={}\n", self.c_empty));
        out.push_str(&format!("step 0.1: seed C={}\n", self.c_after_seed));
        match (&self.c_after_init, &self.init_contradiction) {
            (Some(c), _) => {
                out.push_str("step 0.2: propagate");
                if !self.init_forced.is_empty() {
                    out.push_str(&format!(" [forced: {}]", fmt_edges(&self.init_forced)));
                }
                out.push_str(&format!(" C={}\n", c));
            }
            (None, Some(contra)) => {
                out.push_str(&format!("step 0.2: propagate contradiction: {}\n", contra));
            }
            (None, None) => {}
        }
        for event in &self.events {
            match event {
                TraceEvent::Step(step) => {
                    out.push_str(&format!("step {}:", step.index));
                    if let Some((u, v)) = step.edge {
                        out.push_str(&format!(" +{}-{}", u, v));
                    }
                    if !step.forced.is_empty() {
                        out.push_str(&format!(" [forced: {}]", fmt_edges(&step.forced)));
                    }
                    match &step.contradiction {
                        Some(contra) => out.push_str(&format!(" contradiction: {}\n", contra)),
                        None => out.push_str(&format!(" C={}\n", step.c_after)),
                    }
                }
                TraceEvent::Backtrack => out.push_str("backtrack\n"),
            }
        }
        out.push_str(match self.outcome {
            TraceOutcome::Solved => "solved\n",
            TraceOutcome::Infeasible => "infeasible\n",
            TraceOutcome::TimedOut => "timeout\n",
        });
        out
    }

    /// Applies the initial forced edges and the surviving steps to the seed.
    pub fn replay_onto(&self, seed: &Graph) -> Graph {
        let mut g = seed.clone();
        for &(u, v) in &self.init_forced {
            g.add_edge(u, v).expect("trace edges extend the seed");
        }
        for step in &self.steps {
            if let Some((u, v)) = step.edge {
                g.add_edge(u, v).expect("trace edges extend the seed");
            }
            for &(u, v) in &step.forced {
                g.add_edge(u, v).expect("trace edges extend the seed");
            }
        }
        g
    }

    /// Numbered steps on the surviving path.
    pub fn chosen_steps(&self) -> usize {
        self.steps.len()
    }
}

fn fmt_edges(edges: &[Edge]) -> String {
    edges
        .iter()
        .map(|(u, v)| format!("{}-{}", u, v))
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Collapse equal-configuration candidates to one representative and
    /// allow class-forced moves. Disable to branch over every candidate.
    pub configuration_pruning: bool,
    /// Wall-clock budget for the search.
    pub budget: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            configuration_pruning: true,
            budget: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Solved { graph: Graph, trace: SynthTrace },
    Infeasible { trace: SynthTrace },
    TimedOut { trace: SynthTrace },
}

impl SolveOutcome {
    pub fn trace(&self) -> &SynthTrace {
        match self {
            SolveOutcome::Solved { trace, .. }
            | SolveOutcome::Infeasible { trace }
            | SolveOutcome::TimedOut { trace } => trace,
        }
    }
}

struct SearchCtx {
    opts: SolveOptions,
    deadline: Option<Instant>,
    events: Vec<TraceEvent>,
    backtracks: usize,
    step_counter: usize,
}

struct TimedOutMarker;

/// Depth-first solution of the projection system. The seed defaults to
/// `skeleton_seed`. Returns the first graph whose completed table passes
/// the independent oracle (regularity, diameter, girth).
pub fn solve(
    spec: &CompactnessSpec,
    seed: Option<&Graph>,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SynthError> {
    let default_seed;
    let seed = match seed {
        Some(g) => g,
        None => {
            default_seed = skeleton_seed(spec);
            &default_seed
        }
    };

    let c_empty = SynthState::virgin(spec.clone()).combination_count();
    let mut state = SynthState::seeded(spec.clone(), seed)?;
    let missing_edges = spec.n * spec.s / 2 - seed.edge_count();
    let mut trace = SynthTrace {
        c_empty,
        c_after_seed: state.combination_count(),
        c_after_init: None,
        init_forced: Vec::new(),
        init_contradiction: None,
        events: Vec::new(),
        steps: Vec::new(),
        backtracks: 0,
        missing_edges,
        outcome: TraceOutcome::Infeasible,
    };

    // an odd degree sum admits no s-regular graph at all
    if !(spec.n * spec.s).is_multiple_of(2) {
        return Ok(SolveOutcome::Infeasible { trace });
    }

    state.enable_girth_bans();
    state.apply_girth_bans();
    match state.propagate() {
        Err(contra) => {
            trace.init_contradiction = Some(contra);
            return Ok(SolveOutcome::Infeasible { trace });
        }
        Ok(report) => {
            trace.init_forced = report.forced;
        }
    }
    trace.c_after_init = Some(state.combination_count());

    let mut ctx = SearchCtx {
        opts: opts.clone(),
        deadline: opts.budget.map(|b| Instant::now() + b),
        events: Vec::new(),
        backtracks: 0,
        step_counter: 0,
    };
    let result = dfs(&mut state, &mut ctx);
    trace.events = ctx.events;
    trace.backtracks = ctx.backtracks;
    match result {
        Err(TimedOutMarker) => {
            trace.outcome = TraceOutcome::TimedOut;
            Ok(SolveOutcome::TimedOut { trace })
        }
        Ok(Some((graph, steps))) => {
            trace.steps = steps;
            trace.outcome = TraceOutcome::Solved;
            Ok(SolveOutcome::Solved { graph, trace })
        }
        Ok(None) => Ok(SolveOutcome::Infeasible { trace }),
    }
}

/// Checks a completed table against the independent BFS oracles.
fn oracle_accepts(spec: &CompactnessSpec, g: &Graph) -> bool {
    if !g.is_regular(spec.s) {
        return false;
    }
    match g.diameter() {
        Ok(d) if d <= spec.d => {}
        _ => return false,
    }
    match spec.effective_girth() {
        None => true,
        Some(gm) => g.girth().is_none_or(|girth| girth >= gm),
    }
}

fn dfs(
    state: &mut SynthState,
    ctx: &mut SearchCtx,
) -> Result<Option<(Graph, Vec<StepRecord>)>, TimedOutMarker> {
    // steps committed inside this node while catching up lazy girth bans;
    // they precede whatever branch succeeds below
    let mut refinements: Vec<StepRecord> = Vec::new();
    loop {
        if let Some(deadline) = ctx.deadline {
            if Instant::now() > deadline {
                return Err(TimedOutMarker);
            }
        }
        if state.solved() {
            let graph = state.to_graph();
            if oracle_accepts(state.spec(), &graph) {
                return Ok(Some((graph, refinements)));
            }
            return Ok(None);
        }

        let (moves, kind) = if ctx.opts.configuration_pruning {
            match state.class_forced_move() {
                Some(edge) => (vec![edge], StepKind::ClassForced),
                None => (state.choose_branch(), StepKind::Branched),
            }
        } else {
            (state.choose_branch_unpruned(), StepKind::Branched)
        };
        debug_assert!(!moves.is_empty(), "open rows always have candidates");

        // weed out moves the lazy girth bans have not caught yet
        let mut any_banned = false;
        for &(row, u) in &moves {
            if !state.edge_feasible(row, u) {
                state.forbid(row, u);
                any_banned = true;
            }
        }
        if any_banned {
            match state.propagate() {
                Err(_) => return Ok(None),
                Ok(report) => {
                    if !report.forced.is_empty() {
                        ctx.step_counter += 1;
                        let record = StepRecord {
                            index: ctx.step_counter,
                            kind: StepKind::Propagated,
                            edge: None,
                            forced: report.forced,
                            c_after: state.combination_count(),
                            contradiction: None,
                        };
                        ctx.events.push(TraceEvent::Step(record.clone()));
                        refinements.push(record);
                    }
                }
            }
            continue;
        }

        for &(row, u) in &moves {
            let mut child = state.clone();
            child.fix(row, u);
            ctx.step_counter += 1;
            let index = ctx.step_counter;
            match child.propagate() {
                Err(contra) => {
                    ctx.events.push(TraceEvent::Step(StepRecord {
                        index,
                        kind,
                        edge: Some((row, u)),
                        forced: Vec::new(),
                        c_after: child.combination_count(),
                        contradiction: Some(contra),
                    }));
                    ctx.events.push(TraceEvent::Backtrack);
                    ctx.backtracks += 1;
                }
                Ok(report) => {
                    let record = StepRecord {
                        index,
                        kind,
                        edge: Some((row, u)),
                        forced: report.forced,
                        c_after: child.combination_count(),
                        contradiction: None,
                    };
                    ctx.events.push(TraceEvent::Step(record.clone()));
                    match dfs(&mut child, ctx)? {
                        Some((graph, path)) => {
                            let mut full = refinements;
                            full.push(record);
                            full.extend(path);
                            return Ok(Some((graph, full)));
                        }
                        None => {
                            ctx.events.push(TraceEvent::Backtrack);
                            ctx.backtracks += 1;
                        }
                    }
                }
            }
        }
        return Ok(None);
    }
}
