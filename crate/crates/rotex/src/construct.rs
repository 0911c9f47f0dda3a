//! Constructive search for spanning cycles and few-leaf spanning trees.
//!
//! The engine drives a maximal path through rotate/absorb steps. Each
//! iteration either closes the current path into a cycle, lengthens it, or
//! gets stuck; getting stuck pins down enough local structure (maximal
//! path, nonadjacent endpoints, no crossing chord) to read off a 4-vertex
//! pattern occurrence whose pair violates the degree-sum condition. So the
//! caller always receives a checkable object: a certificate or a witness.
//!
//! The potential (current path or cycle length) strictly increases on
//! every non-stuck iteration, which bounds the loop by n iterations; the
//! instrumented entry points expose iteration and probe counters so tests
//! can assert the per-iteration work bound instead of trusting it.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::conditions::Precondition;
use crate::graph::{Graph, GraphError, VertexSubset};
use crate::patterns::{classify_subset, PatternId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("path vertices must be distinct and consecutively adjacent: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no edge leaves the cycle; it spans its whole component")]
    NoAttachment,
    #[error("spanning trees need a connected graph")]
    Disconnected,
    #[error("k-leaf search needs k >= 2, got {0}")]
    KTooSmall(usize),
    #[error("internal invariant breached: {0}")]
    InternalInvariantBreach(String),
}

/// Validation failures for certificates and witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("cycle must visit every vertex exactly once (got {got}, graph has {expected})")]
    WrongCycleLength { got: usize, expected: usize },
    #[error("vertex {0} repeats in the certificate")]
    RepeatedVertex(usize),
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("({0}, {1}) is not an edge of the graph")]
    MissingEdge(usize, usize),
    #[error("tree must have {expected} edges, got {got}")]
    WrongEdgeCount { got: usize, expected: usize },
    #[error("claimed edges do not form a spanning tree")]
    NotSpanning,
    #[error("leaf count {claimed} does not match the tree, which has {actual}")]
    WrongLeafCount { claimed: usize, actual: usize },
    #[error("leaf count {leaves} exceeds the requested bound k = {k}")]
    TooManyLeaves { leaves: usize, k: usize },
    #[error("subset does not induce the claimed pattern")]
    WrongPattern,
    #[error("witness pair must be two distinct subset members")]
    PairOutsideSubset,
    #[error("witness pair is adjacent")]
    AdjacentPair,
    #[error("recorded degree sum {recorded} differs from actual {actual}")]
    WrongDegreeSum { recorded: usize, actual: usize },
    #[error("degree sum {degree_sum} does not violate threshold {threshold}")]
    NotAViolation { degree_sum: usize, threshold: i64 },
    #[error("precondition label {label} does not hold on this graph")]
    PreconditionAbsent { label: &'static str },
}

/// A simple path: distinct vertices, consecutive ones adjacent. The
/// membership mask makes "is v on the path" O(1) for the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathState {
    vertices: Vec<usize>,
    on_path: Vec<bool>,
}

impl PathState {
    /// Builds a path over vertices of `g`, validating the path property.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<PathState, ConstructError> {
        let n = g.vertex_count();
        let mut on_path = vec![false; n];
        for &v in &vertices {
            if v >= n {
                return Err(ConstructError::InvalidPath(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            if on_path[v] {
                return Err(ConstructError::InvalidPath(format!("vertex {v} repeats")));
            }
            on_path[v] = true;
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(ConstructError::InvalidPath(format!(
                    "({}, {}) is not an edge",
                    w[0], w[1]
                )));
            }
        }
        Ok(PathState { vertices, on_path })
    }

    fn single(n: usize, v: usize) -> PathState {
        let mut on_path = vec![false; n];
        on_path[v] = true;
        PathState {
            vertices: vec![v],
            on_path,
        }
    }

    /// Trusted constructor for sequences the engine has already verified.
    fn from_trusted(n: usize, vertices: Vec<usize>) -> PathState {
        let mut on_path = vec![false; n];
        for &v in &vertices {
            debug_assert!(!on_path[v]);
            on_path[v] = true;
        }
        PathState { vertices, on_path }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.on_path[v]
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }

    fn reversed(mut self) -> PathState {
        self.vertices.reverse();
        self
    }

    /// True when neither endpoint has a neighbor off the path.
    pub fn is_maximal(&self, g: &Graph) -> bool {
        let ends = [self.first(), self.last()];
        ends.iter()
            .all(|&e| g.neighbors(e).all(|u| self.on_path[u]))
    }
}

impl fmt::Display for PathState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Work counters for the engine loops. `probes` counts adjacency queries
/// and neighbor-scan steps; tests assert it stays within an O(n^2) budget
/// per iteration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub iterations: usize,
    pub probes: u64,
}

/// Outcome of one rotate-or-close step on a maximal path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RotateOutcome {
    /// The path closed into a cycle on its own vertex set.
    ClosedCycle(Vec<usize>),
    /// A crossing chord produced a cycle that absorbed an outside vertex.
    LongerPath(PathState),
    /// Nonadjacent endpoints and no crossing chord: rotation is exhausted.
    Stuck(PathState),
}

/// A spanning cycle in vertex order. Order 1 (a single vertex) and order 2
/// (both endpoints of one edge) count as cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonCycleCert {
    vertices: Vec<usize>,
}

impl HamiltonCycleCert {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), CertError> {
        let n = g.vertex_count();
        if self.vertices.len() != n {
            return Err(CertError::WrongCycleLength {
                got: self.vertices.len(),
                expected: n,
            });
        }
        let mut seen = vec![false; n];
        for &v in &self.vertices {
            if v >= n {
                return Err(CertError::UnknownVertex(v));
            }
            if seen[v] {
                return Err(CertError::RepeatedVertex(v));
            }
            seen[v] = true;
        }
        match n {
            0 | 1 => Ok(()),
            2 => {
                if g.has_edge(self.vertices[0], self.vertices[1]) {
                    Ok(())
                } else {
                    Err(CertError::MissingEdge(self.vertices[0], self.vertices[1]))
                }
            }
            _ => {
                for i in 0..n {
                    let u = self.vertices[i];
                    let v = self.vertices[(i + 1) % n];
                    if !g.has_edge(u, v) {
                        return Err(CertError::MissingEdge(u, v));
                    }
                }
                Ok(())
            }
        }
    }
}

/// A spanning tree with its leaf count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KTreeCert {
    edges: Vec<(usize, usize)>,
    leaf_count: usize,
}

impl KTreeCert {
    pub(crate) fn from_edges(n: usize, mut edges: Vec<(usize, usize)>) -> KTreeCert {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let leaf_count = degree.iter().filter(|&&d| d == 1).count();
        KTreeCert { edges, leaf_count }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    /// Checks the spanning-tree property against `g` and the leaf bound
    /// against `k`.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<(), CertError> {
        let n = g.vertex_count();
        let expected = n.saturating_sub(1);
        if self.edges.len() != expected {
            return Err(CertError::WrongEdgeCount {
                got: self.edges.len(),
                expected,
            });
        }
        let mut degree = vec![0usize; n];
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut Vec<usize>, v: usize) -> usize {
            if dsu[v] != v {
                dsu[v] = find(dsu, dsu[v]);
            }
            dsu[v]
        }
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(CertError::UnknownVertex(u.max(v)));
            }
            if !g.has_edge(u, v) {
                return Err(CertError::MissingEdge(u, v));
            }
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru == rv {
                return Err(CertError::NotSpanning);
            }
            dsu[ru] = rv;
            degree[u] += 1;
            degree[v] += 1;
        }
        if n > 0 {
            let root = find(&mut dsu, 0);
            if (1..n).any(|v| find(&mut dsu, v) != root) {
                return Err(CertError::NotSpanning);
            }
        }
        let actual = degree.iter().filter(|&&d| d == 1).count();
        if actual != self.leaf_count {
            return Err(CertError::WrongLeafCount {
                claimed: self.leaf_count,
                actual,
            });
        }
        if self.leaf_count > k {
            return Err(CertError::TooManyLeaves {
                leaves: self.leaf_count,
                k,
            });
        }
        Ok(())
    }
}

/// A pattern occurrence whose nonadjacent pair falls below the threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub subset: VertexSubset,
    pub pattern: PatternId,
    pub pair: (usize, usize),
    pub degree_sum: usize,
    pub threshold: i64,
}

/// Constructive evidence that the degree-sum hypothesis fails on this graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ViolationWitness {
    /// Found by a stuck maximal path.
    #[serde(rename = "PATTERN_PAIR")]
    PatternPair(PatternWitness),
    /// Found by straddling two components.
    #[serde(rename = "DISCONNECTED_PATTERN")]
    DisconnectedPattern(PatternWitness),
    /// A structural precondition fails; no pattern is needed.
    #[serde(rename = "PRECONDITION")]
    Precondition { label: Precondition, threshold: i64 },
}

impl ViolationWitness {
    pub fn threshold(&self) -> i64 {
        match self {
            ViolationWitness::PatternPair(w) | ViolationWitness::DisconnectedPattern(w) => {
                w.threshold
            }
            ViolationWitness::Precondition { threshold, .. } => *threshold,
        }
    }

    pub fn pattern_witness(&self) -> Option<&PatternWitness> {
        match self {
            ViolationWitness::PatternPair(w) | ViolationWitness::DisconnectedPattern(w) => Some(w),
            ViolationWitness::Precondition { .. } => None,
        }
    }

    /// Re-derives every claim the witness makes against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CertError> {
        match self {
            ViolationWitness::PatternPair(w) | ViolationWitness::DisconnectedPattern(w) => {
                let ids = w.subset.ids();
                if ids.len() != 4 {
                    return Err(CertError::WrongPattern);
                }
                if let Some(&v) = ids.iter().find(|&&v| v >= g.vertex_count()) {
                    return Err(CertError::UnknownVertex(v));
                }
                let quad = [ids[0], ids[1], ids[2], ids[3]];
                if classify_subset(g, quad) != Some(w.pattern) {
                    return Err(CertError::WrongPattern);
                }
                let (x, y) = w.pair;
                if x == y || !w.subset.contains(x) || !w.subset.contains(y) {
                    return Err(CertError::PairOutsideSubset);
                }
                if g.has_edge(x, y) {
                    return Err(CertError::AdjacentPair);
                }
                let actual = g.degree(x) + g.degree(y);
                if actual != w.degree_sum {
                    return Err(CertError::WrongDegreeSum {
                        recorded: w.degree_sum,
                        actual,
                    });
                }
                if (w.degree_sum as i64) >= w.threshold {
                    return Err(CertError::NotAViolation {
                        degree_sum: w.degree_sum,
                        threshold: w.threshold,
                    });
                }
                Ok(())
            }
            ViolationWitness::Precondition { label, .. } => {
                let holds = match label {
                    Precondition::TooFewVertices => g.vertex_count() < 4,
                    Precondition::NoDegreeTwoVertex => g.max_degree() <= 1,
                    Precondition::Disconnected => !g.is_connected(),
                };
                if holds {
                    Ok(())
                } else {
                    Err(CertError::PreconditionAbsent {
                        label: label.label(),
                    })
                }
            }
        }
    }
}

/// Exhaustive answer for graphs too small for the pattern machinery
/// (n <= 3): a cycle of order 1 is a vertex, of order 2 an edge, of order
/// 3 a triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallVerdict {
    pub cycle: Option<HamiltonCycleCert>,
}

/// Result of the spanning-cycle search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleOutcome {
    Cycle(HamiltonCycleCert),
    Witness(ViolationWitness),
    Small(SmallVerdict),
}

/// Result of the k-leaf spanning-tree search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeOutcome {
    Tree(KTreeCert),
    Witness(ViolationWitness),
}

/// Result of driving a path to spanning length or exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathOutcome {
    Spanning(PathState),
    Stuck(PathState),
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Extends both path ends greedily, always taking the smallest off-path
/// neighbor, until neither endpoint can move.
fn maximalize(g: &Graph, path: &mut PathState, stats: &mut EngineStats) {
    loop {
        let tail = path.last();
        let mut next = None;
        for u in g.neighbors(tail) {
            stats.probes += 1;
            if !path.on_path[u] {
                next = Some(u);
                break;
            }
        }
        match next {
            Some(u) => {
                path.vertices.push(u);
                path.on_path[u] = true;
            }
            None => break,
        }
    }
    loop {
        let head = path.first();
        let mut next = None;
        for u in g.neighbors(head) {
            stats.probes += 1;
            if !path.on_path[u] {
                next = Some(u);
                break;
            }
        }
        match next {
            Some(u) => {
                path.vertices.insert(0, u);
                path.on_path[u] = true;
            }
            None => break,
        }
    }
}

/// Grows a maximal path from `start`: extend the tail with smallest
/// off-path neighbors until stuck, then the head likewise.
pub fn grow_maximal_path(g: &Graph, start: usize) -> PathState {
    assert!(
        start < g.vertex_count(),
        "start vertex {start} out of range"
    );
    let mut stats = EngineStats::default();
    let mut path = PathState::single(g.vertex_count(), start);
    maximalize(g, &mut path, &mut stats);
    path
}

fn rotate_or_close(g: &Graph, path: PathState, stats: &mut EngineStats) -> RotateOutcome {
    let p = path.order();
    let n = g.vertex_count();
    if p == 0 {
        return RotateOutcome::Stuck(path);
    }
    if p >= 2 {
        stats.probes += 1;
        if g.has_edge(path.first(), path.last()) {
            return RotateOutcome::ClosedCycle(path.vertices);
        }
    }
    // Crossing chord: smallest position i >= 3 (1-indexed) with
    // x_1 x_i in E and x_{i-1} x_p in E.
    let xs = &path.vertices;
    let (first, last) = (xs[0], xs[p.saturating_sub(1)]);
    for idx in 2..p.saturating_sub(1) {
        stats.probes += 2;
        if g.has_edge(first, xs[idx]) && g.has_edge(xs[idx - 1], last) {
            // Cycle x_1 .. x_{i-1}, x_p, x_{p-1}, .., x_i.
            let mut cycle = xs[..idx].to_vec();
            cycle.extend(xs[idx..].iter().rev());
            if p == n {
                return RotateOutcome::ClosedCycle(cycle);
            }
            return match absorb(g, &cycle, stats) {
                Ok(longer) => RotateOutcome::LongerPath(longer),
                // The cycle spans its whole component; hand it back closed.
                Err(ConstructError::NoAttachment) => RotateOutcome::ClosedCycle(cycle),
                Err(e) => unreachable!("absorb only signals NoAttachment: {e}"),
            };
        }
    }
    RotateOutcome::Stuck(path)
}

/// One rotate-or-close step. Requires a maximal path; if the endpoints are
/// adjacent the path closes into a cycle, otherwise the smallest crossing
/// chord re-forms a cycle which (when not already spanning) absorbs an
/// outside vertex into a longer path.
pub fn try_rotate_or_close(g: &Graph, path: PathState) -> RotateOutcome {
    debug_assert!(path.is_maximal(g), "rotation requires a maximal path");
    let mut stats = EngineStats::default();
    rotate_or_close(g, path, &mut stats)
}

fn absorb(g: &Graph, cycle: &[usize], stats: &mut EngineStats) -> Result<PathState, ConstructError> {
    let n = g.vertex_count();
    let mut on_cycle = vec![false; n];
    for &v in cycle {
        on_cycle[v] = true;
    }
    // Lexicographically smallest attachment edge (y1, y2), y1 on the cycle.
    let mut attachment = None;
    'scan: for y1 in (0..n).filter(|&v| on_cycle[v]) {
        for y2 in g.neighbors(y1) {
            stats.probes += 1;
            if !on_cycle[y2] {
                attachment = Some((y1, y2));
                break 'scan;
            }
        }
    }
    let Some((y1, y2)) = attachment else {
        return Err(ConstructError::NoAttachment);
    };
    // Open the cycle at the edge from y1 to its cyclic successor: walk from
    // the successor all the way round to y1, then step off to y2.
    let j = cycle
        .iter()
        .position(|&v| v == y1)
        .expect("attachment vertex lies on the cycle");
    let m = cycle.len();
    let mut vertices = Vec::with_capacity(m + 1);
    for t in 1..=m {
        vertices.push(cycle[(j + t) % m]);
    }
    vertices.push(y2);
    Ok(PathState::from_trusted(n, vertices))
}

/// Opens `cycle` at an edge incident to the smallest attachment and appends
/// the outside endpoint, yielding a path one vertex longer than the cycle.
pub fn absorb_into_cycle(g: &Graph, cycle: &[usize]) -> Result<PathState, ConstructError> {
    let mut stats = EngineStats::default();
    absorb(g, cycle, &mut stats)
}

/// Reads a violating pattern pair off a stuck maximal path: endpoints
/// nonadjacent, no crossing chord. `threshold` is n for the cycle
/// condition and n - k + 1 for tree searches.
///
/// Signals `InternalInvariantBreach` when the located subset fails to
/// classify or the pair fails to violate; given the stated preconditions
/// that must never happen, and the acceptance suite enforces it.
pub fn extract_witness(
    g: &Graph,
    path: &PathState,
    threshold: i64,
) -> Result<ViolationWitness, ConstructError> {
    let breach = |msg: &str| ConstructError::InternalInvariantBreach(msg.to_string());
    let p = path.order();
    if p < 3 {
        return Err(breach("witness extraction needs a stuck path of order >= 3"));
    }
    let forward;
    let backward;
    let xs: &[usize] = if g.degree(path.first()) >= 2 {
        forward = path.clone();
        forward.vertices()
    } else if g.degree(path.last()) >= 2 {
        backward = path.clone().reversed();
        backward.vertices()
    } else {
        // Both endpoints have degree 1.
        let (subset_ids, pattern, pair) = match p {
            3 => {
                let center = path.vertices[1];
                let y = (0..g.vertex_count())
                    .find(|&y| !path.on_path[y] && g.has_edge(center, y))
                    .ok_or_else(|| breach("stuck 3-path center has no outside neighbor"))?;
                (
                    vec![center, y, path.vertices[0], path.vertices[2]],
                    PatternId::K13,
                    ordered(path.vertices[0], path.vertices[2]),
                )
            }
            4 => (
                path.vertices.clone(),
                PatternId::P4,
                ordered(path.vertices[0], path.vertices[3]),
            ),
            _ => (
                vec![
                    path.vertices[0],
                    path.vertices[1],
                    path.vertices[2],
                    path.vertices[p - 1],
                ],
                PatternId::K12UnionK1,
                ordered(path.vertices[0], path.vertices[p - 1]),
            ),
        };
        return finish_pattern_witness(g, subset_ids, pattern, pair, threshold, false);
    };
    let (x1, xp) = (xs[0], xs[p - 1]);
    if g.has_edge(x1, xp) {
        return Err(breach("stuck path endpoints must be nonadjacent"));
    }
    // Smallest i >= 3 (1-indexed) with x_1 x_i adjacent; exists because
    // x_1 has a second neighbor and every neighbor lies on the path.
    let idx = (2..p - 1)
        .find(|&idx| g.has_edge(x1, xs[idx]))
        .ok_or_else(|| breach("endpoint of degree >= 2 has no chord into the path"))?;
    let (xim1, xi) = (xs[idx - 1], xs[idx]);
    let pattern = match (g.has_edge(x1, xim1), g.has_edge(xi, xp)) {
        (false, false) => PatternId::K12UnionK1,
        (false, true) => PatternId::K13,
        (true, false) => PatternId::K3UnionK1,
        (true, true) => PatternId::K13PlusE,
    };
    finish_pattern_witness(
        g,
        vec![x1, xim1, xi, xp],
        pattern,
        ordered(x1, xp),
        threshold,
        false,
    )
}

fn finish_pattern_witness(
    g: &Graph,
    subset_ids: Vec<usize>,
    pattern: PatternId,
    pair: (usize, usize),
    threshold: i64,
    disconnected: bool,
) -> Result<ViolationWitness, ConstructError> {
    let breach = |msg: String| ConstructError::InternalInvariantBreach(msg);
    let subset = VertexSubset::new(subset_ids)
        .map_err(|e| breach(format!("witness subset is not four distinct vertices: {e}")))?;
    let ids = subset.ids();
    let quad = [ids[0], ids[1], ids[2], ids[3]];
    let classified = classify_subset(g, quad);
    if classified != Some(pattern) {
        return Err(breach(format!(
            "witness subset {subset} classifies as {classified:?}, expected {pattern}"
        )));
    }
    if g.has_edge(pair.0, pair.1) {
        return Err(breach(format!("witness pair {pair:?} is adjacent")));
    }
    let degree_sum = g.degree(pair.0) + g.degree(pair.1);
    if (degree_sum as i64) >= threshold {
        return Err(breach(format!(
            "witness pair {pair:?} has degree sum {degree_sum}, not below {threshold}"
        )));
    }
    let witness = PatternWitness {
        subset,
        pattern,
        pair,
        degree_sum,
        threshold,
    };
    Ok(if disconnected {
        ViolationWitness::DisconnectedPattern(witness)
    } else {
        ViolationWitness::PatternPair(witness)
    })
}

/// Witness for a disconnected graph: a degree->=2 vertex v with neighbors
/// x, y in its component and any vertex z elsewhere give an induced
/// K_{1,2} ∪ K_1 (or K_3 ∪ K_1 when xy is an edge) whose pair (v, z) sums
/// to at most n - 2.
fn disconnected_witness(g: &Graph, threshold: i64) -> Result<ViolationWitness, ConstructError> {
    let n = g.vertex_count();
    let Some(v) = (0..n).find(|&v| g.degree(v) >= 2) else {
        return Ok(ViolationWitness::Precondition {
            label: Precondition::NoDegreeTwoVertex,
            threshold,
        });
    };
    let mut nbrs = g.neighbors(v);
    let x = nbrs.next().expect("degree >= 2");
    let y = nbrs.next().expect("degree >= 2");
    let components = g.connected_components();
    let mut comp = vec![usize::MAX; n];
    for (ci, block) in components.iter().enumerate() {
        for &u in block {
            comp[u] = ci;
        }
    }
    let z = (0..n)
        .find(|&u| comp[u] != comp[v])
        .ok_or_else(|| ConstructError::InternalInvariantBreach("graph is connected".into()))?;
    let pattern = if g.has_edge(x, y) {
        PatternId::K3UnionK1
    } else {
        PatternId::K12UnionK1
    };
    finish_pattern_witness(g, vec![v, x, y, z], pattern, ordered(v, z), threshold, true)
}

fn small_verdict(g: &Graph) -> SmallVerdict {
    let n = g.vertex_count();
    let cycle = match n {
        1 => Some(vec![0]),
        2 if g.has_edge(0, 1) => Some(vec![0, 1]),
        3 if g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2) => Some(vec![0, 1, 2]),
        _ => None,
    };
    SmallVerdict {
        cycle: cycle.map(|vertices| HamiltonCycleCert { vertices }),
    }
}

/// Searches for a spanning cycle. Always returns a checkable object:
/// a certificate, a hypothesis-violation witness, or an exhaustive small
/// verdict for n <= 3. Whenever the restricted degree-sum condition holds
/// (threshold n, all five patterns), the result is a certificate.
pub fn find_hamilton_cycle(g: &Graph) -> Result<CycleOutcome, ConstructError> {
    find_hamilton_cycle_instrumented(g).map(|(outcome, _)| outcome)
}

/// [`find_hamilton_cycle`] with its work counters exposed.
pub fn find_hamilton_cycle_instrumented(
    g: &Graph,
) -> Result<(CycleOutcome, EngineStats), ConstructError> {
    let n = g.vertex_count();
    let mut stats = EngineStats::default();
    if n <= 3 {
        return Ok((CycleOutcome::Small(small_verdict(g)), stats));
    }
    if !g.is_connected() {
        let witness = disconnected_witness(g, n as i64)?;
        return Ok((CycleOutcome::Witness(witness), stats));
    }
    let mut path = PathState::single(n, 0);
    maximalize(g, &mut path, &mut stats);
    loop {
        stats.iterations += 1;
        if stats.iterations > n + 1 {
            return Err(ConstructError::InternalInvariantBreach(
                "cycle engine exceeded its iteration bound".into(),
            ));
        }
        match rotate_or_close(g, path, &mut stats) {
            RotateOutcome::ClosedCycle(cycle) => {
                if cycle.len() == n {
                    return Ok((
                        CycleOutcome::Cycle(HamiltonCycleCert { vertices: cycle }),
                        stats,
                    ));
                }
                // Connected and not spanning: an attachment edge must exist.
                path = absorb(g, &cycle, &mut stats)?;
                maximalize(g, &mut path, &mut stats);
            }
            RotateOutcome::LongerPath(longer) => {
                path = longer;
                maximalize(g, &mut path, &mut stats);
            }
            RotateOutcome::Stuck(stuck) => {
                let witness = extract_witness(g, &stuck, n as i64)?;
                return Ok((CycleOutcome::Witness(witness), stats));
            }
        }
    }
}

/// Drives a path to spanning length if rotation allows, or returns the
/// stuck path. Requires a connected graph.
pub fn find_spanning_path(g: &Graph) -> Result<PathOutcome, ConstructError> {
    find_spanning_path_instrumented(g).map(|(outcome, _)| outcome)
}

/// [`find_spanning_path`] with its work counters exposed.
pub fn find_spanning_path_instrumented(
    g: &Graph,
) -> Result<(PathOutcome, EngineStats), ConstructError> {
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let n = g.vertex_count();
    let mut stats = EngineStats::default();
    if n == 0 {
        // The empty path spans the empty graph.
        let empty = PathState {
            vertices: Vec::new(),
            on_path: Vec::new(),
        };
        return Ok((PathOutcome::Spanning(empty), stats));
    }
    let mut path = PathState::single(n, 0);
    maximalize(g, &mut path, &mut stats);
    loop {
        if path.order() == n {
            return Ok((PathOutcome::Spanning(path), stats));
        }
        stats.iterations += 1;
        if stats.iterations > n + 1 {
            return Err(ConstructError::InternalInvariantBreach(
                "path engine exceeded its iteration bound".into(),
            ));
        }
        match rotate_or_close(g, path, &mut stats) {
            RotateOutcome::ClosedCycle(cycle) => {
                if cycle.len() == n {
                    return Ok((
                        PathOutcome::Spanning(PathState::from_trusted(n, cycle)),
                        stats,
                    ));
                }
                path = absorb(g, &cycle, &mut stats)?;
                maximalize(g, &mut path, &mut stats);
            }
            RotateOutcome::LongerPath(longer) => {
                path = longer;
                maximalize(g, &mut path, &mut stats);
            }
            RotateOutcome::Stuck(stuck) => return Ok((PathOutcome::Stuck(stuck), stats)),
        }
    }
}

/// Completes a path into a spanning tree by breadth-first attachment of
/// the off-path vertices, rooted at the path's vertex set. Interior path
/// vertices keep tree degree >= 2, so the leaf count is at most
/// n - order(P) + 2.
pub fn path_to_spanning_tree(g: &Graph, path: &PathState) -> Result<KTreeCert, ConstructError> {
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = path.vertices.windows(2).map(|w| (w[0], w[1])).collect();
    let mut attached = path.on_path.clone();
    let mut queue: std::collections::VecDeque<usize> = path.vertices.iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !attached[w] {
                attached[w] = true;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    debug_assert!(attached.iter().all(|&a| a), "connected graph spans");
    Ok(KTreeCert::from_edges(n, edges))
}

/// Searches for a spanning tree with at most `k` leaves. Returns a tree
/// certificate or a hypothesis-violation witness for threshold n - k + 1.
/// Whenever the restricted tree condition holds the result is a tree.
pub fn build_k_ended_tree(g: &Graph, k: usize) -> Result<TreeOutcome, ConstructError> {
    if k < 2 {
        return Err(ConstructError::KTooSmall(k));
    }
    let n = g.vertex_count();
    let threshold = n as i64 - k as i64 + 1;
    if n == 0 {
        return Ok(TreeOutcome::Witness(ViolationWitness::Precondition {
            label: Precondition::TooFewVertices,
            threshold,
        }));
    }
    if !g.is_connected() {
        return Ok(TreeOutcome::Witness(ViolationWitness::Precondition {
            label: Precondition::Disconnected,
            threshold,
        }));
    }
    match find_spanning_path(g)? {
        PathOutcome::Spanning(path) => Ok(TreeOutcome::Tree(path_to_spanning_tree(g, &path)?)),
        PathOutcome::Stuck(path) => {
            // Stuck at order p: a tree built on the path has at most
            // n - p + 2 leaves, good enough iff p >= n - k + 2.
            if path.order() + k >= n + 2 {
                Ok(TreeOutcome::Tree(path_to_spanning_tree(g, &path)?))
            } else {
                Ok(TreeOutcome::Witness(extract_witness(g, &path, threshold)?))
            }
        }
    }
}
