//! The five 4-vertex induced patterns whose nonadjacent pairs carry the
//! degree-sum conditions, plus occurrence enumeration over a host graph.
//!
//! Classification runs on the sorted degree sequence of the induced
//! 4-vertex subgraph. Each listed pattern owns its degree sequence among
//! all 4-vertex graphs, so the lookup is exact; the test suite checks the
//! table against brute-force isomorphism on all 64 labeled 4-vertex graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexSubset};

/// The five constraining patterns.
///
/// `K13PlusE` is the triangle with a pendant edge, sometimes drawn as a
/// star plus an edge between two leaves; both presentations are the same
/// graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternId {
    K12UnionK1,
    K3UnionK1,
    K13,
    K13PlusE,
    P4,
}

impl PatternId {
    pub const ALL: [PatternId; 5] = [
        PatternId::K12UnionK1,
        PatternId::K3UnionK1,
        PatternId::K13,
        PatternId::K13PlusE,
        PatternId::P4,
    ];

    /// Conventional mathematical name, used verbatim in reports.
    pub fn name(self) -> &'static str {
        match self {
            PatternId::K12UnionK1 => "K_{1,2} ∪ K_1",
            PatternId::K3UnionK1 => "K_3 ∪ K_1",
            PatternId::K13 => "K_{1,3}",
            PatternId::K13PlusE => "K_{1,3}+e",
            PatternId::P4 => "P_4",
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for PatternId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Which pattern list a condition ranges over.
///
/// `Five` lists all five patterns directly. `Corollary` is stated as
/// {K_{1,2} ∪ K_1, (K_{1,2} ∪ K_1)+e, K_{1,3}+e}; adding one edge to
/// K_{1,2} ∪ K_1 yields exactly {K_3 ∪ K_1, K_{1,3}, P_4}, so the expanded
/// membership covers the same five patterns. Both families are kept
/// distinct so the equivalence is checked, not assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternFamily {
    Five,
    Corollary,
}

impl PatternFamily {
    pub fn members(self) -> &'static [PatternId] {
        match self {
            PatternFamily::Five => &[
                PatternId::K12UnionK1,
                PatternId::K3UnionK1,
                PatternId::K13,
                PatternId::K13PlusE,
                PatternId::P4,
            ],
            // K_{1,2} ∪ K_1, then the single-edge extensions of it, then K_{1,3}+e.
            PatternFamily::Corollary => &[
                PatternId::K12UnionK1,
                PatternId::K3UnionK1,
                PatternId::K13,
                PatternId::P4,
                PatternId::K13PlusE,
            ],
        }
    }

    pub fn contains(self, pattern: PatternId) -> bool {
        self.members().contains(&pattern)
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternFamily::Five => "five",
            PatternFamily::Corollary => "corollary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern classification needs exactly 4 vertices, got {0}")]
    WrongVertexCount(usize),
}

/// One induced occurrence of a pattern: the 4-vertex subset together with
/// every nonadjacent pair inside it (the pairs the condition constrains).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternOccurrence {
    pub subset: VertexSubset,
    pub pattern: PatternId,
    /// Nonadjacent pairs within the subset, each stored (low, high), sorted.
    pub nonadjacent_pairs: Vec<(usize, usize)>,
}

/// Classifies a 4-vertex graph. `None` means the graph is not one of the
/// five patterns.
pub fn classify_quadruple(h: &Graph) -> Result<Option<PatternId>, PatternError> {
    if h.vertex_count() != 4 {
        return Err(PatternError::WrongVertexCount(h.vertex_count()));
    }
    Ok(classify_subset(h, [0, 1, 2, 3]))
}

/// Degree-sequence classification of the subgraph induced by four distinct
/// vertices of `g`, without materializing the subgraph.
pub(crate) fn classify_subset(g: &Graph, q: [usize; 4]) -> Option<PatternId> {
    let mut degs = [0usize; 4];
    for a in 0..4 {
        for b in a + 1..4 {
            if g.has_edge(q[a], q[b]) {
                degs[a] += 1;
                degs[b] += 1;
            }
        }
    }
    degs.sort_unstable();
    match degs {
        [0, 1, 1, 2] => Some(PatternId::K12UnionK1),
        [0, 2, 2, 2] => Some(PatternId::K3UnionK1),
        [1, 1, 1, 3] => Some(PatternId::K13),
        [1, 1, 2, 2] => Some(PatternId::P4),
        [1, 2, 2, 3] => Some(PatternId::K13PlusE),
        _ => None,
    }
}

fn nonadjacent_pairs_within(g: &Graph, q: [usize; 4]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            if !g.has_edge(q[a], q[b]) {
                pairs.push((q[a].min(q[b]), q[a].max(q[b])));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// All pattern occurrences of `family` in `g`, with 4-subsets visited in
/// lexicographic order.
pub fn pattern_occurrences(g: &Graph, family: PatternFamily) -> Vec<PatternOccurrence> {
    let n = g.vertex_count();
    let mut found = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let Some(pattern) = classify_subset(g, q) else {
                        continue;
                    };
                    if !family.contains(pattern) {
                        continue;
                    }
                    found.push(PatternOccurrence {
                        subset: VertexSubset::new(q.to_vec()).expect("a<b<c<d are distinct"),
                        pattern,
                        nonadjacent_pairs: nonadjacent_pairs_within(g, q),
                    });
                }
            }
        }
    }
    found
}

/// The union of nonadjacent pairs over every occurrence of `family`:
/// exactly the pairs the restricted degree-sum condition constrains.
pub fn constrained_pairs(g: &Graph, family: PatternFamily) -> BTreeSet<(usize, usize)> {
    constrained_pair_occurrences(g, family)
        .into_keys()
        .collect()
}

/// Constrained pairs mapped to the first occurrence (in subset order) that
/// produced each pair; the occurrence backs violation reports.
pub fn constrained_pair_occurrences(
    g: &Graph,
    family: PatternFamily,
) -> BTreeMap<(usize, usize), PatternOccurrence> {
    let mut map = BTreeMap::new();
    for occ in pattern_occurrences(g, family) {
        for &pair in &occ.nonadjacent_pairs {
            map.entry(pair).or_insert_with(|| occ.clone());
        }
    }
    map
}
