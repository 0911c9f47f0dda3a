//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex: pair queries are O(1)
//! and neighborhood scans run a machine word at a time. Graphs are immutable
//! after construction, so every derived structure (degrees, edge count) is
//! computed once and stays consistent.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Errors from graph construction and vertex-subset handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("duplicate vertex id {0} in subset")]
    DuplicateVertex(usize),
}

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges
    /// collapse to one; loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let words_per_row = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words_per_row];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::VertexOutOfRange { id, n });
                }
            }
            bits[u * words_per_row + v / 64] |= 1 << (v % 64);
            bits[v * words_per_row + u / 64] |= 1 << (u % 64);
        }
        let degrees: Vec<usize> = (0..n)
            .map(|v| {
                bits[v * words_per_row..(v + 1) * words_per_row]
                    .iter()
                    .map(|w| w.count_ones() as usize)
                    .sum()
            })
            .collect();
        let twice_edges: usize = degrees.iter().sum();
        debug_assert_eq!(twice_edges % 2, 0);
        Ok(Graph {
            n,
            words_per_row,
            bits,
            degrees,
            edge_count: twice_edges / 2,
        })
    }

    /// A graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[]).expect("empty edge list is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// O(1) adjacency query. Out-of-range ids are a caller bug.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// Neighbors of `v` in increasing id order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[v * self.words_per_row..(v + 1) * self.words_per_row];
        row.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .skip_while(move |&v| v < u)
                .map(move |v| (u, v))
        })
    }

    /// The subgraph induced by `subset`, with vertices relabeled to
    /// `0..subset.len()` in sorted-id order.
    pub fn induced_subgraph(&self, subset: &VertexSubset) -> Result<Induced, GraphError> {
        let ids = subset.ids();
        if let Some(&id) = ids.iter().find(|&&id| id >= self.n) {
            return Err(GraphError::VertexOutOfRange { id, n: self.n });
        }
        let mut edges = Vec::new();
        for (a, &u) in ids.iter().enumerate() {
            for (b, &v) in ids.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    edges.push((a, b));
                }
            }
        }
        let graph = Graph::from_edges(ids.len(), &edges).expect("relabeled edges are valid");
        Ok(Induced {
            graph,
            vertices: ids.to_vec(),
        })
    }

    /// Connected components as sorted vertex blocks, ordered by smallest member.
    /// A vertex with no edges forms its own block.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        block.push(v);
                        queue.push_back(v);
                    }
                }
            }
            block.sort_unstable();
            components.push(block);
        }
        components
    }

    /// True when the graph has at most one connected component.
    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// A set of distinct vertex ids, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    /// Sorts `ids` and rejects duplicates. Range checks happen where the
    /// subset meets a concrete graph.
    pub fn new(mut ids: Vec<usize>) -> Result<VertexSubset, GraphError> {
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0]));
            }
        }
        Ok(VertexSubset(ids))
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An induced subgraph together with its relabeling.
///
/// `vertices()[new]` is the original id of the new vertex `new`; the inverse
/// direction goes through [`Induced::new_id`].
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Graph,
    vertices: Vec<usize>,
}

impl Induced {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn old_id(&self, new: usize) -> usize {
        self.vertices[new]
    }

    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.vertices.binary_search(&old).ok()
    }
}
