//! Exhaustive ground-truth solvers for small graphs.
//!
//! These are the independent referees for the constructive engine: a
//! subset-DP decides spanning cycles and longest paths exactly, and a
//! pruned spanning-tree enumeration finds the minimum leaf count. Each
//! solver refuses inputs past a hard vertex budget instead of silently
//! taking exponential time, so callers can rely on bounded latency.

use thiserror::Error;

use crate::construct::{KTreeCert, PathState};
use crate::graph::Graph;

/// Largest order the spanning-cycle solver accepts.
pub const HAMILTON_MAX_VERTICES: usize = 12;
/// Largest order the longest-path solver accepts.
pub const LONGEST_PATH_MAX_VERTICES: usize = 12;
/// Largest order the minimum-leaf solver accepts.
pub const MIN_LEAF_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph order {n} exceeds the solver budget of {max} vertices")]
    BudgetExceeded { n: usize, max: usize },
}

/// Decides exactly whether `g` has a spanning cycle, returning one in
/// vertex order when it does. Orders 1 and 2 follow the degenerate cycle
/// convention (a vertex, an edge); the empty graph has none.
pub fn hamiltonian_exact(g: &Graph) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.vertex_count();
    if n > HAMILTON_MAX_VERTICES {
        return Err(OracleError::BudgetExceeded {
            n,
            max: HAMILTON_MAX_VERTICES,
        });
    }
    match n {
        0 => return Ok(None),
        1 => return Ok(Some(vec![0])),
        2 => {
            return Ok(if g.has_edge(0, 1) {
                Some(vec![0, 1])
            } else {
                None
            })
        }
        _ => {}
    }
    // dp[mask] = set of endpoints v such that a path from 0 to v covers
    // exactly `mask` (which always contains 0).
    let full: usize = (1 << n) - 1;
    let mut dp = vec![0u16; 1 << n];
    dp[1] = 1; // the trivial path at vertex 0
    for mask in 1..=full {
        if mask & 1 == 0 || dp[mask] == 0 {
            continue;
        }
        for v in 0..n {
            if dp[mask] & (1 << v) == 0 {
                continue;
            }
            for w in g.neighbors(v) {
                if mask & (1 << w) == 0 {
                    dp[mask | (1 << w)] |= 1 << w;
                }
            }
        }
    }
    let Some(last) = (1..n).find(|&v| dp[full] & (1 << v) != 0 && g.has_edge(v, 0)) else {
        return Ok(None);
    };
    // Walk the DP backwards, preferring the smallest predecessor.
    let mut order_rev = vec![last];
    let mut mask = full;
    let mut v = last;
    while v != 0 {
        let prev_mask = mask & !(1 << v);
        let u = (0..n)
            .find(|&u| dp[prev_mask] & (1 << u) != 0 && g.has_edge(u, v))
            .expect("dp table admits a predecessor");
        order_rev.push(u);
        mask = prev_mask;
        v = u;
    }
    order_rev.reverse();
    Ok(Some(order_rev))
}

/// Finds a maximum-order simple path exactly. The empty graph yields the
/// empty path; an edgeless graph yields a single vertex.
pub fn longest_path_exact(g: &Graph) -> Result<PathState, OracleError> {
    let n = g.vertex_count();
    if n > LONGEST_PATH_MAX_VERTICES {
        return Err(OracleError::BudgetExceeded {
            n,
            max: LONGEST_PATH_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok(PathState::new(g, Vec::new()).expect("empty path is valid"));
    }
    // dp[mask] = set of endpoints v reachable by a path covering `mask`.
    let mut dp = vec![0u16; 1 << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    let mut best = (1usize, 1usize << 0, 0usize); // (order, mask, end)
    for mask in 1usize..(1 << n) {
        if dp[mask] == 0 {
            continue;
        }
        let order = mask.count_ones() as usize;
        for v in 0..n {
            if dp[mask] & (1 << v) == 0 {
                continue;
            }
            if order > best.0 {
                best = (order, mask, v);
            }
            for w in g.neighbors(v) {
                if mask & (1 << w) == 0 {
                    dp[mask | (1 << w)] |= 1 << w;
                }
            }
        }
    }
    let (order, full_mask, end) = best;
    let mut order_rev = vec![end];
    let mut mask = full_mask;
    let mut v = end;
    for _ in 1..order {
        let prev_mask = mask & !(1 << v);
        let u = (0..n)
            .find(|&u| dp[prev_mask] & (1 << u) != 0 && g.has_edge(u, v))
            .expect("dp table admits a predecessor");
        order_rev.push(u);
        mask = prev_mask;
        v = u;
    }
    order_rev.reverse();
    Ok(PathState::new(g, order_rev).expect("dp reconstruction is a valid path"))
}

/// Finds a spanning tree minimizing the leaf count, exactly. Returns
/// `None` when no spanning tree exists (disconnected or empty graph).
pub fn min_leaf_spanning_tree_exact(g: &Graph) -> Result<Option<KTreeCert>, OracleError> {
    let n = g.vertex_count();
    if n > MIN_LEAF_MAX_VERTICES {
        return Err(OracleError::BudgetExceeded {
            n,
            max: MIN_LEAF_MAX_VERTICES,
        });
    }
    if n == 0 || !g.is_connected() {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(KTreeCert::from_edges(1, Vec::new())));
    }
    // A spanning path is a spanning tree with the fewest leaves possible.
    let path = longest_path_exact(g)?;
    if path.order() == n {
        let edges: Vec<_> = path.vertices().windows(2).map(|w| (w[0], w[1])).collect();
        return Ok(Some(KTreeCert::from_edges(n, edges)));
    }
    // No spanning path, so the minimum is at least 3: enumerate spanning
    // trees by include/exclude over the edge list, pruning branches that
    // can no longer connect the graph, and stop at a 3-leaf tree.
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut search = MinLeafSearch {
        n,
        edges: &edges,
        best: None,
        floor: 3,
    };
    let mut dsu: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::with_capacity(n - 1);
    search.recurse(0, &mut dsu, &mut chosen);
    let (_, tree_edges) = search.best.expect("connected graphs have spanning trees");
    Ok(Some(KTreeCert::from_edges(n, tree_edges)))
}

struct MinLeafSearch<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    best: Option<(usize, Vec<(usize, usize)>)>,
    floor: usize,
}

fn dsu_find(dsu: &mut [usize], v: usize) -> usize {
    let mut root = v;
    while dsu[root] != root {
        root = dsu[root];
    }
    let mut cur = v;
    while dsu[cur] != root {
        let next = dsu[cur];
        dsu[cur] = root;
        cur = next;
    }
    root
}

impl MinLeafSearch<'_> {
    fn done(&self) -> bool {
        matches!(self.best, Some((leaves, _)) if leaves <= self.floor)
    }

    fn record(&mut self, chosen: &[(usize, usize)]) {
        let mut degree = vec![0usize; self.n];
        for &(u, v) in chosen {
            degree[u] += 1;
            degree[v] += 1;
        }
        let leaves = degree.iter().filter(|&&d| d == 1).count();
        if self.best.as_ref().is_none_or(|(b, _)| leaves < *b) {
            self.best = Some((leaves, chosen.to_vec()));
        }
    }

    /// True when the chosen forest plus the undecided edges from `i` on
    /// can still connect everything.
    fn connectable(&self, i: usize, dsu: &[usize]) -> bool {
        let mut probe = dsu.to_vec();
        for &(u, v) in &self.edges[i..] {
            let (ru, rv) = (dsu_find(&mut probe, u), dsu_find(&mut probe, v));
            if ru != rv {
                probe[ru] = rv;
            }
        }
        let root = dsu_find(&mut probe, 0);
        (1..self.n).all(|v| dsu_find(&mut probe, v) == root)
    }

    fn recurse(&mut self, i: usize, dsu: &mut Vec<usize>, chosen: &mut Vec<(usize, usize)>) {
        if self.done() {
            return;
        }
        if chosen.len() == self.n - 1 {
            self.record(chosen);
            return;
        }
        if i == self.edges.len() || chosen.len() + (self.edges.len() - i) < self.n - 1 {
            return;
        }
        let (u, v) = self.edges[i];
        let (ru, rv) = (dsu_find(dsu, u), dsu_find(dsu, v));
        if ru != rv {
            let mut included = dsu.clone();
            included[ru] = rv;
            chosen.push((u, v));
            self.recurse(i + 1, &mut included, chosen);
            chosen.pop();
        }
        if self.connectable(i + 1, dsu) {
            self.recurse(i + 1, dsu, chosen);
        }
    }
}
