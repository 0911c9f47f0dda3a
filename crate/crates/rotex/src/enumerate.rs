//! Exhaustive enumeration of small labeled graphs and a brute-force
//! canonical form for isomorphism-level dedupe.
//!
//! Both operations are verification substrate, so they favor obviousness
//! over speed and carry hard size limits instead of silently degrading.

use thiserror::Error;

use crate::graph::Graph;

/// Hard cap for [`all_labeled_graphs`]: 2^15 graphs at n = 6.
pub const MAX_ENUMERATION_VERTICES: usize = 6;
/// Hard cap for [`canonical_form`]: 8! = 40320 permutations.
pub const MAX_CANONICAL_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration over {n} vertices refused (limit {max})")]
    TooManyVertices { n: usize, max: usize },
}

/// Lexicographic vertex pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
fn lex_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

/// All 2^(n choose 2) labeled graphs on n vertices, in increasing
/// edge-bitmask order (bit k of the mask switches the k-th lexicographic
/// pair on).
pub fn all_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(EnumerateError::TooManyVertices {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let pairs = lex_pairs(n);
    let count: u64 = 1 << pairs.len();
    Ok((0..count).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(n, &edges).expect("lexicographic pairs are loop-free and in range")
    }))
}

/// Calls `f` with every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut stack = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            f(&perm);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
}

/// A label-independent fingerprint: the lexicographically smallest packed
/// upper-triangle bitstring over all vertex relabelings. Two graphs on the
/// same vertex count get equal forms exactly when they are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, EnumerateError> {
    let n = g.vertex_count();
    if n > MAX_CANONICAL_VERTICES {
        return Err(EnumerateError::TooManyVertices {
            n,
            max: MAX_CANONICAL_VERTICES,
        });
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(8);
    let mut best: Option<Vec<u8>> = None;
    for_each_permutation(n, |perm| {
        let mut packed = vec![0u8; byte_count];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if g.has_edge(perm[i], perm[j]) {
                    packed[k / 8] |= 1 << (7 - k % 8);
                }
                k += 1;
            }
        }
        if best.as_ref().is_none_or(|b| packed < *b) {
            best = Some(packed);
        }
    });
    Ok(best.unwrap_or_default())
}
