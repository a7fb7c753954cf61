//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here recomputes answers from first principles: candidate vertex
//! sequences are enumerated wholesale and checked arc by arc against
//! `has_arc`, so none of the pruning or canonicalisation logic under test is
//! shared with its oracle. The enumeration is factorial and only meant for
//! the small `n` these tests sweep.
#![allow(dead_code)]
// Parity written as `% 2` and arc lengths as `seq.len() - 1` to match how
// the checked statements are phrased.
#![allow(clippy::manual_is_multiple_of, clippy::int_plus_one)]

use antigraph::{Lead, OrientedGraph};
use itertools::Itertools;

/// Every sequence of distinct vertices of every length `1..=n`, in
/// lexicographic order per length. Independent of any graph, so sweeps
/// should compute this once per `n` and reuse it.
pub fn arrangement_pool(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .flat_map(|m| (0..n).permutations(m))
        .collect()
}

/// First-principles check that `seq` with `lead` is an antipath of `g`.
pub fn is_antipath(g: &OrientedGraph, seq: &[usize], lead: Lead) -> bool {
    if seq.is_empty() {
        return false;
    }
    let mut seen = 0u64;
    for &v in seq {
        if v >= g.n() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    (0..seq.len() - 1).all(|i| {
        let forward = (i % 2 == 0) == (lead == Lead::Out);
        if forward {
            g.has_arc(seq[i], seq[i + 1])
        } else {
            g.has_arc(seq[i + 1], seq[i])
        }
    })
}

/// First-principles check that `seq`, read cyclically, is an anticycle: even
/// length at least 4, distinct vertices, and every even-position vertex
/// beats both cyclic neighbours (which pins all arcs of the cycle).
pub fn is_anticycle_seq(g: &OrientedGraph, seq: &[usize]) -> bool {
    let l = seq.len();
    if l < 4 || l % 2 != 0 {
        return false;
    }
    let mut seen = 0u64;
    for &v in seq {
        if v >= g.n() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    (0..l).step_by(2).all(|i| {
        g.has_arc(seq[i], seq[(i + 1) % l]) && g.has_arc(seq[i], seq[(i + l - 1) % l])
    })
}

/// First-principles check that `seq` is a directed path of `g`.
pub fn is_dipath(g: &OrientedGraph, seq: &[usize]) -> bool {
    if seq.is_empty() {
        return false;
    }
    let mut seen = 0u64;
    for &v in seq {
        if v >= g.n() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    (0..seq.len() - 1).all(|i| g.has_arc(seq[i], seq[i + 1]))
}

/// Longest-antipath oracle: the maximum length together with every
/// representation `(vertices, lead)` of that length, sorted by vertex
/// sequence then lead. Arcless graphs report each vertex as a lead-out
/// length-0 path, matching the solver's convention.
pub fn brute_longest_antipaths(g: &OrientedGraph) -> (usize, Vec<(Vec<usize>, Lead)>) {
    let pool = arrangement_pool(g.n());
    brute_longest_antipaths_with(g, &pool)
}

/// Same as [`brute_longest_antipaths`] but reusing a precomputed pool.
pub fn brute_longest_antipaths_with(
    g: &OrientedGraph,
    pool: &[Vec<usize>],
) -> (usize, Vec<(Vec<usize>, Lead)>) {
    let mut best = 0usize;
    let mut found: Vec<(Vec<usize>, Lead)> = Vec::new();
    for seq in pool {
        for lead in [Lead::Out, Lead::In] {
            if seq.len() - 1 >= best && is_antipath(g, seq, lead) {
                if seq.len() - 1 > best {
                    best = seq.len() - 1;
                    found.clear();
                }
                if best > 0 {
                    found.push((seq.clone(), lead));
                }
            }
        }
    }
    if best == 0 {
        found = (0..g.n()).map(|v| (vec![v], Lead::Out)).collect();
    }
    found.sort();
    found.dedup();
    (best, found)
}

/// Longest-anticycle oracle: maximum cycle length and the lexicographically
/// smallest valid written form of that length (the canonical form the
/// `AntiCycle` type stores), or `None` if the graph has no anticycle.
pub fn brute_longest_anticycle(g: &OrientedGraph) -> Option<(usize, Vec<usize>)> {
    let pool = arrangement_pool(g.n());
    brute_longest_anticycle_with(g, &pool)
}

/// Same as [`brute_longest_anticycle`] but reusing a precomputed pool.
pub fn brute_longest_anticycle_with(
    g: &OrientedGraph,
    pool: &[Vec<usize>],
) -> Option<(usize, Vec<usize>)> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for seq in pool {
        if !is_anticycle_seq(g, seq) {
            continue;
        }
        let better = match &best {
            None => true,
            Some((len, min_seq)) => seq.len() > *len || (seq.len() == *len && seq < min_seq),
        };
        if better {
            best = Some((seq.len(), seq.clone()));
        }
    }
    best
}

/// Longest-directed-path oracle (arc count; 0 for arcless graphs with a
/// vertex).
pub fn brute_longest_dipath_len(g: &OrientedGraph) -> usize {
    let pool = arrangement_pool(g.n());
    pool.iter()
        .filter(|seq| is_dipath(g, seq))
        .map(|seq| seq.len() - 1)
        .max()
        .unwrap_or(0)
}

/// Every antipath representation of `g` with at least one arc, both leads,
/// for exhaustive algebra sweeps at tiny `n`.
pub fn brute_all_antipath_reps(g: &OrientedGraph) -> Vec<(Vec<usize>, Lead)> {
    let mut reps = Vec::new();
    for seq in arrangement_pool(g.n()) {
        if seq.len() < 2 {
            continue;
        }
        for lead in [Lead::Out, Lead::In] {
            if is_antipath(g, &seq, lead) {
                reps.push((seq.clone(), lead));
            }
        }
    }
    reps
}
