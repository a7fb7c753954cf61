//! Exact searches for antipaths, anticycles and directed paths.
//!
//! Everything here is a depth-first enumeration over simple paths with a
//! visited bitset, feasibility-pruned by `current length + unvisited vertices`.
//! The searches are exponential and meant for desk-scale graphs; they double
//! as the ground-truth oracle for the rest of the crate, so the code favours
//! being obviously correct over being clever.
//!
//! Results are canonical: among maximum-length witnesses the solvers return
//! the lexicographically smallest vertex sequence (for single-vertex paths,
//! lead-out from the smallest vertex), so equal inputs give byte-equal output.

use crate::digraph::{bits, OrientedGraph};
use crate::{Error, Result};

/// Phase of an alternating path: whether its first arc is traversed forward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lead {
    /// First arc leaves the first vertex (`v0 -> v1`).
    Out,
    /// First arc enters the first vertex (`v1 -> v0`).
    In,
}

impl Lead {
    pub fn flipped(self) -> Lead {
        match self {
            Lead::Out => Lead::In,
            Lead::In => Lead::Out,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Lead::Out => "out",
            Lead::In => "in",
        }
    }
}

/// An antipath: distinct vertices `v0..vl` whose consecutive arcs strictly
/// alternate in direction, plus the lead phase fixing the direction of arc 0.
///
/// With lead-out, arc `i` is forward (`v_i -> v_{i+1}`) exactly when `i` is
/// even; with lead-in exactly when `i` is odd. Length is the arc count, so a
/// single vertex is the (valid) length-0 antipath; its phase carries no
/// information and is reported as lead-out by convention. Reversal flips the
/// phase of odd-length antipaths and preserves it for even lengths, which is
/// why odd lengths have one type per graph and even lengths two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    vertices: Vec<usize>,
    lead: Lead,
}

impl AlternatingPath {
    /// Validate `vertices` as an antipath of `g` with the given lead.
    pub fn new(g: &OrientedGraph, vertices: Vec<usize>, lead: Lead) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("no vertices".into()));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            if seen >> v & 1 == 1 {
                return Err(Error::InvalidPath(format!("vertex {v} repeats")));
            }
            seen |= 1 << v;
        }
        let p = AlternatingPath { vertices, lead };
        for i in 0..p.len() {
            let (a, b) = (p.vertices[i], p.vertices[i + 1]);
            let (tail, head) = if p.arc_is_forward(i) { (a, b) } else { (b, a) };
            if !g.has_arc(tail, head) {
                return Err(Error::InvalidPath(format!(
                    "arc {i} requires {tail}->{head} which is absent"
                )));
            }
        }
        Ok(p)
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false // a path always has at least one vertex
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn lead(&self) -> Lead {
        self.lead
    }

    /// Whether arc `i` is traversed tail-to-head (`v_i -> v_{i+1}`).
    pub fn arc_is_forward(&self, i: usize) -> bool {
        (i % 2 == 0) == (self.lead == Lead::Out)
    }

    /// The same antipath walked end-to-start. Odd lengths flip the lead,
    /// even lengths keep it.
    pub fn reversed(&self) -> AlternatingPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let lead = if self.len() % 2 == 1 {
            self.lead.flipped()
        } else {
            self.lead
        };
        AlternatingPath { vertices, lead }
    }

    /// Vertex set as a bit mask.
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<usize>, lead: Lead) -> Self {
        AlternatingPath { vertices, lead }
    }
}

/// An anticycle: an even cyclic sequence of at least four distinct vertices
/// in which the vertices at even positions dominate (beat) both cyclic
/// neighbours and those at odd positions are dominated by both.
///
/// Stored canonically: among all rotations that put a dominating vertex first
/// and both walking directions, the lexicographically smallest sequence. The
/// canonical sequence therefore starts at the smallest dominating vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiCycle {
    vertices: Vec<usize>,
}

impl AntiCycle {
    /// Validate `vertices` as an anticycle of `g` and store it canonically.
    pub fn new(g: &OrientedGraph, vertices: Vec<usize>) -> Result<Self> {
        let l = vertices.len();
        if l < 4 {
            return Err(Error::InvalidCycle(format!(
                "{l} vertices; anticycles need at least 4"
            )));
        }
        if l % 2 != 0 {
            return Err(Error::InvalidCycle(format!(
                "odd length {l}; anticycles have even length"
            )));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { v, n: g.n() });
            }
            if seen >> v & 1 == 1 {
                return Err(Error::InvalidCycle(format!("vertex {v} repeats")));
            }
            seen |= 1 << v;
        }
        for i in (0..l).step_by(2) {
            for j in [(i + 1) % l, (i + l - 1) % l] {
                if !g.has_arc(vertices[i], vertices[j]) {
                    return Err(Error::InvalidCycle(format!(
                        "position {i} must dominate position {j}: arc {}->{} absent",
                        vertices[i], vertices[j]
                    )));
                }
            }
        }
        Ok(AntiCycle {
            vertices: canonical_cycle(&vertices),
        })
    }

    /// Number of vertices, which equals the number of arcs.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Lexicographically smallest representation over even rotations (keeping
/// dominators at even positions) and both directions.
fn canonical_cycle(seq: &[usize]) -> Vec<usize> {
    let l = seq.len();
    let mut best: Option<Vec<usize>> = None;
    for p in (0..l).step_by(2) {
        for dir in [1usize, l - 1] {
            // dir = 1 walks forward, dir = l-1 walks backward (mod l)
            let cand: Vec<usize> = (0..l).map(|d| seq[(p + dir * d) % l]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

// ---------------------------------------------------------------------------
// longest antipath

/// Maximum antipath length over both phases (pass 1 of the two-pass search).
fn max_antipath_len(g: &OrientedGraph) -> usize {
    let mut best = 0;
    for s in 0..g.n() {
        for first_forward in [true, false] {
            antipath_len_dfs(g, s, 1 << s, 0, first_forward, &mut best);
        }
    }
    best
}

fn antipath_len_dfs(
    g: &OrientedGraph,
    cur: usize,
    visited: u64,
    len: usize,
    next_forward: bool,
    best: &mut usize,
) {
    if len > *best {
        *best = len;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if len + unvisited <= *best {
        return; // cannot strictly improve along this branch
    }
    let mask = if next_forward {
        g.out_mask(cur)
    } else {
        g.in_mask(cur)
    } & !visited;
    for v in bits(mask) {
        antipath_len_dfs(g, v, visited | 1 << v, len + 1, !next_forward, best);
    }
}

/// A longest antipath of `g`, canonical under the tie-breaks above.
///
/// Errors only on the vertex-free graph; any graph with a vertex has the
/// length-0 antipath.
pub fn longest_antipath(g: &OrientedGraph) -> Result<AlternatingPath> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let target = max_antipath_len(g);
    if target == 0 {
        return Ok(AlternatingPath::from_parts_unchecked(vec![0], Lead::Out));
    }
    // Pass 2: regrow in lexicographic order and stop at the first witness of
    // the certified length. The choice of second vertex fixes the lead, so
    // scanning merged neighbourhoods in increasing order visits candidate
    // sequences in true lexicographic order across both phases.
    for s in 0..g.n() {
        for u in bits((g.out_mask(s) | g.in_mask(s)) & !(1 << s)) {
            let lead = if g.has_arc(s, u) { Lead::Out } else { Lead::In };
            let mut seq = vec![s, u];
            if antipath_regrow(g, &mut seq, (1 << s) | (1 << u), lead, target) {
                debug_assert!(AlternatingPath::new(g, seq.clone(), lead).is_ok());
                return Ok(AlternatingPath::from_parts_unchecked(seq, lead));
            }
        }
    }
    unreachable!("pass 1 certified an antipath of length {target}")
}

fn antipath_regrow(
    g: &OrientedGraph,
    seq: &mut Vec<usize>,
    visited: u64,
    lead: Lead,
    target: usize,
) -> bool {
    let len = seq.len() - 1;
    if len == target {
        return true;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if len + unvisited < target {
        return false;
    }
    let cur = *seq.last().unwrap();
    let next_forward = (len % 2 == 0) == (lead == Lead::Out);
    let mask = if next_forward {
        g.out_mask(cur)
    } else {
        g.in_mask(cur)
    } & !visited;
    for v in bits(mask) {
        seq.push(v);
        if antipath_regrow(g, seq, visited | 1 << v, lead, target) {
            return true;
        }
        seq.pop();
    }
    false
}

/// Every longest antipath, in lexicographic order of the vertex sequence.
/// Arcless graphs report each vertex once as a lead-out length-0 path.
pub fn all_longest_antipaths(g: &OrientedGraph) -> Result<Vec<AlternatingPath>> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let target = max_antipath_len(g);
    if target == 0 {
        return Ok((0..g.n())
            .map(|v| AlternatingPath::from_parts_unchecked(vec![v], Lead::Out))
            .collect());
    }
    let mut found = Vec::new();
    for s in 0..g.n() {
        for u in bits((g.out_mask(s) | g.in_mask(s)) & !(1 << s)) {
            let lead = if g.has_arc(s, u) { Lead::Out } else { Lead::In };
            let mut seq = vec![s, u];
            antipath_collect(g, &mut seq, (1 << s) | (1 << u), lead, target, &mut found);
        }
    }
    Ok(found)
}

fn antipath_collect(
    g: &OrientedGraph,
    seq: &mut Vec<usize>,
    visited: u64,
    lead: Lead,
    target: usize,
    found: &mut Vec<AlternatingPath>,
) {
    let len = seq.len() - 1;
    if len == target {
        found.push(AlternatingPath::from_parts_unchecked(seq.clone(), lead));
        return;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if len + unvisited < target {
        return;
    }
    let cur = *seq.last().unwrap();
    let next_forward = (len % 2 == 0) == (lead == Lead::Out);
    let mask = if next_forward {
        g.out_mask(cur)
    } else {
        g.in_mask(cur)
    } & !visited;
    for v in bits(mask) {
        seq.push(v);
        antipath_collect(g, seq, visited | 1 << v, lead, target, found);
        seq.pop();
    }
}

// ---------------------------------------------------------------------------
// longest anticycle

/// Mask of vertices strictly greater than `s`.
fn above(s: usize) -> u64 {
    if s + 1 >= 64 {
        0
    } else {
        !((1u64 << (s + 1)) - 1)
    }
}

/// Cycle search walker. A candidate cycle is grown as the open sequence
/// `v0 v1 .. v_{m-1}` with `v0` the *smallest dominating vertex* (so each
/// cycle is generated from exactly one start): even positions pick an
/// out-neighbour of the previous vertex, odd positions are followed by an
/// in-neighbour larger than `v0`, and the sequence closes into an anticycle
/// whenever its length is even, at least 4, and `v0` also beats the last
/// vertex.
fn max_anticycle_len(g: &OrientedGraph) -> usize {
    let mut best = 0;
    let mut seq = Vec::new();
    for s in 0..g.n() {
        seq.clear();
        seq.push(s);
        anticycle_len_dfs(g, s, &mut seq, 1 << s, &mut best);
    }
    best
}

fn anticycle_len_dfs(
    g: &OrientedGraph,
    s: usize,
    seq: &mut Vec<usize>,
    visited: u64,
    best: &mut usize,
) {
    let m = seq.len();
    let last = *seq.last().unwrap();
    if m >= 4 && m % 2 == 0 && g.has_arc(s, last) && m > *best {
        *best = m;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if m + unvisited <= *best {
        return;
    }
    let last_pos_even = (m - 1) % 2 == 0;
    let mut mask = if last_pos_even {
        g.out_mask(last) // next vertex sits at an odd (dominated) position
    } else {
        g.in_mask(last) // next vertex dominates; must exceed the start
    } & !visited;
    if !last_pos_even {
        mask &= above(s);
    }
    for v in bits(mask) {
        seq.push(v);
        anticycle_len_dfs(g, s, seq, visited | 1 << v, best);
        seq.pop();
    }
}

/// A longest anticycle of `g`, or `None` when the graph has no anticycle.
/// Among maximum anticycles the one with the lexicographically smallest
/// canonical representation is returned.
pub fn longest_anticycle(g: &OrientedGraph) -> Option<AntiCycle> {
    let target = max_anticycle_len(g);
    if target == 0 {
        return None;
    }
    let mut seq = Vec::new();
    for s in 0..g.n() {
        seq.clear();
        seq.push(s);
        if anticycle_regrow(g, s, &mut seq, 1 << s, target) {
            let c = AntiCycle::new(g, seq.clone()).expect("search produced a valid anticycle");
            debug_assert_eq!(c.vertices(), &seq[..], "search order is canonical");
            return Some(c);
        }
    }
    unreachable!("pass 1 certified an anticycle of length {target}")
}

fn anticycle_regrow(
    g: &OrientedGraph,
    s: usize,
    seq: &mut Vec<usize>,
    visited: u64,
    target: usize,
) -> bool {
    let m = seq.len();
    let last = *seq.last().unwrap();
    if m == target {
        return g.has_arc(s, last);
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if m + unvisited < target {
        return false;
    }
    let last_pos_even = (m - 1) % 2 == 0;
    let mut mask = if last_pos_even {
        g.out_mask(last)
    } else {
        g.in_mask(last)
    } & !visited;
    if !last_pos_even {
        mask &= above(s);
    }
    for v in bits(mask) {
        seq.push(v);
        if anticycle_regrow(g, s, seq, visited | 1 << v, target) {
            return true;
        }
        seq.pop();
    }
    false
}

// ---------------------------------------------------------------------------
// longest directed path

fn max_dipath_len(g: &OrientedGraph) -> usize {
    let mut best = 0;
    for s in 0..g.n() {
        dipath_len_dfs(g, s, 1 << s, 0, &mut best);
    }
    best
}

fn dipath_len_dfs(g: &OrientedGraph, cur: usize, visited: u64, len: usize, best: &mut usize) {
    if len > *best {
        *best = len;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if len + unvisited <= *best {
        return;
    }
    for v in bits(g.out_mask(cur) & !visited) {
        dipath_len_dfs(g, v, visited | 1 << v, len + 1, best);
    }
}

/// A longest directed path as a vertex sequence (lexicographically smallest
/// among maximum ones). Arcless graphs give a single vertex; the vertex-free
/// graph gives an empty sequence.
pub fn longest_directed_path(g: &OrientedGraph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let target = max_dipath_len(g);
    if target == 0 {
        return vec![0];
    }
    let mut seq = Vec::new();
    for s in 0..g.n() {
        seq.clear();
        seq.push(s);
        if dipath_regrow(g, &mut seq, 1 << s, target) {
            return seq;
        }
    }
    unreachable!("pass 1 certified a directed path of length {target}")
}

fn dipath_regrow(g: &OrientedGraph, seq: &mut Vec<usize>, visited: u64, target: usize) -> bool {
    let len = seq.len() - 1;
    if len == target {
        return true;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if len + unvisited < target {
        return false;
    }
    let cur = *seq.last().unwrap();
    for v in bits(g.out_mask(cur) & !visited) {
        seq.push(v);
        if dipath_regrow(g, seq, visited | 1 << v, target) {
            return true;
        }
        seq.pop();
    }
    false
}

// ---------------------------------------------------------------------------
// membership queries

/// Does `g` contain a simple path realising the given direction pattern?
/// `pattern[i]` is the direction of arc `i`: `true` for forward (with the
/// walk), `false` for backward (against it). The empty pattern asks for a
/// single vertex.
pub fn contains_pattern_path(g: &OrientedGraph, pattern: &[bool]) -> bool {
    let n = g.n();
    if pattern.len() + 1 > n {
        return false;
    }
    (0..n).any(|s| pattern_dfs(g, s, 1 << s, 0, pattern))
}

fn pattern_dfs(g: &OrientedGraph, cur: usize, visited: u64, idx: usize, pattern: &[bool]) -> bool {
    if idx == pattern.len() {
        return true;
    }
    let unvisited = g.n() - visited.count_ones() as usize;
    if pattern.len() - idx > unvisited {
        return false;
    }
    let mask = if pattern[idx] {
        g.out_mask(cur)
    } else {
        g.in_mask(cur)
    } & !visited;
    for v in bits(mask) {
        if pattern_dfs(g, v, visited | 1 << v, idx + 1, pattern) {
            return true;
        }
    }
    false
}

/// The alternating direction pattern of the length-`len` antipath with the
/// given lead.
pub fn antipath_pattern(len: usize, lead: Lead) -> Vec<bool> {
    (0..len).map(|i| (i % 2 == 0) == (lead == Lead::Out)).collect()
}

/// Does `g` contain an antipath of exactly this length and phase?
///
/// Note this is phase-exact: a graph whose longest antipath is long does
/// contain shorter antipaths of every length, but at the boundary length the
/// two phases of an even-length antipath are genuinely different queries.
pub fn contains_antipath_of_length(g: &OrientedGraph, len: usize, lead: Lead) -> bool {
    contains_pattern_path(g, &antipath_pattern(len, lead))
}
