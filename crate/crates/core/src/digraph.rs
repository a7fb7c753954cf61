//! Bitset-backed oriented graphs on up to 64 labelled vertices.
//!
//! Every graph stores one out-neighbour mask and one in-neighbour mask per
//! vertex, so adjacency questions are single word operations and exhaustive
//! sweeps over all small graphs stay cheap. Construction enforces the oriented
//! invariants once (no loops, no duplicate arcs, never both `u->v` and
//! `v->u`); everything downstream may rely on them.
//!
//! Small graphs are numbered by *trit codes*: the unordered pairs `{i, j}`
//! with `i < j` are listed in lexicographic order of `(i, j)` and each pair
//! contributes one base-3 digit (0 = no arc, 1 = `i->j`, 2 = `j->i`), with
//! pair index `p` weighted by `3^p`. This is a bijection between labelled
//! oriented graphs on `n` vertices and `[0, 3^(n choose 2))`, which is what
//! the enumeration and the record files use to identify graphs.

use std::fmt;

use crate::{Error, Result};

/// Hard cap on vertex count; neighbour sets are single `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// Largest `n` whose trit-code space fits in `u128`:
/// `3^(13 choose 2) = 3^78 < 2^128` while `3^(14 choose 2)` overflows.
pub const MAX_TRIT_VERTICES: usize = 13;

/// Iterate the set bit positions of a mask in increasing order.
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// An oriented graph: loopless digraph with at most one arc per vertex pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    arcs: usize,
}

impl OrientedGraph {
    /// Arc-free graph on `n` vertices (`n <= 64`; `n = 0` is allowed and
    /// denotes the empty graph, though most solvers refuse it).
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(OrientedGraph {
            n,
            out: vec![0; n],
            inn: vec![0; n],
            arcs: 0,
        })
    }

    /// Build from an arc list, validating every oriented-graph invariant.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in arcs {
            g.insert_arc(u, v)?;
        }
        Ok(g)
    }

    fn insert_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(Error::LoopArc(u));
        }
        if self.out[u] >> v & 1 == 1 {
            return Err(Error::DuplicateArc { u, v });
        }
        if self.out[v] >> u & 1 == 1 {
            return Err(Error::TwoCycle { u: v, v: u });
        }
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
        self.arcs += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.out[u] >> v & 1 == 1
    }

    /// Out-neighbours of `v` as a bit mask.
    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    /// In-neighbours of `v` as a bit mask.
    pub fn in_mask(&self, v: usize) -> u64 {
        self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> u32 {
        self.out[v].count_ones()
    }

    pub fn in_degree(&self, v: usize) -> u32 {
        self.inn[v].count_ones()
    }

    /// All arcs sorted by `(u, v)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.out[u]).map(move |v| (u, v)))
    }

    /// Delete every arc leaving `v`. Used by degree peeling; removal cannot
    /// break the oriented invariants.
    pub(crate) fn clear_out(&mut self, v: usize) -> usize {
        let removed = bits(self.out[v]).collect::<Vec<_>>();
        for w in &removed {
            self.inn[*w] &= !(1 << v);
        }
        self.out[v] = 0;
        self.arcs -= removed.len();
        removed.len()
    }

    /// Delete every arc entering `v`.
    pub(crate) fn clear_in(&mut self, v: usize) -> usize {
        let removed = bits(self.inn[v]).collect::<Vec<_>>();
        for w in &removed {
            self.out[*w] &= !(1 << v);
        }
        self.inn[v] = 0;
        self.arcs -= removed.len();
        removed.len()
    }

    /// Semi-degree data for the whole graph; see [`DegreeProfile`].
    pub fn degree_profile(&self) -> DegreeProfile {
        let out_degrees: Vec<u32> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let in_degrees: Vec<u32> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let delta0 = (0..self.n)
            .map(|v| out_degrees[v].min(in_degrees[v]))
            .min()
            .unwrap_or(0);
        let pseudo_delta0 = out_degrees
            .iter()
            .chain(in_degrees.iter())
            .copied()
            .filter(|&d| d > 0)
            .min()
            .unwrap_or(0);
        DegreeProfile {
            out_degrees,
            in_degrees,
            delta0,
            pseudo_delta0,
        }
    }

    /// Subgraph induced by `verts` (distinct, in range), relabelled
    /// `0..verts.len()` in the order given.
    pub fn induced_subdigraph(&self, verts: &[usize]) -> Result<Self> {
        let mut seen = 0u64;
        for &v in verts {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
            if seen >> v & 1 == 1 {
                return Err(Error::Domain(format!("vertex {v} listed twice")));
            }
            seen |= 1 << v;
        }
        let mut g = Self::empty(verts.len())?;
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate() {
                if self.has_arc(u, v) {
                    g.out[a] |= 1 << b;
                    g.inn[b] |= 1 << a;
                    g.arcs += 1;
                }
            }
        }
        Ok(g)
    }

    /// Number of unordered vertex pairs, i.e. trit positions.
    pub fn pair_count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// Size of the trit-code space for `n` vertices: `3^(n choose 2)`.
    pub fn code_count(n: usize) -> Result<u128> {
        if n > MAX_TRIT_VERTICES {
            return Err(Error::CodeUnsupported {
                n,
                max: MAX_TRIT_VERTICES,
            });
        }
        Ok(3u128.pow(Self::pair_count(n) as u32))
    }

    /// Decode a trit code into the graph it numbers.
    pub fn from_trit_code(n: usize, code: u128) -> Result<Self> {
        let space = Self::code_count(n)?;
        if code >= space {
            return Err(Error::CodeOutOfRange { code, n, space });
        }
        let mut g = Self::empty(n)?;
        let mut c = code;
        for i in 0..n {
            for j in i + 1..n {
                match c % 3 {
                    1 => {
                        g.out[i] |= 1 << j;
                        g.inn[j] |= 1 << i;
                        g.arcs += 1;
                    }
                    2 => {
                        g.out[j] |= 1 << i;
                        g.inn[i] |= 1 << j;
                        g.arcs += 1;
                    }
                    _ => {}
                }
                c /= 3;
            }
        }
        Ok(g)
    }

    /// Encode this graph as its trit code (defined for `n <= 13`).
    pub fn to_trit_code(&self) -> Result<u128> {
        if self.n > MAX_TRIT_VERTICES {
            return Err(Error::CodeUnsupported {
                n: self.n,
                max: MAX_TRIT_VERTICES,
            });
        }
        let mut code = 0u128;
        let mut place = 1u128;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let digit: u128 = if self.has_arc(i, j) {
                    1
                } else if self.has_arc(j, i) {
                    2
                } else {
                    0
                };
                code += digit * place;
                place *= 3;
            }
        }
        Ok(code)
    }

    /// Parse the line-oriented text format: optional `#` comment lines, a
    /// `n <count>` header, then one `<u> <v>` arc per line (0-based, `u->v`).
    pub fn from_text(s: &str) -> Result<Self> {
        let mut g: Option<OrientedGraph> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut tok = t.split_whitespace();
            match &mut g {
                None => {
                    if tok.next() != Some("n") {
                        return Err(Error::parse(line, "expected header `n <count>`"));
                    }
                    let n: usize = tok
                        .next()
                        .ok_or_else(|| Error::parse(line, "missing vertex count"))?
                        .parse()
                        .map_err(|e| Error::parse(line, format!("bad vertex count: {e}")))?;
                    if tok.next().is_some() {
                        return Err(Error::parse(line, "trailing tokens after header"));
                    }
                    g = Some(Self::empty(n)?);
                }
                Some(g) => {
                    let u: usize = tok
                        .next()
                        .ok_or_else(|| Error::parse(line, "missing arc tail"))?
                        .parse()
                        .map_err(|e| Error::parse(line, format!("bad arc tail: {e}")))?;
                    let v: usize = tok
                        .next()
                        .ok_or_else(|| Error::parse(line, "missing arc head"))?
                        .parse()
                        .map_err(|e| Error::parse(line, format!("bad arc head: {e}")))?;
                    if tok.next().is_some() {
                        return Err(Error::parse(line, "trailing tokens after arc"));
                    }
                    g.insert_arc(u, v)?;
                }
            }
        }
        g.ok_or_else(|| Error::parse(0, "missing header `n <count>`"))
    }

    /// Serialize to the text format; arcs come out sorted by `(u, v)`.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.arcs() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs=[", self.n)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

/// Per-vertex semi-degrees together with the two graph-level minima used by
/// all the degree-threshold hypotheses.
///
/// `delta0` is the minimum semi-degree: the minimum over all vertices of
/// `min(out_degree, in_degree)`.
///
/// `pseudo_delta0` is the pseudo-semi-degree: the minimum over all *strictly
/// positive* out- and in-degree values, and 0 exactly when the graph has no
/// arcs. A vertex with out-degree 0 therefore does not drag the value down,
/// which is what lets strongly one-sided graphs (such as complete bipartite
/// orientations) have a large pseudo-semi-degree while `delta0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub out_degrees: Vec<u32>,
    pub in_degrees: Vec<u32>,
    pub delta0: u32,
    pub pseudo_delta0: u32,
}
