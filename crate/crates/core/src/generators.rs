//! Graph families, random models, exhaustive enumeration and density peeling.
//!
//! These are the input sources for the verification harness: structured
//! families with known degree behaviour, a seeded random model, and the
//! exhaustive trit-code enumerators (capped at six vertices, where the space
//! already holds about 14.3 million graphs). [`peel_below`] and
//! [`dense_subdigraph`] implement the density-to-degree reduction that turns
//! an arc-count hypothesis into a pseudo-semi-degree hypothesis on a
//! subdigraph. [`FamilySpec`] is the parseable description of a family used
//! in campaign records and on the command line.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::OrientedGraph;
use crate::{Error, Result};

/// Exhaustive enumeration is refused above this vertex count; the n = 7
/// space (3^21 graphs) is out of desk-scale reach.
pub const MAX_ENUMERATION_VERTICES: usize = 6;

/// Rotational tournament on odd `n >= 3`: vertex `i` beats `i + 1, .., i +
/// (n-1)/2` modulo `n`. Every vertex has out- and in-degree `(n-1)/2`, so
/// both the semi-degree and the pseudo-semi-degree equal `(n-1)/2`.
pub fn circulant_tournament(n: usize) -> Result<OrientedGraph> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Domain(format!(
            "circulant tournaments need odd n >= 3, got {n}"
        )));
    }
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for d in 1..=(n - 1) / 2 {
            arcs.push((i, (i + d) % n));
        }
    }
    OrientedGraph::new(n, &arcs)
}

/// Vertex-disjoint union of `copies` rotational tournaments on `k` vertices
/// each (`k` odd, `k >= 3`). The components keep the semi-degree at
/// `(k-1)/2` while the graph as a whole is disconnected, which makes the
/// family a useful stress case for statements that must not assume
/// connectivity.
pub fn disjoint_regular_tournaments(k: usize, copies: usize) -> Result<OrientedGraph> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::Domain(format!(
            "component tournaments need odd k >= 3, got {k}"
        )));
    }
    if copies == 0 {
        return Err(Error::Domain("need at least one component".into()));
    }
    let n = k
        .checked_mul(copies)
        .ok_or_else(|| Error::Domain("k * copies overflows".into()))?;
    let mut arcs = Vec::with_capacity(n * (k - 1) / 2);
    for c in 0..copies {
        let base = c * k;
        for i in 0..k {
            for d in 1..=(k - 1) / 2 {
                arcs.push((base + i, base + (i + d) % k));
            }
        }
    }
    OrientedGraph::new(n, &arcs)
}

/// Complete one-way bipartite orientation on `2m` vertices with
/// `m = ceil((3k-2)/4)`: every arc runs from the first half to the second.
///
/// For each `k` this graph has pseudo-semi-degree `m` (so `4 *
/// pseudo_delta0 >= 3k - 2`), semi-degree 0, and no directed path with more
/// than one arc — the standing example that a pseudo-semi-degree hypothesis
/// of this order, unlike a semi-degree one, forces no long directed path and
/// only alternating structure can be concluded. `k` ranges over `[2, 43]` so
/// the graph fits in 64 vertices.
pub fn construction_d(k: u64) -> Result<OrientedGraph> {
    if !(2..=43).contains(&k) {
        return Err(Error::Domain(format!(
            "supported parameter range is 2 <= k <= 43 (64-vertex cap), got {k}"
        )));
    }
    let m = ((3 * k + 1) / 4) as usize; // ceil((3k - 2) / 4)
    let mut arcs = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in m..2 * m {
            arcs.push((x, y));
        }
    }
    OrientedGraph::new(2 * m, &arcs)
}

/// Seeded random oriented graph on `n` vertices.
///
/// Pairs `{i, j}` with `i < j` are visited in lexicographic order of
/// `(i, j)`. Each pair first draws one `f64` in `[0, 1)`; the pair carries an
/// arc when the draw is below `p`. Only pairs that carry an arc draw a
/// second value, a `bool`, to pick the direction (`true` orients from the
/// smaller to the larger endpoint). The stream is ChaCha8 seeded with
/// `seed`, so equal `(n, p, seed)` give equal graphs on every platform, and
/// the draw discipline is part of that contract.
pub fn random_oriented(n: usize, p: f64, seed: u64) -> Result<OrientedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "arc probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                if rng.random::<bool>() {
                    arcs.push((i, j));
                } else {
                    arcs.push((j, i));
                }
            }
        }
    }
    OrientedGraph::new(n, &arcs)
}

/// Size of the exhaustive enumeration space for `n`, applying the
/// [`MAX_ENUMERATION_VERTICES`] guard.
pub fn enumeration_space(n: usize) -> Result<u128> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::ResourceGuard(format!(
            "exhaustive enumeration is capped at n = {MAX_ENUMERATION_VERTICES}; got n = {n}"
        )));
    }
    OrientedGraph::code_count(n)
}

/// Every oriented graph on `n` labelled vertices, in trit-code order.
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = OrientedGraph>> {
    enumerate_range(n, 0, enumeration_space(n)?)
}

/// The graphs with trit codes in `[start, end)`, in order. Used to shard an
/// exhaustive sweep: shard boundaries are plain code boundaries.
pub fn enumerate_range(
    n: usize,
    start: u128,
    end: u128,
) -> Result<impl Iterator<Item = OrientedGraph>> {
    let space = enumeration_space(n)?;
    if start > end || end > space {
        return Err(Error::CodeOutOfRange {
            code: end,
            n,
            space,
        });
    }
    Ok((start..end).map(move |code| {
        OrientedGraph::from_trit_code(n, code).expect("codes below the space size decode")
    }))
}

/// Result of a peeling pass: the peeled graph (same vertex set) and how many
/// arcs were removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOutcome {
    pub graph: OrientedGraph,
    pub deleted_arcs: usize,
}

/// Repeatedly delete the out-arcs of every vertex whose positive out-degree
/// `d` satisfies `den * d < num`, and likewise for in-arcs, until no vertex
/// qualifies. Scanning is by ascending vertex, out-side then in-side.
///
/// In the peeled graph every positive out- or in-degree `d` satisfies
/// `den * d >= num`, so the pseudo-semi-degree is at least `num / den`
/// whenever any arc survives. The rational threshold is kept as a
/// numerator/denominator pair so callers state their bound exactly instead
/// of rounding.
pub fn peel_below(g: &OrientedGraph, num: u64, den: u64) -> Result<PeelOutcome> {
    if den == 0 {
        return Err(Error::Domain(
            "peel threshold denominator must be positive".into(),
        ));
    }
    let below = |d: u32| d > 0 && (den as u128) * (d as u128) < num as u128;
    let mut graph = g.clone();
    let mut deleted_arcs = 0;
    loop {
        let mut changed = false;
        for v in 0..graph.n() {
            if below(graph.out_degree(v)) {
                deleted_arcs += graph.clear_out(v);
                changed = true;
            }
            if below(graph.in_degree(v)) {
                deleted_arcs += graph.clear_in(v);
                changed = true;
            }
        }
        if !changed {
            return Ok(PeelOutcome {
                graph,
                deleted_arcs,
            });
        }
    }
}

/// Extract a subdigraph with `2 * pseudo_delta0 >= k + 1` from any graph
/// with more than `k * n` arcs, by peeling degrees below `(k + 1) / 2`.
///
/// Every peeling event empties one side of one vertex and removes at most
/// `floor(k / 2)` arcs, and each side empties at most once, so fewer than
/// `k * n` arcs are deleted in total; the arc-count hypothesis therefore
/// guarantees the peeled graph keeps at least one arc, which upgrades the
/// degree guarantee of [`peel_below`] into a pseudo-semi-degree bound.
pub fn dense_subdigraph(g: &OrientedGraph, k: u64) -> Result<PeelOutcome> {
    let kn = k as u128 * g.n() as u128;
    if g.arc_count() as u128 <= kn {
        return Err(Error::Precondition(format!(
            "need more than k * n = {kn} arcs, got {}",
            g.arc_count()
        )));
    }
    let out = peel_below(g, k + 1, 2)?;
    debug_assert!(out.graph.arc_count() > 0);
    debug_assert!((out.deleted_arcs as u128) < kn);
    debug_assert!(2 * out.graph.degree_profile().pseudo_delta0 as u64 >= k + 1);
    Ok(out)
}

/// A parseable, printable description of a generated graph, e.g.
/// `circulant(n=5)`, `regular-union(k=3,copies=2)`, `construction-d(k=4)` or
/// `random(n=8,p=0.5,seed=42)`. `Display` and `FromStr` round-trip.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Circulant { n: usize },
    RegularUnion { k: usize, copies: usize },
    ConstructionD { k: u64 },
    Random { n: usize, p: f64, seed: u64 },
}

impl FamilySpec {
    /// Build the described graph.
    pub fn build(&self) -> Result<OrientedGraph> {
        match *self {
            FamilySpec::Circulant { n } => circulant_tournament(n),
            FamilySpec::RegularUnion { k, copies } => disjoint_regular_tournaments(k, copies),
            FamilySpec::ConstructionD { k } => construction_d(k),
            FamilySpec::Random { n, p, seed } => random_oriented(n, p, seed),
        }
    }

    /// The seed, for the one family that has one.
    pub fn seed(&self) -> Option<u64> {
        match *self {
            FamilySpec::Random { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Circulant { n } => write!(f, "circulant(n={n})"),
            FamilySpec::RegularUnion { k, copies } => {
                write!(f, "regular-union(k={k},copies={copies})")
            }
            FamilySpec::ConstructionD { k } => write!(f, "construction-d(k={k})"),
            FamilySpec::Random { n, p, seed } => write!(f, "random(n={n},p={p},seed={seed})"),
        }
    }
}

fn spec_error(s: &str, why: &str) -> Error {
    Error::Domain(format!("family spec `{s}`: {why}"))
}

/// Split `name(k1=v1,k2=v2,..)` and check the argument names match `keys`
/// in order; returns the raw value strings.
fn spec_values<'a>(s: &'a str, body: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut values = Vec::with_capacity(keys.len());
    let mut parts = body.split(',');
    for key in keys {
        let part = parts
            .next()
            .ok_or_else(|| spec_error(s, &format!("missing argument `{key}`")))?;
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| spec_error(s, &format!("expected `{key}=..`, got `{part}`")))?;
        if name.trim() != *key {
            return Err(spec_error(s, &format!("expected `{key}=..`, got `{part}`")));
        }
        values.push(value.trim());
    }
    if let Some(extra) = parts.next() {
        return Err(spec_error(s, &format!("unexpected argument `{extra}`")));
    }
    Ok(values)
}

fn spec_num<T: FromStr>(s: &str, key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| spec_error(s, &format!("cannot parse `{key}={value}`")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let open = t
            .find('(')
            .ok_or_else(|| spec_error(s, "expected `family(key=value,..)`"))?;
        let name = &t[..open];
        let body = t[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| spec_error(s, "missing closing parenthesis"))?;
        match name {
            "circulant" => {
                let v = spec_values(s, body, &["n"])?;
                Ok(FamilySpec::Circulant {
                    n: spec_num(s, "n", v[0])?,
                })
            }
            "regular-union" => {
                let v = spec_values(s, body, &["k", "copies"])?;
                Ok(FamilySpec::RegularUnion {
                    k: spec_num(s, "k", v[0])?,
                    copies: spec_num(s, "copies", v[1])?,
                })
            }
            "construction-d" => {
                let v = spec_values(s, body, &["k"])?;
                Ok(FamilySpec::ConstructionD {
                    k: spec_num(s, "k", v[0])?,
                })
            }
            "random" => {
                let v = spec_values(s, body, &["n", "p", "seed"])?;
                Ok(FamilySpec::Random {
                    n: spec_num(s, "n", v[0])?,
                    p: spec_num(s, "p", v[1])?,
                    seed: spec_num(s, "seed", v[2])?,
                })
            }
            other => Err(spec_error(s, &format!("unknown family `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve;

    #[test]
    fn circulant_is_regular_tournament() {
        let g = circulant_tournament(5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.arc_count(), 10);
        assert!(g.has_arc(0, 1));
        assert!(g.has_arc(0, 2));
        assert!(g.has_arc(3, 0)); // 3 + 2 wraps to 0
        let p = g.degree_profile();
        assert_eq!(p.delta0, 2);
        assert_eq!(p.pseudo_delta0, 2);
        assert!(circulant_tournament(4).is_err());
        assert!(circulant_tournament(1).is_err());
    }

    #[test]
    fn disjoint_union_keeps_components_apart() {
        let g = disjoint_regular_tournaments(3, 2).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.arc_count(), 6);
        assert_eq!(g.degree_profile().delta0, 1);
        for a in 0..3 {
            for b in 3..6 {
                assert!(!g.has_arc(a, b) && !g.has_arc(b, a));
            }
        }
        assert!(disjoint_regular_tournaments(4, 1).is_err());
        assert!(disjoint_regular_tournaments(3, 0).is_err());
        assert!(disjoint_regular_tournaments(5, 13).is_err()); // 65 vertices
    }

    #[test]
    fn construction_degree_and_path_behaviour() {
        for k in 2..=43 {
            let g = construction_d(k).unwrap();
            let m = g.n() / 2;
            assert_eq!(g.arc_count(), m * m);
            let p = g.degree_profile();
            assert_eq!(p.delta0, 0);
            assert_eq!(p.pseudo_delta0, m as u32);
            assert!(4 * p.pseudo_delta0 as u64 >= 3 * k - 2);
        }
        // The directed-path ceiling that motivates the family.
        let g = construction_d(4).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(solve::longest_directed_path(&g).len(), 2); // one arc
        assert!(construction_d(1).is_err());
        assert!(construction_d(44).is_err());
    }

    #[test]
    fn random_model_is_deterministic_and_respects_p() {
        let a = random_oriented(10, 0.5, 7).unwrap();
        let b = random_oriented(10, 0.5, 7).unwrap();
        assert_eq!(a, b);
        let c = random_oriented(10, 0.5, 8).unwrap();
        assert_ne!(a, c);
        assert_eq!(random_oriented(10, 0.0, 7).unwrap().arc_count(), 0);
        assert_eq!(random_oriented(10, 1.0, 7).unwrap().arc_count(), 45);
        assert!(random_oriented(10, 1.5, 7).is_err());
        assert!(random_oriented(10, f64::NAN, 7).is_err());
    }

    #[test]
    fn enumeration_counts_and_guard() {
        assert_eq!(enumerate_all(3).unwrap().count(), 27);
        assert_eq!(enumeration_space(6).unwrap(), 14_348_907);
        assert!(matches!(
            enumerate_all(7),
            Err(Error::ResourceGuard(_))
        ));
        let codes: Vec<u128> = enumerate_range(3, 5, 10)
            .unwrap()
            .map(|g| g.to_trit_code().unwrap())
            .collect();
        assert_eq!(codes, vec![5, 6, 7, 8, 9]);
        assert!(enumerate_range(3, 10, 5).is_err());
        assert!(enumerate_range(3, 0, 28).is_err());
    }

    #[test]
    fn peeling_cascades_and_stops_at_threshold() {
        // A directed path peels away entirely: every side has degree <= 1.
        let path = OrientedGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let out = peel_below(&path, 3, 2).unwrap();
        assert_eq!(out.deleted_arcs, 4);
        assert_eq!(out.graph.arc_count(), 0);

        // At threshold exactly: 2 * 1 < 2 is false, nothing is deleted.
        let tri = OrientedGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let out = peel_below(&tri, 2, 2).unwrap();
        assert_eq!(out.deleted_arcs, 0);
        assert_eq!(out.graph, tri);

        // One pendant arc goes, the regular core stays.
        let mut arcs: Vec<(usize, usize)> = circulant_tournament(7).unwrap().arcs().collect();
        arcs.push((7, 0));
        let g = OrientedGraph::new(8, &arcs).unwrap();
        let out = peel_below(&g, 3, 2).unwrap();
        assert_eq!(out.deleted_arcs, 1);
        assert_eq!(out.graph.arc_count(), 21);
        assert_eq!(out.graph.out_degree(7), 0);

        assert!(peel_below(&tri, 1, 0).is_err());
    }

    #[test]
    fn dense_subdigraph_meets_its_guarantee() {
        let mut arcs: Vec<(usize, usize)> = circulant_tournament(7).unwrap().arcs().collect();
        arcs.push((7, 0));
        let g = OrientedGraph::new(8, &arcs).unwrap();
        // 22 arcs > 2 * 8: peel at (k + 1) / 2 = 3/2.
        let out = dense_subdigraph(&g, 2).unwrap();
        assert_eq!(out.deleted_arcs, 1);
        let p = out.graph.degree_profile();
        assert!(2 * p.pseudo_delta0 >= 3);
        // 22 arcs fail the k = 3 hypothesis 22 > 24.
        assert!(matches!(
            dense_subdigraph(&g, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn family_spec_round_trips() {
        let specs = [
            FamilySpec::Circulant { n: 5 },
            FamilySpec::RegularUnion { k: 3, copies: 2 },
            FamilySpec::ConstructionD { k: 4 },
            FamilySpec::Random {
                n: 8,
                p: 0.5,
                seed: 42,
            },
        ];
        let expect = [
            "circulant(n=5)",
            "regular-union(k=3,copies=2)",
            "construction-d(k=4)",
            "random(n=8,p=0.5,seed=42)",
        ];
        for (spec, text) in specs.iter().zip(expect) {
            assert_eq!(spec.to_string(), text);
            let back: FamilySpec = text.parse().unwrap();
            assert_eq!(&back, spec);
            assert!(back.build().is_ok());
        }
    }

    #[test]
    fn family_spec_build_matches_constructors() {
        let g: FamilySpec = "random(n=8,p=0.25,seed=3)".parse().unwrap();
        assert_eq!(g.build().unwrap(), random_oriented(8, 0.25, 3).unwrap());
        assert_eq!(g.seed(), Some(3));
        let c: FamilySpec = "circulant(n=7)".parse().unwrap();
        assert_eq!(c.build().unwrap(), circulant_tournament(7).unwrap());
        assert_eq!(c.seed(), None);
    }

    #[test]
    fn family_spec_rejects_malformed_input() {
        for bad in [
            "unknown(n=5)",
            "circulant",
            "circulant(n=5",
            "circulant(m=5)",
            "circulant(n=five)",
            "circulant(n=5,extra=1)",
            "regular-union(k=3)",
            "random(n=8,p=0.5)",
        ] {
            assert!(
                matches!(bad.parse::<FamilySpec>(), Err(Error::Domain(_))),
                "{bad} should be rejected"
            );
        }
    }
}
