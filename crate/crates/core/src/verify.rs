//! Independent span oracle, small-graph enumeration, random corpora, and the
//! corpus-wide check of the span relations and bounds.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_connected, Graph, Vertex};
use crate::io::emit_graph6;
use crate::product::MovementRule;
use crate::span::{
    compute_span, direct_to_lazy, extract_witness_tracks, lazy_to_direct, validate_tracks, Spans,
};

/// Largest order the joint-state oracle accepts (`n^2 * 4^n` states).
pub const ORACLE_MAX_N: usize = 6;
/// Largest order for labeled enumeration.
pub const ENUMERATE_MAX_N: usize = 7;
/// Largest order for enumeration up to isomorphism.
pub const DEDUP_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("order {n} exceeds the limit {max} for {what}")]
    TooLarge {
        n: usize,
        max: usize,
        what: &'static str,
    },
    #[error("the cut-edge bound needs at least 3 vertices, got {0}")]
    OrderTooSmall(usize),
}

/// Positions and visited sets of both walkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JointState {
    pub alice: Vertex,
    pub bob: Vertex,
    pub seen_alice: u32,
    pub seen_bob: u32,
}

impl JointState {
    fn encode(self, n: usize) -> usize {
        (((self.alice * n + self.bob) << n | self.seen_alice as usize) << n)
            | self.seen_bob as usize
    }
}

/// Span by explicit search over joint walker states, without pair graphs.
///
/// For each threshold `r`, descending from the radius, a BFS starts from
/// every position pair at distance `>= r` with each walker having seen only
/// its start, and moves both walkers per `rule` while staying at distance
/// `>= r`. The span is the first `r` at which some reachable state has both
/// walkers having seen every vertex.
pub fn oracle_span(g: &Graph, rule: MovementRule) -> Result<u32, VerifyError> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(VerifyError::TooLarge {
            n,
            max: ORACLE_MAX_N,
            what: "the joint-state oracle",
        });
    }
    let full = (1u32 << n) - 1;
    let state_count = n * n << (2 * n);
    let moves = |v: Vertex, moving: bool| -> Vec<Vertex> {
        if moving {
            g.neighbors(v).to_vec()
        } else {
            vec![v]
        }
    };

    for r in (0..=g.radius()).rev() {
        let mut seen = vec![false; state_count];
        let mut queue = VecDeque::new();
        for a in 0..n {
            for b in 0..n {
                if g.distance(a, b) >= r {
                    let s = JointState {
                        alice: a,
                        bob: b,
                        seen_alice: 1 << a,
                        seen_bob: 1 << b,
                    };
                    seen[s.encode(n)] = true;
                    queue.push_back(s);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            if s.seen_alice == full && s.seen_bob == full {
                return Ok(r);
            }
            // (alice moves?, bob moves?) combinations allowed by the rule
            let modes: &[(bool, bool)] = match rule {
                MovementRule::Traditional => {
                    &[(false, false), (true, false), (false, true), (true, true)]
                }
                MovementRule::Active => &[(true, true)],
                MovementRule::Lazy => &[(true, false), (false, true)],
            };
            for &(move_a, move_b) in modes {
                for a in moves(s.alice, move_a) {
                    for b in moves(s.bob, move_b) {
                        if g.distance(a, b) < r {
                            continue;
                        }
                        let t = JointState {
                            alice: a,
                            bob: b,
                            seen_alice: s.seen_alice | 1 << a,
                            seen_bob: s.seen_bob | 1 << b,
                        };
                        let code = t.encode(n);
                        if !seen[code] {
                            seen[code] = true;
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
    }
    // Threshold 0 always succeeds on a connected graph.
    unreachable!("no covering walk found at threshold 0")
}

/// Oracle spans under all three rules.
pub fn oracle_spans(g: &Graph) -> Result<Spans, VerifyError> {
    Ok(Spans::new(
        oracle_span(g, MovementRule::Traditional)?,
        oracle_span(g, MovementRule::Active)?,
        oracle_span(g, MovementRule::Lazy)?,
    ))
}

/// `(i, j)` slots of the upper triangle in graph6 bit order.
fn edge_slots(n: usize) -> Vec<(Vertex, Vertex)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Adjacency bitstring of `g` relabeled by `perm` (vertex `v` becomes
/// `perm[v]`); bit `k` is the `k`-th slot in graph6 order, most significant
/// first so that comparing integers compares bitstrings.
fn permuted_code(
    edges: &[(Vertex, Vertex)],
    perm: &[usize],
    slot_of: &[Vec<usize>],
    slots: usize,
) -> u64 {
    edges.iter().fold(0u64, |code, &(u, v)| {
        let (a, b) = (perm[u], perm[v]);
        code | 1 << (slots - 1 - slot_of[a.min(b)][a.max(b)])
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Canonical form by brute force over all `n!` relabelings: the relabeled
/// graph with the smallest adjacency bitstring.
pub fn canonical_form(g: &Graph) -> Result<Graph, VerifyError> {
    let n = g.n();
    if n > DEDUP_MAX_N {
        return Err(VerifyError::TooLarge {
            n,
            max: DEDUP_MAX_N,
            what: "brute-force canonical labeling",
        });
    }
    let slots = edge_slots(n);
    let mut slot_of = vec![vec![usize::MAX; n]; n];
    for (k, &(i, j)) in slots.iter().enumerate() {
        slot_of[i][j] = k;
    }
    let edges: Vec<_> = g.edges().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = (u64::MAX, perm.clone());
    loop {
        let code = permuted_code(&edges, &perm, &slot_of, slots.len());
        if code < best.0 {
            best = (code, perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let perm = best.1;
    Ok(Graph::new(n, edges.iter().map(|&(u, v)| (perm[u], perm[v]))).expect("relabeling is valid"))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, VerifyError> {
    Ok(g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && canonical_form(g)? == canonical_form(h)?)
}

/// All connected graphs on `n` labeled vertices, in ascending order of their
/// edge-set bitmask (bit `k` = `k`-th upper-triangle slot in graph6 order).
/// With `dedup`, only the first graph of each isomorphism class is kept.
pub fn enumerate_connected(
    n: usize,
    dedup: bool,
) -> Result<impl Iterator<Item = Graph>, VerifyError> {
    if n > ENUMERATE_MAX_N || n == 0 {
        return Err(VerifyError::TooLarge {
            n,
            max: ENUMERATE_MAX_N,
            what: "labeled enumeration",
        });
    }
    if dedup && n > DEDUP_MAX_N {
        return Err(VerifyError::TooLarge {
            n,
            max: DEDUP_MAX_N,
            what: "enumeration up to isomorphism",
        });
    }
    let slots = edge_slots(n);
    let masks = 0u64..1 << slots.len();
    let mut classes = HashSet::new();
    Ok(masks.filter_map(move |mask| {
        let edges: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !is_connected(n, &edges) {
            return None;
        }
        let g = Graph::new(n, edges).expect("connected simple edge set");
        if dedup {
            let canon = canonical_form(&g).expect("order checked above");
            let key: Vec<_> = canon.edges().collect();
            if !classes.insert(key) {
                return None;
            }
        }
        Some(g)
    }))
}

/// Erdős–Rényi graphs `G(n, p)` with `n` drawn uniformly from `orders`,
/// redrawn until connected. Deterministic for a fixed seed. `p` must be in
/// `(0, 1]`.
pub fn random_graphs(
    count: usize,
    orders: RangeInclusive<usize>,
    edge_prob: f64,
    seed: u64,
) -> impl Iterator<Item = Graph> {
    assert!(
        edge_prob > 0.0 && edge_prob <= 1.0,
        "edge probability must be in (0, 1]"
    );
    assert!(
        *orders.start() >= 1 && !orders.is_empty(),
        "orders must be non-empty and positive"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        let n = rng.gen_range(orders.clone());
        loop {
            let edges: Vec<_> = edge_slots(n)
                .into_iter()
                .filter(|_| rng.gen_bool(edge_prob))
                .collect();
            if is_connected(n, &edges) {
                break Graph::new(n, edges).expect("connected simple edge set");
            }
        }
    })
}

/// Smallest, over all bridges `xy`, of `max(ecc(x) in x's side, ecc(y) in
/// y's side)`; `None` when the graph has no bridge. An upper bound on the
/// strong span.
pub fn cut_edge_bound(g: &Graph) -> Result<Option<u32>, VerifyError> {
    if g.n() < 3 {
        return Err(VerifyError::OrderTooSmall(g.n()));
    }
    Ok(g.bridges()
        .into_iter()
        .map(|(x, y)| {
            let split = g.split_at_bridge(x, y).expect("bridges() returns bridges");
            split
                .side_x
                .eccentricity(split.x)
                .max(split.side_y.eccentricity(split.y))
        })
        .min())
}

/// A relation that every graph must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// strong >= max(direct, cartesian)
    StrongDominates,
    /// |direct - cartesian| <= 1
    DirectCartesianGap,
    /// every span <= radius
    RadiusBound,
    /// strong <= cut-edge bound
    CutEdgeBound,
    /// engine spans equal oracle spans
    OracleAgreement,
    /// extracted witnesses are conformant, doubly surjective, at the span
    WitnessValid,
    /// transformed witnesses conform and lose at most one unit of distance
    TransformBound,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::StrongDominates => "strong >= max(direct, cartesian)",
            Property::DirectCartesianGap => "|direct - cartesian| <= 1",
            Property::RadiusBound => "span <= radius",
            Property::CutEdgeBound => "strong <= cut-edge bound",
            Property::OracleAgreement => "engine = oracle",
            Property::WitnessValid => "witness valid",
            Property::TransformBound => "transformed witness within one",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub property: Property,
}

/// Per-graph outcome, one line of the machine-readable summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub n: usize,
    pub radius: u32,
    pub spans: Spans,
    pub cut_edge_bound: Option<u32>,
    pub oracle: Option<Spans>,
    pub violations: Vec<Property>,
}

impl GraphRecord {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Worker threads; `Some(1)` runs sequentially on the calling thread,
    /// `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Run the oracle on graphs up to this order.
    pub oracle_max_n: usize,
    /// Also validate extracted witnesses and both track transformations.
    pub witnesses: bool,
    /// Keep one [`GraphRecord`] per graph in the report.
    pub keep_records: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            jobs: None,
            oracle_max_n: 5,
            witnesses: false,
            keep_records: false,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EnumerationReport {
    /// Order when the corpus is a single-order enumeration.
    pub n: Option<usize>,
    pub graphs_checked: usize,
    pub oracle_checked: usize,
    pub counterexamples: Vec<Counterexample>,
    /// graph6 of every graph whose cartesian span exceeds its direct span.
    pub cartesian_gt_direct: Vec<String>,
    pub records: Vec<GraphRecord>,
}

impl EnumerationReport {
    fn merge(&mut self, mut other: EnumerationReport) {
        self.graphs_checked += other.graphs_checked;
        self.oracle_checked += other.oracle_checked;
        self.counterexamples.append(&mut other.counterexamples);
        self.cartesian_gt_direct
            .append(&mut other.cartesian_gt_direct);
        self.records.append(&mut other.records);
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Computes every span of `g` and checks all relations.
pub fn check_graph(g: &Graph, options: &CheckOptions) -> GraphRecord {
    let reports = MovementRule::ALL.map(|rule| compute_span(g, rule));
    let spans = Spans::new(reports[0].value, reports[1].value, reports[2].value);
    let radius = g.radius();
    let cut = cut_edge_bound(g).ok().flatten();
    let oracle = (g.n() <= options.oracle_max_n.min(ORACLE_MAX_N))
        .then(|| oracle_spans(g).expect("order within oracle limit"));

    let mut violations = Vec::new();
    if spans.strong < spans.direct.max(spans.cartesian) {
        violations.push(Property::StrongDominates);
    }
    if spans.direct.abs_diff(spans.cartesian) > 1 {
        violations.push(Property::DirectCartesianGap);
    }
    if spans.strong.max(spans.direct).max(spans.cartesian) > radius {
        violations.push(Property::RadiusBound);
    }
    if cut.is_some_and(|c| spans.strong > c) {
        violations.push(Property::CutEdgeBound);
    }
    if oracle.is_some_and(|o| o != spans) {
        violations.push(Property::OracleAgreement);
    }
    if options.witnesses {
        let mut witness_ok = true;
        let mut transform_ok = true;
        for report in &reports {
            let tracks = extract_witness_tracks(g, report);
            let v = validate_tracks(g, &tracks).expect("witness vertices in range");
            witness_ok &= v.is_valid() && v.min_distance == report.value;
            let converted = match report.rule {
                MovementRule::Active => Some(direct_to_lazy(g, &tracks)),
                MovementRule::Lazy => Some(lazy_to_direct(g, &tracks)),
                MovementRule::Traditional => None,
            };
            if let Some(converted) = converted {
                transform_ok &= converted.is_ok_and(|t| {
                    validate_tracks(g, &t)
                        .is_ok_and(|v| v.is_valid() && v.min_distance + 1 >= report.value)
                });
            }
        }
        if !witness_ok {
            violations.push(Property::WitnessValid);
        }
        if !transform_ok {
            violations.push(Property::TransformBound);
        }
    }

    GraphRecord {
        graph6: emit_graph6(g),
        n: g.n(),
        radius,
        spans,
        cut_edge_bound: cut,
        oracle,
        violations,
    }
}

fn report_for(records: Vec<GraphRecord>, keep: bool) -> EnumerationReport {
    let mut report = EnumerationReport {
        graphs_checked: records.len(),
        ..Default::default()
    };
    for record in records {
        report.oracle_checked += usize::from(record.oracle.is_some());
        for &property in &record.violations {
            report.counterexamples.push(Counterexample {
                graph6: record.graph6.clone(),
                property,
            });
        }
        if record.spans.cartesian > record.spans.direct {
            report.cartesian_gt_direct.push(record.graph6.clone());
        }
        if keep {
            report.records.push(record);
        }
    }
    report
}

/// Checks every graph in `corpus`. The report lists graphs in corpus order
/// regardless of the number of worker threads.
pub fn check_theorems<I>(corpus: I, options: &CheckOptions) -> EnumerationReport
where
    I: IntoIterator<Item = Graph>,
{
    const BATCH: usize = 4096;
    let pool = match options.jobs {
        Some(jobs) if jobs > 1 => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool"),
        ),
        _ => None,
    };
    let sequential = options.jobs == Some(1);

    let mut total = EnumerationReport::default();
    let mut orders = HashSet::new();
    let mut corpus = corpus.into_iter().peekable();
    while corpus.peek().is_some() {
        let batch: Vec<Graph> = corpus.by_ref().take(BATCH).collect();
        orders.extend(batch.iter().map(Graph::n));
        let run = || -> Vec<GraphRecord> {
            if sequential {
                batch.iter().map(|g| check_graph(g, options)).collect()
            } else {
                batch.par_iter().map(|g| check_graph(g, options)).collect()
            }
        };
        let records = match &pool {
            Some(pool) => pool.install(run),
            None => run(),
        };
        total.merge(report_for(records, options.keep_records));
    }
    if orders.len() == 1 {
        total.n = orders.into_iter().next();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilySpec, NamedGraph};
    use crate::span::compute_spans;

    fn path(n: usize) -> Graph {
        FamilySpec::Path(n).generate().unwrap()
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(oracle_span(&path(2), MovementRule::Lazy).unwrap(), 0);
        assert_eq!(oracle_span(&path(2), MovementRule::Active).unwrap(), 1);
        let c5 = FamilySpec::Cycle(5).generate().unwrap();
        assert_eq!(oracle_span(&c5, MovementRule::Lazy).unwrap(), 2);
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!(oracle_spans(&k1).unwrap(), Spans::new(0, 0, 0));
        let big = path(7);
        assert!(matches!(
            oracle_span(&big, MovementRule::Lazy),
            Err(VerifyError::TooLarge { n: 7, .. })
        ));
    }

    #[test]
    fn oracle_matches_engine_on_pc3() {
        let pc3 = FamilySpec::Paramecium(3).generate().unwrap();
        assert_eq!(oracle_spans(&pc3).unwrap(), compute_spans(&pc3));
        assert_eq!(compute_spans(&pc3), Spans::new(2, 1, 2));
    }

    #[test]
    fn enumeration_counts() {
        // brute force over all 64 labeled graphs on 4 vertices
        let labeled = enumerate_connected(4, false).unwrap().count();
        assert_eq!(labeled, 38);
        assert_eq!(enumerate_connected(4, true).unwrap().count(), 6);
        let k2: Vec<_> = enumerate_connected(2, false).unwrap().collect();
        assert_eq!(k2.len(), 1);
        assert_eq!(k2[0].edge_count(), 1);
        assert_eq!(enumerate_connected(1, true).unwrap().count(), 1);
        assert!(enumerate_connected(8, false).is_err());
        assert!(enumerate_connected(7, true).is_err());
    }

    #[test]
    fn enumeration_is_ordered() {
        let codes: Vec<String> = enumerate_connected(4, false)
            .unwrap()
            .map(|g| emit_graph6(&g))
            .collect();
        assert_eq!(codes.first().map(String::as_str), Some("Cs"));
        let distinct: HashSet<_> = codes.iter().collect();
        assert_eq!(distinct.len(), codes.len());
    }

    #[test]
    fn canonical_form_is_invariant() {
        let c4a = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c4b = Graph::new(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c4a).unwrap(), canonical_form(&c4b).unwrap());
        assert!(!is_isomorphic(&c4a, &path(4)).unwrap());
    }

    #[test]
    fn cut_bound() {
        assert_eq!(
            cut_edge_bound(&NamedGraph::Fig6Left.graph()).unwrap(),
            Some(1)
        );
        assert_eq!(
            cut_edge_bound(&NamedGraph::Fig6Right.graph()).unwrap(),
            Some(4)
        );
        let c6 = FamilySpec::Cycle(6).generate().unwrap();
        assert_eq!(cut_edge_bound(&c6).unwrap(), None);
        assert_eq!(
            cut_edge_bound(&path(2)).unwrap_err(),
            VerifyError::OrderTooSmall(2)
        );
    }

    #[test]
    fn random_is_deterministic() {
        let a: Vec<String> = random_graphs(20, 3..=8, 0.4, 7)
            .map(|g| emit_graph6(&g))
            .collect();
        let b: Vec<String> = random_graphs(20, 3..=8, 0.4, 7)
            .map(|g| emit_graph6(&g))
            .collect();
        assert_eq!(a, b);
        let c: Vec<String> = random_graphs(20, 3..=8, 0.4, 8)
            .map(|g| emit_graph6(&g))
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn dense_random_graphs_are_complete() {
        for g in random_graphs(10, 3..=7, 1.0, 1) {
            assert_eq!(g.edge_count(), g.n() * (g.n() - 1) / 2);
            assert_eq!(compute_spans(&g), Spans::new(1, 1, 1));
        }
    }

    #[test]
    fn report_is_independent_of_jobs() {
        let corpus = || enumerate_connected(4, false).unwrap();
        let opts = |jobs| CheckOptions {
            jobs: Some(jobs),
            witnesses: true,
            keep_records: true,
            ..Default::default()
        };
        let one = check_theorems(corpus(), &opts(1));
        let four = check_theorems(corpus(), &opts(4));
        assert_eq!(one.records, four.records);
        assert_eq!(one.n, Some(4));
        assert!(one.passed());
        assert_eq!(one.oracle_checked, 38);
    }
}
