//! Vertex spans, witness walks, and the track transformations between the
//! active and lazy movement rules.
//!
//! The span under a rule is the largest `r` for which the product of the graph
//! with itself, restricted to pairs at distance `>= r`, has a connected
//! component projecting onto every vertex in both coordinates. Any walk
//! through such a component is a pair of tracks keeping distance `r`, and
//! conversely every track pair traces out such a component.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::product::{MovementRule, Pair, PairComponent, PairGraph};

/// Result of a span computation under one rule.
#[derive(Debug, Clone, Serialize)]
pub struct SpanReport {
    pub rule: MovementRule,
    pub value: u32,
    /// The qualifying component containing the smallest pair at `value`.
    pub witness: PairComponent,
    /// Minimum distance over the witness pairs; always equals `value`.
    pub epsilon: u32,
}

/// Largest safety distance two walkers can keep under `rule` while each
/// visits every vertex, with the pair-graph component that achieves it.
pub fn compute_span(g: &Graph, rule: MovementRule) -> SpanReport {
    for r in (0..=g.radius()).rev() {
        let pg = PairGraph::build(g, rule, r).expect("threshold within radius");
        if let Some(witness) = pg.components_with_double_surjectivity().into_iter().next() {
            let epsilon = witness.min_distance(g);
            return SpanReport {
                rule,
                value: r,
                witness,
                epsilon,
            };
        }
    }
    // Threshold 0 keeps every pair; the diagonal component (Traditional,
    // Lazy) or the component of (0,0) (Active) always covers both sides.
    unreachable!("a connected graph always has a qualifying component at threshold 0")
}

/// The three spans of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Spans {
    pub strong: u32,
    pub direct: u32,
    pub cartesian: u32,
}

impl Spans {
    pub fn new(strong: u32, direct: u32, cartesian: u32) -> Self {
        Spans {
            strong,
            direct,
            cartesian,
        }
    }

    pub fn get(&self, rule: MovementRule) -> u32 {
        match rule {
            MovementRule::Traditional => self.strong,
            MovementRule::Active => self.direct,
            MovementRule::Lazy => self.cartesian,
        }
    }
}

impl fmt::Display for Spans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.strong, self.direct, self.cartesian)
    }
}

pub fn compute_spans(g: &Graph) -> Spans {
    Spans {
        strong: compute_span(g, MovementRule::Traditional).value,
        direct: compute_span(g, MovementRule::Active).value,
        cartesian: compute_span(g, MovementRule::Lazy).value,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackError {
    #[error("tracks must have at least one step")]
    Empty,
    #[error("track lengths differ: Alice {alice}, Bob {bob}")]
    LengthMismatch { alice: usize, bob: usize },
    #[error("vertex {vertex} at step {step} out of range for {n} vertices")]
    VertexOutOfRange {
        step: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("tracks do not follow the active movement rule")]
    NotActiveConformant,
    #[error("tracks do not follow the lazy movement rule")]
    NotLazyConformant,
}

/// Alice's and Bob's walks, one vertex per step, tagged with the rule they
/// are meant to follow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrackPair {
    alice: Vec<Vertex>,
    bob: Vec<Vertex>,
    rule: MovementRule,
}

impl TrackPair {
    pub fn new(
        alice: Vec<Vertex>,
        bob: Vec<Vertex>,
        rule: MovementRule,
    ) -> Result<Self, TrackError> {
        if alice.is_empty() || bob.is_empty() {
            return Err(TrackError::Empty);
        }
        if alice.len() != bob.len() {
            return Err(TrackError::LengthMismatch {
                alice: alice.len(),
                bob: bob.len(),
            });
        }
        Ok(TrackPair { alice, bob, rule })
    }

    pub fn alice(&self) -> &[Vertex] {
        &self.alice
    }

    pub fn bob(&self) -> &[Vertex] {
        &self.bob
    }

    pub fn rule(&self) -> MovementRule {
        self.rule
    }

    /// Number of steps `l`.
    pub fn len(&self) -> usize {
        self.alice.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positions(&self) -> impl Iterator<Item = Pair> + '_ {
        self.alice.iter().copied().zip(self.bob.iter().copied())
    }

    /// Distance between the walkers at each step.
    pub fn distances<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = u32> + 'a {
        self.positions().map(|(a, b)| g.distance(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrackValidation {
    /// Every step is a legal joint move under the track's rule.
    pub conforms: bool,
    pub surjective_alice: bool,
    pub surjective_bob: bool,
    pub min_distance: u32,
}

impl TrackValidation {
    /// Conformant and both walks visit every vertex.
    pub fn is_valid(&self) -> bool {
        self.conforms && self.surjective_alice && self.surjective_bob
    }
}

/// Checks `t` against its rule on `g`.
///
/// Under [`MovementRule::Traditional`] a step where neither walker moves is
/// allowed; under the other two rules it is not.
pub fn validate_tracks(g: &Graph, t: &TrackPair) -> Result<TrackValidation, TrackError> {
    let n = g.n();
    for (step, (a, b)) in t.positions().enumerate() {
        for vertex in [a, b] {
            if vertex >= n {
                return Err(TrackError::VertexOutOfRange {
                    step: step + 1,
                    vertex,
                    n,
                });
            }
        }
    }
    let conforms = t
        .positions()
        .zip(t.positions().skip(1))
        .all(|(p, q)| (t.rule == MovementRule::Traditional && p == q) || t.rule.is_step(g, p, q));
    let covers = |walk: &[Vertex]| {
        let mut seen = vec![false; n];
        for &v in walk {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    };
    Ok(TrackValidation {
        conforms,
        surjective_alice: covers(&t.alice),
        surjective_bob: covers(&t.bob),
        min_distance: t.distances(g).min().expect("tracks are non-empty"),
    })
}

/// Turns the witness component into a pair of tracks: a closed depth-first
/// traversal of a spanning tree rooted at the smallest pair, `2|H| - 1` steps.
pub fn extract_witness_tracks(g: &Graph, report: &SpanReport) -> TrackPair {
    let n = g.n();
    let pairs = report.witness.pairs();
    assert!(!pairs.is_empty(), "witness component is empty");
    let index = |(a, b): Pair| a * n + b;

    let mut member = vec![false; n * n];
    for &p in pairs {
        member[index(p)] = true;
    }

    // Spanning tree by iterative DFS; children kept in discovery order.
    let root = pairs[0];
    let mut visited = vec![false; n * n];
    let mut children: Vec<Vec<Pair>> = vec![Vec::new(); n * n];
    visited[index(root)] = true;
    let mut stack = vec![root];
    while let Some(p) = stack.pop() {
        let mut next = Vec::new();
        report.rule.for_each_step(g, p, |q| {
            let i = index(q);
            if member[i] && !visited[i] {
                visited[i] = true;
                next.push(q);
            }
        });
        next.sort_unstable();
        for &q in next.iter().rev() {
            stack.push(q);
        }
        children[index(p)] = next;
    }

    // Closed walk: descend into each child and come back.
    let mut walk = vec![root];
    let mut frames: Vec<(Pair, usize)> = vec![(root, 0)];
    while let Some(frame) = frames.last_mut() {
        let (p, next) = *frame;
        if let Some(&child) = children[index(p)].get(next) {
            frame.1 += 1;
            walk.push(child);
            frames.push((child, 0));
        } else {
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                walk.push(parent);
            }
        }
    }

    let (alice, bob) = walk.into_iter().unzip();
    TrackPair::new(alice, bob, report.rule).expect("walk is non-empty")
}

/// Which walker moved at a step of an opposite-lazy track pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mover {
    Alice = 1,
    Bob = 2,
}

/// The per-step mover sequence of a lazy track pair (length `l - 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveAttribution {
    moves: Vec<Mover>,
}

impl MoveAttribution {
    pub fn from_tracks(g: &Graph, t: &TrackPair) -> Result<Self, TrackError> {
        let as_lazy = TrackPair {
            rule: MovementRule::Lazy,
            ..t.clone()
        };
        if !validate_tracks(g, &as_lazy)?.conforms {
            return Err(TrackError::NotLazyConformant);
        }
        let moves = t
            .alice
            .windows(2)
            .map(|w| {
                if w[0] != w[1] {
                    Mover::Alice
                } else {
                    Mover::Bob
                }
            })
            .collect();
        Ok(MoveAttribution { moves })
    }

    pub fn moves(&self) -> &[Mover] {
        &self.moves
    }

    /// Consecutive pairs `(X(2k-1), X(2k))`; a trailing odd entry is left out.
    pub fn pairs(&self) -> impl Iterator<Item = (Mover, Mover)> + '_ {
        self.moves.chunks_exact(2).map(|c| (c[0], c[1]))
    }

    pub fn unpaired(&self) -> Option<Mover> {
        self.moves.chunks_exact(2).remainder().first().copied()
    }

    /// Number of pairs in which both walkers moved once.
    pub fn mixed_pairs(&self) -> usize {
        self.pairs().filter(|(x, y)| x != y).count()
    }
}

/// Active tracks of length `l` to lazy tracks of length `2l - 1`: Alice takes
/// her step, then Bob takes his. The distance drops by at most one.
pub fn direct_to_lazy(g: &Graph, t: &TrackPair) -> Result<TrackPair, TrackError> {
    let as_active = TrackPair {
        rule: MovementRule::Active,
        ..t.clone()
    };
    if !validate_tracks(g, &as_active)?.conforms {
        return Err(TrackError::NotActiveConformant);
    }
    let l = t.len();
    // 1-based: alice'(i) = alice(ceil((i+1)/2)), bob'(i) = bob(ceil(i/2)).
    let alice = (0..2 * l - 1).map(|j| t.alice[(j + 1) / 2]).collect();
    let bob = (0..2 * l - 1).map(|j| t.bob[j / 2]).collect();
    TrackPair::new(alice, bob, MovementRule::Lazy)
}

/// Neighbour of `at` farthest from `other`, smallest id on ties.
fn detour(g: &Graph, at: Vertex, other: Vertex) -> Vertex {
    *g.neighbors(at)
        .iter()
        .max_by_key(|&&x| (g.distance(x, other), std::cmp::Reverse(x)))
        .expect("a walker that moved has a neighbour")
}

/// Lazy tracks to active tracks. Consecutive moves are paired up: one move
/// each becomes a single simultaneous step; two moves by the same walker
/// become two steps while the other steps out to a neighbour and back. A
/// trailing unpaired move is matched by a step out to a neighbour. The
/// distance drops by at most one.
pub fn lazy_to_direct(g: &Graph, t: &TrackPair) -> Result<TrackPair, TrackError> {
    let attribution = MoveAttribution::from_tracks(g, t)?;
    // 1-based views of the input walks.
    let f = |k: usize| t.alice[k - 1];
    let h = |k: usize| t.bob[k - 1];

    let mut alice = vec![f(1)];
    let mut bob = vec![h(1)];
    let mut b = 0;
    let mut i = 1;
    for pair in attribution.pairs() {
        match pair {
            (Mover::Alice, Mover::Alice) => {
                i += 2;
                alice.push(f(i - 1 + b));
                alice.push(f(i + b));
                bob.push(detour(g, h(i + b), f(i - 1 + b)));
                bob.push(h(i + b));
            }
            (Mover::Bob, Mover::Bob) => {
                i += 2;
                alice.push(detour(g, f(i + b), h(i - 1 + b)));
                alice.push(f(i + b));
                bob.push(h(i - 1 + b));
                bob.push(h(i + b));
            }
            _ => {
                b += 1;
                i += 1;
                alice.push(f(i + b));
                bob.push(h(i + b));
            }
        }
    }
    if let Some(last) = attribution.unpaired() {
        i += 1;
        match last {
            Mover::Alice => {
                alice.push(f(i + b));
                bob.push(detour(g, h(i + b), f(i + b)));
            }
            Mover::Bob => {
                alice.push(detour(g, f(i + b), h(i + b)));
                bob.push(h(i + b));
            }
        }
    }
    debug_assert_eq!(alice.len(), t.len() - attribution.mixed_pairs());
    TrackPair::new(alice, bob, MovementRule::Active)
}
