//! Movement rules and the distance-thresholded pair graphs they induce.
//!
//! A pair `(u, v)` is a joint position: Alice on `u`, Bob on `v`. Under a
//! rule, two pairs are adjacent when one joint step can take one to the other:
//!
//! * [`MovementRule::Traditional`]: strong product, each walker stays or moves,
//!   at least one moves;
//! * [`MovementRule::Active`]: direct product, both move;
//! * [`MovementRule::Lazy`]: Cartesian product, exactly one moves.
//!
//! The pair graph at threshold `r` is the product restricted to pairs at
//! distance at least `r`. Pairs are indexed `u * n + v`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Joint position of the two walkers, `(alice, bob)`.
pub type Pair = (Vertex, Vertex);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MovementRule {
    /// Each walker moves or stays independently (strong span).
    Traditional,
    /// Both walkers move every step (direct span).
    Active,
    /// Exactly one walker moves each step (Cartesian span).
    Lazy,
}

impl MovementRule {
    pub const ALL: [MovementRule; 3] = [
        MovementRule::Traditional,
        MovementRule::Active,
        MovementRule::Lazy,
    ];

    /// Name of the graph product this rule corresponds to.
    pub fn product_name(self) -> &'static str {
        match self {
            MovementRule::Traditional => "strong",
            MovementRule::Active => "direct",
            MovementRule::Lazy => "cartesian",
        }
    }

    /// Whether `(a, b) -> (a2, b2)` is a single joint step under this rule.
    /// A step where neither walker moves is never a product edge.
    pub fn is_step(self, g: &Graph, (a, b): Pair, (a2, b2): Pair) -> bool {
        let moved_a = a != a2;
        let moved_b = b != b2;
        let ok_a = !moved_a || g.has_edge(a, a2);
        let ok_b = !moved_b || g.has_edge(b, b2);
        ok_a && ok_b
            && match self {
                MovementRule::Traditional => moved_a || moved_b,
                MovementRule::Active => moved_a && moved_b,
                MovementRule::Lazy => moved_a != moved_b,
            }
    }

    /// Calls `visit` on every pair one joint step away from `(a, b)` in the
    /// full product, ignoring any distance threshold.
    pub fn for_each_step(self, g: &Graph, (a, b): Pair, mut visit: impl FnMut(Pair)) {
        let alice_moves = g.neighbors(a);
        let bob_moves = g.neighbors(b);
        match self {
            MovementRule::Traditional => {
                for a2 in std::iter::once(a).chain(alice_moves.iter().copied()) {
                    for b2 in std::iter::once(b).chain(bob_moves.iter().copied()) {
                        if a2 != a || b2 != b {
                            visit((a2, b2));
                        }
                    }
                }
            }
            MovementRule::Active => {
                for &a2 in alice_moves {
                    for &b2 in bob_moves {
                        visit((a2, b2));
                    }
                }
            }
            MovementRule::Lazy => {
                for &a2 in alice_moves {
                    visit((a2, b));
                }
                for &b2 in bob_moves {
                    visit((a, b2));
                }
            }
        }
    }
}

impl fmt::Display for MovementRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MovementRule::Traditional => "traditional",
            MovementRule::Active => "active",
            MovementRule::Lazy => "lazy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown movement rule {0:?}")]
pub struct UnknownRule(pub String);

impl FromStr for MovementRule {
    type Err = UnknownRule;

    /// Accepts both the rule name and the product name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "traditional" | "strong" => Ok(MovementRule::Traditional),
            "active" | "direct" => Ok(MovementRule::Active),
            "lazy" | "cartesian" => Ok(MovementRule::Lazy),
            _ => Err(UnknownRule(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("threshold {threshold} exceeds the radius {radius}; no pair graph can qualify")]
    ThresholdTooLarge { threshold: u32, radius: u32 },
}

/// Product of a graph with itself, restricted to pairs at distance `>= r`.
#[derive(Debug, Clone)]
pub struct PairGraph<'g> {
    base: &'g Graph,
    rule: MovementRule,
    threshold: u32,
    present: Vec<bool>,
    adj: Vec<Vec<u32>>,
}

impl<'g> PairGraph<'g> {
    pub fn build(g: &'g Graph, rule: MovementRule, threshold: u32) -> Result<Self, ProductError> {
        let radius = g.radius();
        if threshold > radius {
            return Err(ProductError::ThresholdTooLarge { threshold, radius });
        }
        let n = g.n();
        let present: Vec<bool> = (0..n * n)
            .map(|p| g.distance(p / n, p % n) >= threshold)
            .collect();
        let mut adj = vec![Vec::new(); n * n];
        for (p, list) in adj.iter_mut().enumerate() {
            if !present[p] {
                continue;
            }
            rule.for_each_step(g, (p / n, p % n), |(a, b)| {
                let q = a * n + b;
                if present[q] {
                    list.push(q as u32);
                }
            });
            list.sort_unstable();
        }
        Ok(PairGraph {
            base: g,
            rule,
            threshold,
            present,
            adj,
        })
    }

    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn rule(&self) -> MovementRule {
        self.rule
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn index(&self, (a, b): Pair) -> usize {
        a * self.base.n() + b
    }

    pub fn pair(&self, index: usize) -> Pair {
        (index / self.base.n(), index % self.base.n())
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.present[self.index(p)]
    }

    /// Pairs in index order.
    pub fn vertices(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.present.len())
            .filter(|&i| self.present[i])
            .map(|i| self.pair(i))
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn neighbors(&self, p: Pair) -> impl Iterator<Item = Pair> + '_ {
        self.adj[self.index(p)]
            .iter()
            .map(|&q| self.pair(q as usize))
    }

    /// Undirected edges `(p, q)` with `index(p) < index(q)`.
    pub fn edges(&self) -> impl Iterator<Item = (Pair, Pair)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(p, list)| {
            list.iter()
                .filter(move |&&q| p < q as usize)
                .map(move |&q| (self.pair(p), self.pair(q as usize)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Connected components, each sorted by pair index, ordered by their
    /// smallest pair.
    pub fn components(&self) -> Vec<PairComponent> {
        let mut seen = vec![false; self.present.len()];
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        for start in 0..self.present.len() {
            if !self.present[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(p) = queue.pop_front() {
                members.push(p);
                for &q in &self.adj[p] {
                    let q = q as usize;
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
            members.sort_unstable();
            out.push(PairComponent {
                pairs: members.into_iter().map(|p| self.pair(p)).collect(),
            });
        }
        out
    }

    /// Components whose Alice- and Bob-projections both cover every vertex.
    pub fn components_with_double_surjectivity(&self) -> Vec<PairComponent> {
        let n = self.base.n();
        self.components()
            .into_iter()
            .filter(|c| c.covers_both(n))
            .collect()
    }
}

/// A set of pairs, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairComponent {
    pairs: Vec<Pair>,
}

impl PairComponent {
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }

    /// Smallest base-graph distance over the pairs (`ε` of the component).
    pub fn min_distance(&self, g: &Graph) -> u32 {
        self.pairs
            .iter()
            .map(|&(a, b)| g.distance(a, b))
            .min()
            .unwrap_or(0)
    }

    pub fn covers_both(&self, n: usize) -> bool {
        let mut alice = vec![false; n];
        let mut bob = vec![false; n];
        for &(a, b) in &self.pairs {
            alice[a] = true;
            bob[b] = true;
        }
        alice.into_iter().all(|x| x) && bob.into_iter().all(|x| x)
    }
}
