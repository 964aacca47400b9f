//! Graph family generators, their closed-form span values, and the small
//! small named reference graphs.
//!
//! Vertex numbering per family:
//!
//! | family | numbering |
//! |---|---|
//! | `P_n` | `0 - 1 - ... - (n-1)` |
//! | `C_n` | `i ~ i+1 (mod n)` |
//! | `Q_n` | bit strings of length `n`, adjacent when they differ in one bit |
//! | `K_{r,s}` | left side `0..r`, right side `r..r+s` |
//! | `K_n` | `0..n` |
//! | `S_n` | centre `0`, leaves `1..n` |
//! | `W_n` | rim cycle `0..n-1`, hub `n-1` |
//! | `PC_n` | cycle `0..n`, pendant `n+i` attached to `i` |
//! | `BT_h` | level order, children of `i` are `2i+1` and `2i+2` |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::span::Spans;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: parameter out of range ({requirement})")]
    ParameterOutOfRange {
        family: String,
        requirement: &'static str,
    },
    #[error("unknown graph id {0:?}")]
    UnknownId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Hypercube(usize),
    CompleteBipartite(usize, usize),
    Complete(usize),
    Star(usize),
    Wheel(usize),
    Paramecium(usize),
    PerfectBinaryTree(usize),
}

/// Closed-form spans for a family instance, as `(strong, direct, cartesian)`.
pub type ExpectedSpans = Spans;

impl FamilySpec {
    fn check(&self) -> Result<(), FamilyError> {
        let (ok, requirement) = match *self {
            FamilySpec::Path(n) => (n >= 2, "n >= 2"),
            FamilySpec::Cycle(n) => (n >= 3, "n >= 3"),
            // 2^15 vertices already means a pair graph of 2^30 slots.
            FamilySpec::Hypercube(n) => ((2..=15).contains(&n), "2 <= n <= 15"),
            FamilySpec::CompleteBipartite(r, s) => (r >= 2 && s >= 2, "r, s >= 2"),
            FamilySpec::Complete(n) => (n >= 3, "n >= 3"),
            FamilySpec::Star(n) => (n >= 4, "n >= 4"),
            FamilySpec::Wheel(n) => (n >= 4, "n >= 4"),
            FamilySpec::Paramecium(n) => (n >= 3, "n >= 3"),
            FamilySpec::PerfectBinaryTree(h) => ((1..=20).contains(&h), "1 <= h <= 20"),
        };
        if ok {
            Ok(())
        } else {
            Err(FamilyError::ParameterOutOfRange {
                family: self.to_string(),
                requirement,
            })
        }
    }

    pub fn generate(&self) -> Result<Graph, FamilyError> {
        self.check()?;
        let (n, edges): (usize, Vec<(Vertex, Vertex)>) = match *self {
            FamilySpec::Path(n) => (n, (1..n).map(|i| (i - 1, i)).collect()),
            FamilySpec::Cycle(n) => (n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
            FamilySpec::Hypercube(d) => {
                let n = 1 << d;
                let edges = (0..n)
                    .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
                    .filter(|&(u, v)| u < v)
                    .collect();
                (n, edges)
            }
            FamilySpec::CompleteBipartite(r, s) => (
                r + s,
                (0..r)
                    .flat_map(|u| (r..r + s).map(move |v| (u, v)))
                    .collect(),
            ),
            FamilySpec::Complete(n) => (
                n,
                (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect(),
            ),
            FamilySpec::Star(n) => (n, (1..n).map(|v| (0, v)).collect()),
            FamilySpec::Wheel(n) => {
                let rim = n - 1;
                let mut edges: Vec<_> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
                edges.extend((0..rim).map(|i| (i, rim)));
                (n, edges)
            }
            FamilySpec::Paramecium(n) => {
                let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                edges.extend((0..n).map(|i| (i, n + i)));
                (2 * n, edges)
            }
            FamilySpec::PerfectBinaryTree(h) => {
                let n = (1 << (h + 1)) - 1;
                (n, (1..n).map(|v| ((v - 1) / 2, v)).collect())
            }
        };
        Ok(Graph::new(n, edges).expect("family generators produce valid graphs"))
    }

    pub fn expected_spans(&self) -> Result<ExpectedSpans, FamilyError> {
        self.check()?;
        let half_down = |n: usize| (n / 2) as u32;
        let half_up = |n: usize| n.div_ceil(2) as u32;
        Ok(match *self {
            FamilySpec::Path(_) => Spans::new(1, 1, 0),
            FamilySpec::Cycle(n) => {
                let lazy = if n % 2 == 1 {
                    half_down(n)
                } else {
                    half_down(n) - 1
                };
                Spans::new(half_down(n), half_down(n), lazy)
            }
            FamilySpec::Hypercube(d) => Spans::new(d as u32, d as u32, d as u32 - 1),
            FamilySpec::CompleteBipartite(..) => Spans::new(2, 2, 1),
            FamilySpec::Complete(_) | FamilySpec::Star(_) | FamilySpec::Wheel(_) => {
                Spans::new(1, 1, 1)
            }
            FamilySpec::Paramecium(n) => Spans::new(half_up(n), half_down(n), half_up(n)),
            FamilySpec::PerfectBinaryTree(h) => {
                let v = h as u32 - 1;
                Spans::new(v, v, v)
            }
        })
    }

    /// Radius as given alongside the closed forms.
    pub fn expected_radius(&self) -> Result<u32, FamilyError> {
        self.check()?;
        Ok(match *self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) => (n / 2) as u32,
            FamilySpec::Hypercube(d) => d as u32,
            FamilySpec::CompleteBipartite(..) => 2,
            FamilySpec::Complete(_) | FamilySpec::Star(_) | FamilySpec::Wheel(_) => 1,
            FamilySpec::Paramecium(n) => (n / 2) as u32 + 1,
            FamilySpec::PerfectBinaryTree(h) => h as u32,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path(n) => write!(f, "P_{n}"),
            FamilySpec::Cycle(n) => write!(f, "C_{n}"),
            FamilySpec::Hypercube(n) => write!(f, "Q_{n}"),
            FamilySpec::CompleteBipartite(r, s) => write!(f, "K_{{{r},{s}}}"),
            FamilySpec::Complete(n) => write!(f, "K_{n}"),
            FamilySpec::Star(n) => write!(f, "S_{n}"),
            FamilySpec::Wheel(n) => write!(f, "W_{n}"),
            FamilySpec::Paramecium(n) => write!(f, "PC_{n}"),
            FamilySpec::PerfectBinaryTree(h) => write!(f, "BT_{h}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses the display form, e.g. `PC_5`, `K_{2,3}` or `K_2,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || FamilyError::UnknownId(s.to_string());
        let (kind, params) = s.split_once('_').ok_or_else(unknown)?;
        let params = params.trim_start_matches('{').trim_end_matches('}');
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| unknown())?;
        let spec = match (kind, nums.as_slice()) {
            ("P", &[n]) => FamilySpec::Path(n),
            ("C", &[n]) => FamilySpec::Cycle(n),
            ("Q", &[n]) => FamilySpec::Hypercube(n),
            ("K", &[r, s]) => FamilySpec::CompleteBipartite(r, s),
            ("K", &[n]) => FamilySpec::Complete(n),
            ("S", &[n]) => FamilySpec::Star(n),
            ("W", &[n]) => FamilySpec::Wheel(n),
            ("PC", &[n]) => FamilySpec::Paramecium(n),
            ("BT", &[h]) => FamilySpec::PerfectBinaryTree(h),
            _ => return Err(unknown()),
        };
        spec.check()?;
        Ok(spec)
    }
}

/// Small reference graphs with fixed 0-based vertex numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    /// Six vertices `u1..u6`: a hexagon with chords `u2u4` and `u3u6`.
    Fig1,
    /// A single edge.
    Fig2G1,
    /// A triangle `1,2,4` with path ends `0` and `3` and a pendant `5` on top.
    Fig2G2,
    /// Two triangles joined by the bridge `4-5`.
    Fig6Left,
    /// Ten vertices, bridge `5-6`.
    Fig6Right,
    Fig7A,
    Fig7B,
    Fig7C,
    Fig7D,
    Fig7E,
    Fig7F,
    Fig7G,
    Fig7H,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 13] = [
        NamedGraph::Fig1,
        NamedGraph::Fig2G1,
        NamedGraph::Fig2G2,
        NamedGraph::Fig6Left,
        NamedGraph::Fig6Right,
        NamedGraph::Fig7A,
        NamedGraph::Fig7B,
        NamedGraph::Fig7C,
        NamedGraph::Fig7D,
        NamedGraph::Fig7E,
        NamedGraph::Fig7F,
        NamedGraph::Fig7G,
        NamedGraph::Fig7H,
    ];

    pub const FIG7: [NamedGraph; 8] = [
        NamedGraph::Fig7A,
        NamedGraph::Fig7B,
        NamedGraph::Fig7C,
        NamedGraph::Fig7D,
        NamedGraph::Fig7E,
        NamedGraph::Fig7F,
        NamedGraph::Fig7G,
        NamedGraph::Fig7H,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NamedGraph::Fig1 => "fig1",
            NamedGraph::Fig2G1 => "fig2_g1",
            NamedGraph::Fig2G2 => "fig2_g2",
            NamedGraph::Fig6Left => "fig6_left",
            NamedGraph::Fig6Right => "fig6_right",
            NamedGraph::Fig7A => "fig7_a",
            NamedGraph::Fig7B => "fig7_b",
            NamedGraph::Fig7C => "fig7_c",
            NamedGraph::Fig7D => "fig7_d",
            NamedGraph::Fig7E => "fig7_e",
            NamedGraph::Fig7F => "fig7_f",
            NamedGraph::Fig7G => "fig7_g",
            NamedGraph::Fig7H => "fig7_h",
        }
    }

    fn edges(self) -> (usize, &'static [(Vertex, Vertex)]) {
        match self {
            NamedGraph::Fig1 => (
                6,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 0),
                    (1, 3),
                    (2, 5),
                ],
            ),
            NamedGraph::Fig2G1 => (2, &[(0, 1)]),
            NamedGraph::Fig2G2 => (6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4), (4, 5)]),
            NamedGraph::Fig6Left => (6, &[(4, 1), (1, 0), (0, 4), (4, 5), (5, 3), (3, 2), (2, 5)]),
            NamedGraph::Fig6Right => (
                10,
                &[
                    (5, 1),
                    (1, 4),
                    (4, 0),
                    (0, 3),
                    (3, 7),
                    (7, 4),
                    (4, 8),
                    (8, 5),
                    (5, 6),
                    (6, 9),
                    (9, 2),
                    (2, 6),
                ],
            ),
            NamedGraph::Fig7A => (5, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 4)]),
            NamedGraph::Fig7B => (5, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4)]),
            NamedGraph::Fig7C => (5, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (3, 4)]),
            NamedGraph::Fig7D => (5, &[(0, 1), (2, 0), (2, 3), (0, 4), (3, 4)]),
            NamedGraph::Fig7E => (5, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (1, 4)]),
            NamedGraph::Fig7F => (5, &[(0, 1), (2, 0), (2, 3), (0, 4)]),
            NamedGraph::Fig7G => (5, &[(0, 4), (4, 3), (3, 2), (2, 0), (0, 1), (1, 3)]),
            NamedGraph::Fig7H => (5, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (1, 4), (3, 4)]),
        }
    }

    pub fn graph(self) -> Graph {
        let (n, edges) = self.edges();
        let g = Graph::new(n, edges.iter().copied()).expect("named graphs are valid");
        match self {
            NamedGraph::Fig1 => g
                .with_labels(["u1", "u2", "u3", "u4", "u5", "u6"])
                .expect("six labels"),
            _ => g,
        }
    }

    /// Reference `(direct, cartesian)` spans, where known.
    pub fn printed_direct_cartesian(self) -> Option<(u32, u32)> {
        match self {
            NamedGraph::Fig2G1 => Some((1, 0)),
            NamedGraph::Fig2G2 => Some((1, 2)),
            NamedGraph::Fig7A | NamedGraph::Fig7B | NamedGraph::Fig7E | NamedGraph::Fig7F => {
                Some((1, 1))
            }
            NamedGraph::Fig7C | NamedGraph::Fig7D | NamedGraph::Fig7G | NamedGraph::Fig7H => {
                Some((2, 1))
            }
            _ => None,
        }
    }

    /// Reference `(radius, cut-edge bound)`, where known.
    pub fn printed_bounds(self) -> Option<(u32, u32)> {
        match self {
            NamedGraph::Fig6Left => Some((2, 1)),
            NamedGraph::Fig6Right => Some((3, 4)),
            _ => None,
        }
    }
}

impl FromStr for NamedGraph {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedGraph::ALL
            .into_iter()
            .find(|g| g.id() == s)
            .ok_or_else(|| FamilyError::UnknownId(s.to_string()))
    }
}

/// Looks up a named graph by id (`fig1`, `fig2_g1`, ..., `fig7_h`).
pub fn named_graph(id: &str) -> Result<Graph, FamilyError> {
    Ok(id.parse::<NamedGraph>()?.graph())
}
