//! Simple connected undirected graphs and their metric primitives.
//!
//! Vertices are dense integers `0..n`. All-pairs hop distances are computed
//! once at construction and cached, since every span query reads them.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// A vertex id in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("{0}-{1} is not a bridge")]
    NotABridge(Vertex, Vertex),
}

/// Hop distances between every ordered pair of vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|u| self.row(u)))
            .finish()
    }
}

/// An immutable simple connected undirected graph.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    dist: DistanceMatrix,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting self-loops, repeated edges
    /// (in either orientation) and disconnected or empty vertex sets.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let components = count_components(&adj);
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        let dist = all_pairs_distances(&adj);
        Ok(Graph {
            adj,
            edge_count,
            dist,
            labels: None,
        })
    }

    /// Attaches external vertex names, one per vertex.
    pub fn with_labels<S: Into<String>>(
        mut self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of `u`, falling back to its id.
    pub fn label(&self, u: Vertex) -> String {
        match &self.labels {
            Some(labels) => labels[u].clone(),
            None => u.to_string(),
        }
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    pub fn distance(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist.get(u, v)
    }

    pub fn eccentricity(&self, u: Vertex) -> u32 {
        self.dist.row(u).iter().copied().max().unwrap_or(0)
    }

    pub fn radius(&self) -> u32 {
        self.vertices()
            .map(|u| self.eccentricity(u))
            .min()
            .unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        self.vertices()
            .map(|u| self.eccentricity(u))
            .max()
            .unwrap_or(0)
    }

    /// Cut-edges as `(u, v)` with `u < v`, sorted by endpoints.
    pub fn bridges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n();
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut found = Vec::new();
        let mut timer = 0;

        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
        order[0] = timer;
        low[0] = timer;
        timer += 1;
        stack.push((0, usize::MAX, 0));

        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            if let Some(&v) = self.adj[u].get(*next) {
                *next += 1;
                if v == parent {
                    continue;
                }
                if order[v] == usize::MAX {
                    order[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(order[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > order[parent] {
                        found.push((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
        found.sort_unstable();
        found
    }

    /// Induced subgraph on `keep`, relabeled `0..keep.len()` in the given order.
    /// Fails if the induced subgraph is disconnected.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<Graph, GraphError> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n(),
                });
            }
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        let mut sub = Graph::new(keep.len(), edges)?;
        if let Some(labels) = &self.labels {
            sub.labels = Some(keep.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(sub)
    }

    /// Removes the bridge `xy` and returns the two induced sides.
    pub fn split_at_bridge(&self, x: Vertex, y: Vertex) -> Result<BridgeSplit, GraphError> {
        for w in [x, y] {
            if w >= self.n() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    n: self.n(),
                });
            }
        }
        if !self.has_edge(x, y) {
            return Err(GraphError::NotABridge(x, y));
        }
        // Flood from x without crossing xy.
        let mut on_x_side = vec![false; self.n()];
        on_x_side[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if (u == x && v == y) || on_x_side[v] {
                    continue;
                }
                on_x_side[v] = true;
                queue.push_back(v);
            }
        }
        if on_x_side[y] {
            return Err(GraphError::NotABridge(x, y));
        }
        let x_vertices: Vec<Vertex> = self.vertices().filter(|&v| on_x_side[v]).collect();
        let y_vertices: Vec<Vertex> = self.vertices().filter(|&v| !on_x_side[v]).collect();
        let side_x = self.induced_subgraph(&x_vertices)?;
        let side_y = self.induced_subgraph(&y_vertices)?;
        let new_x = x_vertices.binary_search(&x).expect("x on its own side");
        let new_y = y_vertices.binary_search(&y).expect("y on its own side");
        Ok(BridgeSplit {
            side_x,
            side_y,
            x: new_x,
            y: new_y,
            x_vertices,
            y_vertices,
        })
    }
}

impl PartialEq for Graph {
    /// Structural equality on the labeled vertex set; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The two sides of a graph with one bridge removed.
#[derive(Debug, Clone)]
pub struct BridgeSplit {
    pub side_x: Graph,
    pub side_y: Graph,
    /// Position of the bridge endpoint `x` inside `side_x`.
    pub x: Vertex,
    /// Position of the bridge endpoint `y` inside `side_y`.
    pub y: Vertex,
    /// Original ids of `side_x`'s vertices, indexed by new id.
    pub x_vertices: Vec<Vertex>,
    pub y_vertices: Vec<Vertex>,
}

/// BFS from every vertex. Unreachable pairs get `u32::MAX`.
fn all_pairs_distances(adj: &[Vec<Vertex>]) -> DistanceMatrix {
    let n = adj.len();
    let mut d = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == u32::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

fn count_components(adj: &[Vec<Vertex>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut components = 0;
    let mut stack = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    components
}

/// Whether the edge set on `n` vertices forms a connected graph. Used by
/// enumerators that want to skip the cost of a full [`Graph`] build.
pub fn is_connected(n: usize, edges: &[(Vertex, Vertex)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    count_components(&adj) == 1
}
