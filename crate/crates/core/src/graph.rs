//! Immutable weighted graphs and the enumeration primitives behind the
//! brute-force oracles.
//!
//! Vertices are indexed in sorted label order, so every index-based tie-break
//! in the crate is also a label-based one and results do not depend on the
//! order in which vertices or edges were declared.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::weight::{Rational, Weight};

/// Default cap on the number of items produced by the exponential enumerators.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Dense vertex index in `0..vertex_count()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An undirected edge stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub weight: Weight,
}

/// Accumulates vertices and edges, validating each as it arrives.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize, Weight)>,
    edge_keys: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<()> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateVertex(label));
        }
        self.index.insert(label.clone(), self.labels.len());
        self.labels.push(label);
        Ok(())
    }

    /// Declares the vertex unless it already exists.
    pub fn ensure_vertex(&mut self, label: &str) {
        if !self.index.contains_key(label) {
            self.index.insert(label.to_string(), self.labels.len());
            self.labels.push(label.to_string());
        }
    }

    pub fn has_vertex(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn add_edge(&mut self, a: &str, b: &str, weight: Rational) -> Result<()> {
        for end in [a, b] {
            if !self.index.contains_key(end) {
                return Err(Error::UnknownEndpoint {
                    a: a.to_string(),
                    b: b.to_string(),
                    missing: end.to_string(),
                });
            }
        }
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let weight = Weight::new(weight).map_err(|w| Error::NegativeWeight {
            a: a.to_string(),
            b: b.to_string(),
            weight: w.to_string(),
        })?;
        let (i, j) = (self.index[a], self.index[b]);
        let key = (i.min(j), i.max(j));
        if !self.edge_keys.insert(key) {
            return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
        }
        self.edges.push((i, j, weight));
        Ok(())
    }

    pub fn build(self) -> WeightedGraph {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&x, &y| self.labels[x].cmp(&self.labels[y]));
        let mut remap = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let labels: Vec<String> = order.iter().map(|&old| self.labels[old].clone()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let n = labels.len();
        let mut weights = vec![None; n * n];
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, j, w) in self.edges {
            let (i, j) = (remap[i], remap[j]);
            let (a, b) = (i.min(j), i.max(j));
            weights[a * n + b] = Some(w.clone());
            weights[b * n + a] = Some(w.clone());
            adjacency[a].push(VertexId(b));
            adjacency[b].push(VertexId(a));
            edges.push(Edge {
                a: VertexId(a),
                b: VertexId(b),
                weight: w,
            });
        }
        for list in &mut adjacency {
            list.sort();
        }
        edges.sort_by_key(|e| (e.a, e.b));
        WeightedGraph {
            labels,
            index,
            weights,
            adjacency,
            edges,
        }
    }
}

/// A finite simple undirected graph with nonnegative exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    weights: Vec<Option<Weight>>,
    adjacency: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds and validates a graph from labels and `(a, b, weight)` triples.
    pub fn new<L, A, B>(vertices: L, edges: impl IntoIterator<Item = (A, B, Rational)>) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut builder = GraphBuilder::new();
        for v in vertices {
            builder.add_vertex(v)?;
        }
        for (a, b, w) in edges {
            builder.add_edge(a.as_ref(), b.as_ref(), w)?;
        }
        Ok(builder.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .map(|&i| VertexId(i))
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Edges sorted by `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours in ascending index order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.0]
    }

    pub fn weight(&self, a: VertexId, b: VertexId) -> Option<&Weight> {
        self.weights[a.0 * self.labels.len() + b.0].as_ref()
    }

    pub fn is_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.weight(a, b).is_some()
    }

    /// A copy of this graph with one more edge.
    pub fn with_edge(&self, a: VertexId, b: VertexId, weight: Weight) -> Result<WeightedGraph> {
        self.with_edge_labels(self.label(a), self.label(b), weight.into_inner())
    }

    /// A copy of this graph with one more edge, declaring missing endpoints.
    pub fn with_edge_labels(&self, a: &str, b: &str, weight: Rational) -> Result<WeightedGraph> {
        let mut builder = GraphBuilder::new();
        for l in &self.labels {
            builder.add_vertex(l.clone())?;
        }
        for e in &self.edges {
            builder.add_edge(self.label(e.a), self.label(e.b), e.weight.value().clone())?;
        }
        builder.ensure_vertex(a);
        builder.ensure_vertex(b);
        builder.add_edge(a, b, weight)?;
        Ok(builder.build())
    }

    /// Total weight of a set of edges given as vertex pairs. Repeated pairs
    /// count once.
    pub fn subgraph_weight(&self, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Weight> {
        let keys: BTreeSet<(VertexId, VertexId)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let mut total = Weight::zero();
        for (a, b) in keys {
            let w = self
                .weight(a, b)
                .ok_or_else(|| Error::UnknownEdge(self.label(a).to_string(), self.label(b).to_string()))?;
            total = &total + w;
        }
        Ok(total)
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if !seen[y.0] {
                    seen[y.0] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// True iff every two distinct vertices are joined by a path.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count() <= 1 {
            return true;
        }
        self.component_of(VertexId(0)).into_iter().all(|s| s)
    }

    /// Every simple path between `u` and `v`, each once, oriented from the
    /// smaller endpoint and produced in lexicographic order of vertex
    /// sequences.
    pub fn simple_paths(&self, u: VertexId, v: VertexId, cap: usize) -> Result<SimplePaths<'_>> {
        if u == v {
            return Err(Error::SameVertex(self.label(u).to_string()));
        }
        Ok(SimplePaths::new(self, u.min(v), u.max(v), cap))
    }

    pub fn cycles(&self, cap: usize) -> Cycles<'_> {
        Cycles::new(self, cap)
    }

    pub fn display_vertices(&self, vertices: &[VertexId]) -> String {
        vertices.iter().map(|&v| self.label(v)).collect::<Vec<_>>().join("-")
    }
}

/// A simple path `x_0 - x_1 - ... - x_k`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<VertexId>,
    total_weight: Weight,
    max_edge_weight: Weight,
}

impl Path {
    /// Validates the vertex sequence against the host graph.
    pub fn new(g: &WeightedGraph, vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.len() < 2 {
            return Err(Error::NoPath(
                vertices.first().map(|&v| g.label(v).to_string()).unwrap_or_default(),
                String::new(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::SameVertex(g.label(v).to_string()));
            }
        }
        Path::from_walk(g, vertices)
    }

    pub(crate) fn from_walk(g: &WeightedGraph, vertices: Vec<VertexId>) -> Result<Path> {
        let (total_weight, max_edge_weight) = walk_weights(g, vertices.windows(2).map(|p| (p[0], p[1])))?;
        Ok(Path {
            vertices,
            total_weight,
            max_edge_weight,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|p| (p[0], p[1]))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn total_weight(&self) -> &Weight {
        &self.total_weight
    }

    pub fn max_edge_weight(&self) -> &Weight {
        &self.max_edge_weight
    }

    /// `2 * max edge weight - total weight`; may be negative.
    pub fn defect(&self) -> Rational {
        self.max_edge_weight.value() * Rational::from_integer(2.into()) - self.total_weight.value()
    }

    pub fn reversed(&self) -> Path {
        let mut p = self.clone();
        p.vertices.reverse();
        p
    }

    /// Oriented from its smaller endpoint.
    pub fn canonical(&self) -> Path {
        if self.start() > self.end() {
            self.reversed()
        } else {
            self.clone()
        }
    }
}

/// A cycle `v_1 - ... - v_n - v_1`, `n >= 3`, stored with its smallest
/// vertex first and its second vertex smaller than its last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<VertexId>,
    total_weight: Weight,
    max_edge_weight: Weight,
}

impl Cycle {
    pub fn new(g: &WeightedGraph, vertices: Vec<VertexId>) -> Result<Cycle> {
        if vertices.len() < 3 {
            return Err(Error::NoPath(
                vertices.first().map(|&v| g.label(v).to_string()).unwrap_or_default(),
                vertices.last().map(|&v| g.label(v).to_string()).unwrap_or_default(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::SameVertex(g.label(v).to_string()));
            }
        }
        let n = vertices.len();
        let (total_weight, max_edge_weight) = walk_weights(g, (0..n).map(|i| (vertices[i], vertices[(i + 1) % n])))?;
        Ok(Cycle {
            vertices: canonical_rotation(vertices),
            total_weight,
            max_edge_weight,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_weight(&self) -> &Weight {
        &self.total_weight
    }

    pub fn max_edge_weight(&self) -> &Weight {
        &self.max_edge_weight
    }

    /// Whether `2 * max edge weight <= total weight`.
    pub fn satisfies_cycle_inequality(&self) -> bool {
        let twice = self.max_edge_weight.value() * Rational::from_integer(2.into());
        &twice <= self.total_weight.value()
    }
}

fn canonical_rotation(mut vertices: Vec<VertexId>) -> Vec<VertexId> {
    let start = (0..vertices.len()).min_by_key(|&i| vertices[i]).unwrap_or(0);
    vertices.rotate_left(start);
    let n = vertices.len();
    if n > 2 && vertices[1] > vertices[n - 1] {
        vertices[1..].reverse();
    }
    vertices
}

fn walk_weights(g: &WeightedGraph, pairs: impl Iterator<Item = (VertexId, VertexId)>) -> Result<(Weight, Weight)> {
    let mut total = Weight::zero();
    let mut max = Weight::zero();
    for (a, b) in pairs {
        let w = g
            .weight(a, b)
            .ok_or_else(|| Error::UnknownEdge(g.label(a).to_string(), g.label(b).to_string()))?;
        total = &total + w;
        if w > &max {
            max = w.clone();
        }
    }
    Ok((total, max))
}

/// Depth-first stream of simple paths. Yields `Err(CapExceeded)` once more
/// than `cap` paths exist, then stops.
pub struct SimplePaths<'g> {
    graph: &'g WeightedGraph,
    target: VertexId,
    stack: Vec<(VertexId, usize)>,
    on_path: Vec<bool>,
    produced: usize,
    cap: usize,
    finished: bool,
}

impl<'g> SimplePaths<'g> {
    fn new(graph: &'g WeightedGraph, source: VertexId, target: VertexId, cap: usize) -> Self {
        let mut on_path = vec![false; graph.vertex_count()];
        on_path[source.0] = true;
        SimplePaths {
            graph,
            target,
            stack: vec![(source, 0)],
            on_path,
            produced: 0,
            cap,
            finished: false,
        }
    }
}

impl Iterator for SimplePaths<'_> {
    type Item = Result<Path>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        while let Some(top) = self.stack.last_mut() {
            let (x, pos) = *top;
            let neighbors = self.graph.neighbors(x);
            if pos == neighbors.len() {
                self.on_path[x.0] = false;
                self.stack.pop();
                continue;
            }
            top.1 += 1;
            let y = neighbors[pos];
            if self.on_path[y.0] {
                continue;
            }
            if y == self.target {
                self.produced += 1;
                if self.produced > self.cap {
                    self.finished = true;
                    return Some(Err(Error::CapExceeded { cap: self.cap }));
                }
                let mut vertices: Vec<VertexId> = self.stack.iter().map(|&(v, _)| v).collect();
                vertices.push(y);
                return Some(Path::from_walk(self.graph, vertices));
            }
            self.on_path[y.0] = true;
            self.stack.push((y, 0));
        }
        self.finished = true;
        None
    }
}

/// Stream of all cycles, each once up to rotation and reflection.
pub struct Cycles<'g> {
    graph: &'g WeightedGraph,
    root: usize,
    stack: Vec<(VertexId, usize)>,
    on_path: Vec<bool>,
    produced: usize,
    cap: usize,
    finished: bool,
}

impl<'g> Cycles<'g> {
    fn new(graph: &'g WeightedGraph, cap: usize) -> Self {
        let mut cycles = Cycles {
            graph,
            root: 0,
            stack: Vec::new(),
            on_path: vec![false; graph.vertex_count()],
            produced: 0,
            cap,
            finished: graph.vertex_count() < 3,
        };
        if !cycles.finished {
            cycles.start_root();
        }
        cycles
    }

    fn start_root(&mut self) {
        let r = VertexId(self.root);
        self.on_path[r.0] = true;
        self.stack.push((r, 0));
    }
}

impl Iterator for Cycles<'_> {
    type Item = Result<Cycle>;

    fn next(&mut self) -> Option<Self::Item> {
        // Each cycle is rooted at its smallest vertex and walked only in the
        // direction whose second vertex is smaller than its last.
        while !self.finished {
            let Some(top) = self.stack.last_mut() else {
                self.root += 1;
                if self.root + 2 >= self.graph.vertex_count() {
                    self.finished = true;
                    return None;
                }
                self.start_root();
                continue;
            };
            let (x, pos) = *top;
            let neighbors = self.graph.neighbors(x);
            if pos == neighbors.len() {
                self.on_path[x.0] = false;
                self.stack.pop();
                continue;
            }
            top.1 += 1;
            let y = neighbors[pos];
            if y.0 < self.root {
                continue;
            }
            if y.0 == self.root {
                if self.stack.len() >= 3 && self.stack[1].0 < x {
                    self.produced += 1;
                    if self.produced > self.cap {
                        self.finished = true;
                        return Some(Err(Error::CapExceeded { cap: self.cap }));
                    }
                    let vertices = self.stack.iter().map(|&(v, _)| v).collect();
                    return Some(Cycle::new(self.graph, vertices));
                }
                continue;
            }
            if self.on_path[y.0] {
                continue;
            }
            self.on_path[y.0] = true;
            self.stack.push((y, 0));
        }
        None
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
