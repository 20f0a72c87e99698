//! Exact shortest-path pseudometric and single-pair shortest paths.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Path, VertexId, WeightedGraph};
use crate::weight::{Rational, Weight};

/// Where a distance matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ShortestPath,
    /// The shortest-path pseudometric, certified as the greatest extension.
    Greatest,
    UserSupplied,
    Witness,
}

/// A square rational matrix indexed by the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    entries: Vec<Rational>,
    provenance: Provenance,
}

impl DistanceMatrix {
    /// Wraps user data without checking any axiom.
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(DistanceMatrix {
            labels,
            entries,
            provenance: Provenance::UserSupplied,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn get(&self, a: VertexId, b: VertexId) -> &Rational {
        &self.entries[a.0 * self.len() + b.0]
    }

    /// Sets both `(a, b)` and `(b, a)`.
    pub fn set_symmetric(&mut self, a: VertexId, b: VertexId, value: Rational) {
        let n = self.len();
        self.entries[a.0 * n + b.0] = value.clone();
        self.entries[b.0 * n + a.0] = value;
        self.provenance = Provenance::UserSupplied;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.len().max(1))
    }
}

/// All-pairs distances, `None` for unreachable pairs. Floyd-Warshall over
/// exact rationals.
pub(crate) fn all_pairs(g: &WeightedGraph, admit: impl Fn(&Weight) -> bool) -> Vec<Option<Rational>> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n * n];
    for i in 0..n {
        dist[i * n + i] = Some(Rational::from_integer(0.into()));
    }
    for e in g.edges() {
        if admit(&e.weight) {
            dist[e.a.0 * n + e.b.0] = Some(e.weight.value().clone());
            dist[e.b.0 * n + e.a.0] = Some(e.weight.value().clone());
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = dist[i * n + k].clone() else { continue };
            for j in 0..n {
                let Some(kj) = &dist[k * n + j] else { continue };
                let via = &ik + kj;
                let slot = &mut dist[i * n + j];
                if slot.as_ref().is_none_or(|cur| via < *cur) {
                    *slot = Some(via);
                }
            }
        }
    }
    dist
}

/// The shortest-path pseudometric `d(u, v) = min { w(P) : P joins u and v }`.
pub fn shortest_path_metric(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let entries = all_pairs(g, |_| true)
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::Disconnected)?;
    Ok(DistanceMatrix {
        labels: g.labels().to_vec(),
        entries,
        provenance: Provenance::ShortestPath,
    })
}

/// A minimum-weight `u`-`v` path, oriented from `u`.
///
/// Among all minimum-weight paths the one whose vertex sequence, read from the
/// smaller endpoint, is lexicographically smallest is returned.
pub fn shortest_path_between(g: &WeightedGraph, u: VertexId, v: VertexId) -> Result<(Weight, Path)> {
    if u == v {
        return Err(Error::SameVertex(g.label(u).to_string()));
    }
    let dist = all_pairs(g, |_| true);
    let path = lexicographic_shortest_path(g, &dist, u.min(v), u.max(v))?;
    let path = if u > v { path.reversed() } else { path };
    Ok((path.total_weight().clone(), path))
}

pub(crate) fn lexicographic_shortest_path(
    g: &WeightedGraph,
    dist: &[Option<Rational>],
    from: VertexId,
    to: VertexId,
) -> Result<Path> {
    let n = g.vertex_count();
    let to_target = |x: VertexId| dist[x.0 * n + to.0].as_ref();
    if to_target(from).is_none() {
        return Err(Error::NoPath(g.label(from).to_string(), g.label(to).to_string()));
    }
    // An edge x->y is tight when it lies on some shortest path to `to`.
    let tight = |x: VertexId, y: VertexId| -> bool {
        match (to_target(x), to_target(y), g.weight(x, y)) {
            (Some(dx), Some(dy), Some(w)) => &(w.value() + dy) == dx,
            _ => false,
        }
    };
    let mut visited = vec![false; n];
    let mut vertices = vec![from];
    visited[from.0] = true;
    let mut x = from;
    while x != to {
        let next = g
            .neighbors(x)
            .iter()
            .copied()
            .find(|&y| !visited[y.0] && tight(x, y) && reaches(g, y, to, &visited, &tight))
            .expect("a tight continuation exists while the target is reachable");
        visited[next.0] = true;
        vertices.push(next);
        x = next;
    }
    Path::from_walk(g, vertices)
}

fn reaches(
    g: &WeightedGraph,
    start: VertexId,
    target: VertexId,
    blocked: &[bool],
    tight: &impl Fn(VertexId, VertexId) -> bool,
) -> bool {
    let mut seen = blocked.to_vec();
    seen[start.0] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == target {
            return true;
        }
        for &y in g.neighbors(x) {
            if !seen[y.0] && tight(x, y) {
                seen[y.0] = true;
                queue.push_back(y);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_cycle, path_graph, rat, two_hop_branches};

    #[test]
    fn four_cycle_distances() {
        let g = four_cycle();
        let d = shortest_path_metric(&g).unwrap();
        let id = |l| g.vertex(l).unwrap();
        assert_eq!(d.get(id("s"), id("t")), &rat("3"));
        assert_eq!(d.get(id("u"), id("v")), &rat("4"));
        for e in g.edges() {
            assert_eq!(d.get(e.a, e.b), e.weight.value());
        }
        assert_eq!(d.provenance(), Provenance::ShortestPath);
    }

    #[test]
    fn single_edge() {
        let g = path_graph(&["7"]);
        let d = shortest_path_metric(&g).unwrap();
        assert_eq!(d.get(VertexId(0), VertexId(1)), &rat("7"));
        let (w, p) = shortest_path_between(&g, VertexId(0), VertexId(1)).unwrap();
        assert_eq!(w, "7".parse().unwrap());
        assert_eq!(g.display_vertices(p.vertices()), "a-b");
    }

    #[test]
    fn two_hop_branches_distance() {
        for n in [2, 5] {
            let g = two_hop_branches(n);
            let d = shortest_path_metric(&g).unwrap();
            assert_eq!(d.get(g.vertex("u").unwrap(), g.vertex("v").unwrap()), &rat("4"));
        }
    }

    #[test]
    fn four_cycle_attaining_paths() {
        let g = four_cycle();
        let id = |l| g.vertex(l).unwrap();
        let (w, p) = shortest_path_between(&g, id("u"), id("v")).unwrap();
        assert_eq!(
            (w.to_string(), g.display_vertices(p.vertices())),
            ("4".into(), "u-s-v".into())
        );
        let (w, p) = shortest_path_between(&g, id("s"), id("t")).unwrap();
        assert_eq!(
            (w.to_string(), g.display_vertices(p.vertices())),
            ("3".into(), "s-v-t".into())
        );
        let (_, p) = shortest_path_between(&g, id("t"), id("s")).unwrap();
        assert_eq!(g.display_vertices(p.vertices()), "t-v-s");
    }

    #[test]
    fn disconnected_and_missing_paths() {
        let g = WeightedGraph::new(["a", "b", "c"], [("a", "b", rat("1"))]).unwrap();
        assert_eq!(shortest_path_metric(&g), Err(Error::Disconnected));
        assert_eq!(
            shortest_path_between(&g, VertexId(0), VertexId(2)).unwrap_err(),
            Error::NoPath("a".into(), "c".into())
        );
    }

    #[test]
    fn zero_weight_ties_stay_simple() {
        // a-b, b-c, a-c, c-d all zero: every route to d has weight 0.
        let g = WeightedGraph::new(
            ["a", "b", "c", "d"],
            [
                ("a", "b", rat("0")),
                ("b", "c", rat("0")),
                ("a", "c", rat("0")),
                ("c", "d", rat("0")),
            ],
        )
        .unwrap();
        let (w, p) = shortest_path_between(&g, VertexId(0), VertexId(3)).unwrap();
        assert!(w.is_zero());
        assert_eq!(g.display_vertices(p.vertices()), "a-b-c-d");
        let (_, p) = shortest_path_between(&g, VertexId(3), VertexId(1)).unwrap();
        assert_eq!(g.display_vertices(p.vertices()), "d-c-a-b");
    }
}
