//! Path defects and the uniqueness test.
//!
//! For a path `P` the defect is `q(P) = 2 * max_{e in P} w(e) - w(P)`. When the
//! weight extends to a pseudometric, `q(P) <= d(u, v)` for every `u`-`v`
//! path, and the continuation is forced at a non-adjacent pair exactly when
//! some path attains `q(P) = d(u, v)`. On a finite graph the supremum over
//! paths is a maximum, so the test is an exact search.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Path, VertexId, WeightedGraph};
use crate::metrizability::{classify_with, zero_pairs};
use crate::shortest_path::{all_pairs, shortest_path_metric, DistanceMatrix};
use crate::weight::{Rational, Weight};

/// Which kind of continuation is being asked about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Metric,
    Pseudometric,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metric" => Ok(Mode::Metric),
            "pseudometric" => Ok(Mode::Pseudometric),
            other => Err(format!("unknown mode `{other}` (expected metric or pseudometric)")),
        }
    }
}

/// Exact defect supremum for one non-adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub pair: (VertexId, VertexId),
    pub d_value: Weight,
    pub q_sup: Rational,
    pub argmax_path: Path,
    pub slack: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessVerdict {
    pub unique: bool,
    pub mode: Mode,
    /// Sorted by slack descending, then by pair.
    pub slack_pairs: Vec<DefectReport>,
    /// Only populated in pseudometric mode.
    pub zero_distance_pairs: Vec<(VertexId, VertexId)>,
}

pub fn path_defect(p: &Path) -> Rational {
    p.defect()
}

/// Precomputed distances for repeated defect queries on one graph.
pub struct DefectAnalyzer<'g> {
    graph: &'g WeightedGraph,
    mode: Mode,
    distances: DistanceMatrix,
    /// Distances using only edges of weight at most the key.
    thresholded: BTreeMap<Weight, Vec<Option<Rational>>>,
    /// Edges sorted by weight descending, for the remaining-maximum bound.
    heaviest_first: Vec<(VertexId, VertexId, Rational)>,
}

impl<'g> DefectAnalyzer<'g> {
    /// Fails unless the graph is connected and the weight is metrizable
    /// (metric mode) or pseudometrizable (pseudometric mode).
    pub fn new(graph: &'g WeightedGraph, mode: Mode) -> Result<Self> {
        let distances = shortest_path_metric(graph)?;
        let verdict = classify_with(graph, &distances)?;
        if let Some(e) = &verdict.violating_edge {
            let why = format!(
                "w({{{}, {}}}) = {} exceeds distance {}",
                graph.label(e.a),
                graph.label(e.b),
                e.weight,
                e.distance
            );
            return Err(match mode {
                Mode::Metric => Error::NotMetrizable(why),
                Mode::Pseudometric => Error::NotPseudometrizable(why),
            });
        }
        if mode == Mode::Metric {
            if let Some((a, b)) = verdict.zero_distance_pair {
                return Err(Error::NotMetrizable(format!(
                    "distance between `{}` and `{}` is zero",
                    graph.label(a),
                    graph.label(b)
                )));
            }
        }
        let mut thresholded = BTreeMap::new();
        for e in graph.edges() {
            if !thresholded.contains_key(&e.weight) {
                let limit = e.weight.clone();
                thresholded.insert(limit.clone(), all_pairs(graph, |w| w <= &limit));
            }
        }
        let mut heaviest_first: Vec<_> = graph
            .edges()
            .iter()
            .map(|e| (e.a, e.b, e.weight.value().clone()))
            .collect();
        heaviest_first.sort_by(|x, y| y.2.cmp(&x.2).then((x.0, x.1).cmp(&(y.0, y.1))));
        Ok(DefectAnalyzer {
            graph,
            mode,
            distances,
            thresholded,
            heaviest_first,
        })
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    fn check_pair(&self, u: VertexId, v: VertexId) -> Result<(VertexId, VertexId)> {
        let g = self.graph;
        if u == v {
            return Err(Error::SameVertex(g.label(u).to_string()));
        }
        if g.is_adjacent(u, v) {
            return Err(Error::AdjacentPair(g.label(u).to_string(), g.label(v).to_string()));
        }
        Ok((u.min(v), u.max(v)))
    }

    /// `max_f [2 w(f) - (shortest u-v walk through f using edges of weight
    /// <= w(f))]`. Every simple path whose heaviest edge is `f` is such a
    /// walk, so this bounds the defect supremum from above.
    pub fn upper_bound(&self, u: VertexId, v: VertexId) -> Result<Rational> {
        let (a, b) = self.check_pair(u, v)?;
        Ok(self.bound_unchecked(a, b))
    }

    fn bound_unchecked(&self, a: VertexId, b: VertexId) -> Rational {
        let n = self.graph.vertex_count();
        let two = Rational::from_integer(2.into());
        let mut best: Option<Rational> = None;
        for e in self.graph.edges() {
            let dist = &self.thresholded[&e.weight];
            let d = |x: VertexId, y: VertexId| dist[x.0 * n + y.0].as_ref();
            let through = [(e.a, e.b), (e.b, e.a)]
                .into_iter()
                .filter_map(|(p, q)| Some(d(a, p)? + e.weight.value() + d(q, b)?))
                .min();
            if let Some(walk) = through {
                let value = &two * e.weight.value() - walk;
                if best.as_ref().is_none_or(|cur| value > *cur) {
                    best = Some(value);
                }
            }
        }
        best.expect("a connected graph has a walk through some edge")
    }

    /// Exact `max q(P)` over simple `u`-`v` paths.
    pub fn defect_supremum(&self, u: VertexId, v: VertexId) -> Result<DefectReport> {
        let (a, b) = self.check_pair(u, v)?;
        let d_value = self.distances.get(a, b).clone();
        let bound = self.bound_unchecked(a, b);
        let ceiling = if bound < d_value { bound } else { d_value.clone() };
        let (q_sup, path) = self.search(a, b, &ceiling);
        let argmax_path = Path::from_walk(self.graph, path).expect("search emits graph paths");
        debug_assert_eq!(argmax_path.defect(), q_sup);
        Ok(DefectReport {
            pair: (a, b),
            slack: &d_value - &q_sup,
            d_value: Weight::new(d_value).expect("distances are nonnegative"),
            q_sup,
            argmax_path,
        })
    }

    /// Whether the pair admits a lower value in some extension. Skips the
    /// search when the per-edge bound already falls short of the distance.
    pub fn has_slack(&self, u: VertexId, v: VertexId) -> Result<bool> {
        let (a, b) = self.check_pair(u, v)?;
        let d_value = self.distances.get(a, b);
        let bound = self.bound_unchecked(a, b);
        if &bound < d_value {
            return Ok(true);
        }
        let (q_sup, _) = self.search(a, b, d_value);
        Ok(&q_sup < d_value)
    }

    /// Non-adjacent pairs whose slack decides uniqueness, in canonical order.
    /// Pseudometric mode leaves out pairs at distance zero.
    pub fn relevant_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.graph.vertex_count();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (VertexId(i), VertexId(j));
                if self.graph.is_adjacent(a, b) {
                    continue;
                }
                if self.mode == Mode::Pseudometric && self.distances.get(a, b).is_zero() {
                    continue;
                }
                pairs.push((a, b));
            }
        }
        pairs
    }

    pub fn all_defects(&self) -> Vec<DefectReport> {
        self.relevant_pairs()
            .into_iter()
            .map(|(a, b)| self.defect_supremum(a, b).expect("relevant pairs are non-adjacent"))
            .collect()
    }

    pub fn decide(&self) -> UniquenessVerdict {
        self.verdict_from(self.all_defects())
    }

    /// Assembles the verdict from the reports of `relevant_pairs`.
    pub fn verdict_from(&self, reports: Vec<DefectReport>) -> UniquenessVerdict {
        let mut slack_pairs: Vec<DefectReport> = reports.into_iter().filter(|r| r.slack > Rational::zero()).collect();
        slack_pairs.sort_by(|x, y| y.slack.cmp(&x.slack).then(x.pair.cmp(&y.pair)));
        let zero_distance_pairs: Vec<_> = match self.mode {
            Mode::Metric => Vec::new(),
            Mode::Pseudometric => zero_pairs(&self.distances).collect(),
        };
        let unique = match self.mode {
            Mode::Metric => slack_pairs.is_empty(),
            Mode::Pseudometric => !zero_distance_pairs.is_empty() && slack_pairs.is_empty(),
        };
        UniquenessVerdict {
            unique,
            mode: self.mode,
            slack_pairs,
            zero_distance_pairs,
        }
    }

    /// Depth-first search over simple paths from `a` in lexicographic order,
    /// keeping the first path of maximal defect. Stops once `ceiling` (a
    /// proven upper bound) is reached.
    fn search(&self, a: VertexId, b: VertexId, ceiling: &Rational) -> (Rational, Vec<VertexId>) {
        let mut state = Search {
            analyzer: self,
            target: b,
            ceiling,
            on_path: vec![false; self.graph.vertex_count()],
            path: vec![a],
            best: None,
        };
        state.on_path[a.0] = true;
        let zero = Rational::zero();
        state.extend(a, &zero, &zero);
        state.best.expect("target is reachable in a connected graph")
    }
}

struct Search<'a, 'g> {
    analyzer: &'a DefectAnalyzer<'g>,
    target: VertexId,
    ceiling: &'a Rational,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    best: Option<(Rational, Vec<VertexId>)>,
}

impl Search<'_, '_> {
    fn done(&self) -> bool {
        self.best.as_ref().is_some_and(|(q, _)| q >= self.ceiling)
    }

    /// Heaviest edge still usable by a completion from `frontier`.
    fn remaining_max(&self, frontier: VertexId) -> Option<&Rational> {
        self.analyzer
            .heaviest_first
            .iter()
            .find(|(x, y, _)| {
                let free = |v: VertexId| v == frontier || !self.on_path[v.0];
                free(*x) && free(*y)
            })
            .map(|(_, _, w)| w)
    }

    fn can_improve(&self, frontier: VertexId, prefix_weight: &Rational, prefix_max: &Rational) -> bool {
        let Some((best, _)) = &self.best else { return true };
        let Some(rest_max) = self.remaining_max(frontier) else {
            return false;
        };
        let top = prefix_max.max(rest_max);
        let rest = self.analyzer.distances.get(frontier, self.target);
        let bound = Rational::from_integer(2.into()) * top - prefix_weight - rest;
        bound > *best
    }

    fn extend(&mut self, x: VertexId, prefix_weight: &Rational, prefix_max: &Rational) {
        let g = self.analyzer.graph;
        for &y in g.neighbors(x) {
            if self.done() {
                return;
            }
            if self.on_path[y.0] {
                continue;
            }
            let w = g.weight(x, y).expect("neighbor").value();
            let weight = prefix_weight + w;
            let max = if w > prefix_max { w } else { prefix_max };
            if y == self.target {
                let q = Rational::from_integer(2.into()) * max - &weight;
                let better = match &self.best {
                    None => true,
                    Some((best, _)) => q.cmp(best) == Ordering::Greater,
                };
                if better {
                    let mut p = self.path.clone();
                    p.push(y);
                    self.best = Some((q, p));
                }
                continue;
            }
            let max = max.clone();
            if !self.can_improve(y, &weight, &max) {
                continue;
            }
            self.on_path[y.0] = true;
            self.path.push(y);
            self.extend(y, &weight, &max);
            self.path.pop();
            self.on_path[y.0] = false;
        }
    }
}

/// Exact defect supremum at a non-adjacent pair.
pub fn defect_supremum(g: &WeightedGraph, u: VertexId, v: VertexId, mode: Mode) -> Result<DefectReport> {
    DefectAnalyzer::new(g, mode)?.defect_supremum(u, v)
}

pub fn per_edge_defect_upper_bound(g: &WeightedGraph, u: VertexId, v: VertexId, mode: Mode) -> Result<Rational> {
    DefectAnalyzer::new(g, mode)?.upper_bound(u, v)
}

/// Metric mode: unique iff every non-adjacent pair has zero slack.
/// Pseudometric mode: a unique non-metric continuation exists iff some pair
/// is at distance zero and every non-adjacent pair at positive distance has
/// zero slack. In both cases the unique continuation is the shortest-path
/// pseudometric.
pub fn decide_uniqueness(g: &WeightedGraph, mode: Mode) -> Result<UniquenessVerdict> {
    Ok(DefectAnalyzer::new(g, mode)?.decide())
}
