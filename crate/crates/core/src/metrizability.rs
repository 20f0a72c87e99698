//! Deciding whether a weight extends to a pseudometric or a metric.
//!
//! Two equivalent characterizations are available. The production route
//! compares each edge weight with the shortest-path distance between its
//! endpoints, which is polynomial. The cycle route checks
//! `2 * max_{e in C} w(e) <= w(C)` on every cycle and is exponential; it is
//! kept as an independent oracle.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Cycle, VertexId, WeightedGraph};
use crate::shortest_path::{all_pairs, lexicographic_shortest_path, shortest_path_metric, DistanceMatrix};
use crate::weight::{Rational, Weight};

/// An edge whose weight exceeds the distance between its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeViolation {
    pub a: VertexId,
    pub b: VertexId,
    pub weight: Weight,
    pub distance: Rational,
}

/// A cycle with `2 * max edge weight > total weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleViolation {
    pub cycle: Cycle,
}

impl CycleViolation {
    pub fn max_edge_weight(&self) -> &Weight {
        self.cycle.max_edge_weight()
    }

    pub fn total_weight(&self) -> &Weight {
        self.cycle.total_weight()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetrizabilityVerdict {
    pub pseudometrizable: bool,
    pub metrizable: bool,
    pub violating_edge: Option<EdgeViolation>,
    pub violating_cycle: Option<CycleViolation>,
    pub zero_distance_pair: Option<(VertexId, VertexId)>,
}

/// First edge, in `(a, b)` order, whose weight differs from `d`.
pub fn check_edge_consistency(g: &WeightedGraph, d: &DistanceMatrix) -> Result<Option<EdgeViolation>> {
    if d.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: d.len(),
        });
    }
    Ok(g.edges()
        .iter()
        .find(|e| d.get(e.a, e.b) != e.weight.value())
        .map(|e| EdgeViolation {
            a: e.a,
            b: e.b,
            weight: e.weight.clone(),
            distance: d.get(e.a, e.b).clone(),
        }))
}

/// First cycle, in enumeration order, violating the cycle inequality.
pub fn check_cycle_condition(g: &WeightedGraph, cap: usize) -> Result<Option<CycleViolation>> {
    for cycle in g.cycles(cap) {
        let cycle = cycle?;
        if !cycle.satisfies_cycle_inequality() {
            return Ok(Some(CycleViolation { cycle }));
        }
    }
    Ok(None)
}

/// Turns an edge shortcut into a violating cycle: the shortcut path plus the
/// edge itself.
pub fn cycle_from_edge_violation(g: &WeightedGraph, violation: &EdgeViolation) -> Result<CycleViolation> {
    let dist = all_pairs(g, |_| true);
    let path = lexicographic_shortest_path(g, &dist, violation.a, violation.b)?;
    let cycle = Cycle::new(g, path.vertices().to_vec())?;
    debug_assert!(!cycle.satisfies_cycle_inequality());
    Ok(CycleViolation { cycle })
}

/// Pseudometrizability through the edge route; metrizability additionally
/// requires every distance between distinct vertices to be positive.
pub fn classify(g: &WeightedGraph) -> Result<MetrizabilityVerdict> {
    let d = shortest_path_metric(g)?;
    classify_with(g, &d)
}

pub(crate) fn classify_with(g: &WeightedGraph, d: &DistanceMatrix) -> Result<MetrizabilityVerdict> {
    if let Some(violation) = check_edge_consistency(g, d)? {
        return Ok(MetrizabilityVerdict {
            pseudometrizable: false,
            metrizable: false,
            violating_edge: Some(violation),
            violating_cycle: None,
            zero_distance_pair: None,
        });
    }
    let zero_distance_pair = reported_zero_pair(g, d);
    Ok(MetrizabilityVerdict {
        pseudometrizable: true,
        metrizable: zero_distance_pair.is_none(),
        violating_edge: None,
        violating_cycle: None,
        zero_distance_pair,
    })
}

pub(crate) fn zero_pairs(d: &DistanceMatrix) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    let n = d.len();
    (0..n)
        .flat_map(move |i| (i + 1..n).map(move |j| (VertexId(i), VertexId(j))))
        .filter(|&(a, b)| d.get(a, b).is_zero())
}

/// Prefers a non-adjacent pair, whose zero distance is forced on every
/// extension rather than given by a weight.
fn reported_zero_pair(g: &WeightedGraph, d: &DistanceMatrix) -> Option<(VertexId, VertexId)> {
    zero_pairs(d)
        .find(|&(a, b)| !g.is_adjacent(a, b))
        .or_else(|| zero_pairs(d).next())
}
