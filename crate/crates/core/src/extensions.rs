//! Elements of the extension poset: pseudometrics on the vertex set that
//! agree with the weight on every edge, ordered entrywise.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::metrizability::classify_with;
use crate::shortest_path::{shortest_path_metric, DistanceMatrix, Provenance};
use crate::uniqueness::{DefectAnalyzer, DefectReport, Mode};
use crate::weight::{Rational, Weight};

/// The first axiom a candidate matrix breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonZeroDiagonal {
        vertex: VertexId,
        value: Rational,
    },
    Asymmetric {
        a: VertexId,
        b: VertexId,
    },
    Negative {
        a: VertexId,
        b: VertexId,
        value: Rational,
    },
    EdgeMismatch {
        a: VertexId,
        b: VertexId,
        weight: Weight,
        value: Rational,
    },
    /// `d(x, y) > d(x, via) + d(via, y)`.
    Triangle {
        x: VertexId,
        y: VertexId,
        via: VertexId,
    },
    /// Metric mode only.
    ZeroDistance {
        a: VertexId,
        b: VertexId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(Violation),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verification::Valid => None,
            Verification::Invalid(v) => Some(v),
        }
    }
}

/// Checks the (pseudo)metric axioms and agreement with the weight, in that
/// order, reporting the first failure. All triples are inspected.
pub fn verify_extension(g: &WeightedGraph, d: &DistanceMatrix, mode: Mode) -> Result<Verification> {
    let n = g.vertex_count();
    if d.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.len(),
        });
    }
    let ids = || (0..n).map(VertexId);
    let pairs = || ids().flat_map(move |a| (a.0 + 1..n).map(move |j| (a, VertexId(j))));
    let fail = |v| Ok(Verification::Invalid(v));

    for v in ids() {
        if !d.get(v, v).is_zero() {
            return fail(Violation::NonZeroDiagonal {
                vertex: v,
                value: d.get(v, v).clone(),
            });
        }
    }
    for (a, b) in pairs() {
        if d.get(a, b) != d.get(b, a) {
            return fail(Violation::Asymmetric { a, b });
        }
    }
    for (a, b) in pairs() {
        if d.get(a, b).is_negative() {
            return fail(Violation::Negative {
                a,
                b,
                value: d.get(a, b).clone(),
            });
        }
    }
    for e in g.edges() {
        if d.get(e.a, e.b) != e.weight.value() {
            return fail(Violation::EdgeMismatch {
                a: e.a,
                b: e.b,
                weight: e.weight.clone(),
                value: d.get(e.a, e.b).clone(),
            });
        }
    }
    for (x, y) in pairs() {
        for via in ids() {
            if via != x && via != y && d.get(x, y) > &(d.get(x, via) + d.get(via, y)) {
                return fail(Violation::Triangle { x, y, via });
            }
        }
    }
    if mode == Mode::Metric {
        if let Some((a, b)) = pairs().find(|&(a, b)| d.get(a, b).is_zero()) {
            return fail(Violation::ZeroDistance { a, b });
        }
    }
    Ok(Verification::Valid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    LessOrEqual,
    GreaterOrEqual,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionComparison {
    pub relation: Relation,
    /// First pair where the first matrix is strictly larger.
    pub first_greater_at: Option<(VertexId, VertexId)>,
    /// First pair where the second matrix is strictly larger.
    pub second_greater_at: Option<(VertexId, VertexId)>,
}

pub fn compare_extensions(d1: &DistanceMatrix, d2: &DistanceMatrix) -> Result<ExtensionComparison> {
    if d1.len() != d2.len() {
        return Err(Error::DimensionMismatch {
            expected: d1.len(),
            found: d2.len(),
        });
    }
    if d1.labels() != d2.labels() {
        return Err(Error::VertexSetMismatch);
    }
    let n = d1.len();
    let mut first_greater_at = None;
    let mut second_greater_at = None;
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (VertexId(i), VertexId(j));
            match d1.get(a, b).cmp(d2.get(a, b)) {
                std::cmp::Ordering::Greater if first_greater_at.is_none() => first_greater_at = Some((a, b)),
                std::cmp::Ordering::Less if second_greater_at.is_none() => second_greater_at = Some((a, b)),
                _ => {}
            }
        }
    }
    let relation = match (first_greater_at, second_greater_at) {
        (None, None) => Relation::Equal,
        (None, Some(_)) => Relation::LessOrEqual,
        (Some(_), None) => Relation::GreaterOrEqual,
        (Some(_), Some(_)) => Relation::Incomparable,
    };
    Ok(ExtensionComparison {
        relation,
        first_greater_at,
        second_greater_at,
    })
}

/// The shortest-path pseudometric, which dominates every other extension.
pub fn greatest_extension(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let d = shortest_path_metric(g)?;
    let verdict = classify_with(g, &d)?;
    if let Some(e) = verdict.violating_edge {
        return Err(Error::NotPseudometrizable(format!(
            "w({{{}, {}}}) = {} exceeds distance {}",
            g.label(e.a),
            g.label(e.b),
            e.weight,
            e.distance
        )));
    }
    Ok(d.with_provenance(Provenance::Greatest))
}

/// A second metric extension, lower than the greatest one at `pair`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessExtension {
    pub pair: (VertexId, VertexId),
    /// The value placed on the new edge: the midpoint of `(Q, d)`.
    pub value: Rational,
    pub augmented: WeightedGraph,
    pub distances: DistanceMatrix,
}

/// Inserts `{u, v}` with weight `(Q(u, v) + d(u, v)) / 2` and returns the
/// shortest-path metric of the augmented graph.
pub fn witness_alternative(g: &WeightedGraph, u: VertexId, v: VertexId) -> Result<WitnessExtension> {
    let analyzer = DefectAnalyzer::new(g, Mode::Metric)?;
    let report = analyzer.defect_supremum(u, v)?;
    witness_from_report(g, &report)
}

/// Witness step for a report produced in either mode.
pub fn witness_from_report(g: &WeightedGraph, report: &DefectReport) -> Result<WitnessExtension> {
    let (a, b) = report.pair;
    if !report.slack.is_positive() {
        return Err(Error::NoSlack(g.label(a).to_string(), g.label(b).to_string()));
    }
    let value = (&report.q_sup + report.d_value.value()) / Rational::from_integer(2.into());
    // Q >= 2 max - d on a shortest path, so the midpoint is at least that
    // path's heaviest edge.
    let weight = Weight::new(value.clone()).expect("midpoint of (Q, d) is nonnegative");
    let augmented = g.with_edge(a, b, weight)?;
    let distances = shortest_path_metric(&augmented)?.with_provenance(Provenance::Witness);
    Ok(WitnessExtension {
        pair: (a, b),
        value,
        augmented,
        distances,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledExtension {
    pub distances: DistanceMatrix,
    /// The pair lowered by the last witness step; `None` for the greatest
    /// extension.
    pub lowered_pair: Option<(VertexId, VertexId)>,
    /// The graph whose shortest-path metric this is.
    pub graph: WeightedGraph,
}

/// Up to `count` distinct metric extensions, starting with the greatest one.
/// Each further element applies a witness step to a random slack pair of a
/// previously produced augmented graph. Deterministic for a fixed seed.
pub fn sample_extensions(g: &WeightedGraph, count: usize, seed: u64) -> Result<Vec<SampledExtension>> {
    DefectAnalyzer::new(g, Mode::Metric)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = vec![SampledExtension {
        distances: greatest_extension(g)?,
        lowered_pair: None,
        graph: g.clone(),
    }];
    // Remaining slack pairs for each pool entry, computed on first use.
    let mut open: Vec<Option<Vec<DefectReport>>> = vec![None];
    while pool.len() < count {
        let candidates: Vec<usize> = (0..pool.len())
            .filter(|&i| open[i].as_ref().is_none_or(|s| !s.is_empty()))
            .collect();
        let Some(&base) = candidates.choose(&mut rng) else {
            break;
        };
        if open[base].is_none() {
            let analyzer = DefectAnalyzer::new(&pool[base].graph, Mode::Metric)?;
            open[base] = Some(analyzer.decide().slack_pairs);
        }
        let slack = open[base].as_mut().expect("filled above");
        if slack.is_empty() {
            continue;
        }
        let report = slack.swap_remove(rng.gen_range(0..slack.len()));
        let witness = witness_from_report(&pool[base].graph, &report)?;
        if pool.iter().any(|s| s.distances == witness.distances) {
            continue;
        }
        pool.push(SampledExtension {
            distances: witness.distances,
            lowered_pair: Some(witness.pair),
            graph: witness.augmented,
        });
        open.push(None);
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_graph, four_cycle, path_graph, rat, two_hop_branches};
    use crate::metrizability::classify;

    fn id(g: &WeightedGraph, l: &str) -> VertexId {
        g.vertex(l).unwrap()
    }

    /// Independent axiom check over all ordered triples.
    fn brute_force_metric(g: &WeightedGraph, d: &DistanceMatrix) -> bool {
        let n = g.vertex_count();
        let v = |i| VertexId(i);
        let agrees = g.edges().iter().all(|e| d.get(e.a, e.b) == e.weight.value());
        let axioms = (0..n).all(|x| {
            (0..n).all(|y| {
                let dxy = d.get(v(x), v(y));
                (x == y) == dxy.is_zero()
                    && dxy == d.get(v(y), v(x))
                    && (0..n).all(|z| dxy <= &(d.get(v(x), v(z)) + d.get(v(z), v(y))))
            })
        });
        agrees && axioms
    }

    #[test]
    fn greatest_is_valid() {
        let g = four_cycle();
        let d = greatest_extension(&g).unwrap();
        assert_eq!(d.provenance(), Provenance::Greatest);
        assert_eq!(verify_extension(&g, &d, Mode::Metric).unwrap(), Verification::Valid);
        assert_eq!(d.get(id(&g, "u"), id(&g, "v")), &rat("4"));
        assert_eq!(d.get(id(&g, "s"), id(&g, "t")), &rat("3"));
    }

    #[test]
    fn greatest_of_complete_and_single_edge() {
        let k = complete_graph(4, "2");
        let d = greatest_extension(&k).unwrap();
        for e in k.edges() {
            assert_eq!(d.get(e.a, e.b), e.weight.value());
        }
        let g = path_graph(&["5/3"]);
        let d = greatest_extension(&g).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(VertexId(0), VertexId(1)), &rat("5/3"));
        assert!(matches!(
            greatest_extension(&crate::fixtures::triangle("5", "1", "1")),
            Err(Error::NotPseudometrizable(_))
        ));
    }

    #[test]
    fn triangle_violation_is_reported() {
        let g = four_cycle();
        let (u, v, s) = (id(&g, "u"), id(&g, "v"), id(&g, "s"));
        let mut d = shortest_path_metric(&g).unwrap();
        d.set_symmetric(u, v, rat("10"));
        let result = verify_extension(&g, &d, Mode::Metric).unwrap();
        assert_eq!(
            result,
            Verification::Invalid(Violation::Triangle { x: u, y: v, via: s })
        );
    }

    #[test]
    fn three_and_a_half_is_infeasible() {
        // Lowering d(u, v) below Q(u, v) = 4 breaks d(t, u) <= d(t, v) + d(v, u).
        let g = four_cycle();
        let (u, v, t) = (id(&g, "u"), id(&g, "v"), id(&g, "t"));
        let mut d = shortest_path_metric(&g).unwrap();
        d.set_symmetric(u, v, rat("3.5"));
        assert!(!brute_force_metric(&g, &d));
        let result = verify_extension(&g, &d, Mode::Metric).unwrap();
        assert_eq!(
            result,
            Verification::Invalid(Violation::Triangle { x: t, y: u, via: v })
        );
    }

    #[test]
    fn axiom_failures_in_order() {
        let g = path_graph(&["1"]);
        let labels = g.labels().to_vec();
        let m = |rows: [[&str; 2]; 2]| {
            DistanceMatrix::from_rows(
                labels.clone(),
                rows.iter().map(|r| r.iter().map(|x| rat(x)).collect()).collect(),
            )
            .unwrap()
        };
        let check = |d: &DistanceMatrix, mode| verify_extension(&g, d, mode).unwrap();
        assert!(matches!(
            check(&m([["1", "1"], ["1", "0"]]), Mode::Metric).violation(),
            Some(Violation::NonZeroDiagonal { .. })
        ));
        assert!(matches!(
            check(&m([["0", "1"], ["2", "0"]]), Mode::Metric).violation(),
            Some(Violation::Asymmetric { .. })
        ));
        assert!(matches!(
            check(&m([["0", "-1"], ["-1", "0"]]), Mode::Metric).violation(),
            Some(Violation::Negative { .. })
        ));
        assert!(matches!(
            check(&m([["0", "2"], ["2", "0"]]), Mode::Metric).violation(),
            Some(Violation::EdgeMismatch { .. })
        ));
        let zero = path_graph(&["0"]);
        let d = shortest_path_metric(&zero).unwrap();
        assert!(verify_extension(&zero, &d, Mode::Pseudometric).unwrap().is_valid());
        assert!(matches!(
            verify_extension(&zero, &d, Mode::Metric).unwrap().violation(),
            Some(Violation::ZeroDistance { .. })
        ));
        let big = shortest_path_metric(&four_cycle()).unwrap();
        assert_eq!(
            verify_extension(&g, &big, Mode::Metric),
            Err(Error::DimensionMismatch { expected: 2, found: 4 })
        );
    }

    #[test]
    fn comparisons() {
        let g = path_graph(&["1", "1", "1"]);
        let dw = greatest_extension(&g).unwrap();
        assert_eq!(compare_extensions(&dw, &dw).unwrap().relation, Relation::Equal);

        let (a, b, c, d) = (id(&g, "a"), id(&g, "b"), id(&g, "c"), id(&g, "d"));
        let w1 = witness_alternative(&g, a, c).unwrap();
        let w2 = witness_alternative(&g, b, d).unwrap();
        assert_eq!(
            compare_extensions(&w1.distances, &dw).unwrap().relation,
            Relation::LessOrEqual
        );
        assert_eq!(
            compare_extensions(&dw, &w1.distances).unwrap().relation,
            Relation::GreaterOrEqual
        );
        let cmp = compare_extensions(&w1.distances, &w2.distances).unwrap();
        assert_eq!(cmp.relation, Relation::Incomparable);
        assert_eq!(cmp.first_greater_at, Some((b, d)));
        assert_eq!(cmp.second_greater_at, Some((a, c)));

        let other = greatest_extension(&four_cycle()).unwrap();
        assert_eq!(compare_extensions(&dw, &other), Err(Error::VertexSetMismatch));
        let renamed = DistanceMatrix::from_rows(
            vec!["p".into(), "q".into()],
            vec![vec![rat("0"), rat("1")], vec![rat("1"), rat("0")]],
        )
        .unwrap();
        let two = greatest_extension(&path_graph(&["1"])).unwrap();
        assert_eq!(compare_extensions(&two, &renamed), Err(Error::VertexSetMismatch));
        assert!(matches!(
            compare_extensions(&two, &dw),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn witness_on_path_graph() {
        let g = path_graph(&["1", "1"]);
        let (a, c) = (id(&g, "a"), id(&g, "c"));
        let w = witness_alternative(&g, a, c).unwrap();
        assert_eq!(w.value, rat("1"));
        assert_eq!(w.distances.get(a, c), &rat("1"));
        assert!(verify_extension(&g, &w.distances, Mode::Metric).unwrap().is_valid());
        assert!(brute_force_metric(&g, &w.distances));
        assert!(classify(&w.augmented).unwrap().metrizable);
    }

    #[test]
    fn witness_on_two_hop_branches() {
        let g = two_hop_branches(2);
        let (u, v) = (id(&g, "u"), id(&g, "v"));
        let w = witness_alternative(&g, u, v).unwrap();
        assert_eq!(w.value, rat("15/4"));
        assert_eq!(w.distances.get(u, v), &rat("3.75"));
        assert!(brute_force_metric(&g, &w.distances));
    }

    #[test]
    fn witness_errors() {
        let g = four_cycle();
        let (u, v, t) = (id(&g, "u"), id(&g, "v"), id(&g, "t"));
        assert_eq!(
            witness_alternative(&g, u, v).unwrap_err(),
            Error::NoSlack("u".into(), "v".into())
        );
        assert_eq!(
            witness_alternative(&g, u, t).unwrap_err(),
            Error::AdjacentPair("u".into(), "t".into())
        );
        assert!(matches!(
            witness_alternative(&path_graph(&["0", "1"]), VertexId(0), VertexId(2)),
            Err(Error::NotMetrizable(_))
        ));
    }

    #[test]
    fn sampling() {
        assert_eq!(sample_extensions(&four_cycle(), 5, 7).unwrap().len(), 1);
        assert_eq!(sample_extensions(&complete_graph(4, "1"), 5, 7).unwrap().len(), 1);

        let g = path_graph(&["1", "1"]);
        let samples = sample_extensions(&g, 3, 42).unwrap();
        assert!(samples.len() >= 2);
        let dw = greatest_extension(&g).unwrap();
        for s in &samples {
            assert!(verify_extension(&g, &s.distances, Mode::Metric).unwrap().is_valid());
            let rel = compare_extensions(&s.distances, &dw).unwrap().relation;
            assert!(matches!(rel, Relation::LessOrEqual | Relation::Equal));
        }
        assert_eq!(samples, sample_extensions(&g, 3, 42).unwrap());
    }
}
