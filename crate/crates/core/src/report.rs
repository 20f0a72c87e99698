//! Serializable reports. Every number is written as an exact `p/q` string
//! together with a six-significant-digit decimal for reading.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extensions::{witness_from_report, WitnessExtension};
use crate::graph::{VertexId, WeightedGraph};
use crate::metrizability::{classify_with, cycle_from_edge_violation, CycleViolation, MetrizabilityVerdict};
use crate::shortest_path::{shortest_path_metric, DistanceMatrix, Provenance};
use crate::uniqueness::{DefectAnalyzer, DefectReport, Mode, UniquenessVerdict};
use crate::weight::{approx, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Number {
    pub exact: String,
    pub approx: String,
}

impl From<&Rational> for Number {
    fn from(r: &Rational) -> Self {
        Number {
            exact: r.to_string(),
            approx: approx(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeJson {
    pub a: String,
    pub b: String,
    pub weight: Number,
    pub distance: Number,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleJson {
    pub vertices: Vec<String>,
    pub max_edge_weight: Number,
    pub total_weight: Number,
}

impl CycleJson {
    pub fn new(g: &WeightedGraph, c: &CycleViolation) -> Self {
        CycleJson {
            vertices: labels(g, c.cycle.vertices()),
            max_edge_weight: c.max_edge_weight().value().into(),
            total_weight: c.total_weight().value().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetrizabilityJson {
    pub pseudometrizable: bool,
    pub metrizable: bool,
    pub violating_edge: Option<EdgeJson>,
    pub violating_cycle: Option<CycleJson>,
    pub zero_distance_pair: Option<[String; 2]>,
    /// The violating edge closed by its shortcut path, a cycle breaking the
    /// cycle inequality.
    pub shortcut_cycle: Option<CycleJson>,
}

impl MetrizabilityJson {
    pub fn new(g: &WeightedGraph, v: &MetrizabilityVerdict) -> Result<Self> {
        let shortcut_cycle = match &v.violating_edge {
            Some(e) => Some(CycleJson::new(g, &cycle_from_edge_violation(g, e)?)),
            None => None,
        };
        Ok(MetrizabilityJson {
            pseudometrizable: v.pseudometrizable,
            metrizable: v.metrizable,
            violating_edge: v.violating_edge.as_ref().map(|e| EdgeJson {
                a: g.label(e.a).to_string(),
                b: g.label(e.b).to_string(),
                weight: e.weight.value().into(),
                distance: (&e.distance).into(),
            }),
            violating_cycle: v.violating_cycle.as_ref().map(|c| CycleJson::new(g, c)),
            zero_distance_pair: v.zero_distance_pair.map(|p| pair(g, p)),
            shortcut_cycle,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectJson {
    pub pair: [String; 2],
    pub d_value: Number,
    pub q_sup: Number,
    pub slack: Number,
    pub argmax_path: Vec<String>,
}

impl DefectJson {
    pub fn new(g: &WeightedGraph, r: &DefectReport) -> Self {
        DefectJson {
            pair: pair(g, r.pair),
            d_value: r.d_value.value().into(),
            q_sup: (&r.q_sup).into(),
            slack: (&r.slack).into(),
            argmax_path: labels(g, r.argmax_path.vertices()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessJson {
    pub unique: bool,
    pub mode: Mode,
    pub slack_pairs: Vec<DefectJson>,
    pub zero_distance_pairs: Vec<[String; 2]>,
}

impl UniquenessJson {
    pub fn new(g: &WeightedGraph, v: &UniquenessVerdict) -> Self {
        UniquenessJson {
            unique: v.unique,
            mode: v.mode,
            slack_pairs: v.slack_pairs.iter().map(|r| DefectJson::new(g, r)).collect(),
            zero_distance_pairs: v.zero_distance_pairs.iter().map(|&p| pair(g, p)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistancesJson {
    pub provenance: Provenance,
    pub vertices: Vec<String>,
    pub matrix: Vec<Vec<Number>>,
}

impl From<&DistanceMatrix> for DistancesJson {
    fn from(d: &DistanceMatrix) -> Self {
        DistancesJson {
            provenance: d.provenance(),
            vertices: d.labels().to_vec(),
            matrix: d.rows().map(|row| row.iter().map(Number::from).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub pair: [String; 2],
    pub value: Number,
    pub distances: DistancesJson,
}

impl WitnessJson {
    pub fn new(g: &WeightedGraph, w: &WitnessExtension) -> Self {
        WitnessJson {
            pair: pair(g, w.pair),
            value: (&w.value).into(),
            distances: (&w.distances).into(),
        }
    }
}

/// Everything the toolkit knows about one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub metrizability: MetrizabilityJson,
    /// Absent when the weight does not meet the mode's precondition.
    pub uniqueness: Option<UniquenessJson>,
    pub distances: DistancesJson,
    pub defects: Vec<DefectJson>,
    pub witnesses: Vec<WitnessJson>,
    pub schema_version: u32,
}

/// Classification, distances, every relevant pair's defect and a witness for
/// every slack pair.
pub fn analyze(g: &WeightedGraph, mode: Mode) -> Result<AnalysisReport> {
    let d = shortest_path_metric(g)?;
    let verdict = classify_with(g, &d)?;
    let metrizability = MetrizabilityJson::new(g, &verdict)?;
    let admissible = match mode {
        Mode::Metric => verdict.metrizable,
        Mode::Pseudometric => verdict.pseudometrizable,
    };
    let mut report = AnalysisReport {
        metrizability,
        uniqueness: None,
        distances: (&d).into(),
        defects: Vec::new(),
        witnesses: Vec::new(),
        schema_version: SCHEMA_VERSION,
    };
    if !admissible {
        return Ok(report);
    }
    let analyzer = DefectAnalyzer::new(g, mode)?;
    let reports = analyzer.all_defects();
    report.defects = reports.iter().map(|r| DefectJson::new(g, r)).collect();
    let uniqueness = analyzer.verdict_from(reports);
    for r in &uniqueness.slack_pairs {
        report.witnesses.push(WitnessJson::new(g, &witness_from_report(g, r)?));
    }
    report.uniqueness = Some(UniquenessJson::new(g, &uniqueness));
    Ok(report)
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn labels(g: &WeightedGraph, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn pair(g: &WeightedGraph, (a, b): (VertexId, VertexId)) -> [String; 2] {
    [g.label(a).to_string(), g.label(b).to_string()]
}

/// Parses `u,v` into two vertices of `g`.
pub fn parse_pair(g: &WeightedGraph, text: &str) -> Result<(VertexId, VertexId)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Error::UnknownVertex(text.to_string()))?;
    Ok((g.vertex(a.trim())?, g.vertex(b.trim())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_cycle, path_graph, triangle};

    #[test]
    fn four_cycle_report() {
        let report = analyze(&four_cycle(), Mode::Metric).unwrap();
        assert!(report.metrizability.metrizable);
        assert!(report.uniqueness.as_ref().unwrap().unique);
        assert_eq!(report.defects.len(), 2);
        assert!(report.witnesses.is_empty());
        let json = to_json_string(&report);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        for k in [
            "metrizability",
            "uniqueness",
            "distances",
            "defects",
            "witnesses",
            "schema_version",
        ] {
            assert!(keys.iter().any(|x| *x == k), "{k}");
        }
        assert_eq!(json, to_json_string(&analyze(&four_cycle(), Mode::Metric).unwrap()));
    }

    #[test]
    fn slack_pairs_get_witnesses() {
        let report = analyze(&path_graph(&["1", "1"]), Mode::Metric).unwrap();
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(report.witnesses[0].value.exact, "1");
        assert_eq!(report.defects[0].slack.exact, "2");
    }

    #[test]
    fn non_metrizable_report_has_both_certificates() {
        let report = analyze(&triangle("5", "1", "1"), Mode::Metric).unwrap();
        assert!(report.uniqueness.is_none());
        assert!(report.metrizability.violating_edge.is_some());
        assert!(report.metrizability.violating_cycle.is_none());
        assert_eq!(
            report.metrizability.shortcut_cycle.as_ref().unwrap().total_weight.exact,
            "7"
        );
    }

    #[test]
    fn pairs_parse() {
        let g = four_cycle();
        assert_eq!(
            parse_pair(&g, "u, v").unwrap(),
            (g.vertex("u").unwrap(), g.vertex("v").unwrap())
        );
        assert!(parse_pair(&g, "u").is_err());
        assert!(parse_pair(&g, "u,q").is_err());
    }
}
