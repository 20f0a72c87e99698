//! Small named graphs used by the examples, the tests and the CLI fixtures.

use crate::graph::WeightedGraph;
use crate::weight::{parse_rational, Rational};

/// Parses a rational literal, panicking on malformed input.
pub fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap_or_else(|e| panic!("{e}"))
}

/// The 4-cycle `u-t-v-s` with weights 5, 1, 2, 2; `{u,v}` and `{s,t}` absent.
pub fn four_cycle() -> WeightedGraph {
    WeightedGraph::new(
        ["u", "v", "s", "t"],
        [
            ("u", "t", rat("5")),
            ("t", "v", rat("1")),
            ("v", "s", rat("2")),
            ("s", "u", rat("2")),
        ],
    )
    .expect("valid fixture")
}

/// `u` and `v` joined through `x_1` (weights 2, 2) and through each `x_k`,
/// `2 <= k <= n`, with weights 5 and `1 + 1/k`.
pub fn two_hop_branches(n: u32) -> WeightedGraph {
    let mut vertices = vec!["u".to_string(), "v".to_string()];
    let mut edges = vec![
        ("u".to_string(), "x_1".to_string(), rat("2")),
        ("x_1".to_string(), "v".to_string(), rat("2")),
    ];
    vertices.push("x_1".to_string());
    for k in 2..=n {
        let x = format!("x_{k}");
        vertices.push(x.clone());
        edges.push(("u".to_string(), x.clone(), rat("5")));
        edges.push((x, "v".to_string(), rat("1") + rat(&format!("1/{k}"))));
    }
    WeightedGraph::new(vertices, edges).expect("valid fixture")
}

/// Path `a-b-c-...` with the given edge weights.
pub fn path_graph(weights: &[&str]) -> WeightedGraph {
    let labels: Vec<String> = (0..=weights.len())
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| (labels[i].clone(), labels[i + 1].clone(), rat(w)));
    WeightedGraph::new(labels.clone(), edges).expect("valid fixture")
}

/// Complete graph on `v0..v{n-1}` with a uniform weight.
pub fn complete_graph(n: usize, weight: &str) -> WeightedGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone(), rat(weight)));
        }
    }
    WeightedGraph::new(labels.clone(), edges).expect("valid fixture")
}

/// Triangle `a, b, c` with weights `ab`, `bc`, `ca`.
pub fn triangle(ab: &str, bc: &str, ca: &str) -> WeightedGraph {
    WeightedGraph::new(
        ["a", "b", "c"],
        [("a", "b", rat(ab)), ("b", "c", rat(bc)), ("c", "a", rat(ca))],
    )
    .expect("valid fixture")
}

/// The four-cycle plus a pendant vertex `z` attached to `u` by a zero-weight edge.
pub fn four_cycle_zero_pendant() -> WeightedGraph {
    four_cycle()
        .with_edge_labels("u", "z", rat("0"))
        .expect("valid fixture")
}
