//! Independent oracles and random instance generators shared by the
//! integration suites. Nothing here calls the search or shortest-path code
//! it is used to check.

#![allow(dead_code)]

use metric_continuation::fixtures::rat;
use metric_continuation::{Rational, VertexId, WeightedGraph};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every simple path between `a` and `b` as a vertex sequence starting at the
/// smaller endpoint, by plain recursion over the raw adjacency test.
pub fn reference_paths(g: &WeightedGraph, a: VertexId, b: VertexId) -> Vec<Vec<VertexId>> {
    fn go(g: &WeightedGraph, path: &mut Vec<VertexId>, target: VertexId, out: &mut Vec<Vec<VertexId>>) {
        let x = *path.last().unwrap();
        if x == target {
            out.push(path.clone());
            return;
        }
        for y in g.vertices() {
            if g.is_adjacent(x, y) && !path.contains(&y) {
                path.push(y);
                go(g, path, target, out);
                path.pop();
            }
        }
    }
    let (s, t) = (a.min(b), a.max(b));
    let mut out = Vec::new();
    go(g, &mut vec![s], t, &mut out);
    out
}

pub fn path_weight(g: &WeightedGraph, p: &[VertexId]) -> Rational {
    p.windows(2)
        .map(|w| g.weight(w[0], w[1]).unwrap().value().clone())
        .fold(Rational::zero(), |acc, x| acc + x)
}

pub fn path_max(g: &WeightedGraph, p: &[VertexId]) -> Rational {
    p.windows(2)
        .map(|w| g.weight(w[0], w[1]).unwrap().value().clone())
        .max()
        .unwrap()
}

pub fn defect_of(g: &WeightedGraph, p: &[VertexId]) -> Rational {
    rat("2") * path_max(g, p) - path_weight(g, p)
}

/// Maximum defect over all simple paths, with the lexicographically smallest
/// attaining path.
pub fn naive_defect_sup(g: &WeightedGraph, a: VertexId, b: VertexId) -> (Rational, Vec<VertexId>) {
    let mut paths = reference_paths(g, a, b);
    paths.sort();
    let mut best: Option<(Rational, Vec<VertexId>)> = None;
    for p in paths {
        let q = defect_of(g, &p);
        if best.as_ref().is_none_or(|(b, _)| q > *b) {
            best = Some((q, p));
        }
    }
    best.expect("connected")
}

/// Minimum path weight by enumeration.
pub fn naive_distance(g: &WeightedGraph, a: VertexId, b: VertexId) -> Rational {
    if a == b {
        return Rational::zero();
    }
    reference_paths(g, a, b)
        .iter()
        .map(|p| path_weight(g, p))
        .min()
        .expect("connected")
}

/// Uniqueness by exhaustive enumeration: every non-adjacent pair (at positive
/// distance, in pseudometric mode) has a path whose defect equals the
/// distance, and in pseudometric mode some pair is at distance zero.
pub fn brute_force_unique(g: &WeightedGraph, pseudometric: bool) -> bool {
    let mut zero_pair = false;
    let mut forced = true;
    for a in g.vertices() {
        for b in g.vertices().filter(|&b| b > a) {
            let d = naive_distance(g, a, b);
            if d.is_zero() {
                zero_pair = true;
                if pseudometric {
                    continue;
                }
            }
            if g.is_adjacent(a, b) {
                continue;
            }
            if naive_defect_sup(g, a, b).0 != d {
                forced = false;
            }
        }
    }
    if pseudometric {
        zero_pair && forced
    } else {
        forced
    }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `density`.
#[allow(clippy::needless_range_loop)]
pub fn random_connected(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    mut weight: impl FnMut(&mut dyn rand::RngCore) -> Rational,
) -> WeightedGraph {
    let names = labels(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present = vec![vec![false; n]; n];
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        present[parent][child] = true;
        present[child][parent] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if !present[i][j] && rng.gen_bool(density) {
                present[i][j] = true;
                present[j][i] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if present[i][j] {
                edges.push((names[i].clone(), names[j].clone(), weight(rng)));
            }
        }
    }
    WeightedGraph::new(names, edges).expect("generated graph is valid")
}

/// A weight drawn from `{k/4 : 1 <= k <= 12} ∪ {0}`.
pub fn quarter_weight(rng: &mut dyn rand::RngCore) -> Rational {
    let k = rng.gen_range(0..=12);
    rat(&format!("{k}/4"))
}

pub fn positive_quarter_weight(rng: &mut dyn rand::RngCore) -> Rational {
    let k = rng.gen_range(1..=12);
    rat(&format!("{k}/4"))
}

/// Replaces each edge weight by the enumerated distance between its
/// endpoints, which makes the weight pseudometrizable (metrizable when all
/// weights were positive).
pub fn repaired(g: &WeightedGraph) -> WeightedGraph {
    let edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| {
            (
                g.label(e.a).to_string(),
                g.label(e.b).to_string(),
                naive_distance(g, e.a, e.b),
            )
        })
        .collect();
    WeightedGraph::new(g.labels().to_vec(), edges).expect("same shape")
}

/// `2 * max <= total` on every cycle, with cycles found as a path plus a
/// closing edge.
pub fn brute_force_cycle_condition(g: &WeightedGraph) -> bool {
    for e in g.edges() {
        for p in reference_paths(g, e.a, e.b) {
            if p.len() < 3 {
                continue;
            }
            let total = path_weight(g, &p) + e.weight.value();
            let max = path_max(g, &p).max(e.weight.value().clone());
            if rat("2") * max > total {
                return false;
            }
        }
    }
    true
}
