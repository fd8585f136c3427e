//! Node centralities used to rank removal targets: degree, betweenness,
//! Katz and collective influence, each with a weighted variant.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{NodeId, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Degree,
    Betweenness,
    Katz,
    CollectiveInfluence,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Katz,
        Measure::CollectiveInfluence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Katz => "katz",
            Measure::CollectiveInfluence => "ci",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "degree" => Ok(Measure::Degree),
            "betweenness" => Ok(Measure::Betweenness),
            "katz" => Ok(Measure::Katz),
            "ci" | "collective_influence" | "collective-influence" => {
                Ok(Measure::CollectiveInfluence)
            }
            other => Err(Error::Config(format!("unknown centrality measure '{other}'"))),
        }
    }
}

/// How an edge weight becomes a path length for weighted shortest paths.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightTransform {
    /// length = 1 / weight: frequent contact means a short path.
    #[default]
    Inverse,
    /// length = weight.
    Raw,
}

impl WeightTransform {
    #[inline]
    fn length(self, w: f64) -> f64 {
        match self {
            WeightTransform::Inverse => 1.0 / w,
            WeightTransform::Raw => w,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KatzParams {
    /// Attenuation; `None` picks `0.9 / spectral_radius`.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for KatzParams {
    fn default() -> Self {
        Self {
            alpha: None,
            beta: 1.0,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

/// Parameters shared by every centrality-driven strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityConfig {
    pub katz: KatzParams,
    pub ci_radius: usize,
    pub distance: WeightTransform,
}

impl Default for CentralityConfig {
    fn default() -> Self {
        Self {
            katz: KatzParams::default(),
            ci_radius: 2,
            distance: WeightTransform::Inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub measure: Measure,
    pub weighted: bool,
    values: Vec<(NodeId, f64)>,
}

impl CentralityScores {
    fn from_slots(g: &WeightedGraph, measure: Measure, weighted: bool, slots: &[f64]) -> Self {
        let values = g.nodes().map(|v| (v, slots[v.0])).collect();
        Self {
            measure,
            weighted,
            values,
        }
    }

    pub fn get(&self, v: NodeId) -> Option<f64> {
        self.values
            .binary_search_by_key(&v, |&(u, _)| u)
            .ok()
            .map(|i| self.values[i].1)
    }

    /// `(node, score)` pairs in ascending node order.
    pub fn values(&self) -> &[(NodeId, f64)] {
        &self.values
    }

    /// Nodes by descending score, ties by ascending id.
    pub fn ranking(&self) -> Vec<NodeId> {
        let mut order = self.values.clone();
        order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        order.into_iter().map(|(v, _)| v).collect()
    }

    /// Highest-scoring node, lowest id on ties.
    pub fn argmax(&self) -> Option<NodeId> {
        self.values
            .iter()
            .fold(None, |best: Option<(NodeId, f64)>, &(v, s)| match best {
                Some((_, bs)) if bs >= s => best,
                _ => Some((v, s)),
            })
            .map(|(v, _)| v)
    }
}

/// Computes `measure` on `g` using `config` for the parameterised measures.
pub fn centrality(
    g: &WeightedGraph,
    measure: Measure,
    weighted: bool,
    config: &CentralityConfig,
) -> Result<CentralityScores> {
    match measure {
        Measure::Degree => degree_centrality(g, weighted),
        Measure::Betweenness => Ok(betweenness_centrality(g, weighted, config.distance)),
        Measure::Katz => katz_centrality(g, weighted, &config.katz),
        Measure::CollectiveInfluence => Ok(collective_influence(g, config.ci_radius, weighted)),
    }
}

/// Unweighted: `deg(v) / (n - 1)`. Weighted: node strength, unnormalized.
pub fn degree_centrality(g: &WeightedGraph, weighted: bool) -> Result<CentralityScores> {
    let mut slots = vec![0.0; g.id_bound()];
    if weighted {
        for v in g.nodes() {
            slots[v.0] = g.strength(v);
        }
    } else {
        let n = g.node_count();
        if n < 2 {
            return Err(Error::DegenerateGraph(format!(
                "normalized degree needs at least 2 nodes, got {n}"
            )));
        }
        let scale = 1.0 / (n - 1) as f64;
        for v in g.nodes() {
            slots[v.0] = g.degree(v) as f64 * scale;
        }
    }
    Ok(CentralityScores::from_slots(g, Measure::Degree, weighted, &slots))
}

/// Shortest-path DAG from one source: visit order, path counts, predecessors.
struct ShortestPaths {
    order: Vec<NodeId>,
    sigma: Vec<f64>,
    preds: Vec<Vec<NodeId>>,
}

fn bfs_paths(g: &WeightedGraph, s: NodeId) -> ShortestPaths {
    let n = g.id_bound();
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(g.node_count());
    let mut queue = VecDeque::new();
    dist[s.0] = 0;
    sigma[s.0] = 1.0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, _) in g.neighbors(u) {
            if dist[v.0] == usize::MAX {
                dist[v.0] = dist[u.0] + 1;
                queue.push_back(v);
            }
            if dist[v.0] == dist[u.0] + 1 {
                sigma[v.0] += sigma[u.0];
                preds[v.0].push(u);
            }
        }
    }
    ShortestPaths { order, sigma, preds }
}

#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    node: NodeId,
    pred: NodeId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then ids for a total deterministic order
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
            .then_with(|| other.pred.cmp(&self.pred))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[inline]
fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn dijkstra_paths(g: &WeightedGraph, s: NodeId, transform: WeightTransform) -> ShortestPaths {
    let n = g.id_bound();
    let mut dist = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(g.node_count());
    let mut heap = BinaryHeap::new();
    dist[s.0] = 0.0;
    sigma[s.0] = 1.0;
    heap.push(HeapEntry {
        dist: 0.0,
        node: s,
        pred: s,
    });
    while let Some(HeapEntry { dist: d, node: u, .. }) = heap.pop() {
        if settled[u.0] || d > dist[u.0] {
            continue;
        }
        settled[u.0] = true;
        order.push(u);
        for &(v, w) in g.neighbors(u) {
            if settled[v.0] {
                continue;
            }
            let alt = d + transform.length(w);
            if dist[v.0].is_infinite() || (alt < dist[v.0] && !same_length(alt, dist[v.0])) {
                dist[v.0] = alt;
                sigma[v.0] = sigma[u.0];
                preds[v.0].clear();
                preds[v.0].push(u);
                heap.push(HeapEntry {
                    dist: alt,
                    node: v,
                    pred: u,
                });
            } else if same_length(alt, dist[v.0]) {
                sigma[v.0] += sigma[u.0];
                preds[v.0].push(u);
            }
        }
    }
    ShortestPaths { order, sigma, preds }
}

fn source_dependencies(paths: ShortestPaths, n: usize, s: NodeId) -> Vec<f64> {
    let ShortestPaths {
        order,
        sigma,
        preds,
    } = paths;
    let mut delta = vec![0.0; n];
    for &w in order.iter().rev() {
        let coeff = (1.0 + delta[w.0]) / sigma[w.0];
        for &v in &preds[w.0] {
            delta[v.0] += sigma[v.0] * coeff;
        }
    }
    delta[s.0] = 0.0;
    delta
}

/// Brandes accumulation over every source, normalized by
/// `(n - 1)(n - 2) / 2` for undirected graphs.
///
/// Sources are processed in parallel, but contributions are summed in
/// source order so the result does not depend on the thread count.
pub fn betweenness_centrality(
    g: &WeightedGraph,
    weighted: bool,
    transform: WeightTransform,
) -> CentralityScores {
    let n = g.id_bound();
    let sources: Vec<NodeId> = g.nodes().collect();
    let per_source: Vec<Vec<f64>> = sources
        .par_iter()
        .map(|&s| {
            let paths = if weighted {
                dijkstra_paths(g, s, transform)
            } else {
                bfs_paths(g, s)
            };
            source_dependencies(paths, n, s)
        })
        .collect();
    let mut slots = vec![0.0; n];
    for delta in &per_source {
        for (acc, d) in slots.iter_mut().zip(delta) {
            *acc += d;
        }
    }
    let count = g.node_count();
    // each unordered pair was counted from both endpoints
    let scale = if count > 2 {
        1.0 / ((count - 1) * (count - 2)) as f64
    } else {
        0.5
    };
    for s in &mut slots {
        *s *= scale;
    }
    CentralityScores::from_slots(g, Measure::Betweenness, weighted, &slots)
}

fn adjacency_product(g: &WeightedGraph, weighted: bool, x: &[f64], out: &mut [f64]) {
    for v in g.nodes() {
        out[v.0] = g
            .neighbors(v)
            .iter()
            .map(|&(u, w)| if weighted { w * x[u.0] } else { x[u.0] })
            .sum();
    }
}

/// Largest adjacency eigenvalue by power iteration on `A + I`, which keeps
/// bipartite graphs from oscillating.
pub fn spectral_radius(g: &WeightedGraph, weighted: bool) -> f64 {
    if g.edge_count() == 0 {
        return 0.0;
    }
    let n = g.id_bound();
    let mut x = vec![0.0; n];
    for v in g.nodes() {
        x[v.0] = 1.0;
    }
    let mut y = vec![0.0; n];
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        adjacency_product(g, weighted, &x, &mut y);
        let (mut num, mut den) = (0.0, 0.0);
        for v in g.nodes() {
            y[v.0] += x[v.0];
            num += x[v.0] * y[v.0];
            den += x[v.0] * x[v.0];
        }
        let next = num / den - 1.0;
        let norm = g.nodes().map(|v| y[v.0] * y[v.0]).sum::<f64>().sqrt();
        for v in g.nodes() {
            x[v.0] = y[v.0] / norm;
        }
        let done = (next - lambda).abs() <= 1e-13 * next.abs().max(1.0);
        lambda = next;
        if done {
            break;
        }
    }
    lambda
}

/// Fixed point of `x = alpha * A x + beta`, L2-normalized on return.
pub fn katz_centrality(
    g: &WeightedGraph,
    weighted: bool,
    params: &KatzParams,
) -> Result<CentralityScores> {
    let raw = katz_raw(g, weighted, params)?;
    let norm = g.nodes().map(|v| raw[v.0] * raw[v.0]).sum::<f64>().sqrt();
    let slots: Vec<f64> = if norm > 0.0 {
        raw.iter().map(|x| x / norm).collect()
    } else {
        raw
    };
    Ok(CentralityScores::from_slots(g, Measure::Katz, weighted, &slots))
}

/// Unnormalized Katz vector indexed by node slot; the returned vector
/// satisfies the fixed-point residual bound `tol` in the max norm.
pub(crate) fn katz_raw(g: &WeightedGraph, weighted: bool, params: &KatzParams) -> Result<Vec<f64>> {
    let alpha = match params.alpha {
        Some(a) => a,
        None => {
            let lambda = spectral_radius(g, weighted);
            if lambda > 0.0 {
                0.9 / lambda
            } else {
                0.0
            }
        }
    };
    let n = g.id_bound();
    let mut x = vec![0.0; n];
    for v in g.nodes() {
        x[v.0] = params.beta;
    }
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..params.max_iter {
        adjacency_product(g, weighted, &x, &mut y);
        residual = 0.0;
        for v in g.nodes() {
            y[v.0] = alpha * y[v.0] + params.beta;
            residual = f64::max(residual, (x[v.0] - y[v.0]).abs());
        }
        if !residual.is_finite() {
            break;
        }
        if residual < params.tol {
            return Ok(x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    Err(Error::Convergence {
        iterations: params.max_iter,
        residual,
    })
}

/// `CI_l(v) = (k_v - 1) * sum over the hop-l frontier of (k_u - 1)`, with
/// `k` the degree (or strength when weighted) and each factor clamped at 0.
pub fn collective_influence(g: &WeightedGraph, radius: usize, weighted: bool) -> CentralityScores {
    let n = g.id_bound();
    let k = |v: NodeId| -> f64 {
        let raw = if weighted {
            g.strength(v)
        } else {
            g.degree(v) as f64
        };
        (raw - 1.0).max(0.0)
    };
    let radius = radius.max(1);
    let nodes: Vec<NodeId> = g.nodes().collect();
    let scores: Vec<f64> = nodes
        .par_iter()
        .map(|&v| {
            let own = k(v);
            if own == 0.0 {
                return 0.0;
            }
            let mut dist = vec![usize::MAX; n];
            dist[v.0] = 0;
            let mut frontier = vec![v];
            for depth in 1..=radius {
                let mut next = Vec::new();
                for &u in &frontier {
                    for &(w, _) in g.neighbors(u) {
                        if dist[w.0] == usize::MAX {
                            dist[w.0] = depth;
                            next.push(w);
                        }
                    }
                }
                frontier = next;
            }
            own * frontier.iter().map(|&u| k(u)).sum::<f64>()
        })
        .collect();
    let mut slots = vec![0.0; n];
    for (v, s) in nodes.iter().zip(scores) {
        slots[v.0] = s;
    }
    CentralityScores::from_slots(g, Measure::CollectiveInfluence, weighted, &slots)
}
