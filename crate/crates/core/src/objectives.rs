//! The two objectives every removal set is scored on.
//!
//! * `rho`: size of the largest connected component after removal relative
//!   to the original one. `f_rho = 1 - rho`.
//! * `D`: mean min-max-normalized distance from each removed node to its
//!   nearest headquarters. `f_spatial = 1 - D`.
//!
//! Both fitness values are maximized. Objective order is fixed everywhere:
//! `f_rho` first, `f_spatial` second.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{lcc_size, NodeId, WeightedGraph};
use crate::spatial::SpatialLayout;

/// A set of distinct nodes of the original graph, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RemovalSet {
    nodes: Vec<NodeId>,
}

impl RemovalSet {
    /// Validates that `nodes` is a non-empty set of distinct members of `g`.
    pub fn new(g: &WeightedGraph, nodes: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let mut nodes: Vec<NodeId> = nodes.into_iter().collect();
        if nodes.is_empty() {
            return Err(Error::InvalidRemoval("removal set is empty".into()));
        }
        if let Some(&v) = nodes.iter().find(|&&v| !g.contains(v)) {
            return Err(Error::InvalidRemoval(format!("node {v} is not in the graph")));
        }
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRemoval(format!("node {} listed twice", w[0])));
        }
        Ok(Self { nodes })
    }

    /// The budget-0 set, used only for reporting the intact network.
    pub fn empty() -> Self {
        Self { nodes: Vec::new() }
    }

    pub fn budget(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub f_rho: f64,
    pub f_spatial: f64,
    pub rho: f64,
    /// Normalized spatial distance in `[0, 1]`.
    pub d: f64,
    /// Mean raw nearest-HQ distance of the removed nodes, in layout units.
    pub raw_mean_distance: f64,
}

impl ObjectiveVector {
    pub fn from_parts(rho: f64, d: f64, raw_mean_distance: f64) -> Self {
        Self {
            f_rho: 1.0 - rho,
            f_spatial: 1.0 - d,
            rho,
            d,
            raw_mean_distance,
        }
    }

    /// `[f_rho, f_spatial]`, both to be maximized.
    #[inline]
    pub fn fitness(&self) -> [f64; 2] {
        [self.f_rho, self.f_spatial]
    }
}

fn check_subset(g: &WeightedGraph, r: &RemovalSet) -> Result<()> {
    match r.nodes().iter().find(|&&v| !g.contains(v)) {
        Some(v) => Err(Error::InvalidRemoval(format!("node {v} is not in the graph"))),
        None => Ok(()),
    }
}

fn base_lcc(g0: &WeightedGraph) -> Result<usize> {
    match lcc_size(g0) {
        0 => Err(Error::DegenerateGraph("original graph has an empty LCC".into())),
        n => Ok(n),
    }
}

/// `LCC(G_i) / LCC(G_0)`.
pub fn rho(g0: &WeightedGraph, r: &RemovalSet) -> Result<f64> {
    check_subset(g0, r)?;
    let base = base_lcc(g0)?;
    let after = lcc_size(&g0.remove_nodes(r.nodes())?);
    Ok(after as f64 / base as f64)
}

/// `1 - |LCC(G_i) - LCC(G_0)| / LCC(G_0)`, the form with the absolute value.
/// Agrees with [`rho`] because removal never grows the LCC.
pub fn rho_absolute_form(g0: &WeightedGraph, r: &RemovalSet) -> Result<f64> {
    check_subset(g0, r)?;
    let base = base_lcc(g0)? as f64;
    let after = lcc_size(&g0.remove_nodes(r.nodes())?) as f64;
    Ok(1.0 - ((after - base) / base).abs())
}

/// Mean normalized nearest-HQ distance of the removed nodes; 0 for the
/// empty set.
pub fn spatial_distance(layout: &SpatialLayout, r: &RemovalSet) -> Result<f64> {
    if r.budget() == 0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for &v in r.nodes() {
        sum += layout
            .normalized_distance(v)
            .map_err(|_| Error::LayoutBinding(format!("node {v} has no coordinates")))?;
    }
    Ok(sum / r.budget() as f64)
}

pub fn evaluate(g0: &WeightedGraph, layout: &SpatialLayout, r: &RemovalSet) -> Result<ObjectiveVector> {
    Evaluator::new(g0, layout)?.evaluate(r)
}

/// Scores removal sets against one `(graph, layout)` pair.
///
/// The original LCC and per-node distances are computed once on
/// construction; afterwards the evaluator is read-only and can be shared
/// across threads.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    graph: &'a WeightedGraph,
    layout: &'a SpatialLayout,
    base_lcc: usize,
    normalized: Vec<f64>,
}

impl<'a> Evaluator<'a> {
    pub fn new(graph: &'a WeightedGraph, layout: &'a SpatialLayout) -> Result<Self> {
        layout.bind(graph)?;
        let base_lcc = base_lcc(graph)?;
        let normalized = (0..graph.id_bound())
            .map(|i| layout.normalized_distance(NodeId(i)))
            .collect::<Result<_>>()?;
        Ok(Self {
            graph,
            layout,
            base_lcc,
            normalized,
        })
    }

    pub fn graph(&self) -> &'a WeightedGraph {
        self.graph
    }

    pub fn layout(&self) -> &'a SpatialLayout {
        self.layout
    }

    pub fn base_lcc(&self) -> usize {
        self.base_lcc
    }

    pub fn normalized_distance(&self, v: NodeId) -> f64 {
        self.normalized[v.0]
    }

    pub fn evaluate(&self, r: &RemovalSet) -> Result<ObjectiveVector> {
        check_subset(self.graph, r)?;
        Ok(self.evaluate_unchecked(r.nodes()))
    }

    /// Scores `nodes` assuming they are distinct members of the graph.
    pub fn evaluate_unchecked(&self, nodes: &[NodeId]) -> ObjectiveVector {
        let mut mask = vec![false; self.graph.id_bound()];
        let (mut norm_sum, mut raw_sum) = (0.0, 0.0);
        let raw = self.layout.nearest_hq();
        for &v in nodes {
            mask[v.0] = true;
        }
        // summing in id order makes the result independent of gene order
        for (i, _) in mask.iter().enumerate().filter(|(_, &m)| m) {
            norm_sum += self.normalized[i];
            raw_sum += raw[i];
        }
        let after = crate::graph::lcc_size_masked(self.graph, &mask);
        let rho = after as f64 / self.base_lcc as f64;
        let (d, raw_mean) = if nodes.is_empty() {
            (0.0, 0.0)
        } else {
            let k = nodes.len() as f64;
            (norm_sum / k, raw_sum / k)
        };
        ObjectiveVector::from_parts(rho, d, raw_mean)
    }
}
