//! Centrality-ranked removal, the approach the genetic search competes with.
//!
//! Block mode ranks once on the intact graph and takes the top `i`.
//! Sequential mode removes the current top node, recomputes the measure on
//! what is left, and repeats. Ties go to the lowest node id in both modes;
//! scores are compared after rounding to 12 significant digits relative to
//! the largest score, so symmetric nodes tie despite float noise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{centrality, CentralityConfig, CentralityScores, Measure, NodeId, WeightedGraph};
use crate::objectives::{Evaluator, RemovalSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemovalMode {
    Sequential,
    Block,
}

impl RemovalMode {
    pub fn name(self) -> &'static str {
        match self {
            RemovalMode::Sequential => "sequential",
            RemovalMode::Block => "block",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaselineStrategy {
    pub measure: Measure,
    pub weighted: bool,
    pub mode: RemovalMode,
}

impl BaselineStrategy {
    pub fn new(measure: Measure, weighted: bool, mode: RemovalMode) -> Self {
        Self {
            measure,
            weighted,
            mode,
        }
    }

    /// The reference baseline: sequential unweighted betweenness.
    pub fn reference() -> Self {
        Self::new(Measure::Betweenness, false, RemovalMode::Sequential)
    }

    /// Every measure, weighting and mode combination.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        for mode in [RemovalMode::Sequential, RemovalMode::Block] {
            for weighted in [false, true] {
                for m in Measure::ALL {
                    out.push(Self::new(m, weighted, mode));
                }
            }
        }
        out
    }

    /// e.g. `sequential-unweighted-betweenness`.
    pub fn label(&self) -> String {
        let w = if self.weighted { "weighted" } else { "unweighted" };
        format!("{}-{w}-{}", self.mode.name(), self.measure.name())
    }
}

impl fmt::Display for BaselineStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for BaselineStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Config(format!(
                "unknown baseline '{s}', expected <sequential|block>-<unweighted|weighted>-<measure>"
            ))
        };
        let mut parts = s.splitn(3, '-');
        let mode = match parts.next() {
            Some("sequential") => RemovalMode::Sequential,
            Some("block") => RemovalMode::Block,
            _ => return Err(bad()),
        };
        let weighted = match parts.next() {
            Some("unweighted") => false,
            Some("weighted") => true,
            _ => return Err(bad()),
        };
        let measure = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(Self::new(measure, weighted, mode))
    }
}

/// One removal of a baseline run, with the objectives of the prefix so far.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemovalStep {
    pub step: usize,
    pub node: NodeId,
    pub rho: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineRun {
    pub strategy: BaselineStrategy,
    /// Nodes in the order they were removed.
    pub order: Vec<NodeId>,
    pub set: RemovalSet,
    pub trace: Vec<RemovalStep>,
}

impl BaselineRun {
    /// The run truncated to its first `k` removals.
    pub fn prefix(&self, g: &WeightedGraph, k: usize) -> Result<RemovalSet> {
        if k == 0 || k > self.order.len() {
            return Err(Error::Config(format!(
                "prefix {k} outside 1..={}",
                self.order.len()
            )));
        }
        RemovalSet::new(g, self.order[..k].iter().copied())
    }
}

/// Nodes sorted by score descending, ties by ascending id.
pub fn tie_stable_ranking(scores: &CentralityScores) -> Vec<NodeId> {
    let scale = scores
        .values()
        .iter()
        .map(|(_, s)| s.abs())
        .fold(0.0, f64::max);
    let key = |s: f64| -> i64 {
        if scale > 0.0 {
            (s / scale * 1e12).round() as i64
        } else {
            0
        }
    };
    let mut ranked: Vec<(NodeId, i64)> = scores.values().iter().map(|&(v, s)| (v, key(s))).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().map(|(v, _)| v).collect()
}

fn check_budget(g: &WeightedGraph, budget: usize) -> Result<()> {
    if budget == 0 || budget > g.node_count() {
        return Err(Error::Config(format!(
            "budget must be in 1..={}, got {budget}",
            g.node_count()
        )));
    }
    Ok(())
}

/// Top-`budget` nodes of a single ranking on the intact graph, in rank order.
pub fn block_order(
    g: &WeightedGraph,
    measure: Measure,
    weighted: bool,
    budget: usize,
    config: &CentralityConfig,
) -> Result<Vec<NodeId>> {
    check_budget(g, budget)?;
    let scores = centrality(g, measure, weighted, config)?;
    Ok(tie_stable_ranking(&scores).into_iter().take(budget).collect())
}

pub fn block_removal(
    g: &WeightedGraph,
    measure: Measure,
    weighted: bool,
    budget: usize,
    config: &CentralityConfig,
) -> Result<RemovalSet> {
    RemovalSet::new(g, block_order(g, measure, weighted, budget, config)?)
}

/// Removal order of the recompute-after-each-removal strategy. Nodes left
/// isolated stay candidates.
pub fn sequential_order(
    g: &WeightedGraph,
    measure: Measure,
    weighted: bool,
    budget: usize,
    config: &CentralityConfig,
) -> Result<Vec<NodeId>> {
    check_budget(g, budget)?;
    let mut current = g.clone();
    let mut order = Vec::with_capacity(budget);
    for _ in 0..budget {
        let pick = if current.node_count() == 1 {
            current.nodes().next().expect("one node left")
        } else {
            let scores = centrality(&current, measure, weighted, config)?;
            tie_stable_ranking(&scores)[0]
        };
        order.push(pick);
        current = current.remove_nodes(&[pick])?;
    }
    Ok(order)
}

/// Runs `strategy` up to `budget`, tracing rho and D after every removal.
pub fn run_baseline(
    eval: &Evaluator<'_>,
    strategy: BaselineStrategy,
    budget: usize,
    config: &CentralityConfig,
) -> Result<BaselineRun> {
    let g = eval.graph();
    let order = match strategy.mode {
        RemovalMode::Block => block_order(g, strategy.measure, strategy.weighted, budget, config)?,
        RemovalMode::Sequential => {
            sequential_order(g, strategy.measure, strategy.weighted, budget, config)?
        }
    };
    let trace = (1..=order.len())
        .map(|k| {
            let obj = eval.evaluate_unchecked(&order[..k]);
            RemovalStep {
                step: k,
                node: order[k - 1],
                rho: obj.rho,
                d: obj.d,
            }
        })
        .collect();
    let set = RemovalSet::new(g, order.iter().copied())?;
    Ok(BaselineRun {
        strategy,
        order,
        set,
        trace,
    })
}

/// Removal set from a user-supplied list of node labels.
pub fn explicit_removal<S: AsRef<str>>(g: &WeightedGraph, labels: &[S]) -> Result<RemovalSet> {
    let nodes = labels
        .iter()
        .map(|l| {
            let l = l.as_ref().trim();
            g.node_by_label(l)
                .ok_or_else(|| Error::InvalidRemoval(format!("no node labelled '{l}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    RemovalSet::new(g, nodes)
}
