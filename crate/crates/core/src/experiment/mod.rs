//! Budget sweeps and the reports built from them.
//!
//! Every (dataset, strategy, budget, replicate) cell is independent. GA
//! cells draw their seed from a hash of the master seed and the cell
//! coordinates, so cells can run in any order and on any number of threads.

mod analysis;
mod store;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::{run_baseline, BaselineStrategy};
use crate::error::{Error, Result};
use crate::graph::{CentralityConfig, NodeId, WeightedGraph};
use crate::moga::{run_nsga2, run_wsga, GaConfig};
use crate::objectives::{Evaluator, ObjectiveVector, RemovalSet};
use crate::spatial::SpatialLayout;

pub use analysis::{
    combined_pareto, comparison_report, selection_histogram, union_of_extremes, ComparisonReport,
    DatasetMetrics, FrequencyHistogram, ReportRow,
};
pub use store::{read_results, write_results, ResultStore};

/// Label of records built from a user-supplied removal list.
pub const EXPLICIT_LIST: &str = "explicit-list";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Wsga,
    Nsga2,
    Baseline(BaselineStrategy),
}

impl Strategy {
    pub fn label(&self) -> String {
        match self {
            Strategy::Wsga => "wsga".into(),
            Strategy::Nsga2 => "nsga2".into(),
            Strategy::Baseline(b) => b.label(),
        }
    }

    pub fn is_stochastic(&self) -> bool {
        !matches!(self, Strategy::Baseline(_))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wsga" => Ok(Strategy::Wsga),
            "nsga2" => Ok(Strategy::Nsga2),
            other => other.parse().map(Strategy::Baseline).map_err(|_| {
                Error::Config(format!(
                    "unknown strategy '{other}', expected wsga, nsga2 or a baseline label"
                ))
            }),
        }
    }
}

/// Best solution of one sweep cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub dataset: String,
    pub strategy: String,
    pub budget: usize,
    pub seed: u64,
    pub rho: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub raw_mean_distance: f64,
    /// Labels of the removed nodes, in ascending id order.
    pub removal_set: Vec<String>,
    pub fingerprint: String,
}

/// Everything a sweep over one dataset depends on.
#[derive(Debug, Clone)]
pub struct SweepContext<'a> {
    pub dataset: String,
    pub graph: &'a WeightedGraph,
    pub layout: &'a SpatialLayout,
    /// GA settings; the seed field is replaced per cell.
    pub ga: GaConfig,
    pub centrality: CentralityConfig,
    pub master_seed: u64,
    /// Independent GA runs per budget.
    pub replicates: usize,
}

impl<'a> SweepContext<'a> {
    pub fn new(dataset: impl Into<String>, graph: &'a WeightedGraph, layout: &'a SpatialLayout) -> Self {
        Self {
            dataset: dataset.into(),
            graph,
            layout,
            ga: GaConfig::default(),
            centrality: CentralityConfig::default(),
            master_seed: 0,
            replicates: 1,
        }
    }

    fn layout_digest(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.layout.write(&mut buf)?;
        Ok(hex::encode(Sha256::digest(&buf)))
    }

    /// Hash of everything that determines a cell's record.
    pub fn fingerprint(&self, strategy: &Strategy, budget: usize, seed: u64) -> Result<String> {
        #[derive(Serialize)]
        struct Key<'k> {
            dataset: &'k str,
            graph: String,
            layout: String,
            strategy: String,
            budget: usize,
            seed: u64,
            ga: Option<&'k GaConfig>,
            centrality: Option<&'k CentralityConfig>,
        }
        let mut ga = self.ga.clone();
        ga.seed = seed;
        let key = Key {
            dataset: &self.dataset,
            graph: self.graph.digest(),
            layout: self.layout_digest()?,
            strategy: strategy.label(),
            budget,
            seed,
            ga: strategy.is_stochastic().then_some(&ga),
            centrality: (!strategy.is_stochastic()).then_some(&self.centrality),
        };
        let json = serde_json::to_vec(&key)?;
        Ok(hex::encode(&Sha256::digest(&json)[..16]))
    }

    /// Builds the record for a solved cell.
    pub fn record(
        &self,
        strategy: &str,
        budget: usize,
        seed: u64,
        nodes: &[NodeId],
        obj: &ObjectiveVector,
        fingerprint: String,
    ) -> SweepResult {
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        SweepResult {
            dataset: self.dataset.clone(),
            strategy: strategy.to_string(),
            budget,
            seed,
            rho: obj.rho,
            d: obj.d,
            raw_mean_distance: obj.raw_mean_distance,
            removal_set: sorted.iter().map(|&v| self.graph.label(v)).collect(),
            fingerprint,
        }
    }
}

/// Seed for one GA cell, from the master seed and the cell coordinates.
pub fn derive_seed(master: u64, dataset: &str, strategy: &str, budget: usize, replicate: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    for part in [dataset.as_bytes(), strategy.as_bytes()] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    h.update((budget as u64).to_le_bytes());
    h.update((replicate as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

#[derive(Debug, Clone)]
struct Cell {
    strategy: Strategy,
    budget: usize,
    seed: u64,
    fingerprint: String,
}

/// Runs every (strategy, budget, replicate) cell not already present in
/// `done` (matched by fingerprint). Records come back in cell order:
/// strategies as given, then budgets, then replicates.
///
/// Baselines are deterministic, so they get a single record per budget
/// with seed 0, and a sequential baseline is run once up to the largest
/// budget and read off by prefix.
pub fn sweep(
    ctx: &SweepContext<'_>,
    strategies: &[Strategy],
    budgets: &[usize],
    done: &[SweepResult],
) -> Result<Vec<SweepResult>> {
    let n = ctx.graph.node_count();
    if let Some(&b) = budgets.iter().find(|&&b| b == 0 || b > n) {
        return Err(Error::Config(format!("budget {b} outside 1..={n}")));
    }
    if ctx.replicates == 0 {
        return Err(Error::Config("at least one replicate is required".into()));
    }
    ctx.ga.validate()?;
    let eval = Evaluator::new(ctx.graph, ctx.layout)?;
    let existing: std::collections::HashSet<&str> =
        done.iter().map(|r| r.fingerprint.as_str()).collect();

    let mut cells = Vec::new();
    for s in strategies {
        for &b in budgets {
            let reps = if s.is_stochastic() { ctx.replicates } else { 1 };
            for r in 0..reps {
                let seed = if s.is_stochastic() {
                    derive_seed(ctx.master_seed, &ctx.dataset, &s.label(), b, r)
                } else {
                    0
                };
                let fingerprint = ctx.fingerprint(s, b, seed)?;
                if !existing.contains(fingerprint.as_str()) {
                    cells.push(Cell {
                        strategy: *s,
                        budget: b,
                        seed,
                        fingerprint,
                    });
                }
            }
        }
    }
    log::info!("{}: {} cells to run", ctx.dataset, cells.len());

    // one baseline run per strategy, long enough for its largest budget
    let mut baseline_runs = Vec::new();
    for s in strategies {
        if let Strategy::Baseline(b) = s {
            let longest = cells
                .iter()
                .filter(|c| c.strategy == *s)
                .map(|c| c.budget)
                .max();
            if let Some(k) = longest {
                baseline_runs.push((*s, run_baseline(&eval, *b, k, &ctx.centrality)?));
            }
        }
    }

    cells
        .par_iter()
        .map(|cell| {
            let label = cell.strategy.label();
            match cell.strategy {
                Strategy::Baseline(_) => {
                    let run = &baseline_runs
                        .iter()
                        .find(|(s, _)| *s == cell.strategy)
                        .expect("baseline run prepared")
                        .1;
                    let nodes = &run.order[..cell.budget];
                    let obj = eval.evaluate_unchecked(nodes);
                    Ok(ctx.record(&label, cell.budget, cell.seed, nodes, &obj, cell.fingerprint.clone()))
                }
                Strategy::Wsga => {
                    let cfg = ctx.ga.clone().with_seed(cell.seed);
                    let out = run_wsga(&eval, cell.budget, &cfg)?;
                    Ok(ctx.record(
                        &label,
                        cell.budget,
                        cell.seed,
                        out.best.genes(),
                        &out.objectives,
                        cell.fingerprint.clone(),
                    ))
                }
                Strategy::Nsga2 => {
                    let cfg = ctx.ga.clone().with_seed(cell.seed);
                    let out = run_nsga2(&eval, cell.budget, &cfg)?;
                    let rep = out
                        .front
                        .representative(&cfg.weights)
                        .ok_or_else(|| Error::Invariant("empty final front".into()))?;
                    Ok(ctx.record(
                        &label,
                        cell.budget,
                        cell.seed,
                        rep.genome.genes(),
                        &rep.objectives,
                        cell.fingerprint.clone(),
                    ))
                }
            }
        })
        .collect()
}

/// Record for a user-supplied removal list (e.g. real-world arrests).
pub fn explicit_record<S: AsRef<str>>(ctx: &SweepContext<'_>, labels: &[S]) -> Result<SweepResult> {
    let set: RemovalSet = crate::baselines::explicit_removal(ctx.graph, labels)?;
    let eval = Evaluator::new(ctx.graph, ctx.layout)?;
    let obj = eval.evaluate(&set)?;
    let mut h = Sha256::new();
    h.update(ctx.graph.digest());
    h.update(ctx.layout_digest()?);
    for v in set.nodes() {
        h.update((v.0 as u64).to_le_bytes());
    }
    let fingerprint = hex::encode(&h.finalize()[..16]);
    Ok(ctx.record(EXPLICIT_LIST, set.budget(), 0, set.nodes(), &obj, fingerprint))
}
