use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use netdisrupt::graph::io::{load_any, EdgeListFormat};
use netdisrupt::graph::WeightedGraph;
use netdisrupt::moga::{GaConfig, Weights};
use netdisrupt::spatial::{BBox, SpatialLayout};
use netdisrupt::{Error, Result};

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Edge list (CSV or whitespace separated) or a canonical graph file.
    #[arg(long, env = "NETDISRUPT_DATASET")]
    pub dataset: PathBuf,

    /// Edge-list format: auto, csv or whitespace.
    #[arg(long, default_value = "auto", env = "NETDISRUPT_FORMAT")]
    pub format: EdgeListFormat,

    /// Dataset name used in result records (default: file stem).
    #[arg(long)]
    pub name: Option<String>,
}

impl GraphArgs {
    pub fn load(&self) -> Result<WeightedGraph> {
        load_any(&self.dataset, self.format)
    }

    pub fn dataset_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| stem(&self.dataset))
    }
}

pub fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LayoutSource {
    /// Existing layout file; otherwise one is generated from --bbox, --hqs and the seed.
    #[arg(long, env = "NETDISRUPT_LAYOUT")]
    pub layout: Option<PathBuf>,

    /// Bounding box as WIDTHxHEIGHT.
    #[arg(long, default_value = "1000x1000", env = "NETDISRUPT_BBOX")]
    pub bbox: String,

    /// Number of headquarters.
    #[arg(long, default_value_t = 3, env = "NETDISRUPT_HQS")]
    pub hqs: usize,
}

impl LayoutSource {
    /// The layout file if given (checked against the graph), a fresh one
    /// otherwise. The flag says whether it was generated.
    pub fn resolve(&self, g: &WeightedGraph, seed: u64) -> Result<(SpatialLayout, bool)> {
        match &self.layout {
            Some(p) => {
                let l = SpatialLayout::load(p)?;
                l.bind(g)?;
                Ok((l, false))
            }
            None => Ok((self.generate(g, seed)?, true)),
        }
    }

    pub fn generate(&self, g: &WeightedGraph, seed: u64) -> Result<SpatialLayout> {
        let bbox = BBox::parse(&self.bbox)?;
        SpatialLayout::generate(g.id_bound(), bbox, self.hqs, seed)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeedArg {
    /// Master seed; a random one is drawn, printed and saved when omitted.
    #[arg(long, env = "NETDISRUPT_SEED")]
    pub seed: Option<u64>,
}

impl SeedArg {
    /// The seed when randomness is needed, otherwise the given one or 0.
    pub fn resolve_if(&self, needed: bool) -> u64 {
        if needed {
            self.resolve()
        } else {
            self.seed.unwrap_or(0)
        }
    }

    pub fn resolve(&self) -> u64 {
        match self.seed {
            Some(s) => s,
            None => {
                let s = rand::random::<u64>();
                eprintln!("seed: {s}");
                s
            }
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutArg {
    /// Output directory.
    #[arg(long, env = "NETDISRUPT_OUT")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GaArgs {
    /// Start from the reduced desk-scale settings (population 200, 200 generations, 100 parents).
    #[arg(long)]
    pub desk: bool,

    #[arg(long, env = "NETDISRUPT_GENERATIONS")]
    pub generations: Option<usize>,

    #[arg(long, env = "NETDISRUPT_POPULATION")]
    pub population: Option<usize>,

    /// Mating pool size per generation.
    #[arg(long, env = "NETDISRUPT_PARENTS")]
    pub parents: Option<usize>,

    #[arg(long)]
    pub tournament: Option<usize>,

    #[arg(long)]
    pub crossover_prob: Option<f64>,

    #[arg(long)]
    pub mutation_prob: Option<f64>,

    /// Per-gene replacement probability inside a mutated slice.
    #[arg(long)]
    pub gene_prob: Option<f64>,

    /// Individuals copied unchanged into the next weighted-sum GA generation.
    #[arg(long)]
    pub elitism: Option<usize>,

    /// Objective weights as W_RHO,W_SPATIAL.
    #[arg(long, env = "NETDISRUPT_WEIGHTS")]
    pub weights: Option<String>,
}

impl GaArgs {
    pub fn config(&self, seed: u64) -> Result<GaConfig> {
        let mut c = if self.desk {
            GaConfig::desk_scale()
        } else {
            GaConfig::default()
        };
        if let Some(v) = self.generations {
            c.generations = v;
        }
        if let Some(v) = self.population {
            c.population_size = v;
            if self.parents.is_none() {
                c.num_parents = (v / 2).max(1);
            }
        }
        if let Some(v) = self.parents {
            c.num_parents = v;
        }
        if let Some(v) = self.tournament {
            c.tournament_size = v;
        }
        if let Some(v) = self.crossover_prob {
            c.crossover_prob = v;
        }
        if let Some(v) = self.mutation_prob {
            c.mutation_prob = v;
        }
        if let Some(v) = self.gene_prob {
            c.gene_replace_prob = v;
        }
        if let Some(v) = self.elitism {
            c.elitism = v;
        }
        if let Some(w) = &self.weights {
            c.weights = Weights::parse(w)?;
        }
        c.seed = seed;
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IngestArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Directory for the canonical graph file; summary only when omitted.
    #[arg(long, env = "NETDISRUPT_OUT")]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LayoutArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Bounding box as WIDTHxHEIGHT.
    #[arg(long, default_value = "1000x1000", env = "NETDISRUPT_BBOX")]
    pub bbox: String,

    /// Number of headquarters.
    #[arg(long, default_value_t = 3, env = "NETDISRUPT_HQS")]
    pub hqs: usize,

    #[command(flatten)]
    pub seed: SeedArg,

    #[command(flatten)]
    #[serde(skip)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[command(flatten)]
    pub layout: LayoutSource,

    /// MODE-WEIGHTING-MEASURE, e.g. sequential-unweighted-betweenness, or
    /// explicit-list together with --removal.
    #[arg(long, default_value = "sequential-unweighted-betweenness")]
    pub strategy: String,

    /// Number of nodes to remove (ignored for explicit lists).
    #[arg(long, env = "NETDISRUPT_BUDGET")]
    pub budget: Option<usize>,

    /// File of node labels to remove, one per line or comma separated.
    #[arg(long)]
    pub removal: Option<PathBuf>,

    /// Radius of the collective-influence ball.
    #[arg(long, default_value_t = 2)]
    pub ci_radius: usize,

    #[command(flatten)]
    pub seed: SeedArg,

    #[command(flatten)]
    #[serde(skip)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Wsga,
    Nsga2,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[command(flatten)]
    pub layout: LayoutSource,

    #[arg(long, value_enum, env = "NETDISRUPT_ALGO")]
    pub algo: Algo,

    /// Number of nodes to remove.
    #[arg(long, env = "NETDISRUPT_BUDGET")]
    pub budget: usize,

    #[command(flatten)]
    pub ga: GaArgs,

    #[command(flatten)]
    pub seed: SeedArg,

    #[command(flatten)]
    #[serde(skip)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    /// Edge lists or canonical graph files; repeat or comma separate.
    #[arg(long, required = true, value_delimiter = ',', env = "NETDISRUPT_DATASET")]
    pub dataset: Vec<PathBuf>,

    #[arg(long, default_value = "auto", env = "NETDISRUPT_FORMAT")]
    pub format: EdgeListFormat,

    /// Layout files matching --dataset one to one; generated when omitted.
    #[arg(long, value_delimiter = ',', env = "NETDISRUPT_LAYOUT")]
    pub layout: Vec<PathBuf>,

    #[arg(long, default_value = "1000x1000", env = "NETDISRUPT_BBOX")]
    pub bbox: String,

    #[arg(long, default_value_t = 3, env = "NETDISRUPT_HQS")]
    pub hqs: usize,

    /// Comma-separated strategies: wsga, nsga2 and baseline labels.
    #[arg(
        long,
        default_value = "wsga,nsga2,sequential-unweighted-betweenness",
        env = "NETDISRUPT_STRATEGIES"
    )]
    pub strategies: String,

    /// Budgets as A..B (inclusive) or a comma list.
    #[arg(long, default_value = "1..90", env = "NETDISRUPT_BUDGETS")]
    pub budgets: String,

    /// Independent GA runs per budget.
    #[arg(long, default_value_t = 1)]
    pub replicates: usize,

    #[arg(long, default_value_t = 2)]
    pub ci_radius: usize,

    #[command(flatten)]
    pub ga: GaArgs,

    #[command(flatten)]
    pub seed: SeedArg,

    #[command(flatten)]
    #[serde(skip)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ParetoArgs {
    /// Results files; repeat or comma separate.
    #[arg(long, required = true, value_delimiter = ',')]
    pub results: Vec<PathBuf>,

    /// Only records of these strategies (comma separated).
    #[arg(long)]
    pub strategies: Option<String>,

    /// Graph for selection histograms; its name (--name or file stem)
    /// must match the records' dataset.
    #[arg(long)]
    pub dataset: Option<PathBuf>,

    #[arg(long, default_value = "auto")]
    pub format: EdgeListFormat,

    #[arg(long)]
    pub name: Option<String>,

    /// Size of the most and least selected node lists.
    #[arg(long, default_value_t = 10)]
    pub top: usize,

    #[command(flatten)]
    #[serde(skip)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReportArgs {
    /// Results files; repeat or comma separate.
    #[arg(long, required = true, value_delimiter = ',')]
    pub results: Vec<PathBuf>,

    #[arg(long, default_value_t = 41, env = "NETDISRUPT_BUDGET")]
    pub budget: usize,

    /// Comma-separated strategies (default: wsga, nsga2, the reference
    /// baseline and any explicit list found in the results).
    #[arg(long)]
    pub strategies: Option<String>,

    #[command(flatten)]
    #[serde(skip)]
    pub out: OutArg,
}

/// Parses `A..B` (inclusive), `A..=B`, `A-B` or `a,b,c`.
pub fn parse_budgets(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("budgets '{s}' are not A..B or a comma list"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'));
    let out: Vec<usize> = match range {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad());
            }
            (a..=b).collect()
        }
        None => s.split(',').map(num).collect::<Result<_>>()?,
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_forms() {
        assert_eq!(parse_budgets("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_budgets("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_budgets("2-4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_budgets("5,41").unwrap(), vec![5, 41]);
        assert!(parse_budgets("4..2").is_err());
        assert!(parse_budgets("x").is_err());
    }
}
