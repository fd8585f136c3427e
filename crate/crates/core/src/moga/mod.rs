//! Genetic search over fixed-size removal sets.
//!
//! A genome is a list of `i` distinct node ids (value encoding), so the
//! search space at budget `i` is the `C(|V|, i)` subsets of that size.
//! Both drivers share the variation operators in [`operators`]: tournament
//! selection, two-point crossover with duplicate repair, and scramble
//! mutation extended with gene replacement.
//!
//! * [`run_wsga`] maximizes `w_rho * f_rho + w_spatial * f_spatial`.
//! * [`run_nsga2`] keeps both objectives apart and returns the first front.

mod nsga2;
pub mod operators;
pub mod sorting;
mod wsga;

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::objectives::{ObjectiveVector, RemovalSet};

pub use nsga2::{run_nsga2, Nsga2Outcome};
pub use operators::{
    crowded_tournament, fitness_tournament, init_population, scramble_mutation,
    tournament_select, two_point_crossover,
};
pub use sorting::{
    crowding_distance, dominates, fast_nondominated_sort, front_ranks_2d, fronts_from_ranks,
    NonDominatedSorting,
};
pub use wsga::{run_wsga, WsgaOutcome};

/// Ordered list of distinct nodes; only the set matters for fitness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Genome(Vec<NodeId>);

impl Genome {
    pub fn new(genes: Vec<NodeId>) -> Self {
        Genome(genes)
    }

    pub fn genes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Genes in ascending order, i.e. the phenotype.
    pub fn sorted(&self) -> Vec<NodeId> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }

    pub fn to_removal_set(&self, g: &WeightedGraph) -> Result<RemovalSet> {
        RemovalSet::new(g, self.0.iter().copied())
    }

    /// Length, distinctness and membership in `pool`.
    pub fn check(&self, budget: usize, pool: &NodePool) -> Result<()> {
        if self.len() != budget {
            return Err(Error::Invariant(format!(
                "genome has {} genes, expected {budget}",
                self.len()
            )));
        }
        let mut seen = vec![false; pool.bound()];
        for &v in &self.0 {
            if !pool.contains(v) {
                return Err(Error::Invariant(format!("gene {v} is not a valid node")));
            }
            if std::mem::replace(&mut seen[v.0], true) {
                return Err(Error::Invariant(format!("gene {v} repeated")));
            }
        }
        Ok(())
    }
}

/// The nodes a genome may draw from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePool {
    nodes: Vec<NodeId>,
    member: Vec<bool>,
}

impl NodePool {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let nodes: Vec<NodeId> = g.nodes().collect();
        let mut member = vec![false; g.id_bound()];
        for v in &nodes {
            member[v.0] = true;
        }
        Self { nodes, member }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Upper bound on node ids, for mask sizing.
    pub fn bound(&self) -> usize {
        self.member.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.member.get(v.0).copied().unwrap_or(false)
    }
}

/// Objective weights for the weighted-sum GA. Fixed for a whole run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    rho: f64,
    spatial: f64,
}

impl Weights {
    pub fn new(rho: f64, spatial: f64) -> Result<Self> {
        let ok = rho >= 0.0 && spatial >= 0.0 && ((rho + spatial) - 1.0).abs() <= 1e-9;
        if !ok {
            return Err(Error::Config(format!(
                "weights must be non-negative and sum to 1, got ({rho}, {spatial})"
            )));
        }
        Ok(Self { rho, spatial })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn spatial(&self) -> f64 {
        self.spatial
    }

    /// Parses `w_rho,w_spatial`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("weights '{s}' are not 'w_rho,w_spatial'"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        Self::new(a, b)
    }
}

impl Default for Weights {
    fn default() -> Self {
        Self {
            rho: 0.5,
            spatial: 0.5,
        }
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.rho, self.spatial)
    }
}

/// `w_rho * f_rho + w_spatial * f_spatial`.
#[inline]
pub fn weighted_sum_fitness(obj: &ObjectiveVector, weights: &Weights) -> f64 {
    weights.rho * obj.f_rho + weights.spatial * obj.f_spatial
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub generations: usize,
    pub population_size: usize,
    /// Size of the mating pool drawn by tournament each generation.
    pub num_parents: usize,
    pub tournament_size: usize,
    pub crossover_prob: f64,
    /// Probability that a child is scrambled at all.
    pub mutation_prob: f64,
    /// Per-gene replacement probability inside a scrambled slice.
    pub gene_replace_prob: f64,
    /// Individuals carried over unchanged by the weighted-sum GA.
    pub elitism: usize,
    pub weights: Weights,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            generations: 500,
            population_size: 500,
            num_parents: 250,
            tournament_size: 2,
            crossover_prob: 0.9,
            mutation_prob: 0.1,
            gene_replace_prob: 0.1,
            elitism: 1,
            weights: Weights::default(),
            seed: 0,
        }
    }
}

impl GaConfig {
    /// Reduced population and generation counts for laptop-sized runs.
    pub fn desk_scale() -> Self {
        Self {
            generations: 200,
            population_size: 200,
            num_parents: 100,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.generations == 0 {
            return fail("generations must be at least 1".into());
        }
        if self.population_size == 0 {
            return fail("population size must be at least 1".into());
        }
        if self.num_parents == 0 || self.num_parents > self.population_size {
            return fail(format!(
                "number of parents must be in 1..={}, got {}",
                self.population_size, self.num_parents
            ));
        }
        if self.tournament_size == 0 {
            return fail("tournament size must be at least 1".into());
        }
        for (name, p) in [
            ("crossover probability", self.crossover_prob),
            ("mutation probability", self.mutation_prob),
            ("gene replacement probability", self.gene_replace_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} must be in [0, 1], got {p}"));
            }
        }
        if self.elitism > self.population_size {
            return fail(format!(
                "elitism {} exceeds population size {}",
                self.elitism, self.population_size
            ));
        }
        Weights::new(self.weights.rho, self.weights.spatial)?;
        Ok(())
    }
}

/// Genome with its objectives and NSGA-II ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedIndividual {
    pub genome: Genome,
    pub objectives: ObjectiveVector,
    /// 0 for the first (non-dominated) front.
    pub front: usize,
    pub crowding: f64,
    /// How many individuals of the ranked population dominate this one.
    pub domination_count: usize,
}

/// Mutually non-dominated individuals, deduplicated by objective vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoFront {
    pub members: Vec<RankedIndividual>,
}

impl ParetoFront {
    /// Keeps the first member seen for each objective vector, ordered by
    /// `f_rho` descending then `f_spatial` descending.
    pub fn from_members(members: impl IntoIterator<Item = RankedIndividual>) -> Self {
        let mut out: Vec<RankedIndividual> = Vec::new();
        for m in members {
            if !out.iter().any(|o| o.objectives.fitness() == m.objectives.fitness()) {
                out.push(m);
            }
        }
        out.sort_by(|a, b| {
            b.objectives
                .f_rho
                .total_cmp(&a.objectives.f_rho)
                .then(b.objectives.f_spatial.total_cmp(&a.objectives.f_spatial))
        });
        Self { members: out }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member with the highest weighted sum; first in front order on ties.
    /// Used only to report a single point per budget.
    pub fn representative(&self, weights: &Weights) -> Option<&RankedIndividual> {
        self.members.iter().fold(None, |best, m| match best {
            Some(b)
                if weighted_sum_fitness(&b.objectives, weights)
                    >= weighted_sum_fitness(&m.objectives, weights) =>
            {
                Some(b)
            }
            _ => Some(m),
        })
    }

    pub fn best_f_rho(&self) -> Option<&RankedIndividual> {
        self.members.first()
    }
}

/// Population summary for one generation (generation 0 is the initial
/// population).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_fitness: Option<f64>,
    pub mean_fitness: Option<f64>,
    pub best_f_rho: f64,
    pub mean_f_rho: f64,
    pub best_f_spatial: f64,
    pub mean_f_spatial: f64,
    pub front0_size: Option<usize>,
}

impl GenerationStats {
    pub(crate) fn summarize(
        generation: usize,
        objectives: &[ObjectiveVector],
        fitness: Option<&[f64]>,
        front0_size: Option<usize>,
    ) -> Self {
        let n = objectives.len().max(1) as f64;
        let max = |it: &mut dyn Iterator<Item = f64>| it.fold(f64::NEG_INFINITY, f64::max);
        Self {
            generation,
            best_fitness: fitness.map(|f| max(&mut f.iter().copied())),
            mean_fitness: fitness.map(|f| f.iter().sum::<f64>() / n),
            best_f_rho: max(&mut objectives.iter().map(|o| o.f_rho)),
            mean_f_rho: objectives.iter().map(|o| o.f_rho).sum::<f64>() / n,
            best_f_spatial: max(&mut objectives.iter().map(|o| o.f_spatial)),
            mean_f_spatial: objectives.iter().map(|o| o.f_spatial).sum::<f64>() / n,
            front0_size,
        }
    }
}

/// Writes one CSV line per generation.
pub fn write_history<W: Write>(history: &[GenerationStats], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "generation",
        "best_fitness",
        "mean_fitness",
        "best_f_rho",
        "mean_f_rho",
        "best_f_spatial",
        "mean_f_spatial",
        "front0_size",
    ])?;
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.12}")).unwrap_or_default();
    for s in history {
        w.write_record([
            s.generation.to_string(),
            opt(s.best_fitness),
            opt(s.mean_fitness),
            format!("{:.12}", s.best_f_rho),
            format!("{:.12}", s.mean_f_rho),
            format!("{:.12}", s.best_f_spatial),
            format!("{:.12}", s.mean_f_spatial),
            s.front0_size.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<history>", e))?;
    Ok(())
}

pub(crate) fn check_budget(budget: usize, pool: &NodePool) -> Result<()> {
    if budget == 0 || budget > pool.len() {
        return Err(Error::Config(format!(
            "budget must be in 1..={}, got {budget}",
            pool.len()
        )));
    }
    Ok(())
}
