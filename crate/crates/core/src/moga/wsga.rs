use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::operators::{fitness_tournament, init_population, scramble_mutation, two_point_crossover};
use super::{check_budget, weighted_sum_fitness, GaConfig, GenerationStats, Genome, NodePool};
use crate::error::Result;
use crate::objectives::{Evaluator, ObjectiveVector};

#[derive(Debug, Clone, PartialEq)]
pub struct WsgaOutcome {
    /// Best genome seen in any generation.
    pub best: Genome,
    pub objectives: ObjectiveVector,
    pub fitness: f64,
    pub history: Vec<GenerationStats>,
}

pub(crate) fn evaluate_all(eval: &Evaluator<'_>, pop: &[Genome]) -> Vec<ObjectiveVector> {
    pop.par_iter()
        .map(|g| eval.evaluate_unchecked(g.genes()))
        .collect()
}

/// Offspring from a mating pool: consecutive parents pair up cyclically,
/// each pair is crossed with the configured probability (otherwise cloned)
/// and each child is then mutated.
pub(crate) fn breed<R: Rng>(
    pop: &[Genome],
    parents: &[usize],
    count: usize,
    pool: &NodePool,
    config: &GaConfig,
    rng: &mut R,
) -> Vec<Genome> {
    let mut out = Vec::with_capacity(count + 1);
    let mut k = 0;
    while out.len() < count {
        let a = &pop[parents[k % parents.len()]];
        let b = &pop[parents[(k + 1) % parents.len()]];
        k += 2;
        let (x, y) = if rng.random_bool(config.crossover_prob) {
            two_point_crossover(a, b, pool, rng)
        } else {
            (a.clone(), b.clone())
        };
        for child in [x, y] {
            if out.len() < count {
                let m = scramble_mutation(&child, config.mutation_prob, config.gene_replace_prob, pool, rng);
                out.push(m);
            }
        }
    }
    out
}

/// Weighted-sum GA at a fixed removal budget.
///
/// Each generation keeps the `elitism` fittest individuals unchanged and
/// fills the rest of the population with offspring of tournament-selected
/// parents. Deterministic for a given `config.seed`, whatever the thread
/// count.
pub fn run_wsga(eval: &Evaluator<'_>, budget: usize, config: &GaConfig) -> Result<WsgaOutcome> {
    config.validate()?;
    let config = config.clone();
    let pool = NodePool::from_graph(eval.graph());
    check_budget(budget, &pool)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let w = config.weights;

    let mut pop = init_population(&pool, budget, config.population_size, &mut rng)?;
    let mut objs = evaluate_all(eval, &pop);
    let mut fit: Vec<f64> = objs.iter().map(|o| weighted_sum_fitness(o, &w)).collect();
    let mut history = vec![GenerationStats::summarize(0, &objs, Some(&fit), None)];

    let mut best_idx = argmax(&fit);
    let mut best = (pop[best_idx].clone(), objs[best_idx], fit[best_idx]);

    // a full-size budget has a single feasible set
    let generations = if budget == pool.len() { 0 } else { config.generations };
    for gen in 1..=generations {
        let parents: Vec<usize> = (0..config.num_parents)
            .map(|_| fitness_tournament(&fit, config.tournament_size, &mut rng))
            .collect();
        let n_children = config.population_size - config.elitism;
        let children = breed(&pop, &parents, n_children, &pool, &config, &mut rng);
        for c in &children {
            c.check(budget, &pool).inspect_err(|_| {
                log::error!("weighted-sum GA aborted at generation {gen}");
            })?;
        }
        let child_objs = evaluate_all(eval, &children);

        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&a, &b| fit[b].total_cmp(&fit[a]).then(a.cmp(&b)));
        let mut next_pop = Vec::with_capacity(config.population_size);
        let mut next_objs = Vec::with_capacity(config.population_size);
        for &i in order.iter().take(config.elitism) {
            next_pop.push(pop[i].clone());
            next_objs.push(objs[i]);
        }
        next_pop.extend(children);
        next_objs.extend(child_objs);
        pop = next_pop;
        objs = next_objs;
        fit = objs.iter().map(|o| weighted_sum_fitness(o, &w)).collect();

        best_idx = argmax(&fit);
        if fit[best_idx] > best.2 {
            best = (pop[best_idx].clone(), objs[best_idx], fit[best_idx]);
        }
        history.push(GenerationStats::summarize(gen, &objs, Some(&fit), None));
    }

    Ok(WsgaOutcome {
        best: best.0,
        objectives: best.1,
        fitness: best.2,
        history,
    })
}

/// Index of the largest value, lowest index on ties.
fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best
}
