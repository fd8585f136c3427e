use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::operators::{crowded_less, crowded_tournament, init_population};
use super::sorting::{crowding_distance, fast_nondominated_sort, front_ranks_2d, fronts_from_ranks};
use super::wsga::{breed, evaluate_all};
use super::{check_budget, GaConfig, GenerationStats, Genome, NodePool, ParetoFront, RankedIndividual};
use crate::error::Result;
use crate::objectives::{Evaluator, ObjectiveVector};

#[derive(Debug, Clone, PartialEq)]
pub struct Nsga2Outcome {
    /// First front of the final population, without duplicate objective
    /// vectors.
    pub front: ParetoFront,
    /// Final population with ranks and crowding distances.
    pub population: Vec<RankedIndividual>,
    pub history: Vec<GenerationStats>,
}

/// Ranks a population: fronts, and `(front, crowding)` per individual.
///
/// Uses the two-objective sweep, which yields the same fronts as the
/// general non-dominated sort.
fn rank(objs: &[ObjectiveVector]) -> (Vec<Vec<usize>>, Vec<(usize, f64)>) {
    let fit: Vec<[f64; 2]> = objs.iter().map(|o| o.fitness()).collect();
    let fronts = fronts_from_ranks(&front_ranks_2d(&fit));
    let mut ranks = vec![(0, 0.0); objs.len()];
    for (r, front) in fronts.iter().enumerate() {
        let members: Vec<[f64; 2]> = front.iter().map(|&i| fit[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&members)) {
            ranks[i] = (r, d);
        }
    }
    (fronts, ranks)
}

/// NSGA-II at a fixed removal budget.
///
/// Offspring and parents are merged each generation and truncated back to
/// the population size front by front, cutting the last admitted front by
/// crowding distance. Deterministic for a given `config.seed`.
pub fn run_nsga2(eval: &Evaluator<'_>, budget: usize, config: &GaConfig) -> Result<Nsga2Outcome> {
    config.validate()?;
    let config = config.clone();
    let pool = NodePool::from_graph(eval.graph());
    check_budget(budget, &pool)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.population_size;

    let mut pop = init_population(&pool, budget, n, &mut rng)?;
    let mut objs = evaluate_all(eval, &pop);
    let (mut fronts, mut ranks) = rank(&objs);
    let mut history = vec![GenerationStats::summarize(0, &objs, None, Some(fronts[0].len()))];

    let generations = if budget == pool.len() { 0 } else { config.generations };
    for gen in 1..=generations {
        let parents: Vec<usize> = (0..config.num_parents)
            .map(|_| crowded_tournament(&ranks, config.tournament_size, &mut rng))
            .collect();
        let children = breed(&pop, &parents, n, &pool, &config, &mut rng);
        for c in &children {
            c.check(budget, &pool).inspect_err(|_| {
                log::error!("NSGA-II aborted at generation {gen}");
            })?;
        }
        let child_objs = evaluate_all(eval, &children);

        let mut merged: Vec<Genome> = pop;
        merged.extend(children);
        let mut merged_objs = objs;
        merged_objs.extend(child_objs);
        let (merged_fronts, merged_ranks) = rank(&merged_objs);

        let mut keep: Vec<usize> = Vec::with_capacity(n);
        for front in &merged_fronts {
            if keep.len() + front.len() <= n {
                keep.extend_from_slice(front);
            } else {
                let mut f = front.clone();
                f.sort_by(|&a, &b| {
                    if crowded_less(merged_ranks[a], merged_ranks[b]) {
                        std::cmp::Ordering::Less
                    } else if crowded_less(merged_ranks[b], merged_ranks[a]) {
                        std::cmp::Ordering::Greater
                    } else {
                        a.cmp(&b)
                    }
                });
                keep.extend_from_slice(&f[..n - keep.len()]);
            }
            if keep.len() == n {
                break;
            }
        }
        keep.sort_unstable();
        pop = keep.iter().map(|&i| merged[i].clone()).collect();
        objs = keep.iter().map(|&i| merged_objs[i]).collect();
        (fronts, ranks) = rank(&objs);
        history.push(GenerationStats::summarize(gen, &objs, None, Some(fronts[0].len())));
    }

    let fit: Vec<[f64; 2]> = objs.iter().map(|o| o.fitness()).collect();
    let counts = fast_nondominated_sort(&fit).domination_count;
    let population: Vec<RankedIndividual> = pop
        .into_iter()
        .enumerate()
        .map(|(i, genome)| RankedIndividual {
            genome,
            objectives: objs[i],
            front: ranks[i].0,
            crowding: ranks[i].1,
            domination_count: counts[i],
        })
        .collect();
    let front = ParetoFront::from_members(population.iter().filter(|m| m.front == 0).cloned());
    Ok(Nsga2Outcome {
        front,
        population,
        history,
    })
}
