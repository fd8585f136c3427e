//! Variation and selection operators shared by both drivers.
//!
//! Every operator returns genomes that keep the exact length and contain
//! only distinct members of the node pool.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{check_budget, Genome, NodePool};
use crate::error::Result;
use crate::graph::NodeId;

/// `size` genomes, each a uniform random `budget`-subset of the pool.
pub fn init_population<R: Rng>(
    pool: &NodePool,
    budget: usize,
    size: usize,
    rng: &mut R,
) -> Result<Vec<Genome>> {
    check_budget(budget, pool)?;
    Ok((0..size)
        .map(|_| {
            let genes = sample(rng, pool.len(), budget)
                .into_iter()
                .map(|i| pool.nodes()[i])
                .collect();
            Genome::new(genes)
        })
        .collect())
}

/// Draws `k` distinct contenders out of `n` and returns the winner.
///
/// `better(a, b)` says whether `a` beats `b`; when neither beats the other
/// the lower index wins.
pub fn tournament_select<R, F>(n: usize, k: usize, rng: &mut R, better: F) -> usize
where
    R: Rng,
    F: Fn(usize, usize) -> bool,
{
    assert!(n > 0, "tournament over an empty population");
    let k = k.clamp(1, n);
    let mut winner: Option<usize> = None;
    for c in sample(rng, n, k) {
        winner = Some(match winner {
            None => c,
            Some(w) if better(c, w) || (!better(w, c) && c < w) => c,
            Some(w) => w,
        });
    }
    winner.expect("k >= 1")
}

/// Scalar-fitness tournament (higher wins).
pub fn fitness_tournament<R: Rng>(fitness: &[f64], k: usize, rng: &mut R) -> usize {
    tournament_select(fitness.len(), k, rng, |a, b| fitness[a] > fitness[b])
}

/// Crowded-comparison tournament over `(front, crowding)` pairs: lower
/// front wins, then larger crowding distance.
pub fn crowded_tournament<R: Rng>(ranks: &[(usize, f64)], k: usize, rng: &mut R) -> usize {
    tournament_select(ranks.len(), k, rng, |a, b| crowded_less(ranks[a], ranks[b]))
}

#[inline]
pub(crate) fn crowded_less(a: (usize, f64), b: (usize, f64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 > b.1)
}

/// Nodes of the pool absent from `genes`.
fn outside(pool: &NodePool, genes: &[NodeId]) -> Vec<NodeId> {
    let mut used = vec![false; pool.bound()];
    for g in genes {
        used[g.0] = true;
    }
    pool.nodes().iter().copied().filter(|v| !used[v.0]).collect()
}

/// Replaces the later copy of every repeated gene, scanning left to right,
/// with a uniformly drawn pool node not yet in the genome.
pub(crate) fn repair<R: Rng>(genes: &mut [NodeId], pool: &NodePool, rng: &mut R) {
    let mut spare = outside(pool, genes);
    let mut seen = vec![false; pool.bound()];
    for gene in genes.iter_mut() {
        if seen[gene.0] {
            let pick = rng.random_range(0..spare.len());
            *gene = spare.swap_remove(pick);
        }
        seen[gene.0] = true;
    }
}

/// Swaps the `[lo, hi)` segment between two parents without repair.
pub fn swap_segment(a: &Genome, b: &Genome, lo: usize, hi: usize) -> (Vec<NodeId>, Vec<NodeId>) {
    let mut x = a.genes().to_vec();
    let mut y = b.genes().to_vec();
    x[lo..hi].copy_from_slice(&b.genes()[lo..hi]);
    y[lo..hi].copy_from_slice(&a.genes()[lo..hi]);
    (x, y)
}

/// Two-point crossover with cut points drawn uniformly from `0..=len`,
/// followed by duplicate repair.
pub fn two_point_crossover<R: Rng>(
    a: &Genome,
    b: &Genome,
    pool: &NodePool,
    rng: &mut R,
) -> (Genome, Genome) {
    assert_eq!(a.len(), b.len(), "crossover parents differ in length");
    let len = a.len();
    let c1 = rng.random_range(0..=len);
    let c2 = rng.random_range(0..=len);
    crossover_at(a, b, c1.min(c2), c1.max(c2), pool, rng)
}

/// Crossover at explicit cut points `lo <= hi`.
pub fn crossover_at<R: Rng>(
    a: &Genome,
    b: &Genome,
    lo: usize,
    hi: usize,
    pool: &NodePool,
    rng: &mut R,
) -> (Genome, Genome) {
    let (mut x, mut y) = swap_segment(a, b, lo, hi);
    repair(&mut x, pool, rng);
    repair(&mut y, pool, rng);
    (Genome::new(x), Genome::new(y))
}

/// With probability `p`, shuffles a random contiguous slice and then
/// replaces each gene in that slice with probability `p_gene` by a pool
/// node that appears in neither the original nor the current genome
/// (falling back to "not in the current genome" once those run out).
///
/// A genome that already holds the whole pool is returned unchanged.
pub fn scramble_mutation<R: Rng>(
    g: &Genome,
    p: f64,
    p_gene: f64,
    pool: &NodePool,
    rng: &mut R,
) -> Genome {
    let len = g.len();
    if len == 0 || len >= pool.len() || !rng.random_bool(p) {
        return g.clone();
    }
    let lo = rng.random_range(0..len);
    let hi = rng.random_range(lo + 1..=len);
    let mut genes = g.genes().to_vec();
    genes[lo..hi].shuffle(rng);

    let mut fresh = outside(pool, g.genes());
    let mut in_genome = vec![false; pool.bound()];
    for v in &genes {
        in_genome[v.0] = true;
    }
    for i in lo..hi {
        if !rng.random_bool(p_gene) {
            continue;
        }
        let old = genes[i];
        let replacement = if !fresh.is_empty() {
            let pick = rng.random_range(0..fresh.len());
            fresh.swap_remove(pick)
        } else {
            let spare: Vec<NodeId> = pool
                .nodes()
                .iter()
                .copied()
                .filter(|v| !in_genome[v.0])
                .collect();
            if spare.is_empty() {
                continue;
            }
            spare[rng.random_range(0..spare.len())]
        };
        in_genome[old.0] = false;
        in_genome[replacement.0] = true;
        genes[i] = replacement;
    }
    Genome::new(genes)
}
