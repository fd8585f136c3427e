//! Small deterministic graph families and seeded random graphs.

use rand::seq::index::sample;
use rand::Rng;

use super::WeightedGraph;

pub fn path(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    WeightedGraph::unweighted(n, &edges).expect("path is simple")
}

pub fn cycle(n: usize) -> WeightedGraph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n > 2 {
        edges.push((0, n - 1));
    }
    WeightedGraph::unweighted(n, &edges).expect("cycle is simple")
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    WeightedGraph::unweighted(leaves + 1, &edges).expect("star is simple")
}

pub fn complete(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    WeightedGraph::unweighted(n, &edges).expect("complete graph is simple")
}

/// Uniform random graph with exactly `m` edges (capped at `n(n-1)/2`) and
/// integer weights drawn from `1..=5`.
pub fn gnm<R: Rng>(n: usize, m: usize, rng: &mut R) -> WeightedGraph {
    let total = n * n.saturating_sub(1) / 2;
    let m = m.min(total);
    let picks = sample(rng, total, m).into_vec();
    let mut codes = picks;
    codes.sort_unstable();
    let edges: Vec<(usize, usize, f64)> = codes
        .into_iter()
        .map(|code| {
            let (u, v) = unrank_pair(n, code);
            (u, v, f64::from(rng.random_range(1u8..=5)))
        })
        .collect();
    WeightedGraph::from_edges(n, &edges).expect("distinct pairs")
}

/// Preferential attachment: each new node links to `per_node` existing
/// nodes chosen proportionally to degree. Weights drawn from `1..=5`.
pub fn preferential_attachment<R: Rng>(n: usize, per_node: usize, rng: &mut R) -> WeightedGraph {
    let per_node = per_node.max(1);
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut targets: Vec<usize> = Vec::new();
    let seed = (per_node + 1).min(n);
    for u in 0..seed {
        for v in (u + 1)..seed {
            edges.push((u, v, f64::from(rng.random_range(1u8..=5))));
            targets.push(u);
            targets.push(v);
        }
    }
    for v in seed..n {
        let mut chosen: Vec<usize> = Vec::with_capacity(per_node);
        while chosen.len() < per_node.min(v) {
            let u = if targets.is_empty() {
                rng.random_range(0..v)
            } else {
                targets[rng.random_range(0..targets.len())]
            };
            if !chosen.contains(&u) {
                chosen.push(u);
            }
        }
        for u in chosen {
            edges.push((u, v, f64::from(rng.random_range(1u8..=5))));
            targets.push(u);
            targets.push(v);
        }
    }
    WeightedGraph::from_edges(n, &edges).expect("no duplicate attachments")
}

fn unrank_pair(n: usize, mut code: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - u - 1;
        if code < row {
            return (u, u + 1 + code);
        }
        code -= row;
    }
    unreachable!("pair code out of range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_sizes() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(star(4).node_count(), 5);
        assert_eq!(complete(5).edge_count(), 10);
    }

    #[test]
    fn gnm_is_seeded_and_exact() {
        let a = gnm(95, 249, &mut ChaCha8Rng::seed_from_u64(1));
        let b = gnm(95, 249, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 249);
        assert_eq!(gnm(4, 100, &mut ChaCha8Rng::seed_from_u64(1)).edge_count(), 6);
    }

    #[test]
    fn preferential_attachment_edge_count() {
        let g = preferential_attachment(50, 2, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(g.node_count(), 50);
        assert_eq!(g.edge_count(), 3 + 47 * 2);
    }
}
