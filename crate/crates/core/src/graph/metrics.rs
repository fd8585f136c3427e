use std::collections::VecDeque;

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Mean local clustering coefficient; nodes with degree < 2 count as 0.
pub fn clustering_coefficient(g: &WeightedGraph) -> f64 {
    if g.is_empty() {
        return 0.0;
    }
    let total: f64 = g
        .nodes()
        .map(|v| {
            let nbrs = g.neighbors(v);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &(a, _)) in nbrs.iter().enumerate() {
                for &(b, _) in &nbrs[i + 1..] {
                    if g.has_edge(a, b) {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .sum();
    total / g.node_count() as f64
}

/// Mean hop distance over the unordered pairs that are connected.
/// Disconnected pairs are left out rather than counted as infinite.
pub fn average_path_length(g: &WeightedGraph) -> Result<f64> {
    let mut dist = vec![usize::MAX; g.id_bound()];
    let mut queue = VecDeque::new();
    let mut sum = 0u64;
    let mut pairs = 0u64;
    for s in g.nodes() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s.0] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in g.neighbors(u) {
                if dist[v.0] == usize::MAX {
                    dist[v.0] = dist[u.0] + 1;
                    queue.push_back(v);
                    if v > s {
                        sum += dist[v.0] as u64;
                        pairs += 1;
                    }
                }
            }
        }
    }
    if pairs == 0 {
        return Err(Error::UndefinedMetric(
            "average path length needs at least one connected pair".into(),
        ));
    }
    Ok(sum as f64 / pairs as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generators, NodeId};

    /// Counts closed and open triads centred on each node by brute force.
    fn triad_oracle(g: &WeightedGraph) -> f64 {
        let n = g.id_bound();
        let mut acc = 0.0;
        for v in 0..n {
            let (mut closed, mut all) = (0, 0);
            for a in 0..n {
                for b in (a + 1)..n {
                    if a == v || b == v {
                        continue;
                    }
                    if g.has_edge(NodeId(v), NodeId(a)) && g.has_edge(NodeId(v), NodeId(b)) {
                        all += 1;
                        if g.has_edge(NodeId(a), NodeId(b)) {
                            closed += 1;
                        }
                    }
                }
            }
            if all > 0 {
                acc += closed as f64 / all as f64;
            }
        }
        acc / n as f64
    }

    #[test]
    fn clustering_fixtures() {
        assert_eq!(clustering_coefficient(&generators::complete(3)), 1.0);
        assert_eq!(clustering_coefficient(&generators::star(5)), 0.0);
        let tp = WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let cc = clustering_coefficient(&tp);
        assert!((cc - triad_oracle(&tp)).abs() < 1e-15);
        assert!((cc - 7.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn clustering_matches_oracle_on_random_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = generators::gnm(15, 30, &mut rng);
            assert!((clustering_coefficient(&g) - triad_oracle(&g)).abs() < 1e-12);
        }
    }

    #[test]
    fn apl_fixtures() {
        assert_eq!(average_path_length(&generators::path(2)).unwrap(), 1.0);
        assert!((average_path_length(&generators::path(3)).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let two = WeightedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(average_path_length(&two).unwrap(), 1.0);
    }

    #[test]
    fn apl_undefined_without_pairs() {
        let g = WeightedGraph::unweighted(3, &[]).unwrap();
        assert!(matches!(
            average_path_length(&g),
            Err(Error::UndefinedMetric(_))
        ));
    }
}
