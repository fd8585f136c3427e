use super::{NodeId, WeightedGraph};

/// Connected components of the present nodes.
///
/// Component indices are contiguous and numbered in order of each
/// component's smallest node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    assignment: Vec<Option<usize>>,
    sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn component_of(&self, v: NodeId) -> Option<usize> {
        self.assignment.get(v.0).copied().flatten()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Members of component `c` in ascending id order.
    pub fn members(&self, c: usize) -> Vec<NodeId> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, a)| **a == Some(c))
            .map(|(i, _)| NodeId(i))
            .collect()
    }
}

pub fn connected_components(g: &WeightedGraph) -> ComponentPartition {
    let mut assignment = vec![None; g.id_bound()];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in g.nodes() {
        if assignment[start.0].is_some() {
            continue;
        }
        let c = sizes.len();
        assignment[start.0] = Some(c);
        stack.push(start);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &(v, _) in g.neighbors(u) {
                if assignment[v.0].is_none() {
                    assignment[v.0] = Some(c);
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    ComponentPartition { assignment, sizes }
}

pub fn lcc_size(g: &WeightedGraph) -> usize {
    connected_components(g).largest()
}

/// LCC size of `g` with the nodes flagged in `removed` deleted, without
/// materializing the remnant graph.
pub(crate) fn lcc_size_masked(g: &WeightedGraph, removed: &[bool]) -> usize {
    let mut seen: Vec<bool> = removed.to_vec();
    let mut stack = Vec::new();
    let mut best = 0;
    for start in g.nodes() {
        if seen[start.0] {
            continue;
        }
        seen[start.0] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &(v, _) in g.neighbors(u) {
                if !seen[v.0] {
                    seen[v.0] = true;
                    stack.push(v);
                }
            }
        }
        best = best.max(size);
    }
    best
}
