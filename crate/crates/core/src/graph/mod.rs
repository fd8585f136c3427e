//! Immutable weighted undirected graphs.
//!
//! Nodes live in a dense id space `0..id_bound()`. Removing nodes keeps the
//! surviving ids untouched and only marks the removed slots absent, so a
//! node keeps the same [`NodeId`] in every remnant of the original network.
//! Original labels and optional roles travel with the graph as metadata.

mod centrality;
mod components;
pub mod generators;
pub mod io;
mod metrics;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use centrality::{
    betweenness_centrality, centrality, collective_influence, degree_centrality, katz_centrality,
    spectral_radius, CentralityConfig, CentralityScores, KatzParams, Measure, WeightTransform,
};
pub use components::{connected_components, lcc_size, ComponentPartition};
pub(crate) use components::lcc_size_masked;
pub use metrics::{average_path_length, clustering_coefficient};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for NodeId {
    fn from(v: usize) -> Self {
        NodeId(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMeta {
    pub label: String,
    pub role: Option<String>,
}

impl NodeMeta {
    pub fn labeled(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            role: None,
        }
    }
}

/// Undirected graph with positive edge weights (interaction frequencies).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    /// Neighbor lists sorted by neighbor id; empty for absent slots.
    adjacency: Vec<Vec<(NodeId, f64)>>,
    present: Vec<bool>,
    meta: Vec<NodeMeta>,
    node_count: usize,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph over `meta.len()` nodes.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation),
    /// out-of-range endpoints and weights that are not finite and positive.
    pub fn new(
        meta: Vec<NodeMeta>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let n = meta.len();
        let mut adjacency: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on node {u}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            adjacency[u].push((NodeId(v), w));
            adjacency[v].push((NodeId(u), w));
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_by_key(|&(v, _)| v);
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({u}, {})",
                    pair[0].0
                )));
            }
        }
        Ok(Self {
            adjacency,
            present: vec![true; n],
            meta,
            node_count: n,
            edge_count,
        })
    }

    /// Graph on `n` nodes labelled by their index.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let meta = (0..n).map(|i| NodeMeta::labeled(i.to_string())).collect();
        Self::new(meta, edges.iter().copied())
    }

    /// Graph on `n` nodes with every edge weight set to 1.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let meta = (0..n).map(|i| NodeMeta::labeled(i.to_string())).collect();
        Self::new(meta, edges.iter().map(|&(u, v)| (u, v, 1.0)))
    }

    /// Size of the id space, including removed slots.
    #[inline]
    pub fn id_bound(&self) -> usize {
        self.present.len()
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.node_count == 0
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.present.get(v.0).copied().unwrap_or(false)
    }

    /// Present nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| NodeId(i))
    }

    /// Neighbors of `v` with edge weights; empty if `v` is absent.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        self.adjacency.get(v.0).map(Vec::as_slice).unwrap_or(&[])
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    /// Sum of incident edge weights.
    pub fn strength(&self, v: NodeId) -> f64 {
        self.neighbors(v).iter().map(|&(_, w)| w).sum()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u)
            .binary_search_by_key(&v, |&(x, _)| x)
            .is_ok()
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| v.0 > u)
                .map(move |&(v, w)| (NodeId(u), v, w))
        })
    }

    pub fn meta(&self, v: NodeId) -> Option<&NodeMeta> {
        self.meta.get(v.0)
    }

    /// Original label of `v`, falling back to the numeric id.
    pub fn label(&self, v: NodeId) -> String {
        match self.meta.get(v.0) {
            Some(m) if !m.label.is_empty() => m.label.clone(),
            _ => v.to_string(),
        }
    }

    /// Labels for the whole id space, indexed by [`NodeId`].
    pub fn labels(&self) -> Vec<String> {
        (0..self.id_bound()).map(|i| self.label(NodeId(i))).collect()
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.meta
            .iter()
            .position(|m| m.label == label)
            .map(NodeId)
            .filter(|&v| self.contains(v))
    }

    /// Returns a copy without the nodes in `removed` and their incident edges.
    pub fn remove_nodes(&self, removed: &[NodeId]) -> Result<Self> {
        let mut mask = vec![false; self.id_bound()];
        for &v in removed {
            if !self.contains(v) {
                return Err(Error::UnknownNode(v));
            }
            mask[v.0] = true;
        }
        Ok(self.without_mask(&mask))
    }

    pub(crate) fn without_mask(&self, removed: &[bool]) -> Self {
        let mut present = self.present.clone();
        let mut node_count = self.node_count;
        let mut adjacency = Vec::with_capacity(self.id_bound());
        for (u, list) in self.adjacency.iter().enumerate() {
            if removed[u] {
                if present[u] {
                    present[u] = false;
                    node_count -= 1;
                }
                adjacency.push(Vec::new());
            } else {
                adjacency.push(
                    list.iter()
                        .copied()
                        .filter(|&(v, _)| !removed[v.0])
                        .collect::<Vec<_>>(),
                );
            }
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adjacency,
            present,
            meta: self.meta.clone(),
            node_count,
            edge_count,
        }
    }

    /// Attaches roles by label; unknown labels are returned.
    pub fn set_roles<'a>(
        &mut self,
        roles: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Vec<String> {
        let mut unknown = Vec::new();
        for (label, role) in roles {
            match self.meta.iter_mut().find(|m| m.label == label) {
                Some(m) => m.role = Some(role.to_string()),
                None => unknown.push(label.to_string()),
            }
        }
        unknown
    }

    /// SHA-256 over the structure (presence, edges, weights, labels).
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.id_bound() as u64).to_le_bytes());
        for (i, p) in self.present.iter().enumerate() {
            h.update([u8::from(*p)]);
            h.update(self.label(NodeId(i)).as_bytes());
            h.update([0]);
        }
        for (u, v, w) in self.edges() {
            h.update((u.0 as u64).to_le_bytes());
            h.update((v.0 as u64).to_le_bytes());
            h.update(w.to_bits().to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> WeightedGraph {
        WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(
            WeightedGraph::unweighted(2, &[(0, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(WeightedGraph::unweighted(2, &[(0, 1), (1, 0)]).is_err());
        assert!(WeightedGraph::unweighted(2, &[(0, 2)]).is_err());
        assert!(WeightedGraph::from_edges(2, &[(0, 1, 0.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, &[(0, 1, f64::NAN)]).is_err());
    }

    #[test]
    fn remove_nothing_is_identity() {
        let g = path4();
        assert_eq!(g.remove_nodes(&[]).unwrap(), g);
    }

    #[test]
    fn remove_keeps_ids_and_drops_edges() {
        let g = path4();
        let h = g.remove_nodes(&[NodeId(1)]).unwrap();
        assert_eq!(h.node_count(), 3);
        assert_eq!(h.edge_count(), 1);
        assert!(!h.contains(NodeId(1)));
        assert!(h.has_edge(NodeId(2), NodeId(3)));
        assert_eq!(h.degree(NodeId(0)), 0);
        // input untouched
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn remove_unknown_node_echoes_id() {
        let g = path4();
        let err = g.remove_nodes(&[NodeId(7)]).unwrap_err();
        assert!(err.to_string().contains('7'));
        let h = g.remove_nodes(&[NodeId(1)]).unwrap();
        assert!(matches!(
            h.remove_nodes(&[NodeId(1)]),
            Err(Error::UnknownNode(NodeId(1)))
        ));
    }

    #[test]
    fn remove_all_leaves_empty_graph() {
        let g = path4();
        let all: Vec<_> = g.nodes().collect();
        let h = g.remove_nodes(&all).unwrap();
        assert!(h.is_empty());
        assert_eq!(h.edge_count(), 0);
        assert_eq!(lcc_size(&h), 0);
    }

    #[test]
    fn digest_tracks_structure() {
        let g = path4();
        let d = g.digest();
        let h = g.remove_nodes(&[NodeId(3)]).unwrap();
        assert_ne!(h.digest(), d);
        assert_eq!(g.digest(), d);
        assert_eq!(g.remove_nodes(&[NodeId(3)]).unwrap().digest(), h.digest());
    }
}
