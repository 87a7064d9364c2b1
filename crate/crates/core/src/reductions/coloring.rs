use std::collections::BTreeSet;

use super::ReductionError;
use crate::graph::{PartiteGraph, VertexId};

/// Graph k-colorability instance over vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringInstance {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    k: usize,
}

impl ColoringInstance {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)], k: usize) -> Result<Self, ReductionError> {
        if k == 0 {
            return Err(ReductionError::Coloring("k must be at least 1"));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(ReductionError::Coloring("self loop"));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(ReductionError::Coloring("edge endpoint out of range"));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { vertex_count, edges: set, k })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_proper(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertex_count
            && colors.iter().all(|&c| c < self.k)
            && self.edges.iter().all(|&(u, v)| colors[u] != colors[v])
    }
}

/// One group of `k` vertices per original vertex; vertex `i·k + c` means
/// "vertex `i` gets color `c`". Two picks from different groups are adjacent
/// unless their original vertices are adjacent and share a color.
pub fn coloring_to_partite(c: &ColoringInstance) -> Result<PartiteGraph, ReductionError> {
    let k = c.k;
    let sizes = vec![k; c.vertex_count];
    let split = |v: VertexId| (v as usize / k, v as usize % k);
    Ok(PartiteGraph::from_fn(&sizes, |u, v| {
        let ((i, ci), (j, cj)) = (split(u), split(v));
        !c.has_edge(i, j) || ci != cj
    })?)
}
