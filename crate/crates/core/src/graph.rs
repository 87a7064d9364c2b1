//! Partite graph data model shared by every solver and reduction.
//!
//! A partite graph has `n` disjoint vertex groups and edges only between
//! distinct groups. Vertex ids are dense integers `0..total` and every vertex
//! knows its group and its slot inside that group, so "group-then-vertex"
//! order is simply `(group_of(v), slot_of(v))`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

pub type VertexId = u32;

/// Non-negative arbitrary-precision edge weight.
pub type Weight = BigUint;

/// A single broken invariant found by [`validate_partite`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoGroups,
    EmptyGroup { group: usize },
    GroupTooLarge { group: usize, size: usize, limit: usize },
    DuplicateId { id: VertexId },
    IdOutOfRange { id: VertexId, total: usize },
    UnknownEndpoint { u: VertexId, v: VertexId },
    SelfLoop { id: VertexId },
    IntraGroupEdge { u: VertexId, v: VertexId, group: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoGroups => write!(f, "graph has no groups"),
            Violation::EmptyGroup { group } => write!(f, "empty group {group}"),
            Violation::GroupTooLarge { group, size, limit } => {
                write!(f, "group {group} has {size} vertices, limit is {limit}")
            }
            Violation::DuplicateId { id } => write!(f, "duplicate id {id}"),
            Violation::IdOutOfRange { id, total } => {
                write!(f, "id {id} outside the dense range 0..{total}")
            }
            Violation::UnknownEndpoint { u, v } => {
                write!(f, "edge {{{u},{v}}} references an unknown vertex")
            }
            Violation::SelfLoop { id } => write!(f, "self loop on {id}"),
            Violation::IntraGroupEdge { u, v, group } => {
                write!(f, "intra-group edge {{{u},{v}}} inside group {group}")
            }
        }
    }
}

/// Outcome of [`validate_partite`]: ok iff `violations` is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid partite graph: {0}")]
    Invalid(ValidationReport),
    #[error("assignment covers {found} groups, graph has {expected}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("vertex {vertex} picked for group {group} does not belong to it")]
    PickOutsideGroup { group: usize, vertex: VertexId },
    #[error("assignment leaves group {group} unpicked")]
    IncompleteAssignment { group: usize },
    #[error("no weight given for pair {{{u},{v}}}")]
    MissingWeight { u: VertexId, v: VertexId },
    #[error("pair {{{u},{v}}} weighted more than once")]
    DuplicateWeight { u: VertexId, v: VertexId },
    #[error("weight given for {{{u},{v}}}, which is not an inter-group pair")]
    NotInterGroupPair { u: VertexId, v: VertexId },
}

/// Checks every partite-graph invariant and reports all violations at once.
///
/// `limit` is the declared `m`; `None` skips the group-size check.
pub fn validate_partite(
    groups: &[Vec<VertexId>],
    edges: &[(VertexId, VertexId)],
    limit: Option<usize>,
) -> ValidationReport {
    let mut violations = Vec::new();
    if groups.is_empty() {
        violations.push(Violation::NoGroups);
    }
    let total: usize = groups.iter().map(Vec::len).sum();
    let mut owner: Vec<Option<usize>> = vec![None; total];
    let mut reported_dup = BTreeSet::new();
    for (g, members) in groups.iter().enumerate() {
        if members.is_empty() {
            violations.push(Violation::EmptyGroup { group: g });
        }
        if let Some(limit) = limit {
            if members.len() > limit {
                violations.push(Violation::GroupTooLarge { group: g, size: members.len(), limit });
            }
        }
        for &id in members {
            match owner.get_mut(id as usize) {
                None => violations.push(Violation::IdOutOfRange { id, total }),
                Some(slot @ None) => *slot = Some(g),
                Some(Some(_)) => {
                    if reported_dup.insert(id) {
                        violations.push(Violation::DuplicateId { id });
                    }
                }
            }
        }
    }
    for &(u, v) in edges {
        if u == v {
            violations.push(Violation::SelfLoop { id: u });
            continue;
        }
        let gu = owner.get(u as usize).copied().flatten();
        let gv = owner.get(v as usize).copied().flatten();
        match (gu, gv) {
            (Some(a), Some(b)) if a == b => {
                let (u, v) = (u.min(v), u.max(v));
                violations.push(Violation::IntraGroupEdge { u, v, group: a });
            }
            (Some(_), Some(_)) => {}
            _ => violations.push(Violation::UnknownEndpoint { u, v }),
        }
    }
    ValidationReport { violations }
}

/// An `n,m`-partite graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteGraph {
    groups: Vec<Vec<VertexId>>,
    group_of: Vec<usize>,
    slot_of: Vec<usize>,
    // sorted (min, max) pairs
    edges: Vec<(VertexId, VertexId)>,
    // bit rows for O(1) membership
    adjacency: Vec<Vec<u64>>,
}

impl PartiteGraph {
    pub fn new(groups: Vec<Vec<VertexId>>, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::with_limit(groups, edges, None)
    }

    /// Like [`PartiteGraph::new`] but also enforces a declared group-size limit `m`.
    pub fn with_limit(
        groups: Vec<Vec<VertexId>>,
        edges: &[(VertexId, VertexId)],
        limit: Option<usize>,
    ) -> Result<Self, GraphError> {
        let report = validate_partite(&groups, edges, limit);
        if !report.is_ok() {
            return Err(GraphError::Invalid(report));
        }
        let total: usize = groups.iter().map(Vec::len).sum();
        let mut group_of = vec![0; total];
        let mut slot_of = vec![0; total];
        for (g, members) in groups.iter().enumerate() {
            for (s, &id) in members.iter().enumerate() {
                group_of[id as usize] = g;
                slot_of[id as usize] = s;
            }
        }
        let words = total.div_ceil(64);
        let mut adjacency = vec![vec![0u64; words]; total];
        let mut sorted: Vec<(VertexId, VertexId)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        sorted.sort_unstable();
        sorted.dedup();
        for &(u, v) in &sorted {
            adjacency[u as usize][v as usize / 64] |= 1 << (v % 64);
            adjacency[v as usize][u as usize / 64] |= 1 << (u % 64);
        }
        Ok(Self { groups, group_of, slot_of, edges: sorted, adjacency })
    }

    /// Builds a graph with group-major dense ids and an edge for every
    /// inter-group pair accepted by `connect`.
    pub fn from_fn(sizes: &[usize], mut connect: impl FnMut(VertexId, VertexId) -> bool) -> Result<Self, GraphError> {
        let groups = dense_groups(sizes);
        let mut edges = Vec::new();
        for (gi, a) in groups.iter().enumerate() {
            for b in &groups[gi + 1..] {
                for &u in a {
                    for &v in b {
                        if connect(u, v) {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        Self::new(groups, &edges)
    }

    pub fn complete(sizes: &[usize]) -> Result<Self, GraphError> {
        Self::from_fn(sizes, |_, _| true)
    }

    /// Number of groups `n`.
    pub fn n(&self) -> usize {
        self.groups.len()
    }

    /// Largest group size `m`.
    pub fn m(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.group_of.len()
    }

    pub fn groups(&self) -> &[Vec<VertexId>] {
        &self.groups
    }

    pub fn group(&self, g: usize) -> &[VertexId] {
        &self.groups[g]
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn group_of(&self, v: VertexId) -> usize {
        self.group_of[v as usize]
    }

    pub fn slot_of(&self, v: VertexId) -> usize {
        self.slot_of[v as usize]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.vertex_count()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if !self.contains(u) || !self.contains(v) {
            return false;
        }
        self.adjacency[u as usize][v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn is_complete(&self) -> bool {
        let total = self.vertex_count();
        let within: usize = self.groups.iter().map(|g| g.len() * (g.len() - 1) / 2).sum();
        self.edges.len() == total * (total - 1) / 2 - within
    }

    /// Pairs of vertices in distinct groups, ordered by (u, v) with u < v.
    pub fn cross_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let total = self.vertex_count() as VertexId;
        (0..total).flat_map(move |u| {
            (u + 1..total).filter(move |&v| self.group_of(u) != self.group_of(v)).map(move |v| (u, v))
        })
    }
}

pub(crate) fn dense_groups(sizes: &[usize]) -> Vec<Vec<VertexId>> {
    let mut next = 0;
    sizes
        .iter()
        .map(|&s| {
            let g = (next..next + s as VertexId).collect();
            next += s as VertexId;
            g
        })
        .collect()
}

/// Partial map from group index to the vertex picked from that group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    picks: Vec<Option<VertexId>>,
}

impl Assignment {
    pub fn empty(n: usize) -> Self {
        Self { picks: vec![None; n] }
    }

    pub fn from_picks(picks: Vec<Option<VertexId>>) -> Self {
        Self { picks }
    }

    /// One pick per group, in group order.
    pub fn full(picks: impl IntoIterator<Item = VertexId>) -> Self {
        Self { picks: picks.into_iter().map(Some).collect() }
    }

    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn pick(&self, group: usize) -> Option<VertexId> {
        self.picks.get(group).copied().flatten()
    }

    pub fn set(&mut self, group: usize, v: Option<VertexId>) {
        self.picks[group] = v;
    }

    pub fn picks(&self) -> &[Option<VertexId>] {
        &self.picks
    }

    /// Picked vertices in group order.
    pub fn picked(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.picks.iter().flatten().copied()
    }

    pub fn picked_count(&self) -> usize {
        self.picks.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.picks.iter().all(Option::is_some)
    }

    /// Verifies length and that every pick lies in its own group.
    pub fn check(&self, g: &PartiteGraph) -> Result<(), GraphError> {
        if self.picks.len() != g.n() {
            return Err(GraphError::AssignmentLength { expected: g.n(), found: self.picks.len() });
        }
        for (group, pick) in self.picks.iter().enumerate() {
            if let Some(v) = *pick {
                if !g.contains(v) || g.group_of(v) != group {
                    return Err(GraphError::PickOutsideGroup { group, vertex: v });
                }
            }
        }
        Ok(())
    }

    fn require_complete(&self) -> Result<(), GraphError> {
        match self.picks.iter().position(Option::is_none) {
            Some(group) => Err(GraphError::IncompleteAssignment { group }),
            None => Ok(()),
        }
    }
}

/// True iff `a` picks one vertex from every group and all picks are pairwise adjacent.
pub fn is_clique(g: &PartiteGraph, a: &Assignment) -> Result<bool, GraphError> {
    a.check(g)?;
    if !a.is_complete() {
        return Ok(false);
    }
    Ok(are_pairwise_adjacent(g, a))
}

/// True iff the picked vertices (ignoring unpicked groups) are pairwise adjacent.
pub fn are_pairwise_adjacent(g: &PartiteGraph, a: &Assignment) -> bool {
    let picked: Vec<VertexId> = a.picked().collect();
    picked.iter().enumerate().all(|(i, &u)| picked[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Complete `n,m`-partite graph with a non-negative weight on every inter-group pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPartiteGraph {
    base: PartiteGraph,
    // row-major total x total; intra-group cells stay zero
    weights: Vec<Weight>,
}

impl WeightedPartiteGraph {
    /// Builds from explicit `(u, v, w)` triples; every inter-group pair must
    /// appear exactly once.
    pub fn from_weights(
        groups: Vec<Vec<VertexId>>,
        weights: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
    ) -> Result<Self, GraphError> {
        let probe = PartiteGraph::new(groups.clone(), &[])?;
        let total = probe.vertex_count();
        let mut cells: Vec<Option<Weight>> = vec![None; total * total];
        for (u, v, w) in weights {
            if !probe.contains(u) || !probe.contains(v) || probe.group_of(u) == probe.group_of(v) {
                return Err(GraphError::NotInterGroupPair { u, v });
            }
            let (a, b) = (u.min(v) as usize, u.max(v) as usize);
            if cells[a * total + b].is_some() {
                return Err(GraphError::DuplicateWeight { u: a as VertexId, v: b as VertexId });
            }
            cells[a * total + b] = Some(w);
        }
        let mut dense = vec![Weight::zero(); total * total];
        for (u, v) in probe.cross_pairs() {
            let (a, b) = (u as usize, v as usize);
            let w = cells[a * total + b].take().ok_or(GraphError::MissingWeight { u, v })?;
            dense[b * total + a] = w.clone();
            dense[a * total + b] = w;
        }
        let all: Vec<_> = probe.cross_pairs().collect();
        let base = PartiteGraph::new(groups, &all)?;
        Ok(Self { base, weights: dense })
    }

    /// Complete graph over group-major dense ids with `weight(u, v)` on each inter-group pair.
    pub fn from_fn(sizes: &[usize], mut weight: impl FnMut(VertexId, VertexId) -> Weight) -> Result<Self, GraphError> {
        let base = PartiteGraph::complete(sizes)?;
        let total = base.vertex_count();
        let mut weights = vec![Weight::zero(); total * total];
        for (u, v) in base.cross_pairs() {
            let w = weight(u, v);
            weights[v as usize * total + u as usize] = w.clone();
            weights[u as usize * total + v as usize] = w;
        }
        Ok(Self { base, weights })
    }

    pub fn base(&self) -> &PartiteGraph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Weight of the inter-group pair `{u, v}`; `None` for same-group or unknown vertices.
    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<&Weight> {
        if !self.base.contains(u) || !self.base.contains(v) || self.base.group_of(u) == self.base.group_of(v) {
            return None;
        }
        Some(&self.weights[u as usize * self.base.vertex_count() + v as usize])
    }

    pub(crate) fn w(&self, u: VertexId, v: VertexId) -> &Weight {
        &self.weights[u as usize * self.base.vertex_count() + v as usize]
    }

    /// All `(u, v, w)` with `u < v` in distinct groups.
    pub fn weighted_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId, &Weight)> + '_ {
        self.base.cross_pairs().map(move |(u, v)| (u, v, self.w(u, v)))
    }
}

/// Sum of weights over all picked pairs of a complete assignment.
pub fn clique_weight(g: &WeightedPartiteGraph, a: &Assignment) -> Result<Weight, GraphError> {
    a.check(g.base())?;
    a.require_complete()?;
    let picked: Vec<VertexId> = a.picked().collect();
    let mut total = Weight::zero();
    for (i, &u) in picked.iter().enumerate() {
        for &v in &picked[i + 1..] {
            total += g.w(u, v);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: u64) -> Weight {
        Weight::from(x)
    }

    #[test]
    fn smallest_legal_graph_validates() {
        assert!(validate_partite(&[vec![0], vec![1]], &[(0, 1)], None).is_ok());
    }

    #[test]
    fn intra_group_edge_is_reported() {
        let r = validate_partite(&[vec![0, 1]], &[(0, 1)], None);
        assert_eq!(r.violations, vec![Violation::IntraGroupEdge { u: 0, v: 1, group: 0 }]);
        assert!(r.to_string().contains("intra-group edge"));
    }

    #[test]
    fn duplicate_id_is_reported() {
        let r = validate_partite(&[vec![0, 1], vec![1]], &[], None);
        assert!(r.violations.contains(&Violation::DuplicateId { id: 1 }));
        assert!(r.to_string().contains("duplicate id"));
    }

    #[test]
    fn all_violations_listed_together() {
        let r = validate_partite(&[vec![0, 7], vec![]], &[(0, 0), (0, 9)], Some(1));
        assert!(r.violations.contains(&Violation::EmptyGroup { group: 1 }));
        assert!(r.violations.contains(&Violation::GroupTooLarge { group: 0, size: 2, limit: 1 }));
        assert!(r.violations.contains(&Violation::IdOutOfRange { id: 7, total: 2 }));
        assert!(r.violations.contains(&Violation::SelfLoop { id: 0 }));
        assert!(r.violations.contains(&Violation::UnknownEndpoint { u: 0, v: 9 }));
        assert_eq!(validate_partite(&[], &[], None).violations, vec![Violation::NoGroups]);
    }

    #[test]
    fn clique_checks() {
        let complete = PartiteGraph::complete(&[1, 1]).unwrap();
        assert!(is_clique(&complete, &Assignment::full([0, 1])).unwrap());
        let empty = PartiteGraph::new(vec![vec![0], vec![1]], &[]).unwrap();
        assert!(!is_clique(&empty, &Assignment::full([0, 1])).unwrap());
        assert!(!is_clique(&complete, &Assignment::from_picks(vec![Some(0), None])).unwrap());
    }

    #[test]
    fn pick_outside_group_is_an_error() {
        let g = PartiteGraph::complete(&[2, 2]).unwrap();
        assert_eq!(is_clique(&g, &Assignment::full([2, 0])), Err(GraphError::PickOutsideGroup { group: 0, vertex: 2 }));
        assert!(matches!(is_clique(&g, &Assignment::full([0])), Err(GraphError::AssignmentLength { .. })));
    }

    #[test]
    fn edge_storage_is_canonical() {
        let g = PartiteGraph::new(vec![vec![0, 1], vec![2]], &[(2, 0), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert!(g.has_edge(2, 1) && g.has_edge(0, 2) && !g.has_edge(0, 1));
        assert!(g.is_complete());
        assert_eq!((g.n(), g.m(), g.group_of(2), g.slot_of(1)), (2, 2, 1, 1));
    }

    #[test]
    fn clique_weight_sums_picked_pairs() {
        let g = WeightedPartiteGraph::from_fn(&[1, 1], |_, _| w(5)).unwrap();
        assert_eq!(clique_weight(&g, &Assignment::full([0, 1])).unwrap(), w(5));

        let zero = WeightedPartiteGraph::from_fn(&[2, 2, 2], |_, _| w(0)).unwrap();
        assert_eq!(clique_weight(&zero, &Assignment::full([0, 2, 4])).unwrap(), w(0));

        let g = WeightedPartiteGraph::from_weights(
            vec![vec![0], vec![1], vec![2]],
            [(0, 1, w(1)), (0, 2, w(2)), (2, 1, w(4))],
        )
        .unwrap();
        assert_eq!(clique_weight(&g, &Assignment::full([0, 1, 2])).unwrap(), w(7));
    }

    #[test]
    fn clique_weight_rejects_partial_assignment() {
        let g = WeightedPartiteGraph::from_fn(&[1, 1, 1], |_, _| w(1)).unwrap();
        assert_eq!(
            clique_weight(&g, &Assignment::from_picks(vec![Some(0), None, Some(2)])),
            Err(GraphError::IncompleteAssignment { group: 1 })
        );
    }

    #[test]
    fn weight_map_must_be_complete_and_unique() {
        let groups = vec![vec![0], vec![1], vec![2]];
        assert_eq!(
            WeightedPartiteGraph::from_weights(groups.clone(), [(0, 1, w(1)), (0, 2, w(1))]),
            Err(GraphError::MissingWeight { u: 1, v: 2 })
        );
        assert_eq!(
            WeightedPartiteGraph::from_weights(groups.clone(), [(0, 1, w(1)), (1, 0, w(1))]),
            Err(GraphError::DuplicateWeight { u: 0, v: 1 })
        );
        assert!(matches!(
            WeightedPartiteGraph::from_weights(vec![vec![0, 1]], [(0, 1, w(1))]),
            Err(GraphError::NotInterGroupPair { .. })
        ));
    }

    #[test]
    fn big_weights_do_not_overflow() {
        let huge: Weight = Weight::from(1u8) << 200;
        let g = WeightedPartiteGraph::from_fn(&[1, 1, 1], |_, _| huge.clone()).unwrap();
        assert_eq!(clique_weight(&g, &Assignment::full([0, 1, 2])).unwrap(), huge * 3u8);
    }
}
