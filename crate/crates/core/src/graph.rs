//! Labelled graphs and the degree conditions stated relative to a bandwidth
//! labelling.
//!
//! Vertices are the integers `1..=n`; a vertex's index *is* its position in
//! the labelling, so "to the left of" means "smaller index". Graphs are
//! immutable once built.

use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph on `1..=n` with sorted neighbour lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    // adj[v - 1] holds the neighbours of v in increasing order.
    adj: Vec<Vec<usize>>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(LabeledGraph { n, adj })
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        LabeledGraph { n: adj.len(), adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbours of `v` in increasing order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return false;
        }
        self.adj[u - 1].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, list)| {
            let u = i + 1;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// First edge of `self` missing from `host`, if any. Both graphs must
    /// have the same vertex count for `self` to be a spanning subgraph.
    pub fn first_edge_not_in(&self, host: &LabeledGraph) -> Option<(usize, usize)> {
        self.edges().find(|&(u, v)| !host.has_edge(u, v))
    }

    pub fn is_spanning_subgraph_of(&self, host: &LabeledGraph) -> bool {
        self.n == host.n && self.first_edge_not_in(host).is_none()
    }

    /// Applies `perm` (a permutation of `1..=n`, given as `perm[v - 1]` = new
    /// label of `v`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        assert_eq!(perm.len(), self.n, "permutation length");
        LabeledGraph::from_edges(
            self.n,
            self.edges().map(|(u, v)| (perm[u - 1], perm[v - 1])),
        )
    }

    /// Copy with the listed edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        LabeledGraph::from_edges(self.n, self.edges().chain(extra))
    }

    /// Copy with the listed edges removed (absent edges are ignored).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Self {
        let drop = |u: usize, v: usize| {
            removed
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
        };
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, list)| list.iter().copied().filter(|&v| !drop(i + 1, v)).collect())
            .collect();
        LabeledGraph { n: self.n, adj }
    }

    /// Adjacency as 0-based bitmasks; only valid for `n <= 64`.
    pub(crate) fn bitmasks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect()
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `(n, k, l)`: vertex count, bandwidth bound and branch count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl Params {
    /// Validates `k >= l >= 1` and `n >= l + 2`.
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if l == 0 || k < l {
            return Err(Error::InvalidParams(format!(
                "need k >= l >= 1, got k = {k}, l = {l}"
            )));
        }
        if n < l + 2 {
            return Err(Error::InvalidParams(format!(
                "need n >= l + 2, got n = {n}, l = {l}"
            )));
        }
        Ok(Params { n, k, l })
    }

    pub(crate) fn check_graph(&self, g: &LabeledGraph) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::ParamsMismatch(format!(
                "graph has {} vertices, parameters say n = {}",
                g.n(),
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={}, l={})", self.n, self.k, self.l)
    }
}

/// Which per-vertex degree floor a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionName {
    /// `deg(v_i) >= min{k + l, deg_{P_n^k}(v_i)}`.
    General,
    /// `deg(v_i) >= min{l + i - 1, k + l, k + n - i}`.
    DegSeq,
    /// `deg(v) >= k + 1` inside `C_n^k`.
    CyclePower,
    /// `deg(v) >= ceil(deg_host(v) / 2) + 2`.
    HalfPlusTwo,
}

impl fmt::Display for ConditionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionName::General => "general",
            ConditionName::DegSeq => "deg_seq",
            ConditionName::CyclePower => "cycle_power",
            ConditionName::HalfPlusTwo => "half_plus_two",
        })
    }
}

/// A vertex whose degree is below its floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub vertex: usize,
    pub required: usize,
    pub actual: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v_{} has degree {} < {}",
            self.vertex, self.actual, self.required
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: ConditionName,
    /// Smallest failing vertex; `None` iff the condition holds.
    pub first_violation: Option<Violation>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }

    fn from_floors(g: &LabeledGraph, floors: &[usize], condition: ConditionName) -> Self {
        let first_violation = g
            .vertices()
            .zip(floors)
            .find(|&(v, &req)| g.degree(v) < req)
            .map(|(vertex, &required)| Violation {
                vertex,
                required,
                actual: g.degree(vertex),
            });
        ConditionReport {
            condition,
            first_violation,
        }
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_violation {
            None => write!(f, "{} passed", self.condition),
            Some(v) => write!(
                f,
                "{} failed vertex {} required {} actual {}",
                self.condition, v.vertex, v.required, v.actual
            ),
        }
    }
}

/// Degree of `v_i` in `P_n^k`.
#[inline]
pub fn power_path_degree(n: usize, k: usize, i: usize) -> usize {
    (i - 1).min(k) + (n - i).min(k)
}

/// True iff every edge `ij` satisfies `|i - j| <= k`.
pub fn bandwidth_witness_ok(g: &LabeledGraph, k: usize) -> bool {
    first_bandwidth_violation(g, k).is_none()
}

pub(crate) fn first_bandwidth_violation(g: &LabeledGraph, k: usize) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| v - u > k)
}

/// Largest `l` with `deg_g(v) >= min{l, deg_h(v)}` for every `v`, capped at
/// `Δ(h)`.
pub fn effective_min_degree(g: &LabeledGraph, h: &LabeledGraph) -> Result<usize> {
    ensure_spanning_subgraph(g, h)?;
    let value = g
        .vertices()
        .filter(|&v| g.degree(v) < h.degree(v))
        .map(|v| g.degree(v))
        .min()
        .unwrap_or(usize::MAX);
    Ok(value.min(h.max_degree()))
}

fn ensure_spanning_subgraph(g: &LabeledGraph, h: &LabeledGraph) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::ParamsMismatch(format!(
            "subgraph has {} vertices, host has {}",
            g.n(),
            h.n()
        )));
    }
    match g.first_edge_not_in(h) {
        Some((u, v)) => Err(Error::NotSubgraph { u, v }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremCondition {
    /// Effective minimum degree `k + l` against `P_n^k`.
    General,
    /// The degree-sequence condition.
    DegSeq,
}

impl TheoremCondition {
    pub fn name(self) -> ConditionName {
        match self {
            TheoremCondition::General => ConditionName::General,
            TheoremCondition::DegSeq => ConditionName::DegSeq,
        }
    }
}

/// Per-vertex floors (index `i - 1` for `v_i`).
pub fn theorem_floors(p: &Params, which: TheoremCondition) -> Vec<usize> {
    let Params { n, k, l } = *p;
    (1..=n)
        .map(|i| match which {
            TheoremCondition::General => (k + l).min(power_path_degree(n, k, i)),
            TheoremCondition::DegSeq => (l + i - 1).min(k + l).min(k + n - i),
        })
        .collect()
}

pub fn check_theorem_condition(
    g: &LabeledGraph,
    p: &Params,
    which: TheoremCondition,
) -> Result<ConditionReport> {
    p.check_graph(g)?;
    if let Some((u, v)) = first_bandwidth_violation(g, p.k) {
        return Err(Error::BandwidthViolated { u, v, k: p.k });
    }
    Ok(ConditionReport::from_floors(
        g,
        &theorem_floors(p, which),
        which.name(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjectureFloor {
    /// Minimum degree `k + 1`, host `C_n^k`.
    CyclePower { k: usize },
    /// `ceil(deg_host(v) / 2) + 2`, host `P_n^k`.
    HalfPlusTwo,
}

impl ConjectureFloor {
    pub fn name(self) -> ConditionName {
        match self {
            ConjectureFloor::CyclePower { .. } => ConditionName::CyclePower,
            ConjectureFloor::HalfPlusTwo => ConditionName::HalfPlusTwo,
        }
    }
}

pub fn conjecture_floors(host: &LabeledGraph, which: ConjectureFloor) -> Vec<usize> {
    host.vertices()
        .map(|v| match which {
            ConjectureFloor::CyclePower { k } => k + 1,
            ConjectureFloor::HalfPlusTwo => host.degree(v).div_ceil(2) + 2,
        })
        .collect()
}

pub fn check_conjecture_floor(
    g: &LabeledGraph,
    host: &LabeledGraph,
    which: ConjectureFloor,
) -> Result<ConditionReport> {
    ensure_spanning_subgraph(g, host)?;
    Ok(ConditionReport::from_floors(
        g,
        &conjecture_floors(host, which),
        which.name(),
    ))
}
