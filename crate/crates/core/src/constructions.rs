//! Generators: powers of paths and cycles, the extremal "two glued path
//! powers" graph, and seeded random subgraphs that keep a degree condition.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{
    conjecture_floors, first_bandwidth_violation, theorem_floors, ConjectureFloor, LabeledGraph,
    Params, TheoremCondition, Violation,
};

/// `P_n^k`: `ij` is an edge iff `0 < |i - j| <= k`.
pub fn power_path(n: usize, k: usize) -> LabeledGraph {
    power_path_on(n, 1, n, k)
}

// k-th power of the path first..=last, inside a graph on n vertices.
fn power_path_edges(first: usize, last: usize, k: usize) -> impl Iterator<Item = (usize, usize)> {
    (first..=last).flat_map(move |i| (i + 1..=last.min(i + k)).map(move |j| (i, j)))
}

fn power_path_on(n: usize, first: usize, last: usize, k: usize) -> LabeledGraph {
    LabeledGraph::from_edges(n, power_path_edges(first, last, k))
        .expect("power path edges are in range")
}

/// `C_n^k`: `ij` is an edge iff the cyclic distance of `i` and `j` is at most `k`.
pub fn power_cycle(n: usize, k: usize) -> Result<LabeledGraph> {
    if n < 3 || k == 0 || 2 * k > n {
        return Err(Error::ParamsOutOfRange(format!(
            "power_cycle needs n >= 3 and 1 <= k <= n/2, got n = {n}, k = {k}"
        )));
    }
    let edges = (1..=n).flat_map(|i| {
        (i + 1..=n)
            .filter(move |&j| (j - i).min(n - (j - i)) <= k)
            .map(move |j| (i, j))
    });
    LabeledGraph::from_edges(n, edges)
}

/// Union of the `k`-th powers of the paths `v_1 .. v_{k+l}` and
/// `v_{k+2} .. v_n`. The two ranges share the `l - 1` vertices
/// `v_{k+2} .. v_{k+l}`, which separate `v_1` from `v_n`.
///
/// For `l = 1` the ranges are disjoint and the graph is disconnected; the
/// construction is kept literal in that case.
pub fn extremal(n: usize, k: usize, l: usize) -> Result<LabeledGraph> {
    if l == 0 || k < l || n < 2 * k + l + 1 {
        return Err(Error::ParamsOutOfRange(format!(
            "extremal needs k >= l >= 1 and n >= 2k + l + 1, got n = {n}, k = {k}, l = {l}"
        )));
    }
    LabeledGraph::from_edges(
        n,
        power_path_edges(1, k + l, k).chain(power_path_edges(k + 2, n, k)),
    )
}

/// The constraint a random subgraph must keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleCondition {
    Theorem {
        params: Params,
        which: TheoremCondition,
    },
    Conjecture(ConjectureFloor),
}

impl SampleCondition {
    /// Per-vertex degree floors on `host`, after checking the host is a
    /// legitimate starting point.
    pub fn floors(&self, host: &LabeledGraph) -> Result<Vec<usize>> {
        match self {
            SampleCondition::Theorem { params, which } => {
                params.check_graph(host)?;
                if let Some((u, v)) = first_bandwidth_violation(host, params.k) {
                    return Err(Error::BandwidthViolated { u, v, k: params.k });
                }
                Ok(theorem_floors(params, *which))
            }
            SampleCondition::Conjecture(which) => Ok(conjecture_floors(host, *which)),
        }
    }
}

/// Visits the edges of `host` in a seeded random order and deletes each one
/// whose removal keeps both endpoints at or above their floor.
///
/// Fails with `HostFailsCondition` when `host` itself is below a floor.
pub fn greedy_delete(host: &LabeledGraph, floors: &[usize], seed: u64) -> Result<LabeledGraph> {
    assert_eq!(floors.len(), host.n());
    if let Some(v) = host.vertices().find(|&v| host.degree(v) < floors[v - 1]) {
        return Err(Error::HostFailsCondition(Violation {
            vertex: v,
            required: floors[v - 1],
            actual: host.degree(v),
        }));
    }
    let mut edges: Vec<(usize, usize)> = host.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);

    let mut deg = host.degrees();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); host.n()];
    for (u, v) in edges {
        if deg[u - 1] > floors[u - 1] && deg[v - 1] > floors[v - 1] {
            deg[u - 1] -= 1;
            deg[v - 1] -= 1;
        } else {
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(LabeledGraph::from_sorted_adjacency(adj))
}

/// Random spanning subgraph of `host` that still satisfies `condition`.
/// Deterministic in `seed`.
pub fn sample_condition_subgraph(
    host: &LabeledGraph,
    condition: &SampleCondition,
    seed: u64,
) -> Result<LabeledGraph> {
    let floors = condition.floors(host)?;
    greedy_delete(host, &floors, seed)
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    PowerPath {
        n: usize,
        k: usize,
    },
    PowerCycle {
        n: usize,
        k: usize,
    },
    Extremal {
        n: usize,
        k: usize,
        l: usize,
    },
    /// Host is `C_n^k` for the cycle-power floor and `P_n^k` otherwise.
    RandomSubgraph {
        n: usize,
        k: usize,
        condition: SampleCondition,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<LabeledGraph> {
        match *self {
            GeneratorSpec::PowerPath { n, k } => {
                if n == 0 || k == 0 {
                    return Err(Error::ParamsOutOfRange(format!(
                        "power_path needs n, k >= 1, got n = {n}, k = {k}"
                    )));
                }
                Ok(power_path(n, k))
            }
            GeneratorSpec::PowerCycle { n, k } => power_cycle(n, k),
            GeneratorSpec::Extremal { n, k, l } => extremal(n, k, l),
            GeneratorSpec::RandomSubgraph {
                n,
                k,
                condition,
                seed,
            } => {
                let host = match condition {
                    SampleCondition::Conjecture(ConjectureFloor::CyclePower { .. }) => {
                        power_cycle(n, k)?
                    }
                    _ => power_path(n, k),
                };
                sample_condition_subgraph(&host, &condition, seed)
            }
        }
    }
}
