//! Greedy construction of a spanning `K_{2,l}` subdivision rooted at `v_1`
//! and `v_n`.
//!
//! `l` oriented paths start at `v_1` and at the `l - 1` leftmost neighbours
//! of `v_1`. At every step the path whose endpoint is leftmost among the
//! paths still growing either extends to the leftmost uncovered neighbour of
//! that endpoint, or crashes if it has none. When the degree-sequence
//! condition holds, the paths crash exactly at `v_{n-l+1} .. v_n` and cover
//! every vertex, and joining their endpoints to `v_n` (and their startpoints
//! to `v_1`) gives the subdivision.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Params};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedPath {
    vertices: Vec<usize>,
    crashed_at: Option<usize>,
}

impl OrientedPath {
    fn start(v: usize) -> Self {
        OrientedPath {
            vertices: vec![v],
            crashed_at: None,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn startpoint(&self) -> usize {
        self.vertices[0]
    }

    pub fn endpoint(&self) -> usize {
        *self.vertices.last().expect("paths are never empty")
    }

    pub fn crashed_at(&self) -> Option<usize> {
        self.crashed_at
    }
}

/// The `l` vertex-disjoint paths at termination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    pub paths: Vec<OrientedPath>,
    pub params: Params,
}

impl PathSystem {
    /// Vertices covered by some path, as a 1-based membership vector
    /// (index 0 unused).
    pub fn covered(&self) -> Vec<bool> {
        let mut covered = vec![false; self.params.n + 1];
        for v in self.paths.iter().flat_map(|p| &p.vertices) {
            covered[*v] = true;
        }
        covered
    }

    pub fn crash_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.paths.iter().filter_map(|p| p.crashed_at).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAction {
    Extend { to: usize },
    Crash,
}

/// One iteration of the main loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub t: usize,
    /// Path index `j` (0-based) that moved.
    pub path: usize,
    pub endpoint: usize,
    pub action: StepAction,
    /// Endpoints of the growing paths before this step, leftmost first.
    pub order: Vec<usize>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.action {
            StepAction::Extend { to } => {
                write!(
                    f,
                    "step {} endpoint {} extend {}",
                    self.t, self.endpoint, to
                )
            }
            StepAction::Crash => write!(f, "step {} crash {}", self.t, self.endpoint),
        }
    }
}

/// Startpoints: `v_1` followed by the `l - 1` leftmost neighbours of `v_1`.
pub fn startpoints(g: &LabeledGraph, p: &Params) -> Result<Vec<usize>> {
    p.check_graph(g)?;
    let nbrs = g.neighbors(1);
    if nbrs.len() < p.l {
        return Err(Error::RootDegreeTooSmall {
            degree: nbrs.len(),
            required: p.l,
        });
    }
    Ok(std::iter::once(1)
        .chain(nbrs[..p.l - 1].iter().copied())
        .collect())
}

fn drive(g: &LabeledGraph, p: &Params, mut on_step: impl FnMut(Step)) -> Result<PathSystem> {
    let starts = startpoints(g, p)?;
    let mut covered = vec![false; p.n + 1];
    for &s in &starts {
        covered[s] = true;
    }
    let mut paths: Vec<OrientedPath> = starts.into_iter().map(OrientedPath::start).collect();
    let mut covered_count = paths.len();
    let mut crashed_count = 0;

    let mut t = 0;
    while crashed_count < paths.len() {
        t += 1;
        let mut order: Vec<(usize, usize)> = paths
            .iter()
            .enumerate()
            .filter(|(_, path)| path.crashed_at.is_none())
            .map(|(j, path)| (path.endpoint(), j))
            .collect();
        order.sort_unstable();
        debug_assert!(
            order.windows(2).all(|w| w[0].0 < w[1].0),
            "endpoints are distinct"
        );
        let (v, j) = order[0];

        let next = g.neighbors(v).iter().copied().find(|&w| !covered[w]);
        let action = match next {
            Some(w) => {
                covered[w] = true;
                covered_count += 1;
                paths[j].vertices.push(w);
                StepAction::Extend { to: w }
            }
            None => {
                paths[j].crashed_at = Some(v);
                crashed_count += 1;
                StepAction::Crash
            }
        };
        on_step(Step {
            t,
            path: j,
            endpoint: v,
            action,
            order: order.into_iter().map(|(v, _)| v).collect(),
        });
    }
    debug_assert!(covered_count <= p.n);
    Ok(PathSystem { paths, params: *p })
}

/// Runs the greedy loop to termination. Requires only `deg(v_1) >= l`; the
/// bandwidth witness and degree condition matter for the outcome, not for
/// running it.
pub fn run_algorithm(g: &LabeledGraph, p: &Params) -> Result<PathSystem> {
    drive(g, p, |_| {})
}

/// Same as [`run_algorithm`] but also returns one record per iteration.
pub fn replay_trace(g: &LabeledGraph, p: &Params) -> Result<(Vec<Step>, PathSystem)> {
    let mut steps = Vec::new();
    // Progress measure: every step either crashes a path that was still
    // growing or covers a vertex for the first time.
    let mut covered = vec![false; p.n + 1];
    for s in startpoints(g, p)? {
        covered[s] = true;
    }
    let mut crashed = Vec::new();
    let ps = drive(g, p, |step| {
        match step.action {
            StepAction::Extend { to } => {
                assert!(!covered[to], "vertex {to} covered twice");
                covered[to] = true;
            }
            StepAction::Crash => {
                assert!(
                    !crashed.contains(&step.path),
                    "path {} crashed twice",
                    step.path
                );
                crashed.push(step.path);
            }
        }
        steps.push(step);
    })?;
    Ok((steps, ps))
}

/// Rebuilds the path system from its startpoints and a step log.
pub fn replay(starts: &[usize], steps: &[Step], p: &Params) -> PathSystem {
    let mut paths: Vec<OrientedPath> = starts.iter().copied().map(OrientedPath::start).collect();
    for step in steps {
        let path = &mut paths[step.path];
        assert_eq!(
            path.endpoint(),
            step.endpoint,
            "log does not match path state"
        );
        match step.action {
            StepAction::Extend { to } => path.vertices.push(to),
            StepAction::Crash => path.crashed_at = Some(step.endpoint),
        }
    }
    PathSystem { paths, params: *p }
}

/// `l` internally disjoint branches from `roots.0` to `roots.1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedSubdivision {
    pub roots: (usize, usize),
    pub branches: Vec<Vec<usize>>,
}

impl RootedSubdivision {
    /// Sorts branches by their second vertex.
    pub fn canonicalize(&mut self) {
        self.branches.sort_by_key(|b| b.get(1).copied());
    }

    /// For two branches, the cycle that runs out along the first and back
    /// along the second.
    pub fn as_cycle(&self) -> Option<Vec<usize>> {
        match self.branches.as_slice() {
            [a, b] => {
                let mut cycle = a.clone();
                cycle.extend(b.iter().rev().skip(1).take(b.len().saturating_sub(2)));
                Some(cycle)
            }
            _ => None,
        }
    }
}

/// Joins each path to `v_1` at its start and to `v_n` at its end.
pub fn assemble(g: &LabeledGraph, p: &Params, ps: &PathSystem) -> Result<RootedSubdivision> {
    p.check_graph(g)?;
    if ps.params != *p {
        return Err(Error::ParamsMismatch(format!(
            "path system built for {}, assembling for {}",
            ps.params, p
        )));
    }
    let n = p.n;
    let covered = ps.covered();
    if let Some(vertex) = (1..=n).find(|&v| !covered[v]) {
        return Err(Error::CoverageGap { vertex });
    }
    if !ps.paths.iter().any(|path| path.endpoint() == n) {
        return Err(Error::LastVertexNotEndpoint);
    }
    let mut branches = Vec::with_capacity(ps.paths.len());
    for path in &ps.paths {
        let mut branch = Vec::with_capacity(path.vertices.len() + 2);
        if path.startpoint() != 1 {
            debug_assert!(g.has_edge(1, path.startpoint()));
            branch.push(1);
        }
        branch.extend_from_slice(&path.vertices);
        let end = path.endpoint();
        if end != n {
            if !g.has_edge(end, n) {
                return Err(Error::EndpointNotAdjacentToLastVertex { endpoint: end });
            }
            branch.push(n);
        }
        branches.push(branch);
    }
    Ok(RootedSubdivision {
        roots: (1, n),
        branches,
    })
}

/// Runs the algorithm and assembles in one go.
pub fn build_subdivision(g: &LabeledGraph, p: &Params) -> Result<RootedSubdivision> {
    let ps = run_algorithm(g, p)?;
    assemble(g, p, &ps)
}

/// Hamilton path from `v_1` to `v_n` via the `l = 1` case.
pub fn hamilton_path(g: &LabeledGraph, p: &Params) -> Result<Vec<usize>> {
    if p.l != 1 {
        return Err(Error::ParamsMismatch(format!(
            "hamilton_path needs l = 1, got l = {}",
            p.l
        )));
    }
    let mut s = build_subdivision(g, p)?;
    Ok(s.branches.pop().expect("one branch"))
}

/// Hamilton cycle via the `l = 2` case: out along branch 1, back along
/// branch 2.
pub fn hamilton_cycle(g: &LabeledGraph, p: &Params) -> Result<Vec<usize>> {
    if p.l != 2 {
        return Err(Error::ParamsMismatch(format!(
            "hamilton_cycle needs l = 2, got l = {}",
            p.l
        )));
    }
    let s = build_subdivision(g, p)?;
    Ok(s.as_cycle().expect("two branches"))
}
