//! Independent checks and exact ground truth for small instances.
//!
//! Nothing here shares code with the greedy builder: Hamiltonicity is decided
//! by subset dynamic programming, rooted subdivisions by a memoised
//! depth-first search, and separators by max-flow on the vertex-split
//! network.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::builder::RootedSubdivision;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Params};

/// Size limits for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub hamilton_cap: usize,
    pub subdivision_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            hamilton_cap: 20,
            subdivision_cap: 14,
        }
    }
}

/// Invariant of a rooted subdivision, in the order they are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubdivisionInvariant {
    BranchCount {
        expected: usize,
        found: usize,
    },
    RootsDistinct,
    VertexRange {
        vertex: usize,
    },
    BranchEndpoints {
        branch: usize,
    },
    InternalDisjoint {
        vertex: usize,
    },
    /// Two branches that are both the bare edge between the roots.
    ParallelDirectBranches,
    Spanning {
        missing: usize,
    },
    BranchEdge {
        u: usize,
        v: usize,
    },
}

impl SubdivisionInvariant {
    pub fn name(&self) -> &'static str {
        match self {
            SubdivisionInvariant::BranchCount { .. } => "branch_count",
            SubdivisionInvariant::RootsDistinct => "roots_distinct",
            SubdivisionInvariant::VertexRange { .. } => "vertex_range",
            SubdivisionInvariant::BranchEndpoints { .. } => "branch_endpoints",
            SubdivisionInvariant::InternalDisjoint { .. } => "internal_disjoint",
            SubdivisionInvariant::ParallelDirectBranches => "parallel_direct_branches",
            SubdivisionInvariant::Spanning { .. } => "spanning",
            SubdivisionInvariant::BranchEdge { .. } => "branch_edge",
        }
    }
}

impl fmt::Display for SubdivisionInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            SubdivisionInvariant::BranchCount { expected, found } => {
                write!(f, " expected {expected} found {found}")
            }
            SubdivisionInvariant::VertexRange { vertex } => write!(f, " vertex {vertex}"),
            SubdivisionInvariant::BranchEndpoints { branch } => write!(f, " branch {branch}"),
            SubdivisionInvariant::InternalDisjoint { vertex } => write!(f, " vertex {vertex}"),
            SubdivisionInvariant::Spanning { missing } => write!(f, " missing {missing}"),
            SubdivisionInvariant::BranchEdge { u, v } => write!(f, " {u}-{v}"),
            SubdivisionInvariant::RootsDistinct | SubdivisionInvariant::ParallelDirectBranches => {
                Ok(())
            }
        }
    }
}

/// Checks every invariant of a spanning rooted subdivision with exactly
/// `p.l` branches, reporting the first one violated.
pub fn verify_subdivision(
    g: &LabeledGraph,
    s: &RootedSubdivision,
    p: &Params,
) -> std::result::Result<(), SubdivisionInvariant> {
    use SubdivisionInvariant::*;
    let n = g.n();
    let (u, w) = s.roots;

    if s.branches.len() != p.l {
        return Err(BranchCount {
            expected: p.l,
            found: s.branches.len(),
        });
    }
    if u == w {
        return Err(RootsDistinct);
    }
    let all = std::iter::once(&u)
        .chain(std::iter::once(&w))
        .chain(s.branches.iter().flatten());
    if let Some(&vertex) = all.into_iter().find(|&&v| v == 0 || v > n) {
        return Err(VertexRange { vertex });
    }
    for (i, b) in s.branches.iter().enumerate() {
        if b.len() < 2 || b[0] != u || b[b.len() - 1] != w {
            return Err(BranchEndpoints { branch: i });
        }
    }
    let mut seen = vec![false; n + 1];
    seen[u] = true;
    seen[w] = true;
    for b in &s.branches {
        for &v in &b[1..b.len() - 1] {
            if seen[v] {
                return Err(InternalDisjoint { vertex: v });
            }
            seen[v] = true;
        }
    }
    if s.branches.iter().filter(|b| b.len() == 2).count() > 1 {
        return Err(ParallelDirectBranches);
    }
    if let Some(missing) = (1..=n).find(|&v| !seen[v]) {
        return Err(Spanning { missing });
    }
    for b in &s.branches {
        if let Some(pair) = b.windows(2).find(|e| !g.has_edge(e[0], e[1])) {
            return Err(BranchEdge {
                u: pair[0],
                v: pair[1],
            });
        }
    }
    Ok(())
}

/// True iff `cycle` lists every vertex once and consecutive vertices
/// (cyclically) are adjacent.
pub fn is_hamilton_cycle(g: &LabeledGraph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || !is_permutation(cycle, n) {
        return false;
    }
    cycle.windows(2).all(|e| g.has_edge(e[0], e[1])) && g.has_edge(cycle[n - 1], cycle[0])
}

/// True iff `path` lists every vertex once, runs from `u` to `w`, and
/// consecutive vertices are adjacent.
pub fn is_hamilton_path(g: &LabeledGraph, path: &[usize], u: usize, w: usize) -> bool {
    is_permutation(path, g.n())
        && path.first() == Some(&u)
        && path.last() == Some(&w)
        && path.windows(2).all(|e| g.has_edge(e[0], e[1]))
}

fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    seq.iter()
        .all(|&v| v >= 1 && v <= n && !std::mem::replace(&mut seen[v], true))
}

// Subset DP tables have 2^n entries.
const MAX_DP_VERTICES: usize = 24;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    Ok(())
}

// dp[mask] = set of vertices x such that some path from `start` visits
// exactly `mask` and ends at x. Bit i is vertex i + 1.
fn path_dp(adj: &[u64], start: usize) -> Vec<u32> {
    let n = adj.len();
    let mut dp = vec![0u32; 1 << n];
    dp[1 << start] = 1 << start;
    for mask in 1..(1usize << n) {
        let mut ends = dp[mask];
        while ends != 0 {
            let x = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = adj[x] & !(mask as u64);
            while next != 0 {
                let y = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[mask | 1 << y] |= 1 << y;
            }
        }
    }
    dp
}

// Walks dp backwards from `end` over the full mask.
fn unwind(dp: &[u32], adj: &[u64], end: usize) -> Vec<usize> {
    let n = adj.len();
    let mut mask = (1usize << n) - 1;
    let mut cur = end;
    let mut rev = vec![cur + 1];
    while mask.count_ones() > 1 {
        let prev_mask = mask ^ (1 << cur);
        let candidates = dp[prev_mask] & adj[cur] as u32;
        let prev = candidates.trailing_zeros() as usize;
        debug_assert!(candidates != 0);
        rev.push(prev + 1);
        mask = prev_mask;
        cur = prev;
    }
    rev.reverse();
    rev
}

/// Exact Hamilton cycle search by subset DP; `None` means none exists.
pub fn has_hamilton_cycle(g: &LabeledGraph, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    check_cap(n, cap.min(MAX_DP_VERTICES))?;
    if n < 3 {
        return Ok(None);
    }
    let adj = g.bitmasks();
    let dp = path_dp(&adj, 0);
    let closing = dp[(1 << n) - 1] & adj[0] as u32;
    if closing == 0 {
        return Ok(None);
    }
    Ok(Some(unwind(&dp, &adj, closing.trailing_zeros() as usize)))
}

/// Exact Hamilton `u`–`w` path search by subset DP.
pub fn has_hamilton_path(
    g: &LabeledGraph,
    u: usize,
    w: usize,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    check_cap(n, cap.min(MAX_DP_VERTICES))?;
    if u == w || u == 0 || w == 0 || u > n || w > n {
        return Err(Error::ParamsOutOfRange(format!("bad endpoints {u}, {w}")));
    }
    let adj = g.bitmasks();
    let dp = path_dp(&adj, u - 1);
    if dp[(1 << n) - 1] & (1 << (w - 1)) == 0 {
        return Ok(None);
    }
    Ok(Some(unwind(&dp, &adj, w - 1)))
}

struct SubdivisionSearch<'a> {
    adj: &'a [u64],
    full: u64,
    u: usize,
    w: usize,
    l: usize,
    failed: HashSet<(u64, usize, usize, bool)>,
    branches: Vec<Vec<usize>>,
    current: Vec<usize>,
}

impl SubdivisionSearch<'_> {
    fn bit(v: usize) -> u64 {
        1 << v
    }

    // Cheap necessary conditions for completing the search from this state.
    fn feasible(&self, visited: u64, cur: usize, done: usize, direct_used: bool) -> bool {
        let free = self.full & !visited;
        let (u, w) = (self.u, self.w);
        let in_branch = cur != u;
        // Branches still to be started from u after the current one.
        let to_start = self.l - done - usize::from(in_branch);
        let direct_ok = !direct_used && self.adj[u] & Self::bit(w) != 0;

        // Every free vertex needs two usable neighbours.
        let usable = free | Self::bit(u) | Self::bit(w) | Self::bit(cur);
        let mut rest = free;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[x] & usable).count_ones() < 2 {
                return false;
            }
        }

        // u must have enough free neighbours to start the remaining branches,
        // and w enough free neighbours (or cur) to finish all open ones.
        let start_slots = (self.adj[u] & free).count_ones() as usize + usize::from(direct_ok);
        if start_slots < to_start {
            return false;
        }
        let finish_pool = free | if in_branch { Self::bit(cur) } else { 0 };
        let finish_slots =
            (self.adj[w] & finish_pool).count_ones() as usize + usize::from(direct_ok);
        if finish_slots < self.l - done {
            return false;
        }

        // Free vertices must be reachable through free vertices from cur or,
        // if branches remain to be started, from u.
        let mut seeds = 0u64;
        if in_branch {
            seeds |= self.adj[cur] & free;
            // The open branch must still be able to reach w.
            if self.adj[cur] & Self::bit(w) == 0 && self.adj[cur] & free == 0 {
                return false;
            }
        }
        if to_start > 0 || !in_branch {
            seeds |= self.adj[u] & free;
        }
        let mut reached = seeds;
        let mut frontier = seeds;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[x] & free & !reached;
            reached |= new;
            frontier |= new;
        }
        reached == free
    }

    fn search(&mut self, visited: u64, cur: usize, done: usize, direct_used: bool) -> bool {
        if done == self.l {
            return visited == self.full;
        }
        let key = (visited, cur, done, direct_used);
        if self.failed.contains(&key) || !self.feasible(visited, cur, done, direct_used) {
            return false;
        }
        let (u, w) = (self.u, self.w);

        if self.adj[cur] & Self::bit(w) != 0 && (cur != u || !direct_used) {
            let mut branch = std::mem::take(&mut self.current);
            branch.push(w);
            self.branches.push(branch);
            self.current = vec![u];
            if self.search(visited, u, done + 1, direct_used || cur == u) {
                return true;
            }
            self.current = self.branches.pop().expect("pushed above");
            self.current.pop();
        }

        let mut next = self.adj[cur] & !visited;
        while next != 0 {
            let y = next.trailing_zeros() as usize;
            next &= next - 1;
            self.current.push(y);
            if self.search(visited | Self::bit(y), y, done, direct_used) {
                return true;
            }
            self.current.pop();
        }
        self.failed.insert(key);
        false
    }
}

/// Exact search for a spanning subdivision of `K_{2,l}` rooted at `roots`.
/// Branches of the witness are 1-based and sorted by second vertex.
pub fn has_rooted_spanning_subdivision(
    g: &LabeledGraph,
    roots: (usize, usize),
    l: usize,
    cap: usize,
) -> Result<Option<RootedSubdivision>> {
    let n = g.n();
    check_cap(n, cap.min(63))?;
    let (u, w) = roots;
    if u == w || u == 0 || w == 0 || u > n || w > n || l == 0 {
        return Err(Error::ParamsOutOfRange(format!(
            "need distinct roots in 1..={n} and l >= 1, got ({u}, {w}), l = {l}"
        )));
    }
    let adj = g.bitmasks();
    let (u0, w0) = (u - 1, w - 1);
    let mut search = SubdivisionSearch {
        adj: &adj,
        full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        u: u0,
        w: w0,
        l,
        failed: HashSet::new(),
        branches: Vec::with_capacity(l),
        current: vec![u0],
    };
    let start = (1u64 << u0) | (1u64 << w0);
    if !search.search(start, u0, 0, false) {
        return Ok(None);
    }
    let mut s = RootedSubdivision {
        roots,
        branches: search
            .branches
            .into_iter()
            .map(|b| b.into_iter().map(|v| v + 1).collect())
            .collect(),
    };
    s.canonicalize();
    Ok(Some(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    SubdivisionFound,
    HamiltonFound,
    Separator,
    Exhausted,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::SubdivisionFound => "subdivision_found",
            CertificateKind::HamiltonFound => "hamilton_found",
            CertificateKind::Separator => "separator",
            CertificateKind::Exhausted => "exhausted",
        })
    }
}

/// Evidence for or against the existence of a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    SubdivisionFound(RootedSubdivision),
    HamiltonFound(Vec<usize>),
    /// A vertex set separating the two roots.
    Separator(Vec<usize>),
    /// The exhaustive search found nothing.
    Exhausted,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::SubdivisionFound(_) => CertificateKind::SubdivisionFound,
            Certificate::HamiltonFound(_) => CertificateKind::HamiltonFound,
            Certificate::Separator(_) => CertificateKind::Separator,
            Certificate::Exhausted => CertificateKind::Exhausted,
        }
    }

    /// A separator of size at most `l - 1` rules out `l` internally disjoint
    /// root-to-root paths.
    pub fn rules_out(&self, l: usize) -> bool {
        match self {
            Certificate::Separator(cut) => cut.len() < l,
            Certificate::Exhausted => true,
            _ => false,
        }
    }
}

/// True iff deleting `cut` leaves no `u`–`w` path.
pub fn separates(g: &LabeledGraph, roots: (usize, usize), cut: &[usize]) -> bool {
    let (u, w) = roots;
    if cut.contains(&u) || cut.contains(&w) {
        return false;
    }
    let mut blocked = vec![false; g.n() + 1];
    for &c in cut {
        blocked[c] = true;
    }
    blocked[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if y == w {
                return false;
            }
            if !blocked[y] {
                blocked[y] = true;
                queue.push_back(y);
            }
        }
    }
    true
}

struct FlowNetwork {
    // Edge list with paired reverse edges at index ^ 1.
    to: Vec<usize>,
    cap: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            to: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, a: usize, b: usize, c: usize) {
        self.out[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.out[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    // Nodes reachable from s in the residual network.
    fn residual_reach(&self, s: usize) -> Vec<Option<usize>> {
        let mut via = vec![None; self.out.len()];
        via[s] = Some(usize::MAX);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.out[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && via[y].is_none() {
                    via[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        via
    }

    // Edmonds–Karp.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let via = self.residual_reach(s);
            if via[t].is_none() {
                return flow;
            }
            let mut bottleneck = usize::MAX;
            let mut x = t;
            while x != s {
                let e = via[x].expect("on path");
                bottleneck = bottleneck.min(self.cap[e]);
                x = self.to[e ^ 1];
            }
            let mut x = t;
            while x != s {
                let e = via[x].expect("on path");
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                x = self.to[e ^ 1];
            }
            flow += bottleneck;
        }
    }
}

/// Minimum vertex cut between two non-adjacent roots, by max-flow on the
/// vertex-split network.
pub fn min_root_separator(g: &LabeledGraph, roots: (usize, usize)) -> Result<Certificate> {
    let n = g.n();
    let (u, w) = roots;
    if u == w || u == 0 || w == 0 || u > n || w > n {
        return Err(Error::ParamsOutOfRange(format!("bad roots ({u}, {w})")));
    }
    if g.has_edge(u, w) {
        return Err(Error::RootsAdjacent { u, v: w });
    }
    let inf = n + 1;
    let node_in = |v: usize| 2 * (v - 1);
    let node_out = |v: usize| 2 * (v - 1) + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 1..=n {
        let c = if v == u || v == w { inf } else { 1 };
        net.add(node_in(v), node_out(v), c);
    }
    for (a, b) in g.edges() {
        net.add(node_out(a), node_in(b), inf);
        net.add(node_out(b), node_in(a), inf);
    }
    let flow = net.max_flow(node_out(u), node_in(w));
    let reach = net.residual_reach(node_out(u));
    let cut: Vec<usize> = (1..=n)
        .filter(|&v| reach[node_in(v)].is_some() && reach[node_out(v)].is_none())
        .collect();
    debug_assert_eq!(cut.len(), flow);
    Ok(Certificate::Separator(cut))
}

/// Separator first, exhaustive search second. Returns a certificate that
/// either exhibits a subdivision or rules one out.
pub fn certify_rooted_subdivision(
    g: &LabeledGraph,
    roots: (usize, usize),
    l: usize,
    cfg: &OracleConfig,
) -> Result<Certificate> {
    if !g.has_edge(roots.0, roots.1) {
        let sep = min_root_separator(g, roots)?;
        if sep.rules_out(l) {
            return Ok(sep);
        }
    }
    Ok(
        match has_rooted_spanning_subdivision(g, roots, l, cfg.subdivision_cap)? {
            Some(s) => Certificate::SubdivisionFound(s),
            None => Certificate::Exhausted,
        },
    )
}
