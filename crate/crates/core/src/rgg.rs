//! One-dimensional random geometric graphs `G(n, r)`: sampling, the
//! power-of-path sandwich, and adversarial resilience trials.
//!
//! Points are labelled `1..=n` in increasing coordinate order, which turns
//! `G(n, r)` into a unit interval graph whose bandwidth is witnessed by that
//! order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::hamilton_cycle;
use crate::constructions::{greedy_delete, power_path};
use crate::error::{Error, Result};
use crate::graph::{
    bandwidth_witness_ok, check_theorem_condition, LabeledGraph, Params, TheoremCondition,
};
use crate::oracle::is_hamilton_cycle;

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricSample {
    points: Vec<f64>,
    r: f64,
    seed: Option<u64>,
}

impl GeometricSample {
    /// Wraps explicit coordinates (sorted here; ties keep input order).
    pub fn from_points(mut points: Vec<f64>, r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::ParamsOutOfRange(format!(
                "radius {r} outside [0, 1]"
            )));
        }
        if let Some(x) = points.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::ParamsOutOfRange(format!("point {x} outside [0, 1]")));
        }
        points.sort_by(f64::total_cmp);
        Ok(GeometricSample {
            points,
            r,
            seed: None,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `ij` is an edge iff `|x_i - x_j| <= r`.
    pub fn graph(&self) -> LabeledGraph {
        let x = &self.points;
        let n = x.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if x[j] - x[i] > self.r {
                    break;
                }
                adj[i].push(j + 1);
                adj[j].push(i + 1);
            }
        }
        // Left neighbours were pushed in increasing order before right ones.
        LabeledGraph::from_sorted_adjacency(adj)
    }
}

/// `n` uniform points in `[0, 1]` from a ChaCha8 stream seeded with `seed`.
pub fn sample_rgg(n: usize, r: f64, seed: u64) -> Result<GeometricSample> {
    if n == 0 {
        return Err(Error::ParamsOutOfRange("need n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n).map(|_| rng.random::<f64>()).collect();
    let mut s = GeometricSample::from_points(points, r)?;
    s.seed = Some(seed);
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub n: usize,
    pub r: f64,
    pub eps: f64,
    pub seed: Option<u64>,
    pub k_low: usize,
    pub k_high: usize,
    /// `P_n^{k_low}` is a subgraph of the sample.
    pub lower_ok: bool,
    /// The sample is a subgraph of `P_n^{k_high}`.
    pub upper_ok: bool,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Exponents `(floor((1 - eps/3) n r), ceil((1 + eps/3) n r))`.
pub fn sandwich_exponents(n: usize, r: f64, eps: f64) -> (usize, usize) {
    let nr = n as f64 * r;
    let low = ((1.0 - eps / 3.0) * nr).floor().max(0.0) as usize;
    let high = ((1.0 + eps / 3.0) * nr).ceil().max(0.0) as usize;
    (low, high)
}

fn sandwich_with_graph(s: &GeometricSample, g: &LabeledGraph, eps: f64) -> SandwichReport {
    let n = s.n();
    let (k_low, k_high) = sandwich_exponents(n, s.r, eps);
    let lower_ok = k_low == 0 || power_path(n, k_low).is_spanning_subgraph_of(g);
    let upper_ok = bandwidth_witness_ok(g, k_high);
    SandwichReport {
        n,
        r: s.r,
        eps,
        seed: s.seed,
        k_low,
        k_high,
        lower_ok,
        upper_ok,
    }
}

pub fn sandwich_check(s: &GeometricSample, eps: f64) -> SandwichReport {
    sandwich_with_graph(s, &s.graph(), eps)
}

/// What one resilience trial did.
#[derive(Debug, Clone, PartialEq)]
pub struct ResilienceOutcome {
    pub sandwich: SandwichReport,
    pub adversary_seed: u64,
    /// `ceil((1 + eps) n r)`, the effective-degree floor kept by the adversary.
    pub threshold: usize,
    pub edges_before: usize,
    pub edges_removed: usize,
    /// Effective-minimum-degree form of the condition for `(n, k_high, 2)`.
    pub general_condition: bool,
    /// Degree-sequence form for `(n, k_high, 2)`.
    pub deg_seq_condition: bool,
    /// Hamilton cycle produced by the greedy builder, if it succeeded.
    pub cycle: Option<Vec<usize>>,
    pub failure: Option<Error>,
    /// The cycle passed the independent validity check.
    pub verified: bool,
}

impl ResilienceOutcome {
    pub fn hamiltonian(&self) -> bool {
        self.verified
    }
}

/// Removes edges of `G(n, r)` greedily (seeded) while every vertex keeps
/// degree at least `min{ceil((1+eps) n r), deg_G(v)}`, then runs the greedy
/// Hamilton cycle builder on what is left, using the sorted labelling with
/// bandwidth witness `k_high`.
///
/// The condition reports are recorded alongside the result; the builder runs
/// regardless of their outcome.
pub fn resilience_trial(
    s: &GeometricSample,
    eps: f64,
    adversary_seed: u64,
) -> Result<ResilienceOutcome> {
    let g = s.graph();
    let sandwich = sandwich_with_graph(s, &g, eps);
    if !sandwich.holds() {
        return Err(Error::SandwichFailed {
            lower_ok: sandwich.lower_ok,
            upper_ok: sandwich.upper_ok,
        });
    }
    let n = s.n();
    let raw = (1.0 + eps) * n as f64 * s.r;
    if raw < (sandwich.k_high + 2) as f64 {
        return Err(Error::ThresholdGap {
            threshold: raw,
            required: sandwich.k_high + 2,
        });
    }
    let threshold = raw.ceil() as usize;
    let floors: Vec<usize> = g.vertices().map(|v| threshold.min(g.degree(v))).collect();
    let h = greedy_delete(&g, &floors, adversary_seed)?;

    let params = Params::new(n, sandwich.k_high.max(2), 2)?;
    let general_condition =
        check_theorem_condition(&h, &params, TheoremCondition::General)?.passed();
    let deg_seq_condition =
        check_theorem_condition(&h, &params, TheoremCondition::DegSeq)?.passed();

    let (cycle, failure) = match hamilton_cycle(&h, &params) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e)),
    };
    let verified = cycle.as_deref().is_some_and(|c| is_hamilton_cycle(&h, c));
    Ok(ResilienceOutcome {
        edges_before: g.edge_count(),
        edges_removed: g.edge_count() - h.edge_count(),
        sandwich,
        adversary_seed,
        threshold,
        general_condition,
        deg_seq_condition,
        cycle,
        failure,
        verified,
    })
}
