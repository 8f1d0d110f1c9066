//! Randomised counterexample search for the two Hamiltonicity conjectures.
//!
//! Each `(n, k)` cell draws condition-respecting subgraphs of the host
//! (`C_n^k` or `P_n^k`) with the greedy seeded deleter and asks the exact
//! Hamilton-cycle oracle about each one. Any non-Hamiltonian sample is a
//! counterexample and is returned with its edge list.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use thiserror::Error;

use bandsub::constructions::{greedy_delete, power_cycle, power_path};
use bandsub::graph::conjecture_floors;
use bandsub::oracle::has_hamilton_cycle;
use bandsub::{ConjectureFloor, Error, LabeledGraph, Violation};

use crate::trial_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conjecture {
    /// `G ⊆ C_n^k`, `δ(G) >= k + 1`.
    CyclePower,
    /// `G ⊆ P_n^k`, `deg_G(v) >= ceil(deg_{P_n^k}(v) / 2) + 2`.
    HalfPlusTwo,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::CyclePower => "cycle_power",
            Conjecture::HalfPlusTwo => "half_plus_two",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntConfig {
    pub conjecture: Conjecture,
    pub n_range: RangeInclusive<usize>,
    pub k_range: RangeInclusive<usize>,
    pub trials: usize,
    pub seed_base: u64,
    pub oracle_cap: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum HuntError {
    #[error("cell n = {n} exceeds the oracle cap {cap}")]
    CellTooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellStatus {
    Searched,
    /// Outside the conjecture's parameter range.
    Invalid(String),
    /// The host misses the floor, so no subgraph can satisfy it.
    Vacuous(Violation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub conjecture: Conjecture,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub graph: LabeledGraph,
}

impl Counterexample {
    /// Edge list with a comment header naming the cell and seed.
    pub fn certificate(&self) -> String {
        let mut out = format!(
            "# non-hamiltonian {} n={} k={} seed={}\n",
            self.conjecture.name(),
            self.n,
            self.k,
            self.seed
        );
        let _ = writeln!(out, "{} {}", self.graph.n(), self.k);
        for (u, v) in self.graph.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub n: usize,
    pub k: usize,
    pub status: CellStatus,
    pub trials: usize,
    /// Number of distinct sampled graphs.
    pub distinct: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntReport {
    pub conjecture: Conjecture,
    pub cells: Vec<CellReport>,
}

impl HuntReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.cells.iter().flat_map(|c| &c.counterexamples)
    }

    pub fn total_trials(&self) -> usize {
        self.cells.iter().map(|c| c.trials).sum()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("conjecture,n,k,status,trials,distinct,counterexamples\n");
        for c in &self.cells {
            let status = match &c.status {
                CellStatus::Searched => "searched",
                CellStatus::Invalid(_) => "invalid",
                CellStatus::Vacuous(_) => "vacuous",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.conjecture.name(),
                c.n,
                c.k,
                status,
                c.trials,
                c.distinct,
                c.counterexamples.len()
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let searched = self
            .cells
            .iter()
            .filter(|c| c.status == CellStatus::Searched)
            .count();
        format!(
            "hunt {}: {} cells ({} searched), {} trials, {} counterexamples",
            self.conjecture.name(),
            self.cells.len(),
            searched,
            self.total_trials(),
            self.counterexamples().count()
        )
    }
}

impl HuntConfig {
    pub fn validate(&self) -> Result<(), HuntError> {
        let cap = self.oracle_cap;
        match self.n_range.clone().find(|&n| n > cap) {
            Some(n) => Err(HuntError::CellTooLarge { n, cap }),
            None => Ok(()),
        }
    }
}

fn cell_host(
    conjecture: Conjecture,
    n: usize,
    k: usize,
) -> Result<(LabeledGraph, ConjectureFloor), String> {
    match conjecture {
        Conjecture::CyclePower => power_cycle(n, k)
            .map(|g| (g, ConjectureFloor::CyclePower { k }))
            .map_err(|e| e.to_string()),
        Conjecture::HalfPlusTwo if n >= 4 && k >= 2 => {
            Ok((power_path(n, k), ConjectureFloor::HalfPlusTwo))
        }
        Conjecture::HalfPlusTwo => Err(format!("needs n >= 4 and k >= 2, got n = {n}, k = {k}")),
    }
}

fn hunt_cell(config: &HuntConfig, n: usize, k: usize) -> Result<CellReport, HuntError> {
    let mut report = CellReport {
        n,
        k,
        status: CellStatus::Searched,
        trials: 0,
        distinct: 0,
        counterexamples: Vec::new(),
    };
    let (host, floor) = match cell_host(config.conjecture, n, k) {
        Ok(h) => h,
        Err(why) => {
            report.status = CellStatus::Invalid(why);
            return Ok(report);
        }
    };
    let floors = conjecture_floors(&host, floor);
    if let Some(v) = host.vertices().find(|&v| host.degree(v) < floors[v - 1]) {
        report.status = CellStatus::Vacuous(Violation {
            vertex: v,
            required: floors[v - 1],
            actual: host.degree(v),
        });
        return Ok(report);
    }

    let samples = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(config.seed_base, n, k, t);
            let g = greedy_delete(&host, &floors, seed)?;
            let hamiltonian = has_hamilton_cycle(&g, config.oracle_cap)?.is_some();
            Ok((seed, g, hamiltonian))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut distinct: Vec<&LabeledGraph> = samples.iter().map(|(_, g, _)| g).collect();
    distinct.sort_by(|a, b| a.edges().cmp(b.edges()));
    distinct.dedup();
    report.distinct = distinct.len();
    report.trials = samples.len();
    report.counterexamples = samples
        .iter()
        .filter(|(_, _, hamiltonian)| !hamiltonian)
        .map(|(seed, g, _)| Counterexample {
            conjecture: config.conjecture,
            n,
            k,
            seed: *seed,
            graph: g.clone(),
        })
        .collect();
    Ok(report)
}

/// Runs every cell; trials within a cell run on the current rayon pool and
/// are collected in trial order.
pub fn hunt(config: &HuntConfig) -> Result<HuntReport, HuntError> {
    config.validate()?;
    let mut cells = Vec::new();
    for n in config.n_range.clone() {
        for k in config.k_range.clone() {
            cells.push(hunt_cell(config, n, k)?);
        }
    }
    Ok(HuntReport {
        conjecture: config.conjecture,
        cells,
    })
}
