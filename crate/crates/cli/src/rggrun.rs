//! Batches of random geometric graph trials: sandwich checks or full
//! resilience runs, one CSV row per sample.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use bandsub::rgg::{resilience_trial, sample_rgg, sandwich_check};
use bandsub::Error;

use crate::trial_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RggMode {
    Sandwich,
    Resilience,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RggConfig {
    pub n: usize,
    pub r: f64,
    pub eps: f64,
    pub trials: usize,
    pub seed_base: u64,
    pub mode: RggMode,
    /// Fill the `runtime_ms` column. Off by default so output is reproducible.
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RggRow {
    pub seed: u64,
    pub k_low: usize,
    pub k_high: usize,
    pub sandwich: bool,
    /// `None` in sandwich mode.
    pub threshold_ok: Option<bool>,
    /// `None` unless the trial was applicable.
    pub hamiltonian: Option<bool>,
    pub runtime_ms: Option<f64>,
}

impl RggRow {
    pub fn applicable(&self) -> bool {
        self.sandwich && self.threshold_ok == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RggReport {
    pub config: RggConfig,
    pub rows: Vec<RggRow>,
}

fn opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

impl RggReport {
    pub fn sandwich_holds(&self) -> usize {
        self.rows.iter().filter(|r| r.sandwich).count()
    }

    pub fn applicable(&self) -> usize {
        self.rows.iter().filter(|r| r.applicable()).count()
    }

    pub fn hamiltonian(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.hamiltonian == Some(true))
            .count()
    }

    pub fn csv(&self) -> String {
        let mut out =
            String::from("seed,k_low,k_high,sandwich,threshold_ok,hamiltonian,runtime_ms\n");
        for r in &self.rows {
            let runtime = r.runtime_ms.map(|t| format!("{t:.3}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.seed,
                r.k_low,
                r.k_high,
                r.sandwich,
                opt(r.threshold_ok),
                opt(r.hamiltonian),
                runtime
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let head = format!(
            "rgg n={} r={} eps={} trials={}",
            c.n,
            c.r,
            c.eps,
            self.rows.len()
        );
        match c.mode {
            RggMode::Sandwich => format!(
                "{head}: sandwich holds {}/{}",
                self.sandwich_holds(),
                self.rows.len()
            ),
            RggMode::Resilience => format!(
                "{head}: sandwich holds {}, applicable {}, hamiltonian {}/{}",
                self.sandwich_holds(),
                self.applicable(),
                self.hamiltonian(),
                self.applicable()
            ),
        }
    }
}

fn run_trial(c: &RggConfig, t: usize) -> Result<RggRow, Error> {
    let start = Instant::now();
    let seed = trial_seed(c.seed_base, c.n, 0, t);
    let s = sample_rgg(c.n, c.r, seed)?;
    let rep = sandwich_check(&s, c.eps);
    let mut row = RggRow {
        seed,
        k_low: rep.k_low,
        k_high: rep.k_high,
        sandwich: rep.holds(),
        threshold_ok: None,
        hamiltonian: None,
        runtime_ms: None,
    };
    if c.mode == RggMode::Resilience {
        match resilience_trial(&s, c.eps, trial_seed(c.seed_base, c.n, 1, t)) {
            Ok(out) => {
                row.threshold_ok = Some(true);
                row.hamiltonian = Some(out.hamiltonian());
            }
            Err(Error::SandwichFailed { .. }) => {}
            Err(Error::ThresholdGap { .. }) => row.threshold_ok = Some(false),
            Err(e) => return Err(e),
        }
    }
    if c.timings {
        row.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(row)
}

/// Runs all trials on the current rayon pool; rows come back sorted by seed.
pub fn run_rgg(config: &RggConfig) -> Result<RggReport, Error> {
    let mut rows = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<Vec<_>, Error>>()?;
    rows.sort_by_key(|r| r.seed);
    Ok(RggReport {
        config: config.clone(),
        rows,
    })
}
