//! check → build → verify, with one exit code per failing stage.

use std::fmt;

use bandsub::builder::{replay_trace, Step};
use bandsub::format::parse_edge_list;
use bandsub::oracle::{is_hamilton_cycle, is_hamilton_path};
use bandsub::{
    assemble, check_theorem_condition, verify_subdivision, ConditionReport, Error, LabeledGraph,
    Params, RootedSubdivision, TheoremCondition,
};

use crate::exit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Parse,
    Witness,
    Params,
    Condition,
    Assembly,
    Verification,
}

impl Stage {
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Parse => exit::PARSE,
            Stage::Witness => exit::WITNESS,
            Stage::Params => exit::PARAMS,
            Stage::Condition => exit::CONDITION,
            Stage::Assembly => exit::ASSEMBLY,
            Stage::Verification => exit::VERIFICATION,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::Witness => "witness",
            Stage::Params => "params",
            Stage::Condition => "condition",
            Stage::Assembly => "assembly",
            Stage::Verification => "verification",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageFailure {
    pub stage: Stage,
    pub reason: String,
    pub report: Option<ConditionReport>,
}

impl StageFailure {
    fn new(stage: Stage, reason: impl ToString) -> Self {
        StageFailure {
            stage,
            reason: reason.to_string(),
            report: None,
        }
    }
}

impl fmt::Display for StageFailure {
    /// `FAIL <stage> <reason>` on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {} {}", self.stage.name(), self.reason)
    }
}

impl std::error::Error for StageFailure {}

/// Parses an edge list, mapping bandwidth failures to the witness stage.
pub fn load_graph(text: &str, check_witness: bool) -> Result<(LabeledGraph, usize), StageFailure> {
    match parse_edge_list(text, check_witness) {
        Ok(f) => Ok((f.graph, f.k)),
        Err(e @ Error::BandwidthViolated { .. }) => Err(StageFailure::new(Stage::Witness, e)),
        Err(e) => Err(StageFailure::new(Stage::Parse, e)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildOutput {
    pub params: Params,
    pub report: ConditionReport,
    pub subdivision: RootedSubdivision,
    pub steps: Vec<Step>,
    /// Set when `l = 1`.
    pub hamilton_path: Option<Vec<usize>>,
    /// Set when `l = 2`.
    pub hamilton_cycle: Option<Vec<usize>>,
}

/// Condition check, greedy construction, assembly and independent
/// verification for an already-parsed graph.
pub fn build(
    g: &LabeledGraph,
    k: usize,
    l: usize,
    condition: TheoremCondition,
) -> Result<BuildOutput, StageFailure> {
    let params = Params::new(g.n(), k, l).map_err(|e| StageFailure::new(Stage::Params, e))?;
    let report = check_theorem_condition(g, &params, condition).map_err(|e| match e {
        Error::BandwidthViolated { .. } => StageFailure::new(Stage::Witness, e),
        _ => StageFailure::new(Stage::Params, e),
    })?;
    if !report.passed() {
        return Err(StageFailure {
            stage: Stage::Condition,
            reason: report.to_string(),
            report: Some(report),
        });
    }
    let (steps, ps) =
        replay_trace(g, &params).map_err(|e| StageFailure::new(Stage::Assembly, e))?;
    let subdivision =
        assemble(g, &params, &ps).map_err(|e| StageFailure::new(Stage::Assembly, e))?;
    verify_subdivision(g, &subdivision, &params)
        .map_err(|v| StageFailure::new(Stage::Verification, v))?;

    let (n, mut hamilton_path, mut hamilton_cycle) = (g.n(), None, None);
    match l {
        1 => {
            let path = subdivision.branches[0].clone();
            if !is_hamilton_path(g, &path, 1, n) {
                return Err(StageFailure::new(
                    Stage::Verification,
                    "hamilton path rejected",
                ));
            }
            hamilton_path = Some(path);
        }
        2 => {
            let cycle = subdivision.as_cycle().expect("two branches");
            if !is_hamilton_cycle(g, &cycle) {
                return Err(StageFailure::new(
                    Stage::Verification,
                    "hamilton cycle rejected",
                ));
            }
            hamilton_cycle = Some(cycle);
        }
        _ => {}
    }
    Ok(BuildOutput {
        params,
        report,
        subdivision,
        steps,
        hamilton_path,
        hamilton_cycle,
    })
}

/// Full pipeline from edge-list text.
pub fn run_pipeline(
    text: &str,
    l: usize,
    condition: TheoremCondition,
    check_witness: bool,
) -> Result<BuildOutput, StageFailure> {
    let (g, k) = load_graph(text, check_witness)?;
    build(&g, k, l, condition)
}
