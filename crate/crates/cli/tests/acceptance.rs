//! Acceptance suite. Runs every criterion, prints one `PASS`/`FAIL` line per
//! criterion and exits non-zero if any failed.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use bandsub::constructions::{
    extremal, greedy_delete, power_path, sample_condition_subgraph, SampleCondition,
};
use bandsub::graph::theorem_floors;
use bandsub::oracle::{
    certify_rooted_subdivision, has_hamilton_cycle, has_rooted_spanning_subdivision,
    is_hamilton_cycle, is_hamilton_path, min_root_separator, separates,
};
use bandsub::{
    assemble, check_theorem_condition, effective_min_degree, hamilton_cycle, hamilton_path,
    run_algorithm, verify_subdivision, Certificate, Error, LabeledGraph, OracleConfig, Params,
    RootedSubdivision, TheoremCondition,
};
use bandsub_cli::hunt::{hunt, Conjecture, HuntConfig};
use bandsub_cli::rggrun::{run_rgg, RggConfig, RggMode};
use bandsub_cli::trial_seed;

const SEEDS: u64 = 500;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Every `(n, k, l)` with `4 <= n <= 12`, `2 <= k <= 4`, `1 <= l <= min(k, 3)`.
fn theorem_cells() -> Vec<Params> {
    let mut cells = Vec::new();
    for n in 4..=12 {
        for k in 2..=4 {
            for l in 1..=k.min(3) {
                if let Ok(p) = Params::new(n, k, l) {
                    cells.push(p);
                }
            }
        }
    }
    cells
}

fn deg_seq(p: Params) -> SampleCondition {
    SampleCondition::Theorem {
        params: p,
        which: TheoremCondition::DegSeq,
    }
}

/// Samples for a cell, or `None` if the host itself misses the condition.
fn cell_samples(p: Params) -> Option<Vec<LabeledGraph>> {
    let host = power_path(p.n, p.k);
    let cond = deg_seq(p);
    match sample_condition_subgraph(&host, &cond, 0) {
        Err(Error::HostFailsCondition(_)) => return None,
        Err(e) => panic!("{e}"),
        Ok(_) => {}
    }
    Some(
        (0..SEEDS)
            .into_par_iter()
            .map(|s| {
                sample_condition_subgraph(
                    &host,
                    &cond,
                    trial_seed(1, p.n, p.k * 10 + p.l, s as usize),
                )
                .unwrap()
            })
            .collect(),
    )
}

fn distinct(graphs: &[LabeledGraph]) -> Vec<&LabeledGraph> {
    let mut seen = HashSet::new();
    graphs
        .iter()
        .filter(|g| seen.insert(g.edges().collect::<Vec<_>>()))
        .collect()
}

fn pipeline(g: &LabeledGraph, p: &Params) -> Result<RootedSubdivision, String> {
    let ps = run_algorithm(g, p).map_err(|e| e.to_string())?;
    let s = assemble(g, p, &ps).map_err(|e| e.to_string())?;
    verify_subdivision(g, &s, p).map_err(|v| v.to_string())?;
    Ok(s)
}

fn criterion_1() -> Outcome {
    let (mut cells, mut vacuous, mut runs, mut failures) = (0, 0, 0, Vec::new());
    for p in theorem_cells() {
        cells += 1;
        let Some(samples) = cell_samples(p) else {
            vacuous += 1;
            continue;
        };
        for g in &samples {
            runs += 1;
            if let Err(e) = pipeline(g, &p) {
                failures.push(format!("{p}: {e}"));
            }
        }
    }
    outcome(
        failures.is_empty() && runs > 0,
        format!(
            "{runs} runs over {} cells ({vacuous} vacuous), {} failures{}",
            cells - vacuous,
            failures.len(),
            failures
                .first()
                .map(|f| format!(", first {f}"))
                .unwrap_or_default()
        ),
    )
}

/// A subgraph of `P_n^k` that misses the condition, found by pruning below
/// the degree floors.
fn non_condition_sample(p: Params, t: usize) -> Option<LabeledGraph> {
    let host = power_path(p.n, p.k);
    let floors = theorem_floors(&p, TheoremCondition::DegSeq);
    for attempt in 0..20 {
        let seed = trial_seed(2, p.n, p.k * 10 + p.l, t * 100 + attempt);
        let drop = 1 + (seed % 3) as usize;
        let low: Vec<usize> = floors.iter().map(|f| f.saturating_sub(drop)).collect();
        let low: Vec<usize> = low
            .iter()
            .zip(host.degrees())
            .map(|(f, d)| *f.min(&d))
            .collect();
        let g = greedy_delete(&host, &low, seed).unwrap();
        if !check_theorem_condition(&g, &p, TheoremCondition::DegSeq)
            .unwrap()
            .passed()
        {
            return Some(g);
        }
    }
    None
}

fn criterion_2() -> Outcome {
    let cap = OracleConfig::default().subdivision_cap;
    let (mut agreed, mut certified, mut contradictions) = (0, 0, Vec::new());
    let mut tally = |r: Result<&'static str, String>| match r {
        Ok("agree") => agreed += 1,
        Ok(_) => certified += 1,
        Err(e) => contradictions.push(e),
    };
    for p in theorem_cells() {
        if let Some(samples) = cell_samples(p) {
            let results: Vec<_> = distinct(&samples)
                .into_par_iter()
                .map(|g| {
                    let built = pipeline(g, &p);
                    let oracle = has_rooted_spanning_subdivision(g, (1, p.n), p.l, cap).unwrap();
                    match (built, oracle) {
                        (Ok(_), Some(w)) if verify_subdivision(g, &w, &p).is_ok() => Ok("agree"),
                        (b, o) => Err(format!(
                            "{p} condition sample: builder {:?}, oracle {:?}",
                            b.is_ok(),
                            o.is_some()
                        )),
                    }
                })
                .collect();
            results.into_iter().for_each(&mut tally);
        }
        let results: Vec<_> = (0..50)
            .into_par_iter()
            .filter_map(|t| non_condition_sample(p, t))
            .map(|g| {
                let built = pipeline(&g, &p);
                let cfg = OracleConfig {
                    hamilton_cap: cap,
                    subdivision_cap: cap,
                };
                let cert = certify_rooted_subdivision(&g, (1, p.n), p.l, &cfg).unwrap();
                match (&built, &cert) {
                    (Ok(_), c) if c.rules_out(p.l) => Err(format!(
                        "{p}: builder succeeded but oracle certified {}",
                        c.kind()
                    )),
                    (_, Certificate::Separator(cut)) if !separates(&g, (1, p.n), cut) => {
                        Err(format!("{p}: bogus separator {cut:?}"))
                    }
                    (_, Certificate::SubdivisionFound(w)) => match verify_subdivision(&g, w, &p) {
                        Ok(()) => Ok("agree"),
                        Err(v) => Err(format!("{p}: oracle witness rejected: {v}")),
                    },
                    (_, _) => Ok("certified"),
                }
            })
            .collect();
        results.into_iter().for_each(&mut tally);
    }
    outcome(
        contradictions.is_empty(),
        format!(
            "{agreed} witnesses agree, {certified} absences certified, {} contradictions{}",
            contradictions.len(),
            contradictions
                .first()
                .map(|c| format!(", first {c}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (k, l) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        for n in 2 * k + l + 1..=2 * k + l + 3 {
            checked += 1;
            let g = extremal(n, k, l).unwrap();
            let emd = effective_min_degree(&g, &power_path(n, k)).unwrap();
            if emd != k + l - 1 {
                failures.push(format!("({n},{k},{l}) effective min degree {emd}"));
            }
            match min_root_separator(&g, (1, n)).unwrap() {
                Certificate::Separator(cut) if cut.len() == l - 1 => {}
                c => failures.push(format!("({n},{k},{l}) separator {c:?}")),
            }
            if has_rooted_spanning_subdivision(&g, (1, n), l, 14)
                .unwrap()
                .is_some()
            {
                failures.push(format!("({n},{k},{l}) subdivision found"));
            }
            if l == 2 && has_hamilton_cycle(&g, 20).unwrap().is_some() {
                failures.push(format!("({n},{k},{l}) hamilton cycle found"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{checked} extremal graphs, {} failures{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!(", first {f}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_4() -> Outcome {
    let (mut paths, mut cycles, mut failures) = (0, 0, Vec::new());
    for p in theorem_cells().into_iter().filter(|p| p.l <= 2) {
        let Some(samples) = cell_samples(p) else {
            continue;
        };
        for g in distinct(&samples) {
            if p.l == 1 {
                match hamilton_path(g, &p) {
                    Ok(path) if is_hamilton_path(g, &path, 1, p.n) => paths += 1,
                    r => failures.push(format!("{p}: path {r:?}")),
                }
            } else {
                match hamilton_cycle(g, &p) {
                    Ok(c) if is_hamilton_cycle(g, &c) => cycles += 1,
                    r => failures.push(format!("{p}: cycle {r:?}")),
                }
            }
        }
    }
    for n in 3..=30 {
        for k in 1..=6 {
            let p = Params::new(n, k, 1).unwrap();
            let path = hamilton_path(&power_path(n, k), &p);
            if path != Ok((1..=n).collect()) {
                failures.push(format!("P_{n}^{k}: {path:?}"));
            }
        }
    }
    outcome(
        failures.is_empty() && paths > 0 && cycles > 0,
        format!(
            "{paths} paths, {cycles} cycles, power paths give 1..n; {} failures{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!(", first {f}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_5() -> Outcome {
    let n = 1000;
    let config = RggConfig {
        n,
        r: 8.0 * (n as f64).ln() / n as f64,
        eps: 0.3,
        trials: 100,
        seed_base: 0,
        mode: RggMode::Sandwich,
        timings: false,
    };
    let report = run_rgg(&config).unwrap();
    let holds = report.sandwich_holds();
    outcome(
        holds >= 90,
        format!("sandwich holds in {holds}/100, need 90"),
    )
}

fn criterion_6() -> Outcome {
    let n = 500;
    let config = RggConfig {
        n,
        r: 12.0 * (n as f64).ln() / n as f64,
        eps: 0.5,
        trials: 50,
        seed_base: 0,
        mode: RggMode::Resilience,
        timings: false,
    };
    let report = run_rgg(&config).unwrap();
    let applicable = report.applicable();
    let ok = report.hamiltonian();
    outcome(
        applicable > 0 && ok == applicable,
        format!(
            "{ok}/{applicable} applicable trials hamiltonian ({} of 50 clear the sandwich)",
            report.sandwich_holds()
        ),
    )
}

fn criterion_7() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("counterexamples");
    let mut lines = Vec::new();
    let mut found = 0;
    for conjecture in [Conjecture::CyclePower, Conjecture::HalfPlusTwo] {
        let config = HuntConfig {
            conjecture,
            n_range: 5..=10,
            k_range: 2..=3,
            trials: 200,
            seed_base: 0,
            oracle_cap: 20,
        };
        let report = hunt(&config).unwrap();
        for cx in report.counterexamples() {
            std::fs::create_dir_all(&dir).unwrap();
            let path = dir.join(format!(
                "{}_n{}_k{}_{:016x}.txt",
                conjecture.name(),
                cx.n,
                cx.k,
                cx.seed
            ));
            std::fs::write(&path, cx.certificate()).unwrap();
            eprintln!("COUNTEREXAMPLE written to {}", path.display());
            found += 1;
        }
        lines.push(report.summary());
    }
    outcome(found == 0, lines.join("; "))
}

#[derive(Clone, Copy, Debug)]
enum Mutation {
    DropBranch,
    MergeRoots,
    OutOfRange,
    MoveStart,
    DropInternal,
    Duplicate,
    SwapInternal,
}

const MUTATIONS: [Mutation; 7] = [
    Mutation::DropBranch,
    Mutation::MergeRoots,
    Mutation::OutOfRange,
    Mutation::MoveStart,
    Mutation::DropInternal,
    Mutation::Duplicate,
    Mutation::SwapInternal,
];

fn internal_positions(s: &RootedSubdivision) -> Vec<(usize, usize)> {
    s.branches
        .iter()
        .enumerate()
        .flat_map(|(b, br)| (1..br.len().saturating_sub(1)).map(move |j| (b, j)))
        .collect()
}

/// Applies `m` with choices drawn from `seed`; returns the mutated value and
/// the invariant it must violate, or `None` if `m` does not apply.
fn mutate(
    g: &LabeledGraph,
    s: &RootedSubdivision,
    m: Mutation,
    seed: u64,
) -> Option<(RootedSubdivision, &'static str)> {
    let mut out = s.clone();
    let internal = internal_positions(s);
    let pick =
        |len: usize, salt: u64| (trial_seed(seed, len, salt as usize, 0) % len as u64) as usize;
    match m {
        Mutation::DropBranch => {
            out.branches.remove(pick(s.branches.len(), 1));
            Some((out, "branch_count"))
        }
        Mutation::MergeRoots => {
            out.roots.1 = out.roots.0;
            Some((out, "roots_distinct"))
        }
        Mutation::OutOfRange => {
            let (b, j) = *internal.get(pick(internal.len().max(1), 2))?;
            out.branches[b][j] = g.n() + 1;
            Some((out, "vertex_range"))
        }
        Mutation::MoveStart => {
            let b = pick(s.branches.len(), 3);
            out.branches[b][0] = s.branches[b][1];
            Some((out, "branch_endpoints"))
        }
        Mutation::DropInternal => {
            let (b, j) = *internal.get(pick(internal.len().max(1), 4))?;
            out.branches[b].remove(j);
            let bare = out.branches.iter().filter(|br| br.len() == 2).count();
            Some((
                out,
                if bare >= 2 {
                    "parallel_direct_branches"
                } else {
                    "spanning"
                },
            ))
        }
        Mutation::Duplicate => {
            if internal.len() < 2 {
                return None;
            }
            let a = pick(internal.len(), 5);
            let c = (a + 1 + pick(internal.len() - 1, 6)) % internal.len();
            let ((b1, j1), (b2, j2)) = (internal[a], internal[c]);
            out.branches[b1][j1] = s.branches[b2][j2];
            Some((out, "internal_disjoint"))
        }
        Mutation::SwapInternal => {
            let candidates: Vec<RootedSubdivision> = internal
                .iter()
                .flat_map(|&(b, j)| internal.iter().map(move |&(c, i)| ((b, j), (c, i))))
                .filter(|(x, y)| x < y)
                .map(|((b, j), (c, i))| {
                    let mut t = s.clone();
                    let tmp = t.branches[b][j];
                    t.branches[b][j] = t.branches[c][i];
                    t.branches[c][i] = tmp;
                    t
                })
                .filter(|t| {
                    t.branches
                        .iter()
                        .any(|br| br.windows(2).any(|w| !g.has_edge(w[0], w[1])))
                })
                .collect();
            let t = candidates.get(pick(candidates.len().max(1), 7))?.clone();
            Some((t, "branch_edge"))
        }
    }
}

fn criterion_8() -> Outcome {
    let bases: Vec<(Params, LabeledGraph, RootedSubdivision)> = theorem_cells()
        .into_iter()
        .filter(|p| p.l >= 2 && p.n >= 7)
        .filter_map(|p| {
            let g = cell_samples(p)?.swap_remove(0);
            let s = pipeline(&g, &p).unwrap();
            Some((p, g, s))
        })
        .collect();
    let (mut done, mut failures, mut seed) = (0, Vec::new(), 0u64);
    let mut by_kind = [0usize; 7];
    while done < 100 {
        let m = MUTATIONS[seed as usize % MUTATIONS.len()];
        let (p, g, s) = &bases[(trial_seed(8, 0, 0, seed as usize) % bases.len() as u64) as usize];
        if let Some((bad, expected)) = mutate(g, s, m, seed) {
            done += 1;
            by_kind[seed as usize % MUTATIONS.len()] += 1;
            match verify_subdivision(g, &bad, p) {
                Err(v) if v.name() == expected => {}
                r => failures.push(format!("{m:?} on {p}: expected {expected}, got {r:?}")),
            }
        }
        seed += 1;
    }
    outcome(
        failures.is_empty(),
        format!(
            "{done} mutations {by_kind:?} rejected by the right invariant, {} wrong{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!(", first {f}"))
                .unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 constructive theorem suite", criterion_1),
        ("2 oracle cross-validation", criterion_2),
        ("3 tightness", criterion_3),
        ("4 hamilton specializations", criterion_4),
        ("5 rgg sandwich", criterion_5),
        ("6 rgg resilience", criterion_6),
        ("7 conjecture hunts", criterion_7),
        ("8 mutation suite", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} criterion {name}: {} [{secs:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
