use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bandsub::constructions::{GeneratorSpec, SampleCondition};
use bandsub::format::{
    parse_subdivision, write_certificate, write_cycle, write_edge_list, write_path, write_steps,
    write_subdivision,
};
use bandsub::oracle::{certify_rooted_subdivision, has_hamilton_cycle, min_root_separator};
use bandsub::{
    check_theorem_condition, verify_subdivision, Certificate, ConjectureFloor, OracleConfig,
    Params, TheoremCondition,
};
use bandsub_cli::hunt::{hunt, Conjecture, HuntConfig, HuntError};
use bandsub_cli::pipeline::{build, load_graph, Stage, StageFailure};
use bandsub_cli::rggrun::{run_rgg, RggConfig, RggMode};
use bandsub_cli::{exit, pool};

#[derive(Parser)]
#[command(
    name = "bandsub",
    version,
    about = "Spanning K_{2,l} subdivisions in graphs of bounded bandwidth"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Largest n handed to the exact oracles.
    #[arg(long, global = true, default_value_t = 20)]
    oracle_cap: usize,
    /// Accept edge lists whose `k` is not a bandwidth witness.
    #[arg(long, global = true)]
    no_witness_check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in edge-list format.
    Gen(GenArgs),
    /// Check the degree condition for a graph file.
    Check(CheckArgs),
    /// Check, build, assemble and verify; write the artifacts.
    Build(BuildArgs),
    /// Verify a subdivision file against a graph file.
    Verify(VerifyArgs),
    /// Run an exact oracle and print its certificate.
    Oracle(OracleArgs),
    /// Random geometric graph experiments.
    Rgg(RggArgs),
    /// Randomised counterexample search for a conjecture.
    Hunt(HuntArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    PowerPath,
    PowerCycle,
    Extremal,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConditionArg {
    #[value(name = "general")]
    General,
    #[value(name = "deg_seq")]
    DegSeq,
    #[value(name = "cycle_power")]
    CyclePower,
    #[value(name = "half_plus_two")]
    HalfPlusTwo,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    #[value(name = "general")]
    General,
    #[value(name = "deg_seq")]
    DegSeq,
}

impl From<TheoremArg> for TheoremCondition {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::General => TheoremCondition::General,
            TheoremArg::DegSeq => TheoremCondition::DegSeq,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    l: usize,
    /// Condition kept by the random family.
    #[arg(long, value_enum, default_value = "deg_seq")]
    condition: ConditionArg,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 2)]
    l: usize,
    #[arg(long, value_enum, default_value = "deg_seq")]
    condition: TheoremArg,
}

#[derive(Args)]
struct BuildArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 2)]
    l: usize,
    #[arg(long, value_enum, default_value = "deg_seq")]
    condition: TheoremArg,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also write the step log to steps.txt.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    subdivision: PathBuf,
    /// Expected branch count (default: as many as the file has).
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Subdivision,
    Hamilton,
    Separator,
}

#[derive(Args)]
struct OracleArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "subdivision")]
    mode: OracleMode,
    #[arg(long, default_value_t = 2)]
    l: usize,
    /// Root pair (default: 1 and n).
    #[arg(long, num_args = 2, value_names = ["U", "W"])]
    roots: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RggModeArg {
    Sandwich,
    Resilience,
}

#[derive(Args)]
struct RggArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Defaults to --seed.
    #[arg(long)]
    seed_base: Option<u64>,
    #[arg(long, value_enum, default_value = "sandwich")]
    mode: RggModeArg,
    /// Fill the runtime_ms column.
    #[arg(long)]
    timings: bool,
    /// CSV output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureArg {
    #[value(name = "cycle_power")]
    CyclePower,
    #[value(name = "half_plus_two")]
    HalfPlusTwo,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(value_enum)]
    conjecture: ConjectureArg,
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Defaults to --seed.
    #[arg(long)]
    seed_base: Option<u64>,
    /// CSV output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for counterexample edge lists.
    #[arg(long, default_value = ".")]
    cert_dir: PathBuf,
}

/// A failure already rendered as its one-line reason.
struct Failure {
    code: i32,
    line: String,
}

impl Failure {
    fn new(code: i32, line: impl Into<String>) -> Self {
        Failure {
            code,
            line: line.into(),
        }
    }
}

impl From<StageFailure> for Failure {
    fn from(f: StageFailure) -> Self {
        Failure::new(f.stage.exit_code(), f.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(exit::IO, format!("FAIL io {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text)
        .map_err(|e| Failure::new(exit::IO, format!("FAIL io {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn params_failure(e: impl ToString) -> Failure {
    Failure::new(exit::PARAMS, format!("FAIL params {}", e.to_string()))
}

fn gen(g: &Global, a: &GenArgs) -> Outcome {
    let spec = match a.family {
        Family::PowerPath => GeneratorSpec::PowerPath { n: a.n, k: a.k },
        Family::PowerCycle => GeneratorSpec::PowerCycle { n: a.n, k: a.k },
        Family::Extremal => GeneratorSpec::Extremal {
            n: a.n,
            k: a.k,
            l: a.l,
        },
        Family::Random => {
            let condition = match a.condition {
                ConditionArg::General | ConditionArg::DegSeq => SampleCondition::Theorem {
                    params: Params::new(a.n, a.k, a.l).map_err(params_failure)?,
                    which: if a.condition == ConditionArg::General {
                        TheoremCondition::General
                    } else {
                        TheoremCondition::DegSeq
                    },
                },
                ConditionArg::CyclePower => {
                    SampleCondition::Conjecture(ConjectureFloor::CyclePower { k: a.k })
                }
                ConditionArg::HalfPlusTwo => {
                    SampleCondition::Conjecture(ConjectureFloor::HalfPlusTwo)
                }
            };
            GeneratorSpec::RandomSubgraph {
                n: a.n,
                k: a.k,
                condition,
                seed: g.seed,
            }
        }
    };
    let graph = spec.generate().map_err(params_failure)?;
    // The wrap-around edges of a cycle power span the whole labelling.
    let k = match a.family {
        Family::PowerCycle => a.n - 1,
        Family::Random if a.condition == ConditionArg::CyclePower => a.n - 1,
        _ => a.k,
    };
    emit(a.out.as_deref(), &write_edge_list(&graph, k))
}

fn check(g: &Global, a: &CheckArgs) -> Outcome {
    let (graph, k) = load_graph(&read(&a.file)?, !g.no_witness_check)?;
    let params = Params::new(graph.n(), k, a.l).map_err(params_failure)?;
    let report = check_theorem_condition(&graph, &params, a.condition.into())
        .map_err(|e| Failure::new(exit::WITNESS, format!("FAIL witness {e}")))?;
    if report.passed() {
        println!("{report}");
        Ok(())
    } else {
        Err(Failure::new(
            exit::CONDITION,
            format!("FAIL condition {report}"),
        ))
    }
}

fn build_cmd(g: &Global, a: &BuildArgs) -> Outcome {
    let (graph, k) = load_graph(&read(&a.file)?, !g.no_witness_check)?;
    let out = build(&graph, k, a.l, a.condition.into())?;
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| Failure::new(exit::IO, format!("FAIL io {}: {e}", a.out_dir.display())))?;
    write(
        &a.out_dir.join("subdivision.txt"),
        &write_subdivision(&out.subdivision),
    )?;
    if let Some(p) = &out.hamilton_path {
        write(&a.out_dir.join("path.txt"), &write_path(p))?;
    }
    if let Some(c) = &out.hamilton_cycle {
        write(&a.out_dir.join("cycle.txt"), &write_cycle(c))?;
    }
    if a.trace {
        write(&a.out_dir.join("steps.txt"), &write_steps(&out.steps))?;
    }
    println!(
        "{} {}: {} branches, {} steps, verified",
        out.report,
        out.params,
        out.subdivision.branches.len(),
        out.steps.len()
    );
    Ok(())
}

fn verify(g: &Global, a: &VerifyArgs) -> Outcome {
    let (graph, k) = load_graph(&read(&a.graph)?, !g.no_witness_check)?;
    let s = parse_subdivision(&read(&a.subdivision)?)
        .map_err(|e| Failure::new(exit::PARSE, format!("FAIL parse {e}")))?;
    let l = a.l.unwrap_or(s.branches.len());
    let params = Params::new(graph.n(), k, l).map_err(params_failure)?;
    verify_subdivision(&graph, &s, &params).map_err(|v| {
        Failure::new(
            Stage::Verification.exit_code(),
            format!("FAIL verification {}", v.name()),
        )
    })?;
    println!("ok");
    Ok(())
}

fn oracle(g: &Global, a: &OracleArgs) -> Outcome {
    let (graph, _) = load_graph(&read(&a.graph)?, !g.no_witness_check)?;
    let roots = match a.roots.as_deref() {
        Some([u, w]) => (*u, *w),
        _ => (1, graph.n()),
    };
    let oracle_err = |e: bandsub::Error| Failure::new(exit::ORACLE, format!("FAIL oracle {e}"));
    let cert = match a.mode {
        OracleMode::Subdivision => {
            let cfg = OracleConfig {
                hamilton_cap: g.oracle_cap,
                subdivision_cap: g.oracle_cap,
            };
            certify_rooted_subdivision(&graph, roots, a.l, &cfg).map_err(oracle_err)?
        }
        OracleMode::Hamilton => {
            match has_hamilton_cycle(&graph, g.oracle_cap).map_err(oracle_err)? {
                Some(c) => Certificate::HamiltonFound(c),
                None => Certificate::Exhausted,
            }
        }
        OracleMode::Separator => min_root_separator(&graph, roots).map_err(oracle_err)?,
    };
    emit(a.out.as_deref(), &write_certificate(&cert))
}

fn rgg(g: &Global, a: &RggArgs) -> Outcome {
    let config = RggConfig {
        n: a.n,
        r: a.r,
        eps: a.eps,
        trials: a.trials,
        seed_base: a.seed_base.unwrap_or(g.seed),
        mode: match a.mode {
            RggModeArg::Sandwich => RggMode::Sandwich,
            RggModeArg::Resilience => RggMode::Resilience,
        },
        timings: a.timings,
    };
    let report = pool(g.jobs)
        .install(|| run_rgg(&config))
        .map_err(params_failure)?;
    emit(a.out.as_deref(), &report.csv())?;
    if a.out.is_some() {
        println!("{}", report.summary());
    }
    Ok(())
}

fn hunt_cmd(g: &Global, a: &HuntArgs) -> Outcome {
    let config = HuntConfig {
        conjecture: match a.conjecture {
            ConjectureArg::CyclePower => Conjecture::CyclePower,
            ConjectureArg::HalfPlusTwo => Conjecture::HalfPlusTwo,
        },
        n_range: a.n_min..=a.n_max,
        k_range: a.k_min..=a.k_max,
        trials: a.trials,
        seed_base: a.seed_base.unwrap_or(g.seed),
        oracle_cap: g.oracle_cap,
    };
    let report = pool(g.jobs)
        .install(|| hunt(&config))
        .map_err(|e| match e {
            HuntError::CellTooLarge { .. } => params_failure(e),
            HuntError::Core(e) => Failure::new(exit::ORACLE, format!("FAIL oracle {e}")),
        })?;
    emit(a.out.as_deref(), &report.csv())?;
    let mut dumped = Vec::new();
    for cx in report.counterexamples() {
        let path = a.cert_dir.join(format!(
            "counterexample_{}_n{}_k{}_{:016x}.txt",
            cx.conjecture.name(),
            cx.n,
            cx.k,
            cx.seed
        ));
        write(&path, &cx.certificate())?;
        dumped.push(path);
    }
    if a.out.is_some() {
        println!("{}", report.summary());
    }
    match dumped.first() {
        None => Ok(()),
        Some(first) => Err(Failure::new(
            exit::COUNTEREXAMPLE,
            format!(
                "FAIL counterexample {} certificates, first {}",
                dumped.len(),
                first.display()
            ),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Gen(a) => gen(g, a),
        Command::Check(a) => check(g, a),
        Command::Build(a) => build_cmd(g, a),
        Command::Verify(a) => verify(g, a),
        Command::Oracle(a) => oracle(g, a),
        Command::Rgg(a) => rgg(g, a),
        Command::Hunt(a) => hunt_cmd(g, a),
    };
    match result {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(f) => {
            eprintln!("{}", f.line);
            ExitCode::from(f.code as u8)
        }
    }
}
