use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use steiner_core::connectivity::{feasible_superset, SingletonRule};
use steiner_core::generate::{generate, GenParams};
use steiner_core::graph::{ordering_from_cutwidth_layout, ordering_from_tree_decomposition, Ordering};
use steiner_core::io::{parse_instance, parse_layout, parse_solution, parse_tree_decomposition, write_instance, Instance};
use steiner_core::problem::{Problem, ProblemParams};
use steiner_core::report::{RunReport, Status};
use steiner_core::sse::{solve_extension_with_ordering, SolveOptions, SseResult};
use steiner_core::suites::{run_suite, SUITE_NAMES};
use steiner_core::verify::verify_solution;

#[derive(Parser)]
#[command(name = "steiner", version, about = "p-edge-connected Steiner extension and vertex deletion solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance (sse, bdds, pw1ds, tdds, pvc, scattered).
    Solve {
        problem: String,
        instance: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
        /// Tree decomposition whose preorder fixes the vertex ordering (sse only).
        #[arg(long, conflicts_with = "layout")]
        td: Option<PathBuf>,
        /// Linear layout whose order fixes the vertex ordering (sse only).
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Answer an instance by exhaustive search.
    Oracle {
        problem: String,
        instance: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Decide whether the terminals lie in a common p-edge-connected set.
    Check {
        instance: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Re-check a solution file against an instance.
    Verify {
        problem: String,
        instance: PathBuf,
        solution: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Write a generated instance.
    Gen {
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        hairs: Option<usize>,
        #[arg(long)]
        eta: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded self-check suites.
    Accept {
        /// Suites to run; all when absent.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone)]
struct SolveFlags {
    /// Size bound; falls back to `x k` in the instance.
    #[arg(long)]
    k: Option<usize>,
    /// Connectivity; falls back to `x p` in the instance.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    eta: Option<usize>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Require at least two vertices for p-edge-connectivity.
    #[arg(long)]
    strict_singleton: bool,
    /// Prime modulus for the matroid representation.
    #[arg(long)]
    field_prime: Option<u64>,
    /// Most candidate arcs considered at one vertex.
    #[arg(long, default_value_t = 14)]
    cap_arcs: usize,
    /// Largest representative-family dimension that is reduced.
    #[arg(long, default_value_t = 512)]
    cap_reduce: usize,
    /// Worker threads for the enumeration loops.
    #[arg(long)]
    jobs: Option<usize>,
    /// Single-line JSON report.
    #[arg(long)]
    json: bool,
    /// Leave wall time out of the report.
    #[arg(long)]
    no_timing: bool,
}

impl SolveFlags {
    fn rule(&self) -> SingletonRule {
        if self.strict_singleton {
            SingletonRule::Strict
        } else {
            SingletonRule::Lenient
        }
    }

    fn options(&self) -> SolveOptions {
        SolveOptions {
            seed: self.seed,
            rule: self.rule(),
            field_prime: self.field_prime,
            arc_cap: self.cap_arcs,
            reduce_cap: self.cap_reduce,
        }
    }

    fn from_instance(flag: Option<usize>, inst: &Instance, key: &str) -> anyhow::Result<Option<usize>> {
        match (flag, inst.extra(key)) {
            (Some(v), _) => Ok(Some(v)),
            (None, Some(v)) => Ok(Some(usize::try_from(v).map_err(|_| anyhow!("instance value {key} = {v} is negative"))?)),
            (None, None) => Ok(None),
        }
    }

    fn required(&self, flag: Option<usize>, inst: &Instance, key: &str) -> anyhow::Result<usize> {
        Self::from_instance(flag, inst, key)?.ok_or_else(|| anyhow!("missing --{key} (or `x {key}` in the instance)"))
    }

    fn problem(&self, name: &str, inst: &Instance) -> anyhow::Result<Problem> {
        let params = ProblemParams {
            eta: Self::from_instance(self.eta, inst, "eta")?,
            alpha: Self::from_instance(self.alpha, inst, "alpha")?,
            beta: Self::from_instance(self.beta, inst, "beta")?,
            lambda: Self::from_instance(self.lambda, inst, "lambda")?,
        };
        Ok(Problem::from_name(name, &params)?)
    }

    fn emit(&self, report: &RunReport) {
        if self.json {
            println!("{}", report.to_json());
        } else {
            print!("{}", report.to_text());
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = read(path)?;
    parse_instance(&text).with_context(|| format!("{}", path.display()))
}

fn configure_jobs(jobs: Option<usize>) -> anyhow::Result<()> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("cannot configure worker threads")?;
    }
    Ok(())
}

fn base_report(status: Status, flags: &SolveFlags, problem: &Problem, k: usize, p: usize) -> RunReport {
    let mut report = RunReport::new(status, flags.seed)
        .param("problem", problem.name())
        .param("k", k)
        .param("p", p)
        .param("strict_singleton", flags.strict_singleton);
    match *problem {
        Problem::Bdds { eta } | Problem::Tdds { eta } | Problem::Pvc { eta } => report = report.param("eta", eta),
        Problem::Scattered { alpha, beta, lambda } => {
            report = report.param("alpha", alpha).param("beta", beta).param("lambda", lambda)
        }
        Problem::Sse | Problem::Pw1ds => {}
    }
    report
}

fn answer_report(result: &SseResult, flags: &SolveFlags, problem: &Problem, k: usize, p: usize) -> RunReport {
    let status = if result.is_yes() { Status::Yes } else { Status::No };
    let mut report = base_report(status, flags, problem, k, p);
    report.solution = result.solution.as_ref().map(|s| s.iter().map(|v| v + 1).collect());
    report
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Yes | Status::Feasible | Status::Valid => 0,
        Status::No | Status::Infeasible | Status::Invalid => 1,
        Status::Error => 2,
    }
}

fn fixed_ordering(inst: &Instance, td: Option<&Path>, layout: Option<&Path>) -> anyhow::Result<Option<Ordering>> {
    let g = &inst.graph;
    let full = match (td, layout) {
        (Some(path), _) => {
            let file = parse_tree_decomposition(&read(path)?).with_context(|| format!("{}", path.display()))?;
            if file.vertex_count != g.n() {
                bail!("decomposition is for {} vertices, instance has {}", file.vertex_count, g.n());
            }
            file.decomposition.validate(g)?;
            ordering_from_tree_decomposition(g, &file.decomposition)?
        }
        (None, Some(path)) => {
            let layout = parse_layout(&read(path)?).with_context(|| format!("{}", path.display()))?;
            ordering_from_cutwidth_layout(g, &layout)?
        }
        (None, None) => return Ok(None),
    };
    Ok(Some(Ordering {
        sequence: full.sequence.into_iter().filter(|v| inst.terminals.binary_search(v).is_err()).collect(),
        claimed_degeneracy: full.claimed_degeneracy,
    }))
}

fn cmd_solve(name: &str, path: &Path, flags: &SolveFlags, td: Option<&Path>, layout: Option<&Path>, brute: bool) -> anyhow::Result<RunReport> {
    configure_jobs(flags.jobs)?;
    let inst = load_instance(path)?;
    let problem = flags.problem(name, &inst)?;
    let k = flags.required(flags.k, &inst, "k")?;
    let p = flags.required(flags.p, &inst, "p")?;
    let opts = flags.options();
    let ordering = fixed_ordering(&inst, td, layout)?;
    if ordering.is_some() && problem != Problem::Sse {
        bail!("--td and --layout only apply to sse");
    }
    let start = Instant::now();
    let result = match (&ordering, brute) {
        (_, true) => problem.brute(&inst.graph, &inst.terminals, k, p, &opts)?,
        (Some(order), false) => solve_extension_with_ordering(&inst.graph, &inst.terminals, k, p, order, &opts)?,
        (None, false) => problem.solve(&inst.graph, &inst.terminals, k, p, &opts)?,
    };
    let mut report = answer_report(&result, flags, &problem, k, p);
    if brute {
        report = report.param("method", "exhaustive");
    }
    if !flags.no_timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn cmd_check(path: &Path, flags: &SolveFlags) -> anyhow::Result<RunReport> {
    let inst = load_instance(path)?;
    let p = flags.required(flags.p, &inst, "p")?;
    let start = Instant::now();
    let region = feasible_superset(&inst.graph, &inst.terminals, p, flags.rule())?;
    let status = if region.is_some() { Status::Feasible } else { Status::Infeasible };
    let mut report = RunReport::new(status, flags.seed)
        .param("p", p)
        .param("strict_singleton", flags.strict_singleton);
    if let Some(r) = region {
        report = report.param("witness_size", r.len());
    }
    if !flags.no_timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn cmd_verify(name: &str, path: &Path, solution: &Path, flags: &SolveFlags) -> anyhow::Result<RunReport> {
    let inst = load_instance(path)?;
    let problem = flags.problem(name, &inst)?;
    let k = flags.required(flags.k, &inst, "k")?;
    let p = flags.required(flags.p, &inst, "p")?;
    let s = parse_solution(&read(solution)?).with_context(|| format!("{}", solution.display()))?;
    let verdict = verify_solution(&inst.graph, &problem, &inst.terminals, k, p, flags.rule(), &s)?;
    let mut report = base_report(Status::Valid, flags, &problem, k, p);
    if let Err(violation) = verdict {
        report.status = Status::Invalid;
        report.message = Some(violation.to_string());
    }
    Ok(report)
}

fn cmd_gen(kind: &str, params: GenParams, seed: u64, out: Option<&Path>) -> anyhow::Result<()> {
    let g = generate(kind, &params, seed)?;
    let text = write_instance(&Instance::new(g));
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_accept(suites: &[String], seed: u64, json: bool) -> anyhow::Result<u8> {
    let names: Vec<&str> = if suites.is_empty() {
        SUITE_NAMES.to_vec()
    } else {
        suites.iter().map(String::as_str).collect()
    };
    let mut all_passed = true;
    for name in names {
        let report = run_suite(name, seed)?;
        all_passed &= report.passed();
        if json {
            println!("{}", report.to_json());
        } else {
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!("{verdict} {name}: {} cases, {} failures", report.cases, report.failures);
            for example in &report.examples {
                println!("    {example}");
            }
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn run(cli: Cli) -> ExitCode {
    let (outcome, flags) = match &cli.command {
        Command::Solve {
            problem,
            instance,
            flags,
            td,
            layout,
        } => (cmd_solve(problem, instance, flags, td.as_deref(), layout.as_deref(), false), Some(flags)),
        Command::Oracle { problem, instance, flags } => (cmd_solve(problem, instance, flags, None, None, true), Some(flags)),
        Command::Check { instance, flags } => (cmd_check(instance, flags), Some(flags)),
        Command::Verify {
            problem,
            instance,
            solution,
            flags,
        } => (cmd_verify(problem, instance, solution, flags), Some(flags)),
        Command::Gen {
            kind,
            n,
            hairs,
            eta,
            seed,
            out,
        } => {
            let params = GenParams {
                n: *n,
                hairs: *hairs,
                eta: *eta,
            };
            return match cmd_gen(kind, params, *seed, out.as_deref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            };
        }
        Command::Accept { suites, seed, json } => {
            return match cmd_accept(suites, *seed, *json) {
                Ok(code) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            };
        }
    };
    let flags = flags.expect("report commands carry flags");
    match outcome {
        Ok(report) => {
            flags.emit(&report);
            ExitCode::from(exit_for(report.status))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if flags.json {
                let mut report = RunReport::new(Status::Error, flags.seed);
                report.message = Some(format!("{e:#}"));
                println!("{}", report.to_json());
            }
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
