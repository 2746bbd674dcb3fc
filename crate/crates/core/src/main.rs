use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wedge_planner::discrete_topology::wedge_of_circles;
use wedge_planner::planner::Fault;
use wedge_planner::probes::{
    run_validity_suite_with, ContinuityProbe, ContinuityReport, ProbeMode, ValidityReport,
};
use wedge_planner::svg::render_svg;
use wedge_planner::wire::{parse_query, trajectory_jsonl, PlanDocument};
use wedge_planner::{build_complex, classify_domain, DomainTag, Error, Planner, Query, RHO};

#[derive(Parser)]
#[command(name = "wedge-planner", version, about = "Two-robot motion planner on a wedge of three circles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct QueryInput {
    /// Query JSON file
    #[arg(long)]
    query: Option<PathBuf>,
    /// Query JSON given on the command line
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a path and print it as JSON
    Plan {
        #[command(flatten)]
        input: QueryInput,
        /// Number of trajectory samples for --svg and --trajectory
        #[arg(long, env = "WEDGE_PLANNER_SAMPLES", default_value_t = 200)]
        samples: usize,
        /// Write an SVG drawing of the traces
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write sampled states as JSON lines
        #[arg(long)]
        trajectory: Option<PathBuf>,
        /// Pole, vertex and node tolerance
        #[arg(long, env = "WEDGE_PLANNER_RHO", default_value_t = RHO)]
        rho: f64,
    },
    /// Print the domain (U, V or W) of a query
    Domain {
        #[command(flatten)]
        input: QueryInput,
        #[arg(long, env = "WEDGE_PLANNER_RHO", default_value_t = RHO)]
        rho: f64,
    },
    /// Build the discretized configuration complex and print its summary
    Topology {
        /// Edges per circle
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        circles: usize,
    },
    /// Run the randomized validity and continuity checks
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per continuity probe
        #[arg(long, default_value_t = 200)]
        continuity_trials: usize,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    SkipPreliminary,
    SkipStep1,
    SkipStep3,
    SkipFinal,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Fault {
        match f {
            FaultArg::SkipPreliminary => Fault::SkipPreliminary,
            FaultArg::SkipStep1 => Fault::SkipStep1,
            FaultArg::SkipStep3 => Fault::SkipStep3,
            FaultArg::SkipFinal => Fault::SkipFinal,
        }
    }
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Chaining { .. } | Error::NotInNetwork => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_query(input: &QueryInput) -> Result<Query, Failure> {
    let text = match (&input.query, &input.inline) {
        (Some(path), _) => fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(text)) => text.clone(),
        (None, None) => return Err(Failure::Input("no query given".into())),
    };
    Ok(parse_query(&text)?)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

/// Prints a line, ignoring a closed pipe on stdout.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn check_rho(rho: f64) -> Result<(), Failure> {
    if rho.is_finite() && rho > 0.0 && rho < 0.25 {
        Ok(())
    } else {
        Err(Failure::Input(format!("rho = {rho} must lie in (0, 0.25)")))
    }
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    validity: ValidityReport,
    continuity: Vec<ContinuityReport>,
    /// Informational: the planner is discontinuous across the vertex.
    vertex_crossing: ContinuityReport,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Plan { input, samples, svg, trajectory, rho } => {
            check_rho(rho)?;
            let q = read_query(&input)?;
            let plan = Planner::with_rho(rho).plan(&q.initial, &q.target)?;
            let report = plan.validate(1e-3);
            if !report.ok {
                return Err(Failure::Invariant(format!("plan failed validation: {:?}", report.violations)));
            }
            emit(&PlanDocument::from_plan(&plan).to_json());
            if svg.is_some() || trajectory.is_some() {
                let traj = plan.sample(samples)?;
                if let Some(path) = &svg {
                    write_file(path, &render_svg(&traj))?;
                }
                if let Some(path) = &trajectory {
                    write_file(path, &trajectory_jsonl(&traj))?;
                }
            }
        }
        Command::Domain { input, rho } => {
            check_rho(rho)?;
            let q = read_query(&input)?;
            emit(&classify_domain(&q.initial, &q.target, rho).to_string());
        }
        Command::Topology { k, circles } => {
            if circles == 0 {
                return Err(Failure::Input("need at least one circle".into()));
            }
            let summary = build_complex(&wedge_of_circles(circles, k)?);
            emit(&serde_json::to_string_pretty(&summary).expect("summary serializes"));
        }
        Command::Verify { trials, seed, continuity_trials, inject_fault } => {
            let planner = Planner {
                fault: inject_fault.map(Fault::from),
                ..Planner::default()
            };
            let validity = run_validity_suite_with(&planner, trials, seed);
            let continuity = [DomainTag::U, DomainTag::V, DomainTag::W]
                .into_iter()
                .map(|region| ContinuityProbe::new(region, 1e-4, 1e-3, continuity_trials, seed).run())
                .collect::<Result<Vec<_>, _>>()?;
            let vertex_crossing = ContinuityProbe {
                mode: ProbeMode::StraddleVertex,
                ..ContinuityProbe::new(DomainTag::U, 1e-4, 1e-3, continuity_trials, seed)
            }
            .run()?;
            let ok = validity.passed() && continuity.iter().all(|r| r.violations.is_empty());
            let report = VerifyReport { ok, validity, continuity, vertex_crossing };
            emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            if !ok {
                return Err(Failure::Invariant(format!(
                    "{} validity failures",
                    report.validity.failures.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
