use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pwb_planner::cli::{
    cmd_bench, cmd_decompose, cmd_plan, cmd_simulate, BenchOptions, DecomposeOptions, PlanOptions, ScenarioSource,
    SimulateOptions, EXIT_INPUT,
};
use pwb_planner::planners::PlannerKind;

/// Smooth path planning through convex cell corridors.
#[derive(Parser)]
#[command(name = "pwb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Scenario JSON file.
    scenario: Option<PathBuf>,
    /// Use a random workspace generated from this seed instead of a file.
    #[arg(long)]
    seed: Option<u64>,
    /// Safety margin in meters.
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Length weight of the smoothing objective.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
}

impl From<Source> for ScenarioSource {
    fn from(s: Source) -> Self {
        Self {
            path: s.scenario,
            seed: s.seed,
            epsilon: s.epsilon,
            lambda: s.lambda,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Plan one path and write it as JSON.
    Plan {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "pwb-qp")]
        planner: PlannerKind,
        /// Path JSON output (stdout if omitted).
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        metrics: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run both planners and print the comparison table.
    Bench {
        #[command(flatten)]
        source: Source,
        /// Also track each path with the Pure-Pursuit simulator.
        #[arg(long)]
        simulate: bool,
        /// Directory for path files, report.json and metrics.csv.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Plan and track a path, printing a JSON summary.
    Simulate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "pwb-qp")]
        planner: PlannerKind,
        /// CSV of the simulated trajectory.
        #[arg(long)]
        trajectory: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Triangulate the free space and print cells and adjacency as JSON.
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // Usage errors are input errors (exit 1); 2 is reserved for infeasibility.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = match cli.command {
        Command::Plan {
            source,
            planner,
            output,
            metrics,
            svg,
        } => {
            let opts = PlanOptions {
                source: source.into(),
                planner: Some(planner),
                output,
                metrics,
                svg,
            };
            cmd_plan(&opts, &mut out, &mut err)
        }
        Command::Bench {
            source,
            simulate,
            out_dir,
            svg,
        } => {
            let opts = BenchOptions {
                source: source.into(),
                simulate,
                out_dir,
                svg,
            };
            cmd_bench(&opts, &mut out, &mut err)
        }
        Command::Simulate {
            source,
            planner,
            trajectory,
            svg,
        } => {
            let opts = SimulateOptions {
                source: source.into(),
                planner: Some(planner),
                trajectory,
                svg,
            };
            cmd_simulate(&opts, &mut out, &mut err)
        }
        Command::Decompose { source, output, svg } => {
            let opts = DecomposeOptions {
                source: source.into(),
                output,
                svg,
            };
            cmd_decompose(&opts, &mut out, &mut err)
        }
    };
    ExitCode::from(code as u8)
}
