//! Command implementations behind the `pwb` binary.
//!
//! Each command writes its results to files or `out` and returns a process
//! exit code: 0 on success, 2 when the scenario is valid but cannot be
//! planned with the requested margin, 1 for bad input. Failures also print
//! an [`ErrorRecord`] as one line of JSON on `err`.

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::decomposition::{triangulate_free_space, Adjacency};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::io::{load_scenario, write_file, ErrorRecord, PathFile, PlannerReport, Report, Scenario};
use crate::planners::{plan_pwb, plan_pwl, Corridor, PlanResult, PlannerKind};
use crate::scenarios::random_scenario;
use crate::simulator::{simulate, SimResult};
use crate::svg::SvgScene;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_infeasibility() {
        EXIT_INFEASIBLE
    } else {
        EXIT_INPUT
    }
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let rec = serde_json::to_string(&ErrorRecord::from(e)).expect("error record serializes");
    let _ = writeln!(err, "{rec}");
    exit_code(e)
}

/// Where the scenario comes from and which parameters to override.
#[derive(Debug, Clone, Default)]
pub struct ScenarioSource {
    pub path: Option<PathBuf>,
    /// Generate a random workspace instead of reading a file.
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub lambda: Option<f64>,
}

impl ScenarioSource {
    pub fn resolve(&self) -> Result<Scenario> {
        let mut s = match (&self.path, self.seed) {
            (Some(p), None) => load_scenario(p)?,
            (None, Some(seed)) => random_scenario(seed)?,
            (Some(_), Some(_)) => {
                return Err(Error::InvalidArgument(
                    "give either a scenario file or --seed, not both".into(),
                ))
            }
            (None, None) => return Err(Error::InvalidArgument("a scenario file or --seed is required".into())),
        };
        let mut problems = Vec::new();
        if let Some(e) = self.epsilon {
            if !e.is_finite() || e <= 0.0 {
                problems.push(format!("epsilon must be positive, got {e}"));
            }
            s.epsilon = e;
        }
        if let Some(l) = self.lambda {
            if !l.is_finite() || l <= 0.0 {
                problems.push(format!("lambda must be positive, got {l}"));
            }
            s.lambda = l;
        }
        if problems.is_empty() {
            Ok(s)
        } else {
            Err(Error::Validation(problems))
        }
    }
}

/// Runs one planner on a prepared corridor.
pub fn run_planner(s: &Scenario, corridor: &Corridor, kind: PlannerKind) -> Result<PlanResult> {
    let ws = &s.workspace;
    match kind {
        PlannerKind::PwbQp => plan_pwb(&corridor.pwb_request(ws.start, ws.goal, s.lambda)),
        PlannerKind::PwlQp => plan_pwl(&corridor.graph, &corridor.channel, ws.start, ws.goal, s.epsilon),
    }
}

/// Summary written by `plan --metrics`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanMetrics {
    pub planner: PlannerKind,
    pub status: crate::qp::QpStatus,
    pub objective: f64,
    pub computing_time: f64,
    pub n_variables: usize,
    pub n_constraints: usize,
    pub kkt_residual: f64,
    pub path_length: f64,
    pub max_curvature: Option<f64>,
    pub channel_cells: usize,
}

#[derive(Debug, Clone, Default)]
pub struct PlanOptions {
    pub source: ScenarioSource,
    pub planner: Option<PlannerKind>,
    /// Path JSON; printed to `out` when absent.
    pub output: Option<PathBuf>,
    pub metrics: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

pub fn cmd_plan(opts: &PlanOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match plan_inner(opts, out) {
        Ok(()) => EXIT_OK,
        Err(e) => report_error(err, &e),
    }
}

fn plan_inner(opts: &PlanOptions, out: &mut dyn Write) -> Result<()> {
    let s = opts.source.resolve()?;
    let kind = opts.planner.unwrap_or(PlannerKind::PwbQp);
    let corridor = Corridor::build(&s.workspace, s.epsilon)?;
    let result = run_planner(&s, &corridor, kind)?;
    let file = PathFile::from_result(&result)?;
    match &opts.output {
        Some(p) => write_file(p, &file.to_json())?,
        None => out.write_all(file.to_json().as_bytes())?,
    }
    if let Some(p) = &opts.metrics {
        let m = PlanMetrics {
            planner: kind,
            status: result.status,
            objective: result.objective,
            computing_time: result.solver_time,
            n_variables: result.n_variables,
            n_constraints: result.n_constraints,
            kkt_residual: result.kkt_residual,
            path_length: file.metrics.length_m,
            max_curvature: file.metrics.max_curvature,
            channel_cells: corridor.channel.len(),
        };
        write_file(
            p,
            &(serde_json::to_string_pretty(&m).expect("metrics serialize") + "\n"),
        )?;
    }
    if let Some(p) = &opts.svg {
        let mut scene = SvgScene::new(&s.workspace);
        scene.graph = Some(&corridor.graph);
        scene.channel = Some(&corridor.channel);
        scene.safe_pairs = &corridor.pairs;
        scene.paths.push((&result.path, "#1d3557"));
        write_file(p, &scene.render())?;
    }
    Ok(())
}

/// Benchmark results: the report plus the path file of every planner that
/// succeeded, in planner order.
#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub report: Report,
    pub paths: Vec<PathFile>,
    pub results: Vec<PlanResult>,
    pub simulations: Vec<SimResult>,
    pub corridor: Option<Corridor>,
}

/// Runs both planners (and optionally the tracking simulation) on a
/// scenario. Planner failures are recorded in the report rows.
pub fn run_bench(s: &Scenario, with_simulation: bool) -> Result<BenchOutcome> {
    let kinds = [PlannerKind::PwbQp, PlannerKind::PwlQp];
    let corridor = match Corridor::build(&s.workspace, s.epsilon) {
        Ok(c) => c,
        Err(e) if e.is_infeasibility() => {
            return Ok(BenchOutcome {
                report: Report {
                    scenario: s.name.clone(),
                    epsilon: s.epsilon,
                    lambda: s.lambda,
                    channel_cells: None,
                    planners: kinds.iter().map(|&k| PlannerReport::failed(k, &e)).collect(),
                },
                paths: vec![],
                results: vec![],
                simulations: vec![],
                corridor: None,
            })
        }
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    let mut paths = Vec::new();
    let mut results = Vec::new();
    let mut simulations = Vec::new();
    for kind in kinds {
        let r = match run_planner(s, &corridor, kind) {
            Ok(r) => r,
            Err(e) => {
                rows.push(PlannerReport::failed(kind, &e));
                continue;
            }
        };
        let file = PathFile::from_result(&r)?;
        let mut row = PlannerReport {
            planner: kind,
            error: None,
            computing_time: Some(r.solver_time),
            path_length: Some(file.metrics.length_m),
            n_variables: Some(r.n_variables),
            n_constraints: Some(r.n_constraints),
            max_curvature: file.metrics.max_curvature,
            execution_time: None,
            max_deviation: None,
            max_executed_curvature: None,
            saturation_curvature: None,
            reached_goal: None,
        };
        if with_simulation {
            let sim = simulate(&r.path, &s.sim)?;
            row.execution_time = Some(sim.execution_time);
            row.max_deviation = Some(sim.max_deviation);
            row.max_executed_curvature = Some(sim.max_executed_curvature);
            row.saturation_curvature = Some(sim.saturation_curvature);
            row.reached_goal = Some(sim.reached_goal);
            simulations.push(sim);
        }
        rows.push(row);
        paths.push(file);
        results.push(r);
    }
    Ok(BenchOutcome {
        report: Report {
            scenario: s.name.clone(),
            epsilon: s.epsilon,
            lambda: s.lambda,
            channel_cells: Some(corridor.channel.len()),
            planners: rows,
        },
        paths,
        results,
        simulations,
        corridor: Some(corridor),
    })
}

#[derive(Debug, Clone, Default)]
pub struct BenchOptions {
    pub source: ScenarioSource,
    pub simulate: bool,
    /// Directory for `<planner>.path.json`, `report.json` and `metrics.csv`.
    pub out_dir: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Prints the metrics table on `out`. Exits 0 if at least one planner
/// succeeded.
pub fn cmd_bench(opts: &BenchOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (s, bench) = match opts
        .source
        .resolve()
        .and_then(|s| run_bench(&s, opts.simulate).map(|b| (s, b)))
    {
        Ok(v) => v,
        Err(e) => return report_error(err, &e),
    };
    let written = (|| -> Result<()> {
        out.write_all(bench.report.to_table().as_bytes())?;
        if let Some(dir) = &opts.out_dir {
            for p in &bench.paths {
                write_file(&dir.join(format!("{}.path.json", p.planner)), &p.to_json())?;
            }
            write_file(&dir.join("report.json"), &bench.report.to_json())?;
            write_file(&dir.join("metrics.csv"), &bench.report.to_csv()?)?;
        }
        if let Some(p) = &opts.svg {
            let mut scene = SvgScene::new(&s.workspace);
            if let Some(c) = &bench.corridor {
                scene.graph = Some(&c.graph);
                scene.channel = Some(&c.channel);
                scene.safe_pairs = &c.pairs;
            }
            let colors = ["#1d3557", "#e63946"];
            for (r, color) in bench.results.iter().zip(colors) {
                scene.paths.push((&r.path, color));
            }
            write_file(p, &scene.render())?;
        }
        Ok(())
    })();
    if let Err(e) = written {
        return report_error(err, &e);
    }
    match bench.report.planners.iter().find(|r| !r.succeeded()) {
        None => EXIT_OK,
        Some(_) if bench.report.planners.iter().any(PlannerReport::succeeded) => EXIT_OK,
        Some(_) => {
            for r in &bench.report.planners {
                let _ = writeln!(err, "{}: {}", r.planner, r.error.as_deref().unwrap_or(""));
            }
            EXIT_INFEASIBLE
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SimulateOptions {
    pub source: ScenarioSource,
    pub planner: Option<PlannerKind>,
    /// CSV of `time,x,y,heading` rows.
    pub trajectory: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
struct SimSummary {
    planner: PlannerKind,
    path_length: f64,
    execution_time: f64,
    max_deviation: f64,
    max_reference_curvature: Option<f64>,
    max_executed_curvature: f64,
    saturation_curvature: f64,
    reached_goal: bool,
}

/// Plans, tracks the path and prints a JSON summary on `out`.
pub fn cmd_simulate(opts: &SimulateOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match simulate_inner(opts, out) {
        Ok(()) => EXIT_OK,
        Err(e) => report_error(err, &e),
    }
}

fn simulate_inner(opts: &SimulateOptions, out: &mut dyn Write) -> Result<()> {
    let s = opts.source.resolve()?;
    let kind = opts.planner.unwrap_or(PlannerKind::PwbQp);
    let corridor = Corridor::build(&s.workspace, s.epsilon)?;
    let plan = run_planner(&s, &corridor, kind)?;
    let sim = simulate(&plan.path, &s.sim)?;
    let summary = SimSummary {
        planner: kind,
        path_length: plan.path.length(),
        execution_time: sim.execution_time,
        max_deviation: sim.max_deviation,
        max_reference_curvature: sim.max_reference_curvature,
        max_executed_curvature: sim.max_executed_curvature,
        saturation_curvature: sim.saturation_curvature,
        reached_goal: sim.reached_goal,
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    )?;
    if let Some(p) = &opts.trajectory {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["time", "x", "y", "heading"]).map_err(csv_err)?;
        for st in &sim.trajectory {
            w.serialize((st.time, st.x, st.y, st.heading)).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        write_file(p, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    }
    if let Some(p) = &opts.svg {
        let mut scene = SvgScene::new(&s.workspace);
        scene.graph = Some(&corridor.graph);
        scene.channel = Some(&corridor.channel);
        scene.paths.push((&plan.path, "#1d3557"));
        scene.trajectory = Some(&sim.trajectory);
        write_file(p, &scene.render())?;
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct DecomposeOptions {
    pub source: ScenarioSource,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Cells and adjacency as written by `decompose`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionFile {
    pub cells: Vec<Vec<Point2>>,
    pub adjacency: Vec<AdjacencyRecord>,
    pub channel: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjacencyRecord {
    pub a: usize,
    pub b: usize,
    pub facet: [Point2; 2],
}

impl From<&Adjacency> for AdjacencyRecord {
    fn from(a: &Adjacency) -> Self {
        Self {
            a: a.a,
            b: a.b,
            facet: [a.facet.start, a.facet.end],
        }
    }
}

pub fn cmd_decompose(opts: &DecomposeOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match decompose_inner(opts, out) {
        Ok(()) => EXIT_OK,
        Err(e) => report_error(err, &e),
    }
}

fn decompose_inner(opts: &DecomposeOptions, out: &mut dyn Write) -> Result<()> {
    let s = opts.source.resolve()?;
    let graph = triangulate_free_space(&s.workspace)?;
    let channel = crate::decomposition::find_channel(&graph, s.workspace.start, s.workspace.goal).ok();
    let file = DecompositionFile {
        cells: graph.cell_vertices.clone(),
        adjacency: graph.adjacency.iter().map(AdjacencyRecord::from).collect(),
        channel: channel.as_ref().map(|c| c.cell_indices.clone()),
    };
    let text = serde_json::to_string_pretty(&file).expect("decomposition serializes") + "\n";
    match &opts.output {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if let Some(p) = &opts.svg {
        let mut scene = SvgScene::new(&s.workspace);
        scene.graph = Some(&graph);
        scene.channel = channel.as_ref();
        write_file(p, &scene.render())?;
    }
    Ok(())
}
