mod common;

use std::path::PathBuf;
use std::process::Command;

use common::fixture_path;
use pwb_planner::cli::{
    cmd_bench, cmd_decompose, cmd_plan, cmd_simulate, BenchOptions, DecomposeOptions, PlanOptions, ScenarioSource,
    SimulateOptions, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK,
};
use pwb_planner::io::{ErrorRecord, PathFile, Report};
use pwb_planner::planners::PlannerKind;

fn source(name: &str) -> ScenarioSource {
    ScenarioSource {
        path: Some(fixture_path(name)),
        ..Default::default()
    }
}

fn run<F: FnOnce(&mut Vec<u8>, &mut Vec<u8>) -> i32>(f: F) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = f(&mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn plan_writes_path_metrics_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let opts = PlanOptions {
        source: source("sparse"),
        planner: Some(PlannerKind::PwbQp),
        output: Some(dir.path().join("path.json")),
        metrics: Some(dir.path().join("metrics.json")),
        svg: Some(dir.path().join("plan.svg")),
    };
    let (code, _, err) = run(|o, e| cmd_plan(&opts, o, e));
    assert_eq!(code, EXIT_OK, "{err}");
    let file = PathFile::from_json(&std::fs::read_to_string(dir.path().join("path.json")).unwrap()).unwrap();
    let segments = file.segments.as_ref().unwrap().len();
    let svg = std::fs::read_to_string(dir.path().join("plan.svg")).unwrap();
    assert_eq!(svg.matches("class=\"segment\"").count(), segments);
    let metrics: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    assert_eq!(metrics["n_variables"], 6 * segments);
    assert_eq!(metrics["status"], "optimal");
}

#[test]
fn path_json_round_trip_is_bit_exact() {
    let (code, out, _) = run(|o, e| {
        cmd_plan(
            &PlanOptions {
                source: source("narrow"),
                ..Default::default()
            },
            o,
            e,
        )
    });
    assert_eq!(code, EXIT_OK);
    let file = PathFile::from_json(&out).unwrap();
    let again = PathFile::new(file.planner, &file.to_path().unwrap()).unwrap();
    assert_eq!(file.to_json(), out);
    assert_eq!(again.segments, file.segments);
}

#[test]
fn margin_too_large_exits_2_and_names_the_cell() {
    let (code, out, err) = run(|o, e| {
        cmd_plan(
            &PlanOptions {
                source: source("tight"),
                ..Default::default()
            },
            o,
            e,
        )
    });
    assert_eq!(code, EXIT_INFEASIBLE);
    assert!(out.is_empty());
    let rec: ErrorRecord = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(rec.error, "margin-too-large");
    assert!(rec.cell.is_some());
}

#[test]
fn missing_file_exits_1() {
    let opts = PlanOptions {
        source: ScenarioSource {
            path: Some(PathBuf::from("/nonexistent/scenario.json")),
            ..Default::default()
        },
        ..Default::default()
    };
    let (code, _, err) = run(|o, e| cmd_plan(&opts, o, e));
    assert_eq!(code, EXIT_INPUT);
    let rec: ErrorRecord = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(rec.error, "io");
}

#[test]
fn bench_reports_deviation_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let opts = BenchOptions {
        source: source("narrow"),
        simulate: true,
        out_dir: Some(dir.path().to_path_buf()),
        svg: Some(dir.path().join("bench.svg")),
    };
    let (code, table, err) = run(|o, e| cmd_bench(&opts, o, e));
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(table.contains("Maximum Trajectory Deviation [m]"));
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text);
    for kind in [PlannerKind::PwbQp, PlannerKind::PwlQp] {
        assert!(report.get(kind).unwrap().max_deviation.is_some(), "{kind}");
        assert!(dir.path().join(format!("{kind}.path.json")).exists());
    }
    let csv = std::fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn bench_variable_count_is_six_per_cell() {
    let (code, _, _) = run(|o, e| {
        cmd_bench(
            &BenchOptions {
                source: source("sparse"),
                ..Default::default()
            },
            o,
            e,
        )
    });
    assert_eq!(code, EXIT_OK);
    let s = pwb_planner::io::load_scenario(&fixture_path("sparse")).unwrap();
    let bench = pwb_planner::cli::run_bench(&s, false).unwrap();
    let cells = bench.report.channel_cells.unwrap();
    assert_eq!(
        bench.report.get(PlannerKind::PwbQp).unwrap().n_variables,
        Some(6 * cells)
    );
}

#[test]
fn bench_fails_with_2_when_no_planner_succeeds() {
    let (code, _, err) = run(|o, e| {
        cmd_bench(
            &BenchOptions {
                source: source("tight"),
                ..Default::default()
            },
            o,
            e,
        )
    });
    assert_eq!(code, EXIT_INFEASIBLE, "{err}");
}

#[test]
fn simulate_writes_trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let opts = SimulateOptions {
        source: source("sparse"),
        planner: Some(PlannerKind::PwlQp),
        trajectory: Some(dir.path().join("traj.csv")),
        svg: None,
    };
    let (code, out, err) = run(|o, e| cmd_simulate(&opts, o, e));
    assert_eq!(code, EXIT_OK, "{err}");
    let summary: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["reached_goal"], true);
    assert!(summary["max_reference_curvature"].is_null());
    let csv = std::fs::read_to_string(dir.path().join("traj.csv")).unwrap();
    assert!(csv.starts_with("time,x,y,heading\n"));
}

#[test]
fn decompose_lists_cells_and_adjacency() {
    let (code, out, _) = run(|o, e| {
        cmd_decompose(
            &DecomposeOptions {
                source: source("sparse"),
                ..Default::default()
            },
            o,
            e,
        )
    });
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let cells = v["cells"].as_array().unwrap().len();
    let adjacency = v["adjacency"].as_array().unwrap();
    assert!(cells > 0 && !adjacency.is_empty());
    for a in adjacency {
        assert!(a["a"].as_u64().unwrap() < a["b"].as_u64().unwrap());
    }
    assert!(v["channel"].as_array().is_some());
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let render = |name: &str| {
        let p = dir.path().join(name);
        let opts = PlanOptions {
            source: source("narrow"),
            svg: Some(p.clone()),
            ..Default::default()
        };
        assert_eq!(run(|o, e| cmd_plan(&opts, o, e)).0, EXIT_OK);
        std::fs::read(p).unwrap()
    };
    assert_eq!(render("a.svg"), render("b.svg"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pwb");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let ok = status(&["plan", fixture_path("sparse").to_str().unwrap(), "--planner", "pwl-qp"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(PathFile::from_json(&String::from_utf8(ok.stdout).unwrap())
        .unwrap()
        .waypoints
        .is_some());

    let infeasible = status(&["plan", fixture_path("tight").to_str().unwrap()]);
    assert_eq!(infeasible.status.code(), Some(2));

    let bad_margin = status(&["plan", fixture_path("sparse").to_str().unwrap(), "--epsilon", "-1"]);
    assert_eq!(bad_margin.status.code(), Some(1));

    let seeded = status(&["decompose", "--seed", "3"]);
    assert_eq!(seeded.status.code(), Some(0));

    let missing = status(&["plan", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    let bin = env!("CARGO_BIN_EXE_pwb");
    let out = Command::new(bin).args(["plan", "--planner", "rrt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
