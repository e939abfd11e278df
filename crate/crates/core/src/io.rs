//! Scenario files, path files, reports and error records.
//!
//! Everything here is JSON except the metrics table, which is also written
//! as CSV with one row per planner.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bezier::{BezierSegment, PwbPath};
use crate::decomposition::Workspace;
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point2};
use crate::planners::{PlanResult, PlannedPath, PlannerKind, DEFAULT_EPSILON, DEFAULT_LAMBDA};
use crate::simulator::SimConfig;

/// On-disk scenario. Angles are in degrees here and radians everywhere else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub boundary: Vec<Point2>,
    #[serde(default)]
    pub obstacles: Vec<Vec<Point2>>,
    pub start: Point2,
    pub goal: Point2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimOverrides>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steer_max_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lookahead_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wheelbase: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
}

impl SimOverrides {
    pub fn apply(&self, base: SimConfig) -> SimConfig {
        SimConfig {
            v_max: self.v_max.unwrap_or(base.v_max),
            steer_max: self.steer_max_deg.map_or(base.steer_max, f64::to_radians),
            lookahead_steps: self.lookahead_steps.unwrap_or(base.lookahead_steps),
            wheelbase: self.wheelbase.unwrap_or(base.wheelbase),
            dt: self.dt.unwrap_or(base.dt),
            ..base
        }
    }
}

/// Validated scenario with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: Option<String>,
    pub workspace: Workspace,
    pub epsilon: f64,
    pub lambda: f64,
    pub sim: SimConfig,
}

fn check_positive(problems: &mut Vec<String>, name: &str, v: f64) {
    if !v.is_finite() || v <= 0.0 {
        problems.push(format!("{name} must be positive, got {v}"));
    }
}

impl ScenarioFile {
    /// Validates geometry and parameters, collecting every violation.
    pub fn into_scenario(self) -> Result<Scenario> {
        let mut problems = Vec::new();
        let epsilon = self.epsilon.unwrap_or(DEFAULT_EPSILON);
        let lambda = self.lambda.unwrap_or(DEFAULT_LAMBDA);
        check_positive(&mut problems, "epsilon", epsilon);
        check_positive(&mut problems, "lambda", lambda);
        let sim = self.sim.unwrap_or_default().apply(SimConfig::default());
        if let Err(Error::Validation(mut v)) = sim.validate() {
            problems.append(&mut v);
        }

        let boundary = ConvexPolygon::cleaned(self.boundary)
            .map_err(|e| problems.push(format!("boundary: {e}")))
            .ok();
        let mut obstacles = Vec::with_capacity(self.obstacles.len());
        for (i, o) in self.obstacles.into_iter().enumerate() {
            match ConvexPolygon::cleaned(o) {
                Ok(p) => obstacles.push(p),
                Err(e) => problems.push(format!("obstacle {i}: {e}")),
            }
        }
        let workspace = match boundary {
            Some(b) if problems.is_empty() => match Workspace::new(b, obstacles, self.start, self.goal) {
                Ok(w) => Some(w),
                Err(Error::Validation(mut v)) => {
                    problems.append(&mut v);
                    None
                }
                Err(e) => return Err(e),
            },
            _ => None,
        };
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(Scenario {
            name: self.name,
            workspace: workspace.expect("validated above"),
            epsilon,
            lambda,
            sim,
        })
    }
}

impl Scenario {
    pub fn to_file(&self) -> ScenarioFile {
        let d = SimConfig::default();
        let s = &self.sim;
        let sim = SimOverrides {
            v_max: (s.v_max != d.v_max).then_some(s.v_max),
            steer_max_deg: (s.steer_max != d.steer_max).then_some(s.steer_max.to_degrees()),
            lookahead_steps: (s.lookahead_steps != d.lookahead_steps).then_some(s.lookahead_steps),
            wheelbase: (s.wheelbase != d.wheelbase).then_some(s.wheelbase),
            dt: (s.dt != d.dt).then_some(s.dt),
        };
        ScenarioFile {
            name: self.name.clone(),
            note: None,
            boundary: self.workspace.boundary.vertices().to_vec(),
            obstacles: self.workspace.obstacles.iter().map(|o| o.vertices().to_vec()).collect(),
            start: self.workspace.start,
            goal: self.workspace.goal,
            epsilon: Some(self.epsilon),
            lambda: Some(self.lambda),
            sim: (sim != SimOverrides::default()).then_some(sim),
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    serde_json::from_str::<ScenarioFile>(text)
        .map_err(parse_error)?
        .into_scenario()
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFileMetrics {
    pub length_m: f64,
    /// `null` for polylines with corners.
    pub max_curvature: Option<f64>,
}

/// Planned path as written to disk. Exactly one of `segments` and
/// `waypoints` is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub planner: PlannerKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<BezierSegment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waypoints: Option<Vec<Point2>>,
    pub metrics: PathFileMetrics,
}

impl PathFile {
    pub fn new(planner: PlannerKind, path: &PlannedPath) -> Result<Self> {
        let k = path.max_curvature()?;
        let metrics = PathFileMetrics {
            length_m: path.length(),
            max_curvature: k.is_finite().then_some(k),
        };
        let (segments, waypoints) = match path {
            PlannedPath::Bezier(p) => (Some(p.segments().to_vec()), None),
            PlannedPath::Polyline(w) => (None, Some(w.clone())),
        };
        Ok(Self {
            planner,
            segments,
            waypoints,
            metrics,
        })
    }

    pub fn from_result(r: &PlanResult) -> Result<Self> {
        Self::new(r.planner, &r.path)
    }

    pub fn to_path(&self) -> Result<PlannedPath> {
        match (&self.segments, &self.waypoints) {
            (Some(s), None) if !s.is_empty() => Ok(PlannedPath::Bezier(PwbPath::new(s.clone())?)),
            (None, Some(w)) if w.len() >= 2 => Ok(PlannedPath::Polyline(w.clone())),
            _ => Err(Error::Parse(
                "path file needs either a nonempty 'segments' list or at least two 'waypoints'".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("path file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_error)
    }
}

/// Machine-readable error record, printed on stderr by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub error: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<usize>,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        Self {
            error: e.kind().to_string(),
            message: e.to_string(),
            cell: e.cell(),
        }
    }
}

/// One planner's row of the benchmark table. Fields are `None` when the
/// planner failed or the simulation was not requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannerReport {
    pub planner: PlannerKind,
    pub error: Option<String>,
    /// Assembly plus solve, seconds.
    pub computing_time: Option<f64>,
    pub path_length: Option<f64>,
    pub n_variables: Option<usize>,
    pub n_constraints: Option<usize>,
    pub max_curvature: Option<f64>,
    pub execution_time: Option<f64>,
    pub max_deviation: Option<f64>,
    pub max_executed_curvature: Option<f64>,
    pub saturation_curvature: Option<f64>,
    pub reached_goal: Option<bool>,
}

impl PlannerReport {
    pub fn failed(planner: PlannerKind, e: &Error) -> Self {
        Self {
            planner,
            error: Some(format!("{}: {e}", e.kind())),
            computing_time: None,
            path_length: None,
            n_variables: None,
            n_constraints: None,
            max_curvature: None,
            execution_time: None,
            max_deviation: None,
            max_executed_curvature: None,
            saturation_curvature: None,
            reached_goal: None,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Option<String>,
    pub epsilon: f64,
    pub lambda: f64,
    pub channel_cells: Option<usize>,
    pub planners: Vec<PlannerReport>,
}

impl Report {
    pub fn get(&self, kind: PlannerKind) -> Option<&PlannerReport> {
        self.planners.iter().find(|p| p.planner == kind)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_error)
    }

    /// One CSV row per planner; missing values are empty fields.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.planners {
            w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    /// Metrics as rows and planners as columns.
    pub fn to_table(&self) -> String {
        fn cell<T: std::fmt::Display>(v: Option<T>) -> String {
            v.map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        type Row = (&'static str, fn(&PlannerReport) -> String);
        let rows: [Row; 8] = [
            ("Computing Time [s]", |r| {
                cell(r.computing_time.map(|t| format!("{t:.4}")))
            }),
            ("Path Length [m]", |r| cell(r.path_length.map(|t| format!("{t:.2}")))),
            ("Nr. of decision variables", |r| cell(r.n_variables)),
            ("Nr. of constraints", |r| cell(r.n_constraints)),
            ("Maximum Curvature [1/m]", |r| {
                match (r.error.is_none(), r.max_curvature) {
                    (true, None) => "inf".into(),
                    (_, k) => cell(k.map(|k| format!("{k:.3}"))),
                }
            }),
            ("Execution Time [s]", |r| {
                cell(r.execution_time.map(|t| format!("{t:.2}")))
            }),
            ("Maximum Trajectory Deviation [m]", |r| {
                cell(r.max_deviation.map(|t| format!("{t:.3}")))
            }),
            ("Error", |r| {
                let e = r.error.as_deref().unwrap_or("-");
                e.split(':').next().unwrap_or(e).to_string()
            }),
        ];
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let cols: Vec<Vec<String>> = self
            .planners
            .iter()
            .map(|p| rows.iter().map(|(_, f)| f(p)).collect())
            .collect();
        let widths: Vec<usize> = self
            .planners
            .iter()
            .zip(&cols)
            .map(|(p, c)| {
                c.iter()
                    .map(String::len)
                    .chain([p.planner.name().len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let _ = write!(out, "{:label_w$}", "");
        for (p, w) in self.planners.iter().zip(&widths) {
            let _ = write!(out, "  {:>w$}", p.planner.name());
        }
        out.push('\n');
        for (i, (label, _)) in rows.iter().enumerate() {
            if i == rows.len() - 1 && self.planners.iter().all(PlannerReport::succeeded) {
                break;
            }
            let _ = write!(out, "{label:label_w$}");
            for (c, w) in cols.iter().zip(&widths) {
                let _ = write!(out, "  {:>w$}", c[i]);
            }
            out.push('\n');
        }
        out
    }
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "boundary": [[0,0],[10,0],[10,6],[0,6]],
        "obstacles": [[[4,2],[6,2],[6,4],[4,4]]],
        "start": [1,1],
        "goal": [9,5]
    }"#;

    #[test]
    fn defaults_are_filled_in() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.epsilon, 0.2);
        assert_eq!(s.lambda, 10.0);
        assert_eq!(s.sim, SimConfig::default());
        assert_eq!(s.workspace.obstacles.len(), 1);
    }

    #[test]
    fn unknown_field_is_a_parse_error() {
        let text = MINIMAL.replace("\"start\"", "\"speed\": 3, \"start\"");
        assert!(matches!(parse_scenario(&text), Err(Error::Parse(m)) if m.contains("speed")));
    }

    #[test]
    fn negative_margin_is_a_validation_error() {
        let text = MINIMAL.replace("\"start\"", "\"epsilon\": -0.1, \"start\"");
        assert!(matches!(parse_scenario(&text), Err(Error::Validation(v)) if v[0].contains("epsilon")));
    }

    #[test]
    fn obstacle_outside_boundary_is_rejected() {
        let text = MINIMAL.replace("[[4,2],[6,2],[6,4],[4,4]]", "[[9,2],[12,2],[12,4],[9,4]]");
        assert!(matches!(parse_scenario(&text), Err(Error::Validation(_))));
    }

    #[test]
    fn sim_overrides_use_degrees() {
        let text = MINIMAL.replace("\"start\"", "\"sim\": {\"steer_max_deg\": 30, \"dt\": 0.02}, \"start\"");
        let s = parse_scenario(&text).unwrap();
        assert!((s.sim.steer_max - 30f64.to_radians()).abs() < 1e-15);
        assert_eq!(s.sim.dt, 0.02);
        let back = s.to_file().into_scenario().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn path_file_roundtrip_is_bit_exact() {
        let seg = BezierSegment::new(
            Point2::new(0.1, 1.0 / 3.0),
            Point2::new(std::f64::consts::PI, 2.0_f64.sqrt()),
            Point2::new(5.0, 1e-17),
        );
        let path = PlannedPath::Bezier(PwbPath::new(vec![seg]).unwrap());
        let file = PathFile::new(PlannerKind::PwbQp, &path).unwrap();
        let back = PathFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_path().unwrap(), path);
    }

    #[test]
    fn polyline_curvature_is_null() {
        let w = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0)];
        let file = PathFile::new(PlannerKind::PwlQp, &PlannedPath::Polyline(w)).unwrap();
        assert!(file.to_json().contains("\"max_curvature\": null"));
        assert_eq!(file.metrics.length_m, 2.0);
    }

    #[test]
    fn error_record_names_the_cell() {
        let e = Error::MarginTooLarge {
            cell: 4,
            epsilon: 0.2,
            reason: "tiny".into(),
        };
        let r = ErrorRecord::from(&e);
        assert_eq!(r.error, "margin-too-large");
        assert_eq!(r.cell, Some(4));
    }
}
