//! Kinematic bicycle robot tracking a reference path with Pure Pursuit.
//!
//! The reference is resampled at a fixed arc-length spacing. The look-ahead
//! target sits a fixed number of samples ahead of the nearest sample, and
//! the steering law is `delta = atan2(2 L sin(alpha), L_d)` with `alpha` the
//! bearing of the target relative to the heading and `L_d` its distance.
//! The state `(x, y, theta)` is integrated with fixed-step RK4.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bezier::PwbPath;
use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, Point2};
use crate::planners::PlannedPath;

/// Sub-steps per Bezier segment in the arc-length table.
const ARC_TABLE_STEPS: usize = 2048;
/// Spacing of the dense polyline used to measure deviation from a curve.
const DEVIATION_SPACING: f64 = 0.002;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobotState {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub time: f64,
}

impl RobotState {
    pub fn position(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}

/// Wraps an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// m/s
    pub v_max: f64,
    /// rad
    pub steer_max: f64,
    pub lookahead_steps: usize,
    /// m
    pub wheelbase: f64,
    /// s
    pub dt: f64,
    /// m
    pub sample_spacing: f64,
    /// m
    pub goal_tolerance: f64,
}

impl Default for SimConfig {
    /// 1 m/s, 35 degree steering, 15-sample look-ahead. The 0.35 m wheelbase
    /// makes the saturation curvature `tan(35 deg) / 0.35` about 2.0 rad/m.
    fn default() -> Self {
        Self {
            v_max: 1.0,
            steer_max: 35f64.to_radians(),
            lookahead_steps: 15,
            wheelbase: 0.35,
            dt: 0.01,
            sample_spacing: 0.05,
            goal_tolerance: 0.05,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("v_max", self.v_max),
            ("steer_max", self.steer_max),
            ("wheelbase", self.wheelbase),
            ("dt", self.dt),
            ("sample_spacing", self.sample_spacing),
            ("goal_tolerance", self.goal_tolerance),
        ];
        let mut problems: Vec<String> = positive
            .iter()
            .filter(|(_, v)| !v.is_finite() || *v <= 0.0)
            .map(|(n, v)| format!("{n} must be positive, got {v}"))
            .collect();
        if self.lookahead_steps == 0 {
            problems.push("lookahead_steps must be positive".into());
        }
        if self.steer_max >= PI / 2.0 {
            problems.push("steer_max must be below 90 degrees".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// Tightest curvature the robot can drive, `tan(steer_max) / wheelbase`.
    pub fn saturation_curvature(&self) -> f64 {
        self.steer_max.tan() / self.wheelbase
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub trajectory: Vec<RobotState>,
    pub execution_time: f64,
    pub max_deviation: f64,
    /// `None` when the reference has corners (unbounded curvature).
    pub max_reference_curvature: Option<f64>,
    /// Largest `|tan(delta)| / wheelbase` commanded during the run.
    pub max_executed_curvature: f64,
    pub saturation_curvature: f64,
    pub reached_goal: bool,
}

/// Point at arc length `s` along a polyline with cumulative lengths `cum`.
fn polyline_point_at(pts: &[Point2], cum: &[f64], s: f64) -> Point2 {
    let k = cum.partition_point(|&c| c < s).clamp(1, pts.len() - 1);
    let seg = cum[k] - cum[k - 1];
    if seg <= 0.0 {
        return pts[k];
    }
    pts[k - 1].lerp(pts[k], ((s - cum[k - 1]) / seg).clamp(0.0, 1.0))
}

fn cumulative(pts: &[Point2]) -> Vec<f64> {
    let mut cum = Vec::with_capacity(pts.len());
    let mut acc = 0.0;
    cum.push(0.0);
    for w in pts.windows(2) {
        acc += w[0].distance(w[1]);
        cum.push(acc);
    }
    cum
}

/// Global Bezier parameters and cumulative chord lengths on a fine grid.
fn bezier_arc_table(path: &PwbPath) -> (Vec<f64>, Vec<Point2>, Vec<f64>) {
    let n = path.segments().len() * ARC_TABLE_STEPS;
    let params: Vec<f64> = (0..=n).map(|i| i as f64 / ARC_TABLE_STEPS as f64).collect();
    let pts: Vec<Point2> = params.iter().map(|&s| path.point_at(s)).collect();
    let cum = cumulative(&pts);
    (params, pts, cum)
}

/// Arc-length resampling of a reference path. Both endpoints are included
/// exactly and the spacing is `L / round(L / spacing)`.
pub fn discretize_reference(path: &PlannedPath, spacing: f64) -> Result<Vec<Point2>> {
    if !spacing.is_finite() || spacing <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "sample spacing must be positive, got {spacing}"
        )));
    }
    let (pts, cum, bezier) = match path {
        PlannedPath::Polyline(w) => (w.clone(), cumulative(w), None),
        PlannedPath::Bezier(p) => {
            let (params, pts, cum) = bezier_arc_table(p);
            (pts, cum, Some((p, params)))
        }
    };
    let total = *cum.last().unwrap_or(&0.0);
    if total.is_nan() || total <= 1e-9 {
        return Err(Error::InvalidArgument("reference path has zero length".into()));
    }
    let n = ((total / spacing).round() as usize).max(1);
    let mut out = Vec::with_capacity(n + 1);
    out.push(path.start());
    for i in 1..n {
        let s = total * i as f64 / n as f64;
        let p = match &bezier {
            None => polyline_point_at(&pts, &cum, s),
            Some((bp, params)) => {
                // invert the arc-length table, then evaluate the curve exactly
                let k = cum.partition_point(|&c| c < s).clamp(1, cum.len() - 1);
                let seg = cum[k] - cum[k - 1];
                let f = if seg > 0.0 { (s - cum[k - 1]) / seg } else { 0.0 };
                bp.point_at(params[k - 1] + f * (params[k] - params[k - 1]))
            }
        };
        out.push(p);
    }
    out.push(path.end());
    Ok(out)
}

/// Dense polyline representation used for deviation measurements.
fn deviation_geometry(path: &PlannedPath) -> Vec<Point2> {
    match path {
        PlannedPath::Polyline(w) => w.clone(),
        PlannedPath::Bezier(p) => {
            let mut pts = Vec::new();
            for s in p.segments() {
                let n = ((s.arc_length() / DEVIATION_SPACING).ceil() as usize).max(8);
                let start = if pts.is_empty() { 0 } else { 1 };
                pts.extend((start..=n).map(|i| s.point_at(i as f64 / n as f64)));
            }
            pts
        }
    }
}

/// Distance from `p` to a polyline.
pub fn distance_to_polyline(p: Point2, line: &[Point2]) -> f64 {
    if line.len() == 1 {
        return p.distance(line[0]);
    }
    line.windows(2)
        .map(|w| point_segment_distance(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PursuitCommand {
    /// Steering angle in radians, clamped to `steer_max`.
    pub steer: f64,
    pub target: usize,
    pub nearest: usize,
}

/// Steering toward the sample `lookahead_steps` past the nearest one.
pub fn pure_pursuit_step(state: &RobotState, samples: &[Point2], cfg: &SimConfig) -> PursuitCommand {
    pursuit_from(state, samples, cfg, 0, samples.len())
}

/// Like [`pure_pursuit_step`] but only considers nearest samples in
/// `from..from + window`, so progress along self-approaching paths stays
/// monotone.
fn pursuit_from(state: &RobotState, samples: &[Point2], cfg: &SimConfig, from: usize, window: usize) -> PursuitCommand {
    let pos = state.position();
    let last = samples.len() - 1;
    let from = from.min(last);
    let end = (from + window).min(samples.len());
    let nearest = (from..end)
        .min_by(|&i, &j| {
            pos.distance(samples[i])
                .total_cmp(&pos.distance(samples[j]))
                .then(i.cmp(&j))
        })
        .unwrap_or(from);
    let target = (nearest + cfg.lookahead_steps).min(last);
    let to_target = samples[target] - pos;
    let ld = to_target.norm();
    let steer = if ld <= 1e-12 {
        0.0
    } else {
        let alpha = wrap_angle(to_target.y.atan2(to_target.x) - state.heading);
        (2.0 * cfg.wheelbase * alpha.sin()).atan2(ld)
    };
    PursuitCommand {
        steer: steer.clamp(-cfg.steer_max, cfg.steer_max),
        target,
        nearest,
    }
}

/// `(x', y', theta')` of the kinematic bicycle at speed `v` and steering `delta`.
pub fn bicycle_derivative(heading: f64, v: f64, delta: f64, wheelbase: f64) -> (f64, f64, f64) {
    (v * heading.cos(), v * heading.sin(), v / wheelbase * delta.tan())
}

fn rk4_step(s: &RobotState, v: f64, delta: f64, cfg: &SimConfig) -> RobotState {
    let dt = cfg.dt;
    let f = |th: f64| bicycle_derivative(th, v, delta, cfg.wheelbase);
    let k1 = f(s.heading);
    let k2 = f(s.heading + 0.5 * dt * k1.2);
    let k3 = f(s.heading + 0.5 * dt * k2.2);
    let k4 = f(s.heading + dt * k3.2);
    RobotState {
        x: s.x + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y: s.y + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        heading: wrap_angle(s.heading + dt / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2)),
        time: s.time + dt,
    }
}

fn initial_heading(path: &PlannedPath) -> f64 {
    let dir = match path {
        PlannedPath::Bezier(p) => {
            let s = p.segments()[0];
            let d = s.derivative(0.0);
            if d.norm() > 1e-12 {
                d
            } else {
                s.p2 - s.p0
            }
        }
        PlannedPath::Polyline(w) => w
            .windows(2)
            .map(|s| s[1] - s[0])
            .find(|d| d.norm() > 1e-12)
            .unwrap_or_default(),
    };
    dir.y.atan2(dir.x)
}

/// Drives the robot from the path start (aligned with the initial tangent)
/// at constant `v_max` until it is within `goal_tolerance` of the end, or
/// until ten times the nominal travel time has elapsed.
pub fn simulate(path: &PlannedPath, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let samples = discretize_reference(path, cfg.sample_spacing)?;
    let geometry = deviation_geometry(path);
    let length = path.length();
    let budget = 10.0 * length / cfg.v_max;
    let max_steps = (budget / cfg.dt).ceil() as usize;
    let last = samples.len() - 1;
    let window = 3 * cfg.lookahead_steps + 2;

    let start = path.start();
    let mut state = RobotState {
        x: start.x,
        y: start.y,
        heading: initial_heading(path),
        time: 0.0,
    };
    let mut trajectory = vec![state];
    let mut max_dev = distance_to_polyline(start, &geometry);
    let mut max_exec: f64 = 0.0;
    let mut progress = 0usize;
    let mut reached = false;
    let goal = path.end();

    for _ in 0..max_steps {
        let cmd = pursuit_from(&state, &samples, cfg, progress, window);
        progress = cmd.nearest;
        max_exec = max_exec.max(cmd.steer.tan().abs() / cfg.wheelbase);
        state = rk4_step(&state, cfg.v_max, cmd.steer, cfg);
        trajectory.push(state);
        max_dev = max_dev.max(distance_to_polyline(state.position(), &geometry));
        if state.position().distance(goal) <= cfg.goal_tolerance && progress + cfg.lookahead_steps >= last {
            reached = true;
            break;
        }
    }

    let max_reference_curvature = match path.max_curvature()? {
        k if k.is_finite() => Some(k),
        _ => None,
    };
    Ok(SimResult {
        execution_time: state.time,
        trajectory,
        max_deviation: max_dev,
        max_reference_curvature,
        max_executed_curvature: max_exec,
        saturation_curvature: cfg.saturation_curvature(),
        reached_goal: reached,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier::BezierSegment;

    fn straight(len: f64) -> PlannedPath {
        PlannedPath::Polyline(vec![Point2::new(0.0, 0.0), Point2::new(len, 0.0)])
    }

    #[test]
    fn straight_segment_sample_count() {
        let s = discretize_reference(&straight(2.0), 0.05).unwrap();
        assert_eq!(s.len(), 41);
        assert_eq!(s[0], Point2::new(0.0, 0.0));
        assert_eq!(s[40], Point2::new(2.0, 0.0));
    }

    #[test]
    fn single_point_path_is_rejected() {
        let p = PlannedPath::Polyline(vec![Point2::new(1.0, 1.0), Point2::new(1.0, 1.0)]);
        assert!(discretize_reference(&p, 0.05).is_err());
    }

    #[test]
    fn curved_samples_are_evenly_spaced() {
        let seg = BezierSegment::new(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), Point2::new(2.0, 2.0));
        let p = PlannedPath::Bezier(PwbPath::new(vec![seg]).unwrap());
        let s = discretize_reference(&p, 0.05).unwrap();
        for w in s.windows(2) {
            let d = w[0].distance(w[1]);
            assert!((0.045..=0.055).contains(&d), "chord {d}");
        }
    }

    #[test]
    fn aligned_robot_steers_straight() {
        let samples = discretize_reference(&straight(2.0), 0.05).unwrap();
        let st = RobotState {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
            time: 0.0,
        };
        let cmd = pure_pursuit_step(&st, &samples, &SimConfig::default());
        assert_eq!(cmd.steer, 0.0);
        assert_eq!(cmd.target, 15);
    }

    #[test]
    fn target_to_the_left_saturates() {
        let samples = vec![Point2::new(0.0, 0.0), Point2::new(0.0, 0.5)];
        let cfg = SimConfig {
            lookahead_steps: 1,
            ..SimConfig::default()
        };
        let st = RobotState {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
            time: 0.0,
        };
        let cmd = pure_pursuit_step(&st, &samples, &cfg);
        assert_eq!(cmd.steer, cfg.steer_max);
    }

    #[test]
    fn pursuit_law_hand_value() {
        // target at bearing 30 deg and distance 0.75
        let a = 30f64.to_radians();
        let samples = vec![Point2::new(0.0, 0.0), Point2::new(0.75 * a.cos(), 0.75 * a.sin())];
        let cfg = SimConfig {
            lookahead_steps: 1,
            wheelbase: 0.5,
            steer_max: 1.5,
            ..SimConfig::default()
        };
        let st = RobotState {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
            time: 0.0,
        };
        let cmd = pure_pursuit_step(&st, &samples, &cfg);
        assert!((cmd.steer - (2.0f64 / 3.0).atan()).abs() < 1e-12);
    }

    #[test]
    fn straight_tracking() {
        let r = simulate(&straight(2.0), &SimConfig::default()).unwrap();
        assert!(r.reached_goal);
        assert!((r.execution_time - 2.0).abs() <= 0.1, "{}", r.execution_time);
        assert!(r.max_deviation <= 1e-3);
    }

    #[test]
    fn constant_speed() {
        let cfg = SimConfig::default();
        for th in [0.0, 0.7, -2.0, 3.1] {
            let (dx, dy, _) = bicycle_derivative(th, cfg.v_max, 0.3, cfg.wheelbase);
            assert!((dx.hypot(dy) - cfg.v_max).abs() < 1e-12);
        }
    }

    #[test]
    fn corner_is_cut() {
        let p = PlannedPath::Polyline(vec![
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 3.0),
        ]);
        let r = simulate(&p, &SimConfig::default()).unwrap();
        assert!(r.reached_goal);
        assert!(r.max_deviation > 0.0);
        assert_eq!(r.max_reference_curvature, None);
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-12);
    }
}
