//! Path planners over a cell channel.
//!
//! The piece-wise Bezier planner places one quadratic segment in every
//! channel cell and solves a single QP over all control points:
//!
//! ```text
//! minimize   sum_i |P1 - P0|^2 + |P2 - P1|^2 + lambda |P2 - P0|^2
//! subject to H_i P0, H_i P1 <= b_safe_in       (per cell)
//!            H_i P1, H_i P2 <= b_safe_out
//!            P2^i = P0^(i+1),  P2^i - P1^i = P1^(i+1) - P0^(i+1)
//!            P0^0 = start,     P2^M = goal
//! ```
//!
//! The piece-wise linear baseline puts one waypoint on every shared facet
//! and minimizes the sum of squared leg lengths.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::bezier::{BezierSegment, PwbPath};
use crate::corridor::{build_safe_pairs, check_endpoints, SafePair};
use crate::decomposition::{find_channel, triangulate_free_space, CellGraph, Channel, Workspace};
use crate::error::{Error, Result};
use crate::geometry::{Point2, EPS_FEASIBLE};
use crate::qp::{self, QpProblem, QpStatus};

/// Default length weight.
pub const DEFAULT_LAMBDA: f64 = 10.0;
/// Default safety margin in meters.
pub const DEFAULT_EPSILON: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlannerKind {
    PwbQp,
    PwlQp,
}

impl PlannerKind {
    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::PwbQp => "pwb-qp",
            PlannerKind::PwlQp => "pwl-qp",
        }
    }
}

impl std::str::FromStr for PlannerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pwb-qp" => Ok(PlannerKind::PwbQp),
            "pwl-qp" => Ok(PlannerKind::PwlQp),
            other => Err(Error::InvalidArgument(format!(
                "unknown planner '{other}', expected pwb-qp or pwl-qp"
            ))),
        }
    }
}

impl std::fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct PwbPlanRequest {
    pub safe_pairs: Vec<SafePair>,
    pub start: Point2,
    pub goal: Point2,
    pub lambda: f64,
}

impl PwbPlanRequest {
    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "lambda must be positive, got {}",
                self.lambda
            )));
        }
        check_endpoints(&self.safe_pairs, self.start, self.goal)
    }
}

/// Planned geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum PlannedPath {
    Bezier(PwbPath),
    Polyline(Vec<Point2>),
}

impl PlannedPath {
    pub fn start(&self) -> Point2 {
        match self {
            PlannedPath::Bezier(p) => p.start(),
            PlannedPath::Polyline(w) => w[0],
        }
    }

    pub fn end(&self) -> Point2 {
        match self {
            PlannedPath::Bezier(p) => p.end(),
            PlannedPath::Polyline(w) => w[w.len() - 1],
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            PlannedPath::Bezier(p) => p.length(),
            PlannedPath::Polyline(w) => polyline_length(w),
        }
    }

    /// Largest curvature of the geometry. Polyline corners have unbounded
    /// curvature, so a polyline reports 0 if straight and infinity otherwise.
    pub fn max_curvature(&self) -> Result<f64> {
        match self {
            PlannedPath::Bezier(p) => Ok(crate::bezier::path_metrics(p)?.max_curvature),
            PlannedPath::Polyline(w) => {
                let bent = w.windows(3).any(|t| {
                    let (a, b) = (t[1] - t[0], t[2] - t[1]);
                    a.cross(b).abs() > 1e-9 * a.norm() * b.norm()
                });
                Ok(if bent { f64::INFINITY } else { 0.0 })
            }
        }
    }
}

pub fn polyline_length(w: &[Point2]) -> f64 {
    w.windows(2).map(|s| s[0].distance(s[1])).sum()
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    pub planner: PlannerKind,
    pub path: PlannedPath,
    pub status: QpStatus,
    pub objective: f64,
    /// Assembly plus solve, in seconds.
    pub solver_time: f64,
    pub n_variables: usize,
    pub n_constraints: usize,
    pub kkt_residual: f64,
}

/// Flat index of coordinate `axis` of control point `j` of segment `seg`.
#[inline]
fn var(seg: usize, j: usize, axis: usize) -> usize {
    6 * seg + 2 * j + axis
}

/// Builds the QP of the piece-wise Bezier planner. Decision vector is the
/// stacked `(x, y)` of `P0, P1, P2` per segment (6 per cell). Every facet
/// contributes one row per control point; `P1` is bounded by the smaller
/// of its two offsets, which is the same as requiring both.
pub fn assemble_pwb_qp(req: &PwbPlanRequest) -> Result<QpProblem> {
    req.validate()?;
    let segs = req.safe_pairs.len();
    let n = 6 * segs;
    let lam = req.lambda;

    let mut q = DMatrix::zeros(n, n);
    // per-coordinate weights of |P1-P0|^2 + |P2-P1|^2 + lam |P2-P0|^2, doubled
    let block = [
        [2.0 * (1.0 + lam), -2.0, -2.0 * lam],
        [-2.0, 4.0, -2.0],
        [-2.0 * lam, -2.0, 2.0 * (1.0 + lam)],
    ];
    for s in 0..segs {
        for axis in 0..2 {
            for (i, row) in block.iter().enumerate() {
                for (j, &w) in row.iter().enumerate() {
                    q[(var(s, i, axis), var(s, j, axis))] = w;
                }
            }
        }
    }
    let c = DVector::zeros(n);

    let n_eq = 4 + 4 * (segs - 1);
    let mut e = DMatrix::zeros(n_eq, n);
    let mut d = DVector::zeros(n_eq);
    let mut row = 0;
    for axis in 0..2 {
        e[(row, var(0, 0, axis))] = 1.0;
        d[row] = if axis == 0 { req.start.x } else { req.start.y };
        row += 1;
        e[(row, var(segs - 1, 2, axis))] = 1.0;
        d[row] = if axis == 0 { req.goal.x } else { req.goal.y };
        row += 1;
    }
    for s in 0..segs - 1 {
        for axis in 0..2 {
            // C0
            e[(row, var(s, 2, axis))] = 1.0;
            e[(row, var(s + 1, 0, axis))] = -1.0;
            row += 1;
            // C1
            e[(row, var(s, 2, axis))] = 1.0;
            e[(row, var(s, 1, axis))] = -1.0;
            e[(row, var(s + 1, 1, axis))] = -1.0;
            e[(row, var(s + 1, 0, axis))] = 1.0;
            row += 1;
        }
    }
    debug_assert_eq!(row, n_eq);

    let n_ineq: usize = req.safe_pairs.iter().map(|p| 3 * p.base.len()).sum();
    let mut a = DMatrix::zeros(n_ineq, n);
    let mut b = DVector::zeros(n_ineq);
    let mut row = 0;
    for (s, pair) in req.safe_pairs.iter().enumerate() {
        for k in 0..pair.base.len() {
            let h = pair.base.normal(k);
            let bounds = [
                pair.b_safe_in[k],
                pair.b_safe_in[k].min(pair.b_safe_out[k]),
                pair.b_safe_out[k],
            ];
            for (j, bound) in bounds.into_iter().enumerate() {
                a[(row, var(s, j, 0))] = h.x;
                a[(row, var(s, j, 1))] = h.y;
                b[row] = bound;
                row += 1;
            }
        }
    }
    QpProblem::new(q, c, e, d, a, b)
}

/// Explains an infeasible corridor: cells whose `safe_in` and `safe_out`
/// share no point cannot host `P1` at all.
fn infeasibility_diagnostics(pairs: &[SafePair]) -> String {
    let blocked: Vec<usize> = pairs
        .iter()
        .filter(|p| {
            let both: Vec<f64> = p.b_safe_in.iter().zip(&p.b_safe_out).map(|(a, b)| a.min(*b)).collect();
            p.base.with_offsets(both).area().map(|a| a <= 1e-9).unwrap_or(true)
        })
        .map(|p| p.cell)
        .collect();
    if blocked.is_empty() {
        let cells: Vec<usize> = pairs.iter().map(|p| p.cell).collect();
        format!("continuity constraints cannot be met along cells {cells:?}")
    } else {
        format!("no room for the middle control point in cells {blocked:?}")
    }
}

/// Solves the piece-wise Bezier QP and returns a C1 path.
pub fn plan_pwb(req: &PwbPlanRequest) -> Result<PlanResult> {
    let t0 = Instant::now();
    let problem = assemble_pwb_qp(req)?;
    let sol = qp::solve(&problem);
    let solver_time = t0.elapsed().as_secs_f64();
    match sol.status {
        QpStatus::Optimal => {}
        QpStatus::Infeasible => return Err(Error::InfeasibleCorridor(infeasibility_diagnostics(&req.safe_pairs))),
        other => {
            return Err(Error::SolverFailure(format!(
                "QP solver stopped with status {other:?} (KKT residual {:.3e})",
                sol.kkt_residual
            )))
        }
    }
    let x = &sol.x;
    let pt = |s: usize, j: usize| Point2::new(x[var(s, j, 0)], x[var(s, j, 1)]);
    let segments: Vec<BezierSegment> = (0..req.safe_pairs.len())
        .map(|s| BezierSegment::new(pt(s, 0), pt(s, 1), pt(s, 2)))
        .collect();
    let path = PwbPath::new(segments)?;
    Ok(PlanResult {
        planner: PlannerKind::PwbQp,
        path: PlannedPath::Bezier(path),
        status: sol.status,
        objective: sol.objective,
        solver_time,
        n_variables: problem.n_variables(),
        n_constraints: problem.n_equalities() + problem.n_inequalities(),
        kkt_residual: sol.kkt_residual,
    })
}

/// Planner objective recomputed from the control points of a path.
pub fn pwb_objective(path: &PwbPath, lambda: f64) -> f64 {
    path.segments()
        .iter()
        .map(|s| (s.p1 - s.p0).norm_sq() + (s.p2 - s.p1).norm_sq() + lambda * (s.p2 - s.p0).norm_sq())
        .sum()
}

/// Piece-wise linear baseline: one waypoint per shared facet, kept at least
/// `epsilon` from the facet's endpoints, minimizing the sum of squared leg
/// lengths.
pub fn plan_pwl(g: &CellGraph, c: &Channel, start: Point2, goal: Point2, epsilon: f64) -> Result<PlanResult> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "safety margin must be >= 0, got {epsilon}"
        )));
    }
    c.validate(g, start, goal)?;
    let t0 = Instant::now();
    let m = c.transitions.len();
    // waypoint i = base[i] + alpha_i * dir[i]
    let mut base = Vec::with_capacity(m);
    let mut dir = Vec::with_capacity(m);
    let mut lo = Vec::with_capacity(m);
    let mut hi = Vec::with_capacity(m);
    for (i, f) in c.transitions.iter().enumerate() {
        let len = f.length();
        if len < 2.0 * epsilon + EPS_FEASIBLE {
            return Err(Error::MarginTooLarge {
                cell: c.cell_indices[i],
                epsilon,
                reason: format!("shared facet of length {len:.4} is shorter than twice the margin"),
            });
        }
        base.push(f.start);
        dir.push(f.end - f.start);
        lo.push(epsilon / len);
        hi.push(1.0 - epsilon / len);
    }

    let mut q = DMatrix::zeros(m, m);
    let mut lin = DVector::zeros(m);
    let mut constant = 0.0;
    // legs: start -> w0 -> ... -> w_{m-1} -> goal
    let node = |k: usize| -> (Point2, Option<usize>) {
        if k == 0 {
            (start, None)
        } else if k == m + 1 {
            (goal, None)
        } else {
            (base[k - 1], Some(k - 1))
        }
    };
    for k in 0..=m {
        let (au, u) = node(k);
        let (av, v) = node(k + 1);
        let diff = av - au;
        constant += diff.norm_sq();
        if let Some(u) = u {
            q[(u, u)] += 2.0 * dir[u].norm_sq();
            lin[u] -= 2.0 * dir[u].dot(diff);
        }
        if let Some(v) = v {
            q[(v, v)] += 2.0 * dir[v].norm_sq();
            lin[v] += 2.0 * dir[v].dot(diff);
        }
        if let (Some(u), Some(v)) = (u, v) {
            let cross = -2.0 * dir[u].dot(dir[v]);
            q[(u, v)] += cross;
            q[(v, u)] += cross;
        }
    }
    let mut a = DMatrix::zeros(2 * m, m);
    let mut b = DVector::zeros(2 * m);
    for i in 0..m {
        a[(2 * i, i)] = 1.0;
        b[2 * i] = hi[i];
        a[(2 * i + 1, i)] = -1.0;
        b[2 * i + 1] = -lo[i];
    }
    let problem = QpProblem::new(q, lin, DMatrix::zeros(0, m), DVector::zeros(0), a, b)?;
    let sol = qp::solve(&problem);
    let solver_time = t0.elapsed().as_secs_f64();
    match sol.status {
        QpStatus::Optimal => {}
        QpStatus::Infeasible => {
            return Err(Error::InfeasibleCorridor("waypoint bounds are inconsistent".into()));
        }
        other => {
            return Err(Error::SolverFailure(format!(
                "QP solver stopped with status {other:?} (KKT residual {:.3e})",
                sol.kkt_residual
            )))
        }
    }
    let mut waypoints = Vec::with_capacity(m + 2);
    waypoints.push(start);
    for i in 0..m {
        waypoints.push(base[i] + dir[i] * sol.x[i]);
    }
    waypoints.push(goal);
    Ok(PlanResult {
        planner: PlannerKind::PwlQp,
        path: PlannedPath::Polyline(waypoints),
        status: sol.status,
        objective: sol.objective + constant,
        solver_time,
        n_variables: m,
        n_constraints: 2 * m,
        kkt_residual: sol.kkt_residual,
    })
}

/// `sum_i (1 - lambda) L_i + lambda kappa_max_i^2`, for reporting only.
pub fn ideal_objective(path: &PwbPath, lambda_ideal: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda_ideal) {
        return Err(Error::InvalidArgument(format!(
            "ideal weight must be in [0, 1], got {lambda_ideal}"
        )));
    }
    let mut total = 0.0;
    for s in path.segments() {
        let k = s.max_curvature()?.1;
        total += (1.0 - lambda_ideal) * s.arc_length() + lambda_ideal * k * k;
    }
    Ok(total)
}

/// Decomposition, channel and safe pairs for one workspace.
#[derive(Debug, Clone)]
pub struct Corridor {
    pub graph: CellGraph,
    pub channel: Channel,
    pub pairs: Vec<SafePair>,
}

impl Corridor {
    pub fn build(ws: &Workspace, epsilon: f64) -> Result<Self> {
        let graph = triangulate_free_space(ws)?;
        Self::from_graph(graph, ws.start, ws.goal, epsilon)
    }

    pub fn from_graph(graph: CellGraph, start: Point2, goal: Point2, epsilon: f64) -> Result<Self> {
        let channel = find_channel(&graph, start, goal)?;
        let pairs = build_safe_pairs(&graph, &channel, epsilon)?;
        check_endpoints(&pairs, start, goal)?;
        Ok(Self { graph, channel, pairs })
    }

    pub fn pwb_request(&self, start: Point2, goal: Point2, lambda: f64) -> PwbPlanRequest {
        PwbPlanRequest {
            safe_pairs: self.pairs.clone(),
            start,
            goal,
            lambda,
        }
    }
}

/// Runs `kind` on a workspace end to end.
pub fn plan_workspace(ws: &Workspace, epsilon: f64, lambda: f64, kind: PlannerKind) -> Result<(Corridor, PlanResult)> {
    let corridor = Corridor::build(ws, epsilon)?;
    let result = match kind {
        PlannerKind::PwbQp => plan_pwb(&corridor.pwb_request(ws.start, ws.goal, lambda))?,
        PlannerKind::PwlQp => plan_pwl(&corridor.graph, &corridor.channel, ws.start, ws.goal, epsilon)?,
    };
    Ok((corridor, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{polygon_to_polytope, ConvexPolygon};

    fn square_pair(eps: f64) -> SafePair {
        let sq = polygon_to_polytope(&ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap()).unwrap();
        SafePair::new(sq, 0, None, None, eps).unwrap()
    }

    #[test]
    fn single_cell_dimensions_and_midpoint() {
        let req = PwbPlanRequest {
            safe_pairs: vec![square_pair(0.2)],
            start: Point2::new(0.3, 0.3),
            goal: Point2::new(0.7, 0.7),
            lambda: 10.0,
        };
        let qp = assemble_pwb_qp(&req).unwrap();
        assert_eq!(qp.n_variables(), 6);
        assert_eq!(qp.n_equalities(), 4);
        assert_eq!(qp.n_inequalities(), 12);
        let res = plan_pwb(&req).unwrap();
        let PlannedPath::Bezier(path) = &res.path else { panic!() };
        let s = path.segments()[0];
        assert!(s.p1.distance(Point2::new(0.5, 0.5)) < 1e-9);
        assert!((res.objective - pwb_objective(path, 10.0)).abs() <= 1e-9 * res.objective.abs().max(1.0));
    }

    #[test]
    fn lambda_must_be_positive() {
        let req = PwbPlanRequest {
            safe_pairs: vec![square_pair(0.2)],
            start: Point2::new(0.3, 0.3),
            goal: Point2::new(0.7, 0.7),
            lambda: 0.0,
        };
        assert!(matches!(assemble_pwb_qp(&req), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn endpoint_in_margin_is_reported() {
        let req = PwbPlanRequest {
            safe_pairs: vec![square_pair(0.2)],
            start: Point2::new(0.1, 0.5),
            goal: Point2::new(0.7, 0.7),
            lambda: 10.0,
        };
        assert!(matches!(
            plan_pwb(&req),
            Err(Error::EndpointInsideMargin { which: "start", .. })
        ));
    }

    #[test]
    fn ideal_objective_weights() {
        let straight = PwbPath::new(vec![BezierSegment::new(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
        )])
        .unwrap();
        assert!((ideal_objective(&straight, 0.3).unwrap() - 0.7 * 2.0).abs() < 1e-12);
        assert!((ideal_objective(&straight, 0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(ideal_objective(&straight, 1.5).is_err());
    }
}
