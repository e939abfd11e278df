//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! Oracles here deliberately avoid the library's own numerics: curves are
//! evaluated from the Bernstein form, distances from raw vertex pairs, and
//! optima by grid search or enumeration.
#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::{DMatrix, DVector};
use pwb_planner::bezier::{BezierSegment, PwbPath};
use pwb_planner::decomposition::{CellGraph, Channel, Workspace};
use pwb_planner::geometry::{ConvexPolygon, Point2};
use pwb_planner::io::{load_scenario, Scenario};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Scenario {
    load_scenario(&fixture_path(name)).expect("bundled fixture loads")
}

pub fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

/// `(1-t)^2 p0 + 2t(1-t) p1 + t^2 p2`, written out by hand.
pub fn bernstein_point(s: &BezierSegment, t: f64) -> Point2 {
    let u = 1.0 - t;
    let (w0, w1, w2) = (u * u, 2.0 * t * u, t * t);
    p(
        w0 * s.p0.x + w1 * s.p1.x + w2 * s.p2.x,
        w0 * s.p0.y + w1 * s.p1.y + w2 * s.p2.y,
    )
}

/// Signed distance from `q` to the line through `a -> b`, positive on the
/// left (the interior side of a counter-clockwise polygon).
pub fn left_distance(q: Point2, a: Point2, b: Point2) -> f64 {
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    ((q.y - a.y) * ex - (q.x - a.x) * ey) / ex.hypot(ey)
}

pub fn on_segment(q: Point2, a: Point2, b: Point2, tol: f64) -> bool {
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    let len2 = ex * ex + ey * ey;
    let t = (((q.x - a.x) * ex + (q.y - a.y) * ey) / len2).clamp(0.0, 1.0);
    (q.x - a.x - t * ex).hypot(q.y - a.y - t * ey) <= tol
}

#[derive(Debug, Clone, Copy)]
pub struct Certificate {
    /// Smallest signed distance to any edge of the segment's cell.
    pub min_inside: f64,
    /// Smallest distance to an edge that is not the entry or exit facet.
    pub min_clearance: f64,
    pub samples: usize,
}

/// Samples every segment at `n` parameters and measures how far the points
/// stay from the edges of the segment's channel cell.
pub fn certify(graph: &CellGraph, channel: &Channel, path: &PwbPath, n: usize) -> Certificate {
    let segs = path.segments();
    assert_eq!(segs.len(), channel.len(), "one segment per channel cell");
    let mut cert = Certificate {
        min_inside: f64::INFINITY,
        min_clearance: f64::INFINITY,
        samples: 0,
    };
    for (i, seg) in segs.iter().enumerate() {
        let verts = &graph.cell_vertices[channel.cell_indices[i]];
        let mut shared = Vec::new();
        if i > 0 {
            shared.push(channel.transitions[i - 1]);
        }
        if i + 1 < segs.len() {
            shared.push(channel.transitions[i]);
        }
        let edges: Vec<(Point2, Point2, bool)> = (0..verts.len())
            .map(|k| {
                let (a, b) = (verts[k], verts[(k + 1) % verts.len()]);
                let is_shared = shared
                    .iter()
                    .any(|f| on_segment(a, f.start, f.end, 1e-9) && on_segment(b, f.start, f.end, 1e-9));
                (a, b, is_shared)
            })
            .collect();
        for k in 0..n {
            let q = bernstein_point(seg, k as f64 / (n - 1) as f64);
            for &(a, b, is_shared) in &edges {
                let d = left_distance(q, a, b);
                cert.min_inside = cert.min_inside.min(d);
                if !is_shared {
                    cert.min_clearance = cert.min_clearance.min(d);
                }
            }
            cert.samples += 1;
        }
    }
    cert
}

/// Copy of `ws` moved by `v`.
pub fn translate(ws: &Workspace, v: Point2) -> Workspace {
    let shift = |poly: &ConvexPolygon| ConvexPolygon::new(poly.vertices().iter().map(|&q| q + v).collect()).unwrap();
    Workspace::new(
        shift(&ws.boundary),
        ws.obstacles.iter().map(shift).collect(),
        ws.start + v,
        ws.goal + v,
    )
    .unwrap()
}

/// Sum of centroid distances along a cell sequence.
pub fn channel_cost(g: &CellGraph, cells: &[usize]) -> f64 {
    cells
        .windows(2)
        .map(|w| g.centroids[w[0]].distance(g.centroids[w[1]]))
        .sum()
}

/// Every simple path from `s` to `t`, by depth-first enumeration over the
/// adjacency list.
pub fn all_simple_paths(g: &CellGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut nbrs = vec![Vec::new(); g.len()];
    for a in &g.adjacency {
        nbrs[a.a].push(a.b);
        nbrs[a.b].push(a.a);
    }
    let mut out = Vec::new();
    let mut stack = vec![s];
    let mut seen = vec![false; g.len()];
    seen[s] = true;
    fn dfs(nbrs: &[Vec<usize>], t: usize, stack: &mut Vec<usize>, seen: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *stack.last().unwrap();
        if u == t {
            out.push(stack.clone());
            return;
        }
        for &v in &nbrs[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
                dfs(nbrs, t, stack, seen, out);
                stack.pop();
                seen[v] = false;
            }
        }
    }
    dfs(&nbrs, t, &mut stack, &mut seen, &mut out);
    out
}

/// Random box-constrained QP: `0.5 x'Qx + c'x` over `[-1, 1]^n` plus
/// `extra` general rows that keep the origin feasible. Rows are returned as
/// `(A, b)` with the box first.
pub struct RandomQp {
    pub q: DMatrix<f64>,
    pub c: DVector<f64>,
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
}

pub fn random_qp(rng: &mut impl rand::Rng, n: usize, extra: usize) -> RandomQp {
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let q = m.transpose() * &m + DMatrix::identity(n, n) * 0.2;
    let q = (&q + q.transpose()) * 0.5;
    let c = DVector::from_fn(n, |_, _| rng.gen_range(-3.0..3.0));
    let rows = 2 * n + extra;
    let mut a = DMatrix::zeros(rows, n);
    let mut b = DVector::zeros(rows);
    for j in 0..n {
        a[(2 * j, j)] = 1.0;
        b[2 * j] = 1.0;
        a[(2 * j + 1, j)] = -1.0;
        b[2 * j + 1] = 1.0;
    }
    for r in 2 * n..rows {
        for j in 0..n {
            a[(r, j)] = rng.gen_range(-1.0..1.0);
        }
        b[r] = rng.gen_range(0.1..0.8);
    }
    RandomQp { q, c, a, b }
}

/// Hierarchical grid search over `[-1, 1]^n`. Each level evaluates a grid
/// of `points` per axis centered on the incumbent and then shrinks the
/// spacing by `(points - 1) / 2`, so the incumbent stays a grid node and
/// the objective never increases. Runs until the spacing is below
/// `final_step`.
pub fn grid_oracle(qp: &RandomQp, points: usize, final_step: f64) -> DVector<f64> {
    assert!(points % 2 == 1 && points >= 3);
    let n = qp.c.len();
    let half = (points / 2) as i64;
    let feasible = |x: &DVector<f64>| (0..qp.b.len()).all(|r| qp.a.row(r).dot(&x.transpose()) <= qp.b[r] + 1e-12);
    let f = |x: &DVector<f64>| 0.5 * x.dot(&(&qp.q * x)) + qp.c.dot(x);
    let mut best = DVector::zeros(n);
    let mut best_f = f(&best);
    let mut step = 1.0 / half as f64;
    let mut idx = vec![-half; n];
    let mut x = DVector::zeros(n);
    loop {
        let center = best.clone();
        idx.iter_mut().for_each(|i| *i = -half);
        'grid: loop {
            for j in 0..n {
                x[j] = center[j] + idx[j] as f64 * step;
            }
            if x.iter().all(|v| v.abs() <= 1.0 + 1e-12) && feasible(&x) {
                let fx = f(&x);
                if fx < best_f {
                    best_f = fx;
                    best.copy_from(&x);
                }
            }
            for i in idx.iter_mut() {
                *i += 1;
                if *i <= half {
                    continue 'grid;
                }
                *i = -half;
            }
            break;
        }
        if step <= final_step {
            return best;
        }
        step /= half as f64;
    }
}

/// Exact optimum of a strictly convex QP with inequality rows only, by
/// trying every subset of at most `n` rows as equalities and keeping the
/// best feasible stationary point.
pub fn active_set_enumeration(qp: &RandomQp) -> DVector<f64> {
    let n = qp.c.len();
    let m = qp.b.len();
    let f = |x: &DVector<f64>| 0.5 * x.dot(&(&qp.q * x)) + qp.c.dot(x);
    let mut best: Option<(f64, DVector<f64>)> = None;
    for mask in 0u32..(1 << m) {
        let rows: Vec<usize> = (0..m).filter(|&r| mask & (1 << r) != 0).collect();
        if rows.len() > n {
            continue;
        }
        let k = rows.len();
        let mut kkt = DMatrix::zeros(n + k, n + k);
        kkt.view_mut((0, 0), (n, n)).copy_from(&qp.q);
        let mut rhs = DVector::zeros(n + k);
        rhs.rows_mut(0, n).copy_from(&(-&qp.c));
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..n {
                kkt[(n + i, j)] = qp.a[(r, j)];
                kkt[(j, n + i)] = qp.a[(r, j)];
            }
            rhs[n + i] = qp.b[r];
        }
        let Some(sol) = kkt.lu().solve(&rhs) else { continue };
        let x = sol.rows(0, n).into_owned();
        if !x.iter().all(|v| v.is_finite()) || (&qp.a * &x - &qp.b).max() > 1e-9 {
            continue;
        }
        let fx = f(&x);
        if best.as_ref().is_none_or(|(bf, _)| fx < *bf) {
            best = Some((fx, x));
        }
    }
    best.expect("origin is feasible, so some face has a stationary point").1
}
