//! Seeded random workspaces for property tests and the `--seed` CLI flag.
//!
//! Obstacles are convex polygons inscribed in circles whose centers are
//! rejection-sampled to keep a clear gap to each other and to the boundary.
//! Start and goal are drawn near the left and right walls and then moved to
//! the incenter of the triangle they fall in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{locate_cell, triangulate_free_space, CellGraph, Workspace};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point2};
use crate::io::Scenario;
use crate::planners::{plan_workspace, PlannerKind, DEFAULT_EPSILON, DEFAULT_LAMBDA};
use crate::simulator::SimConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomWorkspaceConfig {
    pub width: f64,
    pub height: f64,
    pub min_obstacles: usize,
    pub max_obstacles: usize,
    pub min_radius: f64,
    pub max_radius: f64,
    /// Free gap between obstacle circles and to the boundary.
    pub clearance: f64,
}

impl Default for RandomWorkspaceConfig {
    fn default() -> Self {
        Self {
            width: 20.0,
            height: 12.0,
            min_obstacles: 3,
            max_obstacles: 8,
            min_radius: 1.0,
            max_radius: 1.6,
            clearance: 1.6,
        }
    }
}

fn random_obstacle(rng: &mut ChaCha8Rng, center: Point2, radius: f64) -> ConvexPolygon {
    let k = rng.gen_range(4..=6);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let step = std::f64::consts::TAU / k as f64;
    let verts = (0..k)
        .map(|i| {
            let a = phase + step * (i as f64 + rng.gen_range(-0.25..0.25));
            center + Point2::new(a.cos(), a.sin()) * radius
        })
        .collect();
    ConvexPolygon::new(verts).expect("points on a circle in angular order are convex")
}

/// One random draw. The result is a valid workspace but may still be too
/// tight to plan through with a given margin.
pub fn random_workspace(rng: &mut ChaCha8Rng, cfg: &RandomWorkspaceConfig) -> Workspace {
    let boundary = ConvexPolygon::rectangle(0.0, 0.0, cfg.width, cfg.height).expect("positive size");
    let n = rng.gen_range(cfg.min_obstacles..=cfg.max_obstacles);
    let start = Point2::new(0.6, rng.gen_range(1.0..cfg.height - 1.0));
    let goal = Point2::new(cfg.width - 0.6, rng.gen_range(1.0..cfg.height - 1.0));
    let mut circles: Vec<(Point2, f64)> = Vec::with_capacity(n);
    let mut tries = 0;
    while circles.len() < n && tries < 10_000 {
        tries += 1;
        let r = rng.gen_range(cfg.min_radius..cfg.max_radius);
        let lo = r + cfg.clearance;
        if 2.0 * lo >= cfg.width.min(cfg.height) {
            continue;
        }
        let c = Point2::new(rng.gen_range(lo..cfg.width - lo), rng.gen_range(lo..cfg.height - lo));
        let clear_of_others = circles.iter().all(|&(o, ro)| c.distance(o) > r + ro + cfg.clearance);
        let clear_of_ends = [start, goal].iter().all(|&p| c.distance(p) > r + cfg.clearance);
        if clear_of_others && clear_of_ends {
            circles.push((c, r));
        }
    }
    let obstacles = circles.into_iter().map(|(c, r)| random_obstacle(rng, c, r)).collect();
    let ws = Workspace::new(boundary, obstacles, start, goal).expect("obstacles are separated by construction");
    match triangulate_free_space(&ws) {
        Ok(g) => ws.with_endpoints(incenter_of_cell(&g, start), incenter_of_cell(&g, goal)),
        Err(_) => ws,
    }
}

/// Moves `p` to the incenter of the triangle containing it, the point of
/// that cell farthest from its facets.
fn incenter_of_cell(g: &CellGraph, p: Point2) -> Point2 {
    let Ok(i) = locate_cell(g, p) else { return p };
    let v = &g.cell_vertices[i];
    if v.len() != 3 {
        return p;
    }
    let (la, lb, lc) = (v[1].distance(v[2]), v[2].distance(v[0]), v[0].distance(v[1]));
    (v[0] * la + v[1] * lb + v[2] * lc) * (1.0 / (la + lb + lc))
}

/// Draws workspaces from `seed` until the smooth planner finds a path with
/// the given margin and the default length weight. Draws that are
/// geometrically infeasible are skipped; any other error is returned.
/// Returns the workspace and the number of draws skipped.
pub fn random_plannable_workspace(seed: u64, epsilon: f64, cfg: &RandomWorkspaceConfig) -> Result<(Workspace, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rejected in 0..100 {
        let ws = random_workspace(&mut rng, cfg);
        match plan_workspace(&ws, epsilon, DEFAULT_LAMBDA, PlannerKind::PwbQp) {
            Ok(_) => return Ok((ws, rejected)),
            Err(e) if e.is_infeasibility() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidArgument(format!(
        "seed {seed} produced no plannable workspace in 100 draws"
    )))
}

/// Random scenario with default parameters.
pub fn random_scenario(seed: u64) -> Result<Scenario> {
    let (workspace, _) = random_plannable_workspace(seed, DEFAULT_EPSILON, &RandomWorkspaceConfig::default())?;
    Ok(Scenario {
        name: Some(format!("random-{seed}")),
        workspace,
        epsilon: DEFAULT_EPSILON,
        lambda: DEFAULT_LAMBDA,
        sim: SimConfig::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_workspace() {
        let a = random_scenario(11).unwrap();
        let b = random_scenario(11).unwrap();
        assert_eq!(a, b);
        let n = a.workspace.obstacles.len();
        assert!((3..=8).contains(&n));
    }
}
