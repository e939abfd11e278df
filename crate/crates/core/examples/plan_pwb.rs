//! Plans a C1 piece-wise quadratic Bezier path through the sparse fixture.
//!
//! cargo run --example plan_pwb

use pwb_planner::bezier::path_metrics;
use pwb_planner::io::load_scenario;
use pwb_planner::planners::{plan_pwb, pwb_objective, Corridor, PlannedPath};

fn main() -> pwb_planner::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/sparse.json");
    let s = load_scenario(path.as_ref())?;
    let ws = &s.workspace;

    let corridor = Corridor::build(ws, s.epsilon)?;
    let result = plan_pwb(&corridor.pwb_request(ws.start, ws.goal, s.lambda))?;
    let PlannedPath::Bezier(bez) = &result.path else {
        unreachable!()
    };

    println!(
        "{} variables, {} constraints, solved in {:.2} ms (KKT residual {:.1e})",
        result.n_variables,
        result.n_constraints,
        result.solver_time * 1e3,
        result.kkt_residual
    );
    for (i, seg) in bez.segments().iter().enumerate() {
        println!("segment {i:>2}: {} {} {}", seg.p0, seg.p1, seg.p2);
    }
    let m = path_metrics(bez)?;
    println!("length {:.3} m, max curvature {:.3} 1/m", m.length, m.max_curvature);
    println!(
        "objective {:.6} (recomputed {:.6})",
        result.objective,
        pwb_objective(bez, s.lambda)
    );
    println!(
        "junction residuals: C0 {:.1e}, C1 {:.1e}",
        bez.c0_residual(),
        bez.c1_residual()
    );
    Ok(())
}
