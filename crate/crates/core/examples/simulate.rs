//! Tracks both planners' paths on the narrow fixture with Pure Pursuit.
//!
//! cargo run --release --example simulate

use pwb_planner::io::load_scenario;
use pwb_planner::planners::{plan_workspace, PlannerKind};
use pwb_planner::simulator::simulate;

fn main() -> pwb_planner::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/narrow.json");
    let s = load_scenario(path.as_ref())?;
    println!(
        "v {} m/s, steering limit {:.0} deg, look-ahead {} samples, wheelbase {} m",
        s.sim.v_max,
        s.sim.steer_max.to_degrees(),
        s.sim.lookahead_steps,
        s.sim.wheelbase
    );
    for kind in [PlannerKind::PwbQp, PlannerKind::PwlQp] {
        let (_, plan) = plan_workspace(&s.workspace, s.epsilon, s.lambda, kind)?;
        let r = simulate(&plan.path, &s.sim)?;
        println!(
            "{kind}: {:.2} s, max deviation {:.3} m, commanded curvature up to {:.2} of {:.2} 1/m, reached goal: {}",
            r.execution_time, r.max_deviation, r.max_executed_curvature, r.saturation_curvature, r.reached_goal
        );
    }
    Ok(())
}
