//! The piece-wise linear baseline: one waypoint per shared facet.
//!
//! cargo run --example plan_pwl

use pwb_planner::io::load_scenario;
use pwb_planner::planners::{plan_workspace, PlannedPath, PlannerKind};

fn main() -> pwb_planner::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/narrow.json");
    let s = load_scenario(path.as_ref())?;
    let (corridor, result) = plan_workspace(&s.workspace, s.epsilon, s.lambda, PlannerKind::PwlQp)?;
    let PlannedPath::Polyline(w) = &result.path else {
        unreachable!()
    };

    println!("{} facets crossed", corridor.channel.transitions.len());
    for (i, p) in w.iter().enumerate() {
        println!("{i:>2}: {p}");
    }
    println!(
        "length {:.3} m, sum of squared legs {:.4}",
        result.path.length(),
        result.objective
    );
    Ok(())
}
