//! Seeded random workspaces, as used by the property tests and `--seed`.
//!
//! cargo run --release --example random_workspace -- 7

use pwb_planner::io::Scenario;
use pwb_planner::planners::{plan_workspace, PlannerKind};
use pwb_planner::scenarios::random_scenario;

fn main() -> pwb_planner::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let s: Scenario = random_scenario(seed)?;
    let ws = &s.workspace;
    println!(
        "seed {seed}: {} obstacles, start {}, goal {}",
        ws.obstacles.len(),
        ws.start,
        ws.goal
    );
    let (corridor, plan) = plan_workspace(ws, s.epsilon, s.lambda, PlannerKind::PwbQp)?;
    println!(
        "{} channel cells, path length {:.3} m",
        corridor.channel.len(),
        plan.path.length()
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&s.to_file()).expect("scenario serializes")
    );
    Ok(())
}
