//! Writes an SVG with cells, safe sets, both paths and the tracked
//! trajectory.
//!
//! cargo run --release --example svg_overlay -- narrow.svg

use pwb_planner::io::{load_scenario, write_file};
use pwb_planner::planners::{plan_pwb, plan_pwl, Corridor};
use pwb_planner::simulator::simulate;
use pwb_planner::svg::SvgScene;

fn main() -> pwb_planner::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "narrow.svg".into());
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/narrow.json");
    let s = load_scenario(path.as_ref())?;
    let ws = &s.workspace;

    let corridor = Corridor::build(ws, s.epsilon)?;
    let smooth = plan_pwb(&corridor.pwb_request(ws.start, ws.goal, s.lambda))?;
    let linear = plan_pwl(&corridor.graph, &corridor.channel, ws.start, ws.goal, s.epsilon)?;
    let run = simulate(&smooth.path, &s.sim)?;

    let mut scene = SvgScene::new(ws);
    scene.graph = Some(&corridor.graph);
    scene.channel = Some(&corridor.channel);
    scene.safe_pairs = &corridor.pairs;
    scene.paths = vec![(&smooth.path, "#1d3557"), (&linear.path, "#e63946")];
    scene.trajectory = Some(&run.trajectory);
    write_file(out.as_ref(), &scene.render())?;
    println!("wrote {out}");
    Ok(())
}
