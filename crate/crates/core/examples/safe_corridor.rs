//! Shrinks every channel cell by the safety margin and shows which facets
//! stay at full size so neighbouring segments can meet.
//!
//! cargo run --example safe_corridor -- 0.3

use pwb_planner::corridor::build_safe_pairs;
use pwb_planner::decomposition::{find_channel, triangulate_free_space};
use pwb_planner::io::load_scenario;

fn main() -> pwb_planner::Result<()> {
    let eps: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0.2);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/narrow.json");
    let ws = load_scenario(path.as_ref())?.workspace;
    let g = triangulate_free_space(&ws)?;
    let channel = find_channel(&g, ws.start, ws.goal)?;

    let pairs = match build_safe_pairs(&g, &channel, eps) {
        Ok(p) => p,
        Err(e) => {
            println!("margin {eps} m does not fit: {e}");
            return Ok(());
        }
    };
    println!("margin {eps} m, {} cells", pairs.len());
    for p in &pairs {
        let area = |poly: pwb_planner::geometry::Polytope| poly.area().unwrap_or(0.0);
        println!(
            "cell {:>3}: area {:7.3}  safe_in {:7.3}  safe_out {:7.3}  entry {:?} exit {:?}",
            p.cell,
            area(p.base.clone()),
            area(p.safe_in()),
            area(p.safe_out()),
            p.entry_facet,
            p.exit_facet
        );
    }
    Ok(())
}
