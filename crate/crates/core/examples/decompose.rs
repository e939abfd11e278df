//! Triangulates the free space of the sparse fixture and prints the channel.
//!
//! cargo run --example decompose

use pwb_planner::decomposition::{find_channel, locate_cell, triangulate_free_space};
use pwb_planner::io::load_scenario;

fn main() -> pwb_planner::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/sparse.json");
    let s = load_scenario(path.as_ref())?;
    let ws = &s.workspace;

    let g = triangulate_free_space(ws)?;
    println!("{} cells, {} shared facets", g.len(), g.adjacency.len());
    println!(
        "cell area {:.6} m^2, free area {:.6} m^2",
        g.total_area(),
        ws.free_area()
    );

    let start_cell = locate_cell(&g, ws.start)?;
    let goal_cell = locate_cell(&g, ws.goal)?;
    println!("start in cell {start_cell}, goal in cell {goal_cell}");

    let channel = find_channel(&g, ws.start, ws.goal)?;
    println!("channel: {:?}", channel.cell_indices);
    for (i, f) in channel.transitions.iter().enumerate() {
        println!(
            "  {} -> {} via {} .. {} ({:.3} m)",
            channel.cell_indices[i],
            channel.cell_indices[i + 1],
            f.start,
            f.end,
            f.length()
        );
    }
    Ok(())
}
