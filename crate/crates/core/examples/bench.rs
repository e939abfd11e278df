//! Runs both planners with tracking on both fixtures and prints the tables.
//!
//! cargo run --release --example bench

use pwb_planner::cli::run_bench;
use pwb_planner::io::load_scenario;

fn main() -> pwb_planner::Result<()> {
    for name in ["sparse", "narrow"] {
        let path = format!("{}/scenarios/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let s = load_scenario(path.as_ref())?;
        let out = run_bench(&s, true)?;
        println!("== {name} ({} cells)", out.report.channel_cells.unwrap_or(0));
        print!("{}", out.report.to_table());
        println!();
        print!("{}", out.report.to_csv()?);
        println!();
    }
    Ok(())
}
