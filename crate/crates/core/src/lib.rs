//! Smooth 2D path planning with safety margins.
//!
//! The free space of a polygonal workspace is triangulated, a channel of
//! cells is found from start to goal, every cell is shrunk by a safety
//! margin, and one quadratic Bezier segment per cell is placed by a single
//! convex QP with C1 continuity at the junctions. A piece-wise linear
//! baseline and a Pure-Pursuit tracking simulator are included for
//! comparison.
//!
//! ```no_run
//! use pwb_planner::io::load_scenario;
//! use pwb_planner::planners::{plan_workspace, PlannerKind};
//!
//! let s = load_scenario("scenarios/sparse.json".as_ref()).unwrap();
//! let (_corridor, plan) = plan_workspace(&s.workspace, s.epsilon, s.lambda, PlannerKind::PwbQp).unwrap();
//! println!("length {:.2} m", plan.path.length());
//! ```

pub mod bezier;
pub mod cli;
pub mod corridor;
pub mod decomposition;
pub mod error;
pub mod geometry;
pub mod io;
pub mod planners;
pub mod qp;
pub mod scenarios;
pub mod simulator;
pub mod svg;

pub use error::{Error, Result};
