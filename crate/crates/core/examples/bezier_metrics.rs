//! Curvature, arc length and the curvature peak of one quadratic segment.

use pwb_planner::bezier::BezierSegment;
use pwb_planner::geometry::Point2;

fn main() -> pwb_planner::Result<()> {
    let seg = BezierSegment::new(Point2::new(0.0, 0.0), Point2::new(1.0, 1.5), Point2::new(2.0, 0.0));
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let p = seg.eval(t)?;
        println!(
            "t = {t:.2}: point {p}, tangent {}, curvature {:.5}",
            seg.derivative(t),
            seg.curvature(t)?
        );
    }
    let (t, k) = seg.max_curvature()?;
    println!("peak curvature {k:.6} 1/m at t = {t:.6}");
    println!("arc length {:.9} m", seg.arc_length());
    Ok(())
}
