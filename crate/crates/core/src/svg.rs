//! Deterministic SVG overlays for debugging plans.
//!
//! Layers are always emitted in the same order: boundary, obstacles, cells,
//! channel, safe sets, paths, trajectory, endpoints. Coordinates are printed
//! with four decimals so identical inputs give identical bytes.

use std::fmt::Write as _;

use crate::corridor::SafePair;
use crate::decomposition::{CellGraph, Channel, Workspace};
use crate::geometry::Point2;
use crate::planners::PlannedPath;
use crate::simulator::RobotState;

/// Points per Bezier segment in its polyline approximation.
const SEGMENT_POINTS: usize = 33;
const MARGIN_PX: f64 = 20.0;

#[derive(Debug, Clone)]
pub struct SvgScene<'a> {
    pub workspace: &'a Workspace,
    pub graph: Option<&'a CellGraph>,
    pub channel: Option<&'a Channel>,
    pub safe_pairs: &'a [SafePair],
    pub paths: Vec<(&'a PlannedPath, &'static str)>,
    pub trajectory: Option<&'a [RobotState]>,
    /// Pixels per meter.
    pub scale: f64,
}

impl<'a> SvgScene<'a> {
    pub fn new(workspace: &'a Workspace) -> Self {
        Self {
            workspace,
            graph: None,
            channel: None,
            safe_pairs: &[],
            paths: Vec::new(),
            trajectory: None,
            scale: 50.0,
        }
    }

    pub fn render(&self) -> String {
        let verts = self.workspace.boundary.vertices();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in verts {
            x0 = x0.min(v.x);
            y0 = y0.min(v.y);
            x1 = x1.max(v.x);
            y1 = y1.max(v.y);
        }
        let s = self.scale;
        let map = |p: Point2| ((p.x - x0) * s + MARGIN_PX, (y1 - p.y) * s + MARGIN_PX);
        let pts = |ps: &mut dyn Iterator<Item = Point2>| -> String {
            ps.map(|p| {
                let (u, v) = map(p);
                format!("{u:.4},{v:.4}")
            })
            .collect::<Vec<_>>()
            .join(" ")
        };
        let width = (x1 - x0) * s + 2.0 * MARGIN_PX;
        let height = (y1 - y0) * s + 2.0 * MARGIN_PX;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.4} {height:.4}">"#
        );
        let _ = writeln!(
            out,
            r##"<polygon class="boundary" points="{}" fill="#ffffff" stroke="#000000" stroke-width="2"/>"##,
            pts(&mut verts.iter().copied())
        );
        for o in &self.workspace.obstacles {
            let _ = writeln!(
                out,
                r##"<polygon class="obstacle" points="{}" fill="#555555" stroke="none"/>"##,
                pts(&mut o.vertices().iter().copied())
            );
        }
        if let Some(g) = self.graph {
            for (i, cell) in g.cell_vertices.iter().enumerate() {
                let _ = writeln!(
                    out,
                    r##"<polygon class="cell" data-cell="{i}" points="{}" fill="none" stroke="#bbbbbb" stroke-width="0.5"/>"##,
                    pts(&mut cell.iter().copied())
                );
            }
            if let Some(c) = self.channel {
                for &i in &c.cell_indices {
                    let _ = writeln!(
                        out,
                        r##"<polygon class="channel" data-cell="{i}" points="{}" fill="#cfe8ff" fill-opacity="0.5" stroke="none"/>"##,
                        pts(&mut g.cell_vertices[i].iter().copied())
                    );
                }
            }
        }
        for pair in self.safe_pairs {
            for (class, poly) in [("safe-in", pair.safe_in()), ("safe-out", pair.safe_out())] {
                if let Ok(v) = poly.vertices() {
                    let _ = writeln!(
                        out,
                        r##"<polygon class="{class}" data-cell="{}" points="{}" fill="none" stroke="#2a9d8f" stroke-width="0.7" stroke-dasharray="3,2"/>"##,
                        pair.cell,
                        pts(&mut v.into_iter())
                    );
                }
            }
        }
        for (path, color) in &self.paths {
            match path {
                PlannedPath::Bezier(p) => {
                    for (i, seg) in p.segments().iter().enumerate() {
                        let mut it = (0..SEGMENT_POINTS).map(|k| seg.point_at(k as f64 / (SEGMENT_POINTS - 1) as f64));
                        let _ = writeln!(
                            out,
                            r#"<polyline class="segment" data-segment="{i}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                            pts(&mut it)
                        );
                    }
                }
                PlannedPath::Polyline(w) => {
                    let _ = writeln!(
                        out,
                        r#"<polyline class="waypoints" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                        pts(&mut w.iter().copied())
                    );
                }
            }
        }
        if let Some(traj) = self.trajectory {
            let _ = writeln!(
                out,
                r##"<polyline class="trajectory" points="{}" fill="none" stroke="#e76f51" stroke-width="1"/>"##,
                pts(&mut traj.iter().map(RobotState::position))
            );
        }
        for (class, p) in [("start", self.workspace.start), ("goal", self.workspace.goal)] {
            let (u, v) = map(p);
            let _ = writeln!(
                out,
                r##"<circle class="{class}" cx="{u:.4}" cy="{v:.4}" r="5" fill="#000000"/>"##
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier::{BezierSegment, PwbPath};
    use crate::geometry::ConvexPolygon;

    #[test]
    fn one_polyline_per_segment() {
        let ws = Workspace::new(
            ConvexPolygon::rectangle(0.0, 0.0, 4.0, 2.0).unwrap(),
            vec![],
            Point2::new(0.5, 0.5),
            Point2::new(3.5, 1.5),
        )
        .unwrap();
        let a = BezierSegment::new(Point2::new(0.5, 0.5), Point2::new(1.5, 0.5), Point2::new(2.0, 1.0));
        let b = BezierSegment::new(Point2::new(2.0, 1.0), Point2::new(2.5, 1.5), Point2::new(3.5, 1.5));
        let path = PlannedPath::Bezier(PwbPath::new(vec![a, b]).unwrap());
        let mut scene = SvgScene::new(&ws);
        scene.paths.push((&path, "#1d3557"));
        let svg = scene.render();
        assert_eq!(svg.matches("class=\"segment\"").count(), 2);
        assert_eq!(svg, scene.render());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
