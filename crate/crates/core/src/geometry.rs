//! Planar geometry primitives: points, convex polygons and H-representation
//! polytopes `{x | H x <= b}` with unit-norm facet normals.
//!
//! Tolerances are layered: construction and degeneracy checks use
//! [`EPS_CONSTRUCT`], membership and feasibility use [`EPS_FEASIBLE`], and
//! user-facing checks use [`EPS_USER`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EPS_CONSTRUCT: f64 = 1e-12;
pub const EPS_FEASIBLE: f64 = 1e-9;
pub const EPS_USER: f64 = 1e-6;

/// A point (or free vector) in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Displacements share the point representation.
pub type Vector2 = Point2;

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, o: Self, t: f64) -> Self {
        self + (o - self) * t
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point2 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Twice the signed area of triangle `abc` (positive when counter-clockwise).
#[inline]
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Signed area of a closed polygon (positive when counter-clockwise).
pub fn signed_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        acc += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * acc
}

/// Area centroid of a simple polygon. Falls back to the vertex mean for
/// degenerate input.
pub fn polygon_centroid(pts: &[Point2]) -> Point2 {
    let a = signed_area(pts);
    let n = pts.len();
    if a.abs() < EPS_CONSTRUCT || n < 3 {
        let s = pts.iter().fold(Point2::default(), |s, &p| s + p);
        return s * (1.0 / n.max(1) as f64);
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        let w = p.cross(q);
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    Point2::new(cx / (6.0 * a), cy / (6.0 * a))
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Convex polygon with counter-clockwise vertices and strictly convex turns.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates `vertices` as a strictly convex polygon. Clockwise input is
    /// reversed; anything else that violates the invariants is rejected.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let mut vertices = vertices;
        if vertices.len() < 3 {
            return Err(Error::InvalidGeometry(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidGeometry(format!("non-finite vertex {p}")));
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if a.distance(b) <= EPS_CONSTRUCT {
                return Err(Error::InvalidGeometry(format!("duplicate consecutive vertices at {a}")));
            }
            if orient(a, b, c) <= EPS_CONSTRUCT {
                return Err(Error::InvalidGeometry(format!(
                    "polygon is not strictly convex at vertex {b}"
                )));
            }
        }
        Ok(Self { vertices })
    }

    /// Like [`ConvexPolygon::new`], but first merges consecutive duplicate
    /// vertices and drops collinear ones (both at [`EPS_CONSTRUCT`]).
    pub fn cleaned(vertices: Vec<Point2>) -> Result<Self> {
        let mut pts: Vec<Point2> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if pts.last().is_none_or(|q: &Point2| q.distance(p) > EPS_CONSTRUCT) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts[0].distance(pts[pts.len() - 1]) <= EPS_CONSTRUCT {
            pts.pop();
        }
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let n = pts.len();
            for i in 0..n {
                let a = pts[(i + n - 1) % n];
                let b = pts[i];
                let c = pts[(i + 1) % n];
                let scale = (c - a).norm().max(1.0);
                if orient(a, b, c).abs() <= EPS_CONSTRUCT * scale && (b - a).dot(c - b) >= 0.0 {
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        Self::new(pts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        polygon_centroid(&self.vertices)
    }

    /// Edges as `(start, end)` pairs in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Strict interior test (`margin` > 0 shrinks the accepted region).
    pub fn contains_strict(&self, p: Point2, margin: f64) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) / a.distance(b) > margin)
    }

    /// Closed containment test with tolerance.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) / a.distance(b) >= -tol)
    }

    /// Rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }
}

/// Convex region `{x | H x <= b}` with unit-norm rows of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    normals: Vec<Vector2>,
    offsets: Vec<f64>,
    /// Optional label per facet; the decomposition stores the index of the
    /// neighbouring cell across a shared facet here.
    pub facet_tags: Vec<Option<usize>>,
}

impl Polytope {
    /// Builds a polytope from raw rows, normalizing each to unit length.
    pub fn new(normals: Vec<Vector2>, offsets: Vec<f64>) -> Result<Self> {
        if normals.len() != offsets.len() {
            return Err(Error::InvalidGeometry(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        let mut ns = Vec::with_capacity(normals.len());
        let mut bs = Vec::with_capacity(offsets.len());
        for (n, b) in normals.into_iter().zip(offsets) {
            let len = n.norm();
            if !len.is_finite() || len <= EPS_CONSTRUCT || !b.is_finite() {
                return Err(Error::InvalidGeometry(format!("degenerate half-plane row {n} <= {b}")));
            }
            ns.push(n * (1.0 / len));
            bs.push(b / len);
        }
        let k = ns.len();
        Ok(Self {
            normals: ns,
            offsets: bs,
            facet_tags: vec![None; k],
        })
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vector2] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn normal(&self, k: usize) -> Vector2 {
        self.normals[k]
    }

    pub fn offset(&self, k: usize) -> f64 {
        self.offsets[k]
    }

    /// Same normals with a different offset vector.
    pub fn with_offsets(&self, offsets: Vec<f64>) -> Self {
        assert_eq!(offsets.len(), self.len(), "offset vector length mismatch");
        Self {
            normals: self.normals.clone(),
            offsets,
            facet_tags: self.facet_tags.clone(),
        }
    }

    /// Signed slack of row `k` at `x` (`H_k x - b_k`, positive = violated).
    #[inline]
    pub fn row_value(&self, k: usize, x: Point2) -> f64 {
        self.normals[k].dot(x) - self.offsets[k]
    }

    /// `max_k (H_k x - b_k)`.
    pub fn max_violation(&self, x: Point2) -> f64 {
        (0..self.len())
            .map(|k| self.row_value(k, x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: Point2, tol: f64) -> bool {
        self.max_violation(x) <= tol
    }

    /// True when the recession cone is trivial, i.e. the normals are not
    /// confined to a closed half-circle of directions.
    pub fn is_bounded(&self) -> bool {
        if self.len() < 3 {
            return false;
        }
        let mut angles: Vec<f64> = self.normals.iter().map(|n| n.y.atan2(n.x)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        let mut max_gap = angles[0] + 2.0 * std::f64::consts::PI - angles[angles.len() - 1];
        for w in angles.windows(2) {
            max_gap = max_gap.max(w[1] - w[0]);
        }
        max_gap < std::f64::consts::PI - EPS_CONSTRUCT
    }

    /// Counter-clockwise vertices of the feasible region. Returns an empty
    /// list when the region is empty or has area below `1e-12`.
    pub fn vertices(&self) -> Result<Vec<Point2>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let k = self.len();
        let mut pts: Vec<Point2> = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let (ni, nj) = (self.normals[i], self.normals[j]);
                let det = ni.cross(nj);
                if det.abs() <= EPS_CONSTRUCT {
                    continue;
                }
                let (bi, bj) = (self.offsets[i], self.offsets[j]);
                let p = Point2::new((bi * nj.y - bj * ni.y) / det, (ni.x * bj - nj.x * bi) / det);
                if self.contains(p, EPS_FEASIBLE * (1.0 + p.norm()))
                    && !pts.iter().any(|q| q.distance(p) <= EPS_FEASIBLE)
                {
                    pts.push(p);
                }
            }
        }
        if pts.len() < 3 {
            return Ok(Vec::new());
        }
        let c = pts.iter().fold(Point2::default(), |s, &p| s + p) * (1.0 / pts.len() as f64);
        pts.sort_by(|a, b| {
            let ta = (a.y - c.y).atan2(a.x - c.x);
            let tb = (b.y - c.y).atan2(b.x - c.x);
            ta.partial_cmp(&tb).unwrap_or(Ordering::Equal)
        });
        // drop vertices that sit on the interior of an edge
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let n = pts.len();
            for i in 0..n {
                let a = pts[(i + n - 1) % n];
                let b = pts[i];
                let cc = pts[(i + 1) % n];
                if orient(a, b, cc).abs() <= EPS_CONSTRUCT * (cc - a).norm().max(1.0) {
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if pts.len() < 3 || signed_area(&pts) < EPS_CONSTRUCT {
            return Ok(Vec::new());
        }
        Ok(pts)
    }

    /// Area of the feasible region (0 when empty).
    pub fn area(&self) -> Result<f64> {
        Ok(signed_area(&self.vertices()?))
    }

    /// Endpoints of facet `k` clipped to the polytope, ordered along the
    /// facet direction (counter-clockwise traversal). `None` when the facet
    /// is redundant or the region is empty.
    pub fn facet_segment(&self, k: usize) -> Result<Option<(Point2, Point2)>> {
        let verts = self.vertices()?;
        let n = self.normals[k];
        let dir = n.perp();
        let on: Vec<Point2> = verts
            .into_iter()
            .filter(|&v| self.row_value(k, v).abs() <= EPS_FEASIBLE * (1.0 + v.norm()))
            .collect();
        if on.len() < 2 {
            return Ok(None);
        }
        let lo = on
            .iter()
            .copied()
            .min_by(|a, b| a.dot(dir).partial_cmp(&b.dot(dir)).unwrap_or(Ordering::Equal))
            .unwrap();
        let hi = on
            .iter()
            .copied()
            .max_by(|a, b| a.dot(dir).partial_cmp(&b.dot(dir)).unwrap_or(Ordering::Equal))
            .unwrap();
        Ok(Some((lo, hi)))
    }
}

impl TryFrom<&ConvexPolygon> for Polytope {
    type Error = Error;

    fn try_from(poly: &ConvexPolygon) -> Result<Self> {
        polygon_to_polytope(poly)
    }
}

/// One unit-norm outward row per polygon edge, in edge order.
pub fn polygon_to_polytope(poly: &ConvexPolygon) -> Result<Polytope> {
    let mut normals = Vec::with_capacity(poly.vertices().len());
    let mut offsets = Vec::with_capacity(poly.vertices().len());
    for (a, b) in poly.edges() {
        let e = b - a;
        let len = e.norm();
        if len <= EPS_CONSTRUCT {
            return Err(Error::InvalidGeometry("zero-length edge".into()));
        }
        // outward for a CCW polygon: rotate the edge clockwise
        let n = Point2::new(e.y, -e.x) * (1.0 / len);
        normals.push(n);
        offsets.push(n.dot(a));
    }
    Polytope::new(normals, offsets)
}

/// Membership test `max_k (H_k x - b_k) <= tol`.
pub fn contains(p: &Polytope, x: Point2, tol: f64) -> bool {
    p.contains(x, tol)
}

/// See [`Polytope::vertices`].
pub fn polytope_vertices(p: &Polytope) -> Result<Vec<Point2>> {
    p.vertices()
}

/// Common boundary of two cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedFacet {
    pub facet_a: usize,
    pub facet_b: usize,
    pub start: Point2,
    pub end: Point2,
}

impl SharedFacet {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }
}

/// Finds a facet of `a` and a facet of `b` lying on the same line with
/// opposite normals whose segments overlap by more than `1e-9`.
pub fn shared_facet(a: &Polytope, b: &Polytope) -> Option<SharedFacet> {
    for i in 0..a.len() {
        for j in 0..b.len() {
            let (na, nb) = (a.normal(i), b.normal(j));
            if na.dot(nb) > -1.0 + EPS_FEASIBLE {
                continue;
            }
            if (a.offset(i) + b.offset(j)).abs() > EPS_FEASIBLE * (1.0 + a.offset(i).abs()) {
                continue;
            }
            let (Ok(Some((a0, a1))), Ok(Some((b0, b1)))) = (a.facet_segment(i), b.facet_segment(j)) else {
                continue;
            };
            let dir = na.perp();
            let (sa0, sa1) = (a0.dot(dir), a1.dot(dir));
            let (sb0, sb1) = (b0.dot(dir).min(b1.dot(dir)), b0.dot(dir).max(b1.dot(dir)));
            let lo = sa0.max(sb0);
            let hi = sa1.min(sb1);
            if hi - lo > EPS_FEASIBLE {
                let at = |s: f64| a0 + (a1 - a0) * ((s - sa0) / (sa1 - sa0));
                return Some(SharedFacet {
                    facet_a: i,
                    facet_b: j,
                    start: at(lo),
                    end: at(hi),
                });
            }
        }
    }
    None
}
