//! Free-space cell decomposition and channel search.
//!
//! The free space (boundary minus obstacles) is triangulated by bridging
//! every obstacle into the outer ring, ear clipping the resulting simple
//! polygon, and flipping unconstrained edges until the triangulation is
//! constrained Delaunay. Obstacle and boundary edges are never flipped, so
//! they survive as cell facets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::error::{Error, Result};
use crate::geometry::{
    orient, polygon_centroid, polygon_to_polytope, signed_area, ConvexPolygon, Point2, Polytope, SharedFacet,
    EPS_CONSTRUCT, EPS_FEASIBLE,
};

/// Bounded workspace with convex obstacles.
#[derive(Debug, Clone, PartialEq)]
pub struct Workspace {
    pub boundary: ConvexPolygon,
    pub obstacles: Vec<ConvexPolygon>,
    pub start: Point2,
    pub goal: Point2,
}

impl Workspace {
    /// Checks that every obstacle lies strictly inside the boundary and that
    /// obstacles are pairwise separated. Start and goal are checked by
    /// [`triangulate_free_space`].
    pub fn new(boundary: ConvexPolygon, obstacles: Vec<ConvexPolygon>, start: Point2, goal: Point2) -> Result<Self> {
        let mut problems = Vec::new();
        for (i, ob) in obstacles.iter().enumerate() {
            if let Some(v) = ob
                .vertices()
                .iter()
                .find(|&&v| !boundary.contains_strict(v, EPS_FEASIBLE))
            {
                problems.push(format!("obstacle {i} vertex {v} is not strictly inside the boundary"));
            }
        }
        for i in 0..obstacles.len() {
            for j in (i + 1)..obstacles.len() {
                if !separated(&obstacles[i], &obstacles[j]) {
                    problems.push(format!("obstacles {i} and {j} overlap or touch"));
                }
            }
        }
        if !start.is_finite() || !goal.is_finite() {
            problems.push("start and goal must be finite".into());
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(Self {
            boundary,
            obstacles,
            start,
            goal,
        })
    }

    /// Boundary area minus obstacle areas.
    pub fn free_area(&self) -> f64 {
        self.boundary.area() - self.obstacles.iter().map(ConvexPolygon::area).sum::<f64>()
    }

    /// Inside the boundary and outside every obstacle interior.
    pub fn in_free_space(&self, p: Point2) -> bool {
        self.boundary.contains(p, EPS_FEASIBLE) && !self.obstacles.iter().any(|o| o.contains_strict(p, 0.0))
    }

    /// Same workspace with start and goal replaced.
    pub fn with_endpoints(&self, start: Point2, goal: Point2) -> Self {
        Self {
            start,
            goal,
            ..self.clone()
        }
    }
}

/// Separating-axis test with a strictly positive gap.
fn separated(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    let axis_separates = |p: &ConvexPolygon, q: &ConvexPolygon| {
        p.edges().any(|(u, v)| {
            let e = v - u;
            let n = Point2::new(e.y, -e.x) * (1.0 / e.norm());
            let lim = n.dot(u);
            q.vertices().iter().all(|&w| n.dot(w) > lim + EPS_FEASIBLE)
        })
    };
    axis_separates(a, b) || axis_separates(b, a)
}

/// Adjacency record between two cells (`a < b`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adjacency {
    pub a: usize,
    pub b: usize,
    pub facet: SharedFacet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellGraph {
    pub cells: Vec<Polytope>,
    /// Counter-clockwise corner points of each cell.
    pub cell_vertices: Vec<Vec<Point2>>,
    pub centroids: Vec<Point2>,
    pub adjacency: Vec<Adjacency>,
    neighbors: Vec<Vec<(usize, usize)>>,
}

impl CellGraph {
    /// Builds the graph from counter-clockwise triangles (or other convex
    /// cells) whose shared edges coincide exactly.
    pub fn from_cells(polys: Vec<Vec<Point2>>) -> Result<Self> {
        let mut cells = Vec::with_capacity(polys.len());
        let mut centroids = Vec::with_capacity(polys.len());
        for verts in &polys {
            let poly = ConvexPolygon::new(verts.clone())?;
            cells.push(polygon_to_polytope(&poly)?);
            centroids.push(polygon_centroid(poly.vertices()));
        }
        let cell_vertices: Vec<Vec<Point2>> = polys
            .into_iter()
            .map(|v| ConvexPolygon::new(v).map(|p| p.vertices().to_vec()))
            .collect::<Result<_>>()?;

        // match edges by their (sorted) endpoint coordinates
        let mut edges: BTreeMap<[u64; 4], Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, verts) in cell_vertices.iter().enumerate() {
            let n = verts.len();
            for k in 0..n {
                let (u, v) = (verts[k], verts[(k + 1) % n]);
                edges.entry(edge_key(u, v)).or_default().push((ci, k));
            }
        }
        let mut adjacency = Vec::new();
        for owners in edges.values() {
            if owners.len() == 2 {
                let ((ca, fa), (cb, fb)) = if owners[0].0 < owners[1].0 {
                    (owners[0], owners[1])
                } else {
                    (owners[1], owners[0])
                };
                let verts = &cell_vertices[ca];
                let start = verts[fa];
                let end = verts[(fa + 1) % verts.len()];
                if start.distance(end) > EPS_FEASIBLE {
                    adjacency.push(Adjacency {
                        a: ca,
                        b: cb,
                        facet: SharedFacet {
                            facet_a: fa,
                            facet_b: fb,
                            start,
                            end,
                        },
                    });
                }
            } else if owners.len() > 2 {
                return Err(Error::InvalidGeometry("edge shared by more than two cells".into()));
            }
        }
        adjacency.sort_by_key(|adj| (adj.a, adj.b));
        let mut neighbors = vec![Vec::new(); cells.len()];
        for (idx, adj) in adjacency.iter().enumerate() {
            neighbors[adj.a].push((adj.b, idx));
            neighbors[adj.b].push((adj.a, idx));
            cells[adj.a].facet_tags[adj.facet.facet_a] = Some(adj.b);
            cells[adj.b].facet_tags[adj.facet.facet_b] = Some(adj.a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self {
            cells,
            cell_vertices,
            centroids,
            adjacency,
            neighbors,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `(neighbour cell, adjacency index)` pairs sorted by neighbour.
    pub fn neighbors(&self, cell: usize) -> &[(usize, usize)] {
        &self.neighbors[cell]
    }

    /// Shared facet between `from` and `to` as `(facet in from, facet in to, segment)`.
    pub fn transition(&self, from: usize, to: usize) -> Option<SharedFacet> {
        let &(_, idx) = self.neighbors[from].iter().find(|(n, _)| *n == to)?;
        let adj = self.adjacency[idx];
        Some(if adj.a == from {
            adj.facet
        } else {
            SharedFacet {
                facet_a: adj.facet.facet_b,
                facet_b: adj.facet.facet_a,
                start: adj.facet.end,
                end: adj.facet.start,
            }
        })
    }

    pub fn total_area(&self) -> f64 {
        self.cell_vertices.iter().map(|v| signed_area(v)).sum()
    }
}

fn edge_key(u: Point2, v: Point2) -> [u64; 4] {
    let a = [u.x.to_bits(), u.y.to_bits()];
    let b = [v.x.to_bits(), v.y.to_bits()];
    let (p, q) = if (u.x, u.y) <= (v.x, v.y) { (a, b) } else { (b, a) };
    [p[0], p[1], q[0], q[1]]
}

/// Differences in bridge length or ear quality below this count as ties.
const TIE_TOL: f64 = 1e-9;

/// Constrained Delaunay triangulation of the free space.
pub fn triangulate_free_space(w: &Workspace) -> Result<CellGraph> {
    for (name, p) in [("start", w.start), ("goal", w.goal)] {
        if !w.boundary.contains(p, EPS_FEASIBLE) {
            return Err(Error::InfeasibleWorkspace(format!(
                "{name} {p} is outside the boundary"
            )));
        }
        if let Some(i) = w.obstacles.iter().position(|o| o.contains(p, EPS_FEASIBLE)) {
            return Err(Error::InfeasibleWorkspace(format!(
                "{name} {p} lies inside obstacle {i}"
            )));
        }
    }

    let mut pts: Vec<Point2> = w.boundary.vertices().to_vec();
    let mut constrained: BTreeSet<(usize, usize)> = BTreeSet::new();
    let nb = pts.len();
    let outer: Vec<usize> = (0..nb).collect();
    for k in 0..nb {
        constrained.insert(ordered(k, (k + 1) % nb));
    }
    let mut holes: Vec<Vec<usize>> = Vec::new();
    for ob in &w.obstacles {
        let base = pts.len();
        let n = ob.vertices().len();
        pts.extend(ob.vertices().iter().copied());
        for k in 0..n {
            constrained.insert(ordered(base + k, base + (k + 1) % n));
        }
        // holes run clockwise
        holes.push((0..n).rev().map(|k| base + k).collect());
    }

    let ring = bridge_holes(&pts, outer, holes)?;
    let mut tris = ear_clip(&pts, ring)?;
    delaunay_flip(&pts, &mut tris, &constrained);
    tris.sort_by_key(|t| canonical_triangle(*t));

    let polys: Vec<Vec<Point2>> = tris
        .iter()
        .map(|t| {
            let c = canonical_triangle(*t);
            vec![pts[c[0]], pts[c[1]], pts[c[2]]]
        })
        .collect();
    CellGraph::from_cells(polys)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Rotation of a CCW triangle starting at its smallest vertex id.
fn canonical_triangle(t: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

/// True when the closed segments `pq` and `rs` share a point.
fn segments_touch(p: Point2, q: Point2, r: Point2, s: Point2) -> bool {
    let eps = EPS_CONSTRUCT;
    let d1 = orient(r, s, p);
    let d2 = orient(r, s, q);
    let d3 = orient(p, q, r);
    let d4 = orient(p, q, s);
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)) {
        return true;
    }
    let on = |a: Point2, b: Point2, c: Point2, d: f64| {
        d.abs() <= eps
            && c.x >= a.x.min(b.x) - eps
            && c.x <= a.x.max(b.x) + eps
            && c.y >= a.y.min(b.y) - eps
            && c.y <= a.y.max(b.y) + eps
    };
    on(r, s, p, d1) || on(r, s, q, d2) || on(p, q, r, d3) || on(p, q, s, d4)
}

/// Whether direction `v -> m` points into the interior wedge at ring vertex
/// `v` with neighbours `u` (previous) and `w` (next).
fn in_cone(u: Point2, v: Point2, w: Point2, m: Point2) -> bool {
    let left_of_in = orient(u, v, m) > EPS_CONSTRUCT;
    let left_of_out = orient(v, w, m) > EPS_CONSTRUCT;
    if orient(u, v, w) > 0.0 {
        left_of_in && left_of_out
    } else {
        left_of_in || left_of_out
    }
}

/// Splices every hole into the outer ring through the shortest visible
/// bridge, producing one weakly simple polygon.
fn bridge_holes(pts: &[Point2], mut ring: Vec<usize>, mut holes: Vec<Vec<usize>>) -> Result<Vec<usize>> {
    while !holes.is_empty() {
        let mut best: Option<(f64, usize, usize, usize)> = None; // (len, hole, hole pos, ring pos)
        for (hi, hole) in holes.iter().enumerate() {
            for (hk, &mv) in hole.iter().enumerate() {
                let m = pts[mv];
                for rj in 0..ring.len() {
                    let vv = ring[rj];
                    let v = pts[vv];
                    let len = m.distance(v);
                    // near-ties keep the first candidate so rounding noise
                    // cannot change the result
                    if best.is_some_and(|b| len >= b.0 - TIE_TOL) {
                        continue;
                    }
                    let u = pts[ring[(rj + ring.len() - 1) % ring.len()]];
                    let nx = pts[ring[(rj + 1) % ring.len()]];
                    if !in_cone(u, v, nx, m) {
                        continue;
                    }
                    if bridge_blocked(pts, &ring, &holes, mv, vv) {
                        continue;
                    }
                    best = Some((len, hi, hk, rj));
                }
            }
        }
        let Some((_, hi, hk, rj)) = best else {
            return Err(Error::InvalidGeometry(
                "could not connect an obstacle to the boundary".into(),
            ));
        };
        let hole = holes.remove(hi);
        let mut spliced = Vec::with_capacity(ring.len() + hole.len() + 2);
        spliced.extend_from_slice(&ring[..=rj]);
        for k in 0..=hole.len() {
            spliced.push(hole[(hk + k) % hole.len()]);
        }
        spliced.push(ring[rj]);
        spliced.extend_from_slice(&ring[rj + 1..]);
        ring = spliced;
    }
    Ok(ring)
}

fn bridge_blocked(pts: &[Point2], ring: &[usize], holes: &[Vec<usize>], mv: usize, vv: usize) -> bool {
    let (m, v) = (pts[mv], pts[vv]);
    let crosses = |a: usize, b: usize| {
        if a == mv || a == vv || b == mv || b == vv {
            return false;
        }
        segments_touch(m, v, pts[a], pts[b])
    };
    let ring_hit = (0..ring.len()).any(|k| crosses(ring[k], ring[(k + 1) % ring.len()]));
    if ring_hit {
        return true;
    }
    if holes
        .iter()
        .any(|h| (0..h.len()).any(|k| crosses(h[k], h[(k + 1) % h.len()])))
    {
        return true;
    }
    // the bridge must not pass through the interior of its own hole
    for h in holes.iter().filter(|h| h.contains(&mv)) {
        let k = h.iter().position(|&x| x == mv).unwrap();
        let prev = pts[h[(k + h.len() - 1) % h.len()]];
        let next = pts[h[(k + 1) % h.len()]];
        // hole ring is clockwise, so free space is on the left of its edges
        if !in_cone(prev, m, next, v) {
            return true;
        }
    }
    false
}

/// Ear clipping of a weakly simple counter-clockwise ring. Ears are chosen
/// by best minimum angle so the later flips have less to do.
fn ear_clip(pts: &[Point2], mut ring: Vec<usize>) -> Result<Vec<[usize; 3]>> {
    let mut tris = Vec::with_capacity(ring.len());
    while ring.len() > 3 {
        let n = ring.len();
        let mut best: Option<(f64, usize)> = None;
        for i in 0..n {
            let (ia, ib, ic) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
            let (a, b, c) = (pts[ia], pts[ib], pts[ic]);
            if orient(a, b, c) <= EPS_CONSTRUCT * (c - a).norm().max(1.0) {
                continue;
            }
            let blocked = ring.iter().enumerate().any(|(k, &id)| {
                if k == i || k == (i + n - 1) % n || k == (i + 1) % n {
                    return false;
                }
                let p = pts[id];
                if p == a || p == b || p == c {
                    return false;
                }
                orient(a, b, p) >= -EPS_CONSTRUCT
                    && orient(b, c, p) >= -EPS_CONSTRUCT
                    && orient(c, a, p) >= -EPS_CONSTRUCT
            });
            if blocked {
                continue;
            }
            let q = min_angle_quality(a, b, c);
            if best.is_none_or(|(bq, _)| q > bq + TIE_TOL) {
                best = Some((q, i));
            }
        }
        let Some((_, i)) = best else {
            return Err(Error::InvalidGeometry("ear clipping found no valid ear".into()));
        };
        let n = ring.len();
        tris.push([ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]]);
        ring.remove(i);
    }
    if orient(pts[ring[0]], pts[ring[1]], pts[ring[2]]) > EPS_CONSTRUCT {
        tris.push([ring[0], ring[1], ring[2]]);
    } else {
        return Err(Error::InvalidGeometry("degenerate final triangle".into()));
    }
    Ok(tris)
}

/// Monotone in the smallest angle: `2 * area / (longest edge)^2`.
fn min_angle_quality(a: Point2, b: Point2, c: Point2) -> f64 {
    let l = a.distance(b).max(b.distance(c)).max(c.distance(a));
    orient(a, b, c) / (l * l)
}

/// Positive when `d` is strictly inside the circumcircle of CCW `abc`.
fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    let (ax, ay) = (a.x - d.x, a.y - d.y);
    let (bx, by) = (b.x - d.x, b.y - d.y);
    let (cx, cy) = (c.x - d.x, c.y - d.y);
    (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay)
}

/// Lawson flips on unconstrained edges until locally Delaunay.
fn delaunay_flip(pts: &[Point2], tris: &mut [[usize; 3]], constrained: &BTreeSet<(usize, usize)>) {
    let max_passes = 10 * tris.len() + 10;
    for _ in 0..max_passes {
        let mut edge_map: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for k in 0..3 {
                edge_map.entry(ordered(t[k], t[(k + 1) % 3])).or_default().push((ti, k));
            }
        }
        let mut flipped = false;
        for (edge, owners) in &edge_map {
            if owners.len() != 2 || constrained.contains(edge) {
                continue;
            }
            let (t1, k1) = owners[0];
            let (t2, k2) = owners[1];
            let (a, b, c) = (tris[t1][k1], tris[t1][(k1 + 1) % 3], tris[t1][(k1 + 2) % 3]);
            let d = tris[t2][(k2 + 2) % 3];
            // triangle t1 = (a, b, c) with shared edge a-b; t2 has b-a and apex d
            let scale = [a, b, c]
                .iter()
                .map(|&i| (pts[i] - pts[d]).norm_sq())
                .fold(0.0, f64::max);
            if incircle(pts[a], pts[b], pts[c], pts[d]) <= 1e-12 * scale * scale {
                continue;
            }
            if orient(pts[c], pts[d], pts[a]) >= -EPS_CONSTRUCT || orient(pts[c], pts[d], pts[b]) <= EPS_CONSTRUCT {
                continue;
            }
            // new triangles (c, a, d) and (d, b, c)
            tris[t1] = [c, a, d];
            tris[t2] = [d, b, c];
            flipped = true;
            break;
        }
        if !flipped {
            return;
        }
    }
}

/// Index of the lowest-numbered cell containing `x` (tolerance 1e-9).
pub fn locate_cell(g: &CellGraph, x: Point2) -> Result<usize> {
    g.cells
        .iter()
        .position(|c| c.contains(x, EPS_FEASIBLE))
        .ok_or(Error::PointNotInFreeSpace { x: x.x, y: x.y })
}

/// Ordered cells from the start cell to the goal cell with the facet
/// indices used to enter and leave each one.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub cell_indices: Vec<usize>,
    pub entry_facets: Vec<Option<usize>>,
    pub exit_facets: Vec<Option<usize>>,
    /// `transitions[i]` is the facet from cell `i` to cell `i + 1`, with
    /// `facet_a` indexing cell `i`.
    pub transitions: Vec<SharedFacet>,
}

impl Channel {
    /// Builds a channel from a cell sequence, looking up the shared facets.
    pub fn from_cells(g: &CellGraph, cells: Vec<usize>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidArgument("channel must contain a cell".into()));
        }
        let n = cells.len();
        let mut entry = vec![None; n];
        let mut exit = vec![None; n];
        let mut transitions = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n.saturating_sub(1) {
            let f = g.transition(cells[i], cells[i + 1]).ok_or_else(|| {
                Error::InvalidArgument(format!("cells {} and {} are not adjacent", cells[i], cells[i + 1]))
            })?;
            exit[i] = Some(f.facet_a);
            entry[i + 1] = Some(f.facet_b);
            transitions.push(f);
        }
        let distinct: BTreeSet<usize> = cells.iter().copied().collect();
        if distinct.len() != n {
            return Err(Error::InvalidArgument("channel repeats a cell".into()));
        }
        Ok(Self {
            cell_indices: cells,
            entry_facets: entry,
            exit_facets: exit,
            transitions,
        })
    }

    pub fn len(&self) -> usize {
        self.cell_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cell_indices.is_empty()
    }

    /// Checks adjacency, endpoint containment and simplicity.
    pub fn validate(&self, g: &CellGraph, start: Point2, goal: Point2) -> Result<()> {
        let rebuilt = Self::from_cells(g, self.cell_indices.clone())?;
        if rebuilt != *self {
            return Err(Error::InvalidArgument("channel facets disagree with the graph".into()));
        }
        let first = &g.cells[self.cell_indices[0]];
        let last = &g.cells[*self.cell_indices.last().unwrap()];
        if !first.contains(start, EPS_FEASIBLE) || !last.contains(goal, EPS_FEASIBLE) {
            return Err(Error::InvalidArgument("channel does not contain start and goal".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct QueueItem {
    dist: f64,
    cell: usize,
}

impl Eq for QueueItem {}

impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.cell.cmp(&self.cell))
    }
}

impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cost-to-go to `target` for every cell (centroid-to-centroid distances).
fn distances_to(g: &CellGraph, target: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.len()];
    let mut heap = BinaryHeap::new();
    dist[target] = 0.0;
    heap.push(QueueItem {
        dist: 0.0,
        cell: target,
    });
    while let Some(QueueItem { dist: d, cell }) = heap.pop() {
        if d > dist[cell] {
            continue;
        }
        for &(nb, _) in g.neighbors(cell) {
            let nd = d + g.centroids[cell].distance(g.centroids[nb]);
            if nd < dist[nb] {
                dist[nb] = nd;
                heap.push(QueueItem { dist: nd, cell: nb });
            }
        }
    }
    dist
}

/// Minimum-cost channel under centroid-to-centroid edge costs. Among equal
/// cost paths the lexicographically smallest cell sequence wins.
pub fn find_channel(g: &CellGraph, start: Point2, goal: Point2) -> Result<Channel> {
    let s = locate_cell(g, start)?;
    let t = locate_cell(g, goal)?;
    let dist = distances_to(g, t);
    if !dist[s].is_finite() {
        return Err(Error::NoChannel);
    }
    let mut cells = vec![s];
    let mut cur = s;
    while cur != t {
        let tol = 1e-12 * (1.0 + dist[cur]);
        let next = g
            .neighbors(cur)
            .iter()
            .map(|&(nb, _)| nb)
            .find(|&nb| {
                let w = g.centroids[cur].distance(g.centroids[nb]);
                dist[nb] < dist[cur] && (w + dist[nb] - dist[cur]).abs() <= tol
            })
            .ok_or(Error::NoChannel)?;
        cells.push(next);
        cur = next;
    }
    Channel::from_cells(g, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_ws(obstacles: Vec<ConvexPolygon>, start: Point2, goal: Point2) -> Workspace {
        Workspace::new(
            ConvexPolygon::rectangle(0.0, 0.0, 10.0, 10.0).unwrap(),
            obstacles,
            start,
            goal,
        )
        .unwrap()
    }

    fn has_edge(g: &CellGraph, u: Point2, v: Point2) -> bool {
        g.cell_vertices.iter().any(|verts| {
            let n = verts.len();
            (0..n).any(|k| {
                let (a, b) = (verts[k], verts[(k + 1) % n]);
                (a == u && b == v) || (a == v && b == u)
            })
        })
    }

    #[test]
    fn empty_square_gives_two_triangles() {
        let ws = square_ws(vec![], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0));
        let g = triangulate_free_space(&ws).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.adjacency.len(), 1);
        assert!((g.total_area() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn ring_around_square_obstacle() {
        let ob = ConvexPolygon::rectangle(4.0, 4.0, 6.0, 6.0).unwrap();
        let ws = square_ws(vec![ob.clone()], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0));
        let g = triangulate_free_space(&ws).unwrap();
        // Euler: a square ring with 8 vertices and one hole has 8 triangles
        assert_eq!(g.len(), 8);
        assert!((g.total_area() - 96.0).abs() < 1e-9);
        for (u, v) in ob.edges() {
            assert!(has_edge(&g, u, v), "missing obstacle edge {u}-{v}");
        }
        for c in &g.centroids {
            assert!(!ob.contains(*c, 0.0));
        }
    }

    #[test]
    fn start_in_obstacle_is_rejected() {
        let ob = ConvexPolygon::rectangle(4.0, 4.0, 6.0, 6.0).unwrap();
        let ws = square_ws(vec![ob], Point2::new(5.0, 5.0), Point2::new(9.0, 9.0));
        assert!(matches!(
            triangulate_free_space(&ws),
            Err(Error::InfeasibleWorkspace(_))
        ));
    }

    #[test]
    fn workspace_validation() {
        let b = ConvexPolygon::rectangle(0.0, 0.0, 10.0, 10.0).unwrap();
        let outside = ConvexPolygon::rectangle(9.0, 9.0, 11.0, 11.0).unwrap();
        assert!(matches!(
            Workspace::new(b.clone(), vec![outside], Point2::new(1.0, 1.0), Point2::new(2.0, 2.0)),
            Err(Error::Validation(_))
        ));
        let o1 = ConvexPolygon::rectangle(2.0, 2.0, 4.0, 4.0).unwrap();
        let o2 = ConvexPolygon::rectangle(3.0, 3.0, 5.0, 5.0).unwrap();
        assert!(Workspace::new(b, vec![o1, o2], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0)).is_err());
    }

    #[test]
    fn locate_examples() {
        let ws = square_ws(vec![], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0));
        let g = triangulate_free_space(&ws).unwrap();
        for (i, c) in g.centroids.iter().enumerate() {
            assert_eq!(locate_cell(&g, *c).unwrap(), i);
        }
        let f = g.adjacency[0].facet;
        let mid = f.start.lerp(f.end, 0.5);
        assert_eq!(locate_cell(&g, mid).unwrap(), g.adjacency[0].a.min(g.adjacency[0].b));
        assert!(matches!(
            locate_cell(&g, Point2::new(20.0, 20.0)),
            Err(Error::PointNotInFreeSpace { .. })
        ));
    }

    #[test]
    fn locate_inside_obstacle_fails() {
        let ob = ConvexPolygon::rectangle(4.0, 4.0, 6.0, 6.0).unwrap();
        let ws = square_ws(vec![ob], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0));
        let g = triangulate_free_space(&ws).unwrap();
        assert!(locate_cell(&g, Point2::new(5.0, 5.0)).is_err());
    }

    #[test]
    fn channel_in_same_cell() {
        let ws = square_ws(vec![], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0));
        let g = triangulate_free_space(&ws).unwrap();
        let c = g.centroids[0];
        let ch = find_channel(&g, c, c + Point2::new(0.01, 0.0)).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch.entry_facets, vec![None]);
        assert_eq!(ch.exit_facets, vec![None]);
    }

    #[test]
    fn channel_across_the_diagonal() {
        let ws = square_ws(vec![], Point2::new(1.0, 1.0), Point2::new(9.0, 9.0));
        let g = triangulate_free_space(&ws).unwrap();
        let (s, t) = (g.centroids[0], g.centroids[1]);
        let ch = find_channel(&g, s, t).unwrap();
        assert_eq!(ch.cell_indices, vec![0, 1]);
        ch.validate(&g, s, t).unwrap();
        let tr = ch.transitions[0];
        assert_eq!(ch.exit_facets[0], Some(tr.facet_a));
        assert_eq!(ch.entry_facets[1], Some(tr.facet_b));
    }

    #[test]
    fn disconnected_free_space_has_no_channel() {
        // two cells that do not share an edge
        let g = CellGraph::from_cells(vec![
            vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)],
            vec![Point2::new(5.0, 5.0), Point2::new(6.0, 5.0), Point2::new(5.0, 6.0)],
        ])
        .unwrap();
        assert_eq!(
            find_channel(&g, Point2::new(0.2, 0.2), Point2::new(5.2, 5.2)),
            Err(Error::NoChannel)
        );
    }
}
