//! Quadratic Bezier segments and piece-wise Bezier paths.
//!
//! A segment is `B(t) = (1-t)^2 P0 + 2(1-t)t P1 + t^2 P2` for `t` in `[0, 1]`.
//! With `a = P1 - P0` and `b = P2 - P1` the hodograph is
//! `B'(t) = 2((1-t)a + t b)` and `B'' = 2(b - a)` is constant, so the
//! curvature is `|a x b| / (2 |(1-t)a + t b|^3)` and peaks where the speed is
//! smallest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point2, Vector2};

/// Speeds at or below this are treated as a cusp.
pub const CUSP_SPEED: f64 = 1e-12;

/// Junction position tolerance of a [`PwbPath`].
pub const C0_TOL: f64 = 1e-9;
/// Junction derivative tolerance of a [`PwbPath`].
pub const C1_TOL: f64 = 1e-6;

/// Grid resolution used to bracket the curvature maximum.
const CURVATURE_GRID: usize = 1001;

/// Positive half of the 16-point Gauss-Legendre rule on `[-1, 1]`.
const GAUSS_LEGENDRE_16: [(f64, f64); 8] = [
    (0.09501250983763745, 0.18945061045506859),
    (0.2816035507792589, 0.1826034150449236),
    (0.45801677765722737, 0.16915651939500262),
    (0.6178762444026438, 0.14959598881657676),
    (0.755404408355003, 0.12462897125553403),
    (0.8656312023878318, 0.09515851168249259),
    (0.9445750230732326, 0.062253523938647706),
    (0.9894009349916499, 0.027152459411754037),
];

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Bernstein basis polynomial `C(n, i) (1-t)^(n-i) t^i`.
pub fn bernstein(n: u32, i: u32, t: f64) -> Result<f64> {
    if i > n {
        return Err(Error::InvalidArgument(format!("Bernstein index {i} outside 0..={n}")));
    }
    Ok(binomial(n, i) * (1.0 - t).powi((n - i) as i32) * t.powi(i as i32))
}

fn check_param(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("curve parameter {t} outside [0, 1]")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[Point2; 3]", into = "[Point2; 3]")]
pub struct BezierSegment {
    pub p0: Point2,
    pub p1: Point2,
    pub p2: Point2,
}

impl From<[Point2; 3]> for BezierSegment {
    fn from(p: [Point2; 3]) -> Self {
        Self::new(p[0], p[1], p[2])
    }
}

impl From<BezierSegment> for [Point2; 3] {
    fn from(s: BezierSegment) -> Self {
        s.control_points()
    }
}

impl BezierSegment {
    pub const fn new(p0: Point2, p1: Point2, p2: Point2) -> Self {
        Self { p0, p1, p2 }
    }

    pub fn control_points(&self) -> [Point2; 3] {
        [self.p0, self.p1, self.p2]
    }

    /// Evaluates the curve; rejects `t` outside `[0, 1]`.
    pub fn eval(&self, t: f64) -> Result<Point2> {
        check_param(t)?;
        Ok(self.point_at(t))
    }

    /// Unchecked evaluation.
    #[inline]
    pub fn point_at(&self, t: f64) -> Point2 {
        let mt = 1.0 - t;
        self.p0 * (mt * mt) + self.p1 * (2.0 * mt * t) + self.p2 * (t * t)
    }

    #[inline]
    pub fn derivative(&self, t: f64) -> Vector2 {
        ((self.p1 - self.p0) * (1.0 - t) + (self.p2 - self.p1) * t) * 2.0
    }

    #[inline]
    pub fn second_derivative(&self) -> Vector2 {
        (self.p2 - self.p1 * 2.0 + self.p0) * 2.0
    }

    /// Parameter and value of the smallest speed `|B'(t)|` on `[0, 1]`.
    pub fn min_speed(&self) -> (f64, f64) {
        let a = self.p1 - self.p0;
        let b = self.p2 - self.p1;
        let d = b - a;
        let dd = d.norm_sq();
        let t = if dd <= 0.0 {
            0.0
        } else {
            (-(a.dot(d)) / dd).clamp(0.0, 1.0)
        };
        (t, self.derivative(t).norm())
    }

    fn check_cusp(&self) -> Result<()> {
        let (t, speed) = self.min_speed();
        if speed <= CUSP_SPEED {
            Err(Error::Cusp { t })
        } else {
            Ok(())
        }
    }

    /// Unsigned curvature `|B' x B''| / |B'|^3`.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        check_param(t)?;
        let d1 = self.derivative(t);
        let speed = d1.norm();
        if speed <= CUSP_SPEED {
            return Err(Error::Cusp { t });
        }
        Ok(d1.cross(self.second_derivative()).abs() / (speed * speed * speed))
    }

    fn curvature_unchecked(&self, t: f64) -> f64 {
        let d1 = self.derivative(t);
        let speed = d1.norm();
        d1.cross(self.second_derivative()).abs() / (speed * speed * speed)
    }

    /// Maximum curvature over the segment as `(t*, kappa)`: a 1001-point
    /// grid search refined by golden-section search to `|dt| <= 1e-9`.
    pub fn max_curvature(&self) -> Result<(f64, f64)> {
        self.check_cusp()?;
        let last = CURVATURE_GRID - 1;
        let mut best = (0usize, f64::NEG_INFINITY);
        for i in 0..CURVATURE_GRID {
            let k = self.curvature_unchecked(i as f64 / last as f64);
            if k > best.1 {
                best = (i, k);
            }
        }
        if best.1 == 0.0 {
            return Ok((0.0, 0.0));
        }
        let mut lo = best.0.saturating_sub(1) as f64 / last as f64;
        let mut hi = (best.0 + 1).min(last) as f64 / last as f64;
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = self.curvature_unchecked(x1);
        let mut f2 = self.curvature_unchecked(x2);
        while hi - lo > 1e-9 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = self.curvature_unchecked(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = self.curvature_unchecked(x1);
            }
        }
        let mut t = 0.5 * (lo + hi);
        let mut k = self.curvature_unchecked(t);
        // endpoints of the bracket can beat the interior estimate
        for cand in [best.0 as f64 / last as f64, lo, hi] {
            let kc = self.curvature_unchecked(cand);
            if kc > k {
                t = cand;
                k = kc;
            }
        }
        Ok((t, k))
    }

    /// Arc length by adaptive 16-point Gauss-Legendre quadrature.
    pub fn arc_length(&self) -> f64 {
        let whole = self.gauss_panel(0.0, 1.0);
        self.adaptive_length(0.0, 1.0, whole, 1e-9, 0)
    }

    fn gauss_panel(&self, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        GAUSS_LEGENDRE_16
            .iter()
            .map(|&(x, w)| w * (self.derivative(mid - half * x).norm() + self.derivative(mid + half * x).norm()))
            .sum::<f64>()
            * half
    }

    fn adaptive_length(&self, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = self.gauss_panel(a, m);
        let right = self.gauss_panel(m, b);
        if (left + right - whole).abs() <= tol || depth >= 40 {
            return left + right;
        }
        self.adaptive_length(a, m, left, 0.5 * tol, depth + 1) + self.adaptive_length(m, b, right, 0.5 * tol, depth + 1)
    }

    /// Applies `f` to every control point.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Self {
        Self::new(f(self.p0), f(self.p1), f(self.p2))
    }
}

/// Chain of quadratic segments with C0 and C1 junctions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PwbPath {
    segments: Vec<BezierSegment>,
}

impl PwbPath {
    pub fn new(segments: Vec<BezierSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidArgument("path needs at least one segment".into()));
        }
        if let Some(p) = segments
            .iter()
            .flat_map(|s| s.control_points())
            .find(|p| !p.is_finite())
        {
            return Err(Error::InvalidArgument(format!("non-finite control point {p}")));
        }
        let path = Self { segments };
        let c0 = path.c0_residual();
        let c1 = path.c1_residual();
        if c0 > C0_TOL || c1 > C1_TOL {
            return Err(Error::InvalidArgument(format!(
                "segments are not C1-continuous (C0 residual {c0:e}, C1 residual {c1:e})"
            )));
        }
        Ok(path)
    }

    pub fn segments(&self) -> &[BezierSegment] {
        &self.segments
    }

    pub fn start(&self) -> Point2 {
        self.segments[0].p0
    }

    pub fn end(&self) -> Point2 {
        self.segments[self.segments.len() - 1].p2
    }

    /// Largest `|P2^i - P0^(i+1)|` over junctions.
    pub fn c0_residual(&self) -> f64 {
        self.segments
            .windows(2)
            .map(|w| w[0].p2.distance(w[1].p0))
            .fold(0.0, f64::max)
    }

    /// Largest `|(P2 - P1)^i - (P1 - P0)^(i+1)|` over junctions.
    pub fn c1_residual(&self) -> f64 {
        self.segments
            .windows(2)
            .map(|w| ((w[0].p2 - w[0].p1) - (w[1].p1 - w[1].p0)).norm())
            .fold(0.0, f64::max)
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(BezierSegment::arc_length).sum()
    }

    /// Point at global parameter `s` in `[0, n_segments]`.
    pub fn point_at(&self, s: f64) -> Point2 {
        let n = self.segments.len();
        let s = s.clamp(0.0, n as f64);
        let i = (s.floor() as usize).min(n - 1);
        self.segments[i].point_at(s - i as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathMetrics {
    pub length: f64,
    pub max_curvature: f64,
}

/// Total arc length and the largest per-segment curvature.
pub fn path_metrics(path: &PwbPath) -> Result<PathMetrics> {
    let mut max_k: f64 = 0.0;
    for s in path.segments() {
        max_k = max_k.max(s.max_curvature()?.1);
    }
    Ok(PathMetrics {
        length: path.length(),
        max_curvature: max_k,
    })
}
