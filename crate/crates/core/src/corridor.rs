//! Safe polytope pairs.
//!
//! Every channel cell gets two shrunken copies of its H-representation:
//! `safe_in` bounds the first two control points of the cell's segment and
//! `safe_out` the last two. All facets move inward by the margin except the
//! entry facet (kept at full size in `safe_in`) and the exit facet (kept in
//! `safe_out`), so consecutive segments can meet on the shared boundary.
//!
//! Since `P1` belongs to both sets, the convex hull of the three control
//! points satisfies `H x <= max(b_safe_in, b_safe_out)` row-wise, and so
//! does the whole curve.

use crate::decomposition::{CellGraph, Channel};
use crate::error::{Error, Result};
use crate::geometry::{Point2, Polytope, EPS_FEASIBLE};

/// Minimum area for a shrunken cell to count as nonempty.
const MIN_SAFE_AREA: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SafePair {
    pub base: Polytope,
    pub b_safe_in: Vec<f64>,
    pub b_safe_out: Vec<f64>,
    pub epsilon: f64,
    /// Index of the cell in its graph.
    pub cell: usize,
    pub entry_facet: Option<usize>,
    pub exit_facet: Option<usize>,
}

impl SafePair {
    /// Shrinks `base` by `epsilon` on every facet except the given entry
    /// (for `safe_in`) and exit (for `safe_out`) facets.
    pub fn new(
        base: Polytope,
        cell: usize,
        entry_facet: Option<usize>,
        exit_facet: Option<usize>,
        epsilon: f64,
    ) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "safety margin must be >= 0, got {epsilon}"
            )));
        }
        let shifted: Vec<f64> = base.offsets().iter().map(|b| b - epsilon).collect();
        let mut b_in = shifted.clone();
        let mut b_out = shifted;
        if let Some(k) = entry_facet {
            b_in[k] = base.offset(k);
        }
        if let Some(k) = exit_facet {
            b_out[k] = base.offset(k);
        }
        let pair = Self {
            base,
            b_safe_in: b_in,
            b_safe_out: b_out,
            epsilon,
            cell,
            entry_facet,
            exit_facet,
        };
        for (name, poly) in [("safe_in", pair.safe_in()), ("safe_out", pair.safe_out())] {
            let area = poly.area()?;
            if area <= MIN_SAFE_AREA {
                return Err(Error::MarginTooLarge {
                    cell,
                    epsilon,
                    reason: format!("{name} set is empty or degenerate (area {area:.3e})"),
                });
            }
        }
        Ok(pair)
    }

    pub fn safe_in(&self) -> Polytope {
        self.base.with_offsets(self.b_safe_in.clone())
    }

    pub fn safe_out(&self) -> Polytope {
        self.base.with_offsets(self.b_safe_out.clone())
    }

    /// `max(b_safe_in[k], b_safe_out[k])`, the bound every curve point obeys.
    pub fn corridor_bound(&self, k: usize) -> f64 {
        self.b_safe_in[k].max(self.b_safe_out[k])
    }

    /// Facets that keep the full margin on both sides.
    pub fn margined_facets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.base.len()).filter(move |&k| Some(k) != self.entry_facet && Some(k) != self.exit_facet)
    }
}

/// One [`SafePair`] per channel cell. The first cell has no entry facet and
/// the last no exit facet, so both are fully margined there.
pub fn build_safe_pairs(g: &CellGraph, c: &Channel, epsilon: f64) -> Result<Vec<SafePair>> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "safety margin must be positive, got {epsilon}"
        )));
    }
    c.cell_indices
        .iter()
        .enumerate()
        .map(|(i, &cell)| {
            SafePair::new(
                g.cells[cell].clone(),
                cell,
                c.entry_facets[i],
                c.exit_facets[i],
                epsilon,
            )
        })
        .collect()
}

/// Start must lie in the first `safe_in` set and goal in the last `safe_out`.
pub fn check_endpoints(pairs: &[SafePair], start: Point2, goal: Point2) -> Result<()> {
    let (Some(first), Some(last)) = (pairs.first(), pairs.last()) else {
        return Err(Error::InvalidArgument("empty corridor".into()));
    };
    if !first.safe_in().contains(start, EPS_FEASIBLE) {
        return Err(Error::EndpointInsideMargin {
            which: "start",
            cell: first.cell,
        });
    }
    if !last.safe_out().contains(goal, EPS_FEASIBLE) {
        return Err(Error::EndpointInsideMargin {
            which: "goal",
            cell: last.cell,
        });
    }
    Ok(())
}
