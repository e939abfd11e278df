//! Dense convex quadratic programs
//!
//! ```text
//!     minimize     1/2 x' Q x + c' x
//!     subject to   E x  = d
//!                  A x <= b
//! ```
//!
//! Equalities are eliminated with a null-space basis `x = x_p + Z y`. The
//! reduced problem is solved by a dual active-set method, which needs no
//! feasible starting point and detects infeasibility exactly. The final
//! active set is re-solved in the full space to polish the multipliers, and
//! every solution carries an independent KKT report.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Optimality contract: status `Optimal` implies a KKT residual at or below this.
pub const KKT_TOL: f64 = 1e-8;
/// Added to `Q` when the reduced Hessian is only semidefinite.
pub const REGULARIZATION: f64 = 1e-9;

const FEAS_TOL: f64 = 1e-9;
const STEP_TOL: f64 = 1e-12;
const MULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QpProblem {
    q: DMatrix<f64>,
    c: DVector<f64>,
    e: DMatrix<f64>,
    d: DVector<f64>,
    a: DMatrix<f64>,
    b: DVector<f64>,
}

impl QpProblem {
    /// Validates dimensions, symmetry (1e-12) and positive semidefiniteness
    /// (smallest eigenvalue >= -1e-10).
    pub fn new(
        q: DMatrix<f64>,
        c: DVector<f64>,
        e: DMatrix<f64>,
        d: DVector<f64>,
        a: DMatrix<f64>,
        b: DVector<f64>,
    ) -> Result<Self> {
        let n = c.len();
        if q.nrows() != n || q.ncols() != n {
            return Err(Error::InvalidArgument(format!(
                "Q is {}x{} but c has length {n}",
                q.nrows(),
                q.ncols()
            )));
        }
        if e.ncols() != n || e.nrows() != d.len() {
            return Err(Error::InvalidArgument(format!(
                "E is {}x{}, d has length {}, n = {n}",
                e.nrows(),
                e.ncols(),
                d.len()
            )));
        }
        if a.ncols() != n || a.nrows() != b.len() {
            return Err(Error::InvalidArgument(format!(
                "A is {}x{}, b has length {}, n = {n}",
                a.nrows(),
                a.ncols(),
                b.len()
            )));
        }
        let all_finite = q
            .iter()
            .chain(c.iter())
            .chain(e.iter())
            .chain(d.iter())
            .chain(a.iter())
            .chain(b.iter())
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidArgument("non-finite QP data".into()));
        }
        let asym = (&q - q.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "Q is not symmetric (max |Q - Q'| = {asym:e})"
            )));
        }
        if n > 0 {
            let min_eig = SymmetricEigen::new(q.clone()).eigenvalues.min();
            if min_eig < -1e-10 {
                return Err(Error::InvalidArgument(format!(
                    "Q is not positive semidefinite (smallest eigenvalue {min_eig:e})"
                )));
            }
        }
        Ok(Self { q, c, e, d, a, b })
    }

    pub fn n_variables(&self) -> usize {
        self.c.len()
    }

    pub fn n_equalities(&self) -> usize {
        self.d.len()
    }

    pub fn n_inequalities(&self) -> usize {
        self.b.len()
    }

    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn c(&self) -> &DVector<f64> {
        &self.c
    }

    pub fn e(&self) -> &DMatrix<f64> {
        &self.e
    }

    pub fn d(&self) -> &DVector<f64> {
        &self.d
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    /// `1/2 x' Q x + c' x`
    pub fn objective(&self, x: &DVector<f64>) -> f64 {
        0.5 * x.dot(&(&self.q * x)) + self.c.dot(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
    /// The active-set method terminated but the KKT residual stayed above
    /// [`KKT_TOL`] after polishing.
    Inaccurate,
}

#[derive(Debug, Clone)]
pub struct QpSolution {
    pub x: DVector<f64>,
    pub objective: f64,
    pub status: QpStatus,
    pub kkt_residual: f64,
    pub iterations: usize,
    /// Multipliers of `E x = d`.
    pub eq_multipliers: DVector<f64>,
    /// Multipliers of `A x <= b` (zero off the active set).
    pub ineq_multipliers: DVector<f64>,
    /// Indices of inequality rows in the final working set.
    pub active_set: Vec<usize>,
    /// True when [`REGULARIZATION`] was added to `Q`.
    pub regularized: bool,
}

/// Independent optimality certificate for a candidate primal/dual pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktReport {
    /// `|Q x + c + E' nu + A' mu|_inf`
    pub stationarity: f64,
    /// `|E x - d|_inf`
    pub equality: f64,
    /// `max(0, max_i (A_i x - b_i))`
    pub inequality: f64,
    /// `max_i |mu_i (A_i x - b_i)|`
    pub complementarity: f64,
    /// Smallest inequality multiplier (0 when there are none).
    pub min_multiplier: f64,
}

impl KktReport {
    /// True when some multiplier is below `-1e-10`.
    pub fn dual_infeasible(&self) -> bool {
        self.min_multiplier < -1e-10
    }

    pub fn max_residual(&self) -> f64 {
        self.stationarity
            .max(self.equality)
            .max(self.inequality)
            .max(self.complementarity)
            .max((-self.min_multiplier).max(0.0))
    }
}

/// Evaluates the KKT conditions of `p` at `(x, nu, mu)`.
pub fn check_kkt(p: &QpProblem, x: &DVector<f64>, nu: &DVector<f64>, mu: &DVector<f64>) -> KktReport {
    check_kkt_with(&p.q, p, x, nu, mu)
}

fn check_kkt_with(
    q: &DMatrix<f64>,
    p: &QpProblem,
    x: &DVector<f64>,
    nu: &DVector<f64>,
    mu: &DVector<f64>,
) -> KktReport {
    let grad = q * x + &p.c + p.e.tr_mul(nu) + p.a.tr_mul(mu);
    let eq = &p.e * x - &p.d;
    let slack = &p.a * x - &p.b;
    KktReport {
        stationarity: inf_norm(&grad),
        equality: inf_norm(&eq),
        inequality: slack.iter().fold(0.0, |m: f64, &v| m.max(v)),
        complementarity: mu
            .iter()
            .zip(slack.iter())
            .fold(0.0, |m: f64, (&u, &s)| m.max((u * s).abs())),
        min_multiplier: mu.iter().fold(0.0, |m: f64, &v| m.min(v)),
    }
}

fn inf_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m: f64, &x| m.max(x.abs()))
}

/// Null-space parameterization of `{x | E x = d}`.
struct Elimination {
    /// Particular solution.
    xp: DVector<f64>,
    /// Orthonormal basis of `ker E`, `n x r`.
    z: DMatrix<f64>,
    consistent: bool,
}

fn eliminate(e: &DMatrix<f64>, d: &DVector<f64>) -> Elimination {
    let n = e.ncols();
    if e.nrows() == 0 {
        return Elimination {
            xp: DVector::zeros(n),
            z: DMatrix::identity(n, n),
            consistent: true,
        };
    }
    let ete = e.tr_mul(e);
    let eig = SymmetricEigen::new(ete);
    let max_eig = eig.eigenvalues.amax().max(f64::MIN_POSITIVE);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]).then(i.cmp(&j)));
    let rank = order
        .iter()
        .take_while(|&&i| eig.eigenvalues[i] > 1e-12 * max_eig)
        .count();
    let etd = e.tr_mul(d);
    let mut xp = DVector::zeros(n);
    for &i in &order[..rank] {
        let v = eig.eigenvectors.column(i);
        xp += v * (v.dot(&etd) / eig.eigenvalues[i]);
    }
    let mut z = DMatrix::zeros(n, n - rank);
    for (k, &i) in order[rank..].iter().enumerate() {
        z.set_column(k, &eig.eigenvectors.column(i));
    }
    let resid = inf_norm(&(e * &xp - d));
    Elimination {
        xp,
        z,
        consistent: resid <= FEAS_TOL * (1.0 + inf_norm(d)),
    }
}

/// Result of the dual active-set iterations on the reduced problem.
struct DualOutcome {
    y: DVector<f64>,
    work: Vec<usize>,
    mult: Vec<f64>,
    status: QpStatus,
}

/// Goldfarb-Idnani dual active-set method for
/// `min 1/2 y'Gy + g'y  s.t.  A y <= b` with `G = L L'` positive definite.
///
/// Starts from the unconstrained minimizer and repeatedly adds the most
/// violated row, dropping rows whose multiplier would turn negative. A
/// violated row that can be added neither by a primal nor by a dual step
/// proves the problem infeasible. Ties are broken by the lowest row index.
fn dual_active_set(
    chol: &Cholesky<f64, Dyn>,
    g: &DVector<f64>,
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    max_iter: usize,
    iters: &mut usize,
) -> DualOutcome {
    let m = a.nrows();
    let l = chol.l();
    let mut y = -chol.solve(g);
    let mut work: Vec<usize> = Vec::new();
    let mut mult: Vec<f64> = Vec::new();
    // L^{-1} n_i with n_i = -a_i, the inward normals of the rows
    let mut scaled = -a.transpose();
    if m > 0 && !l.solve_lower_triangular_mut(&mut scaled) {
        return DualOutcome {
            y,
            work,
            mult,
            status: QpStatus::Inaccurate,
        };
    }
    let viol_tol = |i: usize| FEAS_TOL * 0.1 * (1.0 + b[i].abs());

    loop {
        let slack = b - a * &y;
        let mut add: Option<(usize, f64)> = None;
        for i in 0..m {
            if slack[i] < -viol_tol(i) && !work.contains(&i) && add.is_none_or(|(_, v)| slack[i] < v) {
                add = Some((i, slack[i]));
            }
        }
        let Some((p, _)) = add else {
            return DualOutcome {
                y,
                work,
                mult,
                status: QpStatus::Optimal,
            };
        };
        let mut up = 0.0;
        loop {
            *iters += 1;
            if *iters > max_iter {
                return DualOutcome {
                    y,
                    work,
                    mult,
                    status: QpStatus::IterationLimit,
                };
            }
            let d = scaled.column(p).into_owned();
            let k = work.len();
            let (zw, rr) = if k == 0 {
                (d.clone(), DVector::zeros(0))
            } else {
                let cols: Vec<DVector<f64>> = work.iter().map(|&i| scaled.column(i).into_owned()).collect();
                let qr = DMatrix::from_columns(&cols).qr();
                let q1 = qr.q();
                let proj = q1.tr_mul(&d);
                let rr = qr
                    .r()
                    .solve_upper_triangular(&proj)
                    .unwrap_or_else(|| DVector::zeros(k));
                (&d - &q1 * &proj, rr)
            };
            // partial (dual) step limit: first multiplier to reach zero
            let mut t1 = f64::INFINITY;
            let mut drop = None;
            for j in 0..k {
                if rr[j] > MULT_TOL {
                    let t = mult[j] / rr[j];
                    if t < t1 {
                        t1 = t;
                        drop = Some(j);
                    }
                }
            }
            // full (primal) step onto row p
            let zn = zw.norm_squared();
            let dependent = zn <= STEP_TOL * d.norm_squared();
            let sp = b[p] - a.row(p).dot(&y.transpose());
            let t2 = if dependent { f64::INFINITY } else { (-sp / zn).max(0.0) };
            if t1.is_infinite() && t2.is_infinite() {
                return DualOutcome {
                    y,
                    work,
                    mult,
                    status: QpStatus::Infeasible,
                };
            }
            let t = t1.min(t2);
            if !dependent {
                let mut z = zw;
                l.tr_solve_lower_triangular_mut(&mut z);
                y += z * t;
            }
            for j in 0..k {
                mult[j] -= t * rr[j];
            }
            up += t;
            if t2 <= t1 {
                work.push(p);
                mult.push(up);
                break;
            }
            let j = drop.expect("finite partial step has a row");
            work.remove(j);
            mult.remove(j);
        }
    }
}

/// Re-solves the full KKT system for a fixed working set.
fn polish(q: &DMatrix<f64>, p: &QpProblem, work: &[usize]) -> Option<(DVector<f64>, DVector<f64>, DVector<f64>)> {
    let n = p.n_variables();
    let ne = p.n_equalities();
    let k = work.len();
    let dim = n + ne + k;
    let mut kkt = DMatrix::zeros(dim, dim);
    let mut rhs = DVector::zeros(dim);
    kkt.view_mut((0, 0), (n, n)).copy_from(q);
    for i in 0..ne {
        for j in 0..n {
            kkt[(n + i, j)] = p.e[(i, j)];
            kkt[(j, n + i)] = p.e[(i, j)];
        }
        rhs[n + i] = p.d[i];
    }
    for (w, &i) in work.iter().enumerate() {
        for j in 0..n {
            kkt[(n + ne + w, j)] = p.a[(i, j)];
            kkt[(j, n + ne + w)] = p.a[(i, j)];
        }
        rhs[n + ne + w] = p.b[i];
    }
    for j in 0..n {
        rhs[j] = -p.c[j];
    }
    let lu = kkt.clone().full_piv_lu();
    let mut sol = lu.solve(&rhs)?;
    // one step of iterative refinement
    let resid = &rhs - &kkt * &sol;
    if let Some(corr) = lu.solve(&resid) {
        sol += corr;
    }
    if sol.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let x = sol.rows(0, n).into_owned();
    let nu = sol.rows(n, ne).into_owned();
    let mut mu = DVector::zeros(p.n_inequalities());
    for (w, &i) in work.iter().enumerate() {
        mu[i] = sol[n + ne + w];
    }
    Some((x, nu, mu))
}

/// Equality multipliers minimizing `|Q x + c + A' mu + E' nu|`.
fn recover_eq_multipliers(q: &DMatrix<f64>, p: &QpProblem, x: &DVector<f64>, mu: &DVector<f64>) -> DVector<f64> {
    if p.n_equalities() == 0 {
        return DVector::zeros(0);
    }
    let r = q * x + &p.c + p.a.tr_mul(mu);
    let et = p.e.transpose();
    match et.svd(true, true).solve(&r, 1e-13) {
        Ok(v) => -v,
        Err(_) => DVector::zeros(p.n_equalities()),
    }
}

/// Solves `p`. Never panics on infeasible input; see [`QpStatus`].
pub fn solve(p: &QpProblem) -> QpSolution {
    let n = p.n_variables();
    let m = p.n_inequalities();
    let max_iter = 10 * (n + m).max(1);
    let mut iters = 0usize;

    let elim = eliminate(&p.e, &p.d);
    let infeasible = |x: DVector<f64>, iters: usize| QpSolution {
        objective: p.objective(&x),
        x,
        status: QpStatus::Infeasible,
        kkt_residual: f64::INFINITY,
        iterations: iters,
        eq_multipliers: DVector::zeros(p.n_equalities()),
        ineq_multipliers: DVector::zeros(m),
        active_set: Vec::new(),
        regularized: false,
    };
    if !elim.consistent {
        return infeasible(elim.xp, 0);
    }

    let z = &elim.z;
    let r = z.ncols();
    let mut q = p.q.clone();
    let mut gmat = z.tr_mul(&(&q * z));
    let mut regularized = false;
    let chol = match Cholesky::new(gmat.clone()) {
        Some(ch) if r == 0 || ch.l().diagonal().min() > 1e-7 * (1.0 + gmat.amax()).sqrt() => ch,
        _ => {
            regularized = true;
            for i in 0..n {
                q[(i, i)] += REGULARIZATION;
            }
            gmat = z.tr_mul(&(&q * z));
            match Cholesky::new(gmat.clone()) {
                Some(ch) => ch,
                None => {
                    let mut sol = infeasible(elim.xp.clone(), 0);
                    sol.status = QpStatus::Inaccurate;
                    return sol;
                }
            }
        }
    };
    let g = z.tr_mul(&(&q * &elim.xp + &p.c));
    let a_red = &p.a * z;
    let b_red = &p.b - &p.a * &elim.xp;

    let out = dual_active_set(&chol, &g, &a_red, &b_red, max_iter, &mut iters);
    if out.status != QpStatus::Optimal {
        let mut sol = infeasible(&elim.xp + z * &out.y, iters);
        sol.status = out.status;
        sol.regularized = regularized;
        return sol;
    }
    let x_as = &elim.xp + z * &out.y;
    let mut mu_as = DVector::zeros(m);
    for (&i, &u) in out.work.iter().zip(&out.mult) {
        mu_as[i] = u;
    }
    let nu_as = recover_eq_multipliers(&q, p, &x_as, &mu_as);
    let report_as = check_kkt_with(&q, p, &x_as, &nu_as, &mu_as);

    let mut best = (x_as, nu_as, mu_as, report_as.max_residual());
    if let Some((x, nu, mu)) = polish(&q, p, &out.work) {
        let res = check_kkt_with(&q, p, &x, &nu, &mu).max_residual();
        if res < best.3 {
            best = (x, nu, mu, res);
        }
    }
    let (x, nu, mu, residual) = best;
    let status = if residual <= KKT_TOL {
        QpStatus::Optimal
    } else {
        QpStatus::Inaccurate
    };
    let mut active_set = out.work;
    active_set.sort_unstable();
    QpSolution {
        objective: p.objective(&x),
        x,
        status,
        kkt_residual: residual,
        iterations: iters,
        eq_multipliers: nu,
        ineq_multipliers: mu,
        active_set,
        regularized,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(r: usize, c: usize, v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(r, c, v)
    }

    fn dv(v: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(v)
    }

    fn none(n: usize) -> (DMatrix<f64>, DVector<f64>) {
        (DMatrix::zeros(0, n), DVector::zeros(0))
    }

    #[test]
    fn single_active_bound() {
        // min x^2 s.t. -x <= -1
        let (e, d) = none(1);
        let p = QpProblem::new(dm(1, 1, &[2.0]), dv(&[0.0]), e, d, dm(1, 1, &[-1.0]), dv(&[-1.0])).unwrap();
        let s = solve(&p);
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.x[0] - 1.0).abs() < 1e-12);
        assert!((s.objective - 1.0).abs() < 1e-12);
        assert!((s.ineq_multipliers[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn equality_constrained_symmetry() {
        // min (x-1)^2 + (y-1)^2 s.t. x + y = 1
        let p = QpProblem::new(
            dm(2, 2, &[2.0, 0.0, 0.0, 2.0]),
            dv(&[-2.0, -2.0]),
            dm(1, 2, &[1.0, 1.0]),
            dv(&[1.0]),
            DMatrix::zeros(0, 2),
            DVector::zeros(0),
        )
        .unwrap();
        let s = solve(&p);
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.x[0] - 0.5).abs() < 1e-12 && (s.x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn one_bounded_one_free() {
        let (e, d) = none(2);
        let p = QpProblem::new(
            DMatrix::identity(2, 2),
            dv(&[0.0, 0.0]),
            e,
            d,
            dm(1, 2, &[1.0, 0.0]),
            dv(&[-2.0]),
        )
        .unwrap();
        let s = solve(&p);
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.x[0] + 2.0).abs() < 1e-12 && s.x[1].abs() < 1e-12);
    }

    #[test]
    fn infeasible_is_reported() {
        // x <= 0 and -x <= -1
        let (e, d) = none(1);
        let p = QpProblem::new(
            dm(1, 1, &[1.0]),
            dv(&[0.0]),
            e,
            d,
            dm(2, 1, &[1.0, -1.0]),
            dv(&[0.0, -1.0]),
        )
        .unwrap();
        assert_eq!(solve(&p).status, QpStatus::Infeasible);
        // inconsistent equalities
        let p = QpProblem::new(
            DMatrix::identity(2, 2),
            dv(&[0.0, 0.0]),
            dm(2, 2, &[1.0, 1.0, 2.0, 2.0]),
            dv(&[1.0, 3.0]),
            DMatrix::zeros(0, 2),
            DVector::zeros(0),
        )
        .unwrap();
        assert_eq!(solve(&p).status, QpStatus::Infeasible);
    }

    #[test]
    fn semidefinite_q_with_equalities_is_not_regularized() {
        // min (x - y)^2 with x = 1 fixed: reduced Hessian is positive
        let p = QpProblem::new(
            dm(2, 2, &[2.0, -2.0, -2.0, 2.0]),
            dv(&[0.0, 0.0]),
            dm(1, 2, &[1.0, 0.0]),
            dv(&[1.0]),
            DMatrix::zeros(0, 2),
            DVector::zeros(0),
        )
        .unwrap();
        let s = solve(&p);
        assert_eq!(s.status, QpStatus::Optimal);
        assert!(!s.regularized);
        assert!((s.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_reduced_hessian_is_regularized() {
        // min x^2 with y free: regularization pins y at 0
        let (e, d) = none(2);
        let p = QpProblem::new(
            dm(2, 2, &[2.0, 0.0, 0.0, 0.0]),
            dv(&[0.0, 0.0]),
            e,
            d,
            dm(1, 2, &[0.0, 1.0]),
            dv(&[5.0]),
        )
        .unwrap();
        let s = solve(&p);
        assert!(s.regularized);
        assert_eq!(s.status, QpStatus::Optimal);
        assert!(s.x[0].abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        let (e, d) = none(2);
        let asym = QpProblem::new(
            dm(2, 2, &[1.0, 0.5, 0.0, 1.0]),
            dv(&[0.0, 0.0]),
            e.clone(),
            d.clone(),
            DMatrix::zeros(0, 2),
            DVector::zeros(0),
        );
        assert!(asym.is_err());
        let indef = QpProblem::new(
            dm(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            dv(&[0.0, 0.0]),
            e.clone(),
            d.clone(),
            DMatrix::zeros(0, 2),
            DVector::zeros(0),
        );
        assert!(indef.is_err());
        let dims = QpProblem::new(
            DMatrix::identity(2, 2),
            dv(&[0.0]),
            e,
            d,
            DMatrix::zeros(0, 2),
            DVector::zeros(0),
        );
        assert!(dims.is_err());
    }

    #[test]
    fn kkt_certificate_examples() {
        let (e, d) = none(1);
        let p = QpProblem::new(dm(1, 1, &[2.0]), dv(&[0.0]), e, d, dm(1, 1, &[-1.0]), dv(&[-1.0])).unwrap();
        // hand-assembled: 2x - mu = 0 at x = 1 gives mu = 2
        let r = check_kkt(&p, &dv(&[1.0]), &DVector::zeros(0), &dv(&[2.0]));
        assert!(r.max_residual() <= 1e-12);
        let r = check_kkt(&p, &dv(&[1.1]), &DVector::zeros(0), &dv(&[2.0]));
        assert!(r.stationarity >= 0.1);
        let r = check_kkt(&p, &dv(&[1.0]), &DVector::zeros(0), &dv(&[-2.0]));
        assert!(r.dual_infeasible());
    }

    #[test]
    fn degenerate_duplicate_rows() {
        // the same bound repeated three times, plus a redundant one
        let (e, d) = none(2);
        let p = QpProblem::new(
            DMatrix::identity(2, 2),
            dv(&[-4.0, -4.0]),
            e,
            d,
            dm(4, 2, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0]),
            dv(&[1.0, 1.0, 1.0, 2.0]),
        )
        .unwrap();
        let s = solve(&p);
        assert_eq!(s.status, QpStatus::Optimal);
        assert!((s.x[0] - 1.0).abs() < 1e-10 && (s.x[1] - 1.0).abs() < 1e-10);
    }
}
