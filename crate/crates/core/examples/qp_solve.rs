//! Solves a small QP directly and checks the optimality certificate.
//!
//! minimize (x - 2)^2 + (y - 1)^2  subject to  x + y = 2,  x <= 1.2

use nalgebra::{DMatrix, DVector};
use pwb_planner::qp::{check_kkt, solve, QpProblem};

fn main() -> pwb_planner::Result<()> {
    let p = QpProblem::new(
        DMatrix::from_diagonal_element(2, 2, 2.0),
        DVector::from_vec(vec![-4.0, -2.0]),
        DMatrix::from_row_slice(1, 2, &[1.0, 1.0]),
        DVector::from_vec(vec![2.0]),
        DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
        DVector::from_vec(vec![1.2]),
    )?;
    let s = solve(&p);
    println!("status {:?} after {} iterations", s.status, s.iterations);
    println!("x = ({:.6}, {:.6}), objective {:.6}", s.x[0], s.x[1], s.objective);
    println!(
        "active rows {:?}, multipliers {:?}",
        s.active_set,
        s.ineq_multipliers.as_slice()
    );

    let kkt = check_kkt(&p, &s.x, &s.eq_multipliers, &s.ineq_multipliers);
    println!("{kkt:#?}");
    Ok(())
}
