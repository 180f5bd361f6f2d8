//! The gift descended along a quaternion algebra (a, b).

use freudenthal::descent::{check_quatconst, quatconst_build, witt_index_hermitian};
use freudenthal::sampling::Budget;
use freudenthal::Scalar;

fn main() {
    let qc = quatconst_build(Scalar::from(-1), Scalar::from(-1)).unwrap();
    println!("F-dimension of the fixed algebra: {}", qc.fixed_dimension());
    let report = check_quatconst(&qc, &Budget::new(0, 5, 1, false)).unwrap();
    for c in &report.checks {
        println!("{:<22} {:?}", c.name, c.status);
    }
    let h = qc.hermitian_form().unwrap();
    println!("hermitian form has {} coefficients, Witt index {}", h.dim(), witt_index_hermitian(&h).unwrap());
}
