//! The Brown algebra and its descent along a quadratic extension.

use freudenthal::albert::AlbertAlgebra;
use freudenthal::descent::brown::skew_space;
use freudenthal::descent::{brown_descend, check_brown};
use freudenthal::sampling::Budget;
use freudenthal::Scalar;

fn main() {
    let a = Scalar::from(-1);
    println!("skew space dimension: {}", skew_space().len());
    println!("descended basis size: {}", brown_descend(&a).unwrap().len());
    for c in check_brown(&AlbertAlgebra::split(), &a, &Budget::new(0, 5, 1, false)).unwrap().checks {
        println!("{:<22} {:?}", c.name, c.status);
    }
}
