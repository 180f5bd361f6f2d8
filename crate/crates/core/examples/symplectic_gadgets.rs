//! The isometries varpi and f(c, u, phi) of the degenerate system.

use freudenthal::forms::SkewForm;
use freudenthal::fts::build_ms_standard;
use freudenthal::fts::gadgets::{check_f_composition, f_map, is_isometry, varpi_matrix};
use freudenthal::matrix::DenseMatrix;
use freudenthal::Scalar;

fn main() {
    let w = 6;
    let ts = build_ms_standard(w).unwrap();
    println!("varpi is an isometry: {}", is_isometry(&ts, &varpi_matrix(w)));

    let form = SkewForm::<Scalar>::standard(w).unwrap();
    let mut phi = DenseMatrix::identity(w);
    phi[(0, 1)] = Scalar::from(2);
    let psi = DenseMatrix::identity(w).scale(&Scalar::new(-1, 2));
    let u: Vec<Scalar> = (0..w as i64).map(Scalar::from).collect();
    let v = vec![Scalar::from(1); w];
    let (c, d) = (Scalar::from(3), Scalar::new(1, 5));
    println!("f(c, u, phi) is an isometry: {}", is_isometry(&ts, &f_map(&form, &c, &u, &phi).unwrap()));
    println!("composition law: {}", check_f_composition(&form, (&c, &u, &phi), (&d, &v, &psi)).unwrap());
}
