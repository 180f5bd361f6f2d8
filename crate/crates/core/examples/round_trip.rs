//! Split gift back to a triple system, and invariance under rescaling.

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::build_albert;
use freudenthal::gift::{end_of, gift_to_fts};
use freudenthal::Scalar;

fn main() {
    let ts = build_albert(&AlbertAlgebra::split()).unwrap();
    let g = end_of(&ts).unwrap();
    let back = gift_to_fts(&g).unwrap();
    let same = (0..56).all(|a| (a..56).all(|b| back.tensor().basis_dense(a, b, 0) == ts.tensor().basis_dense(a, b, 0)));
    println!("t recovered on all triples (a, b, 0): {same}");

    let scaled = end_of(&ts.scale(&Scalar::from(-3)).unwrap()).unwrap();
    let e = g.unit_matrix(3, 40);
    println!("pi unchanged by scaling on E_3,40: {}", g.pi(&e) == scaled.pi(&e));
}
