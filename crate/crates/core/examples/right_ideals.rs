//! Inner, singular and isotropic right ideals of End(M(J^d)).

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::build_albert;
use freudenthal::gift::{end_of, ideal_predicates, RightIdeal};
use freudenthal::matrix::basis_vector;
use freudenthal::Scalar;

fn main() {
    let g = end_of(&build_albert(&AlbertAlgebra::split()).unwrap()).unwrap();
    let e = |i: usize| basis_vector::<Scalar>(56, i);
    let cases: [(&str, Vec<Vec<Scalar>>); 3] = [
        ("<beta>", vec![e(55)]),
        ("<alpha, beta>", vec![e(0), e(55)]),
        ("<alpha, J>", (0..28).map(e).collect()),
    ];
    for (label, vectors) in cases {
        let p = ideal_predicates(&g, &RightIdeal::hom_onto(&g, &vectors).unwrap());
        println!("{label:<14} rank {:>2} inner {} singular {} isotropic {}", p.rank, p.inner, p.singular, p.isotropic);
    }
}
