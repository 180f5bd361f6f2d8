//! Cayley-Dickson doubling: quaternions and octonions, norm forms and the
//! failure of associativity.

use std::sync::Arc;

use freudenthal::composition::CompositionAlgebra;

fn main() {
    for (name, alg) in [("split", CompositionAlgebra::split_octonions()), ("division", CompositionAlgebra::division_octonions())] {
        let sig = alg.norm_form().signature_and_witt();
        println!("{name} octonions: dim {}, norm signature ({}, {})", alg.dim(), sig.positives, sig.negatives);
    }
    let o = Arc::new(CompositionAlgebra::division_octonions());
    let (i, j, l) = (o.basis(1), o.basis(2), o.basis(4));
    let left = i.multiply(&j).unwrap().multiply(&l).unwrap();
    let right = i.multiply(&j.multiply(&l).unwrap()).unwrap();
    println!("(ij)l = {:?}", left.coeffs());
    println!("i(jl) = {:?}", right.coeffs());
    let x = i.add(&l.scale(&"2/3".parse().unwrap())).unwrap();
    let y = j.add(&o.one()).unwrap();
    println!("N(xy) = N(x)N(y): {}", x.multiply(&y).unwrap().norm() == &x.norm() * &y.norm());
}
