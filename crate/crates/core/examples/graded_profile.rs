//! The I0/I1 split, b_i = i b_1 and the degree profile of graded tables.

use lieconf::conformal::{block, map_virasoro, CommAlgebra};
use lieconf::exactpoly::Scalar;
use lieconf::grading::{check_b_linear, profile_from_table, split_i0_i1};

fn main() {
    let algebras =
        [block(&Scalar::from_int(2), 6).unwrap(), map_virasoro(&CommAlgebra::polynomial_quotient(7), Some(6)).unwrap()];
    for alg in &algebras {
        let (i0, i1, split) = split_i0_i1(alg).unwrap();
        println!("{}: I0 = {i0:?}, I1 = {i1:?}", alg.name());
        println!("  {split}");
        println!("  {}", check_b_linear(alg).unwrap());
        let profile = profile_from_table(alg).unwrap();
        let a: Vec<String> = profile.a_seq.values().map(Scalar::to_string).collect();
        println!("  a = [{}]", a.join(", "));
        println!("  {}", profile.validate());
    }
}
