//! Weight spaces of L_(1) and the annihilation algebra of Vir.

use lieconf::annih::{check_annih_lie, check_correspondence, weight_spaces, AnnihAlgebra};
use lieconf::conformal::virasoro;
use lieconf::exactpoly::Scalar;
use lieconf::repr::rank_one_vir;

fn main() {
    let m = rank_one_vir(&Scalar::ratio(1, 2), &Scalar::from_int(-1)).module;
    let w = weight_spaces(&m, "L", 4).unwrap();
    for x in &w.weights {
        let v: Vec<String> = x.basis[0].iter().map(|p| p.to_string()).collect();
        println!("weight {:>4}: dim {}, vector {}", x.weight.to_string(), x.dim, v.join(", "));
    }

    let sum = m.direct_sum(&rank_one_vir(&Scalar::ratio(1, 2), &Scalar::from_int(2)).module).unwrap();
    let dims: Vec<usize> = weight_spaces(&sum, "L", 4).unwrap().weights.iter().map(|x| x.dim).collect();
    println!("rank two sum: {dims:?}");

    let x = AnnihAlgebra::new(virasoro(), 5);
    let b = x.bracket((0, 3), (0, 1)).unwrap();
    println!("[L_(3), L_(1)] = {}", b.display_with(x.parent.gens()));
    println!("{}", check_annih_lie(&x));
    println!("{}", check_correspondence(&x, &m).unwrap());
}
