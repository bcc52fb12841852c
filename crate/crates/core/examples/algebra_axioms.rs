//! Skew-symmetry and Jacobi on the built-in algebras, and a failing semidirect product.

use lieconf::conformal::{
    block, check_algebra, current, jacobi_defect, map_virasoro, vir_semidirect_current, virasoro, CommAlgebra, LieTable,
};
use lieconf::exactpoly::Scalar;

fn main() {
    let sl2 = LieTable::sl2();
    let algebras = [
        virasoro(),
        current(&sl2).unwrap(),
        vir_semidirect_current(&Scalar::from_int(1), &sl2).unwrap(),
        block(&Scalar::ratio(1, 2), 6).unwrap(),
        map_virasoro(&CommAlgebra::polynomial_quotient(4), None).unwrap(),
    ];
    for alg in &algebras {
        println!("{}", check_algebra(alg));
    }

    // Vir ⋉ Cur g with a = 0 is a Lie conformal algebra only for abelian g
    let bad = vir_semidirect_current(&Scalar::from_int(0), &sl2).unwrap();
    let report = check_algebra(&bad);
    println!("{report}");
    let (l, e, h) = (bad.gen_index("L").unwrap(), bad.gen_index("e").unwrap(), bad.gen_index("h").unwrap());
    let d = jacobi_defect(&bad, l, e, h).unwrap();
    println!("J(L, e, h) = {}", d.display_with(bad.gens()));
}
