//! Rank one modules: M_{a,b} over Vir, a reducible one, and the two shapes
//! over a graded table.

use lieconf::conformal::{map_virasoro, virasoro, CommAlgebra};
use lieconf::exactpoly::Scalar;
use lieconf::repr::{action_kernel, check_module, find_submodule, rank_one_theorem_module, rank_one_vir, TheoremCase};

fn main() {
    let vir = virasoro();
    for (a, b) in [(2, 0), (1, 3), (0, 5)] {
        let m = rank_one_vir(&Scalar::from_int(a), &Scalar::from_int(b));
        let report = check_module(&vir, &m.module).unwrap();
        println!("{}: irreducible = {}, {}", m.module.name, m.irreducible, report.status());
    }
    // M_{0,b} contains (∂+b)M_{0,b}
    let b = Scalar::from_int(5);
    let f = find_submodule(&Scalar::from_int(0), &b, std::slice::from_ref(&b), 2);
    println!("submodule generator of M(0,5): {}", f.map(|f| f.to_string()).unwrap_or_else(|| "none".into()));

    // V(C[T]) up to grade 4, with L⊗T^i acting by t^i (∂ + λ + 1/3)
    let alg = map_virasoro(&CommAlgebra::polynomial_quotient(5), Some(4)).unwrap();
    let t = Scalar::from_int(1);
    let coeffs = (0..5).map(|_| t.clone()).collect();
    let case = TheoremCase::A1Two { delta: Scalar::from_int(1), c: Scalar::ratio(1, 3), coeffs };
    let m = rank_one_theorem_module(&alg, &case).unwrap();
    println!("{}", check_module(&alg, &m).unwrap());
    let kernel = action_kernel(&alg, &m).unwrap();
    for v in &kernel.combinations {
        let terms: Vec<String> = v
            .iter()
            .zip(alg.gens())
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(c, g)| format!("{c}*{g}"))
            .collect();
        println!("acts as zero: {}", terms.join(" + "));
    }
}
