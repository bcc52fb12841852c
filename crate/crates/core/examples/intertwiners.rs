//! The intertwiner equation: one homogeneous instance, the b = c_i − c_j
//! obstruction and the whole solution table.

use lieconf::exactpoly::Scalar;
use lieconf::funceq::{
    degree_offset, solve_homogeneous, solve_intertwiner, verify_solution_table, FuncEqInstance, TableSamples,
};

fn main() {
    let (a, di, dj) = (Scalar::from_int(3), Scalar::from_int(1), Scalar::from_int(1));
    let sol = solve_homogeneous(&a, &di, &dj, 2);
    for f in &sol.basis {
        let o = degree_offset(f, &a, &di, &dj).unwrap();
        println!("f = {f}  (deg_λ {}, expected {})", o.lambda_degree, o.s);
    }

    let inst = FuncEqInstance {
        a: Scalar::from_int(2),
        b: Scalar::from_int(1),
        delta_i: Scalar::from_int(1),
        c_i: Scalar::from_int(0),
        delta_j: Scalar::from_int(2),
        c_j: Scalar::from_int(0),
        degree_bound: 5,
        homogeneous_degree: None,
    };
    println!("b ≠ c_i − c_j: dimension {}", solve_intertwiner(&inst).dimension);

    let v = verify_solution_table(&TableSamples::default());
    let report = v.report();
    println!("{report}");
}
