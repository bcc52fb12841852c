//! Smith normal form over C[∂] and the torsion of a presented module.

use lieconf::exactpoly::UniPoly;
use lieconf::repr::{smith_normal_form, torsion_split, PolyMatrix};

fn show(name: &str, m: &PolyMatrix) {
    println!("{name}:");
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}

fn main() {
    let d = UniPoly::x();
    let m = PolyMatrix::from_rows(vec![
        vec![&d * &d, &d + &UniPoly::one(), UniPoly::zero()],
        vec![UniPoly::zero(), d.clone(), &d * &(&d - &UniPoly::one())],
    ]);
    let s = smith_normal_form(&m);
    show("M", &m);
    show("D", &s.d);
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);

    let t = torsion_split(&PolyMatrix::from_rows(vec![vec![d.clone(), UniPoly::one()], vec![UniPoly::zero(), d]]));
    let torsion: Vec<String> = t.torsion.iter().map(UniPoly::to_string).collect();
    println!("coker [[d,1],[0,d]]: free rank {}, torsion {:?}", t.free_rank, torsion);
}
