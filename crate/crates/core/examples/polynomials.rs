//! Parsing, canonical rendering and substitution of polynomials in ∂, λ, μ.

use lieconf::exactpoly::{parse_poly, render, MultiPoly, Scalar, Var};

fn main() {
    let p = parse_poly("d^2 + 3*d*l + 2*l^2").unwrap();
    println!("p          = {}", render(&p));

    // p(∂+λ, μ): the shift that appears in every sesquilinearity rule
    let shifted = p.at_dl(&(&MultiPoly::d() + &MultiPoly::l()), &MultiPoly::m());
    println!("p(d+l, m)  = {shifted}");

    let q = parse_poly("(1/2+i)*l - d").unwrap();
    println!("q          = {q}");
    println!("p*q        = {}", &p * &q);
    println!("p(l := -l-d) = {}", p.substitute(Var::Lambda, &parse_poly("-l - d").unwrap()));

    let c: Scalar = "3/4-2*i".parse().unwrap();
    println!("scalar {c}, inverse {}", c.inv().unwrap());

    match parse_poly("d + + l") {
        Ok(_) => unreachable!(),
        Err(e) => println!("`d + + l` rejected at offset {}: {}", e.offset, e.message),
    }
}
