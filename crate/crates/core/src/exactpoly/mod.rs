//! Exact scalars and polynomials.
//!
//! Everything downstream is built on two types: [`Scalar`], an element of the
//! Gaussian rationals `Q(i)`, and [`MultiPoly`], a sparse polynomial in the
//! fixed variables ∂, λ, μ (and ν for triple-nested identities). There is no
//! floating point anywhere, so "identically zero" is a syntactic check on the
//! canonical term map.

mod parse;
mod poly;
mod scalar;
mod univariate;

pub use parse::{parse_poly, parse_poly_with, render, ParseError};
pub use poly::{Degree, Degrees, Monomial, MultiPoly, Var, NVARS};
pub use scalar::{Scalar, ScalarParseError};
pub use univariate::UniPoly;

/// `p + q`.
pub fn add(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    p + q
}

/// `p * q`.
pub fn mul(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    p * q
}

/// Image of `p` under `var ↦ expr`.
pub fn substitute(p: &MultiPoly, var: Var, expr: &MultiPoly) -> MultiPoly {
    p.substitute(var, expr)
}

/// Coefficient of `var^k` in `p`.
pub fn coeff_of(p: &MultiPoly, var: Var, k: u32) -> MultiPoly {
    p.coeff_of(var, k)
}

pub fn degrees(p: &MultiPoly) -> Degrees {
    p.degrees()
}

/// Binomial coefficient as a scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::from_int(0);
    }
    let mut acc = num_bigint::BigInt::from(1);
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    Scalar::real(num_rational::BigRational::from_integer(acc))
}

pub fn factorial(n: u32) -> Scalar {
    (1..=n as i64).map(Scalar::from_int).product()
}
