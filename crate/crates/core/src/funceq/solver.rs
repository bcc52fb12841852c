//! Coefficient-matching solvers for the intertwiner equations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{Degree, Monomial, MultiPoly, Scalar, Var};
use crate::linalg::Matrix;

/// Parameters of
/// `(−λ−μ+aλ+b) f(∂,λ+μ) = f(∂+λ,μ)(∂+Δ_iλ+c_i) − (∂+μ+Δ_jλ+c_j) f(∂,μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncEqInstance {
    pub a: Scalar,
    pub b: Scalar,
    pub delta_i: Scalar,
    pub c_i: Scalar,
    pub delta_j: Scalar,
    pub c_j: Scalar,
    pub degree_bound: u32,
    /// Restricts unknowns to total degree exactly `k`.
    pub homogeneous_degree: Option<u32>,
}

impl FuncEqInstance {
    /// The homogeneous equation: `b = c_i = c_j = 0`, total degree `k`.
    pub fn homogeneous(a: &Scalar, delta_i: &Scalar, delta_j: &Scalar, k: u32) -> Self {
        FuncEqInstance {
            a: a.clone(),
            b: Scalar::from_int(0),
            delta_i: delta_i.clone(),
            c_i: Scalar::from_int(0),
            delta_j: delta_j.clone(),
            c_j: Scalar::from_int(0),
            degree_bound: k,
            homogeneous_degree: Some(k),
        }
    }

    /// `LHS − RHS` for a candidate `f(∂,λ)`.
    pub fn defect(&self, f: &MultiPoly) -> MultiPoly {
        let (d, l, m) = (MultiPoly::d(), MultiPoly::l(), MultiPoly::m());
        let l_plus_m = &l + &m;
        let lead = &(&l.scale(&(&self.a - &Scalar::from_int(1))) - &m) + &MultiPoly::constant(self.b.clone());
        let lhs = &lead * &f.at_dl(&d, &l_plus_m);
        let right_i = &MultiPoly::affine(&self.delta_i, &self.c_i) * &f.at_dl(&(&d + &l), &m);
        let right_j = &(&m + &MultiPoly::affine(&self.delta_j, &self.c_j)) * &f.at_dl(&d, &m);
        &lhs - &(&right_i - &right_j)
    }
}

/// Parameters of the variant
/// `(−λ−μ+aλ) q(∂,λ+μ) = q(∂+μ,λ)(∂+Δ₀λ+c₀) − (∂+μ+Δ_tλ+c_t) q(∂,μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcsxInstance {
    pub a: Scalar,
    pub delta_0: Scalar,
    pub c_0: Scalar,
    pub delta_t: Scalar,
    pub c_t: Scalar,
    pub degree_bound: u32,
}

impl BcsxInstance {
    pub fn defect(&self, q: &MultiPoly) -> MultiPoly {
        let (d, l, m) = (MultiPoly::d(), MultiPoly::l(), MultiPoly::m());
        let lead = &l.scale(&(&self.a - &Scalar::from_int(1))) - &m;
        let lhs = &lead * &q.at_dl(&d, &(&l + &m));
        let right_0 = &q.at_dl(&(&d + &m), &l) * &MultiPoly::affine(&self.delta_0, &self.c_0);
        let right_t = &(&m + &MultiPoly::affine(&self.delta_t, &self.c_t)) * &q.at_dl(&d, &m);
        &lhs - &(&right_0 - &right_t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionBasis {
    #[serde(serialize_with = "ser_polys")]
    pub basis: Vec<MultiPoly>,
    pub dimension: usize,
    /// `deg_λ` of each basis element's top homogeneous part.
    #[serde(serialize_with = "ser_degrees")]
    pub lambda_degrees: Vec<Degree>,
}

fn ser_polys<S: serde::Serializer>(v: &[MultiPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn ser_degrees<S: serde::Serializer>(v: &[Degree], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.finite()))
}

/// Monomials `∂^p λ^q` with `lo ≤ p+q ≤ hi`, graded-lex descending with ∂ > λ.
pub fn unknown_monomials(lo: u32, hi: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for t in (lo..=hi).rev() {
        for p in (0..=t).rev() {
            out.push(Monomial::dl(p, t - p));
        }
    }
    out
}

/// Nullspace of the linear map `f ↦ defect(f)` on the span of `unknowns`.
/// Each basis vector has a one at its free column, as produced by RREF.
pub fn solve_linear(unknowns: &[Monomial], defect: impl Fn(&MultiPoly) -> MultiPoly) -> Vec<MultiPoly> {
    let images: Vec<MultiPoly> = unknowns.iter().map(|m| defect(&MultiPoly::term(Scalar::from_int(1), *m))).collect();
    let mut rows: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
    for (c, img) in images.iter().enumerate() {
        for (mono, x) in img.terms() {
            rows.entry(*mono).or_insert_with(|| vec![Scalar::from_int(0); unknowns.len()])[c] = x.clone();
        }
    }
    let null = if rows.is_empty() {
        (0..unknowns.len()).map(|k| (0..unknowns.len()).map(|c| Scalar::from_int((c == k) as i64)).collect()).collect()
    } else {
        Matrix::from_rows(rows.into_values().collect()).nullspace()
    };
    null.into_iter().map(|v| MultiPoly::from_terms(v.into_iter().zip(unknowns.iter().copied()))).collect()
}

fn basis_of(basis: Vec<MultiPoly>) -> SolutionBasis {
    let lambda_degrees = basis
        .iter()
        .map(|f| {
            let top = f.total_degree().finite().unwrap_or(0);
            f.homogeneous_part(top).degree_in(Var::Lambda)
        })
        .collect();
    SolutionBasis { dimension: basis.len(), basis, lambda_degrees }
}

/// All solutions of total degree at most the bound (or exactly `k`).
pub fn solve_intertwiner(inst: &FuncEqInstance) -> SolutionBasis {
    let (lo, hi) = match inst.homogeneous_degree {
        Some(k) => (k, k),
        None => (0, inst.degree_bound),
    };
    basis_of(solve_linear(&unknown_monomials(lo, hi), |f| inst.defect(f)))
}

/// Homogeneous degree-`k` solutions of
/// `(−λ+aλ−μ) f(∂,λ+μ) = f(∂+λ,μ)(∂+Δ_iλ) − (∂+μ+Δ_jλ) f(∂,μ)`.
pub fn solve_homogeneous(a: &Scalar, delta_i: &Scalar, delta_j: &Scalar, k: u32) -> SolutionBasis {
    solve_intertwiner(&FuncEqInstance::homogeneous(a, delta_i, delta_j, k))
}

pub fn bcsx_variant_solver(inst: &BcsxInstance) -> SolutionBasis {
    basis_of(solve_linear(&unknown_monomials(0, inst.degree_bound), |q| inst.defect(q)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeOffset {
    pub s: Scalar,
    pub total_degree: u32,
    pub lambda_degree: u32,
}

impl DegreeOffset {
    /// `deg_λ f = a + Δ_j − Δ_i − 1`, as stated for the homogeneous equation.
    pub fn holds(&self) -> bool {
        self.s == Scalar::from_int(self.lambda_degree as i64)
    }

    /// `deg f = a + Δ_j − Δ_i − 1`, which coefficient matching forces for every
    /// nonzero homogeneous solution.
    pub fn holds_total(&self) -> bool {
        self.s == Scalar::from_int(self.total_degree as i64)
    }
}

/// Degree data of a nonzero homogeneous solution `f`; errors if `f` is zero,
/// inhomogeneous or not a solution.
pub fn degree_offset(f: &MultiPoly, a: &Scalar, delta_i: &Scalar, delta_j: &Scalar) -> Result<DegreeOffset> {
    let Degree::Finite(k) = f.total_degree() else {
        return Err(Error::NotASolution(f.to_string()));
    };
    if f.homogeneous_part(k) != *f {
        return Err(Error::NotASolution(format!("{f} (not homogeneous)")));
    }
    if !FuncEqInstance::homogeneous(a, delta_i, delta_j, k).defect(f).is_zero() {
        return Err(Error::NotASolution(f.to_string()));
    }
    let s = &(&(a + delta_j) - delta_i) - &Scalar::from_int(1);
    let lambda_degree = f.degree_in(Var::Lambda).finite().unwrap_or(0);
    Ok(DegreeOffset { s, total_degree: k, lambda_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn p(x: &str) -> MultiPoly {
        parse_poly(x).unwrap()
    }

    #[test]
    fn adjoint_intertwiner() {
        // (λ−μ)(∂+Δ(λ+μ)+c) expands to the right-hand side
        let (delta, c) = (Scalar::ratio(3, 2), s(4));
        let inst = FuncEqInstance {
            a: s(2),
            b: s(0),
            delta_i: delta.clone(),
            c_i: c.clone(),
            delta_j: delta.clone(),
            c_j: c.clone(),
            degree_bound: 2,
            homogeneous_degree: None,
        };
        let f = MultiPoly::affine(&delta, &c);
        assert!(inst.defect(&f).is_zero());
        let sol = solve_intertwiner(&inst);
        assert!(sol.basis.iter().any(|g| g.proportional_to(&f)));
    }

    #[test]
    fn b_must_be_ci_minus_cj() {
        let inst = FuncEqInstance {
            a: s(2),
            b: s(1),
            delta_i: s(1),
            c_i: s(0),
            delta_j: s(1),
            c_j: s(0),
            degree_bound: 6,
            homogeneous_degree: None,
        };
        assert_eq!(solve_intertwiner(&inst).dimension, 0);
    }

    #[test]
    fn constant_solution_at_a_one() {
        let inst = FuncEqInstance {
            a: s(1),
            b: s(0),
            delta_i: Scalar::ratio(-2, 7),
            c_i: s(0),
            delta_j: Scalar::ratio(-2, 7),
            c_j: s(0),
            degree_bound: 0,
            homogeneous_degree: None,
        };
        assert_eq!(solve_intertwiner(&inst).basis, vec![MultiPoly::one()]);
    }

    #[test]
    fn homogeneous_examples() {
        let di = Scalar::ratio(1, 3);
        let sol = solve_homogeneous(&s(1), &di, &(&di + &s(2)), 2);
        assert_eq!(sol.dimension, 1);
        assert!(sol.basis[0].proportional_to(&p("l*(d - 1/3*l)")));

        // the cubic λ(∂²+3∂λ+2λ²) solves at a = 1 with Δ_i = −2, Δ_j = 1 ...
        let cubic = p("l*(d^2 + 3*d*l + 2*l^2)");
        let sol = solve_homogeneous(&s(1), &s(-2), &s(1), 3);
        assert_eq!(sol.dimension, 1);
        assert!(sol.basis[0].proportional_to(&cubic));
        // ... and not at Δ_i = −1, Δ_j = 2, where the defect is −λ²μ(2∂+λ+3μ)
        assert_eq!(solve_homogeneous(&s(1), &s(-1), &s(2), 3).dimension, 0);
        let defect = FuncEqInstance::homogeneous(&s(1), &s(-1), &s(2), 3).defect(&cubic);
        assert_eq!(defect, -&(&p("l^2*m") * &p("2*d + l + 3*m")));
    }

    #[test]
    fn offsets() {
        let off = degree_offset(&p("l*(d^2 + 3*d*l + 2*l^2)"), &s(1), &s(-2), &s(1)).unwrap();
        assert_eq!(off.s, s(3));
        assert!(off.holds() && off.holds_total());
        assert!(degree_offset(&p("l*(d^2 + 3*d*l + 2*l^2)"), &s(1), &s(-1), &s(2)).is_err());
        assert!(degree_offset(&p("d"), &s(1), &s(1), &s(1)).is_err());
    }

    #[test]
    fn offset_at_zero_delta_i_is_total_degree() {
        // f = ∂ solves with Δ_i = 0, Δ_j = 2 − a; deg f = 1 = s but deg_λ f = 0
        let a = s(3);
        let off = degree_offset(&p("d"), &a, &s(0), &s(-1)).unwrap();
        assert!(off.holds_total());
        assert!(!off.holds());
    }

    #[test]
    fn bcsx_constants() {
        let inst = BcsxInstance { a: s(1), delta_0: s(2), c_0: s(5), delta_t: s(2), c_t: s(5), degree_bound: 0 };
        assert_eq!(bcsx_variant_solver(&inst).basis, vec![MultiPoly::one()]);
        let off = BcsxInstance { c_t: s(6), ..inst };
        assert_eq!(bcsx_variant_solver(&off).dimension, 0);
    }
}
