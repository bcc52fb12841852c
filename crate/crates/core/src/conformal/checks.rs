//! Skew-symmetry and Jacobi identity as exact polynomial identities.

use rayon::prelude::*;

use super::{ConformalAlgebra, GenVec};
use crate::error::Result;
use crate::exactpoly::{MultiPoly, Var};
use crate::report::{Check, Report};

/// Substitution helpers for `p(∂,λ)` re-evaluated at shifted arguments.
struct Shifts {
    pub l: MultiPoly,
    pub m: MultiPoly,
    pub d_plus_l: MultiPoly,
    pub d_plus_m: MultiPoly,
    pub l_plus_m: MultiPoly,
    pub minus_l_minus_m: MultiPoly,
    pub minus_l_minus_d: MultiPoly,
}

impl Shifts {
    pub fn new() -> Self {
        let d = MultiPoly::d();
        let l = MultiPoly::l();
        let m = MultiPoly::m();
        Shifts {
            d_plus_l: &d + &l,
            d_plus_m: &d + &m,
            l_plus_m: &l + &m,
            minus_l_minus_m: -&(&l + &m),
            minus_l_minus_d: -&(&l + &d),
            l,
            m,
        }
    }
}

/// `p_{j,i}` re-expressed through skew-symmetry: `−p_{i,j}(∂, −λ−∂)`.
pub fn skew_image(v: &GenVec) -> GenVec {
    let s = Shifts::new();
    v.map(|p| -&p.substitute(Var::Lambda, &s.minus_l_minus_d))
}

/// Verifies `[g_i λ g_j] = −[g_j_{−λ−∂} g_i]` for every stored ordered pair.
pub fn check_skew(alg: &ConformalAlgebra) -> Report {
    let mut report = Report::new(format!("skew-symmetry of {}", alg.name()));
    let g = alg.gens();
    for ((i, j), v) in alg.entries() {
        let id = format!("skew[{},{}]", g[i], g[j]);
        match alg.entry(j, i) {
            Err(_) => report.push(Check::skipped(id, "transposed entry beyond truncation")),
            Ok(w) => {
                let defect = v.sub(&skew_image(w));
                let defects: Vec<MultiPoly> = defect.iter().map(|(_, p)| p.clone()).collect();
                report.push(Check::from_defects(id, &defects));
            }
        }
    }
    report
}

/// Defect of `[a λ [b μ c]] − [[a λ b]_{λ+μ} c] − [b μ [a λ c]]` on generators,
/// as a vector of polynomials in ∂, λ, μ.
pub fn jacobi_defect(alg: &ConformalAlgebra, a: usize, b: usize, c: usize) -> Result<GenVec> {
    let s = Shifts::new();
    // [a λ [b μ c]] = Σ_t p_{bc,t}(∂+λ, μ) [a λ g_t]
    let mut lhs = GenVec::zero();
    for (t, p) in alg.entry(b, c)?.iter() {
        let shifted = p.at_dl(&s.d_plus_l, &s.m);
        lhs = lhs.add(&alg.entry(a, t)?.mul_poly(&shifted));
    }
    // [[a λ b]_{λ+μ} c] = Σ_t p_{ab,t}(−λ−μ, λ) p_{tc}(∂, λ+μ)
    let mut r1 = GenVec::zero();
    for (t, p) in alg.entry(a, b)?.iter() {
        let coeff = p.at_dl(&s.minus_l_minus_m, &s.l);
        let inner = alg.entry(t, c)?.map(|q| q.substitute(Var::Lambda, &s.l_plus_m));
        r1 = r1.add(&inner.mul_poly(&coeff));
    }
    // [b μ [a λ c]] = Σ_t p_{ac,t}(∂+μ, λ) p_{bt}(∂, μ)
    let mut r2 = GenVec::zero();
    for (t, p) in alg.entry(a, c)?.iter() {
        let shifted = p.at_dl(&s.d_plus_m, &s.l);
        let inner = alg.entry(b, t)?.map(|q| q.substitute(Var::Lambda, &s.m));
        r2 = r2.add(&inner.mul_poly(&shifted));
    }
    Ok(lhs.sub(&r1).sub(&r2))
}

/// Verifies the Jacobi identity on every generator triple. Triples that need a
/// bracket beyond the truncation are listed as skipped.
pub fn check_jacobi(alg: &ConformalAlgebra) -> Report {
    let n = alg.rank();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
    let g = alg.gens();
    let checks: Vec<Check> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let id = format!("jacobi[{},{},{}]", g[a], g[b], g[c]);
            match jacobi_defect(alg, a, b, c) {
                Err(e) => Check::skipped(id, e.to_string()),
                Ok(defect) => {
                    let witnesses: Vec<String> = defect.iter().map(|(k, p)| format!("{} on {}", p, g[k])).collect();
                    if witnesses.is_empty() {
                        Check::pass(id)
                    } else {
                        Check::fail(id, witnesses)
                    }
                }
            }
        })
        .collect();
    let mut report = Report::new(format!("Jacobi identity of {}", alg.name()));
    report.checks = checks;
    report
}

/// Skew-symmetry followed by Jacobi in one report.
pub fn check_algebra(alg: &ConformalAlgebra) -> Report {
    let mut r = Report::new(format!("axioms of {}", alg.name()));
    r.extend(check_skew(alg));
    r.extend(check_jacobi(alg));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::builtins::{self, CommAlgebra, LieTable};
    use crate::exactpoly::{parse_poly, Scalar};
    use crate::report::Status;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn virasoro_passes() {
        let vir = builtins::virasoro();
        assert!(check_skew(&vir).passed());
        assert!(check_jacobi(&vir).passed());
    }

    #[test]
    fn block_one_passes_with_skips() {
        let b = builtins::block(&Scalar::from_int(1), 8).unwrap();
        let skew = check_skew(&b);
        assert!(skew.passed());
        assert_eq!(skew.count(Status::Skipped), 0);
        let jac = check_jacobi(&b);
        assert!(jac.passed());
        assert!(jac.count(Status::Skipped) > 0);
        // every triple with grade sum ≤ 8 is actually evaluated
        let evaluated = jac.count(Status::Pass);
        let expected = (0..=8u32)
            .flat_map(|a| (0..=8u32).flat_map(move |b| (0..=8u32).map(move |c| (a, b, c))))
            .filter(|(a, b, c)| a + b + c <= 8)
            .count();
        assert!(evaluated >= expected);
    }

    #[test]
    fn symmetric_table_fails_skew() {
        let alg = ConformalAlgebra::builder("bad", vec!["A".into(), "B".into()])
            .bracket_to(0, 1, p("d"), 1)
            .bracket_to(1, 0, p("d"), 1)
            .build()
            .unwrap();
        let r = check_skew(&alg);
        assert!(!r.passed());
        // p_{0,1} + p_{1,0}(∂, −λ−∂) = ∂ + ∂ = 2∂
        let w = &r.failures().next().unwrap().witnesses;
        assert_eq!(w, &vec!["2*d".to_string()]);
    }

    #[test]
    fn map_virasoro_nilpotent_passes() {
        let a = CommAlgebra::polynomial_quotient(9);
        let v = builtins::map_virasoro(&a, None).unwrap();
        assert!(check_algebra(&v).passed());
    }

    #[test]
    fn nonabelian_semidirect_needs_a_one() {
        let g = LieTable::two_dim_nonabelian();
        let bad = builtins::vir_semidirect_current(&Scalar::from_int(0), &g).unwrap();
        let r = check_jacobi(&bad);
        assert!(!r.passed());
        assert!(r.failures().all(|c| !c.witnesses.is_empty()));
        let good = builtins::vir_semidirect_current(&Scalar::from_int(1), &g).unwrap();
        assert!(check_algebra(&good).passed());
    }
}
