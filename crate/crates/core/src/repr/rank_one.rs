//! Rank one modules from the classification, action kernels and a bounded
//! irreducibility search.

use num_traits::{One, Zero};

use super::module::ConformalModule;
use crate::conformal::ConformalAlgebra;
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, Scalar, UniPoly, Var};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct RankOneVir {
    pub module: ConformalModule,
    pub a: Scalar,
    pub b: Scalar,
    /// Irreducible iff `a ≠ 0`.
    pub irreducible: bool,
}

/// `M_{a,b}`: `L_λ v = (∂ + aλ + b) v`.
pub fn rank_one_vir(a: &Scalar, b: &Scalar) -> RankOneVir {
    let module = ConformalModule::rank_one(format!("M({a},{b})"), [("L".to_string(), MultiPoly::affine(a, b))])
        .expect("rank one action is well formed");
    RankOneVir { module, a: a.clone(), b: b.clone(), irreducible: !a.is_zero() }
}

/// The two shapes of rank one modules over a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremCase {
    /// `L₀` acts by `∂ + Δλ + c`, `L₁` by `γ`, higher generators by zero.
    /// `γ ≠ 0` requires `a₁ = 1`.
    A1NotTwo { delta: Scalar, c: Scalar, gamma: Scalar },
    /// `L_i` acts by `c_i (∂ + Δλ + c)`; `coeffs[i]` is `c_i` for grade `i`.
    A1Two { delta: Scalar, c: Scalar, coeffs: Vec<Scalar> },
}

/// `a₁` from `p_{0,1} = κ(∂ + a₁λ + b₁)`.
pub fn read_a1(alg: &ConformalAlgebra) -> Result<Scalar> {
    let g0 = alg.gen_of_grade(0).ok_or_else(|| Error::InvalidParams("no generator of grade 0".into()))?;
    let g1 = alg.gen_of_grade(1).ok_or_else(|| Error::InvalidParams("no generator of grade 1".into()))?;
    let p = alg.graded_poly(g0, g1)?;
    let kd = p.coeff_of(Var::Partial, 1).as_constant().unwrap_or_else(Scalar::zero);
    let kl = p.coeff_of(Var::Lambda, 1).as_constant().unwrap_or_else(Scalar::zero);
    let inv = kd.inv().ok_or_else(|| Error::MalformedBracket { index: 1, poly: p.to_string() })?;
    Ok(&kl * &inv)
}

pub fn rank_one_theorem_module(alg: &ConformalAlgebra, case: &TheoremCase) -> Result<ConformalModule> {
    let grading = alg.grading().ok_or_else(|| Error::InvalidParams("algebra is not graded".into()))?;
    let mut actions = Vec::new();
    match case {
        TheoremCase::A1NotTwo { delta, c, gamma } => {
            if !gamma.is_zero() && read_a1(alg)? != Scalar::one() {
                return Err(Error::InvalidParams("γ ≠ 0 needs a₁ = 1".into()));
            }
            if gamma.is_zero() && delta.is_zero() {
                return Err(Error::InvalidParams("Δ ≠ 0 is required when γ = 0".into()));
            }
            for (g, &grade) in alg.gens().iter().zip(&grading.grades) {
                let p = match grade {
                    0 => MultiPoly::affine(delta, c),
                    1 => MultiPoly::constant(gamma.clone()),
                    _ => MultiPoly::zero(),
                };
                actions.push((g.clone(), p));
            }
        }
        TheoremCase::A1Two { delta, c, coeffs } => {
            if delta.is_zero() {
                return Err(Error::InvalidParams("Δ ≠ 0 is required".into()));
            }
            let base = MultiPoly::affine(delta, c);
            for (g, &grade) in alg.gens().iter().zip(&grading.grades) {
                let ci = coeffs
                    .get(grade as usize)
                    .ok_or_else(|| Error::InvalidParams(format!("no coefficient c_{grade}")))?;
                actions.push((g.clone(), base.scale(ci)));
            }
        }
    }
    ConformalModule::rank_one("rank one", actions)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionKernel {
    /// Generators whose action matrix is zero.
    pub zero_generators: Vec<usize>,
    /// Basis of the Scalar combinations `Σ k_i g_i` acting as zero, indexed by generator.
    pub combinations: Vec<Vec<Scalar>>,
}

impl ActionKernel {
    /// True if `v` lies in the span of the kernel basis.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.combinations.clone();
        let r0 = Matrix::from_rows(rows.clone()).rank();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == r0
    }
}

/// Kernel of the Scalar-linear map `Σ k_i g_i ↦ Σ k_i A_i` across all generators.
pub fn action_kernel(alg: &ConformalAlgebra, m: &ConformalModule) -> Result<ActionKernel> {
    let mats: Vec<_> = alg.gens().iter().map(|g| m.action(g)).collect::<Result<_>>()?;
    let zero_generators =
        mats.iter().enumerate().filter(|(_, a)| a.iter().flatten().all(MultiPoly::is_zero)).map(|(i, _)| i).collect();
    // one equation per (entry, monomial)
    let mut keys = std::collections::BTreeSet::new();
    for a in &mats {
        for (k, row) in a.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (mono, _) in p.terms() {
                    keys.insert((k, j, *mono));
                }
            }
        }
    }
    let n = mats.len();
    let rows: Vec<Vec<Scalar>> =
        keys.iter().map(|(k, j, mono)| (0..n).map(|i| mats[i][*k][*j].coeff(mono)).collect()).collect();
    let combinations = if rows.is_empty() {
        (0..n).map(|i| (0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    Ok(ActionKernel { zero_generators, combinations })
}

/// Searches for `f(∂)` with `1 ≤ deg f ≤ max_deg`, a product of factors `∂ + r`
/// for `r` in `roots`, such that `ℂ[∂] f(∂) v` is a submodule of `M_{a,b}`,
/// i.e. `f(∂) | f(∂+λ)(∂+aλ+b)`. Returns the first witness found.
pub fn find_submodule(a: &Scalar, b: &Scalar, roots: &[Scalar], max_deg: u32) -> Option<UniPoly> {
    let action = MultiPoly::affine(a, b);
    let d_plus_l = &MultiPoly::d() + &MultiPoly::l();
    let mut frontier: Vec<(usize, UniPoly)> = vec![(0, UniPoly::one())];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for (start, f) in &frontier {
            for (ri, r) in roots.iter().enumerate().skip(*start) {
                let g = &f.clone() * &UniPoly::new(vec![r.clone(), Scalar::one()]);
                let gm = g.to_multi();
                let image = &gm.substitute(Var::Partial, &d_plus_l) * &action;
                let (_, rem) = image.div_rem_monic(Var::Partial, &gm);
                if rem.is_zero() {
                    return Some(g);
                }
                next.push((ri, g));
            }
        }
        frontier = next;
    }
    None
}
