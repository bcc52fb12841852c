//! Mode actions `g_(n)` on a conformal module and weight spaces of `L_(1)`.

use num_traits::Zero;

use super::algebra::{AnnihAlgebra, Combination};
use crate::conformal::ConformalAlgebra;
use crate::error::Result;
use crate::exactpoly::{factorial, Monomial, MultiPoly, Scalar, Var};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::repr::{ConformalModule, ModuleElement};

/// `g_(n) · u = n! · [λⁿ] (g_λ u)`.
pub fn module_action_n(m: &ConformalModule, g: &str, n: u32, u: &[MultiPoly]) -> Result<ModuleElement> {
    let full = m.act(g, u, &MultiPoly::l())?;
    let f = factorial(n);
    Ok(full.iter().map(|p| p.coeff_of(Var::Lambda, n).scale(&f)).collect())
}

/// `Σ_n (g_(n) · u) λⁿ / n!`.
pub fn reconstruct_action(m: &ConformalModule, g: &str, u: &[MultiPoly]) -> Result<ModuleElement> {
    let full = m.act(g, u, &MultiPoly::l())?;
    let top = full.iter().filter_map(|p| p.degree_in(Var::Lambda).finite()).max().unwrap_or(0);
    let mut out = vec![MultiPoly::zero(); m.rank()];
    for n in 0..=top {
        let part = module_action_n(m, g, n, u)?;
        let lam = MultiPoly::term(factorial(n).inv().unwrap(), Monomial::var(Var::Lambda, n));
        for (o, p) in out.iter_mut().zip(&part) {
            *o = &*o + &(p * &lam);
        }
    }
    Ok(out)
}

fn apply_combination(x: &AnnihAlgebra, m: &ConformalModule, c: &Combination, u: &[MultiPoly]) -> Result<ModuleElement> {
    let mut out = vec![MultiPoly::zero(); m.rank()];
    for ((g, n), k) in c.iter() {
        let v = module_action_n(m, &x.parent.gens()[*g], *n, u)?;
        for (o, p) in out.iter_mut().zip(&v) {
            *o = &*o + &p.scale(k);
        }
    }
    Ok(out)
}

/// The correspondence between λ-actions and mode actions: every `g_λ v_j` is
/// rebuilt from its modes, and `[a_(m), b_(n)]` acts as the commutator of the
/// mode operators on each `v_j` for every in-depth pair.
pub fn check_correspondence(x: &AnnihAlgebra, m: &ConformalModule) -> Result<Report> {
    let alg: &ConformalAlgebra = &x.parent;
    let mut report = Report::new(format!("mode correspondence of {} over {}", m.name, alg.name()));
    for g in alg.gens() {
        for j in 0..m.rank() {
            let e = m.unit(j);
            let id = format!("reconstruct[{g};{}]", m.basis()[j]);
            let direct = m.act(g, &e, &MultiPoly::l())?;
            let rebuilt = reconstruct_action(m, g, &e)?;
            let defects: Vec<MultiPoly> = direct.iter().zip(&rebuilt).map(|(a, b)| a - b).collect();
            report.push(Check::from_defects(id, &defects));
        }
    }
    let syms = x.symbols();
    for &s in &syms {
        for &t in &syms {
            let id = format!("commutator[{}_({}),{}_({})]", alg.gens()[s.0], s.1, alg.gens()[t.0], t.1);
            let br = match x.bracket(s, t) {
                Ok(b) => b,
                Err(e) => {
                    report.push(Check::skipped(id, e.to_string()));
                    continue;
                }
            };
            let (gs, gt) = (&alg.gens()[s.0], &alg.gens()[t.0]);
            let mut defects = Vec::new();
            for j in 0..m.rank() {
                let e = m.unit(j);
                let st = module_action_n(m, gs, s.1, &module_action_n(m, gt, t.1, &e)?)?;
                let ts = module_action_n(m, gt, t.1, &module_action_n(m, gs, s.1, &e)?)?;
                let b = apply_combination(x, m, &br, &e)?;
                defects.extend(st.iter().zip(&ts).zip(&b).map(|((p, q), r)| &(p - q) - r));
            }
            report.push(Check::from_defects(id, &defects));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub weight: Scalar,
    /// Eigenvectors of `L_(1)` spanning the weight space inside the degree bound.
    pub basis: Vec<ModuleElement>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpaces {
    pub degree_bound: u32,
    /// Ordered by weight (real part, then imaginary part).
    pub weights: Vec<WeightReport>,
    /// False when `L_(1)` does not preserve the ∂-degree filtration or acts
    /// non-triangularly on a graded piece, in which case candidate weights read
    /// from diagonals may miss eigenvalues.
    pub complete: bool,
}

impl WeightSpaces {
    pub fn get(&self, w: &Scalar) -> Option<&WeightReport> {
        self.weights.iter().find(|r| &r.weight == w)
    }
}

/// Eigenspaces of `L_(1)` on `{Σ u_j(∂) v_j : deg u_j ≤ D}`.
pub fn weight_spaces(m: &ConformalModule, l_label: &str, degree_bound: u32) -> Result<WeightSpaces> {
    let r = m.rank();
    let dim = r * (degree_bound as usize + 1);
    let col = |j: usize, k: u32| j * (degree_bound as usize + 1) + k as usize;
    // images of the monomial basis ∂^k v_j, possibly leaving the bound
    let mut images = Vec::with_capacity(dim);
    let mut top = degree_bound;
    for j in 0..r {
        for k in 0..=degree_bound {
            let mut u = vec![MultiPoly::zero(); r];
            u[j] = MultiPoly::d().pow(k);
            let img = module_action_n(m, l_label, 1, &u)?;
            for p in &img {
                if let Some(e) = p.degree_in(Var::Partial).finite() {
                    top = top.max(e);
                }
            }
            images.push(img);
        }
    }
    let rows_per = top as usize + 1;
    let row = |i: usize, e: u32| i * rows_per + e as usize;
    let mut t = Matrix::zeros(r * rows_per, dim);
    let mut complete = top == degree_bound;
    for j in 0..r {
        for k in 0..=degree_bound {
            for (i, p) in images[col(j, k)].iter().enumerate() {
                for (mono, c) in p.terms() {
                    let e = mono.exp(Var::Partial);
                    t.set(row(i, e), col(j, k), c.clone());
                    if e > k {
                        complete = false;
                    }
                }
            }
        }
    }
    // candidates from the diagonals of the graded pieces
    let mut candidates: Vec<Scalar> = Vec::new();
    for k in 0..=degree_bound {
        let piece = |i: usize, j: usize| t.get(row(i, k), col(j, k)).is_zero();
        let upper = (0..r).all(|i| (0..i).all(|j| piece(i, j)));
        let lower = (0..r).all(|i| (i + 1..r).all(|j| piece(i, j)));
        complete &= upper || lower;
        for i in 0..r {
            let x = t.get(row(i, k), col(i, k)).clone();
            if !candidates.contains(&x) {
                candidates.push(x);
            }
        }
    }
    candidates.sort_by(|a, b| a.lex_cmp(b));
    let mut weights = Vec::new();
    for w in candidates {
        let mut a = t.clone();
        for j in 0..r {
            for k in 0..=degree_bound {
                let v = a.get(row(j, k), col(j, k)) - &w;
                a.set(row(j, k), col(j, k), v);
            }
        }
        let basis: Vec<ModuleElement> = a
            .nullspace()
            .into_iter()
            .map(|v| {
                (0..r)
                    .map(|j| (0..=degree_bound).map(|k| MultiPoly::d().pow(k).scale(&v[col(j, k)])).sum::<MultiPoly>())
                    .collect()
            })
            .collect();
        if !basis.is_empty() {
            weights.push(WeightReport { weight: w, dim: basis.len(), basis });
        }
    }
    Ok(WeightSpaces { degree_bound, weights, complete })
}

/// True if `u` is a nonzero scalar multiple of `v`.
pub fn proportional(u: &[MultiPoly], v: &[MultiPoly]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(k) = v.iter().position(|p| !p.is_zero()) else {
        return false;
    };
    let (mono, c) = v[k].terms().next().unwrap();
    let ratio = &u[k].coeff(mono) / c;
    !ratio.is_zero() && u.iter().zip(v).all(|(a, b)| *a == b.scale(&ratio))
}

/// `(∂ + b)^k` on the single basis vector of a rank one module.
pub fn expected_rank_one_vector(b: &Scalar, k: u32) -> ModuleElement {
    vec![(&MultiPoly::d() + &MultiPoly::constant(b.clone())).pow(k)]
}
