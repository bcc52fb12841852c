//! Finite free conformal modules given by action matrices.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::conformal::{AlgebraElement, ConformalAlgebra, GenVec};
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, Scalar, Var};
use crate::report::{Check, Report};

/// Coordinates of a module element on the basis; entries are polynomials in ∂
/// (and, for intermediate results, in the spectral variables).
pub type ModuleElement = Vec<MultiPoly>;

/// `(actions[g])[k][j]` is the coefficient of `v_k` in `g_λ v_j`.
pub type ActionMatrix = Vec<Vec<MultiPoly>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalModule {
    pub name: String,
    basis: Vec<String>,
    actions: BTreeMap<String, ActionMatrix>,
}

impl ConformalModule {
    pub fn new(name: impl Into<String>, basis: Vec<String>, actions: BTreeMap<String, ActionMatrix>) -> Result<Self> {
        let m = basis.len();
        if m == 0 {
            return Err(Error::InvalidStructure("module has an empty basis".into()));
        }
        for (a, b) in basis.iter().enumerate() {
            if basis[..a].contains(b) {
                return Err(Error::DuplicateDefinition(b.clone()));
            }
        }
        for (g, mat) in &actions {
            if mat.len() != m || mat.iter().any(|r| r.len() != m) {
                return Err(Error::InvalidStructure(format!("action of {g} is not {m}x{m}")));
            }
            for p in mat.iter().flatten() {
                if !p.only_uses(&[Var::Partial, Var::Lambda]) {
                    return Err(Error::InvalidStructure(format!("action of {g} has entry {p} outside ∂, λ")));
                }
            }
        }
        Ok(ConformalModule { name: name.into(), basis, actions })
    }

    /// Rank one module with `g_λ v = p_g(∂,λ) v`.
    pub fn rank_one(name: impl Into<String>, actions: impl IntoIterator<Item = (String, MultiPoly)>) -> Result<Self> {
        let actions = actions.into_iter().map(|(g, p)| (g, vec![vec![p]])).collect();
        ConformalModule::new(name, vec!["v".into()], actions)
    }

    /// Every generator of `alg` acts by zero on `m` basis vectors.
    pub fn trivial(alg: &ConformalAlgebra, m: usize) -> Self {
        let zero = vec![vec![MultiPoly::zero(); m]; m];
        let actions = alg.gens().iter().map(|g| (g.clone(), zero.clone())).collect();
        let basis = (1..=m).map(|k| format!("v{k}")).collect();
        ConformalModule { name: "trivial".into(), basis, actions }
    }

    /// Block-diagonal sum; both summands must act by the same generators.
    pub fn direct_sum(&self, other: &ConformalModule) -> Result<Self> {
        if self.actions.keys().ne(other.actions.keys()) {
            return Err(Error::InvalidStructure("summands act by different generators".into()));
        }
        let (m1, m2) = (self.rank(), other.rank());
        let mut basis: Vec<String> = self.basis.iter().map(|b| format!("{b}.1")).collect();
        basis.extend(other.basis.iter().map(|b| format!("{b}.2")));
        let mut actions = BTreeMap::new();
        for (g, a) in &self.actions {
            let b = &other.actions[g];
            let mut mat = vec![vec![MultiPoly::zero(); m1 + m2]; m1 + m2];
            for k in 0..m1 {
                for j in 0..m1 {
                    mat[k][j] = a[k][j].clone();
                }
            }
            for k in 0..m2 {
                for j in 0..m2 {
                    mat[m1 + k][m1 + j] = b[k][j].clone();
                }
            }
            actions.insert(g.clone(), mat);
        }
        ConformalModule::new(format!("{} + {}", self.name, other.name), basis, actions)
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn actions(&self) -> &BTreeMap<String, ActionMatrix> {
        &self.actions
    }

    pub fn action(&self, g: &str) -> Result<&ActionMatrix> {
        self.actions.get(g).ok_or_else(|| Error::MissingAction(g.to_string()))
    }

    /// The basis vector `v_j`.
    pub fn unit(&self, j: usize) -> ModuleElement {
        (0..self.rank()).map(|k| if k == j { MultiPoly::one() } else { MultiPoly::zero() }).collect()
    }

    /// `g_x u`, where `x` is the spectral argument (λ, μ, λ+μ, ...):
    /// `g_x (u_j(∂) v_j) = u_j(∂+x) · A_{kj}(∂, x) v_k`.
    pub fn act(&self, g: &str, u: &[MultiPoly], x: &MultiPoly) -> Result<ModuleElement> {
        let a = self.action(g)?;
        let d_plus_x = &MultiPoly::d() + x;
        let mut out = vec![MultiPoly::zero(); self.rank()];
        for (j, uj) in u.iter().enumerate() {
            if uj.is_zero() {
                continue;
            }
            let shifted = uj.substitute(Var::Partial, &d_plus_x);
            for (k, row) in a.iter().enumerate() {
                if row[j].is_zero() {
                    continue;
                }
                let akj = row[j].substitute(Var::Lambda, x);
                out[k] = &out[k] + &(&shifted * &akj);
            }
        }
        Ok(out)
    }

    /// `x_ν u` for `x = Σ f_i(∂) g_i`, using `(f(∂)g)_ν u = f(−ν) g_ν u`.
    pub fn act_element(
        &self,
        alg: &ConformalAlgebra,
        x: &GenVec,
        u: &[MultiPoly],
        nu: &MultiPoly,
    ) -> Result<ModuleElement> {
        let minus_nu = -nu;
        let mut out = vec![MultiPoly::zero(); self.rank()];
        for (i, f) in x.iter() {
            let c = f.substitute(Var::Partial, &minus_nu);
            let v = self.act(&alg.gens()[i], u, nu)?;
            add_scaled(&mut out, &v, &c);
        }
        Ok(out)
    }
}

fn add_scaled(acc: &mut [MultiPoly], v: &[MultiPoly], c: &MultiPoly) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a + &(b * c);
    }
}

fn sub_elems(a: &[MultiPoly], b: &[MultiPoly]) -> ModuleElement {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Defect of `a_λ(b_μ v_j) − b_μ(a_λ v_j) − [a_λ b]_{λ+μ} v_j` on basis vector `j`.
pub fn module_defect(
    alg: &ConformalAlgebra,
    m: &ConformalModule,
    a: usize,
    b: usize,
    j: usize,
) -> Result<ModuleElement> {
    let (l, mu) = (MultiPoly::l(), MultiPoly::m());
    let ga = &alg.gens()[a];
    let gb = &alg.gens()[b];
    let e = m.unit(j);
    let left = m.act(ga, &m.act(gb, &e, &mu)?, &l)?;
    let right = m.act(gb, &m.act(ga, &e, &l)?, &mu)?;
    let br = bracket_action(alg, m, alg.entry(a, b)?, &e)?;
    Ok(sub_elems(&sub_elems(&left, &right), &br))
}

/// `[a_λ b]_{λ+μ} u` given the bracket as polynomials in ∂, λ.
fn bracket_action(alg: &ConformalAlgebra, m: &ConformalModule, br: &GenVec, u: &[MultiPoly]) -> Result<ModuleElement> {
    let l = MultiPoly::l();
    let l_plus_m = &l + &MultiPoly::m();
    let minus = -&l_plus_m;
    let mut out = vec![MultiPoly::zero(); m.rank()];
    for (t, p) in br.iter() {
        let c = p.at_dl(&minus, &l);
        let v = m.act(&alg.gens()[t], u, &l_plus_m)?;
        add_scaled(&mut out, &v, &c);
    }
    Ok(out)
}

fn witnesses(m: &ConformalModule, defect: &[MultiPoly]) -> Vec<String> {
    defect.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(k, p)| format!("{} on {}", p, m.basis[k])).collect()
}

/// Verifies the module axiom on every generator pair and basis vector, then
/// spot-checks sesquilinearity and the axiom on seeded random elements.
pub fn check_module(alg: &ConformalAlgebra, m: &ConformalModule) -> Result<Report> {
    for g in alg.gens() {
        m.action(g)?;
    }
    let n = alg.rank();
    let cells: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..m.rank()).map(move |j| (a, b, j)))).collect();
    let g = alg.gens();
    let checks: Vec<Check> = cells
        .par_iter()
        .map(|&(a, b, j)| {
            let id = format!("module[{},{};{}]", g[a], g[b], m.basis[j]);
            match module_defect(alg, m, a, b, j) {
                Err(Error::TruncationExceeded(..)) => Check::skipped(id, "bracket beyond truncation"),
                Err(e) => Check::fail(id, vec![e.to_string()]),
                Ok(d) => {
                    let w = witnesses(m, &d);
                    if w.is_empty() {
                        Check::pass(id)
                    } else {
                        Check::fail(id, w)
                    }
                }
            }
        })
        .collect();
    let mut report = Report::new(format!("module axioms of {} over {}", m.name, alg.name()));
    report.checks = checks;
    report.checks.extend(spot_checks(alg, m, 0x5eed, 8)?);
    Ok(report)
}

fn random_dpoly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let deg = rng.gen_range(0..=2u32);
    (0..=deg).map(|e| MultiPoly::d().pow(e).scale(&Scalar::from_int(rng.gen_range(-3..=3)))).sum()
}

fn random_genvec(rng: &mut ChaCha8Rng, gens: &[usize]) -> GenVec {
    let mut v = GenVec::zero();
    for &g in gens {
        if rng.gen_bool(0.6) {
            v.add_at(g, &random_dpoly(rng));
        }
    }
    v
}

/// Random elements are drawn from pairs of generators whose bracket is in range.
fn spot_checks(alg: &ConformalAlgebra, m: &ConformalModule, seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, mu) = (MultiPoly::l(), MultiPoly::m());
    let pairs: Vec<(usize, usize)> = alg.entries().map(|(k, _)| k).collect();
    let mut out = Vec::new();
    for s in 0..samples {
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let x = random_genvec(&mut rng, &[a]);
        let y = random_genvec(&mut rng, &[b]);
        let u: ModuleElement = (0..m.rank()).map(|_| random_dpoly(&mut rng)).collect();

        // (∂x)_λ u = −λ x_λ u and x_λ (∂u) = (∂+λ) x_λ u
        let xl = m.act_element(alg, &x, &u, &l)?;
        let dx = x.mul_poly(&MultiPoly::d());
        let lhs1 = m.act_element(alg, &dx, &u, &l)?;
        let rhs1: ModuleElement = xl.iter().map(|p| -&(p * &l)).collect();
        let du: ModuleElement = u.iter().map(|p| p * &MultiPoly::d()).collect();
        let lhs2 = m.act_element(alg, &x, &du, &l)?;
        let d_plus_l = &MultiPoly::d() + &l;
        let rhs2: ModuleElement = xl.iter().map(|p| p * &d_plus_l).collect();
        let mut defect = sub_elems(&lhs1, &rhs1);
        defect.extend(sub_elems(&lhs2, &rhs2));
        let w = witnesses_flat(&defect);
        out.push(if w.is_empty() {
            Check::pass(format!("sesqui[{s}]"))
        } else {
            Check::fail(format!("sesqui[{s}]"), w)
        });

        let id = format!("module-random[{s}]");
        let xe = AlgebraElement::from_genvec(x.clone())?;
        let ye = AlgebraElement::from_genvec(y.clone())?;
        match alg.bracket(&xe, &ye) {
            Err(_) => out.push(Check::skipped(id, "bracket beyond truncation")),
            Ok(br) => {
                let left = m.act_element(alg, &x, &m.act_element(alg, &y, &u, &mu)?, &l)?;
                let right = m.act_element(alg, &y, &m.act_element(alg, &x, &u, &l)?, &mu)?;
                let brv = bracket_action(alg, m, &br, &u)?;
                let w = witnesses_flat(&sub_elems(&sub_elems(&left, &right), &brv));
                out.push(if w.is_empty() { Check::pass(id) } else { Check::fail(id, w) });
            }
        }
    }
    Ok(out)
}

fn witnesses_flat(d: &[MultiPoly]) -> Vec<String> {
    d.iter().filter(|p| !p.is_zero()).map(|p| p.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::builtins;
    use crate::exactpoly::parse_poly;
    use crate::report::Status;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn vir_rank_one_passes() {
        let vir = builtins::virasoro();
        let m = ConformalModule::rank_one("M", [("L".to_string(), p("d + 3*l - 2"))]).unwrap();
        let r = check_module(&vir, &m).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn lambda_squared_action_fails() {
        // L_λ(L_μ v) − L_μ(L_λ v) = λ²μ² − μ²λ² = 0, while
        // [L_λ L]_{λ+μ} v = (−λ−μ+2λ)(λ+μ)² = (λ−μ)(λ+μ)²
        let vir = builtins::virasoro();
        let m = ConformalModule::rank_one("bad", [("L".to_string(), p("l^2"))]).unwrap();
        let r = check_module(&vir, &m).unwrap();
        assert!(!r.passed());
        let w = &r.failures().next().unwrap().witnesses[0];
        let expected = -&(&(&p("l") - &p("m")) * &p("(l+m)^2"));
        assert_eq!(w, &format!("{} on v", expected));
    }

    #[test]
    fn trivial_module_passes() {
        let b = builtins::block(&Scalar::from_int(1), 4).unwrap();
        let r = check_module(&b, &ConformalModule::trivial(&b, 2)).unwrap();
        assert!(r.passed());
        assert!(r.count(Status::Skipped) > 0);
    }

    #[test]
    fn missing_action_is_an_error() {
        let vir = builtins::virasoro();
        let m = ConformalModule::rank_one("M", [("X".to_string(), p("d"))]).unwrap();
        assert_eq!(check_module(&vir, &m), Err(Error::MissingAction("L".into())));
    }

    #[test]
    fn rejects_mu_in_entries() {
        assert!(ConformalModule::rank_one("M", [("L".to_string(), p("m"))]).is_err());
    }
}
