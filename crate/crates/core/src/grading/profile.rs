//! ℤ⁺-graded tables with one generator `L_i` per grade: the `I₀`/`I₁` split,
//! `b_i = i·b₁`, and the degree profile.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::conformal::ConformalAlgebra;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, MultiPoly, Scalar, Var};
use crate::report::{Check, Report};

/// A graded algebra read as `[L_i λ L_j] = p_{i,j}(∂,λ) L_{i+j}`, with `L_0`
/// rescaled so that `[L_0 λ L_0] = (∂+2λ)L_0`.
#[derive(Clone, Debug)]
pub struct GradedTable {
    pub name: String,
    /// Highest grade with a generator.
    pub top: u32,
    /// Brackets with `i + j` past this grade are unknown.
    pub truncation: u32,
    /// `κ` in `p_{0,0} = κ(∂+2λ)` before rescaling.
    pub kappa: Scalar,
    entries: BTreeMap<(u32, u32), MultiPoly>,
}

impl GradedTable {
    pub fn from_algebra(alg: &ConformalAlgebra) -> Result<Self> {
        let gr = alg.grading().ok_or_else(|| Error::InvalidStructure(format!("{} carries no grading", alg.name())))?;
        let top = gr.grades.iter().copied().max().unwrap_or(0);
        let mut index = Vec::with_capacity(top as usize + 1);
        for g in 0..=top {
            index.push(alg.gen_of_grade(g).ok_or_else(|| {
                Error::InvalidStructure(format!("{} needs exactly one generator of grade {g}", alg.name()))
            })?);
        }
        let truncation = gr.truncation.unwrap_or(top).min(top);
        let mut entries = BTreeMap::new();
        for i in 0..=truncation {
            for j in 0..=truncation - i {
                let v = alg.entry(index[i as usize], index[j as usize])?;
                let target = index[(i + j) as usize];
                if v.support().any(|k| k != target) {
                    return Err(Error::InvalidStructure(format!(
                        "[{}_λ {}] leaves grade {}",
                        alg.gens()[index[i as usize]],
                        alg.gens()[index[j as usize]],
                        i + j
                    )));
                }
                entries.insert((i, j), v.get(target));
            }
        }
        let p00 = entries[&(0, 0)].clone();
        let kappa = p00.coeff(&Monomial::dl(1, 0));
        let vir = &MultiPoly::d() + &MultiPoly::l().scale(&Scalar::from_int(2));
        if kappa.is_zero() || p00 != vir.scale(&kappa) {
            return Err(Error::NotVirasoroAtZero(p00.to_string()));
        }
        let inv = kappa.inv().expect("nonzero");
        for ((i, j), p) in entries.iter_mut() {
            let e = (*i == 0) as i32 + (*j == 0) as i32 - (*i + *j == 0) as i32;
            if e == 1 {
                *p = p.scale(&inv);
            }
        }
        Ok(GradedTable { name: alg.name().to_string(), top, truncation, kappa, entries })
    }

    /// `p_{i,j}`, or `None` beyond the truncation.
    pub fn get(&self, i: u32, j: u32) -> Option<&MultiPoly> {
        self.entries.get(&(i, j))
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((u32, u32), &MultiPoly)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Grades `i ≤ truncation` with `p_{0,i} ≠ 0`, and the rest.
    pub fn split(&self) -> (Vec<u32>, Vec<u32>) {
        (0..=self.truncation).partition(|&i| !self.entries[&(0, i)].is_zero())
    }
}

/// `(a, b)` with `p = ∂ + aλ + b`, if `p` has that form.
pub fn read_affine(p: &MultiPoly) -> Option<(Scalar, Scalar)> {
    let a = p.coeff(&Monomial::dl(0, 1));
    let b = p.coeff(&Monomial::dl(0, 0));
    (*p == MultiPoly::affine(&a, &b)).then_some((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegChoice {
    ZeroBracket,
    Degree { lambda: u32, total: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedProfile {
    pub a_seq: BTreeMap<u32, Scalar>,
    pub b_seq: BTreeMap<u32, Scalar>,
    pub deg_choices: BTreeMap<(u32, u32), DegChoice>,
    pub truncation: u32,
}

impl GradedProfile {
    /// The recursion `a_{j+1} = a₁ + a_j − 1 − deg_λ p_{1,j}` for nonzero
    /// `p_{1,j}`, and `deg_λ p_{i,j} = a_i + a_j − a_{i+j} − 1` for every
    /// nonzero bracket among grades that have an `a`.
    pub fn validate(&self) -> Report {
        let mut r = Report::new("graded profile relations");
        let one = Scalar::from_int(1);
        for (&(i, j), d) in &self.deg_choices {
            let DegChoice::Degree { lambda, .. } = *d else { continue };
            let (Some(ai), Some(aj), Some(aij)) = (self.a_seq.get(&i), self.a_seq.get(&j), self.a_seq.get(&(i + j)))
            else {
                r.push(Check::skipped(format!("degree[{i},{j}]"), "grade outside I0"));
                continue;
            };
            let rhs = &(&(ai + aj) - aij) - &one;
            let lhs = Scalar::from_int(lambda as i64);
            if i == 1 {
                let id = format!("recursion[1,{j}]");
                let next = &(&(ai + aj) - &one) - &lhs;
                r.push(if &next == aij {
                    Check::pass(id)
                } else {
                    Check::fail(id, vec![format!("a_{} = {aij}, recursion gives {next}", i + j)])
                });
            }
            let id = format!("degree[{i},{j}]");
            r.push(if lhs == rhs {
                Check::pass(id)
            } else {
                Check::fail(id, vec![format!("deg_λ = {lambda}, a_i + a_j − a_(i+j) − 1 = {rhs}")])
            });
        }
        r
    }
}

/// Extracts `(a_i, b_i)` from `p_{0,i} = ∂ + a_iλ + b_i` (after rescaling `L_0`)
/// and the degree of every bracket within the truncation.
pub fn profile_from_table(alg: &ConformalAlgebra) -> Result<GradedProfile> {
    profile_of(&GradedTable::from_algebra(alg)?)
}

pub fn profile_of(t: &GradedTable) -> Result<GradedProfile> {
    let mut a_seq = BTreeMap::new();
    let mut b_seq = BTreeMap::new();
    for i in 0..=t.truncation {
        let p = &t.entries[&(0, i)];
        if p.is_zero() {
            continue;
        }
        let (a, b) =
            read_affine(p).ok_or_else(|| Error::MalformedBracket { index: i as usize, poly: p.to_string() })?;
        a_seq.insert(i, a);
        b_seq.insert(i, b);
    }
    let deg_choices = t
        .entries
        .iter()
        .map(|(&k, p)| {
            let d = match (p.degree_in(Var::Lambda).finite(), p.total_degree().finite()) {
                (Some(lambda), Some(total)) => DegChoice::Degree { lambda, total },
                _ => DegChoice::ZeroBracket,
            };
            (k, d)
        })
        .collect();
    Ok(GradedProfile { a_seq, b_seq, deg_choices, truncation: t.truncation })
}

/// The index sets `I₀ = {i : p_{0,i} ≠ 0}` and `I₁`, with checks that
/// `[𝒢₀ λ 𝒢₁] = 0`, that `I₀` is closed under nonzero brackets and that `𝒢₁`
/// is a subalgebra, all within the truncation.
pub fn split_i0_i1(alg: &ConformalAlgebra) -> Result<(Vec<u32>, Vec<u32>, Report)> {
    let t = GradedTable::from_algebra(alg)?;
    let (i0, i1) = t.split();
    let mut r = Report::new(format!("I0/I1 split of {}", t.name));
    let d_plus_l = &MultiPoly::d() + &MultiPoly::l();
    let l_plus_m = &MultiPoly::l() + &MultiPoly::m();
    for ((i, j), p) in t.pairs() {
        if i == 0 || j == 0 {
            continue;
        }
        let (in0, jn0) = (i0.contains(&i), i0.contains(&j));
        let s = i + j;
        if in0 != jn0 {
            let id = format!("decoupled[{i},{j}]");
            if p.is_zero() {
                r.push(Check::pass(id));
                continue;
            }
            // p_{i,j}(∂+λ,μ)[L_0 λ L_{i+j}] − (−λ−μ+a_iλ+b_i) p_{i,j}(∂,λ+μ)
            // with i the I₀ index; it cannot vanish for nonzero p_{i,j}.
            let k = if in0 { i } else { j };
            let q = if in0 { p.clone() } else { t.entries[&(j, i)].clone() };
            let (ak, bk) = read_affine(&t.entries[&(0, k)]).unwrap_or_else(|| (Scalar::zero(), Scalar::zero()));
            let factor = MultiPoly::from_terms([
                (&ak - &Scalar::from_int(1), Monomial::dl(0, 1)),
                (Scalar::from_int(-1), Monomial::var(Var::Mu, 1)),
                (bk, Monomial::one()),
            ]);
            let lhs = &q.at_dl(&d_plus_l, &MultiPoly::m()) * &t.entries[&(0, s)];
            let defect = &lhs - &(&factor * &q.substitute(Var::Lambda, &l_plus_m));
            r.push(Check::fail(id, vec![p.to_string(), defect.to_string()]));
        } else if !p.is_zero() {
            let (id, ok) = if in0 {
                (format!("closed[{i},{j}]"), i0.contains(&s))
            } else {
                (format!("subalgebra[{i},{j}]"), i1.contains(&s))
            };
            r.push(if ok { Check::pass(id) } else { Check::fail(id, vec![p.to_string()]) });
        }
    }
    Ok((i0, i1, r))
}

/// `b_i = i·b₁` for every grade in range, under the standing hypothesis
/// `[L_1 λ L_i] ≠ 0` for all `i`.
pub fn check_b_linear(alg: &ConformalAlgebra) -> Result<Report> {
    let t = GradedTable::from_algebra(alg)?;
    if t.truncation == 0 {
        return Err(Error::HypothesisViolated("no grade-1 generator within the truncation".into()));
    }
    for i in 0..t.truncation {
        if t.entries[&(1, i)].is_zero() {
            return Err(Error::HypothesisViolated(format!("[L_1 λ L_{i}] = 0")));
        }
    }
    let profile = profile_of(&t)?;
    let mut r = Report::new(format!("b_i = i b_1 on {}", t.name));
    let b1 = profile.b_seq.get(&1).cloned().ok_or_else(|| Error::HypothesisViolated("[L_0 λ L_1] = 0".into()))?;
    for i in 0..=t.truncation {
        let id = format!("b-linear[{i}]");
        let want = &b1 * &Scalar::from_int(i as i64);
        r.push(match profile.b_seq.get(&i) {
            None => Check::fail(id, vec![format!("[L_0 λ L_{i}] = 0")]),
            Some(b) if *b == want => Check::pass(id),
            Some(b) => Check::fail(id, vec![format!("b_{i} = {b}, {i}·b_1 = {want}")]),
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::builtins::{self, CommAlgebra};
    use crate::exactpoly::parse_poly;
    use crate::report::Status;

    fn graded(name: &str, brackets: &[(usize, usize, &str)], n: usize) -> ConformalAlgebra {
        let gens = (0..n).map(|i| format!("L{i}")).collect();
        let mut b = ConformalAlgebra::builder(name, gens).grades((0..n as u32).collect(), Some(n as u32 - 1));
        for &(i, j, p) in brackets {
            b = b.bracket_to(i, j, parse_poly(p).unwrap(), i + j);
        }
        b.fill_by_skew().build().unwrap()
    }

    #[test]
    fn block_profile() {
        for (p, n) in [(Scalar::from_int(1), 8), (Scalar::from_int(2), 6), (Scalar::ratio(1, 2), 6)] {
            let alg = builtins::block(&p, n).unwrap();
            let prof = profile_from_table(&alg).unwrap();
            for i in 0..=n {
                let want = &(&Scalar::from_int(i as i64) + &(&p * &Scalar::from_int(2))) / &p;
                assert_eq!(prof.a_seq[&i], want);
                assert!(prof.b_seq[&i].is_zero());
            }
            let v = prof.validate();
            assert!(v.passed() && v.count(Status::Pass) > 0, "{v}");
        }
    }

    #[test]
    fn block_profile_matches_substitution() {
        // (1/2)·[L_0 λ L_3] for p = 2 is (∂ + (7/2)λ)
        let alg = builtins::block(&Scalar::from_int(2), 4).unwrap();
        let raw = alg.graded_poly(0, 3).unwrap().scale(&Scalar::ratio(1, 2));
        assert_eq!(raw, parse_poly("d + 7/2*l").unwrap());
        assert_eq!(profile_from_table(&alg).unwrap().a_seq[&3], Scalar::ratio(7, 2));
    }

    #[test]
    fn map_virasoro_profile() {
        let alg = builtins::map_virasoro(&CommAlgebra::polynomial_quotient(9), Some(8)).unwrap();
        let prof = profile_from_table(&alg).unwrap();
        assert!(prof.a_seq.values().all(|a| *a == Scalar::from_int(2)));
        for (&(i, j), d) in &prof.deg_choices {
            assert_eq!(*d, DegChoice::Degree { lambda: 1, total: 1 }, "({i},{j})");
        }
        assert!(prof.validate().passed());
    }

    #[test]
    fn malformed_bracket() {
        let alg = graded("bad", &[(0, 0, "d + 2*l"), (0, 1, "d^2")], 2);
        assert!(matches!(profile_from_table(&alg), Err(Error::MalformedBracket { index: 1, .. })));
    }

    #[test]
    fn split_on_block() {
        let (i0, i1, r) = split_i0_i1(&builtins::block(&Scalar::from_int(1), 8).unwrap()).unwrap();
        assert_eq!(i0, (0..=8).collect::<Vec<_>>());
        assert!(i1.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn split_decoupled_generator() {
        let alg = graded("decoupled", &[(0, 0, "d + 2*l")], 3);
        let (i0, i1, r) = split_i0_i1(&alg).unwrap();
        assert_eq!((i0, i1), (vec![0], vec![1, 2]));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn split_corrupted() {
        let alg = graded("corrupt", &[(0, 0, "d + 2*l"), (0, 1, "d + l"), (1, 2, "1")], 4);
        let (_, i1, r) = split_i0_i1(&alg).unwrap();
        assert!(i1.contains(&2));
        let c = r.checks.iter().find(|c| c.id == "decoupled[1,2]").unwrap();
        assert_eq!(c.status, Status::Fail);
        // p_{1,2} = 1 and [L_0 λ L_3] = 0 leave −(−μ + 0·λ) = μ
        assert_eq!(c.witnesses, vec!["1".to_string(), "m".to_string()]);
    }

    #[test]
    fn not_virasoro() {
        let alg = graded("bad", &[(0, 0, "d + 3*l")], 1);
        assert!(matches!(split_i0_i1(&alg), Err(Error::NotVirasoroAtZero(_))));
    }

    #[test]
    fn b_linear() {
        assert!(check_b_linear(&builtins::block(&Scalar::from_int(1), 6).unwrap()).unwrap().passed());
        let v = builtins::map_virasoro(&CommAlgebra::polynomial_quotient(9), Some(8)).unwrap();
        assert!(check_b_linear(&v).unwrap().passed());
        let bad = graded(
            "b2",
            &[
                (0, 0, "d + 2*l"),
                (0, 1, "d + 2*l + 1"),
                (0, 2, "d + 2*l + 3"),
                (1, 0, "d + 2*l - 1"),
                (1, 1, "d + 2*l"),
            ],
            3,
        );
        let r = check_b_linear(&bad).unwrap();
        assert_eq!(r.failures().map(|c| c.id.as_str()).collect::<Vec<_>>(), vec!["b-linear[2]"]);
    }

    #[test]
    fn b_linear_hypothesis() {
        let alg = graded("h", &[(0, 0, "d + 2*l"), (0, 1, "d + l")], 3);
        assert!(matches!(check_b_linear(&alg), Err(Error::HypothesisViolated(_))));
    }
}
