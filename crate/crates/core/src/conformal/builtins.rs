//! The algebras used throughout: Vir, Cur 𝔤, Vir ⋉ₐ Cur 𝔤, the Block type
//! family 𝓑(p) and map Virasoro algebras 𝒱(𝔸).

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{ConformalAlgebra, GenVec};
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, Scalar};

/// Structure constants of a finite-dimensional Lie algebra: `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTable {
    pub labels: Vec<String>,
    pub consts: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl LieTable {
    pub fn new(labels: Vec<String>) -> Self {
        LieTable { labels, consts: BTreeMap::new() }
    }

    /// Sets `[e_i, e_j]` and, antisymmetrically, `[e_j, e_i]`.
    pub fn set(&mut self, i: usize, j: usize, value: Vec<(usize, Scalar)>) {
        let neg = value.iter().map(|(k, c)| (*k, -c)).collect();
        self.consts.insert((i, j), value);
        self.consts.insert((j, i), neg);
    }

    pub fn bracket(&self, i: usize, j: usize) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (k, c) in self.consts.get(&(i, j)).into_iter().flatten() {
            let e = out.entry(*k).or_insert_with(Scalar::zero);
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Checks `[e_i, e_j] = −[e_j, e_i]`, including `[e_i, e_i] = 0`.
    pub fn validate_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for &(i, j) in self.consts.keys() {
            if i >= n || j >= n {
                return Err(Error::InvalidStructure(format!("structure constant ({i},{j}) out of range")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let a = self.bracket(i, j);
                let b = self.bracket(j, i);
                let ok = a.keys().chain(b.keys()).all(|k| {
                    let x = a.get(k).cloned().unwrap_or_else(Scalar::zero);
                    let y = b.get(k).cloned().unwrap_or_else(Scalar::zero);
                    (&x + &y).is_zero()
                });
                if !ok {
                    return Err(Error::InvalidStructure(format!(
                        "structure constants are not antisymmetric at ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// sl₂ in the basis e, h, f.
    pub fn sl2() -> Self {
        let mut t = LieTable::new(vec!["e".into(), "h".into(), "f".into()]);
        t.set(0, 2, vec![(1, Scalar::from_int(1))]);
        t.set(1, 0, vec![(0, Scalar::from_int(2))]);
        t.set(1, 2, vec![(2, Scalar::from_int(-2))]);
        t
    }

    /// The two-dimensional non-abelian Lie algebra `[x, y] = y`.
    pub fn two_dim_nonabelian() -> Self {
        let mut t = LieTable::new(vec!["x".into(), "y".into()]);
        t.set(0, 1, vec![(1, Scalar::from_int(1))]);
        t
    }

    pub fn abelian(labels: Vec<String>) -> Self {
        LieTable::new(labels)
    }
}

/// A commutative associative unital algebra on a finite basis, with optional grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    pub labels: Vec<String>,
    pub grades: Option<Vec<u32>>,
    pub mult: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    pub unit: usize,
}

impl CommAlgebra {
    /// ℂ[T]/(Tⁿ) on the basis 1, T, …, Tⁿ⁻¹, graded by the exponent.
    pub fn polynomial_quotient(n: u32) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "T".to_string(),
                _ => format!("T^{k}"),
            })
            .collect();
        let mut mult = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult.insert((i as usize, j as usize), vec![((i + j) as usize, Scalar::from_int(1))]);
                }
            }
        }
        CommAlgebra { labels, grades: Some((0..n).collect()), mult, unit: 0 }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (k, c) in self.mult.get(&(i, j)).into_iter().flatten() {
            let e = out.entry(*k).or_insert_with(Scalar::zero);
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn product_vec(&self, x: &BTreeMap<usize, Scalar>, j: usize) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in x {
            for (k, d) in self.product(*i, j) {
                let e = out.entry(k).or_insert_with(Scalar::zero);
                *e += &(c * &d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Commutativity, associativity and the unit, restricted to products whose
    /// grades stay within `bound` when one is given.
    pub fn validate(&self, bound: Option<u32>) -> Result<()> {
        let n = self.dim();
        let within = |idx: &[usize]| match (bound, &self.grades) {
            (Some(b), Some(g)) => idx.iter().map(|&k| g[k]).sum::<u32>() <= b,
            _ => true,
        };
        if self.unit >= n {
            return Err(Error::InvalidStructure("unit index out of range".into()));
        }
        for i in 0..n {
            let mut e = BTreeMap::new();
            e.insert(i, Scalar::from_int(1));
            if self.product(self.unit, i) != e || self.product(i, self.unit) != e {
                return Err(Error::InvalidStructure(format!(
                    "{} is not a unit for {}",
                    self.labels[self.unit], self.labels[i]
                )));
            }
            for j in 0..n {
                if within(&[i, j]) && self.product(i, j) != self.product(j, i) {
                    return Err(Error::InvalidStructure(format!(
                        "multiplication is not commutative at ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
                for k in 0..n {
                    if !within(&[i, j, k]) {
                        continue;
                    }
                    let left = self.product_vec(&self.product(i, j), k);
                    let right = self.product_vec(&self.product(j, k), i);
                    if left != right {
                        return Err(Error::InvalidStructure(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn affine(a: i64) -> MultiPoly {
    MultiPoly::affine(&Scalar::from_int(a), &Scalar::zero())
}

/// Vir: `[L λ L] = (∂ + 2λ) L`.
pub fn virasoro() -> ConformalAlgebra {
    ConformalAlgebra::builder("Vir", vec!["L".into()])
        .bracket_to(0, 0, affine(2), 0)
        .build()
        .expect("Virasoro table is well formed")
}

fn lie_bracket_vec(g: &LieTable, i: usize, j: usize, offset: usize) -> GenVec {
    g.bracket(i, j).into_iter().map(|(k, c)| (k + offset, MultiPoly::constant(c))).collect()
}

/// Cur 𝔤: `[x λ y] = [x, y]`.
pub fn current(g: &LieTable) -> Result<ConformalAlgebra> {
    g.validate_antisymmetry()?;
    let mut b = ConformalAlgebra::builder("Cur g", g.labels.clone());
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            b = b.bracket(i, j, lie_bracket_vec(g, i, j, 0));
        }
    }
    b.build()
}

/// Vir ⋉ₐ Cur 𝔤: `[L λ x] = (∂ + aλ) x`; generator 0 is `L`.
pub fn vir_semidirect_current(a: &Scalar, g: &LieTable) -> Result<ConformalAlgebra> {
    g.validate_antisymmetry()?;
    let mut gens = vec!["L".to_string()];
    if g.labels.iter().any(|l| l == "L") {
        return Err(Error::DuplicateDefinition("L".into()));
    }
    gens.extend(g.labels.iter().cloned());
    let l_x = MultiPoly::affine(a, &Scalar::zero());
    // skew image −(∂ + a(−λ−∂)) = (a−1)∂ + aλ
    let x_l = &MultiPoly::d().scale(&(a - &Scalar::from_int(1))) + &MultiPoly::l().scale(a);
    let mut b = ConformalAlgebra::builder(format!("Vir x_{a} Cur g"), gens).bracket_to(0, 0, affine(2), 0);
    for i in 0..g.dim() {
        b = b.bracket_to(0, i + 1, l_x.clone(), i + 1).bracket_to(i + 1, 0, x_l.clone(), i + 1);
        for j in 0..g.dim() {
            b = b.bracket(i + 1, j + 1, lie_bracket_vec(g, i, j, 1));
        }
    }
    b.build()
}

/// 𝓑(p) truncated at grade `n`: `[L_i λ L_j] = ((i+p)∂ + (i+j+2p)λ) L_{i+j}`.
pub fn block(p: &Scalar, n: u32) -> Result<ConformalAlgebra> {
    if p.is_zero() {
        return Err(Error::InvalidParams("block algebra needs p ≠ 0".into()));
    }
    let gens = (0..=n).map(|i| format!("L{i}")).collect();
    let mut b = ConformalAlgebra::builder(format!("B({p})"), gens).grades((0..=n).collect(), Some(n));
    let two_p = p + p;
    for i in 0..=n {
        for j in 0..=n - i {
            let si = Scalar::from_int(i as i64);
            let sj = Scalar::from_int(j as i64);
            let poly = &MultiPoly::d().scale(&(&si + p)) + &MultiPoly::l().scale(&(&(&si + &sj) + &two_p));
            b = b.bracket_to(i as usize, j as usize, poly, (i + j) as usize);
        }
    }
    b.build()
}

/// 𝒱(𝔸): `[L_x λ L_y] = (∂ + 2λ) L_{xy}` on a basis of 𝔸.
///
/// With a truncation, 𝔸 must be graded and products past the bound are unknown
/// rather than zero, which models a finite window of an infinite 𝔸 such as ℂ[T].
pub fn map_virasoro(alg: &CommAlgebra, truncation: Option<u32>) -> Result<ConformalAlgebra> {
    if truncation.is_some() && alg.grades.is_none() {
        return Err(Error::InvalidStructure("a truncation needs a graded algebra".into()));
    }
    alg.validate(truncation)?;
    let gens: Vec<String> = alg.labels.iter().map(|x| format!("L_{x}")).collect();
    let mut b = ConformalAlgebra::builder("V(A)", gens);
    if let Some(g) = &alg.grades {
        b = b.grades(g.clone(), truncation);
    }
    let vir = affine(2);
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            if let (Some(t), Some(g)) = (truncation, &alg.grades) {
                if g[i] + g[j] > t {
                    continue;
                }
            }
            let v: GenVec = alg.product(i, j).into_iter().map(|(k, c)| (k, vir.scale(&c))).collect();
            b = b.bracket(i, j, v);
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Var};

    #[test]
    fn block_normalised_l0_is_virasoro() {
        // [(1/p)L0 λ (1/p)L0] = (∂+2λ)(1/p)L0
        let p = Scalar::ratio(1, 2);
        let b = block(&p, 3).unwrap();
        let p00 = b.graded_poly(0, 0).unwrap();
        let inv = p.inv().unwrap();
        assert_eq!(p00.scale(&inv), parse_poly("d + 2*l").unwrap());
    }

    #[test]
    fn map_virasoro_two_generators() {
        let v = map_virasoro(&CommAlgebra::polynomial_quotient(2), None).unwrap();
        assert_eq!(v.rank(), 2);
        let vir = parse_poly("d + 2*l").unwrap();
        assert_eq!(v.graded_poly(0, 1).unwrap(), vir);
        assert_eq!(v.graded_poly(1, 0).unwrap(), vir);
        assert_eq!(v.graded_poly(0, 0).unwrap(), vir);
        assert!(v.graded_poly(1, 1).unwrap().is_zero());
    }

    #[test]
    fn current_sl2_is_lambda_free() {
        let c = current(&LieTable::sl2()).unwrap();
        for (_, v) in c.entries() {
            for (_, p) in v.iter() {
                assert!(!p.uses(Var::Lambda));
                assert!(!p.uses(Var::Partial));
            }
        }
    }

    #[test]
    fn rejects_non_antisymmetric_constants() {
        let mut t = LieTable::new(vec!["x".into(), "y".into()]);
        t.consts.insert((0, 1), vec![(1, Scalar::from_int(1))]);
        assert!(matches!(current(&t), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn rejects_zero_p() {
        assert!(block(&Scalar::zero(), 4).is_err());
    }

    #[test]
    fn rejects_noncommutative_multiplication() {
        let mut a = CommAlgebra::polynomial_quotient(3);
        a.mult.insert((1, 2), vec![(2, Scalar::from_int(1))]);
        assert!(map_virasoro(&a, None).is_err());
    }
}
