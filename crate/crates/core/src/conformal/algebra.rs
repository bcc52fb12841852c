use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{factorial, MultiPoly, Scalar, Var};

/// A generator-indexed vector of polynomials, `Σ_k p_k g_k`. Zero components are not stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct GenVec(BTreeMap<usize, MultiPoly>);

impl GenVec {
    pub fn zero() -> Self {
        GenVec(BTreeMap::new())
    }

    pub fn single(g: usize, p: MultiPoly) -> Self {
        let mut v = GenVec::zero();
        v.add_at(g, &p);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, g: usize) -> MultiPoly {
        self.0.get(&g).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &MultiPoly)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_at(&mut self, g: usize, p: &MultiPoly) {
        if p.is_zero() {
            return;
        }
        let sum = &self.get(g) + p;
        if sum.is_zero() {
            self.0.remove(&g);
        } else {
            self.0.insert(g, sum);
        }
    }

    pub fn add(&self, other: &GenVec) -> GenVec {
        let mut out = self.clone();
        for (g, p) in other.iter() {
            out.add_at(g, p);
        }
        out
    }

    pub fn sub(&self, other: &GenVec) -> GenVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GenVec {
        self.map(|p| -p)
    }

    /// Multiplies every component by the polynomial `f`.
    pub fn mul_poly(&self, f: &MultiPoly) -> GenVec {
        self.map(|p| p * f)
    }

    pub fn scale(&self, c: &Scalar) -> GenVec {
        self.map(|p| p.scale(c))
    }

    /// Applies `f` to each component, dropping components that become zero.
    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> GenVec {
        GenVec(self.0.iter().map(|(k, p)| (*k, f(p))).filter(|(_, p)| !p.is_zero()).collect())
    }

    /// Renders with generator labels, e.g. `(d + 2*l)·L`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.iter()
            .map(|(g, p)| format!("({p})·{}", labels.get(g).map_or("?", |s| s.as_str())))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for GenVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl FromIterator<(usize, MultiPoly)> for GenVec {
    fn from_iter<I: IntoIterator<Item = (usize, MultiPoly)>>(iter: I) -> Self {
        let mut v = GenVec::zero();
        for (g, p) in iter {
            v.add_at(g, &p);
        }
        v
    }
}

/// An element `Σ f_i(∂) g_i` of the free ℂ[∂]-module on the generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement(GenVec);

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement(GenVec::zero())
    }

    pub fn generator(g: usize) -> Self {
        AlgebraElement(GenVec::single(g, MultiPoly::one()))
    }

    /// `f(∂) g`. Panics if `f` uses a variable other than ∂.
    pub fn with_coeff(g: usize, f: MultiPoly) -> Self {
        assert!(f.only_uses(&[Var::Partial]), "algebra element coordinates are ∂-polynomials");
        AlgebraElement(GenVec::single(g, f))
    }

    pub fn from_genvec(v: GenVec) -> Result<Self> {
        if v.iter().all(|(_, p)| p.only_uses(&[Var::Partial])) {
            Ok(AlgebraElement(v))
        } else {
            Err(Error::InvalidParams("algebra element coordinates must be ∂-polynomials".into()))
        }
    }

    pub fn coords(&self) -> &GenVec {
        &self.0
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0.add(&other.0))
    }

    /// `∂ · x`.
    pub fn derivative(&self) -> AlgebraElement {
        AlgebraElement(self.0.mul_poly(&MultiPoly::d()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// ℤ⁺-grading metadata: one grade per generator plus an optional truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub grades: Vec<u32>,
    /// Brackets between generators whose grades sum past this bound are unknown.
    pub truncation: Option<u32>,
}

/// A Lie conformal algebra presented by its λ-brackets on a ℂ[∂]-basis:
/// `[g_i λ g_j] = Σ_k p_{i,j,k}(∂,λ) g_k`.
///
/// Every ordered pair within the truncation has a stored entry (possibly zero);
/// pairs beyond it are absent and any evaluation touching them reports
/// [`Error::TruncationExceeded`].
#[derive(Clone, Debug)]
pub struct ConformalAlgebra {
    name: String,
    gens: Vec<String>,
    table: BTreeMap<(usize, usize), GenVec>,
    grading: Option<Grading>,
}

impl ConformalAlgebra {
    pub fn builder(name: impl Into<String>, gens: Vec<String>) -> AlgebraBuilder {
        AlgebraBuilder { name: name.into(), gens, entries: BTreeMap::new(), grading: None, fill_by_skew: false }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == label)
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn grade(&self, g: usize) -> Option<u32> {
        self.grading.as_ref().map(|gr| gr.grades[g])
    }

    pub fn truncation(&self) -> Option<u32> {
        self.grading.as_ref().and_then(|g| g.truncation)
    }

    /// The unique generator of the given grade, if there is exactly one.
    pub fn gen_of_grade(&self, grade: u32) -> Option<usize> {
        let gr = self.grading.as_ref()?;
        let mut it = gr.grades.iter().enumerate().filter(|(_, &g)| g == grade);
        let first = it.next()?.0;
        it.next().is_none().then_some(first)
    }

    /// True if the pair lies inside the truncation (so its entry is known).
    pub fn in_range(&self, i: usize, j: usize) -> bool {
        self.table.contains_key(&(i, j))
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<&GenVec> {
        self.table.get(&(i, j)).ok_or_else(|| Error::TruncationExceeded(self.gens[i].clone(), self.gens[j].clone()))
    }

    /// All stored entries in (i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &GenVec)> {
        self.table.iter().map(|(k, v)| (*k, v))
    }

    /// For graded one-generator-per-grade tables: the scalar polynomial `p_{i,j}`
    /// on the target generator (zero if the entry is zero).
    pub fn graded_poly(&self, i: usize, j: usize) -> Result<MultiPoly> {
        let v = self.entry(i, j)?;
        let mut it = v.iter();
        match (it.next(), it.next()) {
            (None, _) => Ok(MultiPoly::zero()),
            (Some((_, p)), None) => Ok(p.clone()),
            _ => Err(Error::InvalidStructure(format!(
                "[{}_λ {}] has more than one component",
                self.gens[i], self.gens[j]
            ))),
        }
    }

    /// `[x_λ y]` for elements of the free module, using
    /// `[f(∂)a_λ g(∂)b] = f(−λ) g(∂+λ) [a_λ b]`.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<GenVec> {
        let minus_l = -&MultiPoly::l();
        let d_plus_l = &MultiPoly::d() + &MultiPoly::l();
        let mut out = GenVec::zero();
        for (i, f) in x.coords().iter() {
            let f_shift = f.substitute(Var::Partial, &minus_l);
            for (j, g) in y.coords().iter() {
                let g_shift = g.substitute(Var::Partial, &d_plus_l);
                let factor = &f_shift * &g_shift;
                out = out.add(&self.entry(i, j)?.mul_poly(&factor));
            }
        }
        Ok(out)
    }

    /// The j-th product `x_(j) y = j! · [coefficient of λ^j in [x_λ y]]`.
    pub fn jth_product(&self, x: &AlgebraElement, y: &AlgebraElement, j: u32) -> Result<AlgebraElement> {
        let br = self.bracket(x, y)?;
        let fact = factorial(j);
        let v = br.map(|p| p.coeff_of(Var::Lambda, j).scale(&fact));
        AlgebraElement::from_genvec(v)
    }
}

pub struct AlgebraBuilder {
    name: String,
    gens: Vec<String>,
    entries: BTreeMap<(usize, usize), GenVec>,
    grading: Option<Grading>,
    fill_by_skew: bool,
}

impl AlgebraBuilder {
    pub fn grades(mut self, grades: Vec<u32>, truncation: Option<u32>) -> Self {
        self.grading = Some(Grading { grades, truncation });
        self
    }

    /// Sets `[g_i λ g_j]`. A later call for the same pair replaces the earlier one.
    pub fn bracket(mut self, i: usize, j: usize, value: GenVec) -> Self {
        self.entries.insert((i, j), value);
        self
    }

    /// `[g_i λ g_j] = p · g_k`.
    pub fn bracket_to(self, i: usize, j: usize, p: MultiPoly, k: usize) -> Self {
        self.bracket(i, j, GenVec::single(k, p))
    }

    /// Fills each pair `(j,i)` that was not given from `(i,j)` by skew-symmetry.
    pub fn fill_by_skew(mut self) -> Self {
        self.fill_by_skew = true;
        self
    }

    pub fn build(self) -> Result<ConformalAlgebra> {
        let n = self.gens.len();
        if n == 0 {
            return Err(Error::InvalidStructure("no generators".into()));
        }
        for (a, g) in self.gens.iter().enumerate() {
            if self.gens[..a].contains(g) {
                return Err(Error::DuplicateDefinition(g.clone()));
            }
        }
        if let Some(gr) = &self.grading {
            if gr.grades.len() != n {
                return Err(Error::InvalidStructure("one grade per generator required".into()));
            }
        }
        let grade_sum = |i: usize, j: usize| self.grading.as_ref().map(|g| g.grades[i] + g.grades[j]);
        let in_range = |i: usize, j: usize| match (&self.grading, grade_sum(i, j)) {
            (Some(Grading { truncation: Some(t), .. }), Some(s)) => s <= *t,
            _ => true,
        };

        let mut table = BTreeMap::new();
        for (&(i, j), v) in &self.entries {
            if i >= n || j >= n || v.support().any(|k| k >= n) {
                return Err(Error::InvalidStructure(format!("bracket ({i},{j}) references an unknown generator")));
            }
            if v.iter().any(|(_, p)| !p.only_uses(&[Var::Partial, Var::Lambda])) {
                return Err(Error::InvalidStructure(format!(
                    "bracket [{}_λ {}] may only involve ∂ and λ",
                    self.gens[i], self.gens[j]
                )));
            }
            if !in_range(i, j) {
                return Err(Error::InvalidStructure(format!(
                    "bracket [{}_λ {}] lies beyond the truncation",
                    self.gens[i], self.gens[j]
                )));
            }
            table.insert((i, j), v.clone());
        }
        if self.fill_by_skew {
            let given: Vec<_> = table.iter().map(|(k, v)| (*k, v.clone())).collect();
            let skew_l = -&(&MultiPoly::l() + &MultiPoly::d());
            for ((i, j), v) in given {
                table.entry((j, i)).or_insert_with(|| v.map(|p| -&p.substitute(Var::Lambda, &skew_l)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if in_range(i, j) {
                    table.entry((i, j)).or_insert_with(GenVec::zero);
                }
            }
        }
        if let Some(gr) = &self.grading {
            for (&(i, j), v) in &table {
                let target = gr.grades[i] + gr.grades[j];
                if let Some(k) = v.support().find(|&k| gr.grades[k] != target) {
                    return Err(Error::InvalidStructure(format!(
                        "graded bracket [{}_λ {}] has a component on {} of the wrong grade",
                        self.gens[i], self.gens[j], self.gens[k]
                    )));
                }
            }
        }
        Ok(ConformalAlgebra { name: self.name, gens: self.gens, table, grading: self.grading })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::builtins;
    use crate::exactpoly::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn virasoro_brackets() {
        let vir = builtins::virasoro();
        let l = AlgebraElement::generator(0);
        assert_eq!(vir.bracket(&l, &l).unwrap(), GenVec::single(0, p("d + 2*l")));
        let dl = AlgebraElement::with_coeff(0, p("d"));
        assert_eq!(vir.bracket(&dl, &l).unwrap(), GenVec::single(0, p("-l*(d + 2*l)")));
    }

    #[test]
    fn block_bracket_l1_l2() {
        let b = builtins::block(&Scalar::from_int(1), 8).unwrap();
        let x = AlgebraElement::generator(1);
        let y = AlgebraElement::generator(2);
        assert_eq!(b.bracket(&x, &y).unwrap(), GenVec::single(3, p("2*d + 5*l")));
    }

    #[test]
    fn jth_products_of_virasoro() {
        let vir = builtins::virasoro();
        let l = AlgebraElement::generator(0);
        assert_eq!(vir.jth_product(&l, &l, 0).unwrap(), AlgebraElement::with_coeff(0, p("d")));
        assert_eq!(vir.jth_product(&l, &l, 1).unwrap(), AlgebraElement::with_coeff(0, p("2")));
        assert!(vir.jth_product(&l, &l, 5).unwrap().is_zero());
    }

    #[test]
    fn truncation_is_reported() {
        let b = builtins::block(&Scalar::from_int(1), 4).unwrap();
        let x = AlgebraElement::generator(2);
        let y = AlgebraElement::generator(3);
        assert!(matches!(b.bracket(&x, &y), Err(Error::TruncationExceeded(..))));
    }

    #[test]
    fn builder_rejects_mu() {
        let r = ConformalAlgebra::builder("bad", vec!["L".into()]).bracket_to(0, 0, p("d + m"), 0).build();
        assert!(matches!(r, Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn builder_rejects_wrong_grade_target() {
        let r = ConformalAlgebra::builder("bad", vec!["A".into(), "B".into()])
            .grades(vec![0, 1], None)
            .bracket_to(0, 0, p("d"), 1)
            .build();
        assert!(matches!(r, Err(Error::InvalidStructure(_))));
    }
}
