//! Sparse polynomials in the fixed variables ∂, λ, μ, ν over [`Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Scalar;

pub const NVARS: usize = 4;

/// The variable universe. `Nu` is only needed for triple-nested identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Partial,
    Lambda,
    Mu,
    Nu,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Partial, Var::Lambda, Var::Mu, Var::Nu];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Name in the textual grammar.
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Partial => "d",
            Var::Lambda => "l",
            Var::Mu => "m",
            Var::Nu => "n",
        }
    }
}

/// Exponent vector, indexed by [`Var::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    /// `∂^d λ^l`.
    pub fn dl(d: u32, l: u32) -> Self {
        Monomial([d, l, 0, 0])
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0; NVARS];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k] + other.0[k];
        }
        Monomial(out)
    }

    /// Graded lexicographic order with ∂ > λ > μ > ν, largest first.
    pub fn grlex_desc(&self, other: &Monomial) -> Ordering {
        other.total().cmp(&self.total()).then_with(|| other.0.cmp(&self.0))
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Total degree plus the degree in each variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degrees {
    pub total: Degree,
    pub per_var: [Degree; NVARS],
}

impl Degrees {
    pub fn of(&self, v: Var) -> Degree {
        self.per_var[v.index()]
    }
}

/// Exact multivariate polynomial. Zero coefficients are never stored, so the
/// term map is canonical and `==` decides polynomial identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(Scalar::from_int(n))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Scalar::one(), Monomial::var(v, 1))
    }

    pub fn d() -> Self {
        MultiPoly::var(Var::Partial)
    }

    pub fn l() -> Self {
        MultiPoly::var(Var::Lambda)
    }

    pub fn m() -> Self {
        MultiPoly::var(Var::Mu)
    }

    pub fn n() -> Self {
        MultiPoly::var(Var::Nu)
    }

    /// `∂ + aλ + b`, the shape of every rank-one Virasoro action.
    pub fn affine(a: &Scalar, b: &Scalar) -> Self {
        &(&MultiPoly::d() + &MultiPoly::l().scale(a)) + &MultiPoly::constant(b.clone())
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Monomial)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (c, m) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// True if only the listed variables occur.
    pub fn only_uses(&self, vars: &[Var]) -> bool {
        Var::ALL.iter().filter(|v| !vars.contains(v)).all(|&v| !self.uses(v))
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degrees(&self) -> Degrees {
        let mut total = Degree::NegInfinity;
        let mut per_var = [Degree::NegInfinity; NVARS];
        for m in self.terms.keys() {
            total = total.max(Degree::Finite(m.total()));
            for v in Var::ALL {
                per_var[v.index()] = per_var[v.index()].max(Degree::Finite(m.exp(v)));
            }
        }
        Degrees { total, per_var }
    }

    pub fn total_degree(&self) -> Degree {
        self.degrees().total
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        self.degrees().of(v)
    }

    /// The coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(var) == k {
                let mut rest = *m;
                rest.0[var.index()] = 0;
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Sum of the terms of total degree exactly `t`.
    pub fn homogeneous_part(&self, t: u32) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().filter(|(m, _)| m.total() == t).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Simultaneous substitution: each variable with `Some(expr)` is replaced by
    /// `expr`, all others are fixed.
    pub fn compose(&self, images: &[Option<&MultiPoly>; NVARS]) -> MultiPoly {
        // powers[v][e] = images[v]^e, filled lazily
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]; NVARS];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = *m;
            let mut factor = MultiPoly::constant(c.clone());
            for v in Var::ALL {
                let k = v.index();
                if let Some(img) = images[k] {
                    let e = m.0[k] as usize;
                    while powers[k].len() <= e {
                        let next = powers[k].last().unwrap() * img;
                        powers[k].push(next);
                    }
                    factor = &factor * &powers[k][e];
                    keep.0[k] = 0;
                }
            }
            let shifted = factor.mul_monomial(&keep);
            out = &out + &shifted;
        }
        out
    }

    /// Image under the ring map `var ↦ expr`, other variables fixed.
    pub fn substitute(&self, var: Var, expr: &MultiPoly) -> MultiPoly {
        let mut images: [Option<&MultiPoly>; NVARS] = [None; NVARS];
        images[var.index()] = Some(expr);
        self.compose(&images)
    }

    /// Convenience for the common two-variable case `p(∂ ↦ x, λ ↦ y)`.
    pub fn at_dl(&self, d: &MultiPoly, l: &MultiPoly) -> MultiPoly {
        self.compose(&[Some(d), Some(l), None, None])
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Renames variables by a permutation-free map: every `from` variable is replaced by `to`.
    pub fn rename(&self, from: Var, to: Var) -> MultiPoly {
        self.substitute(from, &MultiPoly::var(to))
    }

    /// Division by a divisor that is monic in `var`, treating the other variables
    /// as coefficients. Returns `(quotient, remainder)` with `deg_var(rem) < deg_var(divisor)`.
    pub fn div_rem_monic(&self, var: Var, divisor: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let n = divisor.degree_in(var).finite().expect("division by the zero polynomial");
        let lead = divisor.coeff_of(var, n);
        assert!(lead == MultiPoly::one(), "divisor must be monic in {var:?}");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Degree::Finite(r) = rem.degree_in(var) {
            if r < n {
                break;
            }
            let top = rem.coeff_of(var, r).mul_monomial(&Monomial::var(var, r - n));
            quot = &quot + &top;
            rem = &rem - &(&top * divisor);
        }
        (quot, rem)
    }

    /// Terms sorted in graded-lex order (∂ > λ > μ > ν), largest first.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.grlex_desc(&b.0));
        v
    }

    /// True if `self = c * other` for some nonzero scalar `c`.
    pub fn proportional_to(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (m, c) = other.terms.iter().next().unwrap();
        let mine = self.coeff(m);
        if mine.is_zero() {
            return false;
        }
        let ratio = &mine / c;
        *self == other.scale(&ratio)
    }

    /// Scales so that the leading grlex coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.sorted_terms().first() {
            None => MultiPoly::zero(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Scalar> for MultiPoly {
    fn from(c: Scalar) -> Self {
        MultiPoly::constant(c)
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    /// Naive oracle: concatenate term lists, then collect.
    fn naive_sum(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let all: Vec<_> = a.terms().chain(b.terms()).map(|(m, c)| (c.clone(), *m)).collect();
        let mut acc: Vec<(Monomial, Scalar)> = Vec::new();
        for (c, m) in all {
            match acc.iter_mut().find(|(k, _)| *k == m) {
                Some((_, v)) => *v += &c,
                None => acc.push((m, c)),
            }
        }
        MultiPoly::from_terms(acc.into_iter().map(|(m, c)| (c, m)))
    }

    /// Naive oracle: distribute every pair of terms into a list, then collect.
    fn naive_product(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut list = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                list.push((ca * cb, ma.mul(mb)));
            }
        }
        MultiPoly::from_terms(list)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("d + 2*l") + &MultiPoly::zero(), p("d + 2*l"));
        assert!((&p("d + 2*l") + &p("-d - 2*l")).is_zero());
        let a = p("d^2");
        let b = p("3*d*l + 2*l^2");
        assert_eq!(&a + &b, naive_sum(&a, &b));
        assert_eq!(&a + &b, p("d^2 + 3*d*l + 2*l^2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("d + 2*l") * &MultiPoly::one(), p("d + 2*l"));
        let prod = &p("l") * &p("d^2 + 3*d*l + 2*l^2");
        assert_eq!(prod, p("l*d^2 + 3*d*l^2 + 2*l^3"));
        let a = p("d + l");
        let b = p("d - l");
        assert_eq!(&a * &b, naive_product(&a, &b));
        assert_eq!(&a * &b, p("d^2 - l^2"));
    }

    #[test]
    fn substitute_examples() {
        let skew = p("d + 2*l").substitute(Var::Lambda, &p("-l - d"));
        assert_eq!(skew, p("-d - 2*l"));
        let shifted = p("d - 3*l").substitute(Var::Lambda, &p("l + m"));
        assert_eq!(shifted, p("d - 3*l - 3*m"));
        let binom = p("d^2").substitute(Var::Partial, &p("d + l"));
        assert_eq!(binom, p("d^2 + 2*d*l + l^2"));
    }

    #[test]
    fn substitution_is_simultaneous() {
        // (∂, λ) ↦ (λ, ∂) swaps, it does not collapse
        let q = p("d^2*l").compose(&[Some(&p("l")), Some(&p("d")), None, None]);
        assert_eq!(q, p("l^2*d"));
    }

    #[test]
    fn coeff_of_examples() {
        assert_eq!(p("d + 2*l").coeff_of(Var::Lambda, 1), p("2"));
        assert_eq!(p("d + 2*l").coeff_of(Var::Lambda, 0), p("d"));
        // λ(∂ − Δλ) with Δ = 7/3
        let delta = Scalar::ratio(7, 3);
        let f = &p("l") * &(&p("d") - &p("l").scale(&delta));
        assert_eq!(f.coeff_of(Var::Lambda, 2), MultiPoly::constant(-delta));
    }

    #[test]
    fn degrees_examples() {
        let d = p("d + 2*l").degrees();
        assert_eq!(d.total, Degree::Finite(1));
        assert_eq!(d.of(Var::Partial), Degree::Finite(1));
        assert_eq!(d.of(Var::Lambda), Degree::Finite(1));
        let d = p("l*(d^2 + 3*d*l + 2*l^2)").degrees();
        assert_eq!(d.total, Degree::Finite(3));
        assert_eq!(d.of(Var::Lambda), Degree::Finite(3));
        let z = MultiPoly::zero().degrees();
        assert_eq!(z.total, Degree::NegInfinity);
        assert_eq!(z.of(Var::Mu), Degree::NegInfinity);
    }

    #[test]
    fn monic_division() {
        let f = p("d^3 + l*d + 2");
        let g = p("d + l");
        let (q, r) = f.div_rem_monic(Var::Partial, &g);
        assert_eq!(&(&q * &g) + &r, f);
        assert_eq!(r.degree_in(Var::Partial), Degree::Finite(0).min(r.degree_in(Var::Partial)));
        assert!(!r.uses(Var::Partial));
    }
}
