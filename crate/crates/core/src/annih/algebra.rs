//! The annihilation Lie algebra on symbols `g_(n)`, truncated at a depth.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::conformal::ConformalAlgebra;
use crate::error::{Error, Result};
use crate::exactpoly::{binomial, factorial, Scalar, Var};
use crate::report::{Check, Report};

/// The symbol `g_(n)`: generator index and mode.
pub type Symbol = (usize, u32);

/// A finite combination `Σ c · g_(n)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Combination(BTreeMap<Symbol, Scalar>);

impl Combination {
    pub fn zero() -> Self {
        Combination(BTreeMap::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Combination::term(s, Scalar::from_int(1))
    }

    pub fn term(s: Symbol, c: Scalar) -> Self {
        let mut out = Combination::zero();
        out.add_term(s, &c);
        out
    }

    pub fn add_term(&mut self, s: Symbol, c: &Scalar) {
        let e = self.0.entry(s).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&s);
        }
    }

    pub fn add(&self, other: &Combination) -> Combination {
        let mut out = self.clone();
        for (s, c) in &other.0 {
            out.add_term(*s, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Combination {
        if c.is_zero() {
            return Combination::zero();
        }
        Combination(self.0.iter().map(|(s, x)| (*s, x * c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, s: Symbol) -> Scalar {
        self.0.get(&s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Scalar)> {
        self.0.iter()
    }

    pub fn display_with(&self, labels: &[String]) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0.iter().map(|((g, n), c)| format!("({c})*{}_({n})", labels[*g])).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Debug for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

#[derive(Clone, Debug)]
pub struct AnnihAlgebra {
    pub parent: ConformalAlgebra,
    pub depth: u32,
}

impl AnnihAlgebra {
    pub fn new(parent: ConformalAlgebra, depth: u32) -> Self {
        AnnihAlgebra { parent, depth }
    }

    fn label(&self, s: Symbol) -> String {
        format!("{}_({})", self.parent.gens()[s.0], s.1)
    }

    /// All symbols with mode at most the depth.
    pub fn symbols(&self) -> Vec<Symbol> {
        (0..self.parent.rank()).flat_map(|g| (0..=self.depth).map(move |n| (g, n))).collect()
    }

    /// `[a_(m), b_(n)] = Σ_k C(m,k) (a_(k) b)_(m+n−k)`, where
    /// `(∂^r g)_(N) = (−1)^r N(N−1)…(N−r+1) g_(N−r)`.
    pub fn bracket(&self, (i, m): Symbol, (j, n): Symbol) -> Result<Combination> {
        if m > self.depth || n > self.depth {
            return Err(Error::TruncationExceeded(self.label((i, m)), self.label((j, n))));
        }
        let entry = self.parent.entry(i, j)?;
        let mut out = Combination::zero();
        for k in 0..=m {
            let ck = &binomial(m, k) * &factorial(k);
            let big_n = m + n - k;
            for (t, p) in entry.iter() {
                let q = p.coeff_of(Var::Lambda, k);
                for (mono, c) in q.terms() {
                    let r = mono.exp(Var::Partial);
                    if r > big_n {
                        continue;
                    }
                    // (−1)^r N(N−1)…(N−r+1)
                    let mut f = Scalar::from_int(if r % 2 == 0 { 1 } else { -1 });
                    for s in 0..r {
                        f *= &Scalar::from_int((big_n - s) as i64);
                    }
                    out.add_term((t, big_n - r), &(&(&ck * c) * &f));
                }
            }
        }
        if let Some(((g, idx), _)) = out.iter().find(|((_, idx), _)| *idx > self.depth) {
            return Err(Error::TruncationExceeded(
                self.label((i, m)),
                format!("{} (result {} beyond depth)", self.label((j, n)), self.label((*g, *idx))),
            ));
        }
        Ok(out)
    }

    /// Bilinear extension of [`AnnihAlgebra::bracket`].
    pub fn bracket_comb(&self, x: &Combination, y: &Combination) -> Result<Combination> {
        let mut out = Combination::zero();
        for (s, c) in x.iter() {
            for (t, d) in y.iter() {
                out = out.add(&self.bracket(*s, *t)?.scale(&(c * d)));
            }
        }
        Ok(out)
    }
}

/// Antisymmetry on every pair and the Jacobi identity on every unordered
/// triple of symbols; anything touching a bracket past the depth or the
/// truncation is skipped.
pub fn check_annih_lie(x: &AnnihAlgebra) -> Report {
    let syms = x.symbols();
    let labels = x.parent.gens();
    let mut report = Report::new(format!("annihilation algebra of {} at depth {}", x.parent.name(), x.depth));
    for (a, &s) in syms.iter().enumerate() {
        for &t in &syms[a..] {
            let id = format!("antisym[{},{}]", x.label(s), x.label(t));
            match (x.bracket(s, t), x.bracket(t, s)) {
                (Ok(u), Ok(v)) => {
                    let sum = u.add(&v);
                    report.push(if sum.is_zero() {
                        Check::pass(id)
                    } else {
                        Check::fail(id, vec![sum.display_with(labels)])
                    });
                }
                (Err(e), _) | (_, Err(e)) => report.push(Check::skipped(id, e.to_string())),
            }
        }
    }
    let n = syms.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (a..n).flat_map(move |b| (b..n).map(move |c| (a, b, c)))).collect();
    let checks: Vec<Check> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let (s, t, u) = (syms[a], syms[b], syms[c]);
            let id = format!("jacobi[{},{},{}]", x.label(s), x.label(t), x.label(u));
            let cyc = |p: Symbol, q: Symbol, r: Symbol| -> Result<Combination> {
                let inner = x.bracket(q, r)?;
                x.bracket_comb(&Combination::symbol(p), &inner)
            };
            let total = cyc(s, t, u).and_then(|a| Ok(a.add(&cyc(t, u, s)?).add(&cyc(u, s, t)?)));
            match total {
                Err(e) => Check::skipped(id, e.to_string()),
                Ok(v) if v.is_zero() => Check::pass(id),
                Ok(v) => Check::fail(id, vec![v.display_with(labels)]),
            }
        })
        .collect();
    report.checks.extend(checks);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::builtins::{self, CommAlgebra};
    use crate::conformal::ConformalAlgebra;
    use crate::exactpoly::parse_poly;
    use crate::report::Status;

    #[test]
    fn virasoro_modes() {
        let x = AnnihAlgebra::new(builtins::virasoro(), 6);
        assert_eq!(x.bracket((0, 2), (0, 1)).unwrap(), Combination::symbol((0, 2)));
        assert!(x.bracket((0, 1), (0, 1)).unwrap().is_zero());
        assert_eq!(x.bracket((0, 0), (0, 3)).unwrap(), Combination::term((0, 2), Scalar::from_int(-3)));
        assert!(matches!(x.bracket((0, 4), (0, 5)), Err(Error::TruncationExceeded(..))));
    }

    #[test]
    fn map_virasoro_modes() {
        let v = builtins::map_virasoro(&CommAlgebra::polynomial_quotient(3), None).unwrap();
        let x = AnnihAlgebra::new(v, 4);
        // [L_(1)⊗T, L_(2)⊗T] = −L_(2)⊗T²
        assert_eq!(x.bracket((1, 1), (1, 2)).unwrap(), Combination::term((2, 2), Scalar::from_int(-1)));
    }

    #[test]
    fn virasoro_is_lie() {
        let r = check_annih_lie(&AnnihAlgebra::new(builtins::virasoro(), 6));
        assert!(r.passed(), "{r}");
        assert!(r.count(Status::Pass) > 0 && r.count(Status::Skipped) > 0);
    }

    #[test]
    fn corrupted_table_fails() {
        let bad = ConformalAlgebra::builder("bad", vec!["L".into()])
            .bracket_to(0, 0, parse_poly("d + 3*l").unwrap(), 0)
            .build()
            .unwrap();
        let r = check_annih_lie(&AnnihAlgebra::new(bad, 4));
        assert!(!r.passed());
        // [L_(m),L_(n)] = (2m−n) L_(m+n−1), so the antisymmetry defect is (m+n) L_(m+n−1)
        let c = r.checks.iter().find(|c| c.id == "antisym[L_(1),L_(2)]").unwrap();
        assert_eq!(c.witnesses, vec!["(3)*L_(2)".to_string()]);
    }
}
