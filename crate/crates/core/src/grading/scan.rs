//! Finite-horizon search for admissible `a₁` in the regime `b₁ = 0`.
//!
//! A branch fixes `p_{1,j}` level by level from the nonzero homogeneous
//! solutions of the `L_0` equation with `(a, Δ_i, Δ_j) = (a₁, a_{j+1}, a_j)`,
//! normalising `L_{j+1}` so that `p_{1,j}` is the solver's basis vector. The
//! remaining brackets of grade `s` are then forced by the Jacobi identity for
//! `(L_1, L_{i−1}, L_j)` together with the `L_0` equation and skew-symmetry,
//! and the branch dies as soon as any Jacobi triple of grade `s` fails.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::conformal::skew_image;
use crate::conformal::GenVec;
use crate::exactpoly::{Monomial, MultiPoly, Scalar};
use crate::funceq::{solve_intertwiner, solve_linear, unknown_monomials, FuncEqInstance};
use crate::linalg::Matrix;

/// Limits of the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    /// Largest total degree tried for `p_{1,j}`.
    pub max_step_degree: u32,
    /// Most distinct values allowed among `a_1, …, a_N`; `None` means
    /// `max(1, ⌊N/2⌋)`.
    pub max_distinct: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_step_degree: 3, max_distinct: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub a1: Scalar,
    pub horizon: u32,
    pub admissible: bool,
    /// `a_1, …, a_N` of the first surviving branch.
    pub witness_sequence: Option<Vec<Scalar>>,
    /// Total degrees of `p_{1,1}, …, p_{1,N−1}` along the witness.
    pub witness_degrees: Option<Vec<u32>>,
    /// First grade at which every branch had died.
    pub rejection_depth: Option<u32>,
}

#[derive(Clone)]
struct State {
    a: Vec<Scalar>,
    degrees: Vec<u32>,
    table: BTreeMap<(u32, u32), MultiPoly>,
}

impl State {
    fn p(&self, i: u32, j: u32) -> &MultiPoly {
        &self.table[&(i, j)]
    }

    fn set(&mut self, i: u32, j: u32, p: MultiPoly) {
        if i != j {
            self.table.insert((j, i), skew(&p));
        }
        self.table.insert((i, j), p);
    }
}

fn skew(p: &MultiPoly) -> MultiPoly {
    skew_image(&GenVec::single(0, p.clone())).get(0)
}

struct Vars {
    d_plus_l: MultiPoly,
    d_plus_m: MultiPoly,
    l_plus_m: MultiPoly,
    minus_l_minus_m: MultiPoly,
    l: MultiPoly,
    m: MultiPoly,
}

impl Vars {
    fn new() -> Self {
        let (d, l, m) = (MultiPoly::d(), MultiPoly::l(), MultiPoly::m());
        Vars { d_plus_l: &d + &l, d_plus_m: &d + &m, l_plus_m: &l + &m, minus_l_minus_m: -&(&l + &m), l, m }
    }
}

/// `[L_a λ [L_b μ L_c]] − [[L_a λ L_b]_{λ+μ} L_c] − [L_b μ [L_a λ L_c]]` on the
/// single grade `a+b+c`, with `pair` supplying each `p_{i,j}`.
fn jacobi(v: &Vars, pair: &dyn Fn(u32, u32) -> MultiPoly, a: u32, b: u32, c: u32) -> MultiPoly {
    let lhs = &pair(b, c).at_dl(&v.d_plus_l, &v.m) * &pair(a, b + c);
    let r1 = &pair(a, b).at_dl(&v.minus_l_minus_m, &v.l) * &pair(a + b, c).at_dl(&MultiPoly::d(), &v.l_plus_m);
    let r2 = &pair(a, c).at_dl(&v.d_plus_m, &v.l) * &pair(b, a + c).at_dl(&MultiPoly::d(), &v.m);
    &(&lhs - &r1) - &r2
}

/// Nonnegative integer value of `x`, if it has one.
fn as_degree(x: &Scalar) -> Option<u32> {
    if !x.is_real() || !x.re().is_integer() {
        return None;
    }
    let n = x.re().to_integer();
    u32::try_from(n).ok()
}

/// The unique `p_{i,s−i}` (`2 ≤ i ≤ s−i`) compatible with the brackets already
/// fixed, or `None` if no polynomial satisfies the constraints. When the
/// constraints leave a family, the representative with zero free coordinates
/// is taken and the returned flag is set.
fn forced_bracket(v: &Vars, st: &State, i: u32, s: u32) -> Option<(MultiPoly, bool)> {
    let j = s - i;
    let deg = &(&(&st.a[i as usize] + &st.a[j as usize]) - &st.a[s as usize]) - &Scalar::from_int(1);
    let unknowns: Vec<Monomial> = match as_degree(&deg) {
        Some(d) => unknown_monomials(d, d),
        None => Vec::new(),
    };
    let nu = MultiPoly::n();
    let defect = |x: &MultiPoly| -> MultiPoly {
        let pair = |p: u32, q: u32| {
            if (p, q) == (i, j) {
                x.clone()
            } else if (p, q) == (j, i) {
                skew(x)
            } else {
                st.p(p, q).clone()
            }
        };
        let mut e = jacobi(v, &pair, 1, i - 1, j);
        e = &e + &(&nu * &jacobi(v, &pair, 0, i, j));
        if i == j {
            e = &e + &(&(&nu * &nu) * &(x - &skew(x)));
        }
        e
    };
    let base = defect(&MultiPoly::zero());
    let images: Vec<MultiPoly> =
        unknowns.iter().map(|mono| &defect(&MultiPoly::term(Scalar::from_int(1), *mono)) - &base).collect();
    let mut rows: BTreeMap<Monomial, (Vec<Scalar>, Scalar)> = BTreeMap::new();
    let blank = || (vec![Scalar::zero(); unknowns.len()], Scalar::zero());
    for (c, img) in images.iter().enumerate() {
        for (mono, x) in img.terms() {
            rows.entry(*mono).or_insert_with(blank).0[c] = x.clone();
        }
    }
    for (mono, x) in base.terms() {
        rows.entry(*mono).or_insert_with(blank).1 = -x;
    }
    if rows.is_empty() {
        return Some((MultiPoly::zero(), !unknowns.is_empty()));
    }
    let (lhs, rhs): (Vec<Vec<Scalar>>, Vec<Scalar>) = rows.into_values().unzip();
    if unknowns.is_empty() {
        return rhs.iter().all(Zero::is_zero).then(|| (MultiPoly::zero(), false));
    }
    let m = Matrix::from_rows(lhs);
    let x = m.solve(&rhs)?;
    let ambiguous = m.rank() < unknowns.len();
    Some((MultiPoly::from_terms(x.into_iter().zip(unknowns.iter().copied())), ambiguous))
}

/// Attempts grade `s` with `p_{1,s−1} = f` of total degree `k`.
fn extend(v: &Vars, st: &State, s: u32, k: u32, f: MultiPoly) -> Option<State> {
    let mut next = st.clone();
    let a_s = &(&(&st.a[1] + &st.a[s as usize - 1]) - &Scalar::from_int(1)) - &Scalar::from_int(k as i64);
    next.a.push(a_s.clone());
    next.degrees.push(k);
    next.set(0, s, MultiPoly::affine(&a_s, &Scalar::zero()));
    if s == 2 && skew(&f) != f {
        return None;
    }
    next.set(1, s - 1, f);
    for i in 2..=s / 2 {
        let (p, _) = forced_bracket(v, &next, i, s)?;
        next.set(i, s - i, p);
    }
    let pair = |p: u32, q: u32| next.p(p, q).clone();
    for a in 0..=s {
        for b in 0..=s - a {
            if !jacobi(v, &pair, a, b, s - a - b).is_zero() {
                return None;
            }
        }
    }
    Some(next)
}

/// Nonzero solutions for `p_{1,s−1}` of degree `k`; for `s = 2` only the
/// skew-symmetric ones, since `p_{1,1}` must equal its own skew image.
fn step_candidates(a1: &Scalar, a_s: &Scalar, prev: &Scalar, k: u32, s: u32) -> Vec<MultiPoly> {
    let inst = FuncEqInstance::homogeneous(a1, a_s, prev, k);
    if s != 2 {
        return solve_intertwiner(&inst).basis;
    }
    let nu = MultiPoly::n();
    solve_linear(&unknown_monomials(k, k), |f| &inst.defect(f) + &(&nu * &(f - &skew(f))))
}

fn distinct(a: &[Scalar]) -> usize {
    let mut seen: Vec<&Scalar> = Vec::new();
    for x in a {
        if !seen.contains(&x) {
            seen.push(x);
        }
    }
    seen.len()
}

struct Search {
    vars: Vars,
    horizon: u32,
    max_distinct: usize,
    max_step_degree: u32,
    /// Deepest grade reached by any branch.
    reached: u32,
}

impl Search {
    fn run(&mut self, st: State) -> Option<State> {
        let s = st.a.len() as u32;
        self.reached = self.reached.max(s - 1);
        if s > self.horizon {
            return Some(st);
        }
        let a1 = st.a[1].clone();
        let prev = st.a[s as usize - 1].clone();
        for k in 0..=self.max_step_degree {
            let a_s = &(&(&a1 + &prev) - &Scalar::from_int(1)) - &Scalar::from_int(k as i64);
            let mut values = st.a[1..].to_vec();
            values.push(a_s.clone());
            if distinct(&values) > self.max_distinct {
                continue;
            }
            for f in step_candidates(&a1, &a_s, &prev, k, s) {
                if let Some(next) = extend(&self.vars, &st, s, k, f) {
                    if let Some(done) = self.run(next) {
                        return Some(done);
                    }
                }
            }
        }
        None
    }
}

fn start(a1: &Scalar) -> State {
    let mut st = State { a: vec![Scalar::from_int(2), a1.clone()], degrees: Vec::new(), table: BTreeMap::new() };
    st.set(0, 0, MultiPoly::affine(&Scalar::from_int(2), &Scalar::zero()));
    st.set(0, 1, MultiPoly::affine(a1, &Scalar::zero()));
    st
}

/// Depth-first search for a table through grade `N` whose values
/// `a_1, …, a_N` take at most `max(1, ⌊N/2⌋)` distinct values. Branches are explored in
/// increasing degree of `p_{1,j}`, so the witness is deterministic.
pub fn scan_a1(a1: &Scalar, horizon: u32) -> ScanResult {
    scan_a1_with(a1, horizon, &ScanOptions::default())
}

pub fn scan_a1_with(a1: &Scalar, horizon: u32, opts: &ScanOptions) -> ScanResult {
    let mut search = Search {
        vars: Vars::new(),
        horizon,
        max_distinct: opts.max_distinct.unwrap_or((horizon as usize / 2).max(1)),
        max_step_degree: opts.max_step_degree,
        reached: 0,
    };
    let found = if horizon == 0 { Some(start(a1)) } else { search.run(start(a1)) };
    match found {
        Some(st) => ScanResult {
            a1: a1.clone(),
            horizon,
            admissible: true,
            witness_sequence: Some(st.a[1..].to_vec()),
            witness_degrees: Some(st.degrees),
            rejection_depth: None,
        },
        None => ScanResult {
            a1: a1.clone(),
            horizon,
            admissible: false,
            witness_sequence: None,
            witness_degrees: None,
            rejection_depth: Some(search.reached + 1),
        },
    }
}

/// Independent scans over a grid of `a₁` values, in grid order.
pub fn scan_grid(grid: &[Scalar], horizon: u32, opts: &ScanOptions) -> Vec<ScanResult> {
    grid.par_iter().map(|a| scan_a1_with(a, horizon, opts)).collect()
}

/// `{m/n : 1 ≤ n ≤ nmax, lo ≤ m/n ≤ hi}` without repeats, in increasing order.
pub fn rational_grid(lo: &Scalar, hi: &Scalar, nmax: u32) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for n in 1..=nmax as i64 {
        let lo_m = (lo.re() * num_rational::BigRational::from_integer(n.into())).ceil().to_integer();
        let hi_m = (hi.re() * num_rational::BigRational::from_integer(n.into())).floor().to_integer();
        let mut m = lo_m;
        while m <= hi_m {
            let x = Scalar::real(num_rational::BigRational::new(m.clone(), n.into()));
            if !out.contains(&x) {
                out.push(x);
            }
            m += 1;
        }
    }
    out.sort_by(|a, b| a.lex_cmp(b));
    out
}
