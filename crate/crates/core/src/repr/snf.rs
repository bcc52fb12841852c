//! Matrices over ℚ(i)[∂], Smith normal form and torsion splitting.

use std::fmt;

use crate::exactpoly::{Degree, Scalar, UniPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<UniPoly>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![vec![UniPoly::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for k in 0..n {
            m.data[k][k] = UniPoly::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(data: Vec<Vec<UniPoly>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        PolyMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &UniPoly {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: UniPoly) {
        self.data[r][c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(UniPoly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = UniPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(&self.data[i][k] * &other.data[k][j]);
                }
                out.data[i][j] = acc;
            }
        }
        out
    }

    /// Laplace expansion along the first row; intended for small matrices.
    pub fn determinant(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        det(&self.data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &UniPoly) {
        for c in 0..self.cols {
            let t = &self.data[src][c] * q;
            self.data[dst][c] = &self.data[dst][c] + &t;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &UniPoly) {
        for r in 0..self.rows {
            let t = &self.data[r][src] * q;
            self.data[r][dst] = &self.data[r][dst] + &t;
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for x in &mut self.data[r] {
            *x = x.scale(c);
        }
    }
}

fn det(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
}

impl SmithForm {
    /// The diagonal of `D`, of length `min(rows, cols)`.
    pub fn invariants(&self) -> Vec<UniPoly> {
        (0..self.d.rows.min(self.d.cols)).map(|k| self.d.data[k][k].clone()).collect()
    }
}

fn deg(p: &UniPoly) -> u32 {
    match p.degree() {
        Degree::Finite(n) => n,
        Degree::NegInfinity => u32::MAX,
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with monic
/// invariants `d₁ | d₂ | …` followed by zeros. Pivots are minimal-degree
/// entries, ties broken row-major.
pub fn smith_normal_form(m: &PolyMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = PolyMatrix::identity(rows);
    let mut v = PolyMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // pivot of minimal degree in the trailing block
            let mut best: Option<(u32, usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let e = &d.data[r][c];
                    if !e.is_zero() && best.is_none_or(|(b, _, _)| deg(e) < b) {
                        best = Some((deg(e), r, c));
                    }
                }
            }
            let Some((_, pr, pc)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let pivot = d.data[t][t].clone();
            let mut clean = true;
            for r in t + 1..rows {
                if d.data[r][t].is_zero() {
                    continue;
                }
                let (q, rem) = d.data[r][t].div_rem(&pivot);
                let nq = -&q;
                d.add_row(r, t, &nq);
                u.add_row(r, t, &nq);
                clean &= rem.is_zero();
            }
            for c in t + 1..cols {
                if d.data[t][c].is_zero() {
                    continue;
                }
                let (q, rem) = d.data[t][c].div_rem(&pivot);
                let nq = -&q;
                d.add_col(c, t, &nq);
                v.add_col(c, t, &nq);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a row with a non-multiple into the pivot row
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !pivot.divides(&d.data[r][c])));
            match bad {
                Some(r) => {
                    let one = UniPoly::one();
                    d.add_row(t, r, &one);
                    u.add_row(t, r, &one);
                }
                None => break,
            }
        }
    }
    finish(u, d, v)
}

fn finish(mut u: PolyMatrix, mut d: PolyMatrix, v: PolyMatrix) -> SmithForm {
    for k in 0..d.rows.min(d.cols) {
        if let Some(l) = d.data[k][k].lead().cloned() {
            let inv = l.inv().unwrap();
            d.scale_row(k, &inv);
            u.scale_row(k, &inv);
        }
    }
    SmithForm { u, d, v }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionSplit {
    pub free_rank: usize,
    /// Nonconstant invariant factors, monic.
    pub torsion: Vec<UniPoly>,
}

/// Reads the cokernel of `ℂ[∂]^cols → ℂ[∂]^rows` off the Smith form: free rank
/// is `rows − rank`, torsion the nonconstant invariants.
pub fn torsion_split(presentation: &PolyMatrix) -> TorsionSplit {
    let s = smith_normal_form(presentation);
    let inv = s.invariants();
    let rank = inv.iter().filter(|p| !p.is_zero()).count();
    let torsion = inv.into_iter().filter(|p| !p.is_zero() && !p.is_unit()).collect();
    TorsionSplit { free_rank: presentation.rows - rank, torsion }
}

/// Unit check for determinants: a nonzero constant.
pub fn is_unimodular(m: &PolyMatrix) -> bool {
    let dt = m.determinant();
    !dt.is_zero() && dt.is_unit()
}

/// The divisibility chain on the nonzero invariants, with zeros only at the end.
pub fn divisibility_chain_holds(s: &SmithForm) -> bool {
    let inv = s.invariants();
    let nz = inv.iter().take_while(|p| !p.is_zero()).count();
    if inv[nz..].iter().any(|p| !p.is_zero()) {
        return false;
    }
    inv[..nz].windows(2).all(|w| w[0].divides(&w[1]))
}

/// True if `D` has no nonzero off-diagonal entry.
pub fn is_diagonal(m: &PolyMatrix) -> bool {
    (0..m.rows).all(|r| (0..m.cols).all(|c| r == c || m.data[r][c].is_zero()))
}
