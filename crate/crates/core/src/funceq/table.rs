//! The table of nonzero homogeneous solutions for `Δ_i ≠ 0`, and its verification.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::solver::{degree_offset, solve_homogeneous, FuncEqInstance};
use crate::exactpoly::{parse_poly, MultiPoly, Scalar};
use crate::report::{Check, Report};

/// Which parameters a row leaves free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeParams {
    AAndDeltaI,
    A,
    DeltaI,
    None,
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub id: &'static str,
    pub k: u32,
    pub free: FreeParams,
    /// `(a, Δ_i, Δ_j)` from the free parameters.
    pub params: fn(&Scalar, &Scalar) -> (Scalar, Scalar, Scalar),
    /// The stated solution at `(a, Δ_i)`.
    pub solution: fn(&Scalar, &Scalar) -> MultiPoly,
    /// True if the row fixes both `Δ_i` and `Δ_j` beyond the degree relation.
    pub pinned_deltas: bool,
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn one_minus(a: &Scalar) -> Scalar {
    &Scalar::one() - a
}

pub fn solution_table() -> Vec<TableRow> {
    vec![
        TableRow {
            id: "(1)(a)",
            k: 0,
            free: FreeParams::AAndDeltaI,
            params: |a, di| (a.clone(), di.clone(), &(di + &Scalar::one()) - a),
            solution: |_, _| MultiPoly::one(),
            pinned_deltas: false,
        },
        TableRow {
            id: "(1)(b)",
            k: 1,
            free: FreeParams::AAndDeltaI,
            params: |a, di| (a.clone(), di.clone(), &(di + &int(2)) - a),
            solution: |a, di| {
                let c = &(-di) / &one_minus(a);
                &MultiPoly::d() + &MultiPoly::l().scale(&c)
            },
            pinned_deltas: false,
        },
        TableRow {
            id: "(1)(c)",
            k: 2,
            free: FreeParams::A,
            params: |a, _| (a.clone(), a - &int(2), int(1)),
            solution: |a, _| {
                let di = a - &int(2);
                let inv = one_minus(a).inv().unwrap();
                let c1 = -&(&(&int(1) + &(&di * &int(2))) * &inv);
                let c2 = -&(&di * &inv);
                let (d, l) = (MultiPoly::d(), MultiPoly::l());
                &(&d.pow(2) + &(&d * &l).scale(&c1)) + &l.pow(2).scale(&c2)
            },
            pinned_deltas: true,
        },
        TableRow {
            id: "(1)(d)",
            k: 3,
            free: FreeParams::None,
            params: |_, _| (Scalar::ratio(5, 3), Scalar::ratio(-2, 3), Scalar::ratio(5, 3)),
            solution: |_, _| parse_poly("d^3 + 3/2*d^2*l - 3/2*d*l^2 - l^3").unwrap(),
            pinned_deltas: true,
        },
        TableRow {
            id: "(2)(a)",
            k: 0,
            free: FreeParams::DeltaI,
            params: |_, di| (int(1), di.clone(), di.clone()),
            solution: |_, _| MultiPoly::one(),
            pinned_deltas: false,
        },
        TableRow {
            id: "(2)(b)",
            k: 1,
            free: FreeParams::DeltaI,
            params: |_, di| (int(1), di.clone(), di + &int(1)),
            solution: |_, _| MultiPoly::l(),
            pinned_deltas: false,
        },
        TableRow {
            id: "(2)(c)",
            k: 2,
            free: FreeParams::DeltaI,
            params: |_, di| (int(1), di.clone(), di + &int(2)),
            solution: |_, di| &MultiPoly::l() * &(&MultiPoly::d() - &MultiPoly::l().scale(di)),
            pinned_deltas: false,
        },
        TableRow {
            id: "(2)(d)",
            k: 3,
            free: FreeParams::None,
            params: |_, _| (int(1), int(-1), int(2)),
            solution: |_, _| parse_poly("l*(d^2 + 3*d*l + 2*l^2)").unwrap(),
            pinned_deltas: true,
        },
    ]
}

/// Sample values for the free parameters and the shifts used to break constraints.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableSamples {
    pub a: Vec<Scalar>,
    pub delta_i: Vec<Scalar>,
    pub shifts: Vec<Scalar>,
}

impl Default for TableSamples {
    /// Five Gaussian-rational values per parameter, avoiding `a ∈ {1, 2}`
    /// and `Δ_i = 0`; shifts are non-integral.
    fn default() -> Self {
        TableSamples {
            a: vec![
                int(3),
                Scalar::ratio(-1, 2),
                Scalar::gaussian(1, 3, 1, 1),
                Scalar::ratio(5, 2),
                Scalar::gaussian(-2, 1, 3, 4),
            ],
            delta_i: vec![
                int(1),
                Scalar::ratio(-3, 2),
                Scalar::gaussian(0, 1, 2, 1),
                Scalar::ratio(1, 5),
                Scalar::gaussian(7, 3, -1, 1),
            ],
            shifts: vec![
                Scalar::ratio(1, 2),
                Scalar::ratio(-1, 3),
                Scalar::gaussian(0, 1, 1, 2),
                Scalar::ratio(3, 7),
                Scalar::gaussian(-5, 4, 1, 3),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    Solution,
    Perturbation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowResult {
    pub row: String,
    pub kind: CaseKind,
    pub a: Scalar,
    pub delta_i: Scalar,
    pub delta_j: Scalar,
    pub k: u32,
    pub expected_dim: usize,
    pub actual_dim: usize,
    /// Stated polynomial substituted into the equation gives zero (solution cases).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_zero: Option<bool>,
    /// The computed basis is the stated polynomial up to scalar (solution cases).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_table: Option<bool>,
    /// Every computed solution has `deg_λ f = a + Δ_j − Δ_i − 1`.
    pub offset_holds: bool,
    /// Nonzero defect of the stated polynomial, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
}

impl RowResult {
    pub fn passed(&self) -> bool {
        self.expected_dim == self.actual_dim
            && self.defect_zero != Some(false)
            && self.matches_table != Some(false)
            && self.offset_holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableVerification {
    pub results: Vec<RowResult>,
}

impl TableVerification {
    pub fn report(&self) -> Report {
        let mut r = Report::new("homogeneous solution table");
        for x in &self.results {
            let kind = match x.kind {
                CaseKind::Solution => "solution",
                CaseKind::Perturbation => "perturbation",
            };
            let id = format!("table{}[{kind}; a={}, Δi={}, Δj={}]", x.row, x.a, x.delta_i, x.delta_j);
            let detail = format!("dim {} (expected {})", x.actual_dim, x.expected_dim);
            let witnesses = match &x.defect {
                Some(d) => vec![d.clone()],
                None => x.basis.clone(),
            };
            r.push(if x.passed() { Check::pass(id) } else { Check::fail(id, witnesses).with_detail(detail) });
        }
        r
    }
}

fn evaluate(
    row: &TableRow,
    kind: CaseKind,
    a: Scalar,
    di: Scalar,
    dj: Scalar,
    stated: Option<&MultiPoly>,
) -> RowResult {
    let sol = solve_homogeneous(&a, &di, &dj, row.k);
    let offset_holds = sol.basis.iter().all(|f| degree_offset(f, &a, &di, &dj).map(|o| o.holds()).unwrap_or(false));
    let (defect, matches_table) = match stated {
        Some(f) => (
            Some(FuncEqInstance::homogeneous(&a, &di, &dj, row.k).defect(f)),
            Some(sol.dimension == 1 && sol.basis[0].proportional_to(f)),
        ),
        None => (None, None),
    };
    let defect_zero = defect.as_ref().map(MultiPoly::is_zero);
    let defect = defect.filter(|d| !d.is_zero()).map(|d| d.to_string());
    RowResult {
        row: row.id.to_string(),
        expected_dim: if kind == CaseKind::Solution { 1 } else { 0 },
        kind,
        a,
        delta_i: di,
        delta_j: dj,
        k: row.k,
        actual_dim: sol.dimension,
        defect_zero,
        matches_table,
        offset_holds,
        defect,
        basis: sol.basis.iter().map(|f| f.to_string()).collect(),
    }
}

/// Parameter points for a row: the product of the samples over its free parameters.
fn points(row: &TableRow, s: &TableSamples) -> Vec<(Scalar, Scalar)> {
    let z = Scalar::zero();
    match row.free {
        FreeParams::AAndDeltaI => {
            s.a.iter().flat_map(|a| s.delta_i.iter().map(move |d| (a.clone(), d.clone()))).collect()
        }
        FreeParams::A => s.a.iter().map(|a| (a.clone(), z.clone())).collect(),
        FreeParams::DeltaI => s.delta_i.iter().map(|d| (z.clone(), d.clone())).collect(),
        FreeParams::None => vec![(z.clone(), z)],
    }
}

/// For every row and sample: the stated polynomial solves the equation and is
/// the whole degree-`k` solution space; shifting `Δ_j` (and, for rows that pin
/// both Δs, shifting `Δ_i` and `Δ_j` together, which keeps the degree relation)
/// leaves no solution. Samples violating the hypotheses (`Δ_i = 0`, `a = 1` in
/// the first family) are dropped.
pub fn verify_solution_table(samples: &TableSamples) -> TableVerification {
    let mut jobs: Vec<(TableRow, CaseKind, Scalar, Scalar, Scalar, Option<MultiPoly>)> = Vec::new();
    for row in solution_table() {
        let valid: Vec<(Scalar, Scalar, Scalar, MultiPoly)> = points(&row, samples)
            .into_iter()
            .map(|(x, y)| {
                let (a, di, dj) = (row.params)(&x, &y);
                let f = if di.is_zero() || (row.id.starts_with("(1)") && a.is_one()) {
                    None
                } else {
                    Some((row.solution)(&x, &y))
                };
                (a, di, dj, f)
            })
            .filter_map(|(a, di, dj, f)| f.map(|f| (a, di, dj, f)))
            .collect();
        for (a, di, dj, f) in &valid {
            jobs.push((row, CaseKind::Solution, a.clone(), di.clone(), dj.clone(), Some(f.clone())));
        }
        if let Some((a, di, dj, _)) = valid.first() {
            for e in &samples.shifts {
                jobs.push((row, CaseKind::Perturbation, a.clone(), di.clone(), dj + e, None));
                if row.pinned_deltas {
                    jobs.push((row, CaseKind::Perturbation, a.clone(), di + e, dj + e, None));
                }
            }
        }
    }
    let results =
        jobs.into_par_iter().map(|(row, kind, a, di, dj, f)| evaluate(&row, kind, a, di, dj, f.as_ref())).collect();
    TableVerification { results }
}
