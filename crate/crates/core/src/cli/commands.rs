use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Value};

use super::output::Envelope;
use super::spec::{load_spec, SpecFile};
use super::{Cli, Command};
use crate::annih::{check_annih_lie, check_correspondence, weight_spaces, AnnihAlgebra};
use crate::conformal::check_algebra;
use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, MultiPoly, Scalar, UniPoly};
use crate::funceq::{
    bcsx_variant_solver, degree_offset, solve_intertwiner, verify_solution_table, BcsxInstance, FuncEqInstance,
    SolutionBasis, TableSamples,
};
use crate::grading::{rational_grid, scan_grid, ScanOptions};
use crate::report::{Check, Report};
use crate::repr::{
    check_module, divisibility_chain_holds, is_diagonal, is_unimodular, smith_normal_form, torsion_split,
    ConformalModule, PolyMatrix,
};

pub(super) fn execute(cli: &Cli) -> Result<Envelope> {
    let name = cli.command.name();
    let spec = || -> Result<SpecFile> {
        let path = cli.spec.as_ref().ok_or_else(|| Error::InvalidParams(format!("`{name}` needs --spec")))?;
        load_spec(path)
    };
    match &cli.command {
        Command::CheckAlgebra => {
            let s = spec()?;
            let alg = &s.algebra;
            let data = json!({
                "generators": alg.gens(),
                "truncation": alg.truncation(),
            });
            Ok(Envelope::new(name, alg.name(), &[check_algebra(alg)], data))
        }
        Command::CheckModule { module } => {
            let s = spec()?;
            let reports = modules(&s, module.as_deref())?
                .into_iter()
                .map(|m| check_module(&s.algebra, m))
                .collect::<Result<Vec<_>>>()?;
            Ok(Envelope::new(name, s.algebra.name(), &reports, Value::Null))
        }
        Command::AnnihCheck { depth } => {
            let s = spec()?;
            let x = AnnihAlgebra::new(s.algebra.clone(), *depth);
            let mut reports = vec![check_annih_lie(&x)];
            for m in &s.modules {
                reports.push(check_correspondence(&x, m)?);
            }
            Ok(Envelope::new(name, s.algebra.name(), &reports, json!({ "depth": depth })))
        }
        Command::Weights { degree, module, generator } => {
            let s = spec()?;
            let m = *modules(&s, module.as_deref())?.first().expect("at least one module");
            let g = match generator {
                Some(g) => {
                    s.algebra.gen_index(g).ok_or_else(|| Error::UnknownGenerator(g.clone()))?;
                    g.clone()
                }
                None => s.algebra.gens()[0].clone(),
            };
            weights(name, &s, m, &g, *degree)
        }
        Command::SolveFunceq { params, degree, homogeneous, bcsx } => solve(name, params, *degree, *homogeneous, *bcsx),
        Command::VerifyProp36 { samples } => {
            let samples = if samples == "default" {
                TableSamples::default()
            } else {
                let text = std::fs::read_to_string(samples)
                    .map_err(|e| Error::InvalidParams(format!("cannot read {samples}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| Error::InvalidParams(format!("{samples}: {e}")))?
            };
            let v = verify_solution_table(&samples);
            let data = serde_json::to_value(&v.results).expect("rows serialize");
            Ok(Envelope::new(name, "homogeneous solution table", &[v.report()], data))
        }
        Command::ScanA1 { grid, horizon, max_distinct } => {
            let points = parse_grid(grid)?;
            let opts = ScanOptions { max_distinct: *max_distinct, ..ScanOptions::default() };
            let results = scan_grid(&points, *horizon, &opts);
            let mut human = String::new();
            for r in &results {
                match (&r.witness_sequence, r.rejection_depth) {
                    (Some(seq), _) => {
                        let seq: Vec<String> = seq.iter().map(Scalar::to_string).collect();
                        let _ =
                            writeln!(human, "a1 = {}: admissible at N = {} via {}", r.a1, r.horizon, seq.join(", "));
                    }
                    (None, d) => {
                        let _ = writeln!(human, "a1 = {}: rejected at grade {}", r.a1, d.unwrap_or(0));
                    }
                }
            }
            let data = serde_json::to_value(&results).expect("scan results serialize");
            Ok(Envelope::new(name, format!("grid {grid}"), &[], data).with_human(&human))
        }
        Command::Snf { matrix } => snf(name, matrix),
    }
}

fn modules<'a>(s: &'a SpecFile, name: Option<&str>) -> Result<Vec<&'a ConformalModule>> {
    match name {
        Some(n) => Ok(vec![s.module(n).ok_or_else(|| Error::InvalidParams(format!("no module named `{n}`")))?]),
        None if s.modules.is_empty() => Err(Error::InvalidParams("the spec declares no module".into())),
        None => Ok(s.modules.iter().collect()),
    }
}

fn weights(name: &str, s: &SpecFile, m: &ConformalModule, g: &str, degree: u32) -> Result<Envelope> {
    let w = weight_spaces(m, g, degree)?;
    let mut report = Report::new(format!("weights of {} up to degree {degree}", m.name));
    for x in &w.weights {
        let id = format!("rank-bound[{}]", x.weight);
        report.push(if x.dim <= m.rank() {
            Check::pass(id)
        } else {
            Check::fail(id, Vec::new()).with_detail(format!("dim {} exceeds rank {}", x.dim, m.rank()))
        });
    }
    let mut human = String::new();
    if !w.complete {
        human.push_str("note: L_(1) is not triangular on the filtration; weights may be incomplete\n");
    }
    let spaces: Vec<Value> = w
        .weights
        .iter()
        .map(|x| {
            let basis: Vec<Vec<String>> = x.basis.iter().map(|v| v.iter().map(|p| p.to_string()).collect()).collect();
            let _ = writeln!(human, "weight {}: dim {}", x.weight, x.dim);
            json!({ "weight": x.weight, "dim": x.dim, "basis": basis })
        })
        .collect();
    let data = json!({
        "module": m.name,
        "generator": g,
        "degree_bound": w.degree_bound,
        "complete": w.complete,
        "weights": spaces,
    });
    Ok(Envelope::new(name, s.algebra.name(), &[report], data).with_human(&human))
}

/// `key=value` pairs separated by commas; `a`, `di`, `dj` are required.
pub fn parse_params(text: &str) -> Result<[Scalar; 6]> {
    let keys = ["a", "b", "di", "ci", "dj", "cj"];
    let mut vals: [Option<Scalar>; 6] = Default::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) =
            part.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected key=value, got `{part}`")))?;
        let idx = keys
            .iter()
            .position(|x| *x == k.trim())
            .ok_or_else(|| Error::InvalidParams(format!("unknown parameter `{}`", k.trim())))?;
        if vals[idx].is_some() {
            return Err(Error::DuplicateDefinition(k.trim().to_string()));
        }
        let s: Scalar = v.trim().parse().map_err(|e| Error::InvalidParams(format!("{e}")))?;
        vals[idx] = Some(s);
    }
    for k in ["a", "di", "dj"] {
        if vals[keys.iter().position(|x| *x == k).unwrap()].is_none() {
            return Err(Error::InvalidParams(format!("missing parameter `{k}`")));
        }
    }
    Ok(vals.map(|v| v.unwrap_or_else(Scalar::zero)))
}

type Defect = Box<dyn Fn(&MultiPoly) -> MultiPoly>;

fn solve(name: &str, params: &str, degree: u32, homogeneous: Option<u32>, bcsx: bool) -> Result<Envelope> {
    let [a, b, di, ci, dj, cj] = parse_params(params)?;
    let (sol, defect_of): (SolutionBasis, Defect) = if bcsx {
        if homogeneous.is_some() || !b.is_zero() {
            return Err(Error::InvalidParams("--bcsx takes neither --homogeneous nor b".into()));
        }
        let inst = BcsxInstance {
            a: a.clone(),
            delta_0: di.clone(),
            c_0: ci.clone(),
            delta_t: dj.clone(),
            c_t: cj.clone(),
            degree_bound: degree,
        };
        (bcsx_variant_solver(&inst), Box::new(move |f| inst.defect(f)))
    } else {
        let inst = FuncEqInstance {
            a: a.clone(),
            b: b.clone(),
            delta_i: di.clone(),
            c_i: ci.clone(),
            delta_j: dj.clone(),
            c_j: cj.clone(),
            degree_bound: degree,
            homogeneous_degree: homogeneous,
        };
        (solve_intertwiner(&inst), Box::new(move |f| inst.defect(f)))
    };
    let mut report = Report::new("intertwiner solutions");
    let mut offsets = Vec::new();
    for (k, f) in sol.basis.iter().enumerate() {
        report.push(Check::from_defects(format!("solves[{k}]"), &[defect_of(f)]));
        if bcsx || !(b.is_zero() && ci.is_zero() && cj.is_zero()) {
            continue;
        }
        if let Ok(o) = degree_offset(f, &a, &di, &dj) {
            offsets.push(json!({ "s": o.s, "lambda_degree": o.lambda_degree, "total_degree": o.total_degree,
                "holds": o.holds(), "holds_total": o.holds_total() }));
        }
    }
    let mut human = format!("dimension {}\n", sol.dimension);
    for f in &sol.basis {
        let _ = writeln!(human, "  {f}");
    }
    let data = json!({ "solutions": sol, "degree_offsets": offsets });
    let subject = format!("a={a}, b={b}, di={di}, ci={ci}, dj={dj}, cj={cj}");
    Ok(Envelope::new(name, subject, &[report], data).with_human(&human))
}

/// `x,y,…` or `rationals:LO:HI:NMAX`.
pub fn parse_grid(text: &str) -> Result<Vec<Scalar>> {
    let bad = |what: &str| Error::InvalidParams(format!("bad grid `{text}`: {what}"));
    if let Some(rest) = text.strip_prefix("rationals:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [lo, hi, n] = parts[..] else { return Err(bad("expected rationals:LO:HI:NMAX")) };
        let lo: Scalar = lo.parse().map_err(|_| bad("LO"))?;
        let hi: Scalar = hi.parse().map_err(|_| bad("HI"))?;
        let n: u32 = n.parse().map_err(|_| bad("NMAX"))?;
        if !lo.im().is_zero() || !hi.im().is_zero() {
            return Err(bad("bounds must be real"));
        }
        return Ok(rational_grid(&lo, &hi, n));
    }
    text.split(',').map(|s| s.trim().parse::<Scalar>().map_err(|e| bad(&e.to_string()))).collect()
}

/// `[[d,1],[0,d]]`: rows of polynomials in `d`.
pub fn parse_matrix(text: &str) -> Result<PolyMatrix> {
    let bad = |what: String| Error::InvalidParams(format!("bad matrix: {what}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner =
        compact.strip_prefix("[[").and_then(|s| s.strip_suffix("]]")).ok_or_else(|| bad("expected [[…],…]".into()))?;
    let mut rows = Vec::new();
    for row in inner.split("],[") {
        let mut r = Vec::new();
        for e in row.split(',') {
            let p = parse_poly(e).map_err(Error::from_expr)?;
            r.push(UniPoly::from_multi(&p).ok_or_else(|| bad(format!("`{e}` is not a polynomial in d")))?);
        }
        rows.push(r);
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(bad("rows have different lengths".into()));
    }
    Ok(PolyMatrix::from_rows(rows))
}

fn render(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

fn snf(name: &str, text: &str) -> Result<Envelope> {
    let m = parse_matrix(text)?;
    let s = smith_normal_form(&m);
    let t = torsion_split(&m);
    let mut report = Report::new("smith normal form");
    let flag = |id: &str, ok: bool| if ok { Check::pass(id) } else { Check::fail(id, Vec::new()) };
    report.push(flag("u*m*v=d", s.u.mul(&m).mul(&s.v) == s.d));
    report.push(flag("diagonal", is_diagonal(&s.d)));
    report.push(flag("unimodular[u]", is_unimodular(&s.u)));
    report.push(flag("unimodular[v]", is_unimodular(&s.v)));
    report.push(flag("divisibility", divisibility_chain_holds(&s)));
    let inv: Vec<String> = s.invariants().iter().map(UniPoly::to_string).collect();
    let torsion: Vec<String> = t.torsion.iter().map(UniPoly::to_string).collect();
    let human =
        format!("invariants: [{}]\nfree rank {}, torsion [{}]\n", inv.join(", "), t.free_rank, torsion.join(", "));
    let data = json!({
        "invariants": inv,
        "u": render(&s.u),
        "d": render(&s.d),
        "v": render(&s.v),
        "free_rank": t.free_rank,
        "torsion": torsion,
    });
    Ok(Envelope::new(name, text, &[report], data).with_human(&human))
}
