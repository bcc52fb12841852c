//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact. Two criteria are known not to reproduce; for
//! those the run prints FAIL and pins the observed outcome instead, so that a
//! change in behaviour still breaks the build.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lieconf::annih::{check_annih_lie, check_correspondence, weight_spaces, AnnihAlgebra, Combination};
use lieconf::conformal::{
    block, check_jacobi, check_skew, current, map_virasoro, vir_semidirect_current, virasoro, CommAlgebra,
    ConformalAlgebra, LieTable,
};
use lieconf::exactpoly::{binomial, parse_poly, MultiPoly, Scalar, UniPoly};
use lieconf::funceq::{
    degree_offset, solution_table, solve_homogeneous, solve_intertwiner, verify_solution_table, CaseKind,
    FuncEqInstance, TableSamples,
};
use lieconf::grading::{check_b_linear, profile_from_table, rational_grid, scan_grid, split_i0_i1, ScanOptions};
use lieconf::repr::{
    action_kernel, check_module, rank_one_theorem_module, rank_one_vir, smith_normal_form, torsion_split,
    ConformalModule, PolyMatrix, TheoremCase,
};

struct Outcome {
    passed: bool,
    /// What the run is pinned to; `false` for the criteria that do not reproduce.
    expected: bool,
    detail: String,
}

fn ok(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, expected: true, detail: detail.into() }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn spec_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

// ---------------------------------------------------------------------------
// independent oracles

type Vec3 = BTreeMap<usize, MultiPoly>;

fn acc(out: &mut Vec3, k: usize, p: &MultiPoly) {
    let e = out.entry(k).or_insert_with(MultiPoly::zero);
    *e = &*e + p;
}

/// `[g_a λ [g_b μ g_c]] − [g_b μ [g_a λ g_c]] − [[g_a λ g_b] λ+μ g_c]`, from
/// sesquilinearity alone; `None` if some entry lies beyond the truncation.
fn jacobi_oracle(alg: &ConformalAlgebra, a: usize, b: usize, c: usize) -> Option<Vec3> {
    let (d, l, m) = (MultiPoly::d(), MultiPoly::l(), MultiPoly::m());
    let d_l = &d + &l;
    let d_m = &d + &m;
    let l_m = &l + &m;
    let neg_l_m = -&l_m;
    let mut out = Vec3::new();
    for (k, p) in alg.entry(b, c).ok()?.iter() {
        for (t, r) in alg.entry(a, k).ok()?.iter() {
            acc(&mut out, t, &(&p.at_dl(&d_l, &m) * r));
        }
    }
    for (k, p) in alg.entry(a, c).ok()?.iter() {
        for (t, r) in alg.entry(b, k).ok()?.iter() {
            acc(&mut out, t, &-&(&p.at_dl(&d_m, &l) * &r.at_dl(&d, &m)));
        }
    }
    for (k, p) in alg.entry(a, b).ok()?.iter() {
        for (t, r) in alg.entry(k, c).ok()?.iter() {
            acc(&mut out, t, &-&(&p.at_dl(&neg_l_m, &l) * &r.at_dl(&d, &l_m)));
        }
    }
    out.retain(|_, p| !p.is_zero());
    Some(out)
}

/// `[g_b λ g_a] + [g_a −λ−∂ g_b]`.
fn skew_oracle(alg: &ConformalAlgebra, a: usize, b: usize) -> Option<Vec3> {
    let (d, l) = (MultiPoly::d(), MultiPoly::l());
    let flipped = &-&l - &d;
    let mut out = Vec3::new();
    for (k, p) in alg.entry(b, a).ok()?.iter() {
        acc(&mut out, k, p);
    }
    for (k, p) in alg.entry(a, b).ok()?.iter() {
        acc(&mut out, k, &p.at_dl(&d, &flipped));
    }
    out.retain(|_, p| !p.is_zero());
    Some(out)
}

/// Library checks and the oracle agree, and both report zero defects.
fn axioms_hold(alg: &ConformalAlgebra) -> (bool, String) {
    let n = alg.rank();
    let (skew, jac) = (check_skew(alg), check_jacobi(alg));
    let mut oracle_zero = true;
    let mut evaluated = 0;
    for a in 0..n {
        for b in 0..n {
            if let Some(x) = skew_oracle(alg, a, b) {
                oracle_zero &= x.is_empty();
            }
            for c in 0..n {
                if let Some(x) = jacobi_oracle(alg, a, b, c) {
                    evaluated += 1;
                    oracle_zero &= x.is_empty();
                }
            }
        }
    }
    let passed = skew.passed() && jac.passed() && oracle_zero;
    (passed, format!("{} ({} Jacobi triples evaluated)", alg.name(), evaluated))
}

/// `(−λ−μ+aλ+b) f(∂,λ+μ) − f(∂+λ,μ)(∂+Δ_iλ+c_i) + (∂+μ+Δ_jλ+c_j) f(∂,μ)`,
/// written out from the equation.
fn funceq_oracle(
    f: &MultiPoly,
    a: &Scalar,
    b: &Scalar,
    di: &Scalar,
    ci: &Scalar,
    dj: &Scalar,
    cj: &Scalar,
) -> MultiPoly {
    let (d, l, m) = (MultiPoly::d(), MultiPoly::l(), MultiPoly::m());
    let c = |x: &Scalar| MultiPoly::constant(x.clone());
    let lead = &(&(&l.scale(a) - &l) - &m) + &c(b);
    let first = &lead * &f.at_dl(&d, &(&l + &m));
    let second = &f.at_dl(&(&d + &l), &m) * &(&(&d + &l.scale(di)) + &c(ci));
    let third = &(&(&(&d + &m) + &l.scale(dj)) + &c(cj)) * &f.at_dl(&d, &m);
    &(&first - &second) + &third
}

fn uni_mul(a: &[Vec<UniPoly>], b: &[Vec<UniPoly>]) -> Vec<Vec<UniPoly>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|c| (0..inner).fold(UniPoly::zero(), |s, k| &s + &(&row[k] * &b[k][c]))).collect())
        .collect()
}

/// Laplace expansion along the first row.
fn uni_det(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = UniPoly::zero();
    for c in 0..n {
        let minor: Vec<Vec<UniPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * &uni_det(&minor);
        out = if c % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

fn rows_of(p: &PolyMatrix) -> Vec<Vec<UniPoly>> {
    (0..p.rows()).map(|r| (0..p.cols()).map(|c| p.get(r, c).clone()).collect()).collect()
}

fn is_nonzero_constant(p: &UniPoly) -> bool {
    p.coeffs().len() == 1 && !p.coeffs()[0].is_zero()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let sl2 = LieTable::sl2();
    let algebras = vec![
        virasoro(),
        current(&sl2).unwrap(),
        vir_semidirect_current(&s(1), &sl2).unwrap(),
        block(&s(1), 8).unwrap(),
        block(&s(2), 8).unwrap(),
        block(&q(1, 2), 8).unwrap(),
        map_virasoro(&CommAlgebra::polynomial_quotient(9), Some(8)).unwrap(),
    ];
    let mut failed = Vec::new();
    for alg in &algebras {
        let (passed, detail) = axioms_hold(alg);
        if !passed {
            failed.push(detail);
        }
    }
    let bad = vir_semidirect_current(&s(0), &sl2).unwrap();
    let jac = check_jacobi(&bad);
    let witness = jac.failures().next().map(|c| format!("{} {:?}", c.id, c.witnesses));
    let n = bad.rank();
    let oracle_nonzero = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .any(|(a, b, c)| jacobi_oracle(&bad, a, b, c).is_some_and(|x| !x.is_empty()));
    let passed = failed.is_empty() && !jac.passed() && oracle_nonzero && witness.is_some();
    ok(
        passed,
        format!(
            "{} algebras pass skew and Jacobi; a = 0 with sl2 fails with {}{}",
            algebras.len() - failed.len(),
            witness.unwrap_or_else(|| "no witness".into()),
            if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
        ),
    )
}

fn criterion_2() -> Outcome {
    let samples = TableSamples::default();
    let v = verify_solution_table(&samples);
    let rows = solution_table();
    let mut enough = true;
    for row in &rows {
        let sols = v.results.iter().filter(|x| x.row == row.id && x.kind == CaseKind::Solution).count();
        let perts = v.results.iter().filter(|x| x.row == row.id && x.kind == CaseKind::Perturbation).count();
        enough &= sols >= 1 && perts >= 5;
    }
    // the stated polynomials against an independently written equation
    let z = Scalar::zero();
    let mut oracle_disagrees = Vec::new();
    for x in v.results.iter().filter(|x| x.kind == CaseKind::Solution) {
        let row = rows.iter().find(|r| r.id == x.row).unwrap();
        let f = solve_homogeneous(&x.a, &x.delta_i, &x.delta_j, row.k);
        for g in &f.basis {
            if !funceq_oracle(g, &x.a, &z, &x.delta_i, &z, &x.delta_j, &z).is_zero() {
                oracle_disagrees.push(x.row.clone());
            }
        }
    }
    let failed: Vec<_> = v.results.iter().filter(|x| !x.passed()).collect();
    let passed = failed.is_empty() && enough && oracle_disagrees.is_empty();
    // pinned: the printed (2)(d) parameters do not solve the equation
    let only_2d = failed.len() == 1
        && failed[0].row == "(2)(d)"
        && failed[0].kind == CaseKind::Solution
        && failed[0].defect_zero == Some(false)
        && failed[0].actual_dim == 0;
    let stated = parse_poly("l*(d^2 + 3*d*l + 2*l^2)").unwrap();
    let oracle_2d = !funceq_oracle(&stated, &s(1), &z, &s(-1), &z, &s(2), &z).is_zero()
        && funceq_oracle(&stated, &s(1), &z, &s(-2), &z, &s(1), &z).is_zero();
    let pinned = !passed && only_2d && oracle_2d && enough && oracle_disagrees.is_empty();
    Outcome {
        passed,
        expected: false,
        detail: format!(
            "{} of {} cases pass; row (2)(d) at a=1, Δi=-1, Δj=2 leaves defect {} (it solves at Δi=-2, Δj=1){}",
            v.results.len() - failed.len(),
            v.results.len(),
            failed.first().and_then(|x| x.defect.clone()).unwrap_or_default(),
            if pinned { "" } else { "; UNEXPECTED OUTCOME" }
        ),
    }
    .pin(pinned)
}

impl Outcome {
    /// For non-reproducing criteria: the pinned observation must hold exactly.
    fn pin(mut self, holds: bool) -> Outcome {
        if !holds {
            self.expected = !self.passed;
        }
        self
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
    if rng.gen_bool(0.3) {
        &re + &Scalar::gaussian(0, 1, rng.gen_range(-4..=4), rng.gen_range(1..=3))
    } else {
        re
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut nonzero = Vec::new();
    let mut instances = 0;
    while instances < 24 {
        let inst = FuncEqInstance {
            a: random_scalar(&mut rng),
            b: random_scalar(&mut rng),
            delta_i: random_scalar(&mut rng),
            c_i: random_scalar(&mut rng),
            delta_j: random_scalar(&mut rng),
            c_j: random_scalar(&mut rng),
            degree_bound: 6,
            homogeneous_degree: None,
        };
        if inst.b == &inst.c_i - &inst.c_j {
            continue;
        }
        instances += 1;
        let dim = solve_intertwiner(&inst).dimension;
        if dim != 0 {
            nonzero.push(format!("a={}, b={}: dim {dim}", inst.a, inst.b));
        }
    }
    // every nonzero homogeneous solution met on a sweep and on the table samples
    let mut solutions = 0;
    let mut total_ok = true;
    let mut lambda_form_misses = BTreeSet::new();
    let grid_a = [s(-1), s(0), q(1, 2), s(1), s(2), s(3), q(5, 3)];
    let grid_di = [s(-2), s(-1), s(0), q(1, 2), s(1), s(2)];
    for a in &grid_a {
        for di in &grid_di {
            for k in 0..=4u32 {
                let dj = &(&(di + &s(k as i64 + 1)) - a) + &Scalar::zero();
                for f in solve_homogeneous(a, di, &dj, k).basis {
                    solutions += 1;
                    let o = degree_offset(&f, a, di, &dj).expect("solver output solves");
                    total_ok &= o.holds_total();
                    if !o.holds() {
                        lambda_form_misses.insert(di.to_string());
                    }
                }
            }
        }
    }
    for x in verify_solution_table(&TableSamples::default()).results {
        for f in solve_homogeneous(&x.a, &x.delta_i, &x.delta_j, x.k).basis {
            solutions += 1;
            let o = degree_offset(&f, &x.a, &x.delta_i, &x.delta_j).unwrap();
            total_ok &= o.holds_total() && o.holds();
        }
    }
    // the deg_λ reading only drops solutions whose λ^k coefficient vanishes, which needs Δ_i = 0
    let misses_only_at_zero = lambda_form_misses.iter().all(|d| d == "0");
    ok(
        nonzero.is_empty() && total_ok && misses_only_at_zero && solutions > 0,
        format!(
            "{instances} instances with b ≠ ci − cj have no solution up to degree 6{}; offset holds on {solutions} solutions (deg_λ form differs only at Δi ∈ {:?})",
            if nonzero.is_empty() { String::new() } else { format!(" except {nonzero:?}") },
            lambda_form_misses
        ),
    )
}

/// `(∂+b)^k`, expanded with binomials.
fn shifted_power(b: &Scalar, k: u32) -> MultiPoly {
    let mut out = MultiPoly::zero();
    let mut bp = Scalar::one();
    for j in 0..=k {
        out = &out + &MultiPoly::d().pow(k - j).scale(&(&binomial(k, j) * &bp));
        bp = &bp * b;
    }
    out
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    for (a, b) in [(s(2), s(0)), (s(1), s(3)), (q(1, 2), s(-1))] {
        let m = rank_one_vir(&a, &b).module;
        let w = weight_spaces(&m, "L", 5).unwrap();
        let want: Vec<Scalar> = (0..=5).map(|k| &a + &s(k)).collect();
        let got: Vec<Scalar> = w.weights.iter().map(|x| x.weight.clone()).collect();
        if got != want || !w.complete {
            problems.push(format!("M({a},{b}) weights {got:?}"));
            continue;
        }
        for (k, x) in w.weights.iter().enumerate() {
            let expect = shifted_power(&b, k as u32);
            if x.dim != 1 || !x.basis[0][0].proportional_to(&expect) {
                problems.push(format!("M({a},{b}) weight {}", x.weight));
            }
        }
    }
    let sum = rank_one_vir(&s(2), &s(0)).module.direct_sum(&rank_one_vir(&s(2), &s(1)).module).unwrap();
    let w = weight_spaces(&sum, "L", 5).unwrap();
    let dims: Vec<usize> = w.weights.iter().map(|x| x.dim).collect();
    if dims != vec![2; 6] {
        problems.push(format!("rank two sum dims {dims:?}"));
    }
    let mixed = rank_one_vir(&s(2), &s(0)).module.direct_sum(&rank_one_vir(&s(3), &s(1)).module).unwrap();
    let mixed_max = weight_spaces(&mixed, "L", 5).unwrap().weights.iter().map(|x| x.dim).max().unwrap_or(0);
    if mixed_max > 2 {
        problems.push(format!("M(2,0)+M(3,1) has a weight of dimension {mixed_max}"));
    }
    ok(
        problems.is_empty(),
        if problems.is_empty() {
            "weights a..a+5 of dimension 1 with eigenvectors (∂+b)^k; rank two sums reach dimension 2 and no more"
                .to_string()
        } else {
            format!("{problems:?}")
        },
    )
}

fn criterion_5() -> Outcome {
    let x = AnnihAlgebra::new(virasoro(), 6);
    let mut wrong = Vec::new();
    let mut compared = 0;
    for mm in 0..=6u32 {
        for n in 0..=6u32 {
            // equal modes bracket to zero, so the result never leaves the depth
            let want = if mm == n {
                Some(Combination::zero())
            } else if mm + n - 1 <= 6 {
                Some(Combination::term((0, mm + n - 1), s(mm as i64 - n as i64)))
            } else {
                None
            };
            let got = x.bracket((0, mm), (0, n));
            match (want, got) {
                (Some(w), Ok(g)) => {
                    compared += 1;
                    if w != g {
                        wrong.push(format!("[L_({mm}), L_({n})]"));
                    }
                }
                (None, Err(_)) => {}
                _ => wrong.push(format!("[L_({mm}), L_({n})] range")),
            }
        }
    }
    let lie = check_annih_lie(&x);
    let modules: Vec<ConformalModule> = vec![
        rank_one_vir(&s(2), &s(0)).module,
        rank_one_vir(&q(1, 2), &s(-1)).module,
        rank_one_vir(&s(1), &s(3)).module.direct_sum(&rank_one_vir(&s(0), &q(2, 3)).module).unwrap(),
    ];
    let corr = modules.iter().all(|m| check_correspondence(&x, m).unwrap().passed());
    ok(
        wrong.is_empty() && lie.passed() && corr,
        format!(
            "{compared} in-range brackets equal (m-n)L_(m+n-1){}; {lie}; correspondence on {} modules {}",
            if wrong.is_empty() { String::new() } else { format!(" except {wrong:?}") },
            modules.len(),
            if corr { "holds" } else { "fails" }
        ),
    )
}

fn criterion_6() -> Outcome {
    let truncated = map_virasoro(&CommAlgebra::polynomial_quotient(5), Some(4)).unwrap();
    let nilpotent = map_virasoro(&CommAlgebra::polynomial_quotient(5), None).unwrap();
    let mut notes = Vec::new();
    let mut passed = true;
    let case2 = |t: &Scalar| TheoremCase::A1Two {
        delta: s(1),
        c: q(1, 3),
        coeffs: (0..5).map(|k| (0..k).fold(Scalar::one(), |acc, _| &acc * t)).collect(),
    };
    for t in [s(0), s(1), q(1, 2)] {
        let m = rank_one_theorem_module(&truncated, &case2(&t)).unwrap();
        let r = check_module(&truncated, &m).unwrap();
        passed &= r.passed() && r.count(lieconf::report::Status::Pass) > 0;
        notes.push(format!("t={t}: {}", r.status()));
    }
    let m0 = rank_one_theorem_module(&nilpotent, &case2(&s(0))).unwrap();
    let r0 = check_module(&nilpotent, &m0).unwrap();
    passed &= r0.passed() && r0.skipped().count() == 0;

    let spec = lieconf::cli::load_spec(&spec_path("a1-one.toml")).unwrap();
    for gamma in [s(0), s(3)] {
        let m = rank_one_theorem_module(
            &spec.algebra,
            &TheoremCase::A1NotTwo { delta: s(1), c: q(1, 2), gamma: gamma.clone() },
        )
        .unwrap();
        let r = check_module(&spec.algebra, &m).unwrap();
        passed &= r.passed();
        notes.push(format!("a1=1, γ={gamma}: {}", r.status()));
    }

    let m1 = rank_one_theorem_module(&truncated, &case2(&s(1))).unwrap();
    let kernel = action_kernel(&truncated, &m1).unwrap();
    let one = truncated.gen_of_grade(0).unwrap();
    let mut contained = 0;
    for k in 1..=4 {
        let mut v = vec![Scalar::zero(); truncated.rank()];
        v[truncated.gen_of_grade(k).unwrap()] = s(1);
        v[one] = s(-1);
        if kernel.contains(&v) {
            contained += 1;
        }
    }
    passed &= contained == 4;
    notes.push(format!("kernel contains {contained}/4 of L⊗(T^k-1)"));
    ok(passed, notes.join("; "))
}

fn criterion_7() -> Outcome {
    let b1 = block(&s(1), 8).unwrap();
    let v9 = map_virasoro(&CommAlgebra::polynomial_quotient(9), Some(8)).unwrap();
    let mut notes = Vec::new();
    let mut passed = true;
    for (alg, a_of) in
        [(&b1, Box::new(|i: u32| s(i as i64 + 2)) as Box<dyn Fn(u32) -> Scalar>), (&v9, Box::new(|_| s(2)))]
    {
        let (i0, i1, split) = split_i0_i1(alg).unwrap();
        let blin = check_b_linear(alg).unwrap();
        let profile = profile_from_table(alg).unwrap();
        let relations = profile.validate();
        let a_match = profile.a_seq.iter().all(|(&i, a)| *a == a_of(i)) && profile.a_seq.len() == 9;
        let b_zero = profile.b_seq.values().all(Scalar::is_zero);
        let all_i0 = i0 == (0..=8).collect::<Vec<u32>>() && i1.is_empty();
        let here =
            split.passed() && blin.passed() && relations.passed() && relations.count(lieconf::report::Status::Pass) > 0;
        passed &= here && a_match && b_zero && all_i0;
        notes.push(format!(
            "{}: split {}, b-linear {}, relations {}",
            alg.name(),
            split.status(),
            blin.status(),
            relations.status()
        ));
    }
    ok(passed, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let grid = rational_grid(&s(1), &s(2), 6);
    let results = scan_grid(&grid, 12, &ScanOptions::default());
    let admissible: BTreeSet<String> = results.iter().filter(|r| r.admissible).map(|r| r.a1.to_string()).collect();
    let mut expected = BTreeSet::new();
    for x in &grid {
        let two = s(2);
        let hit =
            *x == two || (1..=6).any(|p| *x == &two - &q(1, p)) || (1..=11).step_by(2).any(|qq| *x == &two - &q(2, qq));
        if hit {
            expected.insert(x.to_string());
        }
    }
    let passed = admissible == expected;
    // pinned: only the constant and the vanishing-tail sequences survive every Jacobi triple
    let observed: BTreeSet<String> = ["1", "2"].iter().map(|x| x.to_string()).collect();
    let pinned = admissible == observed && !admissible.contains("5/4") && results.len() == grid.len();
    Outcome {
        passed,
        expected: false,
        detail: format!(
            "admissible at N=12: {admissible:?}; expected {expected:?}; missing {:?}",
            expected.difference(&admissible).collect::<Vec<_>>()
        ),
    }
    .pin(pinned)
}

fn random_unipoly(rng: &mut ChaCha8Rng) -> UniPoly {
    if rng.gen_bool(0.25) {
        return UniPoly::zero();
    }
    let deg = rng.gen_range(0..=3);
    UniPoly::new((0..=deg).map(|_| Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut bad = Vec::new();
    for trial in 0..100 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<UniPoly>> = (0..r).map(|_| (0..c).map(|_| random_unipoly(&mut rng)).collect()).collect();
        let m = PolyMatrix::from_rows(rows.clone());
        let f = smith_normal_form(&m);
        let (u, d, v) = (rows_of(&f.u), rows_of(&f.d), rows_of(&f.v));
        let product_ok = uni_mul(&uni_mul(&u, &rows), &v) == d;
        let unimodular = is_nonzero_constant(&uni_det(&u)) && is_nonzero_constant(&uni_det(&v));
        let diag: Vec<UniPoly> = (0..r.min(c)).map(|k| d[k][k].clone()).collect();
        let off_diag_zero = (0..r).all(|i| (0..c).all(|j| i == j || d[i][j].is_zero()));
        let nz = diag.iter().take_while(|p| !p.is_zero()).count();
        let chain = diag[nz..].iter().all(UniPoly::is_zero)
            && diag[..nz].iter().all(|p| p.lead() == Some(&Scalar::one()))
            && diag[..nz].windows(2).all(|w| w[1].div_rem(&w[0]).1.is_zero());
        // square case: the invariants multiply to the monic determinant
        let det_ok = r != c || {
            let det = uni_det(&rows);
            let prod = diag.iter().fold(UniPoly::one(), |acc, p| &acc * p);
            if det.is_zero() {
                prod.is_zero()
            } else {
                prod == det.monic()
            }
        };
        if !(product_ok && unimodular && off_diag_zero && chain && det_ok) {
            bad.push(trial);
        }
    }
    let t = torsion_split(&PolyMatrix::from_rows(vec![
        vec![UniPoly::x(), UniPoly::one()],
        vec![UniPoly::zero(), UniPoly::x()],
    ]));
    let torsion_ok = t.free_rank == 0 && t.torsion == vec![UniPoly::from_ints(&[0, 0, 1])];
    ok(
        bad.is_empty() && torsion_ok,
        format!(
            "{} of 100 random matrices decompose exactly; torsion of [[d,1],[0,d]] is {:?}",
            100 - bad.len(),
            t.torsion.iter().map(UniPoly::to_string).collect::<Vec<_>>()
        ),
    )
}

/// Every CLI command on the shipped specs, JSON written to `dir`.
fn cli_suite(dir: &Path) -> Vec<(String, i32)> {
    let spec = |f: &str| spec_path(f).to_string_lossy().into_owned();
    let runs: Vec<(&str, Vec<String>)> = vec![
        ("block1-algebra", vec!["--spec".into(), spec("block1.toml"), "check-algebra".into()]),
        ("block1-explicit", vec!["--spec".into(), spec("block1-explicit.toml"), "check-algebra".into()]),
        ("semidirect-a0", vec!["--spec".into(), spec("semidirect-a0-sl2.toml"), "check-algebra".into()]),
        ("semidirect-a1", vec!["--spec".into(), spec("semidirect-a1-sl2.toml"), "check-algebra".into()]),
        ("vir-modules", vec!["--spec".into(), spec("virasoro-modules.toml"), "check-module".into()]),
        ("map-vir-module", vec!["--spec".into(), spec("map-virasoro-t.toml"), "check-module".into()]),
        ("a1-one-modules", vec!["--spec".into(), spec("a1-one.toml"), "check-module".into()]),
        (
            "annih",
            vec!["--spec".into(), spec("virasoro-modules.toml"), "annih-check".into(), "--depth".into(), "6".into()],
        ),
        (
            "weights",
            vec![
                "--spec".into(),
                spec("virasoro-modules.toml"),
                "weights".into(),
                "--degree".into(),
                "5".into(),
                "--module".into(),
                "M_sum".into(),
            ],
        ),
        (
            "funceq",
            vec!["solve-funceq".into(), "--params".into(), "a=3,di=1,dj=1".into(), "--degree".into(), "4".into()],
        ),
        ("prop36", vec!["verify-prop36".into(), "--samples".into(), "default".into()]),
        ("scan", vec!["scan-a1".into(), "--grid".into(), "rationals:1:2:6".into(), "--horizon".into(), "12".into()]),
        ("snf", vec!["snf".into(), "--matrix".into(), "[[d,1],[0,d]]".into()]),
    ];
    runs.into_iter()
        .map(|(name, args)| {
            let json = dir.join(format!("{name}.json"));
            let mut argv =
                vec!["lcalg".to_string(), "--quiet".into(), "--json".into(), json.to_string_lossy().into_owned()];
            argv.extend(args);
            let cli = <lieconf::cli::Cli as clap::Parser>::try_parse_from(&argv).unwrap();
            let code = lieconf::cli::run(&cli, &mut std::io::sink());
            (name.to_string(), code)
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let codes1 = cli_suite(d1.path());
    let codes2 = cli_suite(d2.path());
    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap(),
    )
    .unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    let mut differing = Vec::new();
    let mut invalid = Vec::new();
    for (name, _) in &codes1 {
        let a = std::fs::read(d1.path().join(format!("{name}.json"))).unwrap();
        let b = std::fs::read(d2.path().join(format!("{name}.json"))).unwrap();
        if a != b {
            differing.push(name.clone());
        }
        let value: serde_json::Value = serde_json::from_slice(&a).unwrap();
        if !validator.is_valid(&value) {
            invalid.push(name.clone());
        }
    }
    // exit codes are part of the contract: a = 0 with sl2 and the table run fail, the rest pass
    let codes: BTreeMap<String, i32> = codes1.iter().cloned().collect();
    let codes_ok =
        codes1 == codes2 && codes.iter().all(|(k, &c)| c == if k == "semidirect-a0" || k == "prop36" { 1 } else { 0 });
    ok(
        differing.is_empty() && invalid.is_empty() && codes_ok,
        format!(
            "{} reports byte-identical across two runs and schema-valid{}{}{}",
            codes1.len() - differing.len(),
            if differing.is_empty() { String::new() } else { format!("; differing {differing:?}") },
            if invalid.is_empty() { String::new() } else { format!("; invalid {invalid:?}") },
            if codes_ok { String::new() } else { format!("; exit codes {codes:?}") }
        ),
    )
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        (1, "axiom suite", criterion_1),
        (2, "homogeneous solution table", criterion_2),
        (3, "constraint derivations", criterion_3),
        (4, "weight theory", criterion_4),
        (5, "annihilation algebra", criterion_5),
        (6, "rank one modules of the classification", criterion_6),
        (7, "grading suite", criterion_7),
        (8, "a1 scan", criterion_8),
        (9, "Smith normal form", criterion_9),
        (10, "determinism", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let start = std::time::Instant::now();
        let o = f();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {verdict} [{name}] {} ({:.1?})", o.detail, start.elapsed());
        if o.passed != o.expected {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes match the pinned expectations (criteria 2 and 8 do not reproduce)");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
