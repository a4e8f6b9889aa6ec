//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sepcurve::curve_orbits::{fiber, finite_orbits, orbit_expand, q_iterate, CurvePoint, ExtCoord, FiniteOrbitConfig};
use sepcurve::ground_field::{adjoin_root, all_roots, factor_univariate, minimal_polynomial, rat, Fe, Tower, UPoly};
use sepcurve::polynomials::{
    divides, m_value, resultant_in, weighted_reduce, BiPoly, RatFunc2, UniRatFunc, Var, Weight,
};
use sepcurve::puiseux::{puiseux_expand, residual, Direction};
use sepcurve::separation::{
    certify_irreducible, decouple, newton_polygon_obstruction, separated_multiple_search, verify_solution, Assumption,
    Budgets, DecoupleConfig, DecoupleOutcome, DecoupleReport, EmptyReason, Mode, NewtonVerdict, SearchBudget,
    SeparatedSearch, SeparationSolution,
};

type Check = Result<String, String>;

fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_ints(t)
}

fn ex1_p() -> BiPoly {
    bp(&[(1, 1, 1), (-1, 1, 0), (-1, 0, 1), (-1, 2, 2)])
}

fn ex2_p() -> BiPoly {
    bp(&[(1, 3, 0), (3, 1, 1), (-1, 0, 3)])
}

fn ex3_p() -> BiPoly {
    bp(&[(1, 1, 1), (-1, 1, 2), (-1, 2, 1), (-1, 2, 0), (-1, 1, 0), (-1, 0, 2)])
}

fn p6() -> BiPoly {
    bp(&[(1, 0, 0), (1, 3, 0), (1, 2, 2), (1, 0, 3)])
}

fn xy() -> RatFunc2 {
    RatFunc2::poly(bp(&[(1, 1, 1)]))
}

fn ux(num: &[i64], den: &[i64]) -> UniRatFunc {
    UniRatFunc::new(Var::X, UPoly::from_ints(num), UPoly::from_ints(den))
}

fn uy(num: &[i64], den: &[i64]) -> UniRatFunc {
    UniRatFunc::new(Var::Y, UPoly::from_ints(num), UPoly::from_ints(den))
}

fn m(s: Option<i64>, f: &UniRatFunc) -> Option<i64> {
    m_value(s.map(Fe::int).as_ref(), f)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(p: &BiPoly, r: &RatFunc2, mode: Mode, budgets: Budgets) -> DecoupleReport {
    decouple(p, r, &DecoupleConfig { budgets, mode }).expect("valid input")
}

fn solution(rep: &DecoupleReport) -> Result<&SeparationSolution, String> {
    match &rep.outcome {
        DecoupleOutcome::Solution(s) => Ok(s),
        o => Err(format!("expected a solution, got {:?}", o)),
    }
}

fn criterion1() -> Check {
    let (p, r) = (ex1_p(), xy());
    let rep = run(&p, &r, Mode::Auto, Budgets::default());
    let s = solution(&rep)?;
    ensure(verify_solution(&p, &r, s), "certificate does not verify")?;
    let (f, g) = (ux(&[-1, 1], &[0, 1]), uy(&[1], &[0, 1]));
    let q = RatFunc2::new(BiPoly::one(), bp(&[(1, 1, 1)]));
    ensure(s.f == f && s.g == g && s.q == q, format!("got f = {}, g = {}, q = {}", s.f, s.g, s.q))?;
    let lhs = r.add(&q.mul(&RatFunc2::poly(p)));
    ensure(lhs == f.to_bivariate().sub(&g.to_bivariate()), "identity fails")?;
    Ok(format!("r + (1/(xy))·p = {} - {}", s.f, s.g))
}

fn criterion2() -> Check {
    let rep = run(&ex1_p(), &xy(), Mode::Auto, Budgets::default());
    let map = rep.diagnostics.bounds.first().ok_or("no bound map recorded")?;
    let z: ExtCoord = Some(Fe::zero());
    let order = |b: Option<&sepcurve::separation::Bound>| b.and_then(|b| b.pole_order()).unwrap_or(0);
    let got = (order(map.f_bound(&z)), order(map.g_bound(&z)), order(map.f_bound(&None)), order(map.g_bound(&None)));
    ensure(got == (1, 1, 0, 0), format!("(m(0,f), m(0,g), m(∞,f), m(∞,g)) = {:?}", got))?;
    Ok("m(0,f) = 1, m(0,g) = 1, m(∞,f) = 0, m(∞,g) = 0".into())
}

fn criterion3() -> Check {
    let p = ex1_p();
    let SeparatedSearch::NonTrivial { generator, .. } = separated_multiple_search(&p, &SearchBudget::default()) else {
        return Err("no generator found".into());
    };
    let f = &generator.f;
    ensure(f.den() == &UPoly::from_ints(&[0, 0, 1]), format!("f = {} has poles besides x = 0 (order 2)", f))?;
    ensure(m(None, f) == Some(1), format!("m(∞, f) = {:?}", m(None, f)))?;
    let d = f.to_bivariate().sub(&generator.g.to_bivariate());
    ensure(divides(&p, d.num()), "p does not divide the numerator of f - g")?;
    Ok(format!("generator f = {}, g = {}", generator.f, generator.g))
}

fn criterion4() -> Check {
    let p = ex2_p();
    let r = RatFunc2::poly(bp(&[(-3, 1, 1)]));
    let rep = run(&p, &r, Mode::Auto, Budgets::default());
    let s = solution(&rep)?;
    ensure(s.q == RatFunc2::one(), format!("q = {}", s.q))?;
    let d = s.f.to_bivariate().sub(&s.g.to_bivariate());
    ensure(d == RatFunc2::poly(bp(&[(1, 3, 0), (-1, 0, 3)])), format!("f - g = {}", d))?;
    let ks: Vec<u32> =
        rep.diagnostics.assumptions.iter().filter_map(|a| if let Assumption::MinimalK { k, .. } = a { Some(*k) } else { None }).collect();
    ensure(ks == vec![1], format!("minimal k values {:?}", ks))?;
    let rem = weighted_reduce(&bp(&[(1, 3, 0), (-1, 0, 3)]), &p, &Weight::ints(1, 1));
    ensure(rem == bp(&[(-3, 1, 1)]), format!("remainder {}", rem))?;
    Ok("q = 1, f - g = x^3 - y^3, k = 1, remainder -3*x*y".into())
}

fn criterion5() -> Check {
    let (p, r) = (ex3_p(), xy());
    let rep = run(&p, &r, Mode::Auto, Budgets::default());
    let s = solution(&rep)?;
    ensure(verify_solution(&p, &r, s), "certificate does not verify")?;
    let fo = (m(Some(0), &s.f), m(Some(-1), &s.f), m(None, &s.f));
    let go = (m(Some(0), &s.g), m(None, &s.g));
    ensure(fo == (Some(1), Some(2), Some(1)), format!("f orders {:?}", fo))?;
    ensure(go == (Some(2), Some(2)), format!("g orders {:?}", go))?;
    let known = SeparationSolution {
        f: ux(&[-1, -2, -4, 0, -1], &[0, 1, 2, 1]),
        g: uy(&[1, -1, 0, -2, 1], &[0, 0, 1]),
        q: RatFunc2::new(
            bp(&[(1, 0, 0), (1, 1, 0), (-2, 1, 1), (1, 1, 2), (1, 2, 2)]),
            bp(&[(1, 1, 2), (2, 2, 2), (1, 3, 2)]),
        ),
        nullspace_dim: 0,
    };
    ensure(verify_solution(&p, &r, &known), "expected triple does not verify")?;
    Ok("orders (1, 2, 1) and (2, 2); expected triple verifies".into())
}

fn criterion6() -> Check {
    let p = p6();
    let v = newton_polygon_obstruction(&p, &bp(&[(1, 1, 1)]));
    ensure(v == NewtonVerdict::ImpossiblePolynomialCase, format!("verdict {:?}", v))?;
    let rep = run(&p, &xy(), Mode::PolynomialOnly, Budgets::default());
    ensure(rep.outcome == DecoupleOutcome::ProvedEmpty(EmptyReason::NewtonPolygon), format!("{:?}", rep.outcome))?;
    Ok("ImpossiblePolynomialCase; polynomial-only run is ProvedEmpty".into())
}

fn random_irreducible_22(rng: &mut StdRng) -> BiPoly {
    loop {
        let mut p = BiPoly::zero();
        for i in 0..3 {
            for j in 0..3 {
                p.add_term(i, j, &Fe::int(rng.gen_range(-2..=2)));
            }
        }
        if p.deg_x() == 2 && p.deg_y() == 2 && certify_irreducible(&p) {
            return p;
        }
    }
}

fn as_upoly_x(d: &BiPoly) -> UPoly {
    UPoly::new((0..=d.deg_x()).map(|i| d.coeff(i, 0)).collect())
}

type OrbitKey = BTreeSet<(Option<UPoly>, Option<UPoly>)>;

fn orbit_key(points: &[CurvePoint]) -> OrbitKey {
    points.iter().map(|pt| (pt.x.as_ref().map(minimal_polynomial), pt.y.as_ref().map(minimal_polynomial))).collect()
}

/// Orbits of at most `n` points found by expanding from every point over
/// every root of the leading coefficients and discriminants of Q_0..Q_level
/// (x side) and of p with the variables exchanged (y side), without pruning.
fn brute_force_orbits(p: &BiPoly, n: usize, level: usize) -> Result<BTreeSet<OrbitKey>, String> {
    let qs = q_iterate(p, level, 1 << 16).map_err(|e| format!("{:?}", e))?;
    let mut xs: Vec<UPoly> = Vec::new();
    for q in &qs {
        xs.push(q.lc_in(Var::Y));
        if let Ok(d) = resultant_in(Var::Y, q, &q.derivative(Var::Y)) {
            xs.push(as_upoly_x(&d));
        }
    }
    let sw = p.swap();
    let ys = vec![sw.lc_in(Var::Y), as_upoly_x(&resultant_in(Var::Y, &sw, &sw.derivative(Var::Y)).unwrap())];
    let mut found = BTreeSet::new();
    let mut expand_over = |polys: &[UPoly], axis: Var| -> Result<(), String> {
        let mut classes: BTreeSet<Option<UPoly>> = [None].into_iter().collect();
        for u in polys.iter().filter(|u| u.deg() >= 1) {
            for (h, _) in factor_univariate(&Tower::default(), u) {
                classes.insert(Some(h.monic()));
            }
        }
        for c in classes {
            let mut t = Tower::new(256);
            let a = match &c {
                None => None,
                Some(h) => Some(adjoin_root(&mut t, h).map_err(|e| e.to_string())?),
            };
            for start in fiber(&mut t, p, &a, axis).map_err(|e| e.to_string())? {
                let o = orbit_expand(&mut t, p, &start, n);
                if o.tower_limited {
                    return Err(format!("tower limit from {}", start));
                }
                if o.complete {
                    found.insert(orbit_key(&o.points));
                }
            }
        }
        Ok(())
    };
    expand_over(&xs, Var::X)?;
    expand_over(&ys, Var::Y)?;
    Ok(found)
}

/// x-coordinates reached from x0 in `steps` rounds of x → y → x, or `None`
/// if a point at infinity is met.
fn reach(t: &mut Tower, p: &BiPoly, x0: &Fe, steps: usize) -> Option<BTreeSet<Fe>> {
    let mut cur: BTreeSet<Fe> = [x0.clone()].into_iter().collect();
    for _ in 0..steps {
        let mut next = cur.clone();
        for x in &cur {
            for a in fiber(t, p, &Some(x.clone()), Var::X).ok()? {
                for b in fiber(t, p, &Some(a.y.clone()?), Var::Y).ok()? {
                    next.insert(b.x?);
                }
            }
        }
        cur = next;
    }
    Some(cur)
}

/// Roots of Q_n(x0, ·) are the x-coordinates within 2^{n-1} rounds of x0.
fn lemma_holds(p: &BiPoly, n: usize) -> Result<(), String> {
    let qs = q_iterate(p, n, 1 << 16).map_err(|e| format!("{:?}", e))?;
    for x0 in [0i64, 1, -1, 2, -2, 3, -3, 5] {
        let x0 = Fe::int(x0);
        let mut t = Tower::new(512);
        let Some(want) = reach(&mut t, p, &x0, 1 << (n - 1)) else { continue };
        let Ok(roots) = all_roots(&mut t, &qs[n].eval_var(Var::X, &x0)) else { continue };
        let got: BTreeSet<Fe> = roots.into_iter().map(|r| r.0).collect();
        ensure(got == want, format!("n = {}, x0 = {}: {} roots vs {} reached", n, x0, got.len(), want.len()))?;
        return Ok(());
    }
    Err(format!("no usable base point for n = {} on {}", n, p))
}

fn criterion7() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut instances = vec![ex1_p(), ex3_p()];
    while instances.len() < 22 {
        instances.push(random_irreducible_22(&mut rng));
    }
    let (mut nonempty, mut checked) = (0, 0);
    for p in &instances {
        let res = finite_orbits(p, 4, &FiniteOrbitConfig::default());
        let got: BTreeSet<OrbitKey> = res.orbits.iter().map(|o| orbit_key(&o.orbit.points)).collect();
        let want = brute_force_orbits(p, 4, res.q_level)?;
        ensure(got == want, format!("{}: finite_orbits {:?} vs brute force {:?}", p, got, want))?;
        nonempty += !got.is_empty() as usize;
        for n in 1..=2 {
            lemma_holds(p, n)?;
        }
        checked += 1;
    }
    Ok(format!("{} curves agree ({} with small orbits); Q_1, Q_2 reachability holds", checked, nonempty))
}

fn laurent(rng: &mut StdRng, var: Var, no_constant: bool) -> UniRatFunc {
    let mut num = Vec::new();
    for k in 0..=4 {
        let c = if no_constant && k == 2 { 0 } else { rng.gen_range(-3..=3) };
        num.push(c);
    }
    // Exponents -2..=2 over x^2.
    UniRatFunc::new(var, UPoly::from_ints(&num), UPoly::from_ints(&[0, 0, 1]))
}

fn criterion8() -> Check {
    let p = ex1_p();
    let mut rng = StdRng::seed_from_u64(8);
    let mut runs = 0;
    while runs < 50 {
        let f = laurent(&mut rng, Var::X, false);
        let g = laurent(&mut rng, Var::Y, true);
        let mut q = BiPoly::zero();
        for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            q.add_term(i, j, &Fe::int(rng.gen_range(-2..=2)));
        }
        let r = f.to_bivariate().sub(&g.to_bivariate()).sub(&RatFunc2::poly(q.mul(&p)));
        let rep = run(&p, &r, Mode::Auto, Budgets::default());
        let s = solution(&rep).map_err(|e| format!("r = {}: {}", r, e))?;
        ensure(verify_solution(&p, &r, s), format!("r = {}: certificate does not verify", r))?;
        runs += 1;
    }
    Ok(format!("{} random instances solved and verified", runs))
}

fn test_matrix_curves() -> Vec<BiPoly> {
    let mut rng = StdRng::seed_from_u64(9);
    let mut v = vec![ex1_p(), ex2_p(), ex3_p(), p6()];
    for _ in 0..8 {
        v.push(random_irreducible_22(&mut rng));
    }
    v
}

fn criterion9() -> Check {
    let mut branches = 0;
    for p in test_matrix_curves() {
        for dir in [Direction::AtZero, Direction::AtInfinity] {
            let mut t = Tower::new(256);
            let bs = puiseux_expand(&mut t, &p, dir, &rat(6, 1)).map_err(|e| format!("{}: {}", p, e))?;
            ensure(bs.len() == p.deg_y() as usize, format!("{} {:?}: {} branches", p, dir, bs.len()))?;
            for b in &bs {
                let res = residual(&p, b);
                ensure(res.terms().count() == 0, format!("{} {:?}: residual {:?}", p, dir, res))?;
            }
            branches += bs.len();
        }
    }
    Ok(format!("{} branches with vanishing residuals and full counts", branches))
}

fn criterion10() -> Check {
    let rf = |n: BiPoly, d: BiPoly| RatFunc2::new(n, d);
    let instances = vec![
        (ex1_p(), xy()),
        (ex1_p(), rf(bp(&[(1, 0, 0), (1, 1, 1)]), bp(&[(1, 1, 0)]))),
        (ex1_p(), RatFunc2::poly(bp(&[(1, 1, 2)]))),
        (ex2_p(), RatFunc2::poly(bp(&[(-3, 1, 1)]))),
        (ex2_p(), RatFunc2::poly(bp(&[(1, 1, 0)]))),
        (ex3_p(), xy()),
        (ex3_p(), rf(BiPoly::one(), bp(&[(1, 1, 0), (1, 0, 0)]))),
        (p6(), xy()),
        (p6(), RatFunc2::poly(bp(&[(1, 1, 0), (1, 0, 1)]))),
    ];
    let budget_settings = vec![
        Budgets::default(),
        Budgets { max_orbit: 4, ..Budgets::default() },
        Budgets { path_depth: 2, ..Budgets::default() },
        Budgets { k_cap: 1, finite_orbit_n: 2, ..Budgets::default() },
        Budgets { tower_degree_cap: 4, truncation: Some(2), ..Budgets::default() },
    ];
    let modes = [Mode::Auto, Mode::NonTrivial, Mode::Trivial, Mode::PolynomialOnly];
    let mut total = 0;
    for (p, r) in &instances {
        let mut seen: BTreeMap<&'static str, usize> = BTreeMap::new();
        for b in &budget_settings {
            for mode in modes {
                let Ok(rep) = decouple(p, r, &DecoupleConfig { budgets: b.clone(), mode }) else { continue };
                let kind = match &rep.outcome {
                    DecoupleOutcome::Solution(s) => {
                        ensure(verify_solution(p, r, s), format!("{} / {}: unverified solution", p, r))?;
                        "solution"
                    }
                    DecoupleOutcome::ProvedEmpty(_) => "empty",
                    DecoupleOutcome::BudgetExhausted => "budget",
                };
                *seen.entry(kind).or_default() += 1;
                total += 1;
            }
        }
        ensure(
            !(seen.contains_key("solution") && seen.contains_key("empty")),
            format!("p = {}, r = {}: both a solution and an emptiness proof", p, r),
        )?;
    }
    Ok(format!("{} runs over {} instances, no contradictions", total, instances.len()))
}

fn criterion11() -> Check {
    let specs = [
        ("x*y - x - y - x^2*y^2", "x*y"),
        ("x^3 + 3*x*y - y^3", "-3*x*y"),
        ("x*y - x*y^2 - x^2*y - x^2 - x - y^2", "x*y"),
    ];
    for (p, r) in specs {
        let mut outs = Vec::new();
        for _ in 0..3 {
            let out = Command::new(env!("CARGO_BIN_EXE_sepcurve"))
                .args([p, r, "--json"])
                .env_clear()
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.code() == Some(0), format!("{}: exit {:?}", p, out.status.code()))?;
            outs.push(out.stdout);
        }
        ensure(outs.windows(2).all(|w| w[0] == w[1]), format!("{}: outputs differ", p))?;
    }
    Ok("three runs each of criteria 1, 4 and 5 give identical JSON".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("Example 1 reproduction", criterion1),
        ("Example 1 bounds", criterion2),
        ("Example 1 separated multiple", criterion3),
        ("Example 2 reproduction", criterion4),
        ("Example 3 reproduction", criterion5),
        ("Newton polygon emptiness", criterion6),
        ("finite orbits vs brute force", criterion7),
        ("round-trip property suite", criterion8),
        ("Puiseux residuals", criterion9),
        ("negative consistency", criterion10),
        ("CLI determinism", criterion11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {}: {}", i + 1, name, detail),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {}", i + 1, name, detail);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
