use alloc::vec::Vec;

use num_traits::Zero;

use super::*;
use crate::curve_orbits::{fiber, orbit_expand};
use crate::ground_field::rat;
use crate::polynomials::{divides, m_value, solve_linear, weighted_reduce, LinearSolution, Weight};

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

fn xy() -> RatFunc2 {
    RatFunc2::poly(bp(&[(1, 1, 1)]))
}

fn ux(num: &[i64], den: &[i64]) -> UniRatFunc {
    UniRatFunc::new(Var::X, UPoly::from_ints(num), UPoly::from_ints(den))
}

fn uy(num: &[i64], den: &[i64]) -> UniRatFunc {
    UniRatFunc::new(Var::Y, UPoly::from_ints(num), UPoly::from_ints(den))
}

fn m(s: Option<i64>, f: &UniRatFunc) -> i64 {
    m_value(s.map(Fe::int).as_ref(), f).unwrap()
}

fn ex3_solution() -> SeparationSolution {
    SeparationSolution {
        f: ux(&[-1, -2, -4, 0, -1], &[0, 1, 2, 1]),
        g: uy(&[1, -1, 0, -2, 1], &[0, 0, 1]),
        q: RatFunc2::new(
            bp(&[(1, 0, 0), (1, 1, 0), (-2, 1, 1), (1, 1, 2), (1, 2, 2)]),
            bp(&[(1, 1, 2), (2, 2, 2), (1, 3, 2)]),
        ),
        nullspace_dim: 0,
    }
}

fn ex1_solution() -> SeparationSolution {
    SeparationSolution {
        f: ux(&[-1, 1], &[0, 1]),
        g: uy(&[1], &[0, 1]),
        q: RatFunc2::new(BiPoly::one(), bp(&[(1, 1, 1)])),
        nullspace_dim: 0,
    }
}

#[test]
fn verify_known_certificates() {
    assert!(verify_solution(&ex1_p(), &xy(), &ex1_solution()));
    let mut bad = ex1_solution();
    bad.q = bad.q.add(&RatFunc2::one());
    assert!(!verify_solution(&ex1_p(), &xy(), &bad));
    assert!(verify_solution(&ex3_p(), &xy(), &ex3_solution()));
}

#[test]
fn ansatz_example1() {
    let mut spec = AnsatzSpec::default();
    spec.f.allow(Some(&UPoly::from_ints(&[0, 1])), 1);
    spec.g.allow(Some(&UPoly::from_ints(&[0, 1])), 1);
    let sols = ansatz_solve(&ex1_p(), &xy(), &spec);
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0], ex1_solution());
}

#[test]
fn ansatz_example3() {
    let mut spec = AnsatzSpec::default();
    spec.f.allow(Some(&UPoly::from_ints(&[0, 1])), 1);
    spec.f.allow(Some(&UPoly::from_ints(&[1, 1])), 2);
    spec.f.allow(None, 1);
    spec.g.allow(Some(&UPoly::from_ints(&[0, 1])), 2);
    spec.g.allow(None, 2);
    let sols = ansatz_solve(&ex3_p(), &xy(), &spec);
    assert_eq!(sols.len(), 1);
    let want = ex3_solution();
    assert!(sols[0].f.sub(&want.f).is_constant());
    assert!(sols[0].g.sub(&want.g).is_constant());
    assert_eq!(sols[0].q, want.q);
}

#[test]
fn ansatz_recovers_separated_r() {
    let r = RatFunc2::poly(bp(&[(1, 1, 0), (-1, 0, 1)]));
    let spec = AnsatzSpec {
        f: PoleSpec { finite: Vec::new(), at_infinity: 1 },
        g: PoleSpec { finite: Vec::new(), at_infinity: 1 },
    };
    let sols = ansatz_solve(&ex1_p(), &r, &spec);
    assert_eq!(sols[0].f, ux(&[0, 1], &[1]));
    assert_eq!(sols[0].g, uy(&[0, 1], &[1]));
    assert!(sols[0].q.is_zero());
}

#[test]
fn ansatz_family_differs_by_separated_multiples() {
    let mut spec = AnsatzSpec::default();
    spec.f.allow(Some(&UPoly::from_ints(&[0, 1])), 2);
    spec.f.allow(None, 1);
    spec.g.allow(Some(&UPoly::from_ints(&[0, 1])), 2);
    spec.g.allow(None, 1);
    let p = ex1_p();
    let sols = ansatz_solve(&p, &xy(), &spec);
    assert_eq!(sols.len(), 2);
    assert_eq!(sols[0].nullspace_dim, 1);
    let d = sols[0].f.sub(&sols[1].f).to_bivariate().sub(&sols[0].g.sub(&sols[1].g).to_bivariate());
    assert!(!d.is_zero());
    assert!(divides(&p, d.num()));
}

#[test]
fn generator_of_example1() {
    let p = ex1_p();
    let SeparatedSearch::NonTrivial { generator, q0 } = separated_multiple_search(&p, &SearchBudget::default()) else {
        panic!("expected a separated multiple");
    };
    assert_eq!(m(Some(0), &generator.f), 2);
    assert_eq!(m(None, &generator.f), 1);
    assert_eq!(m(Some(0), &generator.g), 2);
    assert_eq!(m(None, &generator.g), 1);
    let d = generator.f.to_bivariate().sub(&generator.g.to_bivariate());
    assert!(divides(&p, d.num()));
    assert_eq!(q0.mul(&RatFunc2::poly(p)), d);
    // Same field as the pair with numerators 1 - t - t³.
    let paper = ux(&[1, -1, 0, -1], &[0, 0, 1]);
    assert!(generator.f.add(&paper).is_constant());
}

#[test]
fn generator_search_verdicts() {
    let b = SearchBudget::default();
    assert!(matches!(separated_multiple_search(&ex2_p(), &b), SeparatedSearch::Trivial(_)));
    let line = bp(&[(1, 1, 0), (-1, 0, 1)]);
    let SeparatedSearch::NonTrivial { generator, .. } = separated_multiple_search(&line, &b) else {
        panic!("x - y has a separated multiple");
    };
    assert_eq!(generator.f, ux(&[0, 1], &[1]));
    assert_eq!(generator.g, uy(&[0, 1], &[1]));
}

#[test]
fn quasihomogeneous_generators() {
    let h = bp(&[(1, 3, 0), (-1, 0, 3)]);
    let QuasiHomog::NonTrivial { pair, dx, dy } = quasihomog_generator(&h, &Weight::ints(1, 1), 64) else {
        panic!()
    };
    assert_eq!((dx, dy), (3, 3));
    assert_eq!(pair.f, ux(&[0, 0, 0, 1], &[1]));
    assert_eq!(pair.g, uy(&[0, 0, 0, 1], &[1]));
    let QuasiHomog::NonTrivial { pair, .. } = quasihomog_generator(&bp(&[(1, 1, 0), (-1, 0, 1)]), &Weight::ints(1, 1), 64)
    else {
        panic!()
    };
    assert_eq!((pair.f, pair.g), (ux(&[0, 1], &[1]), uy(&[0, 1], &[1])));
    // Opposite-sign weights: 1 + x·y² gives (1/x, -y²).
    let QuasiHomog::NonTrivial { pair, .. } =
        quasihomog_generator(&bp(&[(1, 0, 0), (1, 1, 2)]), &Weight::new(rat(1, 1), rat(-1, 2)), 64)
    else {
        panic!()
    };
    let d = pair.f.to_bivariate().sub(&pair.g.to_bivariate());
    assert!(divides(&bp(&[(1, 0, 0), (1, 1, 2)]), d.num()));
}

/// Dimension of {(f, g, q) : f(x) - g(y) = q·h} with deg f, deg g ≤ n and
/// deg q ≤ n - deg h, by direct linear algebra on coefficients.
fn polynomial_multiples_dim(h: &BiPoly, n: u32) -> usize {
    let dq = n - h.total_deg();
    let mut cols: Vec<BiPoly> = Vec::new();
    for i in 0..=n {
        cols.push(bp(&[(1, i, 0)]));
    }
    for j in 1..=n {
        cols.push(bp(&[(-1, 0, j)]));
    }
    for a in 0..=dq {
        for b in 0..=dq - a {
            cols.push(h.mul_monomial(a, b).neg());
        }
    }
    let mut keys: Vec<(u32, u32)> = cols.iter().flat_map(|c| c.terms().map(|(k, _)| *k).collect::<Vec<_>>()).collect();
    keys.sort();
    keys.dedup();
    let a: Vec<Vec<Fe>> = keys.iter().map(|&(i, j)| cols.iter().map(|c| c.coeff(i, j)).collect()).collect();
    let b = alloc::vec![Fe::zero(); keys.len()];
    match solve_linear(&a, &b) {
        LinearSolution::Affine { nullspace, .. } => nullspace.len(),
        LinearSolution::Inconsistent => unreachable!(),
    }
}

#[test]
fn leading_part_of_example1_is_trivial() {
    let h = bp(&[(-1, 1, 0), (-1, 2, 2)]);
    let verdict = quasihomog_generator(&h, &Weight::new(rat(1, 1), rat(-1, 2)), 256);
    assert_eq!(verdict, QuasiHomog::Trivial);
    // Constants of g are excluded, so only the zero pair survives.
    assert_eq!(polynomial_multiples_dim(&h, 8), 0);
    // The oracle does see x³ - y³ and x⁶ - y⁶.
    assert!(polynomial_multiples_dim(&bp(&[(1, 3, 0), (-1, 0, 3)]), 6) >= 2);
}

#[test]
fn propagation_lemma() {
    let b = propagate_bound(&Some(rat(1, 1)), &rat(1, 1), &rat(2, 1)).unwrap();
    assert_eq!(b, Bound::exact(rat(2, 1)));
    let b = propagate_bound(&Some(rat(0, 1)), &rat(1, 1), &rat(0, 1)).unwrap();
    assert_eq!(b, Bound::upper(rat(0, 1)));
    let b = propagate_bound(&Some(rat(1, 1)), &rat(1, 2), &rat(1, 2)).unwrap();
    assert_eq!(b, Bound::upper(rat(2, 1)));
    assert!(propagate_bound(&None, &rat(0, 1), &rat(1, 1)).is_err());
}

fn ex1_orbit() -> (Tower, Vec<CurvePoint>) {
    let mut t = Tower::default();
    let p = ex1_p();
    let start = fiber(&mut t, &p, &None, Var::X).unwrap()[0].clone();
    let o = orbit_expand(&mut t, &p, &start, 16);
    assert!(o.complete);
    (t, o.points)
}

#[test]
fn example1_bounds() {
    let (mut t, pts) = ex1_orbit();
    let map = bounds_nontrivial(&mut t, &ex1_p(), &xy(), &pts, &rat(8, 1)).unwrap();
    let z = Some(Fe::zero());
    assert_eq!(map.f_bound(&z).unwrap().pole_order(), Some(1));
    assert_eq!(map.g_bound(&z).unwrap().pole_order(), Some(1));
    assert_eq!(map.f_bound(&None).unwrap().pole_order(), None);
    assert_eq!(map.g_bound(&None).unwrap().pole_order(), None);
    // Seeds with (∞, 0) as base point.
    let base = bounds::base_data(&ex1_p(), &xy(), &CurvePoint::new(None, z), &rat(1, 2));
    assert_eq!(base.omega_r, rat(1, 2));
    assert_eq!(&base.omega_r / rat(1, 2), rat(1, 1));
}

#[test]
fn example2_weighted_remainder() {
    let rem = weighted_reduce(&bp(&[(1, 3, 0), (-1, 0, 3)]), &ex2_p(), &Weight::ints(1, 1));
    assert_eq!(rem, bp(&[(-3, 1, 1)]));
}

#[test]
fn newton_obstruction() {
    let p6 = bp(&[(1, 0, 0), (1, 3, 0), (1, 2, 2), (1, 0, 3)]);
    assert_eq!(newton_polygon_obstruction(&p6, &bp(&[(1, 1, 1)])), NewtonVerdict::ImpossiblePolynomialCase);
    assert_eq!(newton_polygon_obstruction(&ex2_p(), &bp(&[(-3, 1, 1)])), NewtonVerdict::Inconclusive);
    let line = bp(&[(1, 1, 0), (-1, 0, 1)]);
    for r in [bp(&[(1, 1, 1)]), bp(&[(2, 3, 1), (1, 0, 2)]), bp(&[(1, 4, 4)])] {
        assert_eq!(newton_polygon_obstruction(&line, &r), NewtonVerdict::Inconclusive);
    }
}

fn q(n: i64) -> Option<Fe> {
    Some(Fe::int(n))
}

/// A pole at (0, 0) with long chains leaving through x = 0 and y = 0.
fn two_chain_graph(len: i64) -> OrbitGraph {
    let mut pts = alloc::vec![CurvePoint::new(q(0), q(0))];
    let (mut x, mut y) = (0, 0);
    for k in 1..=len {
        if k % 2 == 1 {
            y += 1;
        } else {
            x += 1;
        }
        pts.push(CurvePoint::new(q(x), q(y)));
    }
    let (mut x, mut y) = (0, 0);
    for k in 1..=len {
        if k % 2 == 1 {
            x -= 1;
        } else {
            y -= 1;
        }
        pts.push(CurvePoint::new(q(x), q(y)));
    }
    let frontier = alloc::vec![pts[len as usize].clone(), pts[2 * len as usize].clone()];
    OrbitGraph::from_orbit(&Orbit { points: pts, complete: false, frontier, tower_limited: false })
}

#[test]
fn two_paths_fixture() {
    let g = two_chain_graph(12);
    let pole = CurvePoint::new(q(0), q(0));
    assert_eq!(two_paths_in_graph(&g, &[pole.clone()], 8), Some(pole.clone()));
    // Too short for the requested depth.
    assert_eq!(two_paths_in_graph(&g, &[pole.clone()], 20), None);
    // A second pole blocking one chain.
    let block = CurvePoint::new(q(-1), q(0));
    assert_eq!(two_paths_in_graph(&g, &[pole, block], 8), None);
}

#[test]
fn two_paths_inconclusive_on_examples() {
    assert_eq!(two_paths_obstruction(&ex3_p(), &xy(), 8, 64, 64), TwoPathsVerdict::Inconclusive);
    // Finite orbits only.
    assert_eq!(two_paths_obstruction(&ex2_p(), &xy(), 8, 64, 64), TwoPathsVerdict::Inconclusive);
}

#[test]
fn irreducibility_certificates() {
    assert!(certify_irreducible(&ex1_p()));
    assert!(certify_irreducible(&ex3_p()));
    assert!(certify_irreducible(&bp(&[(1, 2, 0), (1, 0, 2)])));
    assert!(!certify_irreducible(&bp(&[(1, 2, 0), (-1, 0, 2)])));
    assert!(!certify_irreducible(&bp(&[(1, 1, 1), (1, 1, 0)])));
}

fn run(p: &BiPoly, r: &RatFunc2, mode: Mode) -> DecoupleReport {
    decouple(p, r, &DecoupleConfig { budgets: Budgets::default(), mode }).unwrap()
}

#[test]
fn decouple_example1() {
    let rep = run(&ex1_p(), &xy(), Mode::Auto);
    assert_eq!(rep.diagnostics.route, Route::NonTrivial);
    let DecoupleOutcome::Solution(s) = rep.outcome else { panic!("{:?}", rep) };
    assert_eq!(s, ex1_solution());
}

#[test]
fn decouple_example2() {
    let r = RatFunc2::poly(bp(&[(-3, 1, 1)]));
    let rep = run(&ex2_p(), &r, Mode::Auto);
    assert_eq!(rep.diagnostics.route, Route::Trivial);
    let DecoupleOutcome::Solution(s) = rep.outcome else { panic!("{:?}", rep) };
    assert_eq!(s.q, RatFunc2::one());
    assert_eq!(s.f, ux(&[0, 0, 0, 1], &[1]));
    assert_eq!(s.g, uy(&[0, 0, 0, 1], &[1]));
    let ks: Vec<u32> = rep
        .diagnostics
        .assumptions
        .iter()
        .filter_map(|a| if let Assumption::MinimalK { k, .. } = a { Some(*k) } else { None })
        .collect();
    assert_eq!(ks, alloc::vec![1]);
}

#[test]
fn decouple_example3() {
    let rep = run(&ex3_p(), &xy(), Mode::Auto);
    assert_eq!(rep.diagnostics.route, Route::Trivial);
    let DecoupleOutcome::Solution(s) = rep.outcome else { panic!("{:?}", rep) };
    assert_eq!((m(Some(0), &s.f), m(Some(-1), &s.f), m(None, &s.f)), (1, 2, 1));
    assert_eq!((m(Some(0), &s.g), m(None, &s.g)), (2, 2));
    assert_eq!(s.q, ex3_solution().q);
}

#[test]
fn decouple_polynomial_obstruction() {
    let p6 = bp(&[(1, 0, 0), (1, 3, 0), (1, 2, 2), (1, 0, 3)]);
    let rep = run(&p6, &xy(), Mode::PolynomialOnly);
    assert_eq!(rep.outcome, DecoupleOutcome::ProvedEmpty(EmptyReason::NewtonPolygon));
}

#[test]
fn decouple_validation() {
    let p = ex1_p();
    let cfg = DecoupleConfig::default();
    assert_eq!(decouple(&bp(&[(1, 2, 0), (-1, 0, 2)]), &xy(), &cfg).unwrap_err(), InputError::NotIrreducible);
    assert_eq!(decouple(&bp(&[(1, 2, 0), (1, 0, 0)]), &xy(), &cfg).unwrap_err(), InputError::Univariate);
    let r = RatFunc2::new(BiPoly::one(), p.clone());
    assert_eq!(decouple(&p, &r, &cfg).unwrap().outcome, DecoupleOutcome::ProvedEmpty(EmptyReason::NotInLocalRing));
    let r = RatFunc2::new(p.mul(&bp(&[(1, 1, 0)])), bp(&[(1, 0, 1)]));
    let DecoupleOutcome::Solution(s) = decouple(&p, &r, &cfg).unwrap().outcome else { panic!() };
    assert!(s.f.is_zero() && s.g.is_zero());
    let DecoupleOutcome::Solution(s) = decouple(&p, &RatFunc2::poly(BiPoly::constant(Fe::int(5))), &cfg).unwrap().outcome
    else {
        panic!()
    };
    assert_eq!(s.f, ux(&[5], &[1]));
}

#[test]
fn tiny_orbit_budget_exhausts() {
    let cfg = DecoupleConfig { budgets: Budgets { max_orbit: 1, ..Budgets::default() }, mode: Mode::Auto };
    let rep = decouple(&ex3_p(), &xy(), &cfg).unwrap();
    assert_eq!(rep.outcome, DecoupleOutcome::BudgetExhausted);
}

#[test]
fn zero_pole_order_is_none() {
    assert_eq!(Bound::upper(rat(1, 2)).pole_order(), None);
    assert_eq!(Bound::upper(rat(5, 2)).pole_order(), Some(2));
    assert!(Bound::minus_infinity().value.is_none());
    assert!(rat(0, 1).is_zero());
}
