use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::polynomials::{resultant_shared, squarefree_part, RatFunc2};

fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_ints(t)
}

fn ex1_p() -> BiPoly {
    bp(&[(1, 1, 1), (-1, 1, 0), (-1, 0, 1), (-1, 2, 2)])
}

fn ex3_p() -> BiPoly {
    bp(&[(1, 1, 1), (-1, 1, 2), (-1, 2, 1), (-1, 2, 0), (-1, 1, 0), (-1, 0, 2)])
}

fn pt(x: Option<i64>, y: Option<i64>) -> CurvePoint {
    CurvePoint::new(x.map(Fe::int), y.map(Fe::int))
}

fn set(v: &[CurvePoint]) -> BTreeSet<CurvePoint> {
    v.iter().cloned().collect()
}

fn ex3_core() -> BTreeSet<CurvePoint> {
    set(&[
        pt(Some(0), Some(0)),
        pt(Some(-1), Some(0)),
        pt(Some(-1), None),
        pt(None, None),
        pt(None, Some(-1)),
    ])
}

#[test]
fn fibers() {
    let mut t = Tower::default();
    let f = fiber(&mut t, &ex1_p(), &Some(Fe::zero()), Var::X).unwrap();
    assert_eq!(set(&f), set(&[pt(Some(0), Some(0)), pt(Some(0), None)]));
    let par = bp(&[(1, 0, 1), (-1, 2, 0)]);
    assert_eq!(fiber(&mut t, &par, &Some(Fe::int(3)), Var::X).unwrap(), alloc::vec![pt(Some(3), Some(9))]);
    let f = fiber(&mut t, &ex3_p(), &None, Var::X).unwrap();
    assert_eq!(set(&f), set(&[pt(None, None), pt(None, Some(-1))]));
    let f = fiber(&mut t, &ex3_p(), &Some(Fe::int(-1)), Var::Y).unwrap();
    let third = CurvePoint::new(Some(Fe::frac(-1, 3)), Some(Fe::int(-1)));
    assert_eq!(set(&f), set(&[pt(None, Some(-1)), third]));
}

#[test]
fn example1_orbit_is_finite() {
    let mut t = Tower::default();
    let o = orbit_expand(&mut t, &ex1_p(), &pt(Some(0), Some(0)), 10);
    assert!(o.complete);
    assert_eq!(set(&o.points), set(&[pt(Some(0), Some(0)), pt(Some(0), None), pt(None, Some(0))]));
}

#[test]
fn example3_orbit_is_cut_off() {
    let mut t = Tower::default();
    let o = orbit_expand(&mut t, &ex3_p(), &pt(None, None), 8);
    assert!(!o.complete);
    assert_eq!(o.len(), 8);
    assert!(ex3_core().is_subset(&set(&o.points)));
    let o = orbit_expand(&mut t, &ex3_p(), &pt(None, None), 1);
    assert!(!o.complete);
    assert_eq!(o.points, alloc::vec![pt(None, None)]);
    assert_eq!(o.frontier, o.points);
}

/// Sylvester determinant of two polynomials with rational coefficients.
fn sylvester(a: &UPolyQ, b: &UPolyQ) -> Fe {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for i in 0..n {
        let mut r = alloc::vec![Fe::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = alloc::vec![Fe::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    let mut det = Fe::one();
    for c in 0..size {
        let Some(piv) = (c..size).find(|&r| !rows[r][c].is_zero()) else { return Fe::zero() };
        if piv != c {
            rows.swap(piv, c);
            det = det.neg();
        }
        det = det.mul(&rows[c][c]);
        for r in c + 1..size {
            let f = rows[r][c].div(&rows[c][c]).unwrap();
            for k in c..size {
                let v = rows[c][k].mul(&f);
                rows[r][k] = rows[r][k].sub(&v);
            }
        }
    }
    det
}

type UPolyQ = Vec<Fe>;

#[test]
fn q1_matches_sylvester() {
    let p = ex1_p();
    let raw = resultant_shared(&p, &p).unwrap();
    let qs = q_iterate(&p, 1, 4096).unwrap();
    assert_eq!(qs[1].monic(), squarefree_part(&raw).monic());
    for a in -2..=2 {
        for b in -2..=2 {
            let (fa, fb) = (Fe::int(a), Fe::int(b));
            let pa: UPolyQ = p.eval_var(Var::X, &fa).coeffs().to_vec();
            let pb: UPolyQ = p.eval_var(Var::X, &fb).coeffs().to_vec();
            if pa.len() < 3 || pb.len() < 3 {
                continue;
            }
            let s = sylvester(&pa, &pb);
            assert_eq!(raw.eval(&fa, &fb), s);
            assert_eq!(qs[1].eval(&fa, &fb).is_zero(), s.is_zero());
        }
    }
}

#[test]
fn q_degrees() {
    // Generic (2,2) curve: 2, 3, 5, then 9 from a raw resultant of size 26².
    let p = bp(&[(1, 2, 2), (1, 1, 0), (2, 0, 1), (-1, 2, 1), (3, 0, 0), (1, 1, 2)]);
    let qs = q_iterate(&p, 2, 4096).unwrap();
    let degs: Vec<u32> = qs.iter().map(|q| q.deg_y()).collect();
    assert_eq!(degs, alloc::vec![2, 3, 5]);
    assert_eq!(q_iterate(&p, 3, 600).unwrap_err(), QnBudget { level: 3, needed: 676, cap: 600 });
    // The first example has finite orbits: the iteration stalls.
    let qs = q_iterate(&ex1_p(), 3, 4096).unwrap();
    assert_eq!(qs[2].monic(), qs[1].monic());
    assert!(finite_orbits(&ex1_p(), 5, &FiniteOrbitConfig::default()).all_orbits_finite);
}

/// x-coordinates reachable from `x0` in `steps` rounds of x → y → x.
fn reach(t: &mut Tower, p: &BiPoly, x0: &Fe, steps: usize) -> BTreeSet<Fe> {
    let mut cur: BTreeSet<Fe> = [x0.clone()].into_iter().collect();
    for _ in 0..steps {
        let mut next = cur.clone();
        for x in &cur {
            for a in fiber(t, p, &Some(x.clone()), Var::X).unwrap() {
                for b in fiber(t, p, &a.y, Var::Y).unwrap() {
                    next.insert(b.x.expect("orbit reaches x = ∞"));
                }
            }
        }
        cur = next;
    }
    cur
}

#[test]
fn q_n_relates_points_within_2_pow_steps() {
    // x² + y² - 2x - 2y + xy - 1: smooth, no points at infinity over Q.
    let p = bp(&[(1, 2, 0), (1, 0, 2), (-2, 1, 0), (-2, 0, 1), (1, 1, 1), (-1, 0, 0)]);
    let qs = q_iterate(&p, 2, 4096).unwrap();
    for n in 1..=2usize {
        let mut t = Tower::default();
        let x0 = Fe::int(0);
        let want = reach(&mut t, &p, &x0, 1 << (n - 1));
        let roots: BTreeSet<Fe> =
            crate::ground_field::all_roots(&mut t, &qs[n].eval_var(Var::X, &x0)).unwrap().into_iter().map(|r| r.0).collect();
        assert_eq!(roots, want, "n = {}", n);
    }
}

#[test]
fn finite_orbits_example1() {
    let res = finite_orbits(&ex1_p(), 5, &FiniteOrbitConfig::default());
    let target = set(&[pt(Some(0), Some(0)), pt(Some(0), None), pt(None, Some(0))]);
    assert!(res.orbits.iter().any(|o| set(&o.orbit.points) == target));
    for o in &res.orbits {
        assert!(o.orbit.complete && o.orbit.len() <= 5);
    }
}

#[test]
fn finite_orbits_of_a_line() {
    let line = bp(&[(1, 0, 1), (-1, 1, 0)]);
    let res = finite_orbits(&line, 1, &FiniteOrbitConfig::default());
    assert!(res.all_orbits_finite);
    let mut t = Tower::default();
    let o = orbit_expand(&mut t, &line, &pt(Some(0), Some(0)), 4);
    assert!(o.complete);
    assert_eq!(o.points, alloc::vec![pt(Some(0), Some(0))]);
}

#[test]
fn poles_and_roots() {
    let mut t = Tower::default();
    let xy = RatFunc2::poly(bp(&[(1, 1, 1)]));
    let pr = poles_and_roots_on_curve(&mut t, &xy, &ex1_p()).unwrap();
    assert_eq!(set(&pr.poles), set(&[pt(None, Some(0)), pt(Some(0), None)]));
    assert_eq!(set(&pr.roots), set(&[pt(Some(0), Some(0))]));
    let pr = poles_and_roots_on_curve(&mut t, &xy, &ex3_p()).unwrap();
    assert_eq!(set(&pr.poles), set(&[pt(Some(-1), None), pt(None, None), pt(None, Some(-1))]));
    let c = RatFunc2::poly(BiPoly::constant(Fe::int(3)));
    assert_eq!(poles_and_roots_on_curve(&mut t, &c, &ex3_p()).unwrap(), PolesAndRoots::default());
}

fn ex3_poles() -> Vec<CurvePoint> {
    alloc::vec![pt(Some(-1), None), pt(None, None), pt(None, Some(-1))]
}

fn ex3_graph(max: usize) -> OrbitGraph {
    let mut t = Tower::default();
    OrbitGraph::from_orbit(&orbit_expand(&mut t, &ex3_p(), &pt(None, None), max))
}

#[test]
fn example3_marked_region() {
    let g = ex3_graph(24);
    assert_eq!(marked_region(&g, &ex3_poles(), 6), ex3_core());
    let mut t = Tower::default();
    let o = orbit_expand(&mut t, &ex1_p(), &pt(Some(0), Some(0)), 10);
    let g = OrbitGraph::from_orbit(&o);
    assert_eq!(marked_region(&g, &[pt(None, Some(0))], 6), set(&o.points));
}

#[test]
fn example3_special_pole() {
    let g = ex3_graph(24);
    let pole = pt(None, Some(-1));
    let others: Vec<CurvePoint> = ex3_poles().into_iter().filter(|q| q != &pole).collect();
    let v = special_pole_test(&g, &pole, &others, 6);
    assert_eq!(v.y, PoleVerdict::NotPoleOfG);
    assert_eq!(v.x, PoleVerdict::Unknown);
    let mut t = Tower::default();
    let o = orbit_expand(&mut t, &ex1_p(), &pt(Some(0), Some(0)), 10);
    let v = special_pole_test(&OrbitGraph::from_orbit(&o), &pt(Some(0), None), &[], 6);
    assert_eq!((v.x, v.y), (PoleVerdict::Unknown, PoleVerdict::Unknown));
}

#[test]
fn dot_export() {
    let mut t = Tower::default();
    let o = orbit_expand(&mut t, &ex1_p(), &pt(Some(0), Some(0)), 10);
    let dot = OrbitGraph::from_orbit(&o).to_dot();
    assert!(dot.starts_with("graph orbit {"));
    assert_eq!(dot.matches(" -- ").count(), 2);
    assert!(dot.contains("label=\"(0, ∞)\""));
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(-2i64..=2, 9).prop_map(|cs| {
        let mut t = Vec::new();
        for (k, c) in cs.into_iter().enumerate() {
            t.push((c, (k / 3) as u32, (k % 3) as u32));
        }
        BiPoly::from_ints(&t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn orbits_partition_points(p in small_poly(), x0 in -2i64..=2) {
        prop_assume!(p.deg_x() >= 1 && p.deg_y() >= 1);
        prop_assume!(squarefree_part(&p).deg_y() == p.deg_y());
        let mut t = Tower::new(16);
        let Ok(f) = fiber(&mut t, &p, &Some(Fe::int(x0)), Var::X) else { return Ok(()) };
        prop_assume!(!f.is_empty());
        let o = orbit_expand(&mut t, &p, &f[0], 6);
        for q in &o.points {
            prop_assert!(on_curve(&p, q));
        }
        // Starting again from any member gives the same orbit when complete.
        if o.complete {
            for q in &o.points {
                let o2 = orbit_expand(&mut t, &p, q, 6);
                prop_assert_eq!(set(&o2.points), set(&o.points));
            }
        }
    }
}
