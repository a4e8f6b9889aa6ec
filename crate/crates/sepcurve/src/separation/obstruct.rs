//! Certificates that F(r, p) is empty.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::curve_orbits::{orbit_expand, poles_on_curve, special_pole_test, CurvePoint, OrbitGraph, PoleVerdict};
use crate::ground_field::Tower;
use crate::polynomials::{convex_hull, edges, outward_normal, BiPoly, RatFunc2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewtonVerdict {
    ImpossiblePolynomialCase,
    Inconclusive,
}

/// Edges of the hull of `pts` whose outward normal has both coordinates
/// positive, as (primitive normal, lattice length).
fn positive_edges(pts: Vec<(i64, i64)>) -> Vec<((i64, i64), i64)> {
    let hull = convex_hull(pts);
    let mut out = Vec::new();
    if hull.len() < 2 {
        return out;
    }
    for e in edges(&hull) {
        let (a, b) = outward_normal(e);
        if a > 0 && b > 0 {
            let g = a.gcd(&b);
            let len = (e.1 .0 - e.0 .0).abs().gcd(&(e.1 .1 - e.0 .1).abs());
            out.push(((a / g, b / g), len));
        }
    }
    out
}

/// Polynomial solutions need Newt(q) + Newt(p) = Newt(f - g - r). The
/// support of f - g - r is the support of r off the axes plus points on the
/// axes, and only the outermost axis points (dx, 0) and (0, dy) reach an
/// edge with positive normal. Every such edge of Newt(p) must then appear in
/// Newt(f - g - r) at least as long. Beyond the bound below one of dx, dy
/// dominates every such face, leaving at most one edge, so the search over
/// (dx, dy) is finite.
pub fn newton_polygon_obstruction(p: &BiPoly, r: &BiPoly) -> NewtonVerdict {
    let need = positive_edges(p.terms().map(|(&(i, j), _)| (i as i64, j as i64)).collect());
    if need.len() <= 1 {
        return NewtonVerdict::Inconclusive;
    }
    let inner: Vec<(i64, i64)> =
        r.terms().filter(|(&(i, j), _)| i > 0 && j > 0).map(|(&(i, j), _)| (i as i64, j as i64)).collect();
    if inner.is_empty() {
        // r is already separated.
        return NewtonVerdict::Inconclusive;
    }
    let mv = inner.iter().map(|&(i, j)| i.max(j)).max().unwrap();
    let mc = need.iter().map(|&((a, b), _)| a.max(b)).max().unwrap();
    let bound = mv * (1 + mc) + 1;
    let choices: Vec<Option<i64>> = core::iter::once(None).chain((0..=bound).map(Some)).collect();
    for dx in &choices {
        for dy in &choices {
            let mut pts = inner.clone();
            pts.extend(dx.map(|d| (d, 0)));
            pts.extend(dy.map(|d| (0, d)));
            let have = positive_edges(pts);
            if need.iter().all(|(n, l)| have.iter().any(|(m, k)| m == n && k >= l)) {
                return NewtonVerdict::Inconclusive;
            }
        }
    }
    NewtonVerdict::ImpossiblePolynomialCase
}

/// A pole of r from which two cycle-free paths avoiding the other poles
/// leave, one through its x-coordinate and one through its y-coordinate,
/// each into a component of at least `depth` points. Components cut off by
/// the orbit budget alone do not count.
pub fn two_paths_in_graph(g: &OrbitGraph, poles: &[CurvePoint], depth: usize) -> Option<CurvePoint> {
    if g.complete {
        return None;
    }
    for pole in poles {
        let others: Vec<CurvePoint> = poles.iter().filter(|q| *q != pole).cloned().collect();
        let v = special_pole_test(g, pole, &others, depth);
        if v.x != PoleVerdict::NotPoleOfF || v.y != PoleVerdict::NotPoleOfG {
            continue;
        }
        let Some(pi) = g.index(pole) else { continue };
        let mut removed: BTreeSet<usize> = others.iter().filter_map(|m| g.index(m)).collect();
        removed.insert(pi);
        let mut sides = [false, false];
        for &(a, b, ax) in &g.edges {
            let w = if a == pi {
                b
            } else if b == pi {
                a
            } else {
                continue;
            };
            if removed.contains(&w) {
                continue;
            }
            if g.component(w, &removed).len() >= depth {
                sides[(ax == crate::polynomials::Var::Y) as usize] = true;
            }
        }
        if sides[0] && sides[1] {
            return Some(pole.clone());
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoPathsVerdict {
    /// Holds under the assumption that components reaching `depth` points
    /// are infinite.
    ProvedEmptyAtDepth { pole: CurvePoint, depth: usize },
    Inconclusive,
}

/// Runs [`two_paths_in_graph`] on the orbit of every pole of r on p = 0.
pub fn two_paths_obstruction(p: &BiPoly, r: &RatFunc2, depth: usize, max_orbit: usize, tower_cap: usize) -> TwoPathsVerdict {
    let mut tower = Tower::new(tower_cap);
    let Ok(poles) = poles_on_curve(&mut tower, r, p) else {
        return TwoPathsVerdict::Inconclusive;
    };
    let mut seen: BTreeSet<CurvePoint> = BTreeSet::new();
    for start in &poles {
        if seen.contains(start) {
            continue;
        }
        let mut t = tower.clone();
        let o = orbit_expand(&mut t, p, start, max_orbit);
        seen.extend(o.points.iter().cloned());
        let inside: Vec<CurvePoint> = poles.iter().filter(|q| o.contains(q)).cloned().collect();
        if let Some(pole) = two_paths_in_graph(&OrbitGraph::from_orbit(&o), &inside, depth) {
            return TwoPathsVerdict::ProvedEmptyAtDepth { pole, depth };
        }
    }
    TwoPathsVerdict::Inconclusive
}
