//! Points of the curve in P¹×P¹, orbits under the shared-coordinate
//! relation, finite-orbit enumeration and path analysis on orbit graphs.

mod finite;
mod graph;
mod poles;

pub use finite::{finite_orbits, q_iterate, FiniteOrbit, FiniteOrbitConfig, FiniteOrbits, QnBudget};
pub use graph::{marked_region, special_pole_test, OrbitGraph, PoleVerdict, SpecialPole};
pub use poles::{branches_at, local_rat, poles_and_roots_on_curve, poles_on_curve, PolesAndRoots};

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::ground_field::{all_roots, Fe, FieldError, Tower};
use crate::polynomials::{mobius_transform, BiPoly, Mobius, Mobius1, Var};
use crate::puiseux::{local_chart, local_poly};

/// A point of P¹; `None` is ∞.
pub type ExtCoord = Option<Fe>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurvePoint {
    pub x: ExtCoord,
    pub y: ExtCoord,
}

impl CurvePoint {
    pub fn new(x: ExtCoord, y: ExtCoord) -> CurvePoint {
        CurvePoint { x, y }
    }

    pub fn coord(&self, axis: Var) -> &ExtCoord {
        match axis {
            Var::X => &self.x,
            Var::Y => &self.y,
        }
    }
}

pub fn fmt_coord(c: &ExtCoord, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match c {
        None => write!(f, "∞"),
        Some(v) => write!(f, "{}", v),
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_coord(&self.x, f)?;
        write!(f, ", ")?;
        fmt_coord(&self.y, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// True if the point lies on the bi-homogenized curve of `p`.
pub fn on_curve(p: &BiPoly, pt: &CurvePoint) -> bool {
    local_poly(p, pt.x.as_ref(), pt.y.as_ref()).coeff(0, 0).is_zero()
}

/// All curve points whose `axis` coordinate equals `coord`.
pub fn fiber(tower: &mut Tower, p: &BiPoly, coord: &ExtCoord, axis: Var) -> Result<Vec<CurvePoint>, FieldError> {
    let q = match axis {
        Var::X => p.clone(),
        Var::Y => p.swap(),
    };
    let qx = mobius_transform(&q, &Mobius { x: local_chart(coord.as_ref()), y: Mobius1::identity() });
    let u = qx.eval_var(Var::X, &Fe::zero());
    let mut others: Vec<ExtCoord> = Vec::new();
    if u.is_zero() {
        return Ok(Vec::new());
    }
    if u.deg() >= 1 {
        for (r, _) in all_roots(tower, &u)? {
            others.push(Some(r));
        }
    }
    if u.deg() < q.deg_y() as isize {
        others.push(None);
    }
    let mut out: Vec<CurvePoint> = others
        .into_iter()
        .map(|o| match axis {
            Var::X => CurvePoint::new(coord.clone(), o),
            Var::Y => CurvePoint::new(o, coord.clone()),
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// An orbit, possibly cut off by the size budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Points in discovery order.
    pub points: Vec<CurvePoint>,
    pub complete: bool,
    /// Points whose neighbours were not all collected.
    pub frontier: Vec<CurvePoint>,
    /// The expansion stopped because the tower degree budget ran out.
    pub tower_limited: bool,
}

impl Orbit {
    pub fn contains(&self, pt: &CurvePoint) -> bool {
        self.points.contains(pt)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sorted_points(&self) -> Vec<CurvePoint> {
        let mut v = self.points.clone();
        v.sort();
        v
    }
}

/// Breadth-first closure of `start` under shared coordinates, holding at
/// most `max_size` points. Running out of tower budget also ends the
/// expansion early.
pub fn orbit_expand(tower: &mut Tower, p: &BiPoly, start: &CurvePoint, max_size: usize) -> Orbit {
    let mut points = alloc::vec![start.clone()];
    let mut seen: BTreeSet<CurvePoint> = points.iter().cloned().collect();
    let mut expanded: BTreeSet<CurvePoint> = BTreeSet::new();
    let mut queue: VecDeque<CurvePoint> = points.iter().cloned().collect();
    let mut cache: BTreeMap<(bool, ExtCoord), Vec<CurvePoint>> = BTreeMap::new();
    let cut = |points: Vec<CurvePoint>, expanded: &BTreeSet<CurvePoint>, tower_limited: bool| {
        let frontier = points.iter().filter(|q| !expanded.contains(*q)).cloned().collect();
        Orbit { points, complete: false, frontier, tower_limited }
    };
    while let Some(v) = queue.pop_front() {
        let mut nbrs = Vec::new();
        for axis in [Var::X, Var::Y] {
            let key = (axis == Var::X, v.coord(axis).clone());
            if !cache.contains_key(&key) {
                match fiber(tower, p, &key.1, axis) {
                    Ok(f) => cache.insert(key.clone(), f),
                    Err(_) => return cut(points, &expanded, true),
                };
            }
            nbrs.extend(cache[&key].iter().cloned());
        }
        for w in nbrs {
            if seen.contains(&w) {
                continue;
            }
            if points.len() >= max_size {
                return cut(points, &expanded, false);
            }
            seen.insert(w.clone());
            points.push(w.clone());
            queue.push_back(w);
        }
        expanded.insert(v);
    }
    Orbit { points, complete: true, frontier: Vec::new(), tower_limited: false }
}

#[cfg(test)]
mod tests;
