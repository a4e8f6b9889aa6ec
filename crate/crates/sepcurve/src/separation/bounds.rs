//! Multiplicity bounds for the poles of f and g, propagated through orbits
//! along the branches of the curve.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::ansatz::AnsatzSpec;
use super::generator::{quasihomog_generator, QuasiHomog};
use crate::curve_orbits::{local_rat, CurvePoint, ExtCoord, PoleVerdict, SpecialPole};
use crate::ground_field::{minimal_polynomial, FieldError, Rational, Tower};
use crate::polynomials::{
    ext_max, leading_part_poly, mobius_transform, mobius_transform_rat, weight_of_poly, weighted_reduce, BiPoly,
    ExtRational, Mobius, RatFunc2, Weight,
};
use crate::puiseux::{local_branches, local_order_rat, local_poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundKind {
    UpperBound,
    ExactValue,
}

/// A bound on a pole order; `None` is −∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: ExtRational,
    pub kind: BoundKind,
}

impl Bound {
    pub fn upper(v: Rational) -> Bound {
        Bound { value: Some(v), kind: BoundKind::UpperBound }
    }

    pub fn exact(v: Rational) -> Bound {
        Bound { value: Some(v), kind: BoundKind::ExactValue }
    }

    pub fn minus_infinity() -> Bound {
        Bound { value: None, kind: BoundKind::UpperBound }
    }

    /// Largest integer pole order allowed, if positive.
    pub fn pole_order(&self) -> Option<u32> {
        let v = self.value.as_ref()?.floor().to_integer();
        u32::try_from(v).ok().filter(|&m| m > 0)
    }

    fn tighter_than(&self, old: &Bound) -> bool {
        match (&self.value, &old.value) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => a < b || (a == b && self.kind == BoundKind::ExactValue && old.kind != self.kind),
        }
    }

    fn max(&self, other: &Bound) -> Bound {
        let kind = if self == other { self.kind } else { BoundKind::UpperBound };
        Bound { value: ext_max(&self.value, &other.value), kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonPositiveDegree;

/// One step of the propagation lemma. With m ≤ `b` at one coordinate and a
/// branch of degree `deg_phi` along which r has degree `deg_r`, the pole order
/// at the other coordinate is deg_r/deg_phi when deg_r > b, and at most
/// b/deg_phi otherwise.
pub fn propagate_bound(b: &ExtRational, deg_phi: &Rational, deg_r: &Rational) -> Result<Bound, NonPositiveDegree> {
    if *deg_phi <= Rational::zero() {
        return Err(NonPositiveDegree);
    }
    Ok(match b {
        Some(b) if deg_r <= b => Bound::upper(b / deg_phi),
        _ => Bound::exact(deg_r / deg_phi),
    })
}

/// Per-point data: (β, D) for each local branch Y ~ X^β, where D is the
/// pole order of r along the branch in units of X.
#[derive(Clone, Debug)]
pub(crate) struct PointData {
    pub point: CurvePoint,
    pub branches: Vec<(Rational, Rational)>,
}

pub(crate) fn point_data(
    tower: &mut Tower,
    p: &BiPoly,
    r: &RatFunc2,
    pt: &CurvePoint,
    order: &Rational,
) -> Result<PointData, FieldError> {
    let p_loc = local_poly(p, pt.x.as_ref(), pt.y.as_ref());
    let bs = local_branches(tower, &p_loc, order)?;
    let r_loc = local_rat(r, pt);
    let branches = bs
        .iter()
        .filter_map(|b| local_order_rat(&p_loc, &r_loc, b).map(|o| (b.order(), -o)))
        .collect();
    Ok(PointData { point: pt.clone(), branches })
}

/// Bounds on m(a, f) keyed by x-coordinate and on m(b, g) keyed by y.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoordBounds {
    pub f: BTreeMap<ExtCoord, Bound>,
    pub g: BTreeMap<ExtCoord, Bound>,
}

impl CoordBounds {
    fn offer(map: &mut BTreeMap<ExtCoord, Bound>, c: &ExtCoord, b: Bound) -> bool {
        match map.get(c) {
            Some(old) if !b.tighter_than(old) => false,
            _ => {
                map.insert(c.clone(), b);
                true
            }
        }
    }

    fn merge_max(&mut self, other: &CoordBounds) {
        for (mine, theirs) in [(&mut self.f, &other.f), (&mut self.g, &other.g)] {
            for (c, b) in theirs {
                let nb = match mine.get(c) {
                    Some(old) => old.max(b),
                    None => b.clone(),
                };
                mine.insert(c.clone(), nb);
            }
        }
    }

    /// Adds the positive integer parts to an ansatz, grouping conjugates.
    pub(crate) fn add_to(&self, spec: &mut AnsatzSpec) {
        for (c, b) in &self.f {
            if let Some(m) = b.pole_order() {
                spec.f.allow(c.as_ref().map(minimal_polynomial).as_ref(), m);
            }
        }
        for (c, b) in &self.g {
            if let Some(m) = b.pole_order() {
                spec.g.allow(c.as_ref().map(minimal_polynomial).as_ref(), m);
            }
        }
    }
}

/// Runs the propagation lemma over `points` until nothing tightens.
pub(crate) fn propagate(points: &[PointData], cb: &mut CoordBounds) {
    let rounds = 8 * points.len() + 8;
    for _ in 0..rounds {
        let mut changed = false;
        for d in points {
            let pt = &d.point;
            if let Some(bf) = cb.f.get(&pt.x).cloned() {
                for (beta, dr) in &d.branches {
                    let nb = propagate_bound(&bf.value, beta, dr).expect("branch of positive order");
                    changed |= CoordBounds::offer(&mut cb.g, &pt.y, nb);
                }
            }
            if let Some(bg) = cb.g.get(&pt.y).cloned() {
                for (beta, dr) in &d.branches {
                    // Swapped roles: x along the branch has degree 1/β in y.
                    let inv = Rational::one() / beta;
                    let nb = propagate_bound(&bg.value, &inv, &(dr / beta)).expect("branch of positive order");
                    changed |= CoordBounds::offer(&mut cb.f, &pt.x, nb);
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Bounds for one orbit, with the value of each point's coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityBoundMap {
    pub entries: BTreeMap<CurvePoint, (Bound, Bound)>,
}

impl MultiplicityBoundMap {
    pub(crate) fn from_coords(points: &[CurvePoint], cb: &CoordBounds) -> MultiplicityBoundMap {
        let get = |m: &BTreeMap<ExtCoord, Bound>, c: &ExtCoord| m.get(c).cloned().unwrap_or_else(Bound::minus_infinity);
        let entries = points.iter().map(|pt| (pt.clone(), (get(&cb.f, &pt.x), get(&cb.g, &pt.y)))).collect();
        MultiplicityBoundMap { entries }
    }

    pub fn f_bound(&self, x: &ExtCoord) -> Option<&Bound> {
        self.entries.iter().find(|(pt, _)| &pt.x == x).map(|(_, b)| &b.0)
    }

    pub fn g_bound(&self, y: &ExtCoord) -> Option<&Bound> {
        self.entries.iter().find(|(pt, _)| &pt.y == y).map(|(_, b)| &b.1)
    }

    pub(crate) fn coords(&self) -> CoordBounds {
        let mut cb = CoordBounds::default();
        for (pt, (bf, bg)) in &self.entries {
            cb.f.insert(pt.x.clone(), bf.clone());
            cb.g.insert(pt.y.clone(), bg.clone());
        }
        cb
    }
}

/// The curve with a base point moved to (∞, ∞), and ω(r) = ω(r_n) − ω(R)
/// for ω = (1, β), where R is the remainder of r_d modulo the moved curve in
/// the ω-weighted order.
pub(crate) struct BaseData {
    pub omega_r: Rational,
    pub moved_p: BiPoly,
}

pub(crate) fn base_data(p: &BiPoly, r: &RatFunc2, base: &CurvePoint, beta: &Rational) -> BaseData {
    let t = Mobius::to_infinity(base.x.as_ref(), base.y.as_ref());
    let moved_p = mobius_transform(p, &t);
    let moved_r = mobius_transform_rat(r, &t);
    let w = Weight::new(Rational::one(), beta.clone());
    let rd = weighted_reduce(moved_r.den(), &moved_p, &w);
    let omega_r = weight_of_poly(moved_r.num(), &w).expect("r is not zero on the curve")
        - weight_of_poly(&rd, &w).expect("denominator vanishes on the curve");
    BaseData { omega_r, moved_p }
}

fn distinct_betas(d: &PointData) -> Vec<Rational> {
    d.branches.iter().map(|(b, _)| b.clone()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Bounds over a complete orbit, trying every point as the image of
/// (∞, ∞) and taking the componentwise maximum.
pub fn bounds_nontrivial(
    tower: &mut Tower,
    p: &BiPoly,
    r: &RatFunc2,
    orbit: &[CurvePoint],
    order: &Rational,
) -> Result<MultiplicityBoundMap, FieldError> {
    let data = orbit.iter().map(|pt| point_data(tower, p, r, pt, order)).collect::<Result<Vec<_>, _>>()?;
    let mut total = CoordBounds::default();
    for d in &data {
        for beta in distinct_betas(d) {
            let base = base_data(p, r, &d.point, &beta);
            let mut cb = CoordBounds::default();
            cb.f.insert(d.point.x.clone(), Bound::upper(base.omega_r.clone()));
            cb.g.insert(d.point.y.clone(), Bound::upper(&base.omega_r / &beta));
            propagate(&data, &mut cb);
            total.merge_max(&cb);
        }
    }
    Ok(MultiplicityBoundMap::from_coords(orbit, &total))
}

/// Where a finite-orbit seed came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedRule {
    /// The leading part has no separated multiple: (ω(r), ω(r)/β).
    TrivialLeadingPart,
    /// Minimal k with ω(r) < k·ω(f_ω), raised by the escalation step.
    MinimalK { k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSeed {
    pub point: CurvePoint,
    pub rule: SeedRule,
}

/// Bounds over a finite orbit when F(p) is trivial. Seeds at each base
/// point follow the leading part of the moved curve; `extra_k` raises every
/// minimal k.
pub fn bounds_trivial_finite(
    tower: &mut Tower,
    p: &BiPoly,
    r: &RatFunc2,
    orbit: &[CurvePoint],
    order: &Rational,
    extra_k: u32,
) -> Result<(MultiplicityBoundMap, Vec<FiniteSeed>), FieldError> {
    let data = orbit.iter().map(|pt| point_data(tower, p, r, pt, order)).collect::<Result<Vec<_>, _>>()?;
    let mut total = CoordBounds::default();
    let mut seeds = Vec::new();
    for d in &data {
        for beta in distinct_betas(d) {
            let base = base_data(p, r, &d.point, &beta);
            let w = Weight::new(Rational::one(), beta.clone());
            let h = leading_part_poly(&base.moved_p, &w).expect("non-zero curve");
            let (sf, sg, rule) = match quasihomog_generator(&h, &w, 1024) {
                QuasiHomog::NonTrivial { dx, dy, .. } if dx > 0 && dy > 0 => {
                    let dxr = Rational::from_integer(dx.into());
                    let k0 = (&base.omega_r / &dxr).floor().to_integer() + 1;
                    let k = u32::try_from(k0).unwrap_or(0).max(1) + extra_k;
                    let kr = Rational::from_integer(k.into());
                    let sf = ext_max(&Some(base.omega_r.clone()), &Some(&kr * &dxr)).unwrap();
                    let sg = ext_max(&Some(&base.omega_r / &beta), &Some(&kr * Rational::from_integer(dy.into()))).unwrap();
                    (sf, sg, SeedRule::MinimalK { k })
                }
                _ => (base.omega_r.clone(), &base.omega_r / &beta, SeedRule::TrivialLeadingPart),
            };
            seeds.push(FiniteSeed { point: d.point.clone(), rule });
            let mut cb = CoordBounds::default();
            cb.f.insert(d.point.x.clone(), Bound::upper(sf));
            cb.g.insert(d.point.y.clone(), Bound::upper(sg));
            propagate(&data, &mut cb);
            total.merge_max(&cb);
        }
    }
    Ok((MultiplicityBoundMap::from_coords(orbit, &total), seeds))
}

/// Bounds over the finite region of an infinite orbit, seeded at special
/// poles: a coordinate known not to be a pole starts at 0.
pub fn bounds_trivial_region(
    tower: &mut Tower,
    p: &BiPoly,
    r: &RatFunc2,
    region: &[CurvePoint],
    specials: &[(CurvePoint, SpecialPole)],
    order: &Rational,
) -> Result<MultiplicityBoundMap, FieldError> {
    let data = region.iter().map(|pt| point_data(tower, p, r, pt, order)).collect::<Result<Vec<_>, _>>()?;
    let mut cb = CoordBounds::default();
    for (pt, v) in specials {
        if v.x == PoleVerdict::NotPoleOfF {
            cb.f.insert(pt.x.clone(), Bound::upper(Rational::zero()));
        }
        if v.y == PoleVerdict::NotPoleOfG {
            cb.g.insert(pt.y.clone(), Bound::upper(Rational::zero()));
        }
    }
    propagate(&data, &mut cb);
    Ok(MultiplicityBoundMap::from_coords(region, &cb))
}
