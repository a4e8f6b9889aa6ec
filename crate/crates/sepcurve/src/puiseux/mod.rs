//! Puiseux expansions of the branches of a plane curve, and certified
//! orders of rational functions along them.

mod local;
mod series;

pub use local::{local_branch_count, local_branches, LocalBranch};
pub use series::Series;

use alloc::vec::Vec;

use num_traits::Signed;

use crate::ground_field::{all_roots, Fe, FieldError, Rational, Tower};
use crate::polynomials::{divides, mobius_transform, BiPoly, Mobius, Mobius1, RatFunc2, Var};

const MAX_REFINEMENTS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    AtZero,
    AtInfinity,
}

/// A branch y = φ(x) of p = 0 over x = 0 or x = ∞.
///
/// The series is stored in the local parameter t, which is x at zero and
/// 1/x at infinity.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    direction: Direction,
    center: Option<Fe>,
    p_loc: BiPoly,
    local: LocalBranch,
    value: Series,
}

impl PuiseuxSeries {
    fn build(direction: Direction, center: Option<Fe>, p_loc: BiPoly, local: LocalBranch) -> PuiseuxSeries {
        let y = local.series();
        let value = match &center {
            Some(c) => Series::constant(c.clone()).add(&y),
            None => y.inverse().expect("branch through y = ∞ with Y ≡ 0"),
        };
        PuiseuxSeries { direction, center, p_loc, local, value }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// y-coordinate of the branch at t = 0; `None` is ∞.
    pub fn center(&self) -> Option<&Fe> {
        self.center.as_ref()
    }

    pub fn ramification(&self) -> u64 {
        self.local.ramification()
    }

    /// φ in the local parameter t.
    pub fn series(&self) -> &Series {
        &self.value
    }

    /// Every missing term of φ(t) has t-exponent at least this; `None` if exact.
    pub fn truncation_order(&self) -> Option<&Rational> {
        self.value.precision()
    }

    /// Terms as powers of x, listed from the dominant one.
    pub fn x_terms(&self) -> Vec<(Rational, Fe)> {
        self.value
            .terms()
            .map(|(e, c)| match self.direction {
                Direction::AtZero => (e.clone(), c.clone()),
                Direction::AtInfinity => (-e, c.clone()),
            })
            .collect()
    }

    /// deg φ at infinity (or −ord at zero); `None` if φ ≡ 0.
    pub fn degree(&self) -> Option<Rational> {
        self.value.ord().map(|o| -o)
    }

    /// The local parameter as a series.
    pub fn x_series(&self) -> Series {
        x_in_t(self.direction)
    }

    pub fn local_branch(&self) -> &LocalBranch {
        &self.local
    }

    /// Same branch with every term of t-exponent below `order` known.
    pub fn refine(&self, order: &Rational) -> PuiseuxSeries {
        let mut want = order.clone();
        let mut cur = self.clone();
        for _ in 0..MAX_REFINEMENTS {
            if cur.value.precision().is_none_or(|p| p >= order) {
                break;
            }
            want = &want + &want.abs() + Rational::from_integer(1.into());
            let local = self.local.refine(&self.p_loc, &want);
            cur = PuiseuxSeries::build(self.direction, self.center.clone(), self.p_loc.clone(), local);
        }
        cur
    }
}

fn x_in_t(d: Direction) -> Series {
    match d {
        Direction::AtZero => Series::monomial(Fe::one(), Rational::from_integer(1.into())),
        Direction::AtInfinity => Series::monomial(Fe::one(), Rational::from_integer((-1).into())),
    }
}

fn x_map(d: Direction) -> Mobius1 {
    match d {
        Direction::AtZero => Mobius1::identity(),
        Direction::AtInfinity => Mobius1::reciprocal(),
    }
}

/// Maps X ↦ s + X for finite s and X ↦ 1/X for s = ∞.
pub fn local_chart(s: Option<&Fe>) -> Mobius1 {
    match s {
        Some(s) => Mobius1::shift(s),
        None => Mobius1::reciprocal(),
    }
}

/// P(x(X), y(Y)) in local coordinates centred at (s1, s2).
pub fn local_poly(p: &BiPoly, s1: Option<&Fe>, s2: Option<&Fe>) -> BiPoly {
    mobius_transform(p, &Mobius { x: local_chart(s1), y: local_chart(s2) })
}

/// q(xs, ys) for series substitutes.
pub fn eval_poly(q: &BiPoly, xs: &Series, ys: &Series) -> Series {
    let mut xp: Vec<Series> = alloc::vec![Series::constant(Fe::one())];
    let mut yp: Vec<Series> = alloc::vec![Series::constant(Fe::one())];
    for _ in 0..q.deg_x() {
        let n = xp.last().unwrap().mul(xs);
        xp.push(n);
    }
    for _ in 0..q.deg_y() {
        let n = yp.last().unwrap().mul(ys);
        yp.push(n);
    }
    let mut acc = Series::zero();
    for (&(i, j), c) in q.terms() {
        acc = acc.add(&xp[i as usize].mul(&yp[j as usize]).scale(c));
    }
    acc
}

/// All deg_y p branches of p over x = 0 (or x = ∞), with terms up to
/// t^`order` known.
pub fn puiseux_expand(
    tower: &mut Tower,
    p: &BiPoly,
    direction: Direction,
    order: &Rational,
) -> Result<Vec<PuiseuxSeries>, FieldError> {
    let px = mobius_transform(p, &Mobius { x: x_map(direction), y: Mobius1::identity() });
    let fiber = px.eval_var(Var::X, &Fe::zero());
    let mut centers: Vec<Option<Fe>> = Vec::new();
    if fiber.deg() > 0 {
        for (r, _) in all_roots(tower, &fiber)? {
            centers.push(Some(r));
        }
    }
    if fiber.deg() < p.deg_y() as isize {
        centers.push(None);
    }
    let mut out = Vec::new();
    for c in centers {
        let p_loc = mobius_transform(&px, &Mobius { x: Mobius1::identity(), y: local_chart(c.as_ref()) });
        for b in local_branches(tower, &p_loc, order)? {
            let s = PuiseuxSeries::build(direction, c.clone(), p_loc.clone(), b);
            out.push(s.refine(order));
        }
    }
    Ok(out)
}

/// p(x, φ) as a series in t; vanishes up to the truncation order.
pub fn residual(p: &BiPoly, phi: &PuiseuxSeries) -> Series {
    eval_poly(p, &phi.x_series(), phi.series())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// y := φ(x), for branches of p.
    YOfX,
    /// x := φ(y), for branches of p with the variables swapped.
    XOfY,
}

/// r along the branch as a quotient of two series in t.
pub fn series_eval_rat(r: &RatFunc2, phi: &PuiseuxSeries, which: Substitution) -> (Series, Series) {
    let (n, d) = match which {
        Substitution::YOfX => (r.num().clone(), r.den().clone()),
        Substitution::XOfY => (r.num().swap(), r.den().swap()),
    };
    let xs = phi.x_series();
    (eval_poly(&n, &xs, phi.series()), eval_poly(&d, &xs, phi.series()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeadingExponent {
    /// Leading x-exponent: the order at zero, the degree at infinity.
    Exponent(Rational),
    IsIdenticallyZero,
    /// The function has a pole along the whole curve, or refinement ran out.
    Undetermined,
}

fn certified_ord(q: &BiPoly, phi: &PuiseuxSeries) -> Option<Rational> {
    let mut cur = phi.clone();
    let xs = phi.x_series();
    for _ in 0..MAX_REFINEMENTS {
        let s = eval_poly(q, &xs, cur.series());
        if let Some(o) = s.ord() {
            return Some(o);
        }
        let p = cur.truncation_order()?.clone();
        cur = cur.refine(&(&p + &p.abs() + Rational::from_integer(1.into())));
    }
    None
}

/// Leading exponent of r(x, φ(x)), refining φ until it is certain.
pub fn leading_exponent_certified(p: &BiPoly, r: &RatFunc2, phi: &PuiseuxSeries) -> LeadingExponent {
    if r.num().is_zero() || divides(p, r.num()) {
        return LeadingExponent::IsIdenticallyZero;
    }
    if divides(p, r.den()) {
        return LeadingExponent::Undetermined;
    }
    match (certified_ord(r.num(), phi), certified_ord(r.den(), phi)) {
        (Some(a), Some(b)) => {
            let o = a - b;
            LeadingExponent::Exponent(match phi.direction {
                Direction::AtZero => o,
                Direction::AtInfinity => -o,
            })
        }
        _ => LeadingExponent::Undetermined,
    }
}

/// X-order of q(X, Y(X)) along a local branch of `p_loc`; `None` if p_loc | q.
pub fn local_order(p_loc: &BiPoly, q: &BiPoly, branch: &LocalBranch) -> Option<Rational> {
    if q.is_zero() || divides(p_loc, q) {
        return None;
    }
    let xs = Series::monomial(Fe::one(), Rational::from_integer(1.into()));
    let mut cur = branch.clone();
    loop {
        let s = eval_poly(q, &xs, &cur.series());
        if let Some(o) = s.ord() {
            return Some(o);
        }
        let p = cur.precision().expect("exact branch with vanishing value").clone();
        cur = cur.refine(p_loc, &(&p + &p + Rational::from_integer(1.into())));
    }
}

/// Local order of a reduced fraction along a branch.
pub fn local_order_rat(p_loc: &BiPoly, r: &RatFunc2, branch: &LocalBranch) -> Option<Rational> {
    let a = local_order(p_loc, r.num(), branch)?;
    let b = local_order(p_loc, r.den(), branch)?;
    Some(a - b)
}
