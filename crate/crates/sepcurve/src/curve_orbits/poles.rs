use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{fiber, CurvePoint};
use crate::ground_field::{all_roots, FieldError, Rational, Tower, UPoly};
use crate::polynomials::{mobius_transform_rat, resultant_in, BiPoly, Mobius, RatFunc2, Var};
use crate::puiseux::{local_branches, local_chart, local_order_rat, local_poly, LocalBranch};

/// The local polynomial at `pt` and its branches through the origin.
pub fn branches_at(tower: &mut Tower, p: &BiPoly, pt: &CurvePoint) -> Result<(BiPoly, Vec<LocalBranch>), FieldError> {
    let p_loc = local_poly(p, pt.x.as_ref(), pt.y.as_ref());
    let bs = local_branches(tower, &p_loc, &Rational::from_integer(2.into()))?;
    Ok((p_loc, bs))
}

/// `r` in the local coordinates at `pt`.
pub fn local_rat(r: &RatFunc2, pt: &CurvePoint) -> RatFunc2 {
    mobius_transform_rat(r, &Mobius { x: local_chart(pt.x.as_ref()), y: local_chart(pt.y.as_ref()) })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolesAndRoots {
    pub poles: Vec<CurvePoint>,
    pub roots: Vec<CurvePoint>,
}

/// Finite curve points where `q` vanishes, plus any points at infinity on
/// the same fibers.
fn common_zeros(tower: &mut Tower, p: &BiPoly, q: &BiPoly) -> Result<Vec<CurvePoint>, FieldError> {
    if q.is_constant() {
        return Ok(Vec::new());
    }
    let (u, axis) = if q.deg_y() == 0 {
        (UPoly::new((0..=q.deg_x()).map(|i| q.coeff(i, 0)).collect()), Var::X)
    } else if q.deg_x() == 0 {
        (UPoly::new((0..=q.deg_y()).map(|j| q.coeff(0, j)).collect()), Var::Y)
    } else {
        let d = resultant_in(Var::Y, p, q).expect("p is not univariate");
        (UPoly::new((0..=d.deg_x()).map(|i| d.coeff(i, 0)).collect()), Var::X)
    };
    let mut out = Vec::new();
    if u.deg() < 1 {
        return Ok(out);
    }
    for (s, _) in all_roots(tower, &u)? {
        out.extend(fiber(tower, p, &Some(s), axis)?);
    }
    Ok(out)
}

/// Poles and roots of `r` on the curve of `p`, from the leading exponents
/// of r along every branch at every candidate point.
pub fn poles_and_roots_on_curve(tower: &mut Tower, r: &RatFunc2, p: &BiPoly) -> Result<PolesAndRoots, FieldError> {
    classify(tower, r, p, true)
}

/// Poles of `r` on the curve, without locating its roots.
pub fn poles_on_curve(tower: &mut Tower, r: &RatFunc2, p: &BiPoly) -> Result<Vec<CurvePoint>, FieldError> {
    Ok(classify(tower, r, p, false)?.poles)
}

fn classify(tower: &mut Tower, r: &RatFunc2, p: &BiPoly, with_roots: bool) -> Result<PolesAndRoots, FieldError> {
    let mut cands: BTreeSet<CurvePoint> = BTreeSet::new();
    if with_roots {
        cands.extend(common_zeros(tower, p, r.num())?);
    }
    cands.extend(common_zeros(tower, p, r.den())?);
    cands.extend(fiber(tower, p, &None, Var::X)?);
    cands.extend(fiber(tower, p, &None, Var::Y)?);
    let mut out = PolesAndRoots::default();
    for pt in cands {
        let (p_loc, bs) = branches_at(tower, p, &pt)?;
        let r_loc = local_rat(r, &pt);
        let mut pole = false;
        let mut root = false;
        for b in &bs {
            match local_order_rat(&p_loc, &r_loc, b) {
                Some(o) if o < Rational::from_integer(0.into()) => pole = true,
                Some(o) if o > Rational::from_integer(0.into()) => root = true,
                _ => {}
            }
        }
        if pole {
            out.poles.push(pt.clone());
        }
        if root {
            out.roots.push(pt);
        }
    }
    Ok(out)
}
