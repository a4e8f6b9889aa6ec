//! Gcd, exact division and square-free parts in K[x][y].

use alloc::vec::Vec;

use super::bipoly::{BiPoly, Var};
use crate::ground_field::{Fe, UPoly};

/// Gcd of the coefficients with respect to `v` (a polynomial in the other
/// variable, monic).
pub fn content_in(a: &BiPoly, v: Var) -> UPoly {
    a.coeffs_in(v).iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

/// Gcd of two polynomials primitive in y, by evaluating x at integers,
/// taking univariate gcds and interpolating. Points where the gcd degree
/// jumps are discarded; the result is checked by exact division.
fn gcd_primitive(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let (la, lb) = (a.lc_in(Var::Y), b.lc_in(Var::Y));
    let lc = la.gcd(&lb);
    let mut need = (a.deg_x().min(b.deg_x()) as usize) + lc.degree() + 1;
    let mut pts: Vec<(Fe, UPoly)> = Vec::new();
    let mut best = usize::MAX;
    let mut k: i64 = 0;
    loop {
        let t = Fe::int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        k += 1;
        if la.eval(&t).is_zero() || lb.eval(&t).is_zero() {
            continue;
        }
        let g = a.eval_var(Var::X, &t).gcd(&b.eval_var(Var::X, &t));
        if g.degree() == 0 {
            return BiPoly::one();
        }
        if g.degree() < best {
            best = g.degree();
            pts.clear();
        }
        if g.degree() > best {
            continue;
        }
        pts.push((t.clone(), g.scale(&lc.eval(&t))));
        if pts.len() < need {
            continue;
        }
        let xs: Vec<Fe> = pts.iter().map(|p| p.0.clone()).collect();
        let cs: Vec<UPoly> = (0..=best)
            .map(|j| {
                let vals: Vec<Fe> = pts.iter().map(|p| p.1.coeff(j)).collect();
                UPoly::interpolate(&xs, &vals).unwrap()
            })
            .collect();
        let c = cs.iter().fold(UPoly::zero(), |g, x| g.gcd(x));
        let cand: Vec<UPoly> = cs.iter().map(|x| x.div_exact(&c).unwrap()).collect();
        let g = BiPoly::from_coeffs_in(&cand, Var::Y);
        if divides(&g, a) && divides(&g, b) {
            return g;
        }
        need *= 2;
    }
}

/// Gcd in K[x,y], normalized monic in graded lex.
pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let ca = content_in(a, Var::Y);
    let cb = content_in(b, Var::Y);
    let c = ca.gcd(&cb);
    let pa = div_exact(a, &BiPoly::from_upoly(&ca, Var::X)).unwrap();
    let pb = div_exact(b, &BiPoly::from_upoly(&cb, Var::X)).unwrap();
    let g = if pa.deg_y() == 0 || pb.deg_y() == 0 { BiPoly::one() } else { gcd_primitive(&pa, &pb) };
    g.mul(&BiPoly::from_upoly(&c, Var::X)).monic()
}

/// Quotient a / b when b divides a.
pub fn div_exact(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    if a.is_zero() {
        return Some(BiPoly::zero());
    }
    let bc = b.coeffs_in(Var::Y);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.coeffs_in(Var::Y);
    if r.len() <= db {
        return None;
    }
    let mut q = alloc::vec![UPoly::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let c = lead.div_exact(lb)?;
        let off = r.len() - db;
        for j in 0..db {
            r[off + j] = r[off + j].sub(&c.mul(&bc[j]));
        }
        q[off] = c;
    }
    r.iter().all(UPoly::is_zero).then(|| BiPoly::from_coeffs_in(&q, Var::Y))
}

pub fn divides(b: &BiPoly, a: &BiPoly) -> bool {
    div_exact(a, b).is_some()
}

/// Product of the distinct irreducible factors, monic in graded lex.
pub fn squarefree_part(a: &BiPoly) -> BiPoly {
    assert!(!a.is_zero(), "square-free part of zero");
    let c = content_in(a, Var::Y);
    let p = div_exact(a, &BiPoly::from_upoly(&c, Var::X)).unwrap();
    let core = if p.deg_y() == 0 {
        BiPoly::one()
    } else {
        div_exact(&p, &gcd(&p, &p.derivative(Var::Y))).unwrap()
    };
    core.mul(&BiPoly::from_upoly(&c.squarefree_part(), Var::X)).monic()
}
