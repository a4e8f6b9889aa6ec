use super::bipoly::{BiPoly, Var};
use super::ratfunc::RatFunc2;
use crate::ground_field::Fe;

/// t ↦ (a·t + b) / (c·t + d)
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius1 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Mobius1 {
    pub fn identity() -> Mobius1 {
        Mobius1 { a: Fe::one(), b: Fe::zero(), c: Fe::zero(), d: Fe::one() }
    }

    /// t ↦ t + s
    pub fn shift(s: &Fe) -> Mobius1 {
        Mobius1 { a: Fe::one(), b: s.clone(), c: Fe::zero(), d: Fe::one() }
    }

    /// t ↦ 1/t
    pub fn reciprocal() -> Mobius1 {
        Mobius1 { a: Fe::zero(), b: Fe::one(), c: Fe::one(), d: Fe::zero() }
    }

    /// t ↦ s + 1/t, which sends t = ∞ to s; identity for s = ∞.
    pub fn to_infinity(s: Option<&Fe>) -> Mobius1 {
        match s {
            None => Mobius1::identity(),
            Some(s) => Mobius1 { a: s.clone(), b: Fe::one(), c: Fe::one(), d: Fe::zero() },
        }
    }

    pub fn det(&self) -> Fe {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn inverse(&self) -> Mobius1 {
        Mobius1 { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    /// Image of a point of P¹ (None is ∞).
    pub fn apply(&self, t: Option<&Fe>) -> Option<Fe> {
        match t {
            None => {
                if self.c.is_zero() {
                    None
                } else {
                    Some(self.a.div(&self.c).unwrap())
                }
            }
            Some(t) => {
                let den = self.c.mul(t).add(&self.d);
                if den.is_zero() {
                    None
                } else {
                    Some(self.a.mul(t).add(&self.b).div(&den).unwrap())
                }
            }
        }
    }

    fn numer(&self, v: Var) -> BiPoly {
        BiPoly::var(v).scale(&self.a).add(&BiPoly::constant(self.b.clone()))
    }

    fn denom(&self, v: Var) -> BiPoly {
        BiPoly::var(v).scale(&self.c).add(&BiPoly::constant(self.d.clone()))
    }
}

/// A pair of fractional linear maps acting on x and y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub x: Mobius1,
    pub y: Mobius1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularMap;

impl Mobius {
    pub fn identity() -> Mobius {
        Mobius { x: Mobius1::identity(), y: Mobius1::identity() }
    }

    pub fn new(x: Mobius1, y: Mobius1) -> Result<Mobius, SingularMap> {
        if x.det().is_zero() || y.det().is_zero() {
            return Err(SingularMap);
        }
        Ok(Mobius { x, y })
    }

    /// Sends the point (∞, ∞) of the new coordinates to (s1, s2).
    pub fn to_infinity(s1: Option<&Fe>, s2: Option<&Fe>) -> Mobius {
        Mobius { x: Mobius1::to_infinity(s1), y: Mobius1::to_infinity(s2) }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { x: self.x.inverse(), y: self.y.inverse() }
    }
}

/// Substitution without normalization: returns (N, ex, ey) with
/// a(T_x(x), T_y(y)) = N / (denom_x^ex · denom_y^ey).
fn substitute(a: &BiPoly, t: &Mobius) -> (BiPoly, u32, u32) {
    let (dx, dy) = (a.deg_x(), a.deg_y());
    let (nx, ddx) = (t.x.numer(Var::X), t.x.denom(Var::X));
    let (ny, ddy) = (t.y.numer(Var::Y), t.y.denom(Var::Y));
    let pw = |p: &BiPoly, n: u32| -> alloc::vec::Vec<BiPoly> {
        let mut v = alloc::vec![BiPoly::one()];
        for k in 0..n as usize {
            v.push(v[k].mul(p));
        }
        v
    };
    let (pnx, pdx, pny, pdy) = (pw(&nx, dx), pw(&ddx, dx), pw(&ny, dy), pw(&ddy, dy));
    let mut out = BiPoly::zero();
    for (&(i, j), c) in a.terms() {
        let (i, j) = (i as usize, j as usize);
        let term = pnx[i].mul(&pdx[dx as usize - i]).mul(&pny[j].mul(&pdy[dy as usize - j]));
        out = out.add(&term.scale(c));
    }
    (out, dx, dy)
}

/// Numerator of a(T) after clearing denominators, monic in graded lex.
pub fn mobius_transform(a: &BiPoly, t: &Mobius) -> BiPoly {
    substitute(a, t).0.monic()
}

/// The reduced fraction r(T).
pub fn mobius_transform_rat(r: &RatFunc2, t: &Mobius) -> RatFunc2 {
    let (nn, nx, ny) = substitute(r.num(), t);
    let (nd, dx, dy) = substitute(r.den(), t);
    let ddx = t.x.denom(Var::X);
    let ddy = t.y.denom(Var::Y);
    let mut num = nn;
    let mut den = nd;
    if dx >= nx {
        num = num.mul(&ddx.pow(dx - nx));
    } else {
        den = den.mul(&ddx.pow(nx - dx));
    }
    if dy >= ny {
        num = num.mul(&ddy.pow(dy - ny));
    } else {
        den = den.mul(&ddy.pow(ny - dy));
    }
    RatFunc2::new(num, den)
}
