use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::bipoly::BiPoly;
use super::ratfunc::RatFunc2;
use crate::ground_field::{Fe, Rational};

/// Monomial weight (wx, wy), kept both as given and as a coprime integer pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    wx: Rational,
    wy: Rational,
    ix: i64,
    iy: i64,
}

impl Weight {
    pub fn new(wx: Rational, wy: Rational) -> Weight {
        assert!(!(wx.is_zero() && wy.is_zero()), "zero weight");
        let l = wx.denom().lcm(wy.denom());
        let a = (wx.numer() * (&l / wx.denom())).to_i64().expect("weight fits in i64");
        let b = (wy.numer() * (&l / wy.denom())).to_i64().expect("weight fits in i64");
        let g = a.gcd(&b);
        Weight { wx, wy, ix: a / g, iy: b / g }
    }

    pub fn ints(a: i64, b: i64) -> Weight {
        Weight::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    pub fn wx(&self) -> &Rational {
        &self.wx
    }

    pub fn wy(&self) -> &Rational {
        &self.wy
    }

    /// Normalized coprime integer pair.
    pub fn normalized(&self) -> (i64, i64) {
        (self.ix, self.iy)
    }

    pub fn of_monomial(&self, i: u32, j: u32) -> Rational {
        &self.wx * Rational::from_integer(i.into()) + &self.wy * Rational::from_integer(j.into())
    }

    fn int_of(&self, i: u32, j: u32) -> i64 {
        self.ix * i as i64 + self.iy * j as i64
    }

    pub fn is_positive(&self) -> bool {
        self.wx.is_positive() && self.wy.is_positive()
    }
}

/// Maximal weight of a term of `a`.
pub fn weight_of_poly(a: &BiPoly, w: &Weight) -> Option<Rational> {
    a.terms().map(|(&(i, j), _)| w.of_monomial(i, j)).max()
}

/// ω(r) = ω(num) - ω(den).
pub fn weight_of(r: &RatFunc2, w: &Weight) -> Option<Rational> {
    Some(weight_of_poly(r.num(), w)? - weight_of_poly(r.den(), w)?)
}

/// Sum of the maximal-weight terms.
pub fn leading_part_poly(a: &BiPoly, w: &Weight) -> Option<BiPoly> {
    let top = a.terms().map(|(&(i, j), _)| w.int_of(i, j)).max()?;
    Some(BiPoly::from_terms(
        a.terms().filter(|(&(i, j), _)| w.int_of(i, j) == top).map(|(k, c)| (*k, c.clone())),
    ))
}

/// Quotient of the leading parts of numerator and denominator, not re-reduced.
pub fn leading_part(r: &RatFunc2, w: &Weight) -> Option<(BiPoly, BiPoly)> {
    Some((leading_part_poly(r.num(), w)?, leading_part_poly(r.den(), w)?))
}

pub fn is_quasi_homogeneous(a: &BiPoly, w: &Weight) -> bool {
    leading_part_poly(a, w).is_some_and(|l| &l == a)
}

/// Division remainder of `a` by `p` in ω-weighted degree order with ties
/// broken lexicographically (x > y). Also returns the quotient.
pub fn weighted_divide(a: &BiPoly, p: &BiPoly, w: &Weight) -> (BiPoly, BiPoly) {
    assert!(w.is_positive(), "weighted reduction needs a positive weight");
    assert!(!p.is_zero(), "reduction by zero");
    let key = |i: u32, j: u32| (w.int_of(i, j), i);
    let (lt, lc) = p
        .terms()
        .max_by(|a, b| key(a.0 .0, a.0 .1).cmp(&key(b.0 .0, b.0 .1)))
        .map(|(k, c)| (*k, c.clone()))
        .unwrap();
    let lc_inv = lc.inv().unwrap();
    let p_rest: Vec<((u32, u32), Fe)> =
        p.terms().filter(|(k, _)| **k != lt).map(|(k, c)| (*k, c.clone())).collect();
    let mut work: BTreeMap<(i64, u32), (u32, Fe)> = BTreeMap::new();
    let insert = |work: &mut BTreeMap<(i64, u32), (u32, Fe)>, i: u32, j: u32, c: Fe| {
        let e = work.entry(key(i, j)).or_insert_with(|| (j, Fe::zero()));
        e.1 = e.1.add(&c);
        if e.1.is_zero() {
            work.remove(&key(i, j));
        }
    };
    for (&(i, j), c) in a.terms() {
        insert(&mut work, i, j, c.clone());
    }
    let mut rem = BiPoly::zero();
    let mut quo = BiPoly::zero();
    while let Some(((_, i), (j, c))) = work.pop_last() {
        if i >= lt.0 && j >= lt.1 {
            let (di, dj) = (i - lt.0, j - lt.1);
            let m = c.mul(&lc_inv);
            for ((pi, pj), pc) in &p_rest {
                insert(&mut work, pi + di, pj + dj, m.mul(pc).neg());
            }
            quo.add_term(di, dj, &m);
        } else {
            rem.add_term(i, j, &c);
        }
    }
    (quo, rem)
}

pub fn weighted_reduce(a: &BiPoly, p: &BiPoly, w: &Weight) -> BiPoly {
    weighted_divide(a, p, w).1
}
