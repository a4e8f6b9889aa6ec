use core::fmt;

use super::bipoly::{BiPoly, Var};
use super::gcd::{div_exact, gcd};
use crate::ground_field::{Fe, UPoly};

/// Reduced fraction num/den with den monic in graded lex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc2 {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc2 {
    pub fn new(num: BiPoly, den: BiPoly) -> RatFunc2 {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc2::zero();
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = (div_exact(&num, &g).unwrap(), div_exact(&den, &g).unwrap());
        let lc = d.grlex_lc().inv().unwrap();
        n = n.scale(&lc);
        d = d.scale(&lc);
        RatFunc2 { num: n, den: d }
    }

    pub fn poly(p: BiPoly) -> RatFunc2 {
        RatFunc2 { num: p, den: BiPoly::one() }
    }

    pub fn zero() -> RatFunc2 {
        RatFunc2::poly(BiPoly::zero())
    }

    pub fn one() -> RatFunc2 {
        RatFunc2::poly(BiPoly::one())
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, b: &RatFunc2) -> RatFunc2 {
        RatFunc2::new(self.num.mul(&b.den).add(&b.num.mul(&self.den)), self.den.mul(&b.den))
    }

    pub fn sub(&self, b: &RatFunc2) -> RatFunc2 {
        self.add(&b.neg())
    }

    pub fn neg(&self) -> RatFunc2 {
        RatFunc2 { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, b: &RatFunc2) -> RatFunc2 {
        RatFunc2::new(self.num.mul(&b.num), self.den.mul(&b.den))
    }

    pub fn div(&self, b: &RatFunc2) -> RatFunc2 {
        assert!(!b.is_zero(), "division by zero");
        RatFunc2::new(self.num.mul(&b.den), self.den.mul(&b.num))
    }

    pub fn scale(&self, a: &Fe) -> RatFunc2 {
        RatFunc2::new(self.num.scale(a), self.den.clone())
    }

    /// Lies in the local ring at `p`: the denominator is not divisible by `p`.
    pub fn in_local_ring(&self, p: &BiPoly) -> bool {
        super::gcd::div_exact(&self.den, p).is_none() || p.is_constant()
    }

    /// Lies in the ideal generated by `p` in the local ring.
    pub fn in_ideal(&self, p: &BiPoly) -> bool {
        self.in_local_ring(p) && super::gcd::divides(p, &self.num)
    }
}

impl From<BiPoly> for RatFunc2 {
    fn from(p: BiPoly) -> RatFunc2 {
        RatFunc2::poly(p)
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num.scale(&self.den.coeff(0, 0).inv().unwrap()));
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        let bare = self.den.num_terms() == 1 && {
            let (&(i, j), c) = self.den.terms().next().unwrap();
            c.is_one() && (i == 0 || j == 0)
        };
        if bare {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduced univariate fraction in x or y with monic denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniRatFunc {
    var: Var,
    num: UPoly,
    den: UPoly,
}

impl UniRatFunc {
    pub fn new(var: Var, num: UPoly, den: UPoly) -> UniRatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return UniRatFunc { var, num, den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let n = num.div_exact(&g).unwrap();
        let d = den.div_exact(&g).unwrap();
        let lc = d.lc().inv().unwrap();
        UniRatFunc { var, num: n.scale(&lc), den: d.scale(&lc) }
    }

    pub fn poly(var: Var, num: UPoly) -> UniRatFunc {
        UniRatFunc::new(var, num, UPoly::one())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn add(&self, b: &UniRatFunc) -> UniRatFunc {
        assert_eq!(self.var, b.var);
        UniRatFunc::new(self.var, self.num.mul(&b.den).add(&b.num.mul(&self.den)), self.den.mul(&b.den))
    }

    pub fn sub(&self, b: &UniRatFunc) -> UniRatFunc {
        self.add(&b.neg())
    }

    pub fn neg(&self) -> UniRatFunc {
        UniRatFunc { var: self.var, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, b: &UniRatFunc) -> UniRatFunc {
        assert_eq!(self.var, b.var);
        UniRatFunc::new(self.var, self.num.mul(&b.num), self.den.mul(&b.den))
    }

    pub fn to_bivariate(&self) -> RatFunc2 {
        RatFunc2::new(BiPoly::from_upoly(&self.num, self.var), BiPoly::from_upoly(&self.den, self.var))
    }
}

impl fmt::Display for UniRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_bivariate(), f)
    }
}

impl fmt::Debug for UniRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
