//! Truncated series with rational exponents.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::ground_field::{Fe, Rational};

/// Finite sum of `c·t^e` plus an error term `O(t^precision)`; `precision`
/// `None` means the sum is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    pub(crate) terms: BTreeMap<Rational, Fe>,
    pub(crate) precision: Option<Rational>,
}

impl Series {
    pub fn exact(terms: BTreeMap<Rational, Fe>) -> Series {
        let mut s = Series { terms, precision: None };
        s.clean();
        s
    }

    pub fn zero() -> Series {
        Series::exact(BTreeMap::new())
    }

    pub fn constant(c: Fe) -> Series {
        Series::monomial(c, Rational::zero())
    }

    pub fn monomial(c: Fe, e: Rational) -> Series {
        let mut t = BTreeMap::new();
        t.insert(e, c);
        Series::exact(t)
    }

    pub fn with_precision(mut self, p: Option<Rational>) -> Series {
        self.precision = match (self.precision.take(), p) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(if a < b { a } else { b }),
        };
        self.clean();
        self
    }

    fn clean(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if let Some(p) = &self.precision {
            let p = p.clone();
            self.terms.retain(|e, _| e < &p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Fe)> {
        self.terms.iter()
    }

    pub fn precision(&self) -> Option<&Rational> {
        self.precision.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Order of the first known non-zero term.
    pub fn ord(&self) -> Option<Rational> {
        self.terms.keys().next().cloned()
    }

    pub fn leading(&self) -> Option<(Rational, Fe)> {
        self.terms.iter().next().map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Lower bound on the order of the true series.
    pub fn ord_bound(&self) -> Option<Rational> {
        match (self.ord(), &self.precision) {
            (Some(o), _) => Some(o),
            (None, p) => p.clone(),
        }
    }

    /// Known to be zero as a whole series.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.precision.is_none()
    }

    pub fn add(&self, b: &Series) -> Series {
        let mut t = self.terms.clone();
        for (e, c) in &b.terms {
            let v = t.entry(e.clone()).or_insert_with(Fe::zero);
            *v = v.add(c);
        }
        Series { terms: t, precision: None }
            .with_precision(self.precision.clone())
            .with_precision(b.precision.clone())
    }

    pub fn neg(&self) -> Series {
        Series { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(), precision: self.precision.clone() }
    }

    pub fn sub(&self, b: &Series) -> Series {
        self.add(&b.neg())
    }

    pub fn scale(&self, a: &Fe) -> Series {
        let mut s = Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(a))).collect(),
            precision: self.precision.clone(),
        };
        s.clean();
        s
    }

    pub fn shift(&self, k: &Rational) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            precision: self.precision.as_ref().map(|p| p + k),
        }
    }

    pub fn mul(&self, b: &Series) -> Series {
        let prec = match (self.ord_bound(), b.ord_bound()) {
            (Some(oa), Some(ob)) => {
                let pa = self.precision.as_ref().map(|p| p + &ob);
                let pb = b.precision.as_ref().map(|p| p + &oa);
                match (pa, pb) {
                    (None, x) | (x, None) => x,
                    (Some(x), Some(y)) => Some(if x < y { x } else { y }),
                }
            }
            _ => None,
        };
        let mut t: BTreeMap<Rational, Fe> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &b.terms {
                let e = e1 + e2;
                if prec.as_ref().is_some_and(|p| &e >= p) {
                    continue;
                }
                let v = t.entry(e).or_insert_with(Fe::zero);
                *v = v.add(&c1.mul(c2));
            }
        }
        if self.terms.is_empty() && self.precision.is_none() || b.terms.is_empty() && b.precision.is_none() {
            return Series::zero();
        }
        Series { terms: t, precision: None }.with_precision(prec)
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::constant(Fe::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; `None` if the leading term is unknown.
    pub fn inverse(&self) -> Option<Series> {
        let (e0, c0) = self.leading()?;
        let ci = c0.inv().ok()?;
        // self = c0·t^e0·(1 + u), u of positive order.
        let u = self.shift(&-&e0).scale(&ci).sub(&Series::constant(Fe::one()));
        let rel = self.precision.as_ref().map(|p| p - &e0);
        let mut acc = Series::constant(Fe::one());
        let mut term = Series::constant(Fe::one());
        match (&rel, u.ord_bound()) {
            (_, None) => {}
            (None, Some(_)) if u.terms.is_empty() => {}
            (rel, Some(ou)) => {
                // Exact inverses of non-monomials are infinite; cap the order.
                let cap = rel.clone().unwrap_or_else(|| &ou * Rational::from_integer(16.into()));
                let mut k = 0;
                loop {
                    term = term.mul(&u.neg()).with_precision(Some(cap.clone()));
                    k += 1;
                    if term.ord_bound().is_none_or(|o| o >= cap) || k > 4096 {
                        break;
                    }
                    acc = acc.add(&term);
                }
                acc = acc.with_precision(Some(cap));
            }
        }
        Some(acc.scale(&ci).shift(&-e0))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*t^({})", c, e)?;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(p) = &self.precision {
            write!(f, " + O(t^({}))", p)?;
        }
        Ok(())
    }
}

pub(crate) fn lcm_denoms<'a, I: Iterator<Item = &'a Rational>>(it: I) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    it.fold(1u64, |acc, e| acc.lcm(&e.denom().to_u64().unwrap_or(1)))
}

pub(crate) type Terms = Vec<(Rational, Fe)>;
