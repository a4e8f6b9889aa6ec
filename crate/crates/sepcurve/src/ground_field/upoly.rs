//! Dense univariate polynomials over [`Fe`], lowest coefficient first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::tower::Fe;
use super::FieldError;

pub(crate) fn trim(c: &mut Vec<Fe>) {
    while c.last().is_some_and(Fe::is_zero) {
        c.pop();
    }
}

pub(crate) fn add(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.sub(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.neg(),
            (None, None) => unreachable!(),
        });
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder modulo a monic polynomial.
pub(crate) fn rem_monic(mut a: Vec<Fe>, m: &[Fe]) -> Vec<Fe> {
    let d = m.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let off = a.len() - d;
        for j in 0..d {
            if !m[j].is_zero() {
                a[off + j] = a[off + j].sub(&lead.mul(&m[j]));
            }
        }
    }
    trim(&mut a);
    a
}

pub(crate) fn divrem(a: &[Fe], b: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let inv = b[db].inv().expect("leading coefficient is invertible");
    let mut r = a.to_vec();
    let mut q = vec![Fe::zero(); a.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let c = lead.mul(&inv);
        let off = r.len() - db;
        for j in 0..db {
            if !b[j].is_zero() {
                r[off + j] = r[off + j].sub(&c.mul(&b[j]));
            }
        }
        q[off] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn scale(a: &[Fe], c: &Fe) -> Vec<Fe> {
    let mut out: Vec<Fe> = a.iter().map(|x| x.mul(c)).collect();
    trim(&mut out);
    out
}

/// Extended gcd: (g, s, t) with s·a + t·b = g. `g` is not normalized.
pub(crate) fn xgcd(a: &[Fe], b: &[Fe]) -> (Vec<Fe>, Vec<Fe>, Vec<Fe>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![Fe::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Fe::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UPoly {
    c: Vec<Fe>,
}

impl UPoly {
    pub fn new(mut c: Vec<Fe>) -> UPoly {
        trim(&mut c);
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&n| Fe::int(n)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> UPoly {
        UPoly::constant(Fe::one())
    }

    pub fn constant(a: Fe) -> UPoly {
        UPoly::new(vec![a])
    }

    /// z - a
    pub fn linear(a: &Fe) -> UPoly {
        UPoly::new(vec![a.neg(), Fe::one()])
    }

    pub fn monomial(c: Fe, k: usize) -> UPoly {
        let mut v = vec![Fe::zero(); k];
        v.push(c);
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(Fe::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with the zero polynomial at -1.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Fe {
        self.c.last().cloned().unwrap_or_else(Fe::zero)
    }

    /// Order of vanishing at zero.
    pub fn val(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn max_depth(&self) -> usize {
        self.c.iter().map(Fe::depth).max().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(Fe::is_rational)
    }

    pub fn add(&self, b: &UPoly) -> UPoly {
        UPoly { c: add(&self.c, &b.c) }
    }

    pub fn sub(&self, b: &UPoly) -> UPoly {
        UPoly { c: sub(&self.c, &b.c) }
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(Fe::neg).collect() }
    }

    pub fn mul(&self, b: &UPoly) -> UPoly {
        UPoly { c: mul(&self.c, &b.c) }
    }

    pub fn scale(&self, a: &Fe) -> UPoly {
        UPoly { c: scale(&self.c, a) }
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Fe::zero(); k];
        v.extend(self.c.iter().cloned());
        UPoly { c: v }
    }

    pub fn divrem(&self, b: &UPoly) -> (UPoly, UPoly) {
        let (q, r) = divrem(&self.c, &b.c);
        (UPoly { c: q }, UPoly { c: r })
    }

    pub fn rem(&self, b: &UPoly) -> UPoly {
        self.divrem(b).1
    }

    /// Quotient when `b` divides `self`, otherwise `None`.
    pub fn div_exact(&self, b: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(b);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.lc().inv().expect("non-zero leading coefficient");
        self.scale(&inv)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, b: &UPoly) -> UPoly {
        if self.is_zero() || b.is_zero() {
            return self.add(b).monic();
        }
        if self.deg() >= 1 && b.deg() >= 1 && self.is_rational() && b.is_rational() {
            return super::zfactor::gcd_q(self, b);
        }
        let (g, _, _) = xgcd(&self.c, &b.c);
        UPoly { c: g }.monic()
    }

    /// (g, s, t) with s·self + t·b = g and g monic.
    pub fn xgcd(&self, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (g, s, t) = xgcd(&self.c, &b.c);
        if g.is_empty() {
            return (UPoly::zero(), UPoly { c: s }, UPoly { c: t });
        }
        let inv = g.last().unwrap().inv().unwrap();
        (UPoly { c: scale(&g, &inv) }, UPoly { c: scale(&s, &inv) }, UPoly { c: scale(&t, &inv) })
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&Fe::int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = Fe::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// Composition self(b).
    pub fn compose(&self, b: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(b).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    /// self(z + a)
    pub fn shift(&self, a: &Fe) -> UPoly {
        self.compose(&UPoly::new(vec![a.clone(), Fe::one()]))
    }

    /// z^deg · self(1/z)
    pub fn reversed(&self) -> UPoly {
        let mut v = self.c.clone();
        v.reverse();
        UPoly::new(v)
    }

    /// Yun's square-free decomposition: monic (factor, multiplicity) pairs.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.deg() < 1 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = fp.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            if b.deg() < 1 {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> UPoly {
        if self.deg() < 1 {
            return if self.is_zero() { UPoly::zero() } else { UPoly::one() };
        }
        let f = self.monic();
        f.div_exact(&f.gcd(&f.derivative())).unwrap()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(&self, b: &UPoly) -> Fe {
        if self.is_zero() || b.is_zero() {
            return Fe::zero();
        }
        let (mut a, mut b) = (self.clone(), b.clone());
        let mut acc = Fe::one();
        loop {
            let (da, db) = (a.degree(), b.degree());
            if db == 0 {
                return acc.mul(&b.lc().pow(da as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Fe::zero();
            }
            let dr = r.degree();
            if da % 2 == 1 && db % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.lc().pow((da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// Discriminant up to sign: resultant with the derivative.
    pub fn discriminant_like(&self) -> Fe {
        self.resultant(&self.derivative())
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(xs: &[Fe], ys: &[Fe]) -> Result<UPoly, FieldError> {
        assert_eq!(xs.len(), ys.len());
        // Newton divided differences.
        let n = xs.len();
        let mut coef: Vec<Fe> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = coef[i].sub(&coef[i - 1]);
                let den = xs[i].sub(&xs[i - j]);
                coef[i] = num.div(&den)?;
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = acc.mul(&UPoly::linear(&xs[i])).add(&UPoly::constant(coef[i].clone()));
        }
        Ok(acc)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "({})*z", a)?,
                _ => write!(f, "({})*z^{}", a, i)?,
            }
        }
        Ok(())
    }
}
