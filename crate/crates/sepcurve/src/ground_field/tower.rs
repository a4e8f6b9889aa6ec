//! Towers of simple algebraic extensions over Q.
//!
//! A [`Level`] stores a monic minimal polynomial whose coefficients live in
//! the level below. An [`Fe`] is either a rational or a residue vector over
//! its level, always stored at the lowest level that can hold it, so that
//! structural equality is field equality.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::upoly;
use super::{FieldError, Rational};

pub struct Level {
    parent: Option<Rc<Level>>,
    minpoly: Vec<Fe>,
    depth: usize,
    degree_over_q: usize,
}

impl Level {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn degree_over_q(&self) -> usize {
        self.degree_over_q
    }

    pub fn parent(&self) -> Option<&Rc<Level>> {
        self.parent.as_ref()
    }

    /// Monic minimal polynomial, lowest coefficient first.
    pub fn minpoly(&self) -> &[Fe] {
        &self.minpoly
    }

    pub fn symbol(&self) -> String {
        format!("a{}", self.depth)
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level({}, ", self.symbol())?;
        for (i, c) in self.minpoly.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Element of Q or of some level of a tower.
#[derive(Clone)]
pub enum Fe {
    Q(Rational),
    /// Residue vector of length at least 2 over the level's parent field.
    A(Rc<Level>, Vec<Fe>),
}

/// Append-only chain of levels. Cloning is cheap and shares the chain.
#[derive(Clone, Debug)]
pub struct Tower {
    top: Option<Rc<Level>>,
    degree_cap: usize,
}

pub const DEFAULT_DEGREE_CAP: usize = 64;

impl Default for Tower {
    fn default() -> Self {
        Tower::new(DEFAULT_DEGREE_CAP)
    }
}

impl Tower {
    pub fn new(degree_cap: usize) -> Self {
        Tower { top: None, degree_cap }
    }

    pub fn top(&self) -> Option<&Rc<Level>> {
        self.top.as_ref()
    }

    pub fn depth(&self) -> usize {
        self.top.as_ref().map_or(0, |l| l.depth)
    }

    pub fn degree_over_q(&self) -> usize {
        self.top.as_ref().map_or(1, |l| l.degree_over_q)
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Levels from the bottom up.
    pub fn levels(&self) -> Vec<Rc<Level>> {
        let mut out = Vec::new();
        let mut cur = self.top.clone();
        while let Some(l) = cur {
            cur = l.parent.clone();
            out.push(l);
        }
        out.reverse();
        out
    }

    /// Pushes a level without checking irreducibility. Callers go through
    /// `factor::adjoin_root`, which certifies the polynomial first.
    pub(crate) fn push_level(&mut self, minpoly: Vec<Fe>) -> Result<Fe, FieldError> {
        let d = minpoly.len() - 1;
        assert!(d >= 2, "levels have degree at least two");
        debug_assert!(minpoly[d].is_one());
        let total = self.degree_over_q() * d;
        if total > self.degree_cap {
            return Err(FieldError::DegreeBudget { needed: total, cap: self.degree_cap });
        }
        let level = Rc::new(Level {
            parent: self.top.clone(),
            minpoly,
            depth: self.depth() + 1,
            degree_over_q: total,
        });
        self.top = Some(level.clone());
        Ok(Fe::A(level, vec![Fe::zero(), Fe::one()]))
    }
}

fn level_of(a: &Fe) -> Option<&Rc<Level>> {
    match a {
        Fe::Q(_) => None,
        Fe::A(l, _) => Some(l),
    }
}

/// Deeper of two levels; panics if they do not lie on one chain.
fn join<'a>(a: Option<&'a Rc<Level>>, b: Option<&'a Rc<Level>>) -> Option<&'a Rc<Level>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let (lo, hi) = if x.depth <= y.depth { (x, y) } else { (y, x) };
            let mut cur = hi;
            while cur.depth > lo.depth {
                cur = cur.parent.as_ref().expect("broken tower chain");
            }
            assert!(Rc::ptr_eq(cur, lo), "elements from unrelated towers");
            Some(hi)
        }
    }
}

/// Coordinates of `a` over `level`'s parent.
fn coords_at(a: &Fe, level: &Rc<Level>) -> Vec<Fe> {
    match a {
        Fe::A(l, c) if Rc::ptr_eq(l, level) => c.clone(),
        _ if a.is_zero() => Vec::new(),
        _ => vec![a.clone()],
    }
}

fn from_coords(level: &Rc<Level>, mut c: Vec<Fe>) -> Fe {
    upoly::trim(&mut c);
    match c.len() {
        0 => Fe::zero(),
        1 => c.pop().unwrap(),
        _ => Fe::A(level.clone(), c),
    }
}

impl Fe {
    pub fn zero() -> Fe {
        Fe::Q(Rational::zero())
    }

    pub fn one() -> Fe {
        Fe::Q(Rational::one())
    }

    pub fn int(n: i64) -> Fe {
        Fe::Q(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Fe {
        Fe::Q(Rational::new(n.into(), d.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Fe::Q(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Fe::Q(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Fe::Q(q) => Some(q),
            Fe::A(..) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Fe::Q(_))
    }

    /// Depth of the lowest level containing the element.
    pub fn depth(&self) -> usize {
        level_of(self).map_or(0, |l| l.depth)
    }

    pub fn level(&self) -> Option<&Rc<Level>> {
        level_of(self)
    }

    pub fn add(&self, b: &Fe) -> Fe {
        match (self, b) {
            (Fe::Q(x), Fe::Q(y)) => Fe::Q(x + y),
            _ => {
                let l = join(level_of(self), level_of(b)).unwrap().clone();
                let c = upoly::add(&coords_at(self, &l), &coords_at(b, &l));
                from_coords(&l, c)
            }
        }
    }

    pub fn sub(&self, b: &Fe) -> Fe {
        match (self, b) {
            (Fe::Q(x), Fe::Q(y)) => Fe::Q(x - y),
            _ => self.add(&b.neg()),
        }
    }

    pub fn neg(&self) -> Fe {
        match self {
            Fe::Q(x) => Fe::Q(-x),
            Fe::A(l, c) => Fe::A(l.clone(), c.iter().map(Fe::neg).collect()),
        }
    }

    pub fn mul(&self, b: &Fe) -> Fe {
        match (self, b) {
            (Fe::Q(x), Fe::Q(y)) => Fe::Q(x * y),
            (Fe::Q(x), Fe::A(l, c)) | (Fe::A(l, c), Fe::Q(x)) => {
                if x.is_zero() {
                    Fe::zero()
                } else {
                    let s = Fe::Q(x.clone());
                    Fe::A(l.clone(), c.iter().map(|e| e.mul(&s)).collect())
                }
            }
            _ => {
                let l = join(level_of(self), level_of(b)).unwrap().clone();
                let ca = coords_at(self, &l);
                let cb = coords_at(b, &l);
                if ca.len() == 1 {
                    let c = cb.iter().map(|e| e.mul(&ca[0])).collect();
                    return from_coords(&l, c);
                }
                if cb.len() == 1 {
                    let c = ca.iter().map(|e| e.mul(&cb[0])).collect();
                    return from_coords(&l, c);
                }
                let prod = upoly::mul(&ca, &cb);
                let r = upoly::rem_monic(prod, &l.minpoly);
                from_coords(&l, r)
            }
        }
    }

    pub fn square(&self) -> Fe {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Fe {
        let mut base = self.clone();
        let mut acc = Fe::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Fe, FieldError> {
        match self {
            Fe::Q(x) => {
                if x.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Fe::Q(x.recip()))
                }
            }
            Fe::A(l, c) => {
                let (g, s, _) = upoly::xgcd(c, &l.minpoly);
                if g.len() != 1 {
                    return Err(FieldError::DynamicSplit { level: l.depth, factor: g });
                }
                let gi = g[0].inv()?;
                Ok(from_coords(l, s.iter().map(|e| e.mul(&gi)).collect()))
            }
        }
    }

    pub fn div(&self, b: &Fe) -> Result<Fe, FieldError> {
        match (self, b) {
            (Fe::Q(x), Fe::Q(y)) => {
                if y.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Fe::Q(x / y))
                }
            }
            _ => Ok(self.mul(&b.inv()?)),
        }
    }
}

impl PartialEq for Fe {
    fn eq(&self, other: &Fe) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Fe {}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Fe) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order: rationals first, then by level depth and coordinates.
impl Ord for Fe {
    fn cmp(&self, other: &Fe) -> Ordering {
        match (self, other) {
            (Fe::Q(a), Fe::Q(b)) => a.cmp(b),
            (Fe::Q(_), Fe::A(..)) => Ordering::Less,
            (Fe::A(..), Fe::Q(_)) => Ordering::Greater,
            (Fe::A(la, ca), Fe::A(lb, cb)) => la
                .depth
                .cmp(&lb.depth)
                .then_with(|| ca.len().cmp(&cb.len()))
                .then_with(|| ca.iter().rev().cmp(cb.iter().rev())),
        }
    }
}

impl core::hash::Hash for Fe {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        match self {
            Fe::Q(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Fe::A(l, c) => {
                1u8.hash(state);
                l.depth.hash(state);
                c.hash(state);
            }
        }
    }
}

impl From<Rational> for Fe {
    fn from(q: Rational) -> Fe {
        Fe::Q(q)
    }
}

impl From<i64> for Fe {
    fn from(n: i64) -> Fe {
        Fe::int(n)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Fe::A(l, c) => {
                let sym = l.symbol();
                write!(f, "[")?;
                let mut first = true;
                for (i, e) in c.iter().enumerate().rev() {
                    if e.is_zero() {
                        continue;
                    }
                    let neg = matches!(e, Fe::Q(q) if q.is_negative());
                    let body = if neg { e.neg() } else { e.clone() };
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, "{}", if neg { " - " } else { " + " })?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{}", body)?,
                        _ => {
                            if !body.is_one() {
                                write!(f, "{}*", body)?;
                            }
                            write!(f, "{}", sym)?;
                            if i > 1 {
                                write!(f, "^{}", i)?;
                            }
                        }
                    }
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
