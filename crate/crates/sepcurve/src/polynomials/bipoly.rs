use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ground_field::{Fe, UPoly};

/// Sparse polynomial in x and y; keys are (deg_x, deg_y).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Fe>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn one() -> BiPoly {
        BiPoly::constant(Fe::one())
    }

    pub fn constant(c: Fe) -> BiPoly {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> BiPoly {
        BiPoly::monomial(Fe::one(), 1, 0)
    }

    pub fn y() -> BiPoly {
        BiPoly::monomial(Fe::one(), 0, 1)
    }

    pub fn var(v: Var) -> BiPoly {
        match v {
            Var::X => BiPoly::x(),
            Var::Y => BiPoly::y(),
        }
    }

    pub fn monomial(c: Fe, i: u32, j: u32) -> BiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    /// From (coefficient, i, j) triples with integer coefficients.
    pub fn from_ints(t: &[(i64, u32, u32)]) -> BiPoly {
        let mut p = BiPoly::zero();
        for &(c, i, j) in t {
            p.add_term(i, j, &Fe::int(c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Fe)>>(it: I) -> BiPoly {
        let mut p = BiPoly::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, &c);
        }
        p
    }

    /// Polynomial in one variable, lifted.
    pub fn from_upoly(u: &UPoly, v: Var) -> BiPoly {
        BiPoly::from_terms(u.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            (if v == Var::X { (k, 0) } else { (0, k) }, c.clone())
        }))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Fe) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Fe::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &Fe)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Fe {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Fe::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn as_constant(&self) -> Option<Fe> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Fe::is_rational)
    }

    pub fn max_depth(&self) -> usize {
        self.terms.values().map(Fe::depth).max().unwrap_or(0)
    }

    pub fn deg(&self, v: Var) -> u32 {
        self.terms.keys().map(|&(i, j)| if v == Var::X { i } else { j }).max().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.deg(Var::X)
    }

    pub fn deg_y(&self) -> u32 {
        self.deg(Var::Y)
    }

    pub fn val(&self, v: Var) -> u32 {
        self.terms.keys().map(|&(i, j)| if v == Var::X { i } else { j }).min().unwrap_or(0)
    }

    pub fn total_deg(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    /// Depends on `v` only (constants included).
    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.deg(v.other()) == 0
    }

    pub fn add(&self, b: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &b.terms {
            out.add_term(*i, *j, c);
        }
        out
    }

    pub fn sub(&self, b: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &b.terms {
            out.add_term(*i, *j, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn scale(&self, a: &Fe) -> BiPoly {
        if a.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.mul(a))).collect() }
    }

    pub fn mul(&self, b: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &b.terms {
                out.add_term(i1 + i2, j1 + j2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn swap(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn derivative(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => out.add_term(i - 1, j, &c.mul(&Fe::int(i as i64))),
                Var::Y if j > 0 => out.add_term(i, j - 1, &c.mul(&Fe::int(j as i64))),
                _ => {}
            }
        }
        out
    }

    /// Coefficients with respect to `v`, as polynomials in the other variable.
    pub fn coeffs_in(&self, v: Var) -> Vec<UPoly> {
        let d = self.deg(v) as usize;
        let mut raw: Vec<Vec<Fe>> = vec![Vec::new(); if self.is_zero() { 0 } else { d + 1 }];
        for (&(i, j), c) in &self.terms {
            let (k, e) = if v == Var::X { (i, j) } else { (j, i) };
            let slot = &mut raw[k as usize];
            if slot.len() <= e as usize {
                slot.resize(e as usize + 1, Fe::zero());
            }
            slot[e as usize] = c.clone();
        }
        raw.into_iter().map(UPoly::new).collect()
    }

    pub fn from_coeffs_in(cs: &[UPoly], v: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, u) in cs.iter().enumerate() {
            for (e, c) in u.coeffs().iter().enumerate() {
                let (i, j) = if v == Var::X { (k as u32, e as u32) } else { (e as u32, k as u32) };
                out.add_term(i, j, c);
            }
        }
        out
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: Var) -> UPoly {
        self.coeffs_in(v).pop().unwrap_or_else(UPoly::zero)
    }

    /// Specializes `v` to `a`, giving a polynomial in the other variable.
    pub fn eval_var(&self, v: Var, a: &Fe) -> UPoly {
        let cs = self.coeffs_in(v.other());
        UPoly::new(cs.iter().map(|u| u.eval(a)).collect())
    }

    pub fn eval(&self, x: &Fe, y: &Fe) -> Fe {
        self.eval_var(Var::X, x).eval(y)
    }

    /// Substitutes polynomials for x and y.
    pub fn compose(&self, px: &BiPoly, py: &BiPoly) -> BiPoly {
        let dx = self.deg_x();
        let dy = self.deg_y();
        let xp: Vec<BiPoly> = powers(px, dx);
        let yp: Vec<BiPoly> = powers(py, dy);
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&xp[i as usize].mul(&yp[j as usize]).scale(c));
        }
        out
    }

    /// Leading coefficient in graded lex order with x > y.
    pub fn grlex_lc(&self) -> Fe {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Fe::zero)
    }

    /// Scaled so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        self.scale(&self.grlex_lc().inv().unwrap())
    }

    /// Terms sorted by graded lex, x > y, largest first.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Fe)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by(|a, b| grlex(&b.0, &a.0));
        v
    }
}

pub(crate) fn grlex(a: &(u32, u32), b: &(u32, u32)) -> core::cmp::Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.0.cmp(&b.0))
}

fn powers(p: &BiPoly, n: u32) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::one()];
    for k in 0..n as usize {
        out.push(out[k].mul(p));
    }
    out
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.sorted_terms() {
            let neg = matches!(&c, Fe::Q(q) if q < &num_traits::Zero::zero());
            let body = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = i > 0 || j > 0;
            if !mono || !body.is_one() {
                write!(f, "{}", body)?;
                if mono {
                    write!(f, "*")?;
                }
            }
            let mut parts = Vec::new();
            if i > 0 {
                parts.push(if i == 1 { alloc::string::String::from("x") } else { alloc::format!("x^{}", i) });
            }
            if j > 0 {
                parts.push(if j == 1 { alloc::string::String::from("y") } else { alloc::format!("y^{}", j) });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
