//! Newton–Puiseux expansion of the branches of P(X, Y) through (0, 0).
//! Every exponent is positive, so high-order terms of the working
//! polynomial can be dropped once a branch has separated.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::series::{lcm_denoms, Series, Terms};
use crate::ground_field::{all_roots, Fe, FieldError, Rational, Tower, UPoly};
use crate::polynomials::BiPoly;

type Coef = BTreeMap<Rational, Fe>;

/// One branch Y = Σ c·X^γ of a local curve, with γ > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBranch {
    pub(crate) terms: Terms,
    /// `None` when the listed sum is an exact root; otherwise every
    /// missing term has exponent at least this value.
    pub(crate) precision: Option<Rational>,
    pub(crate) ramification: u64,
    /// X-order of ∂P/∂Y along the branch.
    pub(crate) kappa: Rational,
}

impl LocalBranch {
    pub fn terms(&self) -> &[(Rational, Fe)] {
        &self.terms
    }

    pub fn precision(&self) -> Option<&Rational> {
        self.precision.as_ref()
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    /// Exponent of the first term.
    pub fn order(&self) -> Rational {
        self.terms[0].0.clone()
    }

    pub fn series(&self) -> Series {
        Series::exact(self.terms.iter().cloned().collect()).with_precision(self.precision.clone())
    }

    /// Recomputes the branch so that all terms up to `order` are known.
    pub fn refine(&self, p: &BiPoly, order: &Rational) -> LocalBranch {
        if self.precision.is_none() || self.precision.as_ref().is_some_and(|q| q > order) {
            return self.clone();
        }
        let h = order + &self.kappa;
        let mut cur = from_bipoly(p);
        truncate(&mut cur, &h);
        for (g, c) in &self.terms {
            taylor_shift(&mut cur, c, g, Some(&h));
        }
        let mut out = Vec::new();
        simple_tail(p, cur, self.terms.clone(), self.kappa.clone(), order, Some(h), &mut out);
        out.pop().unwrap()
    }
}

fn from_bipoly(p: &BiPoly) -> Vec<Coef> {
    let mut cur: Vec<Coef> = vec![Coef::new(); p.deg_y() as usize + 1];
    for (&(i, j), c) in p.terms() {
        cur[j as usize].insert(Rational::from_integer(i.into()), c.clone());
    }
    cur
}

fn truncate(cur: &mut [Coef], h: &Rational) {
    for c in cur.iter_mut() {
        c.retain(|e, _| e <= h);
    }
}

/// Substitutes Y ↦ c·X^g + Y.
fn taylor_shift(cur: &mut [Coef], c: &Fe, g: &Rational, h: Option<&Rational>) {
    let n = cur.len().saturating_sub(1);
    for i in 0..n {
        for j in (i..n).rev() {
            let add: Vec<(Rational, Fe)> = cur[j + 1]
                .iter()
                .map(|(e, v)| (e + g, v.mul(c)))
                .filter(|(e, _)| h.is_none_or(|h| e <= h))
                .collect();
            for (e, v) in add {
                let slot = cur[j].entry(e.clone()).or_insert_with(Fe::zero);
                *slot = slot.add(&v);
                if slot.is_zero() {
                    cur[j].remove(&e);
                }
            }
        }
    }
}

fn ord(c: &Coef) -> Option<(&Rational, &Fe)> {
    c.iter().next()
}

fn ramification(terms: &Terms) -> u64 {
    lcm_denoms(terms.iter().map(|t| &t.0))
}

/// True if Y = Σ terms is an exact root of P.
fn is_exact_root(p: &BiPoly, terms: &Terms) -> bool {
    let y = Series::exact(terms.iter().cloned().collect());
    let mut acc = Series::zero();
    for (&(i, j), c) in p.terms() {
        let t = y.pow(j).shift(&Rational::from_integer(i.into())).scale(c);
        acc = acc.add(&t);
    }
    acc.is_zero()
}

/// Smallest element of (1/e)Z strictly greater than `t`.
fn next_grid(t: &Rational, e: u64) -> Rational {
    let e = num_bigint::BigInt::from(e);
    let k = (t * Rational::from_integer(e.clone())).floor().to_integer() + 1;
    Rational::new(k, e)
}

/// Expansion of a separated branch; no further choices are needed.
fn simple_tail(
    p: &BiPoly,
    mut cur: Vec<Coef>,
    mut terms: Terms,
    kappa: Rational,
    target: &Rational,
    h: Option<Rational>,
    out: &mut Vec<LocalBranch>,
) {
    loop {
        let e = ramification(&terms);
        let a1 = ord(&cur[1]).map(|(a, c)| (a.clone(), c.clone()));
        let (a1, l1) = a1.expect("separated branch with vanishing derivative");
        debug_assert_eq!(a1, kappa);
        let Some((a0, l0)) = ord(&cur[0]).map(|(a, c)| (a.clone(), c.clone())) else {
            let precision = match &h {
                Some(h) if !is_exact_root(p, &terms) => Some(next_grid(&(h - &kappa), e)),
                _ => None,
            };
            out.push(LocalBranch { terms, precision, ramification: e, kappa });
            return;
        };
        let g = &a0 - &a1;
        if &g > target {
            out.push(LocalBranch { terms, precision: Some(g), ramification: e, kappa });
            return;
        }
        let c = l0.div(&l1).unwrap().neg();
        taylor_shift(&mut cur, &c, &g, h.as_ref());
        terms.push((g, c));
    }
}

struct Edge {
    gamma: Rational,
    chi: UPoly,
}

/// Edges of the Newton polygon with slope parameter γ > `last`.
fn edges(cur: &[Coef], v: usize, last: &Rational) -> Vec<Edge> {
    let pts: Vec<(usize, Rational)> =
        cur.iter().enumerate().filter_map(|(b, c)| ord(c).map(|(a, _)| (b, a.clone()))).collect();
    let a_of = |b: usize| pts.iter().find(|p| p.0 == b).map(|p| p.1.clone());
    let mut out = Vec::new();
    let mut b0 = v;
    loop {
        let a0 = a_of(b0).unwrap();
        let mut best: Option<(Rational, usize)> = None;
        for (b, a) in pts.iter().filter(|p| p.0 > b0) {
            let g = (&a0 - a) / Rational::from_integer((*b as i64 - b0 as i64).into());
            if best.as_ref().is_none_or(|(bg, bb)| g > *bg || (g == *bg && b > bb)) {
                best = Some((g, *b));
            }
        }
        let Some((g, bend)) = best else { break };
        if &g <= last {
            break;
        }
        let line = &a0 + &g * Rational::from_integer((b0 as i64).into());
        let mut chi = vec![Fe::zero(); bend - b0 + 1];
        for (b, a) in pts.iter().filter(|p| p.0 >= b0 && p.0 <= bend) {
            if a + &g * Rational::from_integer((*b as i64).into()) == line {
                chi[b - b0] = cur[*b][a].clone();
            }
        }
        out.push(Edge { gamma: g, chi: UPoly::new(chi) });
        b0 = bend;
    }
    out
}

fn branch_rec(
    tower: &mut Tower,
    p: &BiPoly,
    cur: Vec<Coef>,
    terms: Terms,
    last: Rational,
    target: &Rational,
    out: &mut Vec<LocalBranch>,
) -> Result<(), FieldError> {
    let v = cur.iter().position(|c| !c.is_empty()).unwrap_or(cur.len());
    for _ in 0..v {
        let e = ramification(&terms);
        out.push(LocalBranch { terms: terms.clone(), precision: None, ramification: e, kappa: Rational::zero() });
    }
    if v == cur.len() {
        return Ok(());
    }
    for edge in edges(&cur, v, &last) {
        for (c, m) in all_roots(tower, &edge.chi)? {
            let mut next = cur.clone();
            taylor_shift(&mut next, &c, &edge.gamma, None);
            let mut t = terms.clone();
            t.push((edge.gamma.clone(), c));
            if m == 1 {
                let kappa = ord(&next[1]).map(|(a, _)| a.clone()).expect("simple root");
                let target = if &edge.gamma > target { &edge.gamma } else { target };
                let h = target + &kappa;
                truncate(&mut next, &h);
                simple_tail(p, next, t, kappa, target, Some(h), out);
            } else {
                branch_rec(tower, p, next, t, edge.gamma.clone(), target, out)?;
            }
        }
    }
    Ok(())
}

/// All branches of P through (0, 0) with terms known up to X^`order`.
/// Each conjugate of a ramified branch is listed on its own.
pub fn local_branches(tower: &mut Tower, p: &BiPoly, order: &Rational) -> Result<Vec<LocalBranch>, FieldError> {
    if !p.coeff(0, 0).is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    branch_rec(tower, p, from_bipoly(p), Vec::new(), Rational::zero(), order, &mut out)?;
    Ok(out)
}

/// Number of branches through (0, 0): the Y-order of P(0, Y).
pub fn local_branch_count(p: &BiPoly) -> usize {
    let c0 = p.eval_var(crate::polynomials::Var::X, &Fe::zero());
    c0.val().max(0) as usize
}
