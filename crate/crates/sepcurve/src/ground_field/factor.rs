//! Factorization over tower levels by Trager's norm method, and root
//! adjunction.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::tower::{Fe, Level, Tower};
use super::upoly::UPoly;
use super::{zfactor, FieldError};

/// Generator of `level` as an element.
fn generator(level: &Rc<Level>) -> Fe {
    Fe::A(level.clone(), vec![Fe::zero(), Fe::one()])
}

/// Coordinates of `a` over the parent of `level`, padded to the level degree.
fn coords(a: &Fe, level: &Rc<Level>) -> Vec<Fe> {
    let mut c = match a {
        Fe::A(l, c) if Rc::ptr_eq(l, level) => c.clone(),
        _ => vec![a.clone()],
    };
    c.resize(level.degree(), Fe::zero());
    c
}

/// Norm of `f` from `level` down to its parent, by evaluation and interpolation.
fn norm(f: &UPoly, level: &Rc<Level>) -> UPoly {
    let m = UPoly::new(level.minpoly().to_vec());
    let n = f.degree() * level.degree();
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let z = Fe::int(k as i64);
        let v = f.eval(&z);
        let vt = UPoly::new(coords(&v, level));
        xs.push(z);
        ys.push(m.resultant(&vt));
    }
    UPoly::interpolate(&xs, &ys).unwrap()
}

/// Deepest level among the coefficients of `f`, compared against `level`.
fn deepest(f: &UPoly, level: Option<&Rc<Level>>) -> Option<Rc<Level>> {
    let mut best = level.cloned();
    for c in f.coeffs() {
        if let Some(l) = c.level() {
            if best.as_ref().is_none_or(|b| b.depth() < l.depth()) {
                best = Some(l.clone());
            }
        }
    }
    best
}

/// Monic irreducible factors of a square-free `f` over the field `level`
/// (Q when `None`).
fn factor_squarefree_at(f: &UPoly, level: Option<&Rc<Level>>) -> Vec<UPoly> {
    if f.deg() < 1 {
        return Vec::new();
    }
    if f.deg() == 1 {
        return vec![f.monic()];
    }
    let level = match level {
        None => return zfactor::factor_squarefree_q(f),
        Some(l) => l,
    };
    let alpha = generator(level);
    let parent = level.parent().cloned();
    let f = f.monic();
    for s in 0i64.. {
        // g(z) = f(z - s·alpha)
        let shift = alpha.mul(&Fe::int(-s));
        let g = f.shift(&shift);
        let n = norm(&g, level);
        if !n.is_squarefree() {
            assert!(s < 64, "no square-free norm found");
            continue;
        }
        let mut out = Vec::new();
        for h in factor_squarefree_at(&n, parent.as_ref()) {
            let d = g.gcd(&h);
            if d.deg() >= 1 {
                out.push(d.shift(&shift.neg()).monic());
            }
        }
        out.sort();
        return out;
    }
    unreachable!()
}

/// Irreducible factors with multiplicities over the top of `tower`.
pub fn factor_univariate(tower: &Tower, f: &UPoly) -> Vec<(UPoly, usize)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let level = deepest(f, tower.top());
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree_at(&part, level.as_ref()) {
            out.push((g, mult));
        }
    }
    out.sort();
    out
}

/// Root of `minpoly` in `tower`, extending it by an irreducible factor of
/// least degree when no root exists yet.
pub fn adjoin_root(tower: &mut Tower, minpoly: &UPoly) -> Result<Fe, FieldError> {
    assert!(minpoly.deg() >= 1, "constant polynomial has no roots");
    let mut facs = factor_univariate(tower, minpoly);
    facs.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    let g = &facs[0].0;
    if g.deg() == 1 {
        return Ok(g.coeff(0).neg());
    }
    tower.push_level(g.coeffs().to_vec())
}

/// All roots of `f` with multiplicity, extending `tower` until `f` splits.
pub fn all_roots(tower: &mut Tower, f: &UPoly) -> Result<Vec<(Fe, usize)>, FieldError> {
    let mut out = Vec::new();
    let mut pending: Vec<(UPoly, usize)> = factor_univariate(tower, f);
    while let Some((g, m)) = pending.pop() {
        if g.deg() == 1 {
            out.push((g.coeff(0).neg(), m));
            continue;
        }
        let root = adjoin_root(tower, &g)?;
        let rest = g.div_exact(&UPoly::linear(&root)).unwrap();
        out.push((root, m));
        if rest.deg() >= 1 {
            for (h, k) in factor_univariate(tower, &rest) {
                pending.push((h, k * m));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Roots of `f` already present in `tower`, with multiplicity.
pub fn rational_roots(tower: &Tower, f: &UPoly) -> Vec<(Fe, usize)> {
    let mut out: Vec<(Fe, usize)> = factor_univariate(tower, f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, m)| (g.coeff(0).neg(), m))
        .collect();
    out.sort();
    out
}

/// Minimal polynomial of `a` over Q, monic.
pub fn minimal_polynomial(a: &Fe) -> UPoly {
    let mut f = UPoly::linear(a);
    while let Some(level) = deepest(&f, None) {
        f = norm(&f, &level);
    }
    f.squarefree_part().monic()
}
