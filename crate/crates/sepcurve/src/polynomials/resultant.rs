//! Resultants of bivariate polynomials by evaluation and interpolation.

use alloc::vec::Vec;

use super::bipoly::{BiPoly, Var};
use crate::ground_field::{Fe, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantInVariable;

/// Sample points 0, 1, -1, 2, -2, … avoiding the roots of `avoid`.
pub(crate) fn sample_points(n: usize, avoid: &[UPoly]) -> Vec<Fe> {
    let mut out = Vec::with_capacity(n);
    let mut k: i64 = 0;
    while out.len() < n {
        let t = Fe::int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        k += 1;
        if avoid.iter().all(|u| !u.eval(&t).is_zero()) {
            out.push(t);
        }
    }
    out
}

/// Sylvester resultant eliminating `var`; the result lives in the other variable.
pub fn resultant_in(var: Var, a: &BiPoly, b: &BiPoly) -> Result<BiPoly, ConstantInVariable> {
    if a.deg(var) == 0 || b.deg(var) == 0 {
        return Err(ConstantInVariable);
    }
    let other = var.other();
    let bound = (a.deg(other) * b.deg(var) + b.deg(other) * a.deg(var)) as usize;
    let (la, lb) = (a.lc_in(var), b.lc_in(var));
    let xs = sample_points(bound + 1, &[la, lb]);
    let ys: Vec<Fe> = xs
        .iter()
        .map(|t| a.eval_var(other, t).resultant(&b.eval_var(other, t)))
        .collect();
    let u = UPoly::interpolate(&xs, &ys).unwrap();
    Ok(BiPoly::from_upoly(&u, other))
}

/// res_z(a(x, z), b(y, z)), where both inputs store z in the y slot.
pub fn resultant_shared(a: &BiPoly, b: &BiPoly) -> Result<BiPoly, ConstantInVariable> {
    if a.deg_y() == 0 || b.deg_y() == 0 {
        return Err(ConstantInVariable);
    }
    let dx = (a.deg_x() * b.deg_y()) as usize;
    let dy = (b.deg_x() * a.deg_y()) as usize;
    let xs = sample_points(dx + 1, &[a.lc_in(Var::Y)]);
    let ys = sample_points(dy + 1, &[b.lc_in(Var::Y)]);
    let bs: Vec<UPoly> = ys.iter().map(|t| b.eval_var(Var::X, t)).collect();
    let mut rows: Vec<UPoly> = Vec::with_capacity(xs.len());
    for s in &xs {
        let ua = a.eval_var(Var::X, s);
        let vals: Vec<Fe> = bs.iter().map(|ub| ua.resultant(ub)).collect();
        rows.push(UPoly::interpolate(&ys, &vals).unwrap());
    }
    let mut out = BiPoly::zero();
    for j in 0..=dy {
        let vals: Vec<Fe> = rows.iter().map(|r| r.coeff(j)).collect();
        let u = UPoly::interpolate(&xs, &vals).unwrap();
        for (i, c) in u.coeffs().iter().enumerate() {
            out.add_term(i as u32, j as u32, c);
        }
    }
    Ok(out)
}
