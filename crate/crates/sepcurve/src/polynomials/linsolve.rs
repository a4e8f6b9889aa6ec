//! Fraction-free elimination over the ground field.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::ground_field::{Fe, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    /// Particular solution with free variables at zero, plus a nullspace basis.
    Affine { particular: Vec<Fe>, nullspace: Vec<Vec<Fe>> },
}

impl LinearSolution {
    pub fn nullspace_dim(&self) -> Option<usize> {
        match self {
            LinearSolution::Inconsistent => None,
            LinearSolution::Affine { nullspace, .. } => Some(nullspace.len()),
        }
    }
}

/// Scales a rational row to integers.
fn integral_row(row: &mut [Fe]) {
    if !row.iter().all(Fe::is_rational) {
        return;
    }
    let l = row
        .iter()
        .map(|c| c.as_rational().unwrap().denom().clone())
        .fold(BigInt::one(), |a, d| a.lcm(&d));
    if l.is_one() {
        return;
    }
    let s = Fe::Q(Rational::from_integer(l));
    for c in row.iter_mut() {
        *c = c.mul(&s);
    }
}

/// Solves A·x = b exactly.
pub fn solve_linear(a: &[Vec<Fe>], b: &[Fe]) -> LinearSolution {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Fe>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            integral_row(&mut row);
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = Fe::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                if !prev.is_one() || !piv.is_one() {
                    for j in c + 1..=cols {
                        if !m[i][j].is_zero() {
                            m[i][j] = m[i][j].mul(&piv).div(&prev).unwrap();
                        }
                    }
                }
                continue;
            }
            let f = m[i][c].clone();
            for j in c + 1..=cols {
                let v = m[i][j].mul(&piv).sub(&f.mul(&m[r][j]));
                m[i][j] = if prev.is_one() { v } else { v.div(&prev).unwrap() };
            }
            m[i][c] = Fe::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return LinearSolution::Inconsistent;
    }

    let is_pivot = {
        let mut v = vec![false; cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();

    // Back substitution for a right-hand side given as a column vector.
    let back = |rhs: &dyn Fn(usize) -> Fe, fixed: &dyn Fn(usize) -> Fe| -> Vec<Fe> {
        let mut x = vec![Fe::zero(); cols];
        for &c in &free {
            x[c] = fixed(c);
        }
        for (k, &c) in pivots.iter().enumerate().rev() {
            let mut acc = rhs(k);
            for j in c + 1..cols {
                if !m[k][j].is_zero() && !x[j].is_zero() {
                    acc = acc.sub(&m[k][j].mul(&x[j]));
                }
            }
            x[c] = acc.div(&m[k][c]).unwrap();
        }
        x
    };
    let particular = back(&|k| m[k][cols].clone(), &|_| Fe::zero());
    let mut nullspace = Vec::with_capacity(free.len());
    for &f in &free {
        nullspace.push(back(&|_| Fe::zero(), &|c| if c == f { Fe::one() } else { Fe::zero() }));
    }
    LinearSolution::Affine { particular, nullspace }
}
