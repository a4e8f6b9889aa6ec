//! Polynomial and rational-function toolkit: bivariate arithmetic, weights
//! and leading parts, weighted division, resultants, Möbius substitutions,
//! pole orders, exact linear solving and Newton polygons.

mod bipoly;
mod gcd;
mod linsolve;
mod mobius;
mod newton;
mod ratfunc;
mod resultant;
mod weight;

pub use bipoly::{BiPoly, Var};
pub use gcd::{content_in, div_exact, divides, gcd, squarefree_part};
pub use linsolve::{solve_linear, LinearSolution};
pub use mobius::{mobius_transform, mobius_transform_rat, Mobius, Mobius1, SingularMap};
pub use newton::{convex_hull, edges, minkowski_sum, newton_polygon, outward_normal};
pub use ratfunc::{RatFunc2, UniRatFunc};
pub use resultant::{resultant_in, resultant_shared, ConstantInVariable};
pub use weight::{
    is_quasi_homogeneous, leading_part, leading_part_poly, weight_of, weight_of_poly, weighted_divide,
    weighted_reduce, Weight,
};

use crate::ground_field::{Fe, Rational, UPoly};

/// Signed pole order of `f` at `s` (`None` is ∞); `None` for f = 0.
pub fn m_value(s: Option<&Fe>, f: &UniRatFunc) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    match s {
        None => Some(f.num().deg() as i64 - f.den().deg() as i64),
        Some(s) => Some(root_multiplicity(f.den(), s) as i64 - root_multiplicity(f.num(), s) as i64),
    }
}

pub fn root_multiplicity(u: &UPoly, s: &Fe) -> usize {
    let lin = UPoly::linear(s);
    let mut k = 0;
    let mut cur = u.clone();
    while !cur.is_zero() && cur.eval(s).is_zero() {
        cur = cur.div_exact(&lin).unwrap();
        k += 1;
    }
    k
}

/// Leading-exponent bookkeeping value: `None` stands for −∞.
pub type ExtRational = Option<Rational>;

pub fn ext_max(a: &ExtRational, b: &ExtRational) -> ExtRational {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(if x >= y { x.clone() } else { y.clone() }),
    }
}
