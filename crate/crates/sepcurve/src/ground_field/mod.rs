//! Exact arithmetic over Q and over towers of algebraic extensions of Q.
//!
//! The algebraically closed field of the theory is realized lazily: a
//! computation starts with an empty [`Tower`] and adjoins roots only when an
//! expansion or a fiber needs them. Every level is certified irreducible at
//! adjunction time, so [`FieldError::DynamicSplit`] only signals misuse.

mod factor;
mod tower;
mod upoly;
mod zfactor;

use alloc::vec::Vec;
use core::fmt;

pub use factor::{adjoin_root, all_roots, factor_univariate, minimal_polynomial, rational_roots};
pub use tower::{Fe, Level, Tower, DEFAULT_DEGREE_CAP};
pub use upoly::UPoly;
pub(crate) use zfactor::{distinct_roots_lower_bound, distinct_roots_of_self_resultant};

pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    DivisionByZero,
    /// A level polynomial turned out to be reducible; carries the common factor.
    DynamicSplit { level: usize, factor: Vec<Fe> },
    DegreeBudget { needed: usize, cap: usize },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::DynamicSplit { level, .. } => write!(f, "level {} splits", level),
            FieldError::DegreeBudget { needed, cap } => {
                write!(f, "extension degree {} exceeds cap {}", needed, cap)
            }
        }
    }
}

/// Which arithmetic operation [`fe_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn fe_arith(a: &Fe, b: &Fe, op: ArithOp) -> Result<Fe, FieldError> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
