#![no_std]
//! Separation of variables on plane curves.
//!
//! Given an irreducible `p ∈ Q[x,y]` and a rational function `r`, the
//! [`separation::decouple`] pipeline searches for `f ∈ K(x)`, `g ∈ K(y)` and
//! `q` with `r + q·p = f - g`, or reports why none can exist.

extern crate alloc;

pub mod ground_field;
pub mod polynomials;
pub mod puiseux;
pub mod curve_orbits;
pub mod separation;
