//! Generators of the field of separated multiples.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ansatz::{separated_multiples, AnsatzSpec};
use super::SeparatedPair;
use crate::curve_orbits::{branches_at, fiber, orbit_expand, ExtCoord};
use crate::ground_field::{minimal_polynomial, Fe, Rational, Tower, UPoly};
use crate::polynomials::{is_quasi_homogeneous, BiPoly, RatFunc2, UniRatFunc, Var, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_orbit: usize,
    pub multiple_cap: u32,
    pub tower_degree_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_orbit: 64, multiple_cap: 8, tower_degree_cap: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivialEvidence {
    /// The orbit of the points over x = ∞ outgrew the budget.
    OrbitTooLarge { size: usize },
    /// No consistent assignment of pole orders along the orbit exists.
    InconsistentRatios,
    /// Pole-support ansatz had no solution for any multiple up to the cap.
    NoSolutionUpTo { multiple_cap: u32 },
}

impl TrivialEvidence {
    /// Whether the verdict is a proof rather than a budget call.
    pub fn is_proof(&self) -> bool {
        matches!(self, TrivialEvidence::InconsistentRatios)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatedSearch {
    NonTrivial { generator: SeparatedPair, q0: RatFunc2 },
    Trivial(TrivialEvidence),
    Unknown(String),
}

/// Pole orders of a generator along the orbit of x = ∞, up to a common
/// factor: m(a, f) = β·m(b, g) along every branch Y ~ X^β at (a, b).
fn pole_ratios(
    tower: &mut Tower,
    p: &BiPoly,
    points: &[crate::curve_orbits::CurvePoint],
) -> Result<Option<(BTreeMap<ExtCoord, Rational>, BTreeMap<ExtCoord, Rational>)>, String> {
    let mut data = Vec::new();
    for pt in points {
        let (_, bs) = branches_at(tower, p, pt).map_err(|e| alloc::format!("{}", e))?;
        data.push((pt.clone(), bs.iter().map(|b| b.order()).collect::<Vec<_>>()));
    }
    let mut tf: BTreeMap<ExtCoord, Rational> = BTreeMap::new();
    let mut tg: BTreeMap<ExtCoord, Rational> = BTreeMap::new();
    tf.insert(None, Rational::one());
    loop {
        let mut changed = false;
        for (pt, betas) in &data {
            for beta in betas {
                match (tf.get(&pt.x).cloned(), tg.get(&pt.y).cloned()) {
                    (Some(a), Some(b)) => {
                        if a != beta * &b {
                            return Ok(None);
                        }
                    }
                    (Some(a), None) => {
                        tg.insert(pt.y.clone(), a / beta);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        tf.insert(pt.x.clone(), beta * b);
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Some((tf, tg)))
}

fn to_integers(tf: &BTreeMap<ExtCoord, Rational>, tg: &BTreeMap<ExtCoord, Rational>) -> (Vec<(ExtCoord, u32)>, Vec<(ExtCoord, u32)>) {
    let all = tf.values().chain(tg.values());
    let l = all.clone().fold(num_bigint::BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<num_bigint::BigInt> = all.map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, v| acc.gcd(v));
    let conv = |m: &BTreeMap<ExtCoord, Rational>| {
        m.iter()
            .map(|(c, v)| {
                let n = (v * Rational::from_integer(l.clone())).to_integer() / &g;
                (c.clone(), n.to_u32().expect("pole order fits in u32"))
            })
            .collect()
    };
    (conv(tf), conv(tg))
}

fn spec_for(fm: &[(ExtCoord, u32)], gm: &[(ExtCoord, u32)], mult: u32) -> AnsatzSpec {
    let mut spec = AnsatzSpec::default();
    for (c, m) in fm {
        spec.f.allow(c.as_ref().map(minimal_polynomial).as_ref(), m * mult);
    }
    for (c, m) in gm {
        spec.g.allow(c.as_ref().map(minimal_polynomial).as_ref(), m * mult);
    }
    spec
}

/// Scales f to a monic numerator; g follows.
fn normalize(pair: SeparatedPair) -> SeparatedPair {
    let s = pair.f.num().lc().inv().unwrap();
    let scale = |u: &UniRatFunc| UniRatFunc::new(u.var(), u.num().scale(&s), u.den().clone());
    SeparatedPair { f: scale(&pair.f), g: scale(&pair.g) }
}

/// Looks for a generator of F(p) whose poles are the orbit of the points
/// over x = ∞.
pub fn separated_multiple_search(p: &BiPoly, budget: &SearchBudget) -> SeparatedSearch {
    let mut tower = Tower::new(budget.tower_degree_cap);
    let start = match fiber(&mut tower, p, &None, Var::X) {
        Ok(f) if !f.is_empty() => f[0].clone(),
        Ok(_) => return SeparatedSearch::Unknown("empty fiber over x = ∞".into()),
        Err(e) => return SeparatedSearch::Unknown(alloc::format!("{}", e)),
    };
    let orbit = orbit_expand(&mut tower, p, &start, budget.max_orbit);
    if !orbit.complete {
        if orbit.tower_limited {
            return SeparatedSearch::Unknown("tower degree budget".into());
        }
        return SeparatedSearch::Trivial(TrivialEvidence::OrbitTooLarge { size: orbit.len() });
    }
    let (tf, tg) = match pole_ratios(&mut tower, p, &orbit.points) {
        Ok(Some(t)) => t,
        Ok(None) => return SeparatedSearch::Trivial(TrivialEvidence::InconsistentRatios),
        Err(e) => return SeparatedSearch::Unknown(e),
    };
    let (fm, gm) = to_integers(&tf, &tg);
    for mult in 1..=budget.multiple_cap {
        let spec = spec_for(&fm, &gm, mult);
        if let Some(pair) = separated_multiples(p, &spec).into_iter().next() {
            let generator = normalize(pair);
            let q0 = generator
                .f
                .to_bivariate()
                .sub(&generator.g.to_bivariate())
                .div(&RatFunc2::poly(p.clone()));
            return SeparatedSearch::NonTrivial { generator, q0 };
        }
    }
    SeparatedSearch::Trivial(TrivialEvidence::NoSolutionUpTo { multiple_cap: budget.multiple_cap })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiHomog {
    /// Generator (f_ω, g_ω) with f_ω = x^{dx} and g_ω = λ·y^{dy}; negative
    /// exponents stand for powers of 1/x and 1/y.
    NonTrivial { pair: SeparatedPair, dx: i64, dy: i64 },
    Trivial,
}

fn monomial(var: Var, c: Fe, e: i64) -> UniRatFunc {
    if e >= 0 {
        UniRatFunc::poly(var, UPoly::monomial(c, e as usize))
    } else {
        UniRatFunc::new(var, UPoly::constant(c), UPoly::monomial(Fe::one(), (-e) as usize))
    }
}

/// Generator of F(h) for h quasi-homogeneous with respect to `w`.
///
/// A monomial factor or a repeated factor of h forces F(h) to be trivial;
/// otherwise h is a form H in one pair of monomials, and F(h) is non-trivial
/// exactly when H divides t^m - λ for some m, which is tried up to `m_cap`.
pub fn quasihomog_generator(h: &BiPoly, w: &Weight, m_cap: usize) -> QuasiHomog {
    if h.num_terms() < 2 || !is_quasi_homogeneous(h, w) {
        return QuasiHomog::Trivial;
    }
    let (ix, iy) = w.normalized();
    if ix == 0 || iy == 0 || h.val(Var::X) > 0 || h.val(Var::Y) > 0 {
        return QuasiHomog::Trivial;
    }
    let g = ix.gcd(&iy);
    let u = iy.abs() / g;
    let v = -ix * iy.signum() / g;
    let n = (h.deg_x() as i64) / u;
    let mut coeffs = alloc::vec![Fe::zero(); n as usize + 1];
    for (&(i, _), c) in h.terms() {
        coeffs[(i as i64 / u) as usize] = c.clone();
    }
    let h1 = UPoly::new(coeffs);
    let t = UPoly::monomial(Fe::one(), 1);
    let mut pw = UPoly::one();
    for m in 1..=m_cap as i64 {
        pw = pw.mul(&t).rem(&h1);
        if pw.deg() == 0 {
            let lambda = pw.coeff(0);
            let pair = if v < 0 {
                SeparatedPair {
                    f: monomial(Var::X, Fe::one(), u * m),
                    g: monomial(Var::Y, lambda, -v * m),
                }
            } else {
                SeparatedPair {
                    f: monomial(Var::X, Fe::one(), -u * m),
                    g: monomial(Var::Y, lambda.inv().unwrap(), v * m),
                }
            };
            let (dx, dy) = if v < 0 { (u * m, -v * m) } else { (-u * m, v * m) };
            return QuasiHomog::NonTrivial { pair, dx, dy };
        }
    }
    QuasiHomog::Trivial
}
