//! The iteration Q_{n+1} = sfp(res_z(Q_n(x,z), Q_n(y,z))) and the sieve
//! for orbits of bounded size.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{fiber, orbit_expand, ExtCoord, Orbit};
use crate::ground_field::{
    adjoin_root, distinct_roots_lower_bound, distinct_roots_of_self_resultant, factor_univariate,
    minimal_polynomial, Tower, UPoly,
};
use crate::polynomials::{resultant_in, resultant_shared, squarefree_part, BiPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QnBudget {
    /// Index of the iterate that would exceed the cap.
    pub level: usize,
    /// Dense coefficient count of the raw resultant.
    pub needed: usize,
    pub cap: usize,
}

/// Dense coefficient count of res_z(a(x,z), a(y,z)).
fn raw_size(a: &BiPoly) -> usize {
    let d = (a.deg_x() * a.deg_y()) as usize;
    (d + 1) * (d + 1)
}

fn next_q(a: &BiPoly) -> BiPoly {
    squarefree_part(&resultant_shared(a, a).expect("Q_n constant in y"))
}

/// Q_0, …, Q_n, refusing iterates whose raw resultant exceeds `cap` dense
/// coefficients.
pub fn q_iterate(p: &BiPoly, n: usize, cap: usize) -> Result<Vec<BiPoly>, QnBudget> {
    let mut qs = alloc::vec![p.monic()];
    while qs.len() <= n {
        let last = qs.last().unwrap();
        let needed = raw_size(last);
        if needed > cap {
            return Err(QnBudget { level: qs.len(), needed, cap });
        }
        qs.push(next_q(last));
    }
    Ok(qs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOrbitConfig {
    pub qn_degree_cap: usize,
    pub tower_degree_cap: usize,
}

impl Default for FiniteOrbitConfig {
    fn default() -> Self {
        FiniteOrbitConfig { qn_degree_cap: 4096, tower_degree_cap: 64 }
    }
}

/// A finite orbit together with the tower its coordinates live in.
#[derive(Clone, Debug)]
pub struct FiniteOrbit {
    pub tower: Tower,
    pub orbit: Orbit,
    /// Number of Galois-conjugate orbits this one represents.
    pub conjugate_orbits: usize,
}

#[derive(Clone, Debug)]
pub struct FiniteOrbits {
    pub orbits: Vec<FiniteOrbit>,
    /// False when a budget cut the search short.
    pub complete: bool,
    /// Q_n reached a fixed point, so every orbit is finite.
    pub all_orbits_finite: bool,
    /// Largest n with Q_n computed.
    pub q_level: usize,
}

/// Minimal polynomial over Q, with `None` for ∞.
pub(crate) fn coord_class(c: &ExtCoord) -> Option<UPoly> {
    c.as_ref().map(minimal_polynomial)
}

/// Work for the discriminant of `a` in y: evaluation points times the
/// length of each univariate resultant.
fn discriminant_size(a: &BiPoly) -> usize {
    let (dx, dy) = (a.deg_x() as usize, a.deg_y() as usize);
    (2 * dx * dy + 1) * (dy + 1)
}

/// Sieve candidates: x-coordinates of points of small orbits, given by
/// their minimal polynomials over Q; `None` is ∞. Without the discriminant
/// only the leading-coefficient roots and ∞ are produced. The flag is false
/// when a discriminant was skipped for exceeding `cap`.
fn candidates(qs: &[BiPoly], n: usize, with_discriminant: bool, cap: usize) -> (Vec<Option<UPoly>>, bool) {
    let mut complete = true;
    let base = Tower::default();
    let mut polys: Vec<UPoly> = Vec::new();
    for q in &qs[..=n] {
        let lc = q.lc_in(Var::Y);
        if lc.deg() >= 1 {
            polys.push(lc);
        }
    }
    if with_discriminant {
        let mut ds = alloc::vec![&qs[n]];
        if n > 0 {
            ds.push(&qs[0]);
        }
        for q in ds {
            if discriminant_size(q) > cap {
                complete = false;
                continue;
            }
            if let Ok(d) = resultant_in(Var::Y, q, &q.derivative(Var::Y)) {
                let u = UPoly::new((0..=d.deg_x()).map(|i| d.coeff(i, 0)).collect());
                if u.deg() >= 1 {
                    polys.push(u);
                }
            }
        }
    }
    let mut facs: BTreeSet<UPoly> = BTreeSet::new();
    for u in polys {
        for (h, _) in factor_univariate(&base, &u) {
            facs.insert(h.monic());
        }
    }
    let mut out: Vec<Option<UPoly>> = alloc::vec![None];
    let mut v: Vec<UPoly> = facs.into_iter().collect();
    v.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)));
    out.extend(v.into_iter().map(Some));
    (out, complete)
}

/// True if the orbit of a point with x-coordinate a root of `h` provably
/// has more than `n_max` points: Q_n, or the next iterate evaluated
/// implicitly, has too many distinct roots over x = α.
fn pruned(h: &UPoly, qs: &[BiPoly], n: usize, n_max: usize) -> bool {
    if (0..=n).any(|k| qs[k].lc_in(Var::Y).rem(h).is_zero()) {
        return false;
    }
    let coeffs = qs[n].coeffs_in(Var::Y);
    distinct_roots_lower_bound(h, &coeffs, 3) > n_max || distinct_roots_of_self_resultant(h, &coeffs, 2) > n_max
}

/// All orbits with at most `n_max` points, up to Galois conjugation.
pub fn finite_orbits(p: &BiPoly, n_max: usize, cfg: &FiniteOrbitConfig) -> FiniteOrbits {
    assert!(p.is_rational(), "finite_orbits expects rational coefficients");
    let mut qs = alloc::vec![p.monic()];
    let mut complete = true;
    let mut all_orbits_finite = false;
    // First Q_n with deg_y Q_n > N.
    let mut n = None;
    loop {
        let last = qs.last().unwrap().clone();
        if last.deg_y() as usize > n_max {
            n = Some(qs.len() - 1);
            break;
        }
        if raw_size(&last) > cfg.qn_degree_cap {
            complete = false;
            break;
        }
        let next = next_q(&last);
        if next.monic() == last {
            all_orbits_finite = true;
            break;
        }
        qs.push(next.monic());
    }
    let q_level = qs.len() - 1;
    let n_idx = n.unwrap_or(q_level);
    if all_orbits_finite && n.is_none() {
        // Orbits avoiding every discriminant have deg_y Q · deg_y p points.
        let generic = (qs[q_level].deg_y() * p.deg_y()) as usize;
        if generic <= n_max {
            complete = false;
        }
    }
    let mut seen: BTreeSet<Option<UPoly>> = BTreeSet::new();
    let mut orbits = Vec::new();
    let (cands, all_candidates) = candidates(&qs, n_idx, n.is_some() || all_orbits_finite, cfg.qn_degree_cap);
    complete &= all_candidates;
    for cand in cands {
        if seen.contains(&cand) {
            continue;
        }
        if let (Some(h), Some(_)) = (&cand, n) {
            if pruned(h, &qs, n_idx, n_max) {
                continue;
            }
        }
        let mut tower = Tower::new(cfg.tower_degree_cap);
        let x0: ExtCoord = match &cand {
            None => None,
            Some(h) => match adjoin_root(&mut tower, h) {
                Ok(a) => Some(a),
                Err(_) => {
                    complete = false;
                    continue;
                }
            },
        };
        let start = match fiber(&mut tower, p, &x0, Var::X) {
            Ok(f) if !f.is_empty() => f[0].clone(),
            Ok(_) => continue,
            Err(_) => {
                complete = false;
                continue;
            }
        };
        let orbit = orbit_expand(&mut tower, p, &start, n_max);
        if orbit.tower_limited {
            complete = false;
        }
        let mut same_class = BTreeSet::new();
        for pt in &orbit.points {
            let c = coord_class(&pt.x);
            if c == cand {
                same_class.insert(pt.x.clone());
            }
            seen.insert(c);
        }
        if orbit.complete {
            let deg = cand.as_ref().map_or(1, |h| h.degree());
            orbits.push(FiniteOrbit { tower, orbit, conjugate_orbits: deg / same_class.len().max(1) });
        }
    }
    FiniteOrbits { orbits, complete, all_orbits_finite, q_level }
}
