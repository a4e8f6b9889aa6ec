//! Pole-support ansatz for (f, g) and its exact linear solve.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{SeparatedPair, SeparationSolution};
use crate::ground_field::{Fe, UPoly};
use crate::polynomials::{divides, solve_linear, weighted_reduce, BiPoly, LinearSolution, RatFunc2, UniRatFunc, Var, Weight};

/// Poles allowed on one side: finite poles grouped by minimal polynomial
/// over Q, and the pole order at ∞.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleSpec {
    pub finite: Vec<(UPoly, u32)>,
    pub at_infinity: u32,
}

impl PoleSpec {
    pub fn denominator(&self) -> UPoly {
        self.finite.iter().fold(UPoly::one(), |acc, (h, m)| acc.mul(&h.pow(*m as usize)))
    }

    pub fn numerator_degree(&self) -> usize {
        self.denominator().degree() + self.at_infinity as usize
    }

    /// Adds `m` to the allowed order at the class of `h`, keeping the maximum.
    pub fn allow(&mut self, h: Option<&UPoly>, m: u32) {
        match h {
            None => self.at_infinity = self.at_infinity.max(m),
            Some(h) => match self.finite.iter_mut().find(|(g, _)| g == h) {
                Some(e) => e.1 = e.1.max(m),
                None => {
                    self.finite.push((h.clone(), m));
                    self.finite.sort();
                }
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub f: PoleSpec,
    pub g: PoleSpec,
}

/// Columns of the linear system: unknown coefficients of f_n and g_n. The
/// coefficient of y^{deg g_d} in g_n is fixed to 0, removing constants.
struct System {
    fd: UPoly,
    gd: UPoly,
    f_cols: usize,
    g_exps: Vec<usize>,
    matrix: Vec<Vec<Fe>>,
    rhs: Vec<Fe>,
}

fn normal_form(a: &BiPoly, p: &BiPoly) -> BiPoly {
    weighted_reduce(a, p, &Weight::ints(1, 1))
}

fn build(p: &BiPoly, r: &RatFunc2, spec: &AnsatzSpec) -> System {
    let fd = spec.f.denominator();
    let gd = spec.g.denominator();
    let (nf, ng) = (spec.f.numerator_degree(), spec.g.numerator_degree());
    let fd2 = BiPoly::from_upoly(&fd, Var::X);
    let gd2 = BiPoly::from_upoly(&gd, Var::Y);
    let base_f = gd2.mul(r.den());
    let base_g = fd2.mul(r.den()).neg();
    let mut cols: Vec<BiPoly> = Vec::new();
    for i in 0..=nf {
        cols.push(normal_form(&base_f.mul_monomial(i as u32, 0), p));
    }
    let g_exps: Vec<usize> = (0..=ng).filter(|&j| j != gd.degree()).collect();
    for &j in &g_exps {
        cols.push(normal_form(&base_g.mul_monomial(0, j as u32), p));
    }
    let target = normal_form(&r.num().mul(&fd2).mul(&gd2), p);
    let mut rows: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for c in cols.iter().chain(core::iter::once(&target)) {
        for (&k, _) in c.terms() {
            let n = rows.len();
            rows.entry(k).or_insert(n);
        }
    }
    let mut matrix = alloc::vec![alloc::vec![Fe::zero(); cols.len()]; rows.len()];
    for (ci, c) in cols.iter().enumerate() {
        for (k, v) in c.terms() {
            matrix[rows[k]][ci] = v.clone();
        }
    }
    let mut rhs = alloc::vec![Fe::zero(); rows.len()];
    for (k, v) in target.terms() {
        rhs[rows[k]] = v.clone();
    }
    System { fd, gd, f_cols: nf + 1, g_exps, matrix, rhs }
}

impl System {
    fn pair(&self, v: &[Fe]) -> SeparatedPair {
        let f_n = UPoly::new(v[..self.f_cols].to_vec());
        let mut gc = alloc::vec![Fe::zero(); self.g_exps.iter().max().map_or(0, |m| m + 1)];
        for (k, &j) in self.g_exps.iter().enumerate() {
            gc[j] = v[self.f_cols + k].clone();
        }
        SeparatedPair {
            f: UniRatFunc::new(Var::X, f_n, self.fd.clone()),
            g: UniRatFunc::new(Var::Y, UPoly::new(gc), self.gd.clone()),
        }
    }

    fn solve(&self) -> LinearSolution {
        let cols = self.f_cols + self.g_exps.len();
        if self.matrix.is_empty() {
            return LinearSolution::Affine {
                particular: alloc::vec![Fe::zero(); cols],
                nullspace: (0..cols)
                    .map(|k| (0..cols).map(|i| if i == k { Fe::one() } else { Fe::zero() }).collect())
                    .collect(),
            };
        }
        solve_linear(&self.matrix, &self.rhs)
    }
}

/// q = (f - g - r) / p, or `None` when the numerator is not divisible by p.
fn quotient(p: &BiPoly, r: &RatFunc2, pair: &SeparatedPair) -> Option<RatFunc2> {
    let e = pair.f.to_bivariate().sub(&pair.g.to_bivariate()).sub(r);
    if !divides(p, e.num()) {
        return None;
    }
    Some(e.div(&RatFunc2::poly(p.clone())))
}

/// Checks r + q·p = f - g exactly and that p does not divide the
/// denominator of q.
pub fn verify_solution(p: &BiPoly, r: &RatFunc2, sol: &SeparationSolution) -> bool {
    if !sol.q.is_zero() && divides(p, sol.q.den()) {
        return false;
    }
    let lhs = r.add(&sol.q.mul(&RatFunc2::poly(p.clone())));
    let rhs = sol.f.to_bivariate().sub(&sol.g.to_bivariate());
    lhs.sub(&rhs).is_zero()
}

/// Solutions with poles inside `spec`: the representative with free
/// parameters at zero, then one shifted representative per nullspace
/// direction. Empty exactly when the linear system is inconsistent.
pub fn ansatz_solve(p: &BiPoly, r: &RatFunc2, spec: &AnsatzSpec) -> Vec<SeparationSolution> {
    let sys = build(p, r, spec);
    let LinearSolution::Affine { particular, nullspace } = sys.solve() else {
        return Vec::new();
    };
    let mut vectors = alloc::vec![particular.clone()];
    for n in &nullspace {
        vectors.push(particular.iter().zip(n).map(|(a, b)| a.add(b)).collect());
    }
    let mut out = Vec::new();
    for v in vectors {
        let pair = sys.pair(&v);
        let q = quotient(p, r, &pair).expect("ansatz solution not divisible by p");
        let sol = SeparationSolution { f: pair.f, g: pair.g, q, nullspace_dim: nullspace.len() };
        assert!(verify_solution(p, r, &sol), "ansatz produced an invalid certificate");
        out.push(sol);
    }
    out
}

/// Non-constant pairs (f, g) with p dividing the numerator of f - g and
/// poles inside `spec`, one per nullspace direction.
pub(crate) fn separated_multiples(p: &BiPoly, spec: &AnsatzSpec) -> Vec<SeparatedPair> {
    let sys = build(p, &RatFunc2::zero(), spec);
    match sys.solve() {
        LinearSolution::Affine { nullspace, .. } => nullspace.iter().map(|n| sys.pair(n)).collect(),
        LinearSolution::Inconsistent => Vec::new(),
    }
}
