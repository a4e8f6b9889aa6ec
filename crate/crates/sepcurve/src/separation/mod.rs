//! Decoupling r modulo p: separated multiples of p, multiplicity bounds,
//! the pole-support ansatz, emptiness certificates and the pipeline tying
//! them together.

mod ansatz;
mod bounds;
mod generator;
mod obstruct;

pub use ansatz::{ansatz_solve, verify_solution, AnsatzSpec, PoleSpec};
pub use bounds::{
    bounds_nontrivial, bounds_trivial_finite, bounds_trivial_region, propagate_bound, Bound, BoundKind, CoordBounds,
    FiniteSeed, MultiplicityBoundMap, NonPositiveDegree, SeedRule,
};
pub use generator::{quasihomog_generator, separated_multiple_search, QuasiHomog, SearchBudget, SeparatedSearch, TrivialEvidence};
pub use obstruct::{newton_polygon_obstruction, two_paths_in_graph, two_paths_obstruction, NewtonVerdict, TwoPathsVerdict};

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::curve_orbits::{
    finite_orbits, marked_region, orbit_expand, poles_and_roots_on_curve, poles_on_curve, special_pole_test,
    CurvePoint, FiniteOrbitConfig, Orbit, OrbitGraph, PoleVerdict, SpecialPole,
};
use crate::ground_field::{factor_univariate, Fe, Rational, Tower, UPoly};
use crate::polynomials::{content_in, BiPoly, RatFunc2, UniRatFunc, Var};

/// A pair (f, g) ∈ K(x) × K(y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedPair {
    pub f: UniRatFunc,
    pub g: UniRatFunc,
}

/// A certificate r + q·p = f − g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationSolution {
    pub f: UniRatFunc,
    pub g: UniRatFunc,
    pub q: RatFunc2,
    /// Dimension of the solution family beyond constants within the ansatz.
    pub nullspace_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub max_orbit: usize,
    pub path_depth: usize,
    pub finite_orbit_n: usize,
    pub k_cap: u32,
    pub qn_degree_cap: usize,
    pub tower_degree_cap: usize,
    /// Initial Puiseux truncation order; `None` picks 2·(deg p + deg r_n + deg r_d).
    pub truncation: Option<u32>,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_orbit: 64,
            path_depth: 32,
            finite_orbit_n: 24,
            k_cap: 8,
            qn_degree_cap: 4096,
            tower_degree_cap: 64,
            truncation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Auto,
    NonTrivial,
    Trivial,
    PolynomialOnly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecoupleConfig {
    pub budgets: Budgets,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmptyReason {
    /// p divides the denominator of r.
    NotInLocalRing,
    NewtonPolygon,
    /// Valid under the assumption that components of `depth` points are infinite.
    TwoPaths { pole: CurvePoint, depth: usize },
    LinearInconsistentNontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecoupleOutcome {
    Solution(SeparationSolution),
    ProvedEmpty(EmptyReason),
    BudgetExhausted,
}

/// Which part of the pipeline produced the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Settled during input validation.
    Direct,
    NonTrivial,
    Trivial,
    PolynomialOnly,
}

/// Unproved statements an outcome relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assumption {
    /// F(p) taken as trivial because the search ran out of budget.
    TrivialFieldByBudget,
    /// Orbits of at most `n` points were treated as the only finite ones.
    FiniteOrbitsUpTo { n: usize, exhaustive: bool },
    /// A finite-orbit bound used the minimal k of the leading-part generator.
    MinimalK { point: CurvePoint, k: u32 },
    /// Components with `depth` points were treated as infinite.
    PathDepth { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub route: Route,
    pub budgets: Budgets,
    pub assumptions: Vec<Assumption>,
    pub bounds: Vec<MultiplicityBoundMap>,
    pub ansatz: Option<AnsatzSpec>,
    pub generator: Option<SeparatedPair>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoupleReport {
    pub outcome: DecoupleOutcome,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    NonRationalCoefficients,
    /// p is constant or involves only one variable.
    Univariate,
    /// No specialization certified irreducibility over Q.
    NotIrreducible,
    /// Polynomial-only mode needs a polynomial r.
    RationalR,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InputError::NonRationalCoefficients => "coefficients must be rational",
            InputError::Univariate => "p must involve both x and y",
            InputError::NotIrreducible => "p is reducible over Q, or irreducibility could not be certified",
            InputError::RationalR => "polynomial-only mode needs a polynomial r",
        };
        f.write_str(s)
    }
}

/// Irreducible if primitive in both variables and some specialization
/// y = a keeping the x-degree is irreducible; likewise with x and y swapped.
pub fn certify_irreducible(p: &BiPoly) -> bool {
    if !content_in(p, Var::X).is_constant() || !content_in(p, Var::Y).is_constant() {
        return false;
    }
    let base = Tower::default();
    for q in [p.clone(), p.swap()] {
        let lc = q.lc_in(Var::X);
        for k in 0..40i64 {
            let a = Fe::int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
            if lc.eval(&a).is_zero() {
                continue;
            }
            let u = q.eval_var(Var::Y, &a);
            let f = factor_univariate(&base, &u);
            if f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == u.degree() {
                return true;
            }
        }
    }
    false
}

fn truncation(b: &Budgets, p: &BiPoly, r: &RatFunc2) -> Rational {
    let t = b.truncation.unwrap_or(2 * (p.total_deg() + r.num().total_deg() + r.den().total_deg())).max(1);
    Rational::from_integer(t.into())
}

/// Orbits through `starts`, skipping points already covered.
fn orbits_of(tower: &Tower, p: &BiPoly, starts: &[CurvePoint], max: usize) -> Vec<(Tower, Orbit)> {
    let mut seen: BTreeSet<CurvePoint> = BTreeSet::new();
    let mut out = Vec::new();
    for s in starts {
        if seen.contains(s) {
            continue;
        }
        let mut t = tower.clone();
        let o = orbit_expand(&mut t, p, s, max);
        seen.extend(o.points.iter().cloned());
        out.push((t, o));
    }
    out
}

struct Run<'a> {
    p: &'a BiPoly,
    r: &'a RatFunc2,
    budgets: &'a Budgets,
    order: Rational,
    diag: Diagnostics,
}

impl Run<'_> {
    fn note(&mut self, s: impl Into<String>) {
        self.diag.notes.push(s.into());
    }

    fn first_solution(&mut self, spec: &AnsatzSpec) -> Option<SeparationSolution> {
        self.diag.ansatz = Some(spec.clone());
        ansatz_solve(self.p, self.r, spec).into_iter().next()
    }

    /// Bounds over each orbit, added into `spec`.
    fn nontrivial_bounds(&mut self, orbits: Vec<(Tower, Orbit)>, spec: &mut AnsatzSpec) -> Result<(), String> {
        for (mut t, o) in orbits {
            if !o.complete {
                return Err(alloc::format!("orbit of {} exceeds {} points", o.points[0], self.budgets.max_orbit));
            }
            let m = bounds_nontrivial(&mut t, self.p, self.r, &o.points, &self.order).map_err(|e| alloc::format!("{}", e))?;
            m.coords().add_to(spec);
            self.diag.bounds.push(m);
        }
        Ok(())
    }

    fn nontrivial(&mut self) -> DecoupleOutcome {
        let mut tower = Tower::new(self.budgets.tower_degree_cap);
        let poles = match poles_on_curve(&mut tower, self.r, self.p) {
            Ok(v) => v,
            Err(e) => {
                self.note(alloc::format!("poles of r: {}", e));
                return DecoupleOutcome::BudgetExhausted;
            }
        };
        let mut spec = AnsatzSpec::default();
        let pole_orbits = orbits_of(&tower, self.p, &poles, self.budgets.max_orbit);
        let covered: BTreeSet<CurvePoint> = pole_orbits.iter().flat_map(|(_, o)| o.points.iter().cloned()).collect();
        if let Err(e) = self.nontrivial_bounds(pole_orbits, &mut spec) {
            self.note(e);
            return DecoupleOutcome::BudgetExhausted;
        }
        if let Some(s) = self.first_solution(&spec) {
            return DecoupleOutcome::Solution(s);
        }
        // Orbits through roots of r can carry poles of f and g as well.
        let mut tower = Tower::new(self.budgets.tower_degree_cap);
        let roots = match poles_and_roots_on_curve(&mut tower, self.r, self.p) {
            Ok(pr) => pr.roots,
            Err(e) => {
                self.note(alloc::format!("roots of r: {}", e));
                return DecoupleOutcome::BudgetExhausted;
            }
        };
        let fresh: Vec<CurvePoint> = roots.into_iter().filter(|pt| !covered.contains(pt)).collect();
        let root_orbits = orbits_of(&tower, self.p, &fresh, self.budgets.max_orbit);
        if let Err(e) = self.nontrivial_bounds(root_orbits, &mut spec) {
            self.note(e);
            return DecoupleOutcome::BudgetExhausted;
        }
        match self.first_solution(&spec) {
            Some(s) => DecoupleOutcome::Solution(s),
            None => DecoupleOutcome::ProvedEmpty(EmptyReason::LinearInconsistentNontrivial),
        }
    }

    /// Seeds and propagates through the finite part of an infinite orbit.
    fn region_bounds(&mut self, tower: &mut Tower, o: &Orbit, poles: &[CurvePoint]) -> Result<MultiplicityBoundMap, DecoupleOutcome> {
        let depth = self.budgets.path_depth;
        let g = OrbitGraph::from_orbit(o);
        let inside: Vec<CurvePoint> = poles.iter().filter(|q| o.contains(q)).cloned().collect();
        if let Some(pole) = two_paths_in_graph(&g, &inside, depth) {
            self.diag.assumptions.push(Assumption::PathDepth { depth });
            return Err(DecoupleOutcome::ProvedEmpty(EmptyReason::TwoPaths { pole, depth }));
        }
        let mut specials: Vec<(CurvePoint, SpecialPole)> = Vec::new();
        for pole in &inside {
            let others: Vec<CurvePoint> = inside.iter().filter(|q| *q != pole).cloned().collect();
            let v = special_pole_test(&g, pole, &others, depth);
            if v.x != PoleVerdict::Unknown || v.y != PoleVerdict::Unknown {
                specials.push((pole.clone(), v));
            }
        }
        if specials.is_empty() {
            self.note(alloc::format!("no special pole in the orbit of {}", o.points[0]));
            return Err(DecoupleOutcome::BudgetExhausted);
        }
        if !self.diag.assumptions.contains(&Assumption::PathDepth { depth }) {
            self.diag.assumptions.push(Assumption::PathDepth { depth });
        }
        let marked: Vec<CurvePoint> = specials.iter().map(|(pt, _)| pt.clone()).collect();
        let region: Vec<CurvePoint> = marked_region(&g, &marked, depth).into_iter().collect();
        bounds_trivial_region(tower, self.p, self.r, &region, &specials, &self.order).map_err(|e| {
            self.note(alloc::format!("{}", e));
            DecoupleOutcome::BudgetExhausted
        })
    }

    /// Tries the ansatz with k raised step by step when a minimal-k seed was used.
    fn escalate(
        &mut self,
        fixed: &AnsatzSpec,
        finite: &mut [(Tower, Vec<CurvePoint>)],
    ) -> Result<Option<SeparationSolution>, String> {
        for extra in 0..self.budgets.k_cap {
            let mut spec = fixed.clone();
            let mut maps = Vec::new();
            let mut uses_k = false;
            let mut flags = Vec::new();
            for (t, pts) in finite.iter_mut() {
                let (m, seeds) = bounds_trivial_finite(t, self.p, self.r, pts, &self.order, extra)
                    .map_err(|e| alloc::format!("{}", e))?;
                for s in seeds {
                    if let SeedRule::MinimalK { k } = s.rule {
                        uses_k = true;
                        flags.push(Assumption::MinimalK { point: s.point, k });
                    }
                }
                m.coords().add_to(&mut spec);
                maps.push(m);
            }
            if let Some(s) = self.first_solution(&spec) {
                self.diag.bounds.extend(maps);
                self.diag.assumptions.extend(flags);
                return Ok(Some(s));
            }
            if !uses_k {
                break;
            }
        }
        Ok(None)
    }

    fn trivial(&mut self) -> DecoupleOutcome {
        let mut tower = Tower::new(self.budgets.tower_degree_cap);
        let poles = match poles_on_curve(&mut tower, self.r, self.p) {
            Ok(v) => v,
            Err(e) => {
                self.note(alloc::format!("poles of r: {}", e));
                return DecoupleOutcome::BudgetExhausted;
            }
        };
        let mut fixed = AnsatzSpec::default();
        let mut finite: Vec<(Tower, Vec<CurvePoint>)> = Vec::new();
        for (mut t, o) in orbits_of(&tower, self.p, &poles, self.budgets.max_orbit) {
            if o.complete {
                finite.push((t, o.points.clone()));
                continue;
            }
            if o.tower_limited {
                self.note("tower degree budget while expanding an orbit");
                return DecoupleOutcome::BudgetExhausted;
            }
            match self.region_bounds(&mut t, &o, &poles) {
                Ok(m) => {
                    m.coords().add_to(&mut fixed);
                    self.diag.bounds.push(m);
                }
                Err(out) => return out,
            }
        }
        match self.escalate(&fixed, &mut finite) {
            Ok(Some(s)) => return DecoupleOutcome::Solution(s),
            Ok(None) => {}
            Err(e) => {
                self.note(e);
                return DecoupleOutcome::BudgetExhausted;
            }
        }
        // Finite orbits without poles of r may still carry poles of f and g.
        if !self.p.is_rational() {
            return DecoupleOutcome::BudgetExhausted;
        }
        let cfg = FiniteOrbitConfig {
            qn_degree_cap: self.budgets.qn_degree_cap,
            tower_degree_cap: self.budgets.tower_degree_cap,
        };
        let fo = finite_orbits(self.p, self.budgets.finite_orbit_n, &cfg);
        self.diag
            .assumptions
            .push(Assumption::FiniteOrbitsUpTo { n: self.budgets.finite_orbit_n, exhaustive: fo.complete });
        let known: BTreeSet<CurvePoint> = finite.iter().flat_map(|(_, v)| v.iter().cloned()).collect();
        for o in fo.orbits {
            if o.orbit.points.iter().any(|pt| known.contains(pt)) {
                continue;
            }
            finite.push((o.tower, o.orbit.points));
        }
        match self.escalate(&fixed, &mut finite) {
            Ok(Some(s)) => DecoupleOutcome::Solution(s),
            Ok(None) => DecoupleOutcome::BudgetExhausted,
            Err(e) => {
                self.note(e);
                DecoupleOutcome::BudgetExhausted
            }
        }
    }

    fn polynomial_only(&mut self) -> DecoupleOutcome {
        if newton_polygon_obstruction(self.p, self.r.num()) == NewtonVerdict::ImpossiblePolynomialCase {
            return DecoupleOutcome::ProvedEmpty(EmptyReason::NewtonPolygon);
        }
        let step = self.p.deg_x().max(self.p.deg_y());
        let top = self.r.num().total_deg().max(1) + self.budgets.k_cap * step;
        for d in 1..=top {
            let spec = AnsatzSpec {
                f: PoleSpec { finite: Vec::new(), at_infinity: d },
                g: PoleSpec { finite: Vec::new(), at_infinity: d },
            };
            if let Some(s) = self.first_solution(&spec) {
                return DecoupleOutcome::Solution(s);
            }
        }
        self.note(alloc::format!("no polynomial solution with degrees up to {}", top));
        DecoupleOutcome::BudgetExhausted
    }
}

/// Searches for f, g and q with r + q·p = f − g.
pub fn decouple(p: &BiPoly, r: &RatFunc2, cfg: &DecoupleConfig) -> Result<DecoupleReport, InputError> {
    if !p.is_rational() || !r.num().is_rational() || !r.den().is_rational() {
        return Err(InputError::NonRationalCoefficients);
    }
    if p.deg_x() == 0 || p.deg_y() == 0 {
        return Err(InputError::Univariate);
    }
    if !certify_irreducible(p) {
        return Err(InputError::NotIrreducible);
    }
    if cfg.mode == Mode::PolynomialOnly && !r.is_polynomial() {
        return Err(InputError::RationalR);
    }
    let mut run = Run {
        p,
        r,
        budgets: &cfg.budgets,
        order: truncation(&cfg.budgets, p, r),
        diag: Diagnostics {
            route: Route::Direct,
            budgets: cfg.budgets.clone(),
            assumptions: Vec::new(),
            bounds: Vec::new(),
            ansatz: None,
            generator: None,
            notes: Vec::new(),
        },
    };
    let outcome = if !r.in_local_ring(p) {
        DecoupleOutcome::ProvedEmpty(EmptyReason::NotInLocalRing)
    } else if r.in_ideal(p) || r.is_polynomial() && r.num().is_constant() {
        let c = if r.in_ideal(p) { Fe::zero() } else { r.num().coeff(0, 0) };
        let f = UniRatFunc::poly(Var::X, UPoly::constant(c.clone()));
        let q = RatFunc2::poly(BiPoly::constant(c)).sub(r).div(&RatFunc2::poly(p.clone()));
        let g = UniRatFunc::poly(Var::Y, UPoly::zero());
        DecoupleOutcome::Solution(SeparationSolution { f, g, q, nullspace_dim: 0 })
    } else {
        match cfg.mode {
            Mode::PolynomialOnly => {
                run.diag.route = Route::PolynomialOnly;
                run.polynomial_only()
            }
            Mode::Trivial => {
                run.diag.route = Route::Trivial;
                run.trivial()
            }
            Mode::Auto | Mode::NonTrivial => {
                let sb = SearchBudget {
                    max_orbit: cfg.budgets.max_orbit,
                    multiple_cap: cfg.budgets.k_cap,
                    tower_degree_cap: cfg.budgets.tower_degree_cap,
                };
                match separated_multiple_search(p, &sb) {
                    SeparatedSearch::NonTrivial { generator, .. } => {
                        run.diag.route = Route::NonTrivial;
                        run.diag.generator = Some(generator);
                        run.nontrivial()
                    }
                    _ if cfg.mode == Mode::NonTrivial => {
                        run.diag.route = Route::NonTrivial;
                        run.note("no separated multiple found");
                        DecoupleOutcome::BudgetExhausted
                    }
                    SeparatedSearch::Trivial(ev) => {
                        run.diag.route = Route::Trivial;
                        if !ev.is_proof() {
                            run.diag.assumptions.push(Assumption::TrivialFieldByBudget);
                        }
                        run.trivial()
                    }
                    SeparatedSearch::Unknown(why) => {
                        run.diag.route = Route::Trivial;
                        run.note(why);
                        run.diag.assumptions.push(Assumption::TrivialFieldByBudget);
                        run.trivial()
                    }
                }
            }
        }
    };
    if let DecoupleOutcome::Solution(s) = &outcome {
        assert!(verify_solution(p, r, s), "unverified solution");
    }
    Ok(DecoupleReport { outcome, diagnostics: run.diag })
}

#[cfg(test)]
mod tests;
