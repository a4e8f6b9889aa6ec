//! Serializable view of a decoupling report. Field order is fixed by the
//! struct layout, so equal reports serialize to equal bytes.

use serde::Serialize;

use sepcurve::polynomials::{BiPoly, Var};
use sepcurve::separation::{
    verify_solution, Assumption, Bound, BoundKind, Budgets, DecoupleOutcome, DecoupleReport, EmptyReason, Mode, PoleSpec,
    Route,
};
use sepcurve::polynomials::RatFunc2;

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub status: &'static str,
    pub p: String,
    pub r: String,
    pub mode: &'static str,
    pub route: &'static str,
    pub solution: Option<SolutionJson>,
    pub reason: Option<ReasonJson>,
    pub assumptions: Vec<AssumptionJson>,
    pub budgets: BudgetsJson,
    pub generator: Option<PairJson>,
    pub ansatz: Option<AnsatzJson>,
    pub bounds: Vec<Vec<BoundJson>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct SolutionJson {
    pub f: String,
    pub g: String,
    pub q: String,
    pub nullspace_dim: usize,
    pub verification: bool,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct ReasonJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AssumptionJson {
    TrivialFieldByBudget,
    FiniteOrbitsUpTo { n: usize, exhaustive: bool },
    MinimalK { point: String, k: u32 },
    PathDepth { depth: usize },
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct BudgetsJson {
    pub max_orbit: usize,
    pub path_depth: usize,
    pub finite_orbit_n: usize,
    pub k_cap: u32,
    pub qn_degree_cap: usize,
    pub tower_degree_cap: usize,
    pub truncation: Option<u32>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct PairJson {
    pub f: String,
    pub g: String,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct PoleSpecJson {
    pub finite: Vec<PoleJson>,
    pub at_infinity: u32,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct PoleJson {
    pub minpoly: String,
    pub order: u32,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct AnsatzJson {
    pub f: PoleSpecJson,
    pub g: PoleSpecJson,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct BoundJson {
    pub point: String,
    pub f: String,
    pub g: String,
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Auto => "auto",
        Mode::NonTrivial => "nontrivial",
        Mode::Trivial => "trivial",
        Mode::PolynomialOnly => "polynomial-only",
    }
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Direct => "direct",
        Route::NonTrivial => "nontrivial",
        Route::Trivial => "trivial",
        Route::PolynomialOnly => "polynomial-only",
    }
}

pub fn status_name(o: &DecoupleOutcome) -> &'static str {
    match o {
        DecoupleOutcome::Solution(_) => "solution",
        DecoupleOutcome::ProvedEmpty(_) => "proved_empty",
        DecoupleOutcome::BudgetExhausted => "budget_exhausted",
    }
}

fn reason(e: &EmptyReason) -> ReasonJson {
    let (kind, pole, depth) = match e {
        EmptyReason::NotInLocalRing => ("not_in_local_ring", None, None),
        EmptyReason::NewtonPolygon => ("newton_polygon", None, None),
        EmptyReason::TwoPaths { pole, depth } => ("two_paths", Some(pole.to_string()), Some(*depth)),
        EmptyReason::LinearInconsistentNontrivial => ("linear_inconsistent_nontrivial", None, None),
    };
    ReasonJson { kind, pole, depth }
}

fn assumption(a: &Assumption) -> AssumptionJson {
    match a {
        Assumption::TrivialFieldByBudget => AssumptionJson::TrivialFieldByBudget,
        Assumption::FiniteOrbitsUpTo { n, exhaustive } => AssumptionJson::FiniteOrbitsUpTo { n: *n, exhaustive: *exhaustive },
        Assumption::MinimalK { point, k } => AssumptionJson::MinimalK { point: point.to_string(), k: *k },
        Assumption::PathDepth { depth } => AssumptionJson::PathDepth { depth: *depth },
    }
}

pub fn budgets(b: &Budgets) -> BudgetsJson {
    BudgetsJson {
        max_orbit: b.max_orbit,
        path_depth: b.path_depth,
        finite_orbit_n: b.finite_orbit_n,
        k_cap: b.k_cap,
        qn_degree_cap: b.qn_degree_cap,
        tower_degree_cap: b.tower_degree_cap,
        truncation: b.truncation,
    }
}

fn pole_spec(s: &PoleSpec, v: Var) -> PoleSpecJson {
    PoleSpecJson {
        finite: s
            .finite
            .iter()
            .map(|(h, m)| PoleJson { minpoly: BiPoly::from_upoly(h, v).to_string(), order: *m })
            .collect(),
        at_infinity: s.at_infinity,
    }
}

fn bound(b: &Bound) -> String {
    match (&b.value, b.kind) {
        (None, _) => "-inf".into(),
        (Some(v), BoundKind::UpperBound) => format!("<= {}", v),
        (Some(v), BoundKind::ExactValue) => format!("= {}", v),
    }
}

pub fn build(p: &BiPoly, r: &RatFunc2, mode: Mode, rep: &DecoupleReport) -> Report {
    let d = &rep.diagnostics;
    let (solution, reason_json) = match &rep.outcome {
        DecoupleOutcome::Solution(s) => (
            Some(SolutionJson {
                f: s.f.to_string(),
                g: s.g.to_string(),
                q: s.q.to_string(),
                nullspace_dim: s.nullspace_dim,
                verification: verify_solution(p, r, s),
            }),
            None,
        ),
        DecoupleOutcome::ProvedEmpty(e) => (None, Some(reason(e))),
        DecoupleOutcome::BudgetExhausted => (None, None),
    };
    Report {
        status: status_name(&rep.outcome),
        p: p.to_string(),
        r: r.to_string(),
        mode: mode_name(mode),
        route: route_name(d.route),
        solution,
        reason: reason_json,
        assumptions: d.assumptions.iter().map(assumption).collect(),
        budgets: budgets(&d.budgets),
        generator: d.generator.as_ref().map(|g| PairJson { f: g.f.to_string(), g: g.g.to_string() }),
        ansatz: d.ansatz.as_ref().map(|a| AnsatzJson { f: pole_spec(&a.f, Var::X), g: pole_spec(&a.g, Var::Y) }),
        bounds: d
            .bounds
            .iter()
            .map(|m| {
                m.entries
                    .iter()
                    .map(|(pt, (bf, bg))| BoundJson { point: pt.to_string(), f: bound(bf), g: bound(bg) })
                    .collect()
            })
            .collect(),
        notes: d.notes.clone(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("status: {}\nroute: {}\n", self.status, self.route);
        if let Some(s) = &self.solution {
            out += &format!("f = {}\ng = {}\nq = {}\n", s.f, s.g, s.q);
            out += &format!("nullspace_dim = {}\nverified: {}\n", s.nullspace_dim, s.verification);
        }
        if let Some(r) = &self.reason {
            out += &format!("reason: {}", r.kind);
            if let (Some(pole), Some(depth)) = (&r.pole, r.depth) {
                out += &format!(" at {} (depth {})", pole, depth);
            }
            out.push('\n');
        }
        if let Some(g) = &self.generator {
            out += &format!("generator: f = {}, g = {}\n", g.f, g.g);
        }
        for a in &self.assumptions {
            out += &format!("assumption: {}\n", serde_json::to_string(a).unwrap());
        }
        for n in &self.notes {
            out += &format!("note: {}\n", n);
        }
        out
    }
}
