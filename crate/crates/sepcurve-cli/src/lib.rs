//! Parsing, running and reporting for the `sepcurve` command.

pub mod parse;
pub mod report;

use sepcurve::curve_orbits::{orbit_expand, poles_on_curve, OrbitGraph};
use sepcurve::ground_field::Tower;
use sepcurve::polynomials::{BiPoly, RatFunc2};
use sepcurve::separation::{decouple, Budgets, DecoupleConfig, DecoupleOutcome, Mode};
use thiserror::Error;

pub use parse::{parse_expression, parse_ratfunc, ParseError, Parsed};
pub use report::Report;

pub const EXIT_SOLUTION: i32 = 0;
pub const EXIT_PROVED_EMPTY: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Human,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub p_text: String,
    pub r_text: String,
    pub budgets: Budgets,
    pub mode: Mode,
    pub output: Output,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("p: {0}")]
    P(ParseError),
    #[error("r: {0}")]
    R(ParseError),
    #[error("p must be a polynomial")]
    PNotPolynomial,
    #[error("{0}")]
    Input(sepcurve::separation::InputError),
}

pub struct RunResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_instance(spec: &InstanceSpec) -> Result<(BiPoly, RatFunc2), InstanceError> {
    let p = match parse_expression(&spec.p_text).map_err(InstanceError::P)? {
        Parsed::Polynomial(p) => p,
        _ => return Err(InstanceError::PNotPolynomial),
    };
    let r = parse_ratfunc(&spec.r_text).map_err(InstanceError::R)?;
    Ok((p, r))
}

pub fn solve(spec: &InstanceSpec) -> Result<(i32, Report), InstanceError> {
    let (p, r) = parse_instance(spec)?;
    let cfg = DecoupleConfig { budgets: spec.budgets.clone(), mode: spec.mode };
    let rep = decouple(&p, &r, &cfg).map_err(InstanceError::Input)?;
    let code = match rep.outcome {
        DecoupleOutcome::Solution(_) => EXIT_SOLUTION,
        DecoupleOutcome::ProvedEmpty(_) => EXIT_PROVED_EMPTY,
        DecoupleOutcome::BudgetExhausted => EXIT_BUDGET,
    };
    Ok((code, report::build(&p, &r, spec.mode, &rep)))
}

pub fn run(spec: &InstanceSpec) -> RunResult {
    match solve(spec) {
        Ok((exit_code, rep)) => {
            let stdout = match spec.output {
                Output::Json => rep.to_json() + "\n",
                Output::Human => rep.to_human(),
            };
            RunResult { exit_code, stdout, stderr: String::new() }
        }
        Err(e) => RunResult { exit_code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

/// Orbit graphs through the poles of r on p = 0, one block per orbit.
pub fn orbit_graphs(p: &BiPoly, r: &RatFunc2, budgets: &Budgets) -> String {
    let mut tower = Tower::new(budgets.tower_degree_cap);
    let poles = match poles_on_curve(&mut tower, r, p) {
        Ok(v) => v,
        Err(e) => return format!("// poles of r: {}\n", e),
    };
    let mut out = String::new();
    let mut seen = std::collections::BTreeSet::new();
    for pt in &poles {
        if seen.contains(pt) {
            continue;
        }
        let o = orbit_expand(&mut tower, p, pt, budgets.max_orbit);
        seen.extend(o.points.iter().cloned());
        out += &OrbitGraph::from_orbit(&o).to_dot();
    }
    out
}
