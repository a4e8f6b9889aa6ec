use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use sepcurve::separation::{Budgets, Mode};
use sepcurve_cli::{orbit_graphs, parse_instance, run, InstanceSpec, Output, EXIT_INPUT};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Auto,
    Nontrivial,
    Trivial,
    PolynomialOnly,
}

/// Decouple r modulo an irreducible p: find f(x), g(y), q with r + q·p = f - g.
///
/// Exit status: 0 solution, 1 proved empty, 2 budget exhausted, 3 input error.
#[derive(Debug, Parser)]
#[command(name = "sepcurve", version)]
struct Cli {
    /// Irreducible polynomial in x and y, e.g. "x*y - x - y - x^2*y^2".
    #[arg(allow_hyphen_values = true)]
    p: String,
    /// Rational function in x and y, e.g. "x*y".
    #[arg(allow_hyphen_values = true)]
    r: String,
    #[arg(long, env = "SEPCURVE_MAX_ORBIT", default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    max_orbit: u32,
    #[arg(long, env = "SEPCURVE_PATH_DEPTH", default_value_t = 32, value_parser = clap::value_parser!(u32).range(1..))]
    path_depth: u32,
    #[arg(long = "finite-orbit-N", env = "SEPCURVE_FINITE_ORBIT_N", default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..))]
    finite_orbit_n: u32,
    #[arg(long, env = "SEPCURVE_K_CAP", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    k_cap: u32,
    #[arg(long, env = "SEPCURVE_QN_DEGREE_CAP", default_value_t = 4096, value_parser = clap::value_parser!(u32).range(1..))]
    qn_degree_cap: u32,
    #[arg(long, env = "SEPCURVE_TOWER_DEGREE_CAP", default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    tower_degree_cap: u32,
    /// Initial Puiseux truncation order [default: 2·(deg p + deg num r + deg den r)].
    #[arg(long, env = "SEPCURVE_TRUNCATION", value_parser = clap::value_parser!(u32).range(1..))]
    truncation: Option<u32>,
    #[arg(long, env = "SEPCURVE_MODE", value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Print the report as JSON.
    #[arg(long, env = "SEPCURVE_JSON")]
    json: bool,
    /// Write the orbit graphs through the poles of r to this file.
    #[arg(long, env = "SEPCURVE_EXPORT_GRAPH", value_name = "PATH")]
    export_graph: Option<PathBuf>,
}

impl Cli {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            p_text: self.p.clone(),
            r_text: self.r.clone(),
            budgets: Budgets {
                max_orbit: self.max_orbit as usize,
                path_depth: self.path_depth as usize,
                finite_orbit_n: self.finite_orbit_n as usize,
                k_cap: self.k_cap,
                qn_degree_cap: self.qn_degree_cap as usize,
                tower_degree_cap: self.tower_degree_cap as usize,
                truncation: self.truncation,
            },
            mode: match self.mode {
                ModeArg::Auto => Mode::Auto,
                ModeArg::Nontrivial => Mode::NonTrivial,
                ModeArg::Trivial => Mode::Trivial,
                ModeArg::PolynomialOnly => Mode::PolynomialOnly,
            },
            output: if self.json { Output::Json } else { Output::Human },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let spec = cli.spec();
    if let Some(path) = &cli.export_graph {
        if let Ok((p, r)) = parse_instance(&spec) {
            if let Err(e) = std::fs::write(path, orbit_graphs(&p, &r, &spec.budgets)) {
                eprintln!("error: {}: {}", path.display(), e);
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
    }
    let res = run(&spec);
    print!("{}", res.stdout);
    eprint!("{}", res.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(res.exit_code as u8)
}
