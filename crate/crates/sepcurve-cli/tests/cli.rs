use std::process::{Command, Output};

fn sepcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepcurve")).args(args).env_clear().output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn example1_exits_zero() {
    let o = sepcurve(&["x*y - x - y - x^2*y^2", "x*y", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solution"]["f"], "(x - 1)/x");
    assert_eq!(v["solution"]["g"], "1/y");
    assert_eq!(v["solution"]["q"], "1/(x*y)");
    assert_eq!(v["solution"]["verification"], true);
    assert_eq!(v["budgets"]["max_orbit"], 64);
}

#[test]
fn newton_obstruction_exits_one() {
    let o = sepcurve(&["1+x^3+x^2*y^2+y^3", "x*y", "--mode", "polynomial-only", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reason"]["kind"], "newton_polygon");
}

#[test]
fn tiny_orbit_budget_exits_two() {
    let o = sepcurve(&["x*y - x*y^2 - x^2*y - x^2 - x - y^2", "x*y", "--max-orbit", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("budget_exhausted"));
}

#[test]
fn input_errors_exit_three() {
    let o = sepcurve(&["x + ", "x"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 4"));
    assert_eq!(sepcurve(&["x^2 - y^2", "x"]).status.code(), Some(3));
    assert_eq!(sepcurve(&["x*y - 1", "x", "--max-orbit", "0"]).status.code(), Some(3));
    assert_eq!(sepcurve(&["x*y - 1"]).status.code(), Some(3));
}

#[test]
fn environment_mirrors_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_sepcurve"))
        .args(["x*y - x*y^2 - x^2*y - x^2 - x - y^2", "x*y"])
        .env_clear()
        .env("SEPCURVE_MAX_ORBIT", "1")
        .env("SEPCURVE_JSON", "true")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["budgets"]["max_orbit"], 1);
}

#[test]
fn graph_export() {
    let dir = std::env::temp_dir().join(format!("sepcurve-graph-{}", std::process::id()));
    let o = sepcurve(&["x*y - x - y - x^2*y^2", "x*y", "--export-graph", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).unwrap();
    assert!(text.starts_with("graph orbit {"));
    assert!(text.contains("(0, 0)"));
}

#[test]
fn printed_solution_reparses() {
    let o = sepcurve(&["x*y - x*y^2 - x^2*y - x^2 - x - y^2", "x*y", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = sepcurve_cli::parse_ratfunc("x*y - x*y^2 - x^2*y - x^2 - x - y^2").unwrap();
    let f = sepcurve_cli::parse_ratfunc(v["solution"]["f"].as_str().unwrap()).unwrap();
    let g = sepcurve_cli::parse_ratfunc(v["solution"]["g"].as_str().unwrap()).unwrap();
    let q = sepcurve_cli::parse_ratfunc(v["solution"]["q"].as_str().unwrap()).unwrap();
    let r = sepcurve_cli::parse_ratfunc("x*y").unwrap();
    assert_eq!(r.add(&q.mul(&p)), f.sub(&g));
    assert_eq!(f.to_string(), v["solution"]["f"].as_str().unwrap());
}
