#![allow(dead_code)]

use std::sync::Arc;

use twistforms::cli::Config;
use twistforms::omega::{AlgebraCtx, Caps};

pub const Q_LINE: &str = r#"{"field": {"Qq": true}, "variables": ["x"], "endo": {"diagonal": ["q"]},
    "caps": {"var_degree": 4, "form_degree": 2}}"#;

pub const SWAP: &str = r#"{"field": "Q", "variables": ["x", "y"], "endo": {"matrix": [[0, 1], [1, 0]]},
    "caps": {"var_degree": 4, "form_degree": 2}}"#;

pub const IDEMPOTENT: &str = r#"{"field": "Q", "variables": ["x"], "endo": {"images": ["1 - x"]},
    "relations": [{"var": "x", "power": 2, "rhs": "x"}], "caps": {"var_degree": 4, "form_degree": 2}}"#;

pub const IDENTITY: &str = r#"{"field": "Q", "variables": ["x", "y"], "endo": {"diagonal": [1, 1]},
    "caps": {"var_degree": 4, "form_degree": 2}}"#;

pub fn config(json: &str) -> Config {
    Config::from_json(json).unwrap()
}

/// The one-variable q-line with `q` specialized to a rational value.
pub fn q_line_at(q: i64) -> Config {
    let mut c = config(Q_LINE);
    c.q_value = Some(twistforms::cli::config::Entry::Int(q));
    c
}

pub fn build(c: &Config, var_degree: usize, form_degree: usize) -> Arc<AlgebraCtx> {
    Arc::new(c.build_with_caps(Caps::new(var_degree, form_degree)).unwrap())
}

/// The three reference contexts: q-line over Q(q), the swap of two
/// variables, and k[x]/(x^2 - x) with x -> 1 - x.
pub fn reference_contexts() -> Vec<(&'static str, Config)> {
    vec![
        ("q-line over Q(q)", config(Q_LINE)),
        ("swap on k[x,y]", config(SWAP)),
        ("k[x]/(x^2-x), x -> 1-x", config(IDEMPOTENT)),
    ]
}

/// Expressions for the parse/print round trip, with the config they are
/// read in.
pub fn round_trip_corpus() -> Vec<(&'static str, &'static str)> {
    let q = [
        "0",
        "1",
        "-1",
        "q",
        "x",
        "dx",
        "x^2",
        "x^4 - x",
        "dx*x",
        "x*dx",
        "dx*x^3",
        "x^2*dx + (1-q)*x",
        "dx*dx",
        "x*dx*x",
        "(1 + q)*x^2*dx",
        "q^3*x - q*x + 2",
        "1/2*x - 3/4*dx",
        "(1 - q)/(1 + q)*x",
        "x/(q - 2)",
        "-(x + dx)^2",
        "(x + 1)^3",
        "dx*x - q*x*dx",
        "x*dx (x) x^2",
        "dx (x) x",
        "q*x (x) dx",
        "x (x) dx + dx (x) x",
        "x^2 (x) dx - (1 - q)*x (x) x*dx",
        "1 (x) 1",
        "(x + 1) (x) (x - 1)",
        "dx (x) dx (x) x",
        "-x (x) 1 (x) dx",
        "q^2*x*dx (x) x*dx",
        "x^3 + x^2 + x + 1",
        "(q^2 - 1)*x^4",
        "dx*x*x*x",
        "x*x*dx*x",
        "x^2*dx - dx*x^2",
        "(x - q*x)*dx",
        "2*x*dx (x) 1 - 1 (x) 2*x*dx",
        "x^4 (x) 1",
    ];
    let swap = [
        "x*y",
        "dx*dy",
        "dy*dx + dx*dy",
        "(x - y)*(dx + dy)",
        "dy*dy",
        "x^2*dy - y^2*dx",
        "x (x) dy - y (x) dx",
        "dx*y",
        "x*dy*x",
        "(x + y)^2*dx",
    ];
    q.iter()
        .map(|e| (Q_LINE, *e))
        .chain(swap.iter().map(|e| (SWAP, *e)))
        .collect()
}
