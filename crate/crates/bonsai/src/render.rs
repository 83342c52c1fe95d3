//! Text and JSON forms of elements, tables and suite reports.

use std::fmt::Display;

use serde_json::{json, Map, Value};

use bonsai_core::cohomology::CohomologyTable;
use bonsai_core::{LinComb, Scalar};

use crate::suites::{Check, SuiteReport};

/// `[{"coeff": "c", <key>: "b"}, ...]` in basis order.
pub fn element_json<B: Ord + Clone + Display, K: Scalar + Display>(x: &LinComb<B, K>, key: &str) -> Value {
    Value::Array(
        x.iter()
            .map(|(b, k)| {
                let mut term = Map::new();
                term.insert(String::from("coeff"), Value::String(k.to_string()));
                term.insert(String::from(key), Value::String(b.to_string()));
                Value::Object(term)
            })
            .collect(),
    )
}

/// `{"i": n, ...}` with keys in grade order.
pub fn graded_json<T: Into<Value> + Copy>(dims: &[(usize, T)]) -> Value {
    Value::Object(dims.iter().map(|&(i, n)| (i.to_string(), n.into())).collect())
}

pub fn table_json(t: &CohomologyTable, max_grade: usize) -> Value {
    let chain: Vec<(usize, usize)> = t.chain_dims.iter().copied().enumerate().collect();
    json!({
        "variant": t.variant.to_string(),
        "kind": t.kind.to_string(),
        "field": t.field,
        "max_grade": max_grade,
        "computable_up_to": t.computable_up_to,
        "dims": graded_json(&t.dims),
        "chain_dims": graded_json(&chain),
        "ranks": t.ranks,
    })
}

pub fn table_text(t: &CohomologyTable) -> String {
    let mut out = format!("{} {} over {}\n", t.variant, t.kind, t.field);
    for &(i, h) in &t.dims {
        out += &format!("H^{i} = {h}\n");
    }
    if t.dims.is_empty() {
        out += "no grade is computable within the bound\n";
    }
    out
}

fn check_line(c: &Check) -> String {
    match &c.counterexample {
        None => format!("OK ({} {} checked): {}", c.checked, c.unit, c.name),
        Some(x) => format!("FAIL: {}: {}", c.name, x),
    }
}

pub fn report_text(r: &SuiteReport) -> String {
    let mut out = format!("verify {}\n", r.suite);
    for c in &r.checks {
        out += &check_line(c);
        out.push('\n');
    }
    out
}

pub fn report_json(r: &SuiteReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed(),
                "checked": c.checked,
                "unit": c.unit,
                "counterexample": c.counterexample,
                "notes": c.notes,
            })
        })
        .collect();
    json!({ "suite": r.suite.name(), "passed": r.passed(), "checks": checks })
}
