//! Python bindings. Reports cross the boundary as JSON and come out as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde_json::{json, Value};

use omega23::certify::{certify_generation, CertBudget};
use omega23::forms::{omega_order as omega_order_formula, witt_type as witt_type_rule, Eps};
use omega23::gens::{build_pair, default_a, search_a as search, GenPair, TAU_CONVENTION};
use omega23::order::element_order_with;
use omega23::verify::{
    load_claims, pair_params, verify_all, verify_order_claims, verify_structural, VerificationReport, CLAIMS_JSONL,
};
use omega23::word::WordEnv;
use omega23::{Error, Field, DEFAULT_SEED};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn big_int(py: Python<'_>, decimal: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("builtins")?.getattr("int")?.call1((decimal,))?.unbind())
}

/// Builds a pair; `a` is an int, a coefficient list, or `None` for the default.
fn pair(py: Python<'_>, n: usize, q: u64, a: Option<&Bound<'_, PyAny>>, force: bool) -> PyResult<GenPair> {
    let k = Field::from_order(q).map_err(err)?;
    let a = match a {
        Some(obj) => {
            let text: String = py.import("json")?.call_method1("dumps", (obj,))?.extract()?;
            k.parse_elem(&text).map_err(err)?
        }
        None => default_a(n, &k).map_err(err)?,
    };
    build_pair(n, &k, a, force).map_err(err)
}

fn report(py: Python<'_>, r: &VerificationReport) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(r).expect("report serializes"))
}

/// Parameters, Gram matrix and both generators.
#[pyfunction]
#[pyo3(signature = (n, q, a=None, force=false))]
fn generate(py: Python<'_>, n: usize, q: u64, a: Option<&Bound<'_, PyAny>>, force: bool) -> PyResult<Py<PyAny>> {
    let p = pair(py, n, q, a, force)?;
    let v = json!({
        "params": pair_params(&p),
        "gram": p.space.gram().to_json(),
        "x": p.x.to_json(),
        "y": p.y.to_json(),
    });
    to_py(py, &v)
}

/// Verification report; `suite` is `"structural"` or `"all"`.
#[pyfunction]
#[pyo3(signature = (n, q, a=None, force=false, suite="all"))]
fn verify(
    py: Python<'_>,
    n: usize,
    q: u64,
    a: Option<&Bound<'_, PyAny>>,
    force: bool,
    suite: &str,
) -> PyResult<Py<PyAny>> {
    let p = pair(py, n, q, a, force)?;
    let r = match suite {
        "structural" => verify_structural(&p),
        "all" => verify_all(&p).map_err(err)?,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    report(py, &r)
}

/// Every row of the built-in order-claims table.
#[pyfunction]
fn verify_claims(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let claims = load_claims(CLAIMS_JSONL).map_err(err)?;
    report(py, &verify_order_claims(&claims))
}

#[pyfunction]
#[pyo3(signature = (n, q, a=None, force=false, restrict_s9=false, seed=DEFAULT_SEED))]
fn certify(
    py: Python<'_>,
    n: usize,
    q: u64,
    a: Option<&Bound<'_, PyAny>>,
    force: bool,
    restrict_s9: bool,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let p = pair(py, n, q, a, force)?;
    let r = py.detach(|| certify_generation(&p, restrict_s9, seed, &CertBudget::default())).map_err(err)?;
    to_py(py, &serde_json::to_value(&r).expect("certificate serializes"))
}

/// Every admissible parameter, in the field's JSON syntax.
#[pyfunction]
fn search_a(py: Python<'_>, n: usize, q: u64) -> PyResult<Py<PyAny>> {
    let k = Field::from_order(q).map_err(err)?;
    let r = search(n, &k, true).map_err(err)?;
    let v = json!({
        "n": n,
        "q": q,
        "values": r.values.iter().map(|&a| k.to_json(a)).collect::<Vec<_>>(),
        "bound": r.bound,
    });
    to_py(py, &v)
}

/// `|Ω_n^ε(q)|`; `eps` is `"plus"`, `"minus"` or `"circ"`.
#[pyfunction]
fn omega_order(py: Python<'_>, n: usize, eps: &str, q: u64) -> PyResult<Py<PyAny>> {
    let e = Eps::parse(eps).map_err(err)?;
    big_int(py, &omega_order_formula(n, e, q).map_err(err)?.to_string())
}

#[pyfunction]
fn witt_type(n: usize, q: u64) -> String {
    match witt_type_rule(n, q) {
        Eps::Plus => "plus",
        Eps::Minus => "minus",
        Eps::Circ => "circ",
    }
    .to_string()
}

/// Order of a word in `x`, `y` (and `t` for `τ`).
#[pyfunction]
#[pyo3(signature = (n, q, word, a=None, force=false))]
fn element_order(
    py: Python<'_>,
    n: usize,
    q: u64,
    word: &str,
    a: Option<&Bound<'_, PyAny>>,
    force: bool,
) -> PyResult<Py<PyAny>> {
    let p = pair(py, n, q, a, force)?;
    let g = WordEnv::new(&p.x, &p.y, TAU_CONVENTION).eval_str(word).map_err(err)?;
    let r = element_order_with(&g, &Default::default()).map_err(err)?;
    big_int(py, &r.order.to_string())
}

#[pymodule]
#[pyo3(name = "_omega23")]
fn omega23_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(search_a, m)?)?;
    m.add_function(wrap_pyfunction!(omega_order, m)?)?;
    m.add_function(wrap_pyfunction!(witt_type, m)?)?;
    m.add_function(wrap_pyfunction!(element_order, m)?)?;
    Ok(())
}
