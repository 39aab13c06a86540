//! Python bindings: cycles on curve powers, their pushforwards to the
//! Jacobian, torsion bounds, and the vanishing-implication engine, all
//! driven in-process.
//!
//! Usage from Python:
//!
//!     import cyc_py
//!     w = cyc_py.big_gamma(3)
//!     assert w.push([1, 2]).is_zero()
//!     x = w.sigma(5)
//!     print(x.beauville(1, 2).text())

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use cyc::cycle::{intersect, pull_proj, push_proj, CycleExpr, Sym};
use cyc::dsl;
use cyc::inference::{self, Fact};
use cyc::jacobian::{self, JacExpr};
use cyc::numtheory::{torsion_bound, BoundDirection};
use cyc::ops::{self, PointArg, Route};
use cyc::suites::{run_suite, SuiteConfig};
use num::bigint::BigUint;

fn err(e: cyc::CycError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_point(z: &str) -> PyResult<PointArg> {
    match z {
        "C" | "[C]" => Ok(PointArg::Fundamental),
        "e" => Ok(PointArg::sym(Sym::E)),
        "K" => Ok(PointArg::sym(Sym::K)),
        _ => {
            if let Some(rest) = z.strip_prefix('z') {
                if let Ok(j) = rest.parse::<u32>() {
                    if j >= 1 {
                        return Ok(PointArg::sym(Sym::Z(j)));
                    }
                }
            }
            Err(PyValueError::new_err(format!(
                "unknown point argument {z:?}; expected e, K, zN, or C"
            )))
        }
    }
}

fn parse_route(route: &str) -> PyResult<Route> {
    match route {
        "explicit" => Ok(Route::Explicit),
        "projector" => Ok(Route::Projector),
        other => Err(PyValueError::new_err(format!(
            "unknown route {other:?}; expected explicit or projector"
        ))),
    }
}

/// A cycle on a power of the curve, kept in canonical form.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Cycle {
    inner: CycleExpr,
}

#[pymethods]
impl Cycle {
    /// Parse an expression such as "diag(1,2) - e@1*diag(2) @@2".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Cycle {
            inner: dsl::parse_cycle(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Cycle {
            inner: dsl::cycle_from_json(&v).map_err(err)?,
        })
    }

    fn text(&self) -> String {
        self.inner.to_string()
    }

    fn to_json(&self) -> String {
        dsl::cycle_to_json(&self.inner).to_string()
    }

    #[getter]
    fn ambient(&self) -> u32 {
        self.inner.ambient()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Degree of a zero-dimensional cycle, as polynomial text in g and d_j.
    fn degree(&self) -> PyResult<String> {
        Ok(cyc::cycle::degree(&self.inner).map_err(err)?.to_string())
    }

    /// Substitute K = (2g-2)e in every decoration.
    fn xi(&self) -> Self {
        Cycle {
            inner: self.inner.xi_normalize(),
        }
    }

    /// Pushforward along the projection keeping the listed coordinates.
    fn push(&self, keep: Vec<u32>) -> PyResult<Self> {
        Ok(Cycle {
            inner: push_proj(&self.inner, &keep).map_err(err)?,
        })
    }

    /// Pullback along the projection from an ambient power onto the listed
    /// coordinates.
    fn pull(&self, keep: Vec<u32>, ambient: u32) -> PyResult<Self> {
        Ok(Cycle {
            inner: pull_proj(&self.inner, &keep, ambient).map_err(err)?,
        })
    }

    /// Pushforward along the summation map to the Jacobian at a concrete
    /// genus.
    fn sigma(&self, genus: i64) -> PyResult<JacClass> {
        Ok(JacClass {
            inner: jacobian::sigma_push(&self.inner, genus).map_err(err)?,
        })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Cycle {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Cycle {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Cycle {
            inner: intersect(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn __neg__(&self) -> Self {
        Cycle {
            inner: self.inner.neg(),
        }
    }

    fn __str__(&self) -> String {
        self.text()
    }

    fn __repr__(&self) -> String {
        format!("Cycle({:?})", self.text())
    }
}

/// A tautological class on the Jacobian at a concrete genus.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct JacClass {
    inner: JacExpr,
}

#[pymethods]
impl JacClass {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(JacClass {
            inner: dsl::jac_from_json(&v).map_err(err)?,
        })
    }

    fn text(&self) -> String {
        self.inner.to_string()
    }

    fn to_json(&self) -> String {
        dsl::jac_to_json(&self.inner).to_string()
    }

    #[getter]
    fn genus(&self) -> i64 {
        self.inner.genus()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The component of the given dimension and index in the eigenspace
    /// grading for multiplication maps.
    fn beauville(&self, dim: u32, s: u32) -> Self {
        JacClass {
            inner: self.inner.beauville_component(dim, s),
        }
    }

    /// Pushforward along multiplication by n on the Jacobian.
    fn mult_push(&self, n: i64) -> Self {
        JacClass {
            inner: jacobian::mult_push(&self.inner, n),
        }
    }

    /// Substitute the canonical-class components by their base-point
    /// counterparts: KAP_s becomes (2g-2) DEL_s and KAP_1 drops.
    fn xi(&self) -> Self {
        JacClass {
            inner: self.inner.xi_map(),
        }
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(JacClass {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(JacClass {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    /// Pontryagin product.
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(JacClass {
            inner: jacobian::pont_mul(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn __neg__(&self) -> Self {
        JacClass {
            inner: self.inner.neg(),
        }
    }

    fn __str__(&self) -> String {
        self.text()
    }

    fn __repr__(&self) -> String {
        format!("JacClass({:?})", self.text())
    }
}

/// Evaluate an expression; returns a Cycle, a JacClass, or canonical text
/// for scalar and tautological values.
#[pyfunction]
#[pyo3(signature = (expr, genus=None))]
fn evaluate(py: Python<'_>, expr: &str, genus: Option<i64>) -> PyResult<Py<PyAny>> {
    match dsl::eval_str(expr, genus).map_err(err)? {
        dsl::Value::Cycle(w) => Ok(Cycle { inner: w }.into_pyobject(py)?.into_any().unbind()),
        dsl::Value::Jac(x) => Ok(JacClass { inner: x }.into_pyobject(py)?.into_any().unbind()),
        dsl::Value::Scalar(p) => Ok(p.to_string().into_pyobject(py)?.into_any().unbind()),
        dsl::Value::Taut(t) => Ok(t.to_string().into_pyobject(py)?.into_any().unbind()),
    }
}

/// The n-fold modified diagonal of a point class z on the n-th curve power.
#[pyfunction]
#[pyo3(signature = (n, z, route="explicit"))]
fn gamma(n: u32, z: &str, route: &str) -> PyResult<Cycle> {
    Ok(Cycle {
        inner: ops::gamma(n, &parse_point(z)?, parse_route(route)?).map_err(err)?,
    })
}

/// The reduced n-fold modified diagonal of a point class z.
#[pyfunction]
#[pyo3(signature = (n, z, route="explicit"))]
fn beta(n: u32, z: &str, route: &str) -> PyResult<Cycle> {
    Ok(Cycle {
        inner: ops::beta(n, &parse_point(z)?, parse_route(route)?).map_err(err)?,
    })
}

/// The n-fold modified diagonal of the curve.
#[pyfunction]
fn big_gamma(n: u32) -> PyResult<Cycle> {
    Ok(Cycle {
        inner: ops::big_gamma(n).map_err(err)?,
    })
}

/// The reduced n-fold modified diagonal of the curve.
#[pyfunction]
fn big_b(n: u32) -> PyResult<Cycle> {
    Ok(Cycle {
        inner: ops::big_b(n).map_err(err)?,
    })
}

/// Pullback along the (s+2)-fold product embedding of the curve of the
/// exponential-generating-function identity for the curve class.
#[pyfunction]
fn fourier_rhs(s: u32) -> PyResult<Cycle> {
    Ok(Cycle {
        inner: ops::fourier_rhs(s).map_err(err)?,
    })
}

/// Summation pushforward of the 3-fold modified diagonal; with
/// delta_zero=True every word still containing a base-point component is
/// dropped.
#[pyfunction]
#[pyo3(signature = (genus, delta_zero=true))]
fn zhang_expand(genus: i64, delta_zero: bool) -> PyResult<JacClass> {
    Ok(JacClass {
        inner: jacobian::zhang_expand(genus, delta_zero).map_err(err)?,
    })
}

/// The odd part of the curve class, doubled.
#[pyfunction]
fn ceresa_class(genus: i64) -> PyResult<JacClass> {
    Ok(JacClass {
        inner: jacobian::ceresa_class(genus).map_err(err)?,
    })
}

/// Evaluate a tautological expression at genus 3 and reduce it modulo the
/// defining relations; returns canonical text.
#[pyfunction]
fn reduce_taut(expr: &str) -> PyResult<String> {
    match dsl::eval_str(expr, Some(3)).map_err(err)? {
        dsl::Value::Taut(t) => Ok(t.reduce().to_string()),
        other => Err(PyValueError::new_err(format!(
            "expected a tautological expression, got a {} value",
            other.kind()
        ))),
    }
}

fn parse_big(label: &str, s: &str) -> PyResult<BigUint> {
    s.parse::<BigUint>()
        .map_err(|_| PyValueError::new_err(format!("{label} expects a nonnegative integer")))
}

/// Integral torsion bounds. Exactly one input family applies: (qz_n,
/// qz_group) for the automorphism criterion, ceresa_d for a known torsion
/// order on the odd part, gamma3_d for a known torsion order on the 3-fold
/// modified diagonal. Big integers travel as decimal strings.
#[pyfunction]
#[pyo3(signature = (genus, qz_n=None, qz_group=None, ceresa_d=None, gamma3_d=None))]
fn torsion_bounds(
    py: Python<'_>,
    genus: i64,
    qz_n: Option<&str>,
    qz_group: Option<&str>,
    ceresa_d: Option<&str>,
    gamma3_d: Option<&str>,
) -> PyResult<Py<PyAny>> {
    let direction = match (qz_n, qz_group, ceresa_d, gamma3_d) {
        (Some(n), Some(g), None, None) => BoundDirection::QzCriterion {
            n: parse_big("qz_n", n)?,
            group_order: parse_big("qz_group", g)?,
        },
        (None, None, Some(d), None) => BoundDirection::CerToGamma {
            d: parse_big("ceresa_d", d)?,
        },
        (None, None, None, Some(d)) => BoundDirection::GammaToCer {
            d: parse_big("gamma3_d", d)?,
        },
        _ => {
            return Err(PyValueError::new_err(
                "pass either qz_n with qz_group, or ceresa_d, or gamma3_d",
            ))
        }
    };
    let r = torsion_bound(direction, genus).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("genus", r.genus)?;
    out.set_item("m_constant", r.m_constant.to_string())?;
    out.set_item("gamma3_bound", r.gamma3_bound.to_string())?;
    out.set_item("ceresa_bound", r.ceresa_bound.to_string())?;
    out.set_item("steps", r.steps.clone())?;
    Ok(out.into_any().unbind())
}

/// Close vanishing assumptions under the implication rules. Returns a dict
/// with the closed facts and one trace entry per derived fact; with
/// explain set, returns the full derivation chain for that fact instead.
#[pyfunction]
#[pyo3(signature = (genus, assumptions, explain=None))]
fn propagate(
    py: Python<'_>,
    genus: i64,
    assumptions: Vec<String>,
    explain: Option<&str>,
) -> PyResult<Py<PyAny>> {
    let facts: Vec<Fact> = assumptions
        .iter()
        .map(|s| inference::parse_fact(s).map_err(err))
        .collect::<PyResult<_>>()?;
    let state = inference::propagate(genus, &facts).map_err(err)?;
    let out = PyDict::new(py);
    if let Some(target) = explain {
        let fact = inference::parse_fact(target).map_err(err)?;
        out.set_item("fact", fact.to_string())?;
        out.set_item("chain", state.explain(&fact).map_err(err)?)?;
        return Ok(out.into_any().unbind());
    }
    let closure = state.canonical_view();
    out.set_item("genus", genus)?;
    out.set_item("facts", closure.fact_lines())?;
    let traces = PyList::empty(py);
    for fact in closure.facts() {
        if let Some(t) = state.trace(&fact) {
            let entry = PyDict::new(py);
            entry.set_item("fact", fact.to_string())?;
            entry.set_item("rule", t.rule)?;
            entry.set_item(
                "premises",
                t.premises.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            )?;
            entry.set_item("statement", &t.statement)?;
            traces.append(entry)?;
        }
    }
    out.set_item("traces", traces)?;
    Ok(out.into_any().unbind())
}

/// Run one named identity suite; returns (name, passed, detail) triples.
#[pyfunction]
#[pyo3(signature = (name, max_n=4, xi=false, genus=5))]
fn verify_suite(name: &str, max_n: u32, xi: bool, genus: i64) -> PyResult<Vec<(String, bool, String)>> {
    let cfg = SuiteConfig {
        max_n,
        xi_mode: xi,
        genus,
    };
    let results = run_suite(name, &cfg).map_err(err)?;
    Ok(results
        .into_iter()
        .map(|r| (r.name, r.pass, r.detail))
        .collect())
}

#[pymodule]
fn cyc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cycle>()?;
    m.add_class::<JacClass>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(big_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(big_b, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(zhang_expand, m)?)?;
    m.add_function(wrap_pyfunction!(ceresa_class, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_taut, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(propagate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
