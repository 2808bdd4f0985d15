//! Python bindings. Sequences, vectors and derivations are passed in the
//! same literal format as scenario files, as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyList};
use serde::de::DeserializeOwned;
use serde::Serialize;

use qcyl_cli::report::{emit_report, Format};
use qcyl_cli::scenario::{parse, Mode, Overrides};
use qcyl_core::literal::{
    algebra_to_literal, derivation_from_literal, derivation_to_literal, hilbert_from_entries,
    hilbert_to_entries, trig_to_literal, EntryLiteral, ScalarLiteral, SequenceLiteral,
    TermLiteral,
};
use qcyl_core::{
    apply_derivation, decompose_derivation, derivation_symbol, generators, halfspace_membership,
    is_approximately_inner, theta_algebra, theta_compatibility, theta_hilbert, AlgebraElement,
    CertifyConfig, DerivationSpec, Error, HalfSpaceTag, HilbertElement, ImplementationKind,
    ImplementationSpec, IncrementSequence, LatticeSequence, Scalar, Sign,
};

fn err(e: Error) -> PyErr {
    match e {
        Error::WindowExhausted { .. } | Error::NotPositiveDefinite { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Round-trips a Python value through JSON into a literal type. Python
/// complex numbers become `[re, im]` pairs.
fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let py = obj.py();
    let json = py.import("json")?;
    let default = pyo3::types::PyCFunction::new_closure(py, None, None, |args, _| -> PyResult<Py<PyAny>> {
        let py = args.py();
        let v = args.get_item(0)?;
        if let Ok(c) = v.cast::<PyComplex>() {
            return Ok(PyList::new(py, [c.real(), c.imag()])?.into_any().unbind());
        }
        Err(PyValueError::new_err(format!("unsupported value {v}")))
    })?;
    let kwargs = pyo3::types::PyDict::new(py);
    kwargs.set_item("default", default)?;
    let text: String = json.call_method("dumps", (obj,), Some(&kwargs))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn scalar_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    let lit: ScalarLiteral = from_py(obj)?;
    lit.to_scalar().map_err(err)
}

fn complex(py: Python<'_>, s: &Scalar) -> Py<PyAny> {
    let z = s.to_complex64();
    PyComplex::from_doubles(py, z.re, z.im).into_any().unbind()
}

/// Eventually affine sequence on the integers.
#[pyclass(module = "qcyl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Sequence {
    inner: IncrementSequence,
}

#[pymethods]
impl Sequence {
    /// From a literal: `{"window_start", "values", "left_tail" | "left_slope", ...}`.
    #[new]
    fn new(literal: &Bound<'_, PyAny>) -> PyResult<Self> {
        let lit: SequenceLiteral = from_py(literal)?;
        Ok(Sequence { inner: lit.to_increment().map_err(err)? })
    }

    #[staticmethod]
    fn constant(c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Sequence { inner: IncrementSequence::constant(scalar_from_py(c)?) })
    }

    #[staticmethod]
    fn identity() -> Self {
        Sequence { inner: IncrementSequence::identity() }
    }

    fn __call__(&self, py: Python<'_>, k: i64) -> Py<PyAny> {
        complex(py, &self.inner.eval(k))
    }

    /// Exact value as text, e.g. `"3/2"`.
    fn exact(&self, k: i64) -> String {
        self.inner.eval(k).to_string()
    }

    fn literal(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &SequenceLiteral::from_increment(&self.inner))
    }

    fn __eq__(&self, other: &Sequence) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let lit = SequenceLiteral::from_increment(&self.inner);
        format!("Sequence({})", serde_json::to_string(&lit).unwrap_or_default())
    }
}

/// Finitely supported vector `f_n(k)`.
#[pyclass(module = "qcyl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Vector {
    inner: HilbertElement,
}

#[pymethods]
impl Vector {
    /// From a list of `(n, k, re, im)` entries.
    #[new]
    fn new(entries: &Bound<'_, PyAny>) -> PyResult<Self> {
        let lit: Vec<EntryLiteral> = from_py(entries)?;
        Ok(Vector { inner: hilbert_from_entries(&lit).map_err(err)? })
    }

    fn entries(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &hilbert_to_entries(&self.inner))
    }

    fn get(&self, py: Python<'_>, n: i64, k: i64) -> Py<PyAny> {
        complex(py, &self.inner.get(n, k))
    }

    fn inner(&self, py: Python<'_>, other: &Vector) -> Py<PyAny> {
        complex(py, &self.inner.inner(&other.inner))
    }

    fn theta(&self) -> Vector {
        Vector { inner: theta_hilbert(&self.inner) }
    }

    /// Whether the support lies in `n + 2k >= 0`.
    fn in_positive_half(&self) -> bool {
        halfspace_membership(&self.inner, HalfSpaceTag::Plus)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Vector) -> bool {
        self.inner == other.inner
    }
}

/// Element `sum U^n a_n(K)` of the operator algebra.
#[pyclass(module = "qcyl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Element {
    inner: AlgebraElement,
}

fn el(inner: AlgebraElement) -> Element {
    Element { inner }
}

#[pymethods]
impl Element {
    #[staticmethod]
    fn u() -> Self {
        el(generators::u())
    }

    #[staticmethod]
    fn u_inv() -> Self {
        el(generators::u_inv())
    }

    #[staticmethod]
    fn p_ge0() -> Self {
        el(generators::p_ge0())
    }

    #[staticmethod]
    fn p0() -> Self {
        el(generators::p0())
    }

    #[staticmethod]
    fn chi(n: i64) -> Self {
        el(generators::chi(n))
    }

    /// Diagonal operator from an eventually constant sequence literal.
    #[staticmethod]
    fn diag(literal: &Bound<'_, PyAny>) -> PyResult<Self> {
        let lit: SequenceLiteral = from_py(literal)?;
        Ok(el(generators::diag(lit.to_diagonal().map_err(err)?)))
    }

    #[staticmethod]
    fn one() -> Self {
        el(AlgebraElement::one())
    }

    fn __add__(&self, other: &Element) -> Self {
        el(self.inner.add(&other.inner))
    }

    fn __sub__(&self, other: &Element) -> Self {
        el(self.inner.sub(&other.inner))
    }

    fn __mul__(&self, other: &Element) -> Self {
        el(self.inner.mul_algebra(&other.inner))
    }

    fn __neg__(&self) -> Self {
        el(self.inner.neg())
    }

    fn scale(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(el(self.inner.scale(&scalar_from_py(c)?)))
    }

    fn adjoint(&self) -> Self {
        el(self.inner.adjoint())
    }

    fn theta(&self) -> Self {
        el(theta_algebra(&self.inner))
    }

    fn apply(&self, f: &Vector) -> Vector {
        Vector { inner: self.inner.act_left(&f.inner) }
    }

    fn commutator(&self, other: &Element) -> Self {
        el(self.inner.mul_algebra(&other.inner).sub(&other.inner.mul_algebra(&self.inner)))
    }

    /// `(plus, minus)` boundary symbols as maps frequency -> coefficient.
    fn symbol(&self, py: Python<'_>) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
        let s = self.inner.symbol();
        Ok((to_py(py, &trig_to_literal(&s.plus))?, to_py(py, &trig_to_literal(&s.minus))?))
    }

    fn literal(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &algebra_to_literal(&self.inner))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Element({})", serde_json::to_string(&algebra_to_literal(&self.inner)).unwrap_or_default())
    }
}

/// Derivation given as a sum of n-covariant and lifted terms.
#[pyclass(module = "qcyl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Derivation {
    inner: DerivationSpec,
}

#[pymethods]
impl Derivation {
    /// From a list of `{"ncovariant": {...}}` / `{"lifted": {...}}` terms.
    #[new]
    fn new(terms: &Bound<'_, PyAny>) -> PyResult<Self> {
        let lit: Vec<TermLiteral> = from_py(terms)?;
        Ok(Derivation { inner: derivation_from_literal(&lit).map_err(err)? })
    }

    fn apply(&self, a: &Element) -> PyResult<Element> {
        Ok(el(apply_derivation(&self.inner, &a.inner).map_err(err)?))
    }

    fn symbol(&self, py: Python<'_>) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
        let s = derivation_symbol(&self.inner);
        Ok((to_py(py, &trig_to_literal(&s.plus))?, to_py(py, &trig_to_literal(&s.minus))?))
    }

    fn is_approximately_inner(&self) -> bool {
        is_approximately_inner(&self.inner)
    }

    /// `(inner_part, lifted_part)`.
    fn decompose(&self) -> (Derivation, Derivation) {
        let (a, b) = decompose_derivation(&self.inner);
        (Derivation { inner: a }, Derivation { inner: b })
    }

    fn literal(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &derivation_to_literal(&self.inner))
    }
}

/// Theta-compatibility of an implementation: `(invariant, mu)`.
#[pyfunction]
fn classify_implementation(kind: &str, beta: &Sequence, alpha: &Sequence) -> PyResult<(bool, Option<i64>)> {
    let kind = match kind {
        "invariant" => ImplementationKind::Invariant,
        "covariant" => ImplementationKind::Covariant,
        _ => return Err(PyValueError::new_err("kind must be 'invariant' or 'covariant'")),
    };
    let c = theta_compatibility(&ImplementationSpec::new(kind, beta.inner.clone(), alpha.inner.clone()));
    Ok((c.invariant, c.mu.map(Sign::as_i64)))
}

/// Reflection pairing for the invariant implementation: `(direct, boundary)`
/// as exact strings when the inputs are exact.
#[pyfunction]
fn invariant_rp(beta: &Sequence, f: &Vector) -> PyResult<(String, String)> {
    let r = qcyl_core::invariant_rp(&beta.inner, &f.inner).map_err(err)?;
    Ok((r.direct.to_string(), r.boundary.to_string()))
}

/// Sector-by-sector certificate for the covariant implementation, as a dict.
#[pyfunction]
#[pyo3(signature = (beta, m2, f, mu = 1, tol = None))]
fn covariant_rp(py: Python<'_>, beta: &Sequence, m2: f64, f: &Vector, mu: i64, tol: Option<f64>) -> PyResult<Py<PyAny>> {
    let mu = Sign::from_i64(mu).ok_or_else(|| PyValueError::new_err("mu must be 1 or -1"))?;
    let base = CertifyConfig::default();
    let cfg = CertifyConfig { mu, solver_tol: tol.unwrap_or(base.solver_tol), ..base };
    let cert = py
        .detach(|| qcyl_core::covariant_rp(&beta.inner, m2, &f.inner, &cfg))
        .map_err(err)?;
    to_py(py, &cert)
}

/// Runs a scenario document and returns `(exit_code, report_text)`.
#[pyfunction]
#[pyo3(signature = (mode, scenario, tol = None, max_window = None, seed = None, format = "json"))]
fn run_scenario(
    py: Python<'_>,
    mode: &str,
    scenario: &str,
    tol: Option<f64>,
    max_window: Option<i64>,
    seed: Option<u64>,
    format: &str,
) -> PyResult<(i32, String)> {
    let mode: Mode = serde_json::from_value(serde_json::Value::String(mode.to_string()))
        .map_err(|_| PyValueError::new_err(format!("unknown mode {mode}")))?;
    let format = match format {
        "json" => Format::Json,
        "csv" => Format::Csv,
        _ => return Err(PyValueError::new_err("format must be 'json' or 'csv'")),
    };
    let s = parse(scenario).map_err(PyValueError::new_err)?;
    let o = Overrides { tol, max_window, seed };
    match py.detach(|| qcyl_cli::run::run_scenario(mode, &s, &o)) {
        Ok(r) => Ok((r.exit as i32, String::from_utf8_lossy(&emit_report(&r, format)).into_owned())),
        Err(f) => Ok((f.exit() as i32, f.message().to_string())),
    }
}

#[pymodule]
fn qcyl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Sequence>()?;
    m.add_class::<Vector>()?;
    m.add_class::<Element>()?;
    m.add_class::<Derivation>()?;
    m.add_function(wrap_pyfunction!(classify_implementation, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_rp, m)?)?;
    m.add_function(wrap_pyfunction!(covariant_rp, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
