use std::cmp::Ordering;
use std::sync::Arc;

use normext::magnitude::{format_rational, parse_rational};
use normext::{ExtensionExt, ExtensionField, FieldElement, IrredCertificate, Magnitude, Rational};
use pyo3::basic::CompareOp;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: normext::Error) -> PyErr {
    match e {
        normext::Error::Input(_) | normext::Error::Parse { .. } | normext::Error::Certificate(_) => {
            PyValueError::new_err(e.to_string())
        }
        normext::Error::Domain(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Accepts int, str or fractions.Fraction.
fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?;
    parse_rational(text.to_str()?).map_err(to_py)
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Exact value `∏ p^q` or zero.
#[pyclass(name = "Magnitude", module = "normext", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMagnitude(Magnitude);

#[pymethods]
impl PyMagnitude {
    #[staticmethod]
    fn zero() -> Self {
        PyMagnitude(Magnitude::zero())
    }

    #[staticmethod]
    fn one() -> Self {
        PyMagnitude(Magnitude::one())
    }

    #[staticmethod]
    fn prime_power(p: u64, exponent: &Bound<'_, PyAny>) -> PyResult<Self> {
        Magnitude::prime_power(p, rational_arg(exponent)?).map(PyMagnitude).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyMagnitude).map_err(json_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `{prime: "exponent"}`, or None for zero.
    fn factors(&self) -> Option<Vec<(u64, String)>> {
        self.0
            .factors()
            .map(|m| m.iter().map(|(p, e)| (*p, format_rational(e))).collect())
    }

    fn pow(&self, exponent: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.pow(&rational_arg(exponent)?).map(PyMagnitude).map_err(to_py)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> Self {
        PyMagnitude(self.0.mul(&other.0))
    }

    fn __truediv__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.div(&other.0).map(PyMagnitude).map_err(to_py)
    }

    /// -1, 0 or 1.
    fn compare(&self, other: PyRef<'_, Self>) -> PyResult<i8> {
        Ok(self.0.compare(&other.0).map_err(to_py)? as i8)
    }

    fn __richcmp__(&self, other: PyRef<'_, Self>, op: CompareOp) -> PyResult<bool> {
        if matches!(op, CompareOp::Eq | CompareOp::Ne) {
            return Ok(op.matches(if self.0 == other.0 { Ordering::Equal } else { Ordering::Less }));
        }
        Ok(op.matches(self.0.compare(&other.0).map_err(to_py)?))
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Magnitude({})", self.0)
    }
}

/// `Q[X]/(f)` with the p-adic norm, `f` certified irreducible over `Q_p`.
#[pyclass(name = "Extension", module = "normext", frozen)]
struct PyExtension(Arc<ExtensionField>);

#[pymethods]
impl PyExtension {
    /// `modulus` is comma-separated coefficients, low degree first;
    /// `certificate` is its JSON form, e.g. `{"kind": "eisenstein"}`.
    #[new]
    #[pyo3(signature = (p, modulus, certificate = "{\"kind\":\"eisenstein\"}"))]
    fn new(p: u64, modulus: &str, certificate: &str) -> PyResult<Self> {
        let poly = normext::parse_polynomial(modulus).map_err(to_py)?;
        let cert: IrredCertificate = serde_json::from_str(certificate).map_err(json_err)?;
        ExtensionField::new(p, poly, cert).map(PyExtension).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let d: normext::ExtensionDescriptor = serde_json::from_str(text).map_err(json_err)?;
        ExtensionField::from_descriptor(&d).map(PyExtension).map_err(to_py)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.descriptor()).expect("serializable")
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn modulus(&self) -> String {
        self.0.modulus().to_string()
    }

    /// Power-basis coordinates; missing high coordinates are zero.
    fn element(&self, coords: Vec<Bound<'_, PyAny>>) -> PyResult<PyElement> {
        let coords = coords.iter().map(rational_arg).collect::<PyResult<Vec<_>>>()?;
        self.0.element(coords).map(PyElement).map_err(to_py)
    }

    fn generator(&self) -> PyElement {
        PyElement(self.0.generator())
    }

    fn embed(&self, q: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        Ok(PyElement(self.0.embed(rational_arg(q)?)))
    }

    fn basis_norm_bound(&self) -> PyResult<PyMagnitude> {
        self.0.basis_norm_bound().map(PyMagnitude).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Extension(p={}, modulus=\"{}\")", self.0.p(), self.0.modulus())
    }
}

#[pyclass(name = "Element", module = "normext", frozen, eq)]
#[derive(PartialEq)]
struct PyElement(FieldElement);

#[pymethods]
impl PyElement {
    fn coords(&self) -> Vec<String> {
        self.0.coords().iter().map(format_rational).collect()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.add(&other.0).map(PyElement).map_err(to_py)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyElement).map_err(to_py)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyElement).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        PyElement(self.0.neg())
    }

    fn __pow__(&self, n: i64, _modulo: Option<Bound<'_, PyAny>>) -> PyResult<Self> {
        self.0.pow(n).map(PyElement).map_err(to_py)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inv().map(PyElement).map_err(to_py)
    }

    fn spectral_norm(&self) -> PyResult<PyMagnitude> {
        self.0.spectral_norm().map(PyMagnitude).map_err(to_py)
    }

    fn basis_norm(&self) -> PyResult<PyMagnitude> {
        self.0.basis_norm().map(PyMagnitude).map_err(to_py)
    }

    fn char_poly(&self) -> String {
        self.0.char_poly().to_string()
    }

    fn min_poly(&self) -> String {
        self.0.min_poly().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element([{}])", self.0)
    }
}

#[pyfunction]
fn vp(x: &Bound<'_, PyAny>, p: u64) -> PyResult<String> {
    normext::vp(&rational_arg(x)?, p).map(|v| v.to_string()).map_err(to_py)
}

#[pyfunction]
fn padic_magnitude(x: &Bound<'_, PyAny>, p: u64) -> PyResult<PyMagnitude> {
    normext::padic_magnitude(&rational_arg(x)?, p).map(PyMagnitude).map_err(to_py)
}

#[pyfunction]
fn spectral_value(poly: &str, p: u64) -> PyResult<PyMagnitude> {
    let poly = normext::parse_polynomial(poly).map_err(to_py)?;
    normext::spectral_value(&poly, p).map(PyMagnitude).map_err(to_py)
}

#[pyfunction]
fn root_magnitudes(poly: &str, p: u64) -> PyResult<Vec<PyMagnitude>> {
    let poly = normext::parse_polynomial(poly).map_err(to_py)?;
    let roots = normext::root_magnitudes(&poly, p).map_err(to_py)?;
    Ok(roots.into_iter().map(PyMagnitude).collect())
}

/// JSON form of the Newton polygon.
#[pyfunction]
fn newton_polygon(poly: &str, p: u64) -> PyResult<String> {
    let poly = normext::parse_polynomial(poly).map_err(to_py)?;
    let np = normext::newton_polygon(&poly, p).map_err(to_py)?;
    Ok(serde_json::to_string(&np).expect("serializable"))
}

/// Runs the command line in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = normext::cli::run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[pymodule]
#[pyo3(name = "normext")]
fn pynormext(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMagnitude>()?;
    m.add_class::<PyExtension>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(vp, m)?)?;
    m.add_function(wrap_pyfunction!(padic_magnitude, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_value, m)?)?;
    m.add_function(wrap_pyfunction!(root_magnitudes, m)?)?;
    m.add_function(wrap_pyfunction!(newton_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_wrapper() {
        let (code, out, err) = run_cli(vec!["vp".into(), "--p".into(), "5".into(), "50".into()]);
        assert_eq!((code, out.as_str(), err.as_str()), (0, "{\"valuation\":\"2\"}\n", ""));
    }
}
