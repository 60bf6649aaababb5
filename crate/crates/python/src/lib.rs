//! Python bindings. Elements, points and rationals cross the boundary as
//! strings in the same syntax the CLI accepts; structured reports come back as
//! plain dicts and lists.

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use piso_lab_core::covariance::{run_checks, RepresentationKind};
use piso_lab_core::crossed::{parse_bp_function, parse_element_list};
use piso_lab_core::padic;
use piso_lab_core::{
    qa_decomposition, sup_norm, BasisPoint, BpFunction as CoreBp, CheckReport, CrossedProductElement as CoreCp,
    Element, Error, NormMethod, Operator as CoreOperator, Semigroup as CoreSemigroup, System, WindowSpec,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for piso_lab_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn rational(text: &str) -> PyResult<BigRational> {
    text.trim()
        .parse()
        .map_err(|_| PyValueError::new_err(format!("`{text}` is not a rational number")))
}

/// A concrete unital semigroup.
#[pyclass(name = "Semigroup", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct Semigroup {
    inner: CoreSemigroup,
}

impl Semigroup {
    fn element(&self, text: &str) -> PyResult<Element> {
        self.inner.parse_element(text).py()
    }

    fn elements(&self, texts: &[String]) -> PyResult<Vec<Element>> {
        texts.iter().map(|t| self.element(t)).collect()
    }
}

fn show(x: Option<Element>) -> Option<String> {
    x.map(|x| x.to_string())
}

#[pymethods]
impl Semigroup {
    #[staticmethod]
    fn naturals(rank: usize) -> PyResult<Self> {
        Ok(Semigroup {
            inner: CoreSemigroup::naturals(rank).py()?,
        })
    }

    #[staticmethod]
    fn positive_integers() -> Self {
        Semigroup {
            inner: CoreSemigroup::PositiveIntegers,
        }
    }

    #[staticmethod]
    fn free(generators: usize) -> PyResult<Self> {
        Ok(Semigroup {
            inner: CoreSemigroup::free(generators).py()?,
        })
    }

    #[staticmethod]
    fn product(parts: Vec<Semigroup>) -> PyResult<Self> {
        let parts = parts.into_iter().map(|p| p.inner).collect();
        Ok(Semigroup {
            inner: CoreSemigroup::product(parts).py()?,
        })
    }

    /// The semigroup underlying a window spec such as `"Nk:k=2,max=4"`.
    #[staticmethod]
    fn from_window(spec: &str) -> PyResult<Self> {
        let w: WindowSpec = spec.parse().py()?;
        Ok(Semigroup { inner: w.semigroup() })
    }

    fn opposite(&self) -> Self {
        Semigroup {
            inner: self.inner.clone().opposite(),
        }
    }

    fn identity(&self) -> String {
        self.inner.identity().to_string()
    }

    fn multiply(&self, x: &str, y: &str) -> PyResult<String> {
        Ok(self
            .inner
            .multiply(&self.element(x)?, &self.element(y)?)
            .py()?
            .to_string())
    }

    fn left_lcm(&self, x: &str, y: &str) -> PyResult<Option<String>> {
        Ok(show(self.inner.left_lcm(&self.element(x)?, &self.element(y)?).py()?))
    }

    fn right_lcm(&self, x: &str, y: &str) -> PyResult<Option<String>> {
        Ok(show(self.inner.right_lcm(&self.element(x)?, &self.element(y)?).py()?))
    }

    fn sigma(&self, family: Vec<String>) -> PyResult<Option<String>> {
        Ok(show(self.inner.sigma(&self.elements(&family)?).py()?))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Semigroup({})", self.inner)
    }
}

/// Elements of a window spec, sorted.
#[pyfunction]
fn enumerate_window(spec: &str) -> PyResult<Vec<String>> {
    let w: WindowSpec = spec.parse().py()?;
    Ok(w.enumerate().py()?.iter().map(Element::to_string).collect())
}

/// A finite rational combination of indicators `1_u` of right ideals `uP`.
#[pyclass(name = "BpFunction", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct BpFunction {
    inner: CoreBp,
}

#[pymethods]
impl BpFunction {
    /// Parses text such as `"1_1 - 2/3*1_2"`.
    #[new]
    #[pyo3(signature = (semigroup, text = "0"))]
    fn new(semigroup: &Semigroup, text: &str) -> PyResult<Self> {
        Ok(BpFunction {
            inner: parse_bp_function(&semigroup.inner, text).py()?,
        })
    }

    #[staticmethod]
    fn indicator(semigroup: &Semigroup, u: &str) -> PyResult<Self> {
        Ok(BpFunction {
            inner: CoreBp::indicator(&semigroup.inner, &semigroup.element(u)?).py()?,
        })
    }

    fn __add__(&self, other: &BpFunction) -> PyResult<Self> {
        Ok(BpFunction {
            inner: self.inner.add(&other.inner).py()?,
        })
    }

    fn __sub__(&self, other: &BpFunction) -> PyResult<Self> {
        Ok(BpFunction {
            inner: self.inner.sub(&other.inner).py()?,
        })
    }

    fn __mul__(&self, other: &BpFunction) -> PyResult<Self> {
        Ok(BpFunction {
            inner: self.inner.multiply(&other.inner).py()?,
        })
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(BpFunction {
            inner: self.inner.scale(&rational(c)?),
        })
    }

    fn tau(&self, x: &str) -> PyResult<Self> {
        let x = self.inner.semigroup().parse_element(x).py()?;
        Ok(BpFunction {
            inner: self.inner.tau(&x).py()?,
        })
    }

    /// `f(r)` as a rational string.
    fn evaluate(&self, r: &str) -> PyResult<String> {
        let r = self.inner.semigroup().parse_element(r).py()?;
        Ok(self.inner.evaluate(&r).py()?.to_string())
    }

    /// Sup norm by the `Q_A` formula, or over a window spec when given.
    #[pyo3(signature = (window = None))]
    fn sup_norm(&self, window: Option<&str>) -> PyResult<String> {
        let norm = match window {
            None => sup_norm(&self.inner, NormMethod::Formula).py()?,
            Some(spec) => {
                let w: WindowSpec = spec.parse().py()?;
                let points = w.enumerate().py()?;
                sup_norm(&self.inner, NormMethod::Window(&points)).py()?
            }
        };
        Ok(norm.to_string())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BpFunction({})", self.inner)
    }
}

/// The projections `Q_A` for every subset `A` of `family`.
#[pyfunction]
fn qa(py: Python<'_>, semigroup: &Semigroup, family: Vec<String>) -> PyResult<Py<PyAny>> {
    let report = qa_decomposition(&semigroup.inner, &semigroup.elements(&family)?).py()?;
    Ok(to_py(py, &report.to_json())?.unbind())
}

/// A word of monomial operators on `ℓ²(P)` or on the compressed space.
#[pyclass(name = "Operator", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Operator {
    inner: CoreOperator,
}

#[pymethods]
impl Operator {
    #[staticmethod]
    fn shift(semigroup: &Semigroup, y: &str) -> PyResult<Self> {
        Ok(Operator {
            inner: CoreOperator::shift(&semigroup.inner, &semigroup.element(y)?).py()?,
        })
    }

    #[staticmethod]
    fn coshift(semigroup: &Semigroup, y: &str) -> PyResult<Self> {
        Ok(Operator {
            inner: CoreOperator::coshift(&semigroup.inner, &semigroup.element(y)?).py()?,
        })
    }

    #[staticmethod]
    fn diag(f: &BpFunction) -> Self {
        Operator {
            inner: CoreOperator::diag(&f.inner),
        }
    }

    #[staticmethod]
    fn compressed_shift(semigroup: &Semigroup, x: &str) -> PyResult<Self> {
        Ok(Operator {
            inner: CoreOperator::compressed_shift(&semigroup.inner, &semigroup.element(x)?).py()?,
        })
    }

    #[staticmethod]
    fn compressed_diag(f: &BpFunction) -> Self {
        Operator {
            inner: CoreOperator::compressed_diag(&f.inner),
        }
    }

    /// `self ∘ other`.
    fn __matmul__(&self, other: &Operator) -> PyResult<Self> {
        Ok(Operator {
            inner: self.inner.compose(&other.inner).py()?,
        })
    }

    fn adjoint(&self) -> Self {
        Operator {
            inner: self.inner.adjoint(),
        }
    }

    /// Image of `e[r]`, or of `e[r;s]` on the compressed space, as
    /// `(coefficient, point)`; `None` is the zero vector.
    #[pyo3(signature = (r, s = None))]
    fn apply(&self, r: &str, s: Option<&str>) -> PyResult<Option<(String, String)>> {
        let d = &self.inner.space().semigroup;
        let r = d.parse_element(r).py()?;
        let point = match s {
            Some(s) => BasisPoint::Pair(r, d.parse_element(s).py()?),
            None => BasisPoint::Single(r),
        };
        Ok(self
            .inner
            .apply(&point)
            .py()?
            .map(|(c, p)| (c.to_string(), p.to_string())))
    }
}

/// A finite combination of spanning monomials `M(x, f, y)`.
#[pyclass(name = "CrossedProductElement", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct CrossedProductElement {
    inner: CoreCp,
}

#[pymethods]
impl CrossedProductElement {
    /// Parses monomials `x | f | y` separated by `;`. `system` is
    /// `"diagonal"` or `"scalar"`.
    #[new]
    #[pyo3(signature = (semigroup, text, system = "diagonal"))]
    fn new(semigroup: &Semigroup, text: &str, system: &str) -> PyResult<Self> {
        let system = match system {
            "diagonal" => System::Diagonal,
            "scalar" => System::Scalar,
            other => return Err(PyValueError::new_err(format!("unknown system `{other}`"))),
        };
        Ok(CrossedProductElement {
            inner: parse_element_list(&semigroup.inner, system, text).py()?,
        })
    }

    fn __add__(&self, other: &CrossedProductElement) -> PyResult<Self> {
        Ok(CrossedProductElement {
            inner: self.inner.add(&other.inner).py()?,
        })
    }

    fn __mul__(&self, other: &CrossedProductElement) -> PyResult<Self> {
        Ok(CrossedProductElement {
            inner: self.inner.multiply(&other.inner).py()?,
        })
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(CrossedProductElement {
            inner: self.inner.scale(&rational(c)?),
        })
    }

    fn adjoint(&self) -> Self {
        CrossedProductElement {
            inner: self.inner.adjoint(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CrossedProductElement({})", self.inner)
    }
}

/// Runs covariance checks for a built-in representation over a window spec;
/// returns one report dict per check.
#[pyfunction]
#[pyo3(signature = (window, rep = "canonical_W", checks = vec!["piso_rep".to_string(), "right_nica".to_string()], generators = None))]
fn check(
    py: Python<'_>,
    window: &str,
    rep: &str,
    checks: Vec<String>,
    generators: Option<Vec<String>>,
) -> PyResult<Py<PyAny>> {
    let w: WindowSpec = window.parse().py()?;
    let kind: RepresentationKind = rep.parse().py()?;
    let generators = match generators {
        Some(g) => Some(
            g.iter()
                .map(|t| w.semigroup().parse_element(t))
                .collect::<Result<Vec<_>, _>>()
                .py()?,
        ),
        None => None,
    };
    let names: Vec<&str> = checks.iter().map(String::as_str).collect();
    let reports = py.detach(|| run_checks(&w, kind, &names, generators.as_deref())).py()?;
    let json = Value::Array(reports.iter().map(CheckReport::to_json).collect());
    Ok(to_py(py, &json)?.unbind())
}

#[pyfunction]
fn mult_order(m: BigUint, n: BigUint) -> PyResult<BigUint> {
    padic::mult_order(&m, &n).py()
}

#[pyfunction]
fn stability_exponent(p: u64, q: u64) -> PyResult<u32> {
    padic::stability_exponent(p, q).py()
}

#[pyfunction]
fn coset_count(p: u64, k: u32, q: u64) -> PyResult<BigUint> {
    padic::coset_count(p, k, q).py()
}

#[pyfunction]
fn bd_invariants(py: Python<'_>, p: u64, q: u64) -> PyResult<Py<PyAny>> {
    Ok(to_py(py, &padic::bd_invariants(p, q).py()?.to_json())?.unbind())
}

/// The truncated odometer orbit of length `steps + 1`, as digit lists.
#[pyfunction]
#[pyo3(signature = (d, p, depth, steps, start = None))]
fn odometer_orbit(d: u64, p: u64, depth: usize, steps: u64, start: Option<Vec<u64>>) -> PyResult<Vec<Vec<u64>>> {
    let mut point = match start {
        Some(digits) => padic::OdometerPoint::new(d, p, depth, &digits).py()?,
        None => padic::OdometerPoint::zero(d, p, depth).py()?,
    };
    let mut orbit = vec![point.digits().to_vec()];
    for _ in 0..steps {
        point = point.step();
        orbit.push(point.digits().to_vec());
    }
    Ok(orbit)
}

/// `β_{(m,n)}` on `ℂ[ℤ/p^k q^l]`; coefficients map residues to rational
/// strings.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn beta(
    p: u64,
    q: u64,
    k: u32,
    l: u32,
    m: u32,
    n: u32,
    coeffs: std::collections::BTreeMap<u64, String>,
) -> PyResult<std::collections::BTreeMap<u64, String>> {
    let ctx = padic::CyclicContext::new(p, q, k, l).py()?;
    let terms = coeffs
        .iter()
        .map(|(r, c)| Ok((*r, rational(c)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let input = padic::GroupAlgebraElement::from_coeffs(ctx.modulus(), terms);
    let output = padic::beta_apply(&ctx, (m, n), &input).py()?;
    Ok(output.coeffs().iter().map(|(r, c)| (*r, c.to_string())).collect())
}

/// Numeric check that the DFT conjugates `β_{(m,n)}` to the exact action on
/// `ℤ/p^k × ℤ/q^l`.
#[pyfunction]
fn fourier_probe(py: Python<'_>, p: u64, q: u64, k: u32, l: u32, m: u32, n: u32) -> PyResult<Py<PyAny>> {
    let ctx = padic::CyclicContext::new(p, q, k, l).py()?;
    let probe = py.detach(|| padic::fourier_probe(&ctx, (m, n))).py()?;
    let dict = PyDict::new(py);
    dict.set_item("max_error", probe.max_error)?;
    dict.set_item("support_matches", probe.support_matches)?;
    dict.set_item("fiber_constant_agree", probe.fiber_constant_agree)?;
    Ok(dict.into_any().unbind())
}

#[pymodule]
fn piso_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Semigroup>()?;
    m.add_class::<BpFunction>()?;
    m.add_class::<Operator>()?;
    m.add_class::<CrossedProductElement>()?;
    m.add_function(wrap_pyfunction!(enumerate_window, m)?)?;
    m.add_function(wrap_pyfunction!(qa, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(mult_order, m)?)?;
    m.add_function(wrap_pyfunction!(stability_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(coset_count, m)?)?;
    m.add_function(wrap_pyfunction!(bd_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(odometer_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_probe, m)?)?;
    Ok(())
}
