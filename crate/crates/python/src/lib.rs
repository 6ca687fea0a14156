use dalembert::{
    self as core, CertifiedMinimum, Complex, DescentStep, GrowthCertificate, RootResult,
    SolveReport, SquareRegion,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts Python `complex`, `float`, `int`, or a literal such as `"1-2i"`.
fn to_complex(obj: &Bound<'_, PyAny>) -> PyResult<Complex> {
    if let Ok(c) = obj.cast::<PyComplex>() {
        return Ok(Complex::new(c.real(), c.imag()));
    }
    if let Ok(x) = obj.extract::<f64>() {
        return Ok(Complex::real(x));
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(value_error);
    }
    Err(PyValueError::new_err("expected a complex, float, int or complex literal"))
}

/// `(iter, re, im, residual, s, k)`.
type TraceRow = (usize, f64, f64, f64, f64, usize);

fn to_py(py: Python<'_>, z: Complex) -> Bound<'_, PyComplex> {
    PyComplex::from_doubles(py, z.re, z.im)
}

#[pyclass(name = "Polynomial", module = "pydalembert", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial {
    inner: core::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Coefficients `a₀, a₁, …, aₙ`, constant term first.
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let coeffs = coeffs.iter().map(to_complex).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPolynomial { inner: core::Polynomial::new(coeffs) })
    }

    /// Whitespace-separated literals (`"1 0 1"`) or JSON pairs
    /// (`"[[1,0],[0,0],[1,0]]"`).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::Polynomial::parse(text).map(|inner| PyPolynomial { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn from_roots(lead: &Bound<'_, PyAny>, roots: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let lead = to_complex(lead)?;
        let roots = roots.iter().map(to_complex).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPolynomial { inner: core::Polynomial::from_roots(lead, &roots) })
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> Vec<Bound<'py, PyComplex>> {
        self.inner.coeffs().iter().map(|&z| to_py(py, z)).collect()
    }

    fn eval<'py>(&self, py: Python<'py>, z: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyComplex>> {
        Ok(to_py(py, self.inner.eval(to_complex(z)?)))
    }

    fn __call__<'py>(
        &self,
        py: Python<'py>,
        z: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyComplex>> {
        self.eval(py, z)
    }

    fn degree(&self) -> PyResult<usize> {
        self.inner.degree().map_err(value_error)
    }

    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    #[pyo3(signature = (epsilon = None))]
    fn truncate(&self, epsilon: Option<f64>) -> Self {
        let inner = match epsilon {
            Some(eps) => self.inner.truncate_with_epsilon(eps),
            None => self.inner.truncate(),
        };
        PyPolynomial { inner }
    }

    /// `q(z) = p(z + z0)`.
    fn shift(&self, z0: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.shift(to_complex(z0)?) })
    }

    fn scale_to_unit_constant(&self) -> PyResult<Self> {
        self.inner
            .scale_to_unit_constant()
            .map(|inner| PyPolynomial { inner })
            .map_err(value_error)
    }

    fn derivative(&self) -> Self {
        PyPolynomial { inner: self.inner.derivative() }
    }

    /// Returns `(quotient, remainder)` of division by `z − r`.
    fn deflate<'py>(
        &self,
        py: Python<'py>,
        r: &Bound<'py, PyAny>,
    ) -> PyResult<(Self, Bound<'py, PyComplex>)> {
        let (q, rem) = self.inner.deflate(to_complex(r)?).map_err(value_error)?;
        Ok((PyPolynomial { inner: q }, to_py(py, rem)))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }
}

#[pyclass(name = "SquareRegion", module = "pydalembert", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySquareRegion {
    inner: SquareRegion,
}

#[pymethods]
impl PySquareRegion {
    #[new]
    fn new(corner: &Bound<'_, PyAny>, side: f64) -> PyResult<Self> {
        SquareRegion::new(to_complex(corner)?, side)
            .map(|inner| PySquareRegion { inner })
            .map_err(value_error)
    }

    #[getter]
    fn corner<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        to_py(py, self.inner.corner())
    }

    #[getter]
    fn side(&self) -> f64 {
        self.inner.side()
    }

    fn contains(&self, z: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains(to_complex(z)?))
    }

    fn __repr__(&self) -> String {
        format!("SquareRegion(corner={}, side={})", self.inner.corner(), self.inner.side())
    }
}

#[pyclass(name = "GrowthCertificate", module = "pydalembert", frozen, skip_from_py_object, get_all)]
#[derive(Clone)]
struct PyGrowthCertificate {
    threshold_radius: f64,
    enclosure_radius: f64,
    lead_norm: f64,
    sub_max: f64,
    deg: usize,
}

impl From<GrowthCertificate> for PyGrowthCertificate {
    fn from(c: GrowthCertificate) -> Self {
        PyGrowthCertificate {
            threshold_radius: c.threshold_radius,
            enclosure_radius: c.enclosure_radius,
            lead_norm: c.lead_norm,
            sub_max: c.sub_max,
            deg: c.deg,
        }
    }
}

impl PyGrowthCertificate {
    fn to_core(&self) -> GrowthCertificate {
        GrowthCertificate {
            threshold_radius: self.threshold_radius,
            enclosure_radius: self.enclosure_radius,
            lead_norm: self.lead_norm,
            sub_max: self.sub_max,
            deg: self.deg,
        }
    }
}

#[pymethods]
impl PyGrowthCertificate {
    fn __repr__(&self) -> String {
        format!(
            "GrowthCertificate(threshold_radius={}, enclosure_radius={}, deg={})",
            self.threshold_radius, self.enclosure_radius, self.deg
        )
    }
}

#[pyclass(name = "CertifiedMinimum", module = "pydalembert", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCertifiedMinimum {
    inner: CertifiedMinimum,
}

#[pymethods]
impl PyCertifiedMinimum {
    #[getter]
    fn argmin<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        to_py(py, self.inner.argmin)
    }

    #[getter]
    fn value(&self) -> f64 {
        self.inner.value
    }

    #[getter]
    fn gap(&self) -> f64 {
        self.inner.gap
    }

    #[getter]
    fn lower_bound(&self) -> f64 {
        self.inner.lower_bound()
    }

    #[getter]
    fn evaluations(&self) -> u64 {
        self.inner.evaluations
    }

    #[getter]
    fn budget_exhausted(&self) -> bool {
        self.inner.budget_exhausted
    }

    fn __repr__(&self) -> String {
        format!(
            "CertifiedMinimum(argmin={}, value={}, gap={})",
            self.inner.argmin, self.inner.value, self.inner.gap
        )
    }
}

#[pyclass(name = "DescentStep", module = "pydalembert", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDescentStep {
    inner: DescentStep,
}

#[pymethods]
impl PyDescentStep {
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn ak<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        to_py(py, self.inner.ak)
    }

    #[getter]
    fn s(&self) -> f64 {
        self.inner.s
    }

    #[getter]
    fn zs<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        to_py(py, self.inner.zs)
    }

    #[getter]
    fn point<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        to_py(py, self.inner.point)
    }

    #[getter]
    fn before(&self) -> f64 {
        self.inner.before
    }

    #[getter]
    fn after(&self) -> f64 {
        self.inner.after
    }

    #[getter]
    fn ratio(&self) -> f64 {
        self.inner.ratio
    }

    fn __repr__(&self) -> String {
        format!(
            "DescentStep(k={}, s={}, point={}, before={}, after={})",
            self.inner.k, self.inner.s, self.inner.point, self.inner.before, self.inner.after
        )
    }
}

#[pyclass(name = "RootResult", module = "pydalembert", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRootResult {
    inner: RootResult,
}

#[pymethods]
impl PyRootResult {
    #[getter]
    fn root<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        to_py(py, self.inner.root)
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.converged
    }

    #[getter]
    fn stalled(&self) -> bool {
        self.inner.stalled
    }

    /// `(iter, re, im, residual, s, k)` tuples, or `None` when not recorded.
    #[getter]
    fn trace(&self) -> Option<Vec<TraceRow>> {
        self.inner
            .trace
            .as_ref()
            .map(|t| t.iter().map(|r| (r.iter, r.re, r.im, r.residual, r.s, r.k)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "RootResult(root={}, residual={}, iterations={}, converged={})",
            self.inner.root,
            self.inner.residual,
            self.inner.iterations,
            if self.inner.converged { "True" } else { "False" }
        )
    }
}

#[pyclass(name = "SolveReport", module = "pydalembert", frozen, skip_from_py_object)]
struct PySolveReport {
    inner: SolveReport,
}

#[pymethods]
impl PySolveReport {
    #[getter]
    fn roots(&self) -> Vec<PyRootResult> {
        self.inner.roots.iter().cloned().map(|inner| PyRootResult { inner }).collect()
    }

    #[getter]
    fn reconstruction_error(&self) -> f64 {
        self.inner.reconstruction_error
    }

    #[getter]
    fn enclosure(&self) -> PyGrowthCertificate {
        self.inner.enclosure.into()
    }

    #[getter]
    fn seed(&self) -> PyCertifiedMinimum {
        PyCertifiedMinimum { inner: self.inner.seed }
    }
}

/// `(radius, angle)` with the angle in `(−π, π]`.
#[pyfunction]
fn polar(z: &Bound<'_, PyAny>) -> PyResult<(f64, f64)> {
    let p = to_complex(z)?.polar();
    Ok((p.radius, p.angle))
}

#[pyfunction]
fn nth_root<'py>(py: Python<'py>, z: &Bound<'py, PyAny>, n: u32) -> PyResult<Bound<'py, PyComplex>> {
    let r = to_complex(z)?.nth_root(n).map_err(value_error)?;
    Ok(to_py(py, r))
}

#[pyfunction]
fn growth_certificate(p: &PyPolynomial) -> PyResult<PyGrowthCertificate> {
    core::growth_certificate(&p.inner).map(Into::into).map_err(value_error)
}

/// `(lower, value, upper)` for `‖p(z)‖` at a point past the threshold radius.
#[pyfunction]
fn check_bounds(
    p: &PyPolynomial,
    z: &Bound<'_, PyAny>,
    cert: &PyGrowthCertificate,
) -> PyResult<(f64, f64, f64)> {
    let b = core::check_bounds(&p.inner, to_complex(z)?, &cert.to_core()).map_err(value_error)?;
    Ok((b.lower, b.value, b.upper))
}

#[pyfunction]
fn minimum_enclosing_square(p: &PyPolynomial) -> PyResult<PySquareRegion> {
    core::minimum_enclosing_square(&p.inner)
        .map(|inner| PySquareRegion { inner })
        .map_err(value_error)
}

#[pyfunction]
fn lipschitz_bound(p: &PyPolynomial, region: &PySquareRegion) -> f64 {
    core::lipschitz_bound(&p.inner, &region.inner)
}

#[pyfunction]
fn grid_min(
    py: Python<'_>,
    p: &PyPolynomial,
    region: &PySquareRegion,
    n: usize,
) -> PyResult<PyCertifiedMinimum> {
    py.detach(|| core::grid_min(&p.inner, &region.inner, n))
        .map(|inner| PyCertifiedMinimum { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (p, region, epsilon, budget = 1_000_000))]
fn certified_min(
    py: Python<'_>,
    p: &PyPolynomial,
    region: &PySquareRegion,
    epsilon: f64,
    budget: u64,
) -> PyResult<PyCertifiedMinimum> {
    py.detach(|| core::certified_min(&p.inner, &region.inner, epsilon, budget))
        .map(|inner| PyCertifiedMinimum { inner })
        .map_err(value_error)
}

#[pyfunction]
fn step_parameter(p: &PyPolynomial) -> PyResult<f64> {
    core::step_parameter(&p.inner).map_err(value_error)
}

#[pyfunction]
fn descent_step(p: &PyPolynomial, z0: &Bound<'_, PyAny>) -> PyResult<PyDescentStep> {
    core::descent_step(&p.inner, to_complex(z0)?)
        .map(|inner| PyDescentStep { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (p, z0, tol = 1e-10, max_iter = 10_000))]
fn descend(
    py: Python<'_>,
    p: &PyPolynomial,
    z0: &Bound<'_, PyAny>,
    tol: f64,
    max_iter: usize,
) -> PyResult<PyRootResult> {
    let z0 = to_complex(z0)?;
    py.detach(|| core::descend(&p.inner, z0, tol, max_iter))
        .map(|inner| PyRootResult { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (p, tol = 1e-10, max_iter = 10_000))]
fn find_root(py: Python<'_>, p: &PyPolynomial, tol: f64, max_iter: usize) -> PyResult<PyRootResult> {
    py.detach(|| core::find_root(&p.inner, tol, max_iter))
        .map(|inner| PyRootResult { inner })
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (p, tol = 1e-10, max_iter = 10_000))]
fn find_all_roots(
    py: Python<'_>,
    p: &PyPolynomial,
    tol: f64,
    max_iter: usize,
) -> PyResult<PySolveReport> {
    py.detach(|| core::find_all_roots(&p.inner, tol, max_iter))
        .map(|inner| PySolveReport { inner })
        .map_err(value_error)
}

#[pymodule]
fn pydalembert(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PySquareRegion>()?;
    m.add_class::<PyGrowthCertificate>()?;
    m.add_class::<PyCertifiedMinimum>()?;
    m.add_class::<PyDescentStep>()?;
    m.add_class::<PyRootResult>()?;
    m.add_class::<PySolveReport>()?;
    m.add_function(wrap_pyfunction!(polar, m)?)?;
    m.add_function(wrap_pyfunction!(nth_root, m)?)?;
    m.add_function(wrap_pyfunction!(growth_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(minimum_enclosing_square, m)?)?;
    m.add_function(wrap_pyfunction!(lipschitz_bound, m)?)?;
    m.add_function(wrap_pyfunction!(grid_min, m)?)?;
    m.add_function(wrap_pyfunction!(certified_min, m)?)?;
    m.add_function(wrap_pyfunction!(step_parameter, m)?)?;
    m.add_function(wrap_pyfunction!(descent_step, m)?)?;
    m.add_function(wrap_pyfunction!(descend, m)?)?;
    m.add_function(wrap_pyfunction!(find_root, m)?)?;
    m.add_function(wrap_pyfunction!(find_all_roots, m)?)?;
    Ok(())
}
