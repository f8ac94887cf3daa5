//! Python bindings. Weights, families, polynomials and observables are
//! passed as the same strings the command line accepts (`"lambda_n:4"`,
//! `"n,n^2"`, `"e:1"`); signals, frequencies, rotations and Gowers
//! estimates are classes.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use ergodic_lab::approximants::{weight_statistics as stats, WeightFunction};
use ergodic_lab::circle_method as cm;
use ergodic_lab::gowers;
use ergodic_lab::padic;
use ergodic_lab::polynomial::{Polynomial, PolynomialFamily};
use ergodic_lab::rotation as rot;
use ergodic_lab::signals;
use ergodic_lab::variation::{self, RmConfig};
use ergodic_lab::{Complex64, Error};

fn py_err(e: Error) -> PyErr {
    if e.is_numeric() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for ergodic_lab::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn weight(spec: &str) -> PyResult<WeightFunction> {
    spec.parse().py()
}

fn family(spec: &str) -> PyResult<PolynomialFamily> {
    spec.parse().py()
}

fn polynomial(spec: &str) -> PyResult<Polynomial> {
    spec.parse().py()
}

fn trig_polys(specs: &[String]) -> PyResult<Vec<rot::TrigPoly>> {
    specs.iter().map(|s| s.parse().py()).collect()
}

/// Finitely supported sequence on the integers: `values[i]` sits at `offset + i`.
#[pyclass(name = "Signal", module = "ergodic_lab", from_py_object)]
#[derive(Clone)]
pub struct PySignal {
    inner: signals::SignalZ,
}

#[pymethods]
impl PySignal {
    #[new]
    #[pyo3(signature = (offset, values))]
    fn new(offset: i64, values: Vec<Complex64>) -> Self {
        Self { inner: signals::SignalZ::new(offset, values) }
    }

    #[staticmethod]
    fn delta(x: i64) -> Self {
        Self { inner: signals::SignalZ::delta(x) }
    }

    #[getter]
    fn offset(&self) -> i64 {
        self.inner.offset()
    }

    #[getter]
    fn values(&self) -> Vec<Complex64> {
        self.inner.values().to_vec()
    }

    fn __getitem__(&self, x: i64) -> Complex64 {
        self.inner.get(x)
    }

    fn trimmed(&self) -> Self {
        Self { inner: self.inner.trimmed() }
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(Self { inner: signals::SignalZ::from_csv(text).py()? })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.trimmed() == other.inner.trimmed()
    }

    fn __repr__(&self) -> String {
        format!("Signal(offset={}, len={})", self.inner.offset(), self.inner.values().len())
    }
}

/// Complex function on ℤ/Qℤ.
#[pyclass(name = "CyclicSignal", module = "ergodic_lab", from_py_object)]
#[derive(Clone)]
pub struct PyCyclicSignal {
    inner: padic::CyclicSignal,
}

#[pymethods]
impl PyCyclicSignal {
    #[new]
    fn new(values: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self { inner: padic::CyclicSignal::new(values).py()? })
    }

    /// `n ↦ e(t n / Q)`.
    #[staticmethod]
    fn tone(modulus: usize, t: i64) -> Self {
        Self { inner: padic::CyclicSignal::tone(modulus, t) }
    }

    #[getter]
    fn modulus(&self) -> usize {
        self.inner.modulus()
    }

    #[getter]
    fn values(&self) -> Vec<Complex64> {
        self.inner.values().to_vec()
    }

    fn dft(&self) -> Vec<Complex64> {
        self.inner.dft()
    }

    fn norm(&self, s: f64) -> f64 {
        self.inner.norm_l(s)
    }
}

#[pyclass(name = "Rational", module = "ergodic_lab", from_py_object)]
#[derive(Clone, Copy)]
pub struct PyRational {
    inner: cm::RationalFrequency,
}

#[pymethods]
impl PyRational {
    #[new]
    fn new(b: u64, q: u64) -> PyResult<Self> {
        Ok(Self { inner: cm::RationalFrequency::new(b, q).py()? })
    }

    #[getter]
    fn b(&self) -> u64 {
        self.inner.b
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q
    }

    #[getter]
    fn value(&self) -> f64 {
        self.inner.value()
    }

    #[getter]
    fn height(&self) -> u64 {
        self.inner.height()
    }

    fn __repr__(&self) -> String {
        format!("Rational({})", self.inner)
    }
}

/// Certified interval `[lower_bound, upper_bound]` for a little Gowers norm.
#[pyclass(name = "UNormEstimate", module = "ergodic_lab", get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyUNorm {
    lower_bound: f64,
    additive_error: f64,
    upper_bound: f64,
    witness: Vec<f64>,
    center: i64,
    steps: Vec<f64>,
}

impl From<gowers::UNormEstimate> for PyUNorm {
    fn from(e: gowers::UNormEstimate) -> Self {
        Self {
            lower_bound: e.lower_bound,
            additive_error: e.additive_error,
            upper_bound: e.upper_bound(),
            witness: e.witness,
            center: e.center,
            steps: e.steps,
        }
    }
}

#[pymethods]
impl PyUNorm {
    fn certainly_below(&self, other: &PyUNorm) -> bool {
        self.upper_bound < other.lower_bound
    }

    fn __repr__(&self) -> String {
        format!("UNormEstimate([{:.6}, {:.6}])", self.lower_bound, self.upper_bound)
    }
}

/// Circle rotation `x ↦ x + α`.
#[pyclass(name = "Rotation", module = "ergodic_lab", from_py_object)]
#[derive(Clone)]
pub struct PyRotation {
    inner: rot::RotationSystem,
}

#[pymethods]
impl PyRotation {
    #[new]
    fn new(alpha: f64) -> PyResult<Self> {
        Ok(Self { inner: rot::RotationSystem::new(alpha).py()? })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    fn orbit_point(&self, x: f64, m: i64) -> f64 {
        self.inner.orbit_point(x, m as i128)
    }

    fn rational_approximation(&self) -> Option<(i64, u64)> {
        self.inner.rational_approximation()
    }

    /// `E_{n∈[N]} w(n) Π_i f_i(x + P_i(n)α)`.
    #[pyo3(signature = (weight_spec, family_spec, funcs, n, x=0.0))]
    fn average(&self, weight_spec: &str, family_spec: &str, funcs: Vec<String>, n: f64, x: f64) -> PyResult<Complex64> {
        rot::rotation_average(&self.inner, &weight(weight_spec)?, &family(family_spec)?, &trig_polys(&funcs)?, n, x).py()
    }

    /// Rows `(N, value, deviation, v2_so_far)` along the given scales.
    #[pyo3(signature = (weight_spec, family_spec, funcs, scales, x=0.0))]
    fn convergence(
        &self,
        weight_spec: &str,
        family_spec: &str,
        funcs: Vec<String>,
        scales: Vec<f64>,
        x: f64,
    ) -> PyResult<Vec<(f64, Complex64, f64, f64)>> {
        let lambda = scales.windows(2).map(|p| p[1] / p[0]).fold(f64::INFINITY, f64::min);
        let set = variation::LacunarySet::new(scales, if lambda.is_finite() { lambda } else { 2.0 }).py()?;
        let report =
            rot::convergence_series(&self.inner, &weight(weight_spec)?, &family(family_spec)?, &trig_polys(&funcs)?, &set, x)
                .py()?;
        Ok(report.rows.iter().map(|r| (r.n, r.value, r.deviation, r.v2_so_far)).collect())
    }

    #[pyo3(signature = (family_spec, funcs, n, x=0.0))]
    fn prime_gap(&self, family_spec: &str, funcs: Vec<String>, n: f64, x: f64) -> PyResult<f64> {
        rot::prime_vs_mangoldt_gap(&self.inner, &family(family_spec)?, &trig_polys(&funcs)?, n, x).py()
    }
}

#[pyfunction]
fn ramanujan_sum(q: u64, n: i64) -> PyResult<f64> {
    ergodic_lab::arithmetic::ramanujan_sum(q, n).py()
}

#[pyfunction]
fn mangoldt(n: u64) -> PyResult<f64> {
    ergodic_lab::arithmetic::mangoldt(n).py()
}

/// `[w(0), w(1), …, w(N)]` at scale `scale` (default `N`).
#[pyfunction]
#[pyo3(signature = (spec, n, scale=None))]
fn weight_table(spec: &str, n: u64, scale: Option<f64>) -> PyResult<Vec<f64>> {
    weight(spec)?.table(n, scale.unwrap_or((n as f64).max(2.0))).py()
}

/// `(mean, residue_mean, residue_target, moment, moment_bound)`.
#[pyfunction]
#[pyo3(signature = (spec, n, residue=None, moment=None))]
fn weight_statistics(
    spec: &str,
    n: u64,
    residue: Option<(u64, u64)>,
    moment: Option<u32>,
) -> PyResult<(f64, Option<f64>, Option<f64>, Option<f64>, Option<f64>)> {
    let r = stats(&weight(spec)?, n, residue, moment).py()?;
    Ok((r.mean, r.residue_mean, r.residue_target, r.moment, r.moment_bound))
}

#[pyfunction]
#[pyo3(signature = (weight_spec, family_spec, signals, n, truncated=true))]
fn multi_average(weight_spec: &str, family_spec: &str, signals: Vec<PySignal>, n: f64, truncated: bool) -> PyResult<PySignal> {
    let sig: Vec<_> = signals.into_iter().map(|s| s.inner).collect();
    let inner = signals::multi_average(&weight(weight_spec)?, &family(family_spec)?, &sig, n, truncated).py()?;
    Ok(PySignal { inner })
}

/// Dual operator in slot `j` (0-based).
#[pyfunction]
#[pyo3(signature = (j, weight_spec, family_spec, signals, n, truncated=true))]
fn dual_average(
    j: usize,
    weight_spec: &str,
    family_spec: &str,
    signals: Vec<PySignal>,
    n: f64,
    truncated: bool,
) -> PyResult<PySignal> {
    let sig: Vec<_> = signals.into_iter().map(|s| s.inner).collect();
    let inner = signals::dual_average(j, &weight(weight_spec)?, &family(family_spec)?, &sig, n, truncated).py()?;
    Ok(PySignal { inner })
}

/// Unconjugated pairing `Σ_x f(x) g(x)`.
#[pyfunction]
fn inner_product(f: &PySignal, g: &PySignal) -> Complex64 {
    signals::inner_product(&f.inner, &g.inner)
}

#[pyfunction]
fn u_norm_estimate(values: Vec<Complex64>, start: i64, s: usize, steps: Vec<f64>) -> PyResult<PyUNorm> {
    Ok(gowers::u_norm_estimate(&values, start, s, &steps).py()?.into())
}

/// Gowers estimate of `w1 - w2` on `[N]` with relative error target `error`.
#[pyfunction]
#[pyo3(signature = (w1, w2, n, d=1, error=0.01))]
fn weight_unorm_gap(w1: &str, w2: &str, n: u64, d: usize, error: f64) -> PyResult<PyUNorm> {
    let steps = gowers::steps_for_error(n as usize, d, error);
    Ok(gowers::weight_unorm_gap(&weight(w1)?, &weight(w2)?, n, d, &steps).py()?.into())
}

#[pyfunction]
fn farey_set(level: u32) -> PyResult<Vec<PyRational>> {
    Ok(cm::farey_set(level).py()?.members().iter().map(|&inner| PyRational { inner }).collect())
}

#[pyfunction]
fn gauss_sum(family_spec: &str, a: Vec<i64>, q: u64) -> PyResult<Complex64> {
    cm::gauss_sum(&family(family_spec)?, &a, q).py()
}

/// `m_{N,w}(ξ)`.
#[pyfunction]
fn exp_sum(weight_spec: &str, family_spec: &str, n: f64, xi: Vec<f64>) -> PyResult<Complex64> {
    cm::exp_sum_m(&weight(weight_spec)?, &family(family_spec)?, n, &xi).py()
}

/// `m̃_{N,ℝ}(ζ)`.
#[pyfunction]
#[pyo3(signature = (family_spec, n, zeta, rel_tol=1e-10))]
fn continuous_symbol(family_spec: &str, n: f64, zeta: Vec<f64>, rel_tol: f64) -> PyResult<Complex64> {
    cm::continuous_symbol(&family(family_spec)?, n, &zeta, rel_tol).py()
}

/// Largest major-arc approximation error over the scan grid.
#[pyfunction]
#[pyo3(signature = (weight_spec, family_spec, n, theta, radii, grid=5))]
fn major_arc_error(
    weight_spec: &str,
    family_spec: &str,
    n: f64,
    theta: Vec<PyRational>,
    radii: Vec<f64>,
    grid: usize,
) -> PyResult<f64> {
    let theta: Vec<_> = theta.iter().map(|t| t.inner).collect();
    Ok(cm::major_arc_scan(&weight(weight_spec)?, &family(family_spec)?, n, &theta, &radii, grid).py()?.max_error)
}

#[pyfunction]
fn iw_constant(c: f64, n: f64) -> PyResult<f64> {
    cm::iw_constant(c, n).py()
}

#[pyfunction]
fn projection_pi(f: &PyCyclicSignal, level: u32, k_scale: i32) -> PyResult<PyCyclicSignal> {
    Ok(PyCyclicSignal { inner: cm::projection_pi(&f.inner, level, k_scale).py()? })
}

/// `(V^r, 𝐕^r)`: seminorm and norm.
#[pyfunction]
fn variation_norm(seq: Vec<Complex64>, r: f64) -> PyResult<(f64, f64)> {
    variation::variation_norm(&seq, r).py()
}

/// `(lhs, rhs, log_factor, ratio, patterns)`.
#[pyfunction]
#[pyo3(signature = (family_spec="n,n^2", modulus=64, scales=5, exponent=2.0, seed=1, n0=16.0))]
fn rm_check(
    family_spec: &str,
    modulus: usize,
    scales: usize,
    exponent: f64,
    seed: u64,
    n0: f64,
) -> PyResult<(f64, f64, f64, f64, u64)> {
    let cfg = RmConfig { modulus, scales, exponent, seed, n0 };
    let r = variation::rm_check(&family(family_spec)?, &cfg).py()?;
    Ok((r.lhs, r.rhs, r.log_factor, r.ratio, r.patterns))
}

#[pyfunction]
fn char_eigenvalues(p: u64, j: u32, poly: &str) -> PyResult<Vec<Complex64>> {
    padic::char_eigenvalues(p, j, &polynomial(poly)?).py()
}

#[pyfunction]
fn spectral_gap(p: u64, j: u32, poly: &str) -> PyResult<f64> {
    padic::spectral_gap(p, j, &polynomial(poly)?).py()
}

#[pyfunction]
fn fiber_counts(p: u64, j: u32, poly: &str) -> PyResult<Vec<u64>> {
    padic::fiber_counts(p, j, &polynomial(poly)?).py()
}

#[pyfunction]
fn fiber_count_norm(p: u64, j: u32, poly: &str, s: f64) -> PyResult<f64> {
    padic::fiber_count_norm(p, j, &polynomial(poly)?, s).py()
}

#[pyfunction]
fn unit_group_average(family_spec: &str, signals: Vec<PyCyclicSignal>) -> PyResult<PyCyclicSignal> {
    let sig: Vec<_> = signals.into_iter().map(|s| s.inner).collect();
    Ok(PyCyclicSignal { inner: padic::unit_group_average(&family(family_spec)?, &sig).py()? })
}

#[pymodule]
#[pyo3(name = "ergodic_lab")]
pub fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignal>()?;
    m.add_class::<PyCyclicSignal>()?;
    m.add_class::<PyRational>()?;
    m.add_class::<PyUNorm>()?;
    m.add_class::<PyRotation>()?;
    m.add_function(wrap_pyfunction!(ramanujan_sum, m)?)?;
    m.add_function(wrap_pyfunction!(mangoldt, m)?)?;
    m.add_function(wrap_pyfunction!(weight_table, m)?)?;
    m.add_function(wrap_pyfunction!(weight_statistics, m)?)?;
    m.add_function(wrap_pyfunction!(multi_average, m)?)?;
    m.add_function(wrap_pyfunction!(dual_average, m)?)?;
    m.add_function(wrap_pyfunction!(inner_product, m)?)?;
    m.add_function(wrap_pyfunction!(u_norm_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(weight_unorm_gap, m)?)?;
    m.add_function(wrap_pyfunction!(farey_set, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(exp_sum, m)?)?;
    m.add_function(wrap_pyfunction!(continuous_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(major_arc_error, m)?)?;
    m.add_function(wrap_pyfunction!(iw_constant, m)?)?;
    m.add_function(wrap_pyfunction!(projection_pi, m)?)?;
    m.add_function(wrap_pyfunction!(variation_norm, m)?)?;
    m.add_function(wrap_pyfunction!(rm_check, m)?)?;
    m.add_function(wrap_pyfunction!(char_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_gap, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_counts, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_count_norm, m)?)?;
    m.add_function(wrap_pyfunction!(unit_group_average, m)?)?;
    Ok(())
}
