use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lnqfa::circulant::ZERO_TOL;
use lnqfa::{ln, modular, verify, Complex64};

fn err(e: lnqfa::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyfunction]
fn gcd(a: u64, b: u64) -> PyResult<u64> {
    modular::gcd(a, b).map_err(err)
}

#[pyfunction]
fn mod_div(a: i64, b: i64, n: u64) -> PyResult<u64> {
    modular::mod_div(a, b, n).map_err(err)
}

/// Prime factors of an odd `n > 2`, with multiplicity.
#[pyfunction]
fn factorize(n: u64) -> PyResult<Vec<u64>> {
    Ok(modular::factorize(n).map_err(err)?.factors().to_vec())
}

#[pyfunction]
fn quad_exp_sum(b: i64, t: i64, n: u64) -> PyResult<Complex64> {
    modular::quad_exp_sum(b, t, n).map_err(err)
}

#[pyfunction]
fn shift_invariance_check(c1: i64, c2: i64, n: u64) -> PyResult<(Complex64, Complex64)> {
    modular::shift_invariance_check(c1, c2, n).map_err(err)
}

#[pyfunction]
fn ln_membership(word: &str, n: u64) -> PyResult<bool> {
    ln::ln_membership(word, n).map_err(err)
}

/// `(count_a, count_b)`.
#[pyfunction]
fn word_stats(word: &str) -> PyResult<(u64, u64)> {
    let s = ln::word_stats(word).map_err(err)?;
    Ok((s.count_a, s.count_b))
}

#[pyfunction]
#[pyo3(signature = (n, max_len = 8, samples = 1000, seed = 0))]
fn scan_json(n: u64, max_len: usize, samples: usize, seed: u64) -> PyResult<String> {
    Ok(verify::to_json(
        &verify::scan(n, max_len, samples, seed).map_err(err)?,
    ))
}

#[pyfunction]
fn lemmas_json(n: u64) -> PyResult<String> {
    Ok(verify::to_json(&verify::lemmas(n).map_err(err)?))
}

#[pyfunction]
fn compare_json(n: u64) -> PyResult<String> {
    Ok(verify::to_json(&verify::compare(n).map_err(err)?))
}

#[pyclass(name = "SpecialShiftProfile", frozen)]
struct PySpecialShiftProfile(lnqfa::SpecialShiftProfile);

#[pymethods]
impl PySpecialShiftProfile {
    #[getter]
    fn l(&self) -> u64 {
        self.0.l
    }
    #[getter]
    fn g(&self) -> u64 {
        self.0.g
    }
    #[getter]
    fn k(&self) -> u64 {
        self.0.k
    }
    #[getter]
    fn c(&self) -> Complex64 {
        self.0.c
    }
    fn __repr__(&self) -> String {
        format!(
            "SpecialShiftProfile(l={}, g={}, k={}, c={})",
            self.0.l, self.0.g, self.0.k, self.0.c
        )
    }
}

#[pyclass(name = "ShiftMatrix", frozen)]
struct PyShiftMatrix(lnqfa::ShiftMatrix);

#[pymethods]
impl PyShiftMatrix {
    #[new]
    fn new(first_row: Vec<Complex64>) -> PyResult<Self> {
        lnqfa::ShiftMatrix::new(first_row).map(Self).map_err(err)
    }

    /// The Gauss-phase circulant `M_n`.
    #[staticmethod]
    fn gauss(n: u64) -> PyResult<Self> {
        lnqfa::ShiftMatrix::gauss(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn cyclic_shift(n: usize) -> PyResult<Self> {
        lnqfa::ShiftMatrix::cyclic_shift(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        lnqfa::ShiftMatrix::identity(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(json_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn first_row(&self) -> Vec<Complex64> {
        self.0.first_row().to_vec()
    }

    fn __matmul__(&self, other: &PyShiftMatrix) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(err)
    }

    fn pow(&self, s: u64) -> Self {
        Self(self.0.pow(s))
    }

    fn conj_transpose(&self) -> Self {
        Self(self.0.conj_transpose())
    }

    #[pyo3(signature = (tol = 1e-9))]
    fn is_unitary(&self, tol: f64) -> bool {
        self.0.is_unitary(tol)
    }

    #[pyo3(signature = (tol = ZERO_TOL))]
    fn classify_special(&self, tol: f64) -> Option<PySpecialShiftProfile> {
        self.0.classify_special(tol).map(PySpecialShiftProfile)
    }

    fn to_json(&self) -> String {
        verify::to_json(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }
}

/// `(p_accept, p_reject, p_residual)`.
type Probabilities = (f64, f64, f64);

#[pyclass(name = "QfaSpec", frozen)]
struct PyQfaSpec(lnqfa::QfaSpec);

#[pymethods]
impl PyQfaSpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(json_err)
    }

    /// Human-readable violations; empty when the spec is well formed.
    fn validate(&self) -> Vec<String> {
        match self.0.validate() {
            Ok(()) => Vec::new(),
            Err(v) => v.iter().map(|x| x.to_string()).collect(),
        }
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.0.states().to_vec()
    }

    fn run(&self, word: &str) -> PyResult<Probabilities> {
        let r = self.0.run(word).map_err(err)?;
        Ok((r.p_accept, r.p_reject, r.p_residual))
    }

    fn accept_probability(&self, word: &str) -> PyResult<f64> {
        self.0.accept_probability(word).map_err(err)
    }

    fn to_json(&self) -> String {
        verify::to_json(&self.0)
    }
}

#[pyclass(name = "LnQfa", frozen)]
struct PyLnQfa(lnqfa::LnQfa);

#[pymethods]
impl PyLnQfa {
    #[new]
    fn new(n: u64) -> PyResult<Self> {
        lnqfa::LnQfa::new(n).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.n()
    }

    #[getter]
    fn p_min(&self) -> u64 {
        self.0.p_min()
    }

    #[getter]
    fn paper_state_count(&self) -> usize {
        self.0.paper_state_count()
    }

    #[getter]
    fn internal_state_count(&self) -> usize {
        self.0.internal_state_count()
    }

    fn run(&self, word: &str) -> PyResult<Probabilities> {
        let r = self.0.spec().run(word).map_err(err)?;
        Ok((r.p_accept, r.p_reject, r.p_residual))
    }

    fn accept_probability(&self, word: &str) -> PyResult<f64> {
        self.0.accept_probability(word).map_err(err)
    }

    fn spec(&self) -> PyQfaSpec {
        PyQfaSpec(self.0.spec().clone())
    }
}

#[pyclass(name = "DfaSpec", frozen)]
struct PyDfaSpec(lnqfa::DfaSpec);

#[pymethods]
impl PyDfaSpec {
    /// Product-counter DFA for `L_n`.
    #[staticmethod]
    fn ln(n: u64) -> PyResult<Self> {
        ln::build_ln_dfa(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(json_err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn run(&self, word: &str) -> PyResult<bool> {
        self.0.run(word).map_err(err)
    }

    fn minimize(&self) -> Self {
        Self(ln::minimize_dfa(&self.0))
    }

    fn to_json(&self) -> String {
        verify::to_json(&self.0)
    }
}

#[pymodule]
fn pylnqfa(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(mod_div, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(quad_exp_sum, m)?)?;
    m.add_function(wrap_pyfunction!(shift_invariance_check, m)?)?;
    m.add_function(wrap_pyfunction!(ln_membership, m)?)?;
    m.add_function(wrap_pyfunction!(word_stats, m)?)?;
    m.add_function(wrap_pyfunction!(scan_json, m)?)?;
    m.add_function(wrap_pyfunction!(lemmas_json, m)?)?;
    m.add_function(wrap_pyfunction!(compare_json, m)?)?;
    m.add_class::<PyShiftMatrix>()?;
    m.add_class::<PySpecialShiftProfile>()?;
    m.add_class::<PyQfaSpec>()?;
    m.add_class::<PyLnQfa>()?;
    m.add_class::<PyDfaSpec>()?;
    Ok(())
}
