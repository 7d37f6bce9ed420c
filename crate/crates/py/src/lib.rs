//! Python bindings. Exact values come back as `int` when integral and as
//! `fractions.Fraction` otherwise.

use std::sync::Arc;

use binsum_core::recurrence::registry;
use binsum_core::verify::{self, report::to_structured, MultiplierFamily};
use binsum_core::{Error, ExactRational, FitOptions, SequenceBank, SequenceId, SuiteConfig};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &ExactRational) -> PyResult<Py<PyAny>> {
    if let Some(n) = v.to_integer() {
        return Ok(n.into_pyobject(py)?.into_any().unbind());
    }
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    Ok(fraction.call1((v.numer().clone(), v.denom().clone()))?.unbind())
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    ExactRational::try_new(num, den).ok_or_else(|| PyValueError::new_err("zero denominator"))
}

fn sequence_id(id: &str) -> PyResult<SequenceId> {
    id.parse().map_err(err)
}

#[pyfunction]
fn binomial(n: i64, k: i64) -> BigInt {
    binsum_core::binomial(n, k)
}

#[pyfunction]
fn catalan(k: i64) -> PyResult<BigInt> {
    binsum_core::catalan(k).map_err(err)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    binsum_core::is_prime(n)
}

#[pyfunction]
fn legendre_symbol(a: i64, p: u64) -> PyResult<i8> {
    binsum_core::legendre_symbol(a, p).map_err(err)
}

/// `a == b (mod m)` for rationals whose denominators are prime to `m`.
#[pyfunction]
fn rational_congruent(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, m: BigInt) -> PyResult<bool> {
    binsum_core::rational_congruent(&from_py(a)?, &from_py(b)?, &m).map_err(err)
}

/// Memoized evaluator for every sequence id, e.g. `"S"`, `"s"`, `"S_r(3)"`.
#[pyclass(frozen)]
struct Sequences {
    bank: Arc<SequenceBank>,
}

#[pymethods]
impl Sequences {
    #[new]
    fn new() -> Self {
        Sequences {
            bank: Arc::new(SequenceBank::new()),
        }
    }

    fn eval(&self, py: Python<'_>, id: &str, n: u64) -> PyResult<Py<PyAny>> {
        let id = sequence_id(id)?;
        let v = py.detach(|| self.bank.eval(&id, n)).map_err(err)?;
        to_py(py, &v)
    }

    fn values(&self, py: Python<'_>, id: &str, max: u64) -> PyResult<Vec<Py<PyAny>>> {
        let id = sequence_id(id)?;
        let first = id.first_index();
        let values = py
            .detach(|| {
                if first <= max {
                    self.bank.prefill(&id, max)?;
                }
                (first..=max).map(|n| self.bank.eval(&id, n)).collect::<Result<Vec<_>, _>>()
            })
            .map_err(err)?;
        values.iter().map(|v| to_py(py, v)).collect()
    }

    /// `sum_{k<n} id(k)`
    fn prefix_sum(&self, py: Python<'_>, id: &str, n: u64) -> PyResult<Py<PyAny>> {
        let id = sequence_id(id)?;
        let v = py.detach(|| self.bank.prefix_sum(&id, n)).map_err(err)?;
        to_py(py, &v)
    }

    /// `sum_{k<n} k id(k)`
    fn weighted_prefix_sum(&self, py: Python<'_>, id: &str, n: u64) -> PyResult<Py<PyAny>> {
        let id = sequence_id(id)?;
        let v = py.detach(|| self.bank.weighted_prefix_sum(&id, n)).map_err(err)?;
        to_py(py, &v)
    }
}

#[pyclass(frozen, eq, name = "RecurrenceOperator")]
#[derive(PartialEq)]
struct Operator(binsum_core::RecurrenceOperator);

#[pymethods]
impl Operator {
    /// Parse the `r; c_0 = [..]; ...` exchange form.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        binsum_core::RecurrenceOperator::from_exchange(text).map(Operator).map_err(err)
    }

    /// Built-in operator by name, e.g. `"s3"`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        registry::operator(name).map(|e| Operator(e.operator)).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    /// Coefficient polynomials, lowest degree first.
    #[getter]
    fn coefficients(&self) -> Vec<Vec<BigInt>> {
        self.0.coeffs().iter().map(|p| p.coeffs().to_vec()).collect()
    }

    fn normalized(&self) -> Self {
        Operator(self.0.normalized())
    }

    fn apply(&self, py: Python<'_>, seqs: &Sequences, id: &str, n: u64) -> PyResult<Py<PyAny>> {
        let handle = seqs.bank.handle(sequence_id(id)?).map_err(err)?;
        let v = py.detach(|| self.0.apply(&handle, n)).map_err(err)?;
        to_py(py, &v)
    }

    fn annihilates(&self, py: Python<'_>, seqs: &Sequences, id: &str, first: u64, last: u64) -> PyResult<bool> {
        let handle = seqs.bank.handle(sequence_id(id)?).map_err(err)?;
        py.detach(|| self.0.annihilates(&handle, first, last)).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_exchange()
    }

    fn __repr__(&self) -> String {
        format!("RecurrenceOperator.parse({:?})", self.0.to_exchange())
    }
}

#[pyfunction]
fn operator_names() -> Vec<&'static str> {
    registry::operators().iter().map(|e| e.name).collect()
}

/// Guess an operator annihilating `id` on `first..=last`; `None` when no
/// candidate survives the holdout.
#[pyfunction]
#[pyo3(signature = (seqs, id, order, degree, first, last, holdout=None, shuffle_seed=None))]
#[allow(clippy::too_many_arguments)]
fn fit_recurrence(
    py: Python<'_>,
    seqs: &Sequences,
    id: &str,
    order: usize,
    degree: usize,
    first: u64,
    last: u64,
    holdout: Option<u64>,
    shuffle_seed: Option<u64>,
) -> PyResult<Option<Operator>> {
    let handle = seqs.bank.handle(sequence_id(id)?).map_err(err)?;
    let mut opts = FitOptions::new(order, degree, first, last);
    if let Some(h) = holdout {
        opts = opts.with_holdout(h);
    }
    opts.row_shuffle_seed = shuffle_seed;
    py.detach(|| binsum_core::fit_recurrence(&handle, &opts))
        .map(|op| op.map(Operator))
        .map_err(err)
}

/// `(name, passed)` for the six certificates, checked symbolically and on
/// random sequences.
#[pyfunction]
fn check_certificates(py: Python<'_>) -> PyResult<Vec<(String, bool)>> {
    py.detach(|| {
        registry::certificates()
            .into_iter()
            .map(|e| e.certificate.check().map(|ok| (e.certificate.name.clone(), ok)))
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(err)
}

fn config(n_max: u64, prime_max: u64) -> SuiteConfig {
    SuiteConfig {
        n_max,
        prime_max,
        timings: false,
    }
}

/// Run suites and return the structured JSON report.
#[pyfunction]
#[pyo3(signature = (seqs, suites, n_max=300, prime_max=199))]
fn run_suite(py: Python<'_>, seqs: &Sequences, suites: Vec<String>, n_max: u64, prime_max: u64) -> PyResult<String> {
    py.detach(|| verify::run_suite_with(&seqs.bank, &suites, &config(n_max, prime_max)))
        .map(|r| to_structured(&r))
        .map_err(err)
}

/// Run individual claims by id and return the structured JSON report.
#[pyfunction]
#[pyo3(signature = (seqs, ids, n_max=300, prime_max=199))]
fn run_claims(py: Python<'_>, seqs: &Sequences, ids: Vec<String>, n_max: u64, prime_max: u64) -> PyResult<String> {
    py.detach(|| verify::run_claims_with(&seqs.bank, &ids, &config(n_max, prime_max)))
        .map(|r| to_structured(&r))
        .map_err(err)
}

#[pyfunction]
fn claim_ids() -> Vec<String> {
    verify::claim_ids()
}

/// Smallest `m` with `n^2 | m * sum_{k<n} S_k^(e)` for all `n <= n_max`;
/// family `"a"` uses `e = 2r-1`, family `"b"` uses `e = r`.
#[pyfunction]
fn minimal_multiplier(py: Python<'_>, seqs: &Sequences, family: &str, r: u32, n_max: u64) -> PyResult<BigInt> {
    let family = match family {
        "a" => MultiplierFamily::OddPower,
        "b" => MultiplierFamily::Weighted,
        other => return Err(PyValueError::new_err(format!("unknown family `{other}` (use \"a\" or \"b\")"))),
    };
    py.detach(|| verify::minimal_multiplier(&seqs.bank, family, r, n_max)).map_err(err)
}

#[pymodule]
fn binsum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Sequences>()?;
    m.add_class::<Operator>()?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(rational_congruent, m)?)?;
    m.add_function(wrap_pyfunction!(operator_names, m)?)?;
    m.add_function(wrap_pyfunction!(fit_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificates, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_claims, m)?)?;
    m.add_function(wrap_pyfunction!(claim_ids, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_multiplier, m)?)?;
    Ok(())
}
