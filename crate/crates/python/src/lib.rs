//! Python bindings: `import qhom`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qhom::algebra::{parse_table, resolve};
use qhom::homology::{complex_homology, SnfStrategy};
use qhom::homotopy::{
    verify_chain_maps, verify_composite_homotopy, verify_corollary_identities, verify_homotopy_identity_d,
    verify_homotopy_identity_f, verify_precubic_homotopy, PrecubicHomotopyData, VerificationReport, VerifyOptions,
};
use qhom::{ChainComplex, ComplexTheory, DistributiveSet, Error, FiniteBinaryOp, FiniteQuandle, MultiTermSpec};

fn err(e: Error) -> PyErr {
    match e {
        Error::BrokenComplex { .. } | Error::DegenerateNotClosed { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn from_json<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finite quandle given by its operation table, `table[a][b] = a * b`.
#[pyclass(name = "Quandle", module = "qhom", frozen)]
struct PyQuandle {
    inner: FiniteQuandle,
}

#[pymethods]
impl PyQuandle {
    #[new]
    #[pyo3(signature = (table, label = "Q"))]
    fn new(table: Vec<Vec<u64>>, label: &str) -> PyResult<Self> {
        let op = FiniteBinaryOp::from_table(table.len(), &table).map_err(err)?;
        Ok(PyQuandle {
            inner: FiniteQuandle::new(op, label).map_err(err)?,
        })
    }

    /// A catalog name such as `R5`, `Alex(7,3)` or `ConjS4T`, or a table file.
    #[staticmethod]
    fn load(name: &str) -> PyResult<Self> {
        Ok(PyQuandle {
            inner: resolve(name).map_err(err)?,
        })
    }

    #[getter]
    fn label(&self) -> &str {
        self.inner.label()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn table(&self) -> Vec<Vec<u32>> {
        self.inner.op().rows().map(<[u32]>::to_vec).collect()
    }

    fn apply(&self, a: u32, b: u32) -> PyResult<u32> {
        let n = self.inner.size() as u32;
        if a >= n || b >= n {
            return Err(PyValueError::new_err(format!("elements must lie in 0..{n}")));
        }
        Ok(self.inner.apply(a, b))
    }

    fn is_quasigroup(&self) -> bool {
        self.inner.is_quasigroup()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn orbits(&self) -> Vec<Vec<u32>> {
        self.inner.orbits().to_vec()
    }

    fn inner_group_order(&self) -> u64 {
        self.inner.inner_group_order()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Quandle({:?}, size={})", self.inner.label(), self.inner.size())
    }
}

/// Axiom verdicts for a table that need not be a quandle.
#[pyfunction]
fn validate(py: Python<'_>, source: &str) -> PyResult<Py<PyAny>> {
    let op = match resolve(source) {
        Ok(q) => q.op().clone(),
        Err(Error::NotAQuandle { .. }) => {
            let text = std::fs::read_to_string(source).map_err(|e| err(e.into()))?;
            parse_table(&text).map_err(err)?
        }
        Err(e) => return Err(err(e)),
    };
    from_json(py, &op.validate())
}

fn group_dict<'py>(py: Python<'py>, degree: usize, h: &qhom::HomologyGroup) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("degree", degree)?;
    d.set_item("free_rank", h.free_rank)?;
    d.set_item("torsion", h.torsion.clone())?;
    d.set_item("exponent", h.annihilation_exponent().cloned())?;
    d.set_item("group", h.to_string())?;
    Ok(d)
}

fn homology_of(py: Python<'_>, cx: &ChainComplex, lo: usize, hi: usize) -> PyResult<Vec<Py<PyDict>>> {
    let groups = py.detach(|| complex_homology(cx, lo..=hi, SnfStrategy::Sparse)).map_err(err)?;
    groups
        .iter()
        .zip(lo..)
        .map(|(h, n)| Ok(group_dict(py, n, h)?.unbind()))
        .collect()
}

/// `H_n` for `n` in `lo..=hi`, one dict per degree.
#[pyfunction]
#[pyo3(signature = (quandle, theory = "rack", lo = 1, hi = 3))]
fn homology(py: Python<'_>, quandle: &PyQuandle, theory: &str, lo: usize, hi: usize) -> PyResult<Vec<Py<PyDict>>> {
    let theory =
        ComplexTheory::parse(theory).ok_or_else(|| PyValueError::new_err(format!("unknown theory `{theory}`")))?;
    let cx = ChainComplex::new(&quandle.inner, theory).map_err(err)?;
    homology_of(py, &cx, lo, hi)
}

/// Homology of `Σ a_k ∂^{(*_k)}` where `*_0` is the trivial operation and
/// `quandles` supplies `*_1, *_2, ...`.
#[pyfunction]
#[pyo3(signature = (quandles, coeffs, lo = 1, hi = 3))]
fn multiterm_homology(
    py: Python<'_>,
    quandles: Vec<PyRef<'_, PyQuandle>>,
    coeffs: Vec<i64>,
    lo: usize,
    hi: usize,
) -> PyResult<Vec<Py<PyDict>>> {
    let refs: Vec<&FiniteQuandle> = quandles.iter().map(|q| &q.inner).collect();
    let dset = DistributiveSet::with_trivial(&refs).map_err(err)?;
    if let Some(p) = dset.validate().first_failure() {
        let witness = p.check.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        return Err(PyValueError::new_err(format!(
            "*{} does not distribute over *{} at {witness}",
            p.right, p.left
        )));
    }
    let spec = MultiTermSpec::new(dset, coeffs).map_err(err)?;
    homology_of(py, &ChainComplex::multi_term(&spec), lo, hi)
}

/// Checks a homotopy identity on degree-`degree` tuples and returns the report.
///
/// `identity` is one of `D`, `F`, `G`, `corollary`, `precubic`, `chain-maps`;
/// `D` and `F` need the index `j`.
#[pyfunction]
#[pyo3(signature = (quandle, identity, degree, j = None, budget = 10_000, expect_failure = false))]
fn verify(
    py: Python<'_>,
    quandle: &PyQuandle,
    identity: &str,
    degree: usize,
    j: Option<usize>,
    budget: u64,
    expect_failure: bool,
) -> PyResult<Py<PyAny>> {
    let q = &quandle.inner;
    let opts = VerifyOptions { budget, expect_failure };
    let need_j = || j.ok_or_else(|| PyValueError::new_err(format!("identity {identity} needs j")));
    let report: VerificationReport = match identity {
        "D" => {
            let j = need_j()?;
            py.detach(|| verify_homotopy_identity_d(q, j, degree, &opts))
        }
        "F" => {
            let j = need_j()?;
            py.detach(|| verify_homotopy_identity_f(q, j, degree, &opts))
        }
        "G" => py.detach(|| verify_composite_homotopy(q, degree, &opts)),
        "corollary" => py.detach(|| verify_corollary_identities(q, degree, &opts)),
        "precubic" => py.detach(|| verify_precubic_homotopy(&PrecubicHomotopyData::rack_instance(q), degree, &opts)),
        "chain-maps" => py.detach(|| verify_chain_maps(q, degree, &opts)),
        other => return Err(PyValueError::new_err(format!("unknown identity `{other}`"))),
    }
    .map_err(err)?;
    from_json(py, &report)
}

/// Invariant factors of an integer matrix given as a list of rows.
#[pyfunction]
fn invariant_factors(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let m = qhom::SparseIntMatrix::from_dense_big(rows.len(), cols, &rows);
    Ok(qhom::homology::invariant_factors(&m, SnfStrategy::Sparse))
}

#[pymodule]
#[pyo3(name = "qhom")]
fn qhom_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuandle>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(multiterm_homology, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_factors, m)?)?;
    m.add("ENGINE_VERSION", qhom::ENGINE_VERSION)?;
    Ok(())
}
