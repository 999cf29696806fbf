//! Python bindings: groups, noncrossing partition posets, the closed forms
//! and the verification report.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict, PyInt};

use llfact_core::cli::{self, verify::class_rows};
use llfact_core::closedform;
use llfact_core::facto;
use llfact_core::ncp::{build_nc, NcPoset};
use llfact_core::{Budget, Element, Error, Group, GroupSpec};

fn to_py(e: Error) -> PyErr {
    match cli::exit_code(&e) {
        cli::EXIT_USAGE => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse(name: &str) -> PyResult<GroupSpec> {
    name.parse().map_err(to_py)
}

fn budget(max_order: Option<u64>) -> Budget {
    max_order.map(Budget::explicit).unwrap_or_default()
}

/// A group element.
#[pyclass(name = "Element", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement(Element);

#[pymethods]
impl PyElement {
    fn order(&self) -> u64 {
        self.0.order()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Codimension of the fixed space.
    fn fixed_space_codim(&self) -> usize {
        self.0.fixed_space_codim()
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.0.to_bytes())
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        Element::from_bytes(data).map(PyElement).ok_or_else(|| PyValueError::new_err("not a serialized element"))
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.0)
    }
}

/// A well-generated reflection group with a fixed Coxeter element.
#[pyclass(name = "Group", frozen)]
struct PyGroup(Arc<Group>);

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (name, budget=None))]
    fn new(name: &str, budget: Option<u64>) -> PyResult<Self> {
        let g = Group::new(parse(name)?, self::budget(budget)).map_err(to_py)?;
        Ok(PyGroup(Arc::new(g)))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.spec().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn degrees(&self) -> Vec<u32> {
        self.0.degrees().to_vec()
    }

    #[getter]
    fn coxeter_number(&self) -> u32 {
        self.0.coxeter_number()
    }

    #[getter]
    fn order<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.0.order().clone().into_pyobject(py).map(Bound::into_any)
    }

    fn identity(&self) -> PyElement {
        PyElement(self.0.identity().clone())
    }

    fn coxeter_element(&self) -> PyElement {
        PyElement(self.0.coxeter().clone())
    }

    fn reflections(&self) -> Vec<PyElement> {
        self.0.reflections().iter().cloned().map(PyElement).collect()
    }

    fn multiply(&self, a: &PyElement, b: &PyElement) -> PyElement {
        PyElement(self.0.multiply(&a.0, &b.0))
    }

    fn inverse(&self, a: &PyElement) -> PyElement {
        PyElement(self.0.inverse(&a.0))
    }

    /// Number of elements, by enumeration.
    fn enumerated_order(&self, py: Python<'_>) -> PyResult<usize> {
        py.detach(|| self.0.enumerated_order()).map_err(to_py)
    }

    fn reflection_length(&self, py: Python<'_>, w: &PyElement) -> PyResult<usize> {
        py.detach(|| self.0.reflection_length(&w.0)).map_err(to_py)
    }

    /// `u ≼ v` in absolute order.
    fn absolute_leq(&self, py: Python<'_>, u: &PyElement, v: &PyElement) -> PyResult<bool> {
        py.detach(|| self.0.absolute_leq(&u.0, &v.0)).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.0.spec().to_string())
    }
}

/// The noncrossing partition lattice `NC(W, c)`.
#[pyclass(name = "NcPoset", frozen)]
struct PyNcPoset(NcPoset);

#[pymethods]
impl PyNcPoset {
    #[new]
    fn new(py: Python<'_>, group: &PyGroup) -> PyResult<Self> {
        let g = group.0.clone();
        py.detach(|| build_nc(g)).map(PyNcPoset).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn elements(&self) -> Vec<PyElement> {
        self.0.elements().iter().cloned().map(PyElement).collect()
    }

    fn ranks(&self) -> Vec<usize> {
        self.0.ranks().to_vec()
    }

    fn leq(&self, u: usize, v: usize) -> PyResult<bool> {
        let n = self.0.len();
        if u >= n || v >= n {
            return Err(PyValueError::new_err(format!("index out of range for a poset of size {n}")));
        }
        Ok(self.0.leq(u, v))
    }

    fn count_multichains<'py>(&self, py: Python<'py>, p: usize) -> PyResult<Bound<'py, PyAny>> {
        py.detach(|| self.0.count_multichains(p)).into_pyobject(py).map(Bound::into_any)
    }

    fn count_reduced_decompositions<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        py.detach(|| facto::count_reduced_decompositions(&self.0)).into_pyobject(py).map(Bound::into_any)
    }

    fn count_fact_k<'py>(&self, py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
        let n = py.detach(|| facto::count_fact_k(&self.0, k)).map_err(to_py)?;
        n.into_pyobject(py).map(Bound::into_any)
    }

    /// Factorizations whose block lengths are exactly `composition`.
    fn count_fact<'py>(&self, py: Python<'py>, composition: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        let n = py.detach(|| facto::count_fact_by_composition(&self.0, &composition)).map_err(to_py)?;
        n.into_pyobject(py).map(Bound::into_any)
    }

    /// One dict per codimension-2 stratum.
    fn submaximal_rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let rows = py.detach(|| class_rows(&self.0)).map_err(to_py)?;
        rows.into_iter()
            .map(|c| {
                let d = PyDict::new(py);
                d.set_item("class_id", c.class_id)?;
                d.set_item("label", c.label)?;
                d.set_item("order", c.order)?;
                d.set_item("r", c.r)?;
                d.set_item("u", c.u)?;
                d.set_item("count", py.get_type::<PyInt>().call1((c.count,))?)?;
                d.set_item("parabolic_degrees", (c.d1p, c.hp))?;
                Ok(d)
            })
            .collect()
    }
}

/// `n!·hⁿ/|W|`.
#[pyfunction]
fn ll_number<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    closedform::ll_number(&parse(name)?).map_err(to_py)?.into_pyobject(py).map(Bound::into_any)
}

/// `∏ (dᵢ + p·h)/dᵢ`.
#[pyfunction]
#[pyo3(signature = (name, p=1))]
fn catalan<'py>(py: Python<'py>, name: &str, p: u64) -> PyResult<Bound<'py, PyAny>> {
    closedform::chapoton_rhs(&parse(name)?, p).map_err(to_py)?.into_pyobject(py).map(Bound::into_any)
}

/// The table row for a group as a dict, or `None` when there is none.
#[pyfunction]
fn expected_ll_data<'py>(py: Python<'py>, name: &str) -> PyResult<Option<Bound<'py, PyDict>>> {
    let row = match closedform::expected_ll_data(parse(name)?) {
        Ok(row) => row,
        Err(Error::NoTableRow(_)) => return Ok(None),
        Err(e) => return Err(to_py(e)),
    };
    let d = PyDict::new(py);
    d.set_item("label", row.label)?;
    d.set_item("condition", row.condition)?;
    d.set_item("prefactor", row.prefactor.to_string())?;
    d.set_item("entries", row.entries)?;
    Ok(Some(d))
}

/// The embedded table as JSON text.
#[pyfunction]
fn export_table() -> String {
    closedform::export_table_json()
}

/// Runs the identity suite and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (name, p_max=4, budget=None))]
fn verify<'py>(py: Python<'py>, name: &str, p_max: u32, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let spec = parse(name)?;
    let report = py.detach(|| cli::verify(spec, self::budget(budget), p_max)).map_err(to_py)?;
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

#[pymodule]
fn llfact(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", cli::VERSION)?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyNcPoset>()?;
    m.add_function(wrap_pyfunction!(ll_number, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(expected_ll_data, m)?)?;
    m.add_function(wrap_pyfunction!(export_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
