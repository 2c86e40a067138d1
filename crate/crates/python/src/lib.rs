//! Python bindings: `Structure` wraps a Cayley table, module functions run the
//! library checks and constructions.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyMemoryError, PyOSError, PyValueError};
use pyo3::prelude::*;

use metaloop::analysis;
use metaloop::catalog;
use metaloop::coset;
use metaloop::io::{self, Payload, StructureFile};
use metaloop::products::{self, FactorMaps};
use metaloop::search::{self, Predicate};
use metaloop::topology;
use metaloop::wreath::{self, WreathSpec};
use metaloop::{BitSet, ClassTag, Elem, Error, FiniteBinarySystem, FiniteTopology, Subset, Transversal};

create_exception!(metaloop, CheckError, PyException, "A precondition or factor system check failed.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Precondition { .. } | Error::FactorRejected { .. } | Error::Structure(_) => {
            CheckError::new_err(e.to_string())
        }
        Error::Resource(_) => PyMemoryError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        Error::Input(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
    }
}

/// A finite binary system given by its multiplication table.
#[pyclass(name = "Structure", module = "metaloop", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyStructure {
    inner: FiniteBinarySystem,
}

impl From<FiniteBinarySystem> for PyStructure {
    fn from(inner: FiniteBinarySystem) -> Self {
        PyStructure { inner }
    }
}

#[pymethods]
impl PyStructure {
    #[new]
    #[pyo3(signature = (table, names = None))]
    fn new(table: Vec<Vec<Elem>>, names: Option<Vec<String>>) -> PyResult<Self> {
        let g = FiniteBinarySystem::from_table(table).map_err(to_py)?;
        let g = match names {
            Some(n) => g.with_names(n).map_err(to_py)?,
            None => g,
        };
        Ok(g.into())
    }

    /// Catalog entry such as `Structure.catalog("cd_basis", [3])`.
    #[staticmethod]
    #[pyo3(signature = (name, params = Vec::new()))]
    fn catalog(name: &str, params: Vec<usize>) -> PyResult<Self> {
        Ok(catalog::catalog(name, &params).map_err(to_py)?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match io::parse(text).map_err(to_py)?.payload {
            Payload::Table(t) => Ok(t.to_system().map_err(to_py)?.into()),
            other => Err(PyValueError::new_err(format!("expected a table, found `{}`", other.kind()))),
        }
    }

    fn to_json(&self) -> String {
        StructureFile::table(&self.inner).to_json()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn identity(&self) -> Option<Elem> {
        self.inner.identity()
    }

    fn rows(&self) -> Vec<Vec<Elem>> {
        self.inner.rows()
    }

    fn name(&self, g: Elem) -> String {
        self.inner.name(g)
    }

    fn mul(&self, a: Elem, b: Elem) -> PyResult<Elem> {
        self.inner.checked_mul(a, b).map_err(to_py)
    }

    fn div_l(&self, a: Elem, b: Elem) -> PyResult<Elem> {
        self.inner.div_l(a, b).map_err(to_py)
    }

    fn div_r(&self, b: Elem, a: Elem) -> PyResult<Elem> {
        self.inner.div_r(b, a).map_err(to_py)
    }

    fn inv_l(&self, a: Elem) -> PyResult<Elem> {
        self.inner.inv_l(a).map_err(to_py)
    }

    fn inv_r(&self, a: Elem) -> PyResult<Elem> {
        self.inner.inv_r(a).map_err(to_py)
    }

    fn classify(&self) -> &'static str {
        self.inner.classify().as_str()
    }

    fn is_quasigroup(&self) -> bool {
        self.inner.is_quasigroup()
    }

    fn is_loop(&self) -> bool {
        self.inner.is_loop()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Structure(order={}, class={})", self.inner.order(), self.inner.classify())
    }
}

/// Outcome of a group of checks.
#[pyclass(name = "Report", module = "metaloop", frozen)]
pub struct PyReport {
    inner: metaloop::Report,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.all_passed()
    }

    /// `(name, status, witness, detail)` per check.
    #[getter]
    fn items(&self) -> Vec<(String, String, Vec<Elem>, String)> {
        self.inner
            .items
            .iter()
            .map(|i| {
                let status = format!("{:?}", i.status).to_lowercase();
                (i.name.clone(), status, i.witness.clone(), i.detail.clone())
            })
            .collect()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    fn __bool__(&self) -> bool {
        self.passed()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

impl From<metaloop::Report> for PyReport {
    fn from(inner: metaloop::Report) -> Self {
        PyReport { inner }
    }
}

fn subset(g: &FiniteBinarySystem, members: Vec<Elem>) -> PyResult<Subset> {
    Subset::new(g.order(), members).map_err(to_py)
}

fn verdict(v: analysis::Verdict) -> (bool, Option<Vec<Elem>>) {
    match v {
        analysis::Verdict::Holds => (true, None),
        analysis::Verdict::Fails { witness, .. } => (false, Some(witness)),
    }
}

#[pyfunction]
fn center(g: &PyStructure) -> Vec<Elem> {
    analysis::center(&g.inner).members()
}

#[pyfunction]
fn commutant(g: &PyStructure) -> Vec<Elem> {
    analysis::commutant(&g.inner).members()
}

#[pyfunction]
fn nucleus(g: &PyStructure) -> Vec<Elem> {
    analysis::nucleus(&g.inner).members()
}

/// `t(a, b, c)` with `(ab)c = t(a, b, c) (a(bc))`.
#[pyfunction]
fn associator(g: &PyStructure, a: Elem, b: Elem, c: Elem) -> PyResult<Elem> {
    analysis::associator_t(&g.inner, a, b, c).map_err(to_py)
}

/// `(holds, witness)`; the witness is a violating triple.
#[pyfunction]
fn is_metagroup(g: &PyStructure) -> (bool, Option<Vec<Elem>>) {
    verdict(analysis::is_metagroup(&g.inner))
}

#[pyfunction]
fn is_central_metagroup(g: &PyStructure) -> (bool, Option<Vec<Elem>>) {
    verdict(analysis::is_central_metagroup(&g.inner))
}

/// Axiom checks up to `level` (quasigroup, loop, metagroup, central, group).
#[pyfunction]
fn verify(g: &PyStructure, level: &str) -> PyResult<PyReport> {
    let level: ClassTag = level.parse().map_err(to_py)?;
    Ok(analysis::verify_class(&g.inner, level).into())
}

/// Representatives, `psi` and `tau` of the right cosets of `sub`.
#[pyfunction]
fn transversal(g: &PyStructure, sub: Vec<Elem>) -> PyResult<(Vec<Elem>, Vec<Elem>, Vec<Elem>, PyReport)> {
    let h = subset(&g.inner, sub)?;
    let t = Transversal::new(&g.inner, &h).map_err(to_py)?;
    let n = g.inner.order();
    Ok((
        t.reps().to_vec(),
        (0..n).map(|d| t.psi(d)).collect(),
        (0..n).map(|d| t.tau(d)).collect(),
        t.check(&g.inner).into(),
    ))
}

/// Quotient by an invariant subloop, with `pi` as a list.
#[pyfunction]
fn quotient(g: &PyStructure, sub: Vec<Elem>) -> PyResult<(PyStructure, Vec<usize>)> {
    let h = subset(&g.inner, sub)?;
    let q = coset::quotient(&g.inner, &h).map_err(to_py)?;
    let s = coset::quotient_structure(&g.inner, &q).map_err(to_py)?;
    Ok((s.into(), q.pi_table().to_vec()))
}

#[pyfunction]
fn direct_product(a: &PyStructure, b: &PyStructure) -> PyStructure {
    products::direct_product(&a.inner, &b.inner).into()
}

/// Smashed twisted product. `phi[a][b]`, `xi[g1][g2]` over product indices
/// `a * |B| + b`; missing maps are trivial. Returns the product and the
/// factor and invariance reports.
#[pyfunction]
#[pyo3(signature = (a, b, phi = None, xi = None, c = None))]
fn smashed_product(
    a: &PyStructure,
    b: &PyStructure,
    phi: Option<Vec<Vec<Elem>>>,
    xi: Option<Vec<Vec<Elem>>>,
    c: Option<Vec<Elem>>,
) -> PyResult<(PyStructure, PyReport, PyReport)> {
    let maps = FactorMaps { phi, xi, c, ..FactorMaps::default() };
    let f = maps.apply(a.inner.clone(), b.inner.clone()).map_err(to_py)?;
    let factors = products::validate_factors(&f);
    let g = products::smashed_twisted_product(&f).map_err(to_py)?;
    let inv = products::embeddings_and_invariance(&g, &f).map_err(to_py)?;
    Ok((g.into(), factors.into(), inv.into()))
}

/// Wreath product `D Δ_A B^V` with trivial action; `xi` is indexed like
/// [`smashed_product`] with `A`-members in place of `A`-elements.
#[pyfunction]
#[pyo3(signature = (d, a, b, xi = None, c1 = Vec::new(), max_size = wreath::DEFAULT_MAX_SIZE))]
fn wreath_product(
    d: &PyStructure,
    a: Vec<Elem>,
    b: &PyStructure,
    xi: Option<Vec<Vec<Elem>>>,
    c1: Vec<(Elem, Elem)>,
    max_size: usize,
) -> PyResult<(PyStructure, PyReport)> {
    let a = subset(&d.inner, a)?;
    let mut spec = WreathSpec::trivial(d.inner.clone(), a, b.inner.clone());
    if let Some(xi) = xi {
        spec.xi = xi;
    }
    spec.c1 = c1;
    spec.max_size = max_size;
    let w = wreath::wreath_product(spec).map_err(to_py)?;
    let mut report = w.check_factors();
    report.extend("", w.check_action());
    Ok((w.product().clone().into(), report.into()))
}

/// Continuity of multiplication and both divisions for a topology given by
/// its open sets.
#[pyfunction]
fn check_continuity(g: &PyStructure, opens: Vec<Vec<Elem>>) -> PyResult<PyReport> {
    let n = g.inner.order();
    if let Some(&x) = opens.iter().flatten().find(|&&x| x >= n) {
        return Err(PyValueError::new_err(format!("point {x} out of range")));
    }
    let t = FiniteTopology::new(n, opens.into_iter().map(|u| BitSet::from_indices(n, u))).map_err(to_py)?;
    Ok(topology::check_continuity(&g.inner, &t).map_err(to_py)?.into())
}

/// `(total, matched)` over reduced Latin squares of `order`.
#[pyfunction]
#[pyo3(signature = (order, predicate = "any", jobs = None))]
fn search_small(order: usize, predicate: &str, jobs: Option<usize>) -> PyResult<(usize, usize)> {
    let p: Predicate = predicate.parse().map_err(to_py)?;
    let s = search::search_small(order, p, jobs).map_err(to_py)?;
    Ok((s.total, s.matched))
}

#[pymodule]
#[pyo3(name = "metaloop")]
pub fn metaloop_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyReport>()?;
    m.add("CheckError", m.py().get_type::<CheckError>())?;
    m.add_function(wrap_pyfunction!(center, m)?)?;
    m.add_function(wrap_pyfunction!(commutant, m)?)?;
    m.add_function(wrap_pyfunction!(nucleus, m)?)?;
    m.add_function(wrap_pyfunction!(associator, m)?)?;
    m.add_function(wrap_pyfunction!(is_metagroup, m)?)?;
    m.add_function(wrap_pyfunction!(is_central_metagroup, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(transversal, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    m.add_function(wrap_pyfunction!(direct_product, m)?)?;
    m.add_function(wrap_pyfunction!(smashed_product, m)?)?;
    m.add_function(wrap_pyfunction!(wreath_product, m)?)?;
    m.add_function(wrap_pyfunction!(check_continuity, m)?)?;
    m.add_function(wrap_pyfunction!(search_small, m)?)?;
    Ok(())
}
