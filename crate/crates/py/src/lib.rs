//! Python bindings. Structured results (tube and short-cycle reports, formula
//! checks, iso verdicts) come back as plain dicts.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use quiverbench::gallery::{Gallery, GalleryConfig};
use quiverbench::io::{self, AlgebraFile, AlgebraRef, RepresentationFile};
use quiverbench::{ar, hom, rep, BoundAlgebra, Error, Field, IsoOptions, IsoVerdict};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(name: &str) -> PyResult<Field> {
    name.parse().map_err(py_err)
}

fn to_py(py: Python<'_>, text: serde_json::Result<String>) -> PyResult<Bound<'_, PyAny>> {
    let text = text.map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    inner: Arc<BoundAlgebra>,
}

#[pymethods]
impl PyAlgebra {
    /// `kind` is one of "H", "Hstar", "Lambda".
    #[staticmethod]
    #[pyo3(signature = (kind, n, field = "q"))]
    fn gallery(kind: &str, n: usize, field: &str) -> PyResult<Self> {
        let g = Gallery::new(GalleryConfig::new(n, field_of(field)?).map_err(py_err)?).map_err(py_err)?;
        let inner = match kind {
            "H" => g.h,
            "Hstar" => g.hstar,
            "Lambda" => g.lambda,
            other => return Err(PyValueError::new_err(format!("unknown gallery algebra {other:?}"))),
        };
        Ok(PyAlgebra { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyAlgebra { inner: io::load_algebra(path).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let a = io::parse_algebra(text, "<string>").map_err(py_err)?;
        Ok(PyAlgebra { inner: Arc::new(a) })
    }

    fn to_json(&self) -> String {
        io::algebra_json(&self.inner)
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn nilpotency_degree(&self) -> usize {
        self.inner.nilpotency_degree()
    }

    fn arrows(&self) -> Vec<(String, usize, usize)> {
        self.inner
            .quiver()
            .arrows()
            .iter()
            .map(|a| (a.name.clone(), a.source, a.target))
            .collect()
    }

    fn opposite(&self) -> Self {
        PyAlgebra { inner: quiverbench::opposite_of(&self.inner) }
    }

    fn simple(&self, v: usize) -> PyResult<PyRepresentation> {
        wrap(rep::simple(&self.inner, v))
    }

    fn projective(&self, v: usize) -> PyResult<PyRepresentation> {
        wrap(rep::projective(&self.inner, v))
    }

    fn injective(&self, v: usize) -> PyResult<PyRepresentation> {
        wrap(rep::injective(&self.inner, v))
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(vertices={}, arrows={}, dim={}, field={})",
            self.inner.vertex_count(),
            self.inner.quiver().arrows().len(),
            self.inner.dimension(),
            self.inner.field()
        )
    }
}

#[pyclass(name = "Representation", frozen)]
struct PyRepresentation {
    inner: quiverbench::Representation,
}

fn wrap(r: quiverbench::Result<quiverbench::Representation>) -> PyResult<PyRepresentation> {
    Ok(PyRepresentation { inner: r.map_err(py_err)? })
}

#[pymethods]
impl PyRepresentation {
    /// Mouth module `E_l` (or `E*_l` when `star`) placed over a gallery algebra.
    #[staticmethod]
    #[pyo3(signature = (algebra, l, star = false))]
    fn gallery(algebra: &PyAlgebra, l: usize, star: bool) -> PyResult<Self> {
        let a = &algebra.inner;
        let n = a.vertex_count().saturating_sub(1);
        let g = Gallery::new(GalleryConfig::new(n, a.field()).map_err(py_err)?).map_err(py_err)?;
        if l == 0 || l > g.config.rank() {
            return Err(PyValueError::new_err(format!("l must lie in 1..={}", g.config.rank())));
        }
        let m = if a.same_presentation(&g.lambda) {
            if star { g.e_star_lambda(l) } else { g.e_lambda(l) }.map_err(py_err)?
        } else if !star && a.same_presentation(&g.h) {
            g.e(l).clone()
        } else if star && a.same_presentation(&g.hstar) {
            g.e_star(l).clone()
        } else {
            return Err(PyValueError::new_err("not a gallery algebra for this module"));
        };
        wrap(m.inflate(a))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        wrap(io::load_representation(path))
    }

    /// Representation file with the algebra inlined.
    fn to_json(&self) -> PyResult<String> {
        let a = AlgebraRef::Inline(Box::new(AlgebraFile::from_algebra(self.inner.algebra())));
        let file = RepresentationFile::from_representation(&self.inner, a);
        serde_json::to_string_pretty(&file).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra { inner: self.inner.algebra().clone() }
    }

    fn dim_vector(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_valid()
    }

    fn top(&self) -> Vec<usize> {
        self.inner.top().0
    }

    fn socle(&self) -> Vec<usize> {
        self.inner.socle().0
    }

    /// Matrix of the named arrow, entries as strings.
    fn matrix(&self, arrow: &str) -> PyResult<Vec<Vec<String>>> {
        let m = self
            .inner
            .map_by_name(arrow)
            .ok_or_else(|| PyValueError::new_err(format!("unknown arrow {arrow:?}")))?;
        Ok(quiverbench::gallery::matrix_strings(m))
    }

    fn dual(&self) -> Self {
        PyRepresentation { inner: self.inner.dual() }
    }

    fn __repr__(&self) -> String {
        format!("Representation(dims={:?}, field={})", self.inner.dims(), self.inner.field())
    }
}

#[pyfunction]
fn hom_dim(m: &PyRepresentation, n: &PyRepresentation) -> PyResult<usize> {
    hom::hom_dim(&m.inner, &n.inner).map_err(py_err)
}

#[pyfunction]
fn ext1_dim(m: &PyRepresentation, n: &PyRepresentation) -> PyResult<usize> {
    hom::ext1_dim(&m.inner, &n.inner).map_err(py_err)
}

#[pyfunction]
fn is_brick(m: &PyRepresentation) -> PyResult<bool> {
    hom::is_brick(&m.inner).map_err(py_err)
}

#[pyfunction]
fn tau(m: &PyRepresentation) -> PyResult<PyRepresentation> {
    wrap(ar::tau(&m.inner))
}

#[pyfunction]
fn tau_minus(m: &PyRepresentation) -> PyResult<PyRepresentation> {
    wrap(ar::tau_minus(&m.inner))
}

/// `{"verdict": "iso" | "not_iso" | "undetermined", "reason": ..., "witness": ...}`.
#[pyfunction]
#[pyo3(signature = (m, n, seed = 0))]
fn are_isomorphic<'py>(py: Python<'py>, m: &PyRepresentation, n: &PyRepresentation, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let opts = IsoOptions { seed, ..IsoOptions::default() };
    let verdict = hom::are_isomorphic(&m.inner, &n.inner, &opts).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("verdict", verdict.label())?;
    match verdict {
        IsoVerdict::Iso(w) => {
            let comps: Vec<_> = w.components().iter().map(quiverbench::gallery::matrix_strings).collect();
            out.set_item("witness", comps)?;
        }
        IsoVerdict::NotIso(reason) => out.set_item("reason", reason)?,
        IsoVerdict::Undetermined => {}
    }
    Ok(out)
}

/// `which` is "i" or "ii".
#[pyfunction]
fn check_formula<'py>(
    py: Python<'py>,
    which: &str,
    x: &PyRepresentation,
    m: &PyRepresentation,
    n: &PyRepresentation,
) -> PyResult<Bound<'py, PyAny>> {
    let report = match which {
        "i" => ar::check_formula_i(&x.inner, &m.inner, &n.inner),
        "ii" => ar::check_formula_ii(&x.inner, &m.inner, &n.inner),
        other => return Err(PyValueError::new_err(format!("unknown formula {other:?}"))),
    }
    .map_err(py_err)?;
    to_py(py, serde_json::to_string(&report))
}

#[pyfunction]
#[pyo3(signature = (n, field = "q", seed = 0))]
fn verify_tube<'py>(py: Python<'py>, n: usize, field: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let config = GalleryConfig::new(n, field_of(field)?).map_err(py_err)?;
    let opts = IsoOptions { seed, ..IsoOptions::default() };
    to_py(py, serde_json::to_string(&quiverbench::verify_tube(config, &opts).map_err(py_err)?))
}

#[pyfunction]
#[pyo3(signature = (n, field = "q"))]
fn verify_short_cycle<'py>(py: Python<'py>, n: usize, field: &str) -> PyResult<Bound<'py, PyAny>> {
    let config = GalleryConfig::new(n, field_of(field)?).map_err(py_err)?;
    to_py(py, serde_json::to_string(&quiverbench::verify_short_cycle(config).map_err(py_err)?))
}

#[pyfunction]
#[pyo3(signature = (n, field, directory))]
fn export_gallery(n: usize, field: &str, directory: &str) -> PyResult<Vec<String>> {
    let config = GalleryConfig::new(n, field_of(field)?).map_err(py_err)?;
    let paths = io::export_gallery(directory, config).map_err(py_err)?;
    Ok(paths.iter().map(|p| p.display().to_string()).collect())
}

#[pymodule]
fn quiverbench_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(ext1_dim, m)?)?;
    m.add_function(wrap_pyfunction!(is_brick, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(tau_minus, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(check_formula, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tube, m)?)?;
    m.add_function(wrap_pyfunction!(verify_short_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(export_gallery, m)?)?;
    Ok(())
}
